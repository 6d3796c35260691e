"""Exact-arithmetic workbench for the combinatorial algebra of chord
diagrams: the 4T quotient, STU resolution of trivalent graphs, cabling
operators and their eigenvectors, the deframing projector, and immanent
weight systems."""

from .diagrams import (ChordDiagram, DiagramError, DiagramSum, EMPTY_DIAGRAM,
                       SINGLE_CHORD, TensorSum, canonical_form, connect_sum,
                       coproduct, diagram_sum, enumerate_diagrams,
                       has_isolated_chord, rotate_pairing)
from .feynman import (FeynmanDiagram, FeynmanError, chord_fd,
                      component_genera, disjoint_union, feynman_diagram,
                      permute_legs, resolve_sum, stu_resolve, sym, tau,
                      tau_prime, validate_fd)
from .immanent import (PartitionVector, alpha, alpha_weight_system,
                       cycle_decompositions, det_weight, det_weight_system,
                       even_partitions, imm_hcd, imm_perm, immanent,
                       intersection_matrix, k_coefficients, partition_mult,
                       perm_weight, perm_weight_system, sign_character)
from .operators import (CablingPolynomial, PolynomialityError, cable,
                        cabling_polynomial, d_op, deframe, product, s_op,
                        theta_op)
from .quotient import (QuotientBasis, QuotientError, WeightSystem,
                       annihilates_relations, build_basis, dual_weights,
                       equal_mod_4T, evaluate, generate_4T, load_basis,
                       reduce, save_basis, weight_system_from_function)

__version__ = "0.1.0"
