from fractions import Fraction

import pytest

from chordalg import (ChordDiagram, DiagramSum, EMPTY_DIAGRAM, SINGLE_CHORD,
                      build_basis, cable, cabling_polynomial, canonical_form,
                      chord_fd, d_op, deframe, disjoint_union, dual_weights,
                      enumerate_diagrams, equal_mod_4T, feynman_diagram,
                      generate_4T, product, reduce, resolve_sum, s_op,
                      stu_resolve, tau_prime, theta_op)
from chordalg.operators import PolynomialityError
from chordalg.quotient import WeightSystem
from conftest import oracle_cable

X = ChordDiagram([(0, 2), (1, 3)])
N = ChordDiagram([(0, 1), (2, 3)])
sX = DiagramSum.single(X)
sN = DiagramSum.single(N)
sc = DiagramSum.single(SINGLE_CHORD)
s_empty = DiagramSum.single(EMPTY_DIAGRAM)


class TestCable:
    def test_empty(self):
        assert cable(s_empty, 5) == s_empty

    def test_single_chord(self):
        assert cable(sc, 3) == DiagramSum(1, {SINGLE_CHORD: 9})

    def test_crossing_display(self):
        assert cable(sX, 2) == DiagramSum(2, {X: 8, N: 8})

    def test_order_zero_rejected(self):
        with pytest.raises(ValueError):
            cable(sX, 0)

    def test_order_one_is_identity(self):
        for m in (1, 2, 3):
            for d in enumerate_diagrams(m):
                v = DiagramSum.single(d)
                assert cable(v, 1) == v

    @pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)])
    def test_against_brute_force(self, m, n):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            assert cable(v, n) == oracle_cable(v, n)

    @pytest.mark.parametrize("m,n", [(2, 2), (2, 3), (3, 2), (4, 2), (4, 3)])
    def test_mass_multiplies(self, m, n):
        for d in enumerate_diagrams(m):
            assert cable(DiagramSum.single(d), n).mass() == n ** (2 * m)

    def test_linear(self):
        v = 2 * sX - Fraction(1, 3) * sN
        assert cable(v, 2) == 2 * cable(sX, 2) - Fraction(1, 3) * cable(sN, 2)

    @pytest.mark.parametrize("m", [3, 4])
    def test_preserves_4T(self, m):
        basis = build_basis(m)
        for rel in generate_4T(m):
            for n in (2, 3):
                assert all(c == 0 for c in reduce(cable(rel, n), basis))


class TestDeletion:
    def test_single_chord(self):
        assert s_op(sc) == s_empty

    def test_crossing(self):
        assert s_op(sX) == DiagramSum(1, {SINGLE_CHORD: 2})

    def test_four_chord_display(self):
        D4 = ChordDiagram([(0, 6), (1, 5), (2, 4), (3, 7)])
        assert s_op(DiagramSum.single(D4)) == DiagramSum(3, {
            ChordDiagram([(0, 4), (1, 3), (2, 5)]): 3,
            ChordDiagram([(0, 5), (1, 4), (2, 3)]): 1,
        })

    def test_degree_zero(self):
        assert s_op(s_empty).is_zero()

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_preserves_4T(self, m):
        basis = build_basis(m - 1)
        for rel in generate_4T(m):
            assert all(c == 0 for c in reduce(s_op(rel), basis))


class TestInsertion:
    def test_on_empty(self):
        assert theta_op(s_empty) == sc

    def test_on_chord(self):
        assert theta_op(sc) == sN

    def test_on_crossing(self):
        assert theta_op(sX) == DiagramSum.single(
            canonical_form([(0, 2), (1, 3), (4, 5)]))


class TestDeframe:
    def test_single_chord_killed(self):
        assert deframe(sc).is_zero()

    def test_noncrossing_killed(self):
        assert deframe(sN).is_zero()

    def test_crossing(self):
        assert deframe(sX) == sX - sN

    @pytest.mark.parametrize("m", range(6))
    def test_projector_identities(self, m):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            ph = deframe(v)
            assert s_op(ph).is_zero()
            assert deframe(ph) == ph

    def test_fixed_points_have_no_deletions(self):
        for m in range(5):
            for d in enumerate_diagrams(m):
                v = DiagramSum.single(d)
                if deframe(v) == v:
                    assert s_op(v).is_zero()


class TestDoubling:
    def test_empty(self):
        assert d_op(s_empty).is_zero()

    def test_single_chord_display(self):
        assert d_op(sc) == sN - sX

    def test_three_chord_display(self):
        D3 = ChordDiagram([(0, 4), (1, 3), (2, 5)])
        assert d_op(DiagramSum.single(D3)) == DiagramSum(4, {
            ChordDiagram([(0, 6), (1, 5), (2, 4), (3, 7)]): 2,
            ChordDiagram([(0, 6), (1, 4), (2, 5), (3, 7)]): -2,
            ChordDiagram([(0, 5), (1, 4), (2, 7), (3, 6)]): 1,
            ChordDiagram([(0, 5), (1, 4), (2, 6), (3, 7)]): -1,
        })

    @pytest.mark.parametrize("m", range(1, 5))
    def test_commutes_with_deletion(self, m):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            assert d_op(s_op(v)) == s_op(d_op(v))

    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_preserves_4T(self, m):
        basis = build_basis(m + 1)
        for rel in generate_4T(m):
            assert all(c == 0 for c in reduce(d_op(rel), basis))


class TestProduct:
    def test_unit(self):
        assert product(s_empty, sX) == sX
        assert product(sX, s_empty) == sX

    def test_chord_squared(self):
        assert product(sc, sc) == sN

    def test_matches_insertion(self):
        assert product(sX, sc) == theta_op(sX)

    def test_bilinear(self):
        v = 2 * sX - sN
        assert product(v, sc) == 2 * product(sX, sc) - product(sN, sc)

    @pytest.mark.parametrize("ma,mb", [(1, 1), (1, 2), (2, 2), (2, 3)])
    def test_leibniz_mod_4T(self, ma, mb):
        basis = build_basis(ma + mb - 1)
        for da in enumerate_diagrams(ma):
            for db in enumerate_diagrams(mb):
                a, b = DiagramSum.single(da), DiagramSum.single(db)
                lhs = s_op(product(a, b))
                rhs = product(s_op(a), b) + product(a, s_op(b))
                assert equal_mod_4T(lhs, rhs, basis)


class TestChordRemovalOnGraphs:
    """Deleting a chord commutes with STU resolution (degree <= 3)."""

    @staticmethod
    def chord_removals(f):
        out = []
        for e in f.sorted_edges():
            a, b = e
            if a[0] == "L" and b[0] == "L":
                gone = {a[1], b[1]}
                remap = {}
                k = 0
                for leg in range(f.legs):
                    if leg not in gone:
                        remap[leg] = k
                        k += 1
                mv = lambda x: ("L", remap[x[1]]) if x[0] == "L" else x
                from chordalg import FeynmanDiagram
                edges = frozenset(frozenset(mv(x) for x in e2)
                                  for e2 in f.edges if e2 != frozenset((a, b)))
                out.append(FeynmanDiagram(f.legs - 2, f.vertices, edges))
        return out

    def cases(self):
        tripod = feynman_diagram(3, [(("L", 0), ("L", 1), ("L", 2))])
        return [
            chord_fd([(0, 1)]),
            chord_fd([(0, 2), (1, 3)]),
            chord_fd([(0, 1), (2, 3)]),
            tripod,
            feynman_diagram(4, [(("L", 0), ("L", 1), ("V", 1, 0)),
                                (("V", 0, 2), ("L", 2), ("L", 3))]),
            feynman_diagram(5, [(("L", 0), ("L", 1), ("L", 2))],
                            chords=[(3, 4)]),
            feynman_diagram(5, [(("L", 1), ("L", 3), ("L", 4))],
                            chords=[(0, 2)]),
            tau_prime(2),
            disjoint_union(tau_prime(2), chord_fd([(0, 1)])),
            tau_prime(3),
        ]

    def test_exact_agreement(self):
        for f in self.cases():
            lhs = s_op(stu_resolve(f))
            removals = self.chord_removals(f)
            rhs = (resolve_sum(removals) if removals
                   else DiagramSum.zero(f.degree - 1))
            assert lhs == rhs, f


class TestCablingPolynomial:
    def test_degree_one_is_zero(self):
        W = dual_weights(build_basis(1))[0]
        poly = cabling_polynomial(W, sc)
        assert poly.coefficients == (0, 0)

    def test_crossing_has_degree_exactly_two(self):
        basis = build_basis(2)
        seen_quadratic = False
        for W in dual_weights(basis):
            poly = cabling_polynomial(W, sX)
            assert poly.coefficients[0] == 0 and poly.coefficients[1] == 0
            if poly.leading != 0:
                seen_quadratic = True
        assert seen_quadratic

    def test_evaluation_matches_direct_computation(self):
        from chordalg import evaluate
        basis = build_basis(2)
        W = dual_weights(basis)[0]
        poly = cabling_polynomial(W, sX)
        for n in (1, 2, 3, 4, 5):
            assert poly(n) == evaluate(W, cable(deframe(sX), n))

    def test_non_weight_functional_fails_the_check_nodes(self):
        diags = enumerate_diagrams(3)
        target = ChordDiagram([(0, 1), (2, 3), (4, 5)])
        vals = [1 if d == target else 0 for d in diags]
        bad = WeightSystem(3, vals, "indicator")
        v = DiagramSum.single(ChordDiagram([(0, 2), (1, 4), (3, 5)]))
        with pytest.raises(PolynomialityError):
            cabling_polynomial(bad, v)

    def test_degree_mismatch(self):
        W = dual_weights(build_basis(2))[0]
        with pytest.raises(ValueError):
            cabling_polynomial(W, sc)
