from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chordalg import (CablingPolynomial, ChordDiagram, DiagramSum,
                      PartitionVector, SINGLE_CHORD, enumerate_diagrams,
                      stu_resolve)
from chordalg.exprlang import (ExprError, evaluate_expression,
                               fd_of_expression, format_partition_vector,
                               format_polynomial, format_sum, parse_expr,
                               parse_partition, partition_vector_to_json,
                               sum_to_json)

X = ChordDiagram([(0, 2), (1, 3)])
N = ChordDiagram([(0, 1), (2, 3)])


class TestParse:
    def test_linear_combination(self):
        v = evaluate_expression("2*cd[0-2,1-3] - 1/3*cd[0-1,2-3]")
        assert v == DiagramSum(2, {X: 2, N: Fraction(-1, 3)})

    def test_scalar_arithmetic(self):
        assert evaluate_expression("2*3 - 1/2") == Fraction(11, 2)

    def test_parentheses_and_unary_minus(self):
        v = evaluate_expression("-(cd[0-2,1-3] - cd[0-1,2-3])")
        assert v == DiagramSum(2, {X: -1, N: 1})

    def test_diagram_times_diagram_is_connect_sum(self):
        v = evaluate_expression("cd[0-1]*cd[0-1]")
        assert v == DiagramSum.single(N)

    def test_empty_diagram(self):
        v = evaluate_expression("cd[]")
        assert v.degree == 0 and v.mass() == 1

    def test_noncanonical_input_is_normalised(self):
        assert evaluate_expression("cd[0-3,1-2]") == DiagramSum.single(N)

    def test_self_pairing_rejected(self):
        with pytest.raises(ExprError, match="paired with itself"):
            parse_expr("cd[0-0]")

    def test_degree_mismatch_at_evaluation(self):
        with pytest.raises(ExprError, match="degree mismatch"):
            evaluate_expression("cd[0-2,1-3] + cd[0-1]")

    def test_duplicate_endpoint(self):
        with pytest.raises(ExprError, match="duplicate endpoint"):
            parse_expr("cd[0-1,1-2]")

    def test_gap_in_endpoints(self):
        with pytest.raises(ExprError, match="endpoints must be exactly"):
            parse_expr("cd[0-2]")

    def test_error_carries_position(self):
        try:
            parse_expr("1 + %")
        except ExprError as exc:
            assert exc.line == 1 and exc.column == 5
        else:
            pytest.fail("no error raised")

    def test_trailing_garbage(self):
        with pytest.raises(ExprError):
            parse_expr("cd[0-1] cd[0-1]")

    def test_scalar_plus_diagram_rejected(self):
        with pytest.raises(ExprError, match="scalar"):
            evaluate_expression("1 + cd[0-1]")


class TestFdLiterals:
    TRIPOD = "fd{legs=3; v0=(L0,L1,L2)}"
    H = "fd{legs=4; v0=(L0,L1,v1.0); v1=(v0.2,L2,L3)}"

    def test_fd_resolves_in_expressions(self):
        v = evaluate_expression(self.TRIPOD)
        assert v.degree == 2
        assert v == DiagramSum(2, {N: 1, X: -1}) or v == DiagramSum(2, {N: -1, X: 1})

    def test_fd_of_expression(self):
        f = fd_of_expression(self.H)
        assert f.legs == 4 and f.vertices == 2

    def test_fd_of_expression_rejects_composites(self):
        with pytest.raises(ExprError):
            fd_of_expression("2*" + self.TRIPOD)

    def test_inconsistent_slots(self):
        with pytest.raises(ExprError, match="inconsistent"):
            parse_expr("fd{legs=4; v0=(L0,L1,v1.0); v1=(v0.1,L2,L3)}")

    def test_unattached_leg(self):
        with pytest.raises(ExprError, match="leg arity"):
            parse_expr("fd{legs=4; v0=(L0,L1,L2)}")

    def test_fd_in_arithmetic(self):
        v = evaluate_expression("%s - %s" % (self.TRIPOD, self.TRIPOD))
        assert v.is_zero()


class TestFormat:
    def test_cable_display_order(self):
        v = DiagramSum(2, {X: 8, N: 8})
        assert format_sum(v) == "8*cd[0-2,1-3] + 8*cd[0-1,2-3]"

    def test_zero(self):
        assert format_sum(DiagramSum.zero(2)) == "0"

    def test_unit_coefficients_omitted(self):
        v = DiagramSum(2, {X: 1, N: -1})
        assert format_sum(v) == "cd[0-2,1-3] - cd[0-1,2-3]"

    def test_leading_negative(self):
        v = DiagramSum(2, {X: Fraction(-1, 3)})
        assert format_sum(v) == "-1/3*cd[0-2,1-3]"

    def test_partition_vector(self):
        pv = PartitionVector({(4,): 2, (2, 2): 2})
        assert format_partition_vector(pv) == "2[4] + 2[2,2]"
        assert format_partition_vector(PartitionVector()) == "0"

    def test_partition_vector_json(self):
        pv = PartitionVector({(4,): 2, (2, 2): 2})
        assert partition_vector_to_json(pv) == '{"[4]": 2, "[2,2]": 2}'

    def test_polynomial(self):
        poly = CablingPolynomial(2, [0, Fraction(-1, 2), 1])
        assert format_polynomial(poly) == "0 - 1/2*n + 1*n^2"

    def test_sum_json(self):
        v = DiagramSum(2, {X: 8, N: 8})
        assert sum_to_json(v) == '{"terms": {"cd[0-2,1-3]": "8", "cd[0-1,2-3]": "8"}}'

    @pytest.mark.parametrize("m", range(4))
    def test_roundtrip_single_diagrams(self, m):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d, Fraction(3, 7))
            assert evaluate_expression(format_sum(v)) == v

    coeffs = st.fractions(min_value=-5, max_value=5)

    @given(st.dictionaries(st.sampled_from(enumerate_diagrams(3)), coeffs,
                           max_size=4))
    @settings(max_examples=60)
    def test_roundtrip_random_sums(self, terms):
        v = DiagramSum(3, terms)
        back = evaluate_expression(format_sum(v))
        if v.is_zero():
            # "0" reads back as the scalar zero
            assert back == Fraction(0)
        else:
            assert back == v


class TestPartitionParsing:
    def test_bracketed(self):
        assert parse_partition("[2,2]") == (2, 2)

    def test_bare(self):
        assert parse_partition("4") == (4,)

    def test_sorted(self):
        assert parse_partition("2,4") == (4, 2)

    def test_empty_rejected(self):
        with pytest.raises(ExprError):
            parse_partition("[]")
