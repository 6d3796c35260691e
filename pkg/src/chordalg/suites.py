"""Verification suites: worked-example replay and the property batteries.

Each suite returns Check records; the CLI ``verify``/``selftest`` commands
print them, and the acceptance tests assert them.  Expensive intermediates
(bases, cable tables, symmetrised resolutions) are cached per process.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .diagrams import (ChordDiagram, DiagramSum, EMPTY_DIAGRAM, SINGLE_CHORD,
                       coproduct, enumerate_diagrams, has_isolated_chord)
from .feynman import (FeynmanDiagram, chord_fd, component_genera, disjoint_union,
                      feynman_diagram, permute_legs, resolve_sum, stu_resolve,
                      sym, tau, tau_prime)
from .immanent import (PartitionVector, alpha, cycle_decompositions, det_weight,
                       even_partitions, imm_hcd, imm_perm, immanent,
                       intersection_matrix, k_coefficients, perm_weight,
                       sign_character)
from .operators import (cable, cabling_polynomial, d_op, deframe, product,
                        s_op, theta_op)
from .quotient import (QuotientBasis, build_basis, dual_weights, equal_mod_4T,
                       evaluate, generate_4T, reduce)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


def _check(name: str, passed: bool, detail: str = "") -> Check:
    return Check(name, bool(passed), detail if not passed else "")


_X = ChordDiagram([(0, 2), (1, 3)])
_N = ChordDiagram([(0, 1), (2, 3)])


# --- graph catalog -----------------------------------------------------------

def _tripod() -> FeynmanDiagram:
    return feynman_diagram(3, [(("L", 0), ("L", 1), ("L", 2))])


def _h_graph() -> FeynmanDiagram:
    return feynman_diagram(4, [(("L", 0), ("L", 1), ("V", 1, 0)),
                               (("V", 0, 2), ("L", 2), ("L", 3))])


def _theta_leg() -> FeynmanDiagram:
    # theta graph with one subdivided edge carrying the single leg; genus 2
    return feynman_diagram(1, [
        (("V", 1, 0), ("V", 1, 1), ("V", 2, 1)),
        (("V", 0, 0), ("V", 0, 1), ("V", 2, 2)),
        (("L", 0), ("V", 0, 2), ("V", 1, 2)),
    ])


def _theta_cherry() -> FeynmanDiagram:
    # 2-cycle with one leg on one side and a two-leg cherry on the other
    return feynman_diagram(3, [
        (("L", 0), ("V", 1, 0), ("V", 1, 1)),
        (("V", 0, 1), ("V", 0, 2), ("V", 2, 0)),
        (("V", 1, 2), ("L", 1), ("L", 2)),
    ])


def _g2_m3() -> FeynmanDiagram:
    # triangle loop with two of its three legs joined in an extra vertex
    return feynman_diagram(2, [
        (("L", 0), ("V", 1, 2), ("V", 2, 1)),
        (("V", 3, 1), ("V", 2, 2), ("V", 0, 1)),
        (("V", 3, 2), ("V", 0, 2), ("V", 1, 1)),
        (("L", 1), ("V", 1, 0), ("V", 2, 0)),
    ])


def _caterpillar() -> FeynmanDiagram:
    # tree with three internal vertices and five legs
    return feynman_diagram(5, [
        (("L", 0), ("L", 1), ("V", 1, 0)),
        (("V", 0, 2), ("L", 2), ("V", 2, 0)),
        (("V", 1, 2), ("L", 3), ("L", 4)),
    ])


def _triangle_cherry() -> FeynmanDiagram:
    return feynman_diagram(4, [
        (("L", 0), ("V", 1, 2), ("V", 2, 1)),
        (("L", 1), ("V", 2, 2), ("V", 0, 1)),
        (("V", 3, 0), ("V", 0, 2), ("V", 1, 1)),
        (("V", 2, 0), ("L", 2), ("L", 3)),
    ])


def _theta_double_cherry() -> FeynmanDiagram:
    return feynman_diagram(4, [
        (("V", 1, 0), ("V", 1, 1), ("V", 2, 0)),
        (("V", 0, 0), ("V", 0, 1), ("V", 3, 0)),
        (("V", 0, 2), ("L", 0), ("L", 1)),
        (("V", 1, 2), ("L", 2), ("L", 3)),
    ])


def _theta_caterpillar() -> FeynmanDiagram:
    return feynman_diagram(4, [
        (("L", 0), ("V", 1, 1), ("V", 1, 2)),
        (("V", 2, 0), ("V", 0, 1), ("V", 0, 2)),
        (("V", 1, 0), ("L", 1), ("V", 3, 0)),
        (("V", 2, 2), ("L", 2), ("L", 3)),
    ])


def _g2_m4() -> FeynmanDiagram:
    # square loop with two adjacent legs joined in an extra vertex
    return feynman_diagram(3, [
        (("L", 0), ("V", 1, 2), ("V", 3, 1)),
        (("L", 1), ("V", 2, 2), ("V", 0, 1)),
        (("V", 4, 1), ("V", 3, 2), ("V", 1, 1)),
        (("V", 4, 2), ("V", 0, 2), ("V", 2, 1)),
        (("L", 2), ("V", 2, 0), ("V", 3, 0)),
    ])


def _g3_m4() -> FeynmanDiagram:
    # complete graph on four vertices, two edges subdivided by leg vertices
    return feynman_diagram(2, [
        (("V", 4, 1), ("V", 2, 0), ("V", 3, 0)),
        (("V", 4, 2), ("V", 2, 1), ("V", 3, 1)),
        (("V", 0, 1), ("V", 1, 1), ("V", 5, 1)),
        (("V", 0, 2), ("V", 1, 2), ("V", 5, 2)),
        (("L", 0), ("V", 0, 0), ("V", 1, 0)),
        (("L", 1), ("V", 2, 2), ("V", 3, 2)),
    ])


def connected_catalog() -> dict[str, FeynmanDiagram]:
    """Named connected graphs with u + t <= 8, every component legged."""
    return {
        "chord": chord_fd([(0, 1)]),
        "tripod": _tripod(),
        "theta-legs": tau_prime(2),
        "theta-leg": _theta_leg(),
        "h-graph": _h_graph(),
        "loop3": tau_prime(3),
        "theta-cherry": _theta_cherry(),
        "loop3-joined": _g2_m3(),
        "caterpillar": _caterpillar(),
        "loop4": tau_prime(4),
        "triangle-cherry": _triangle_cherry(),
        "theta-double-cherry": _theta_double_cherry(),
        "theta-caterpillar": _theta_caterpillar(),
        "loop4-joined": _g2_m4(),
        "k4-legged": _g3_m4(),
    }


def eigen_catalog() -> list[tuple[str, FeynmanDiagram]]:
    """Every disjoint union of catalog graphs with total degree <= 4."""
    base = sorted(connected_catalog().items())
    out: list[tuple[str, FeynmanDiagram]] = []

    def rec(start: int, name_parts: list[str], fd: FeynmanDiagram | None,
            degree: int):
        if fd is not None:
            out.append(("+".join(name_parts), fd))
        for i in range(start, len(base)):
            nm, g = base[i]
            if degree + g.degree > 4:
                continue
            rec(i, name_parts + [nm],
                g if fd is None else disjoint_union(fd, g),
                degree + g.degree)

    rec(0, [], None, 0)
    return sorted(out)


def _perm_variants(f: FeynmanDiagram, count: int) -> list[FeynmanDiagram]:
    perms = itertools.islice(itertools.permutations(range(f.legs)), count)
    return [permute_legs(f, sigma) for sigma in perms]


def vanishing_catalog() -> dict[str, list[tuple[str, FeynmanDiagram]]]:
    """Curated diagrams on which the universal immanent must vanish."""
    chord = chord_fd([(0, 1)])
    cases: dict[str, list[tuple[str, FeynmanDiagram]]] = {}

    genus2: list[tuple[str, FeynmanDiagram]] = [("theta-leg", _theta_leg()),
                                                ("loop3-joined", _g2_m3()),
                                                ("loop4-joined", _g2_m4()),
                                                ("k4-legged", _g3_m4()),
                                                ("theta-leg+theta-leg",
                                                 disjoint_union(_theta_leg(), _theta_leg()))]
    for nm, extra in (("chord", chord), ("chord+chord",
                                         disjoint_union(chord, chord)),
                      ("tripod", _tripod()), ("theta-legs", tau_prime(2))):
        genus2.append(("theta-leg+%s" % nm, disjoint_union(_theta_leg(), extra)))
    for k, g in enumerate(_perm_variants(disjoint_union(_g2_m3(), chord), 4)):
        genus2.append(("loop3-joined+chord/p%d" % k, g))
    cases["genus>=2"] = genus2

    genus1: list[tuple[str, FeynmanDiagram]] = []
    for k, g in enumerate(_perm_variants(_theta_cherry(), 6)):
        genus1.append(("theta-cherry/p%d" % k, g))
    genus1.append(("triangle-cherry", _triangle_cherry()))
    genus1.append(("theta-double-cherry", _theta_double_cherry()))
    genus1.append(("theta-caterpillar", _theta_caterpillar()))
    for k, g in enumerate(_perm_variants(disjoint_union(_theta_cherry(), chord), 3)):
        genus1.append(("theta-cherry+chord/p%d" % k, g))
    cases["genus1-not-loop"] = genus1

    odd: list[tuple[str, FeynmanDiagram]] = []
    for k, g in enumerate(_perm_variants(tau_prime(3), 6)):
        odd.append(("loop3/p%d" % k, g))
    for k, g in enumerate(_perm_variants(disjoint_union(tau_prime(3), chord), 5)):
        odd.append(("loop3+chord/p%d" % k, g))
    cases["odd-loop"] = odd
    return cases


_RESOLVED_SYM_CACHE: dict[str, DiagramSum] = {}


def resolved_sym(name: str, f: FeynmanDiagram) -> DiagramSum:
    got = _RESOLVED_SYM_CACHE.get(name)
    if got is None:
        got = resolve_sum(sym(f))
        _RESOLVED_SYM_CACHE[name] = got
    return got


# --- suites -------------------------------------------------------------------

def paper_examples_suite() -> list[Check]:
    """Replay of every worked display: acceptance criteria 1 through 8."""
    checks = []
    X, N = _X, _N
    sX = DiagramSum.single(X)

    # 1: second cabling of the crossing pair
    checks.append(_check(
        "cable: crossing pair, order 2 = 8*crossing + 8*noncrossing",
        cable(sX, 2) == DiagramSum(2, {X: 8, N: 8})))

    # 2: degree-3 STU resolution, termwise and against the half-resolved step
    h = _h_graph()
    res = stu_resolve(h)
    displayed = DiagramSum(3, {
        ChordDiagram([(0, 3), (1, 2), (4, 5)]): Fraction(1),
        ChordDiagram([(0, 2), (1, 3), (4, 5)]): Fraction(-1),
        ChordDiagram([(0, 4), (1, 3), (2, 5)]): Fraction(-1),
        ChordDiagram([(0, 3), (1, 4), (2, 5)]): Fraction(1),
    })
    checks.append(_check("stu: degree-3 worked resolution, four signed terms",
                         res == displayed))
    half1 = feynman_diagram(5, [(("L", 0), ("L", 1), ("L", 2))], chords=[(3, 4)])
    half2 = feynman_diagram(5, [(("L", 0), ("L", 1), ("L", 3))], chords=[(2, 4)])
    checks.append(_check(
        "stu: class equals the one-vertex intermediate step mod 4T",
        equal_mod_4T(res, stu_resolve(half1) - stu_resolve(half2),
                     build_basis(3))))

    # 3: coproduct of the three-chord example
    D = ChordDiagram([(0, 4), (1, 3), (2, 5)])
    delta = coproduct(D)
    c = SINGLE_CHORD
    expected = {(D, EMPTY_DIAGRAM): 1, (EMPTY_DIAGRAM, D): 1,
                (X, c): 2, (c, X): 2, (N, c): 1, (c, N): 1}
    checks.append(_check(
        "coproduct: three-chord example, six terms 1,2,1,1,2,1",
        dict(delta.items()) == {k: Fraction(v) for k, v in expected.items()}))

    # 4: chord-deletion display
    D4 = ChordDiagram([(0, 6), (1, 5), (2, 4), (3, 7)])
    sD = s_op(DiagramSum.single(D4))
    expect_s = DiagramSum(3, {ChordDiagram([(0, 4), (1, 3), (2, 5)]): 3,
                              ChordDiagram([(0, 5), (1, 4), (2, 3)]): 1})
    checks.append(_check("s: four-chord display = 3*D' + D''", sD == expect_s))

    # 5: doubling displays
    checks.append(_check(
        "d: single chord = parallel - crossed",
        d_op(DiagramSum.single(SINGLE_CHORD))
        == DiagramSum(2, {N: 1, X: -1})))
    D3 = ChordDiagram([(0, 4), (1, 3), (2, 5)])
    expect_d = DiagramSum(4, {
        ChordDiagram([(0, 6), (1, 5), (2, 4), (3, 7)]): 2,
        ChordDiagram([(0, 6), (1, 4), (2, 5), (3, 7)]): -2,
        ChordDiagram([(0, 5), (1, 4), (2, 7), (3, 6)]): 1,
        ChordDiagram([(0, 5), (1, 4), (2, 6), (3, 7)]): -1,
    })
    checks.append(_check("d: three-chord display, coefficients 2,-2,1,-1",
                         d_op(DiagramSum.single(D3)) == expect_d))

    # 6: intersection matrix, immanent and the four cycle decompositions
    v0 = [(0, 5), (1, 4), (2, 6), (3, 7)]
    M = intersection_matrix(v0)
    checks.append(_check(
        "im: linking-pattern realisation gives the displayed 4x4 matrix",
        M == ((0, 0, -1, -1), (0, 0, -1, -1), (1, 1, 0, -1), (1, 1, 1, 0))))
    checks.append(_check(
        "immanent: value 2[4] + 2[2,2]",
        imm_perm(M) == PartitionVector({(4,): 2, (2, 2): 2})))
    decs = cycle_decompositions(v0)
    checks.append(_check(
        "immanent: exactly four decompositions, each of descent 2",
        len(decs) == 4 and all(d == 2 for _, d in decs)))

    # 7: single-loop values
    checks.append(_check(
        "loops: I(resolved planar 2-loop) = 2[2]",
        immanent(stu_resolve(tau_prime(2))) == PartitionVector({(2,): 2})))
    checks.append(_check(
        "loops: I(resolved planar 4-loop) = 2[4]",
        immanent(stu_resolve(tau_prime(4))) == PartitionVector({(4,): 2})))

    # 8: symmetrised loop-union values
    for P in ((2,), (4,), (2, 2)):
        m = sum(P)
        expect = PartitionVector({P: 2 ** len(P) * factorial(m)})
        checks.append(_check(
            "loops: I(resolved symmetrised %s) = %s" % (list(P), expect),
            immanent(resolve_sum(tau(P))) == expect))
    return checks


def _s_kernel_spanning(m: int) -> list[DiagramSum]:
    """Spanning set of the kernel of s on the degree-m diagram span."""
    cols = enumerate_diagrams(m)
    rows_d = enumerate_diagrams(m - 1)
    ri = {d: i for i, d in enumerate(rows_d)}
    mat = [[Fraction(0)] * len(cols) for _ in rows_d]
    for j, d in enumerate(cols):
        for dd, c in s_op(DiagramSum.single(d)).items():
            mat[ri[dd]][j] += c
    # gaussian elimination to RREF
    piv: list[int] = []
    r = 0
    for c in range(len(cols)):
        pr = next((rr for rr in range(r, len(mat)) if mat[rr][c] != 0), None)
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for rr in range(len(mat)):
            if rr != r and mat[rr][c] != 0:
                f = mat[rr][c]
                mat[rr] = [x - f * y for x, y in zip(mat[rr], mat[r])]
        piv.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(len(cols)) if c not in piv]
    out = []
    for f in free:
        vec = {cols[f]: Fraction(1)}
        for rr, c in enumerate(piv):
            if mat[rr][f]:
                vec[cols[c]] = -mat[rr][f]
        out.append(DiagramSum(m, vec))
    return out


def projector_suite() -> list[Check]:
    """Deframing projector identities on full diagram spans, degree <= 5."""
    checks = []
    all_ok = {"s-phi": True, "idem": True, "isolated": True}
    for m in range(0, 6):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            ph = deframe(v)
            if not s_op(ph).is_zero():
                all_ok["s-phi"] = False
            if deframe(ph) != ph:
                all_ok["idem"] = False
            if has_isolated_chord(d) and not ph.is_zero():
                all_ok["isolated"] = False
    checks.append(_check("projector: s after deframe vanishes exactly, m<=5",
                         all_ok["s-phi"]))
    checks.append(_check("projector: deframe is idempotent exactly, m<=5",
                         all_ok["idem"]))
    checks.append(_check("projector: isolated-chord diagrams are killed, m<=5",
                         all_ok["isolated"]))

    # fixed subspace: phi(v) = v iff s(v) = 0.  The forward direction is
    # exact (s of anything deframed is zero); the kernel direction holds
    # on classes, i.e. modulo 4T, which is where the deletion map's kernel
    # lives.
    ok_fwd = True
    for m in range(0, 5):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            if deframe(v) == v and not s_op(v).is_zero():
                ok_fwd = False
    checks.append(_check(
        "projector: deframe(v) = v forces s(v) = 0 (diagrams, m<=4)", ok_fwd))
    ok_ker = True
    for m in range(1, 5):
        basis = build_basis(m)
        for w in _s_kernel_spanning(m):
            if not s_op(w).is_zero():
                ok_ker = False
            if not equal_mod_4T(deframe(w), w, basis):
                ok_ker = False
    checks.append(_check(
        "projector: s(v) = 0 forces deframe(v) = v mod 4T (kernel span, m<=4)",
        ok_ker))

    # Leibniz rule for the deletion map over the connect-sum.  Exact with
    # position-preserving deletions; on canonical representatives the two
    # sides agree modulo 4T.
    ok_based = True
    ok_mod = True
    for ma in range(1, 3):
        for mb in range(1, 4):
            basis = build_basis(ma + mb - 1)
            for da in enumerate_diagrams(ma):
                for db in enumerate_diagrams(mb):
                    a = DiagramSum.single(da)
                    b = DiagramSum.single(db)
                    lhs = s_op(product(a, b))
                    if not equal_mod_4T(
                            lhs,
                            product(s_op(a), b) + product(a, s_op(b)), basis):
                        ok_mod = False
                    if lhs != _leibniz_rhs_based(da, db):
                        ok_based = False
    checks.append(_check(
        "projector: Leibniz rule, positioned deletions, exact (pairs <= (2,3))",
        ok_based))
    checks.append(_check(
        "projector: Leibniz rule on representatives mod 4T (pairs <= (2,3))",
        ok_mod))
    return checks


def _based_delete(pairs, k):
    kept = [pairs[i] for i in range(len(pairs)) if i != k]
    endpoints = sorted(e for p in kept for e in p)
    idx = {e: i for i, e in enumerate(endpoints)}
    return [(idx[a], idx[b]) for a, b in kept]


def _leibniz_rhs_based(da: ChordDiagram, db: ChordDiagram) -> DiagramSum:
    """product(s(a), b) + product(a, s(b)) with deletions kept in place."""
    pa, pb = list(da.pairs()), list(db.pairs())
    na = 2 * da.degree
    out: dict[ChordDiagram, Fraction] = {}
    for k in range(len(pa)):
        left = _based_delete(pa, k)
        pairs = left + [(x + na - 2, y + na - 2) for x, y in pb]
        d = ChordDiagram(pairs)
        out[d] = out.get(d, Fraction(0)) + 1
    for k in range(len(pb)):
        right = _based_delete(pb, k)
        pairs = list(pa) + [(x + na, y + na) for x, y in right]
        d = ChordDiagram(pairs)
        out[d] = out.get(d, Fraction(0)) + 1
    return DiagramSum(da.degree + db.degree - 1, out)


def eigen_suite() -> list[Check]:
    """Cabling eigenvalue property for every catalog SFD of degree <= 4."""
    checks = []
    for name, f in eigen_catalog():
        S = resolved_sym(name, f)
        basis = build_basis(f.degree)
        ok = True
        for n in (2, 3):
            if not equal_mod_4T(cable(S, n), S.scaled(Fraction(n ** f.legs)),
                                basis):
                ok = False
        checks.append(_check(
            "eigen: %s (m=%d, legs=%d)%s"
            % (name, f.degree, f.legs, "" if S.is_zero() else ", nonzero"),
            ok))
    return checks


def immanent_suite(seed: int = 20240811) -> list[Check]:
    """Immanent well-definedness, dual-formula agreement, and vanishing."""
    checks = []

    # annihilation of every generated relation, degree <= 6
    for m in range(2, 7):
        imm_cache: dict[ChordDiagram, PartitionVector] = {}
        det_cache: dict[ChordDiagram, int] = {}
        perm_cache: dict[ChordDiagram, int] = {}
        ok = True
        for rel in generate_4T(m):
            tot = PartitionVector()
            det_tot = Fraction(0)
            perm_tot = Fraction(0)
            for d, c in rel.items():
                if d not in imm_cache:
                    imm_cache[d] = imm_perm(intersection_matrix(d))
                    det_cache[d] = det_weight(d)
                    perm_cache[d] = perm_weight(d)
                tot = tot + imm_cache[d].scaled(c)
                det_tot += c * det_cache[d]
                perm_tot += c * perm_cache[d]
            if not tot.is_zero() or det_tot != 0 or perm_tot != 0:
                ok = False
                break
        checks.append(_check(
            "immanent: I, det, perm and all alphas kill 4T relations, m=%d" % m,
            ok))

    # dual-formula agreement
    ok = True
    for m in range(0, 6):
        for d in enumerate_diagrams(m):
            a = imm_perm(intersection_matrix(d))
            b = imm_hcd(d)
            if a != b or (m % 2 == 1 and not a.is_zero()):
                ok = False
    checks.append(_check(
        "immanent: permutation and cycle-decomposition formulas agree, m<=5",
        ok))
    rng = random.Random(seed)
    ok = True
    for m in (6, 7):
        for _ in range(500):
            pts = list(range(2 * m))
            rng.shuffle(pts)
            pairs = [(pts[2 * i], pts[2 * i + 1]) for i in range(m)]
            d = ChordDiagram(pairs)
            a = imm_perm(intersection_matrix(d))
            b = imm_hcd(d)
            if a != b or (m % 2 == 1 and not a.is_zero()):
                ok = False
    checks.append(_check(
        "immanent: formulas agree on 500 random diagrams at m=6 and m=7", ok))

    # character contractions
    ok = True
    for m in range(0, 6):
        for d in enumerate_diagrams(m):
            I = immanent(d)
            det_sum = sum((sign_character(p) * c for p, c in I.items()),
                          Fraction(0))
            perm_sum = sum((c for _, c in I.items()), Fraction(0))
            if det_sum != det_weight(d) or perm_sum != perm_weight(d):
                ok = False
    checks.append(_check(
        "immanent: det and perm equal the character contractions, m<=5", ok))

    # I vanishes wherever deframing does
    ok = True
    for m in range(0, 6):
        for d in enumerate_diagrams(m):
            v = DiagramSum.single(d)
            w = v - deframe(v)   # killed by the projector
            if not deframe(w).is_zero():
                ok = False
            if not immanent(w).is_zero():
                ok = False
    checks.append(_check(
        "immanent: I kills the complement of the deframing projector, m<=5",
        ok))

    # curated vanishing catalog
    for case, entries in vanishing_catalog().items():
        ok = True
        for name, f in entries:
            genera = component_genera(f)
            if case == "genus>=2" and max(genera) < 2:
                ok = False
            if case in ("genus1-not-loop", "odd-loop") and max(genera) != 1:
                ok = False
            if not immanent(stu_resolve(f)).is_zero():
                ok = False
        checks.append(_check(
            "immanent: vanishing on %s resolutions (%d diagrams)"
            % (case, len(entries)), ok))

    # forced-step lemma: decompositions that never step between the two
    # chords of an adjacent-transposition pair cancel between the crossed
    # and uncrossed configurations
    ok = True
    count = 0
    for m in (2, 3, 4):
        for d in enumerate_diagrams(m):
            n = 2 * m
            for i in range(n):
                j = (i + 1) % n
                if d.pairing[i] == j:
                    continue
                swapped = _swap_adjacent(d.pairing, i, j)
                pair_ids = _chord_labels_of(d.pairing, i, j)
                pair_ids_sw = _chord_labels_of(swapped, i, j)
                a = _hcd_excluding(d.pairing, *pair_ids)
                b = _hcd_excluding(swapped, *pair_ids_sw)
                if a != b:
                    ok = False
                count += 1
    checks.append(_check(
        "immanent: forced-step restriction cancels on crossing toggles, m<=4 "
        "(%d configurations)" % count, ok))
    return checks


def _swap_adjacent(pairing: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    perm = list(range(len(pairing)))
    perm[i], perm[j] = j, i
    return tuple(perm[pairing[perm[k]]] for k in range(len(pairing)))


def _chord_labels_of(pairing: tuple[int, ...], i: int, j: int) -> tuple[int, int]:
    starts = sorted(k for k in range(len(pairing)) if k < pairing[k])
    ci = starts.index(min(i, pairing[i]))
    cj = starts.index(min(j, pairing[j]))
    return ci + 1, cj + 1


def _hcd_excluding(pairing, a_label: int, b_label: int) -> PartitionVector:
    """Cycle-decomposition sum over decompositions with no step between the
    two named chords, in either direction."""
    out: dict[tuple[int, ...], Fraction] = {}
    forbidden = {(a_label, b_label), (b_label, a_label)}
    for cycles, descent in cycle_decompositions(pairing):
        steps = set()
        for cyc in cycles:
            steps.update(zip(cyc, cyc[1:] + (cyc[0],)))
        if steps & forbidden:
            continue
        key = tuple(sorted((len(c) for c in cycles), reverse=True))
        out[key] = out.get(key, Fraction(0)) + (-1) ** descent
    return PartitionVector({k: v for k, v in out.items() if v})


def theorem2_suite() -> list[Check]:
    """Cabling polynomials of dual-basis weights at degrees 2, 3 and 4."""
    checks = []
    for m in (2, 3, 4):
        basis = build_basis(m)
        evens = even_partitions(m)
        ok_fit = True
        ok_lead = True
        for W in dual_weights(basis):
            ks = k_coefficients(W)
            for v in enumerate_diagrams(m):
                sv = DiagramSum.single(v)
                poly = cabling_polynomial(W, sv)   # raises if the fit fails
                lead = poly.leading
                expect = sum((ks[p] * alpha(p, sv) for p in evens), Fraction(0))
                if lead != expect:
                    ok_lead = False
        checks.append(_check(
            "theorem2: degree-%d fits pass both extra check nodes (dim %d)"
            % (m, basis.dim), ok_fit))
        checks.append(_check(
            "theorem2: degree-%d leading coefficients match the immanent "
            "combination on every diagram" % m, ok_lead))
    return checks


_DIM_FIXTURES = {0: 1, 1: 1, 2: 2, 3: 3, 4: 6, 5: 10}


def quotient_suite() -> list[Check]:
    """Dimension regressions and generation-scheme stability."""
    checks = []
    for m, expected in _DIM_FIXTURES.items():
        basis = build_basis(m)
        ok = basis.dim == expected
        if m >= 2:
            ok = ok and all(
                build_basis(m, scheme=s).dim == expected
                for s in ("max", "min"))
        checks.append(_check(
            "quotient: dim(%d) = %d, stable across generation schemes"
            % (m, expected), ok))
    ok = True
    for m in range(2, 6):
        basis = build_basis(m)
        for rel in generate_4T(m):
            if any(c != 0 for c in reduce(rel, basis)):
                ok = False
    checks.append(_check("quotient: every generated relation reduces to zero, "
                         "m<=5", ok))
    return checks


SUITES = {
    "paper-examples": paper_examples_suite,
    "projector": projector_suite,
    "eigen": eigen_suite,
    "immanent": immanent_suite,
    "theorem2": theorem2_suite,
}


def run_suite(name: str) -> list[Check]:
    try:
        fn = SUITES[name]
    except KeyError:
        raise ValueError("unknown suite %r; choose from %s"
                         % (name, ", ".join(sorted(SUITES))))
    return fn()


def selftest() -> list[Check]:
    out = []
    for name in sorted(SUITES):
        out.extend(run_suite(name))
    out.extend(quotient_suite())
    return out
