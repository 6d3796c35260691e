"""Cabling, chord deletion/insertion, deframing, doubling, and products.

The n-th cabling of a diagram sums over all ways of lifting chord
endpoints to the n-fold cyclic cover: an assignment of sheets
k: endpoints -> {0..n-1} places the lift of endpoint t at the covering
position ordered by the key (k, t).  Summing the n^(2m) assignments
directly is exponential in n, so the implementation groups assignments by
the induced cyclic word w of endpoints: an assignment produces w exactly
when k is weakly increasing along w and strictly increases at each descent
of w, and the number of such k is C(2m + n - 1 - d(w), 2m) with d(w) the
descent count.  Summing binomial-weighted lifts over the (2m)! words is
therefore identical to the definition; the naive enumeration is kept in
the test suite as an oracle.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial

from .diagrams import (ChordDiagram, DiagramSum, SINGLE_CHORD, canonical_pairing,
                       connect_sum)
from .quotient import WeightSystem, evaluate


class PolynomialityError(ArithmeticError):
    """The deframed cabling values failed the extra-node polynomial check."""


def _linear(v: DiagramSum, image, degree_shift: int) -> DiagramSum:
    """Extend a diagram-level map (returning (diagram, coeff) pairs) linearly."""
    out: dict[ChordDiagram, Fraction] = {}
    for d, c in v.items():
        for d2, c2 in image(d):
            key = d2
            out[key] = out.get(key, Fraction(0)) + c * c2
    return DiagramSum(v.degree + degree_shift, out)


# --- cabling ----------------------------------------------------------------

# per canonical pairing: {lifted canonical pairing: {descent count: multiplicity}}
_WORD_TABLES: dict[tuple, dict[tuple, dict[int, int]]] = {}
# threshold on (2m)! for the full word table; beyond it, cable falls back to
# enumerating ordered sheet-partitions, which is cheap for small n
_WORD_LIMIT = 50000


def _word_table(pairing: tuple[int, ...]) -> dict[tuple, dict[int, int]]:
    table = _WORD_TABLES.get(pairing)
    if table is not None:
        return table
    n = len(pairing)
    raw: dict[tuple, dict[int, int]] = {}
    for word in itertools.permutations(range(n)):
        pos = [0] * n
        for i, t in enumerate(word):
            pos[t] = i
        lifted = tuple(pos[pairing[t]] for t in word)
        d = sum(1 for i in range(n - 1) if word[i] > word[i + 1])
        by_d = raw.setdefault(lifted, {})
        by_d[d] = by_d.get(d, 0) + 1
    table = {}
    for lifted, by_d in raw.items():
        can = canonical_pairing(lifted)
        slot = table.setdefault(can, {})
        for d, cnt in by_d.items():
            slot[d] = slot.get(d, 0) + cnt
    _WORD_TABLES[pairing] = table
    return table


def _cable_by_words(pairing: tuple[int, ...], n: int) -> dict[tuple, Fraction]:
    size = len(pairing)
    out: dict[tuple, Fraction] = {}
    for can, by_d in _word_table(pairing).items():
        total = sum(cnt * comb(size + n - 1 - d, size)
                    for d, cnt in by_d.items())
        if total:
            out[can] = out.get(can, Fraction(0)) + total
    return out


def _ordered_partition_lifts(pairing: tuple[int, ...]):
    """Yield (number of blocks, lifted raw pairing) over ordered set
    partitions of the endpoints; the lift concatenates the blocks."""
    size = len(pairing)

    def rec(t, blocks):
        if t == size:
            word = [e for blk in blocks for e in blk]
            pos = [0] * size
            for i, e in enumerate(word):
                pos[e] = i
            yield len(blocks), tuple(pos[pairing[e]] for e in word)
            return
        for i in range(len(blocks)):
            blocks[i].append(t)
            yield from rec(t + 1, blocks)
            blocks[i].pop()
        for i in range(len(blocks) + 1):
            blocks.insert(i, [t])
            yield from rec(t + 1, blocks)
            blocks.pop(i)

    yield from rec(0, [])


def _cable_by_blocks(pairing: tuple[int, ...], n: int) -> dict[tuple, Fraction]:
    # C(n, j) ways to choose which j of the n sheets are populated
    size = len(pairing)
    raw: dict[tuple, int] = {}
    for j, lifted in _ordered_partition_lifts(pairing):
        if j > n:
            continue
        raw[lifted] = raw.get(lifted, 0) + comb(n, j)
    out: dict[tuple, Fraction] = {}
    for lifted, cnt in raw.items():
        can = canonical_pairing(lifted)
        out[can] = out.get(can, Fraction(0)) + cnt
    return out


def cable(v: DiagramSum, n: int) -> DiagramSum:
    """The n-th cabling: sum over all n^(2m) sheet lifts of each diagram."""
    if n < 1:
        raise ValueError("cabling order must be >= 1, got %d" % n)
    out: dict[ChordDiagram, Fraction] = {}
    for d, c in v.items():
        p = d.pairing
        if not p:
            out[d] = out.get(d, Fraction(0)) + c
            continue
        if factorial(len(p)) <= _WORD_LIMIT or n >= len(p):
            vec = _cable_by_words(p, n)
        else:
            vec = _cable_by_blocks(p, n)
        for can, cnt in vec.items():
            dd = ChordDiagram(can, _canonical=True)
            out[dd] = out.get(dd, Fraction(0)) + c * cnt
    return DiagramSum(v.degree, out)


# --- deletion, insertion, deframing -----------------------------------------

def _delete_chord(pairs, k) -> ChordDiagram:
    kept = [pairs[i] for i in range(len(pairs)) if i != k]
    endpoints = sorted(e for p in kept for e in p)
    idx = {e: i for i, e in enumerate(endpoints)}
    return ChordDiagram([(idx[a], idx[b]) for a, b in kept])


def s_op(v: DiagramSum) -> DiagramSum:
    """Sum over ways of deleting a single chord; lowers degree by one."""
    if v.degree == 0:
        return DiagramSum.zero(0)

    def image(d):
        pairs = d.pairs()
        return [(_delete_chord(pairs, k), 1) for k in range(len(pairs))]

    return _linear(v, image, -1)


def theta_op(v: DiagramSum) -> DiagramSum:
    """Connect-sum with the single chord at the fixed basepoint."""
    return _linear(v, lambda d: [(connect_sum(d, SINGLE_CHORD), 1)], +1)


def deframe(v: DiagramSum) -> DiagramSum:
    """The deframing projector: alternating sum of theta^k s^k / k!.

    Each series term is evaluated on the positioned representative: theta^k
    s^k deletes k chords in place and re-inserts k isolated chords at the
    basepoint, and only the outcome is canonicalised.  (Insertion at the
    basepoint does not commute with re-canonicalising between steps, and
    evaluating the composite this way is what makes the projector
    identities hold exactly on stored sums, not merely modulo 4T.)

    Annihilates every diagram with an isolated chord and projects onto the
    kernel of s; both facts are part of the test suite.
    """
    out: dict[ChordDiagram, Fraction] = {}
    for d, coeff in v.items():
        pairs = d.pairs()
        m = d.degree
        for k in range(m + 1):
            sign = Fraction((-1) ** k)
            for subset in itertools.combinations(range(m), k):
                kept = [pairs[i] for i in range(m) if i not in subset]
                endpoints = sorted(e for p in kept for e in p)
                idx = {e: i for i, e in enumerate(endpoints)}
                new_pairs = [(idx[a], idx[b]) for a, b in kept]
                base = 2 * (m - k)
                new_pairs.extend((base + 2 * j, base + 2 * j + 1)
                                 for j in range(k))
                dd = ChordDiagram(new_pairs)
                out[dd] = out.get(dd, Fraction(0)) + coeff * sign
    return DiagramSum(v.degree, out)


def d_op(v: DiagramSum) -> DiagramSum:
    """Double each chord in turn: parallel copy minus crossed copy.

    The doubled chord's endpoints immediately flank the original's; the
    parallel copy does not cross the original, the crossed copy does.
    """
    def image(d):
        pairs = d.pairs()
        n = len(d.pairing)
        out = []
        for k, (x, y) in enumerate(pairs):
            for crossed in (False, True):
                # walk the circle, inserting na just after x and nb just
                # after y (crossed) or just before y (parallel)
                seq: list[tuple[str, int]] = []
                for p in range(n):
                    if (not crossed) and p == y:
                        seq.append(("nb", 0))
                    seq.append(("old", p))
                    if p == x:
                        seq.append(("na", 0))
                    if crossed and p == y:
                        seq.append(("nb", 0))
                idx = {tok: i for i, tok in enumerate(seq)}
                new_pairs = [(idx[("old", a)], idx[("old", b)]) for a, b in pairs]
                new_pairs.append((idx[("na", 0)], idx[("nb", 0)]))
                out.append((ChordDiagram(new_pairs), -1 if crossed else 1))
        return out

    return _linear(v, image, +1)


def product(a: DiagramSum, b: DiagramSum) -> DiagramSum:
    """Bilinear extension of the connect-sum; degrees add."""
    out: dict[ChordDiagram, Fraction] = {}
    for da, ca in a.items():
        for db, cb in b.items():
            d = connect_sum(da, db)
            out[d] = out.get(d, Fraction(0)) + ca * cb
    return DiagramSum(a.degree + b.degree, out)


# --- cabling polynomials ----------------------------------------------------

class CablingPolynomial:
    """Exact coefficients c_0..c_m of the deframed cabling in the order n."""

    __slots__ = ("degree_bound", "coefficients")

    def __init__(self, degree_bound: int, coefficients):
        self.degree_bound = degree_bound
        coeffs = [Fraction(c) for c in coefficients]
        if len(coeffs) != degree_bound + 1:
            raise ValueError("need %d coefficients" % (degree_bound + 1))
        self.coefficients = tuple(coeffs)

    def __call__(self, n: int) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def __eq__(self, other):
        return (isinstance(other, CablingPolynomial)
                and self.coefficients == other.coefficients)

    def __repr__(self):
        return "CablingPolynomial(%s)" % (self.coefficients,)


def _poly_from_roots(roots: list[int]) -> list[Fraction]:
    poly = [Fraction(1)]
    for r in roots:
        nxt = [Fraction(0)] * (len(poly) + 1)
        for t, c in enumerate(poly):
            nxt[t + 1] += c
            nxt[t] -= r * c
        poly = nxt
    return poly


def _lagrange_coefficients(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    """Coefficients (low to high) of the unique interpolating polynomial."""
    coeffs = [Fraction(0)] * len(xs)
    for i, xi in enumerate(xs):
        others = [xj for j, xj in enumerate(xs) if j != i]
        denom = Fraction(1)
        for xj in others:
            denom *= xi - xj
        scale = ys[i] / denom
        for t, c in enumerate(_poly_from_roots(others)):
            coeffs[t] += scale * c
    return coeffs


def cabling_polynomial(W: WeightSystem, v: DiagramSum) -> CablingPolynomial:
    """Exact polynomial n -> W(cable(deframe(v), n)).

    Interpolates on n = 1..m+1 and certifies polynomiality of degree <= m
    by checking two extra nodes; a mismatch raises
    :class:`PolynomialityError`.
    """
    m = W.degree
    if not v.is_zero() and v.degree != m:
        raise ValueError("degree mismatch: weight %d vs sum %d"
                         % (m, v.degree))
    w = deframe(v)
    xs = list(range(1, m + 2))
    ys = [evaluate(W, cable(w, n)) if not w.is_zero() else Fraction(0)
          for n in xs]
    coeffs = _lagrange_coefficients(xs, ys)
    poly = CablingPolynomial(m, coeffs)
    for n in (m + 2, m + 3):
        got = evaluate(W, cable(w, n)) if not w.is_zero() else Fraction(0)
        if got != poly(n):
            raise PolynomialityError(
                "polynomiality violated at n=%d: interpolant %s, value %s"
                % (n, poly(n), got))
    return poly
