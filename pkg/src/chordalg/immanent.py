"""Intersection matrices, the universal immanent, and immanent weight systems.

The labelled intersection graph of a chord diagram has one vertex per
chord, an edge when two chords interleave on the circle, and labels
1..m by the order of the chords' first endpoints counterclockwise from
the basepoint.  The intersection matrix has M[i][j] = sign(i - j) when
chords i and j are linked, else 0.

The matrix depends on where the circle is broken, but the universal
immanent Imm(M) = sum over permutations of prod_i M[i][sigma(i)] [sigma]
(conjugacy class recorded as a cycle-type partition) does not; that
invariance, and agreement with the independent cycle-decomposition
calculus, are covered by the test suite.  Because diagonal entries
vanish, only partitions with all parts >= 2 ever occur.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from .diagrams import ChordDiagram, DiagramSum
from .feynman import check_partition
from .quotient import WeightSystem, enumerate_diagrams, evaluate, weight_system_from_function


def _pairs_from(d) -> tuple[tuple[int, int], ...]:
    """Chord pairs in label order (by first endpoint) from a diagram or raw
    pairing; a raw pairing is used as positioned, without canonicalising."""
    if isinstance(d, ChordDiagram):
        return d.pairs()
    if isinstance(d, (tuple, list)) and d and not isinstance(d[0], int):
        pairs = sorted((min(p), max(p)) for p in d)
        return tuple(pairs)
    p = tuple(d)
    return tuple((i, p[i]) for i in range(len(p)) if i < p[i])


def _linked(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    a1, b1 = c1
    a2, b2 = c2
    return (a1 < a2 < b1) != (a1 < b2 < b1)


def intersection_matrix(d) -> tuple[tuple[int, ...], ...]:
    """The m x m intersection matrix of a diagram's labelled intersection graph.

    Accepts a ChordDiagram (labelled from its stored rotation) or a raw
    pairing / pair list (labelled as written, for reproducing a specific
    break point).
    """
    pairs = _pairs_from(d)
    m = len(pairs)
    rows = []
    for i in range(m):
        row = []
        for j in range(m):
            if i != j and _linked(pairs[i], pairs[j]):
                row.append(-1 if i < j else 1)
            else:
                row.append(0)
        rows.append(tuple(row))
    return tuple(rows)


class PartitionVector:
    """A rational combination of partitions with all parts >= 2.

    Models the module spanned by the conjugacy classes of a symmetric
    group, written additively; printed in the bracket notation
    ``2[4] + 2[2,2]``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        t: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for p, c in (terms.items() if isinstance(terms, dict) else terms):
                p = check_partition(tuple(p), min_part=2)
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c == 0:
                    continue
                t[p] = t.get(p, Fraction(0)) + c
                if t[p] == 0:
                    del t[p]
        self._terms = t

    def items(self):
        return self._terms.items()

    def coefficient(self, p: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(p), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "PartitionVector") -> "PartitionVector":
        t = dict(self._terms)
        for p, c in other._terms.items():
            t[p] = t.get(p, Fraction(0)) + c
            if t[p] == 0:
                del t[p]
        out = PartitionVector()
        out._terms = t
        return out

    def __sub__(self, other: "PartitionVector") -> "PartitionVector":
        return self + other.scaled(-1)

    def scaled(self, c) -> "PartitionVector":
        c = c if isinstance(c, Fraction) else Fraction(c)
        out = PartitionVector()
        if c != 0:
            out._terms = {p: x * c for p, x in self._terms.items()}
        return out

    def __rmul__(self, c) -> "PartitionVector":
        return self.scaled(c)

    def __eq__(self, other) -> bool:
        return isinstance(other, PartitionVector) and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0], reverse=True)

    def __repr__(self):
        if not self._terms:
            return "0"
        return " + ".join("%s[%s]" % (c, ",".join(map(str, p)))
                          for p, c in self.sorted_items())


def _cycle_type(sigma: Sequence[int]) -> tuple[int, ...]:
    n = len(sigma)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j]
            ln += 1
        parts.append(ln)
    return tuple(sorted(parts, reverse=True))


def imm_perm(M: Sequence[Sequence[int]]) -> PartitionVector:
    """Universal immanent by the permutation-sum definition."""
    n = len(M)
    out: dict[tuple[int, ...], Fraction] = {}
    for sigma in itertools.permutations(range(n)):
        prod = 1
        for i in range(n):
            e = M[i][sigma[i]]
            if e == 0:
                prod = 0
                break
            prod *= e
        if prod:
            key = _cycle_type(sigma)
            out[key] = out.get(key, Fraction(0)) + prod
    return PartitionVector({k: v for k, v in out.items() if v})


def cycle_decompositions(d) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """Hamiltonian cycle decompositions of the labelled intersection graph.

    Returns (cycles, descent) records.  Cycles are directed and written
    starting from their smallest label; every vertex lies in exactly one
    cycle of length >= 2 and consecutive vertices (closing step included)
    are adjacent in the graph.  A 2-cycle and its reversal are the same
    decomposition and appear once; longer cycles are direction-sensitive.
    Labels are 1-based, matching the chord numbering.
    """
    M = intersection_matrix(d)
    n = len(M)
    adj = [set(j for j in range(n) if M[i][j] != 0) for i in range(n)]
    results = []

    def descent_of(cycles):
        dct = 0
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
                if a > b:
                    dct += 1
        return dct

    def extend(cycles, current, used):
        start = current[0]
        last = current[-1]
        if len(current) >= 2 and start in adj[last]:
            if len(current) > 2 or current[1] > start:
                # 2-cycles are direction-identified: keep ascending only
                close(cycles + (tuple(current),), used)
        for nxt in sorted(adj[last]):
            if nxt in used or nxt < start:
                continue
            current.append(nxt)
            used.add(nxt)
            extend(cycles, current, used)
            used.discard(nxt)
            current.pop()

    def close(cycles, used):
        remaining = [i for i in range(n) if i not in used]
        if not remaining:
            results.append(
                (tuple(tuple(v + 1 for v in cyc) for cyc in cycles),
                 descent_of(tuple(tuple(v + 1 for v in cyc) for cyc in cycles))))
            return
        start = remaining[0]
        used.add(start)
        extend(cycles, [start], used)
        used.discard(start)

    if n:
        close((), set())
    else:
        results.append(((), 0))
    return results


def imm_hcd(d) -> PartitionVector:
    """Universal immanent by the cycle-decomposition calculus.

    Sums (-1)^descent times the partition of cycle lengths over all
    Hamiltonian cycle decompositions of the labelled intersection graph.
    Independent of :func:`imm_perm`; the two agree whenever either is
    nonzero and both vanish identically in odd degree.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for cycles, descent in cycle_decompositions(d):
        # the empty decomposition of the empty graph contributes 1*[()],
        # the unit for the juxtaposition product
        key = tuple(sorted((len(c) for c in cycles), reverse=True))
        out[key] = out.get(key, Fraction(0)) + (-1) ** descent
    return PartitionVector({k: v for k, v in out.items() if v})


def immanent(v) -> PartitionVector:
    """The universal immanent weight system, extended linearly to sums."""
    if isinstance(v, ChordDiagram):
        v = DiagramSum.single(v)
    total = PartitionVector()
    for d, c in v.items():
        total = total + imm_perm(intersection_matrix(d)).scaled(c)
    return total


def alpha(partition: Sequence[int], v) -> Fraction:
    """The immanent functional picking out one conjugacy class."""
    p = check_partition(tuple(partition), min_part=2)
    degree = v.degree if isinstance(v, (ChordDiagram, DiagramSum)) else None
    if degree is not None and sum(p) != degree:
        raise ValueError("partition weight %d != degree %d" % (sum(p), degree))
    return immanent(v).coefficient(p)


def det_weight(d) -> int:
    """Integer determinant of the intersection matrix (fraction-free Bareiss)."""
    M = [list(row) for row in intersection_matrix(d)]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def perm_weight(d) -> int:
    """Exact permanent of the intersection matrix (expansion with pruning)."""
    M = intersection_matrix(d)
    n = len(M)

    def rec(i, free):
        if i == n:
            return 1
        total = 0
        for j in free:
            e = M[i][j]
            if e:
                total += e * rec(i + 1, free - {j})
        return total

    return rec(0, frozenset(range(n)))


def sign_character(partition: Sequence[int]) -> int:
    """Alternating-representation character on a conjugacy class."""
    s = 1
    for part in partition:
        if (part - 1) % 2:
            s = -s
    return s


def even_partitions(m: int) -> list[tuple[int, ...]]:
    """Partitions of m with every part even (and >= 2), descending order."""
    out: list[tuple[int, ...]] = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for part in range(min(maxpart, remaining), 1, -1):
            if part % 2 == 0:
                acc.append(part)
                rec(remaining - part, part, acc)
                acc.pop()

    rec(m, m, [])
    return sorted(out, reverse=True)


def partition_mult(a: PartitionVector, b: PartitionVector) -> PartitionVector:
    """Bilinear product: juxtapose and re-sort the parts of each pair of keys."""
    out: dict[tuple[int, ...], Fraction] = {}
    for p, cp in a.items():
        for q, cq in b.items():
            key = tuple(sorted(p + q, reverse=True))
            out[key] = out.get(key, Fraction(0)) + cp * cq
    return PartitionVector(out)


def k_coefficients(W: WeightSystem) -> dict[tuple[int, ...], Fraction]:
    """The constants pairing a weight system with the loop eigenvectors.

    For each all-even partition P of the weight system's degree m, the
    value of W on the resolved symmetrised loop diagram for P divided by
    2^(#parts) * m!.  Odd partitions never appear: their loop diagrams
    resolve to zero.
    """
    from math import factorial
    from .feynman import resolve_sum, tau

    m = W.degree
    out = {}
    for p in even_partitions(m):
        val = evaluate(W, resolve_sum(tau(p)))
        out[p] = val / (2 ** len(p) * factorial(m))
    return out


def det_weight_system(m: int) -> WeightSystem:
    return weight_system_from_function(m, det_weight, "det")


def perm_weight_system(m: int) -> WeightSystem:
    return weight_system_from_function(m, perm_weight, "perm")


def alpha_weight_system(partition: Sequence[int]) -> WeightSystem:
    p = check_partition(tuple(partition), min_part=2)
    m = sum(p)
    return weight_system_from_function(
        m, lambda d: alpha(p, d), "alpha:[%s]" % ",".join(map(str, p)))
