"""Shared independent oracles for the test suite.

These deliberately re-derive results by routes different from the package
implementations: brute-force rotation minimisation over pair lists, direct
sheet-assignment enumeration for cabling, and fraction-free integer
elimination for ranks.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from chordalg import ChordDiagram, DiagramSum


def oracle_canonical_pairs(pairs):
    """Rotation-minimal sorted pair list, by explicit minimisation."""
    pairs = [tuple(sorted(p)) for p in pairs]
    n = 2 * len(pairs)
    if n == 0:
        return []
    best = None
    for r in range(n):
        rotated = sorted(tuple(sorted(((a + r) % n, (b + r) % n)))
                         for a, b in pairs)
        if best is None or rotated < best:
            best = rotated
    return best


def oracle_all_matchings(n_points):
    """Perfect matchings on 0..n_points-1 via brute force over permutations
    of partners for the smallest free point."""
    if n_points == 0:
        yield []
        return
    points = list(range(n_points))

    def rec(free):
        if not free:
            yield []
            return
        a = free[0]
        for b in free[1:]:
            rest = [x for x in free[1:] if x != b]
            for tail in rec(rest):
                yield [(a, b)] + tail

    yield from rec(points)


def oracle_diagram_classes(m):
    """Set of canonical pair tuples at degree m, via the oracle canonicaliser."""
    return {tuple(oracle_canonical_pairs(match))
            for match in oracle_all_matchings(2 * m)}


def oracle_cable(v: DiagramSum, n: int) -> DiagramSum:
    """Direct sum over all n^(2m) sheet assignments."""
    out = {}
    for d, coeff in v.items():
        p = d.pairing
        size = len(p)
        for ks in itertools.product(range(n), repeat=size):
            order = sorted(range(size), key=lambda t: (ks[t], t))
            pos = {t: i for i, t in enumerate(order)}
            dd = ChordDiagram([(pos[i], pos[p[i]]) for i in range(size)
                               if pos[i] < pos[p[i]]])
            out[dd] = out.get(dd, Fraction(0)) + coeff
    return DiagramSum(v.degree, out)


def oracle_rank(vectors, ncols) -> int:
    """Rank of integer row vectors by fraction-free Bareiss elimination."""
    rows = []
    for vec in vectors:
        row = [0] * ncols
        for col, val in vec.items():
            frac = Fraction(val)
            assert frac.denominator == 1
            row[col] = frac.numerator
        if any(row):
            rows.append(row)
    rank = 0
    prev = 1
    col = 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for r in range(rank + 1, len(rows)):
            if not any(rows[r][col:]):
                continue
            for c in range(ncols - 1, col - 1, -1):
                rows[r][c] = (rows[r][c] * rows[rank][col]
                              - rows[r][col] * rows[rank][c]) // prev
        prev = rows[rank][col]
        rank += 1
        col += 1
    return rank


def oracle_det(matrix) -> int:
    """Determinant by signed permutation expansion."""
    n = len(matrix)
    total = 0
    for sigma in itertools.permutations(range(n)):
        prod = 1
        for i in range(n):
            prod *= matrix[i][sigma[i]]
            if prod == 0:
                break
        if prod:
            sign = 1
            seen = [False] * n
            for i in range(n):
                if seen[i]:
                    continue
                ln = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = sigma[j]
                    ln += 1
                if ln % 2 == 0:
                    sign = -sign
            total += sign * prod
    return total
