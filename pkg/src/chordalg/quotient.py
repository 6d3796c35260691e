"""The 4T quotient: relation generation, exact elimination, weight systems.

The 4T relation attached to a configuration (other chords fixed, one chord
keeping a fixed endpoint x while its mobile endpoint y visits the four
slots flanking the endpoints b1, b2 of a second chord) is

    +D[y after b1] - D[y before b1] + D[y after b2] - D[y before b2] = 0,

"after"/"before" in the counterclockwise (increasing index) direction.
Relations are generated from every diagram, every ordered pair of distinct
chords and every choice of mobile endpoint, then deduplicated.  The sign
and placement convention is cross-validated by the convention-independent
immanent/determinant annihilation tests.

Elimination is exact rational reduced row echelon form with pivoting by
least column index, so a basis is deterministic for a fixed generation
order.
"""

from __future__ import annotations

import os
import tempfile
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .diagrams import ChordDiagram, DiagramSum, enumerate_diagrams


class QuotientError(ValueError):
    pass


def _insert_point(points: list[int], after: int) -> list[int]:
    """Re-index a circle of points after inserting a new one in gap ``after``.

    ``points`` are current labels 0..n-1 in circle order; returns the map
    old label -> new label, with the inserted point taking index after+1.
    """
    return [p if p <= after else p + 1 for p in points]


def _four_term(other_pairs: list[tuple[int, int]], x: int,
               t_pair: tuple[int, int], npts: int) -> list[tuple[ChordDiagram, int]]:
    """The four signed diagrams for a mobile endpoint y around chord t.

    ``other_pairs`` / ``x`` / ``t_pair`` live on a circle of ``npts``
    points (the diagram with y removed).  Inserting y in the gap following
    position g shifts labels > g up by one; y lands at g+1.
    """
    terms = []
    for b in t_pair:
        for gap, sign in ((b, 1), ((b - 1) % npts, -1)):
            def lift(p, gap=gap):
                return p if p <= gap else p + 1
            y_new = gap + 1
            pairs = [(lift(a), lift(c)) for a, c in other_pairs]
            pairs.append((lift(t_pair[0]), lift(t_pair[1])))
            pairs.append((lift(x), y_new))
            terms.append((ChordDiagram(pairs), sign))
    return terms


def generate_4T(m: int, scheme: str = "both") -> list[DiagramSum]:
    """All 4T relation sums at degree m, deduplicated, zero sums dropped.

    ``scheme`` picks which endpoint of the first chord of each ordered
    chord pair is mobile: "max", "min", or "both".  The spanned subspace
    is the same; the stability of the quotient dimension across schemes is
    a regression test.
    """
    if scheme not in ("both", "max", "min"):
        raise QuotientError("unknown scheme %r" % scheme)
    if m < 2:
        return []
    out: list[DiagramSum] = []
    seen: set = set()
    choices = {"both": (True, False), "max": (True,), "min": (False,)}[scheme]
    for d in enumerate_diagrams(m):
        pairs = list(d.pairs())
        n = 2 * m
        for si in range(m):
            for ti in range(m):
                if si == ti:
                    continue
                for mobile_max in choices:
                    x, y = pairs[si] if mobile_max else (pairs[si][1], pairs[si][0])
                    # remove y, compact labels
                    drop = lambda p: p if p < y else p - 1
                    others = [(drop(a), drop(b)) for k, (a, b) in enumerate(pairs)
                              if k not in (si, ti)]
                    t_pair = (drop(pairs[ti][0]), drop(pairs[ti][1]))
                    rel: dict[ChordDiagram, Fraction] = {}
                    for term, sign in _four_term(others, drop(x), t_pair, n - 1):
                        rel[term] = rel.get(term, Fraction(0)) + sign
                    rel = {k: v for k, v in rel.items() if v}
                    if not rel:
                        continue
                    key = frozenset(rel.items())
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(DiagramSum(m, rel))
    return out


class QuotientBasis:
    """Degree-m diagram list plus the row-reduced 4T relation matrix.

    Rows are stored sparsely as (pivot column, {column: coefficient}) with
    the pivot coefficient normalised to 1 and pivot columns eliminated
    from all other rows (full RREF).  dim = number of free columns.
    """

    def __init__(self, degree: int, diagrams: Sequence[ChordDiagram],
                 rows: list[tuple[int, dict[int, Fraction]]]):
        self.degree = degree
        self.diagrams = tuple(diagrams)
        self.index = {d: i for i, d in enumerate(self.diagrams)}
        self.rows = rows
        self.pivot_cols = [p for p, _ in rows]
        pivot_set = set(self.pivot_cols)
        self.free_cols = [i for i in range(len(self.diagrams))
                          if i not in pivot_set]
        self.dim = len(self.free_cols)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def vector_of(self, v: DiagramSum) -> dict[int, Fraction]:
        if v.degree != self.degree and not v.is_zero():
            raise QuotientError("degree mismatch: sum of degree %d vs basis %d"
                                % (v.degree, self.degree))
        vec: dict[int, Fraction] = {}
        for d, c in v.items():
            vec[self.index[d]] = c
        return vec


def _rref_insert(rows: list[tuple[int, dict[int, Fraction]]],
                 vec: dict[int, Fraction]) -> None:
    """Reduce vec against rows; if nonzero, normalise and insert, keeping RREF."""
    vec = dict(vec)
    for pivot, row in rows:
        c = vec.get(pivot)
        if c:
            for col, rc in row.items():
                nv = vec.get(col, Fraction(0)) - c * rc
                if nv:
                    vec[col] = nv
                else:
                    vec.pop(col, None)
    vec = {k: v for k, v in vec.items() if v}
    if not vec:
        return
    pivot = min(vec)
    inv = 1 / vec[pivot]
    new_row = {k: v * inv for k, v in vec.items()}
    # eliminate the new pivot from existing rows
    for _, row in rows:
        c = row.get(pivot)
        if c:
            for col, rc in new_row.items():
                nv = row.get(col, Fraction(0)) - c * rc
                if nv:
                    row[col] = nv
                else:
                    row.pop(col, None)
    rows.append((pivot, new_row))
    rows.sort(key=lambda pr: pr[0])


@lru_cache(maxsize=None)
def _build_basis_cached(m: int, scheme: str) -> QuotientBasis:
    diagrams = enumerate_diagrams(m)
    rows: list[tuple[int, dict[int, Fraction]]] = []
    stub = QuotientBasis(m, diagrams, [])
    for rel in generate_4T(m, scheme=scheme):
        _rref_insert(rows, stub.vector_of(rel))
    return QuotientBasis(m, diagrams, rows)


def build_basis(m: int, cache_dir: str | None = None,
                scheme: str = "both") -> QuotientBasis:
    """RREF basis of the degree-m 4T quotient, optionally disk-cached."""
    if m < 0:
        raise QuotientError("degree must be >= 0")
    if cache_dir is not None and scheme == "both":
        path = os.path.join(cache_dir, "basis_%d.4tbasis" % m)
        if os.path.exists(path):
            loaded = load_basis(path)
            if loaded.degree == m:
                return loaded
        basis = _build_basis_cached(m, scheme)
        save_basis(basis, path)
        return basis
    return _build_basis_cached(m, scheme)


def reduce(v: DiagramSum, basis: QuotientBasis) -> list[Fraction]:
    """Coordinates of v's class on the free columns of the basis."""
    vec = basis.vector_of(v)
    for pivot, row in basis.rows:
        c = vec.get(pivot)
        if c:
            for col, rc in row.items():
                nv = vec.get(col, Fraction(0)) - c * rc
                if nv:
                    vec[col] = nv
                else:
                    vec.pop(col, None)
    return [vec.get(col, Fraction(0)) for col in basis.free_cols]


def equal_mod_4T(a: DiagramSum, b: DiagramSum, basis: QuotientBasis) -> bool:
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise QuotientError("degree mismatch: %d vs %d" % (a.degree, b.degree))
    return all(c == 0 for c in reduce(a - b, basis))


class WeightSystem:
    """A linear functional on degree-m diagrams satisfying 4T.

    Stored as one rational value per diagram of ``enumerate_diagrams(m)``.
    Compliance with the relations is assertable via
    :func:`annihilates_relations` and is part of the test suite for every
    constructor used here.
    """

    __slots__ = ("degree", "values", "label")

    def __init__(self, degree: int, values: Sequence, label: str):
        self.degree = degree
        self.values = tuple(Fraction(v) for v in values)
        if len(self.values) != len(enumerate_diagrams(degree)):
            raise QuotientError("expected %d values"
                                % len(enumerate_diagrams(degree)))
        self.label = label

    def __repr__(self) -> str:
        return "WeightSystem(degree=%d, label=%r)" % (self.degree, self.label)


def weight_system_from_function(m: int, fn: Callable[[ChordDiagram], object],
                                label: str) -> WeightSystem:
    return WeightSystem(m, [fn(d) for d in enumerate_diagrams(m)], label)


def evaluate(W: WeightSystem, v: DiagramSum) -> Fraction:
    if v.is_zero():
        return Fraction(0)
    if W.degree != v.degree:
        raise QuotientError("degree mismatch: weight %d vs sum %d"
                            % (W.degree, v.degree))
    index = {d: i for i, d in enumerate(enumerate_diagrams(W.degree))}
    return sum((c * W.values[index[d]] for d, c in v.items()), Fraction(0))


def dual_weights(basis: QuotientBasis) -> list[WeightSystem]:
    """The dual basis: for each free column, 1 there, 0 on the other free
    columns, extended to annihilate every relation row."""
    out = []
    for k, f in enumerate(basis.free_cols):
        values = [Fraction(0)] * len(basis.diagrams)
        values[f] = Fraction(1)
        for pivot, row in basis.rows:
            # w(pivot) = -sum over free cols of row coefficients times w
            values[pivot] = -row.get(f, Fraction(0))
        out.append(WeightSystem(basis.degree, values, "dual:%d" % k))
    return out


def annihilates_relations(W: WeightSystem, relations: Iterable[DiagramSum]) -> bool:
    return all(evaluate(W, rel) == 0 for rel in relations)


# --- disk cache -------------------------------------------------------------

def save_basis(basis: QuotientBasis, path: str) -> None:
    """Write the basis cache file atomically (write-temp-then-rename)."""
    lines = ["4tbasis v1 degree=%d diagrams=%d dim=%d"
             % (basis.degree, len(basis.diagrams), basis.dim)]
    for d in basis.diagrams:
        lines.append(",".join("%d-%d" % p for p in d.pairs()) or "empty")
    for pivot, row in basis.rows:
        cells = " ".join("%d=%s" % (col, _fmt_frac(row[col]))
                         for col in sorted(row))
        lines.append("row: %s" % cells)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".",
                               prefix=".4tbasis-tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else "%d/%d" % (
        x.numerator, x.denominator)


def load_basis(path: str) -> QuotientBasis:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh]
    if not lines or not lines[0].startswith("4tbasis v1 "):
        raise QuotientError("not a 4tbasis v1 file: %s" % path)
    header = dict(kv.split("=") for kv in lines[0].split()[2:])
    m = int(header["degree"])
    ndiag = int(header["diagrams"])
    diagrams = []
    for ln in lines[1:1 + ndiag]:
        if ln == "empty":
            diagrams.append(ChordDiagram(()))
            continue
        pairs = [tuple(map(int, p.split("-"))) for p in ln.split(",")]
        diagrams.append(ChordDiagram(pairs))
    expected = enumerate_diagrams(m)
    if tuple(diagrams) != expected:
        raise QuotientError("cache file %s does not match the degree-%d "
                            "diagram enumeration" % (path, m))
    rows = []
    for ln in lines[1 + ndiag:]:
        if not ln.strip():
            continue
        if not ln.startswith("row: "):
            raise QuotientError("bad cache row %r" % ln)
        row: dict[int, Fraction] = {}
        for cell in ln[5:].split():
            col, val = cell.split("=")
            row[int(col)] = Fraction(val)
        pivot = min(row)
        rows.append((pivot, row))
    basis = QuotientBasis(m, diagrams, rows)
    if basis.dim != int(header["dim"]):
        raise QuotientError("cache dim mismatch in %s" % path)
    return basis
