"""Chord diagrams on an oriented circle, and linear combinations of them.

Conventions used throughout the package:

* A degree-m chord diagram lives on 2m marked points of a circle (the
  Wilson loop), numbered 0..2m-1 in the counterclockwise direction.
* The pairing is a fixed-point-free involution, stored as a tuple ``p``
  with ``p[i]`` the partner of point ``i``.
* Two diagrams are identified when they differ by a rotation of the
  circle.  Reflections are *not* identified; the loop is oriented.
* The stored representative is rotation-minimal: among the 2m rotations
  ``k -> (k + r) mod 2m``, the one whose sorted list of (min, max) chord
  pairs is lexicographically least.  That sorted pair list is also the
  textual encoding ``cd[a-b,c-d,...]``.
* The basepoint of a diagram sits between points 2m-1 and 0; connect-sums
  cut there by default.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator


class DiagramError(ValueError):
    """Raised for ill-formed chord diagram input."""


def _as_pairing(data) -> tuple[int, ...]:
    """Normalise input (pairing sequence, or iterable of pairs) to a pairing tuple."""
    if isinstance(data, ChordDiagram):
        return data.pairing
    data = list(data)
    if data and not isinstance(data[0], int):
        # iterable of pairs
        pairs = [tuple(p) for p in data]
        n = 2 * len(pairs)
        pairing = [-1] * n
        for a, b in pairs:
            if a == b:
                raise DiagramError("endpoint paired with itself: %d" % a)
            for e in (a, b):
                if not 0 <= e < n:
                    raise DiagramError(
                        "endpoint %d out of range for %d points" % (e, n))
            if pairing[a] != -1 or pairing[b] != -1:
                raise DiagramError("duplicate endpoint in %r" % ((a, b),))
            pairing[a] = b
            pairing[b] = a
        return tuple(pairing)
    return tuple(data)


def _check_pairing(p: tuple[int, ...]) -> None:
    n = len(p)
    if n % 2:
        raise DiagramError("odd number of endpoints: %d" % n)
    for i, j in enumerate(p):
        if not 0 <= j < n:
            raise DiagramError("partner %r of %d out of range" % (j, i))
        if j == i:
            raise DiagramError("endpoint paired with itself: %d" % i)
        if p[j] != i:
            raise DiagramError("not an involution at %d" % i)


def rotate_pairing(p: tuple[int, ...], r: int) -> tuple[int, ...]:
    """The pairing after rotating every point by +r (mod 2m)."""
    n = len(p)
    if n == 0:
        return ()
    r %= n
    return tuple((p[(i - r) % n] + r) % n for i in range(n))


def _pairs_of(p: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    """Sorted (min, max) chord pairs; this is the canonical-form comparison key."""
    return tuple((i, p[i]) for i in range(len(p)) if i < p[i])


def canonical_pairing(p: tuple[int, ...]) -> tuple[int, ...]:
    n = len(p)
    if n == 0:
        return ()
    best = min(_pairs_of(rotate_pairing(p, r)) for r in range(n))
    pairing = [0] * n
    for a, b in best:
        pairing[a] = b
        pairing[b] = a
    return tuple(pairing)


class ChordDiagram:
    """A perfect matching on 2m cyclically ordered points, rotation-minimal."""

    __slots__ = ("pairing", "_hash")

    def __init__(self, pairing, _canonical: bool = False):
        p = _as_pairing(pairing)
        if not _canonical:
            _check_pairing(p)
            p = canonical_pairing(p)
        self.pairing = p
        self._hash = hash(p)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "ChordDiagram":
        return cls(list(pairs))

    @property
    def degree(self) -> int:
        return len(self.pairing) // 2

    @property
    def size(self) -> int:
        return len(self.pairing)

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return _pairs_of(self.pairing)

    def rotated(self, r: int) -> tuple[int, ...]:
        """Raw (non-canonical) pairing of this diagram rotated by +r."""
        return rotate_pairing(self.pairing, r)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChordDiagram) and self.pairing == other.pairing

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "ChordDiagram") -> bool:
        return (self.degree, self.pairs()) < (other.degree, other.pairs())

    def __repr__(self) -> str:
        inner = ",".join("%d-%d" % p for p in self.pairs())
        return "cd[%s]" % inner


EMPTY_DIAGRAM = ChordDiagram((), _canonical=True)
SINGLE_CHORD = ChordDiagram((1, 0), _canonical=True)


def canonical_form(raw) -> ChordDiagram:
    """Rotation-minimal representative of a fixed-point-free involution.

    Accepts a pairing sequence (``p[i]`` = partner of i) or an iterable of
    endpoint pairs.  Idempotent; raises :class:`DiagramError` on an odd
    ground set or non-involution input.
    """
    return ChordDiagram(raw)


def _matchings(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    """All perfect matchings on the given points, as pair tuples."""
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        sub = rest[:k] + rest[k + 1:]
        for tail in _matchings(sub):
            yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def enumerate_diagrams(m: int) -> tuple[ChordDiagram, ...]:
    """All degree-m chord diagrams up to rotation, sorted in encoding order.

    Generates the (2m-1)!! raw matchings, canonicalises, deduplicates.
    """
    if m < 0:
        raise DiagramError("degree must be >= 0")
    seen = set()
    for pairs in _matchings(tuple(range(2 * m))):
        seen.add(ChordDiagram(list(pairs)))
    return tuple(sorted(seen))


def connect_sum(a: ChordDiagram, b: ChordDiagram,
                cut_a: int = 0, cut_b: int = 0) -> ChordDiagram:
    """Connect-sum of two diagrams, cutting each loop at its basepoint.

    Both loops are cut between points 2m-1 and 0 of the stored
    representative (after rotating by ``cut_a`` / ``cut_b``, for tests of
    basepoint independence) and concatenated: b's endpoints are shifted
    past a's.  Well-defined only modulo 4T; this is the chosen
    representative.
    """
    pa = rotate_pairing(a.pairing, cut_a) if cut_a else a.pairing
    pb = rotate_pairing(b.pairing, cut_b) if cut_b else b.pairing
    na = len(pa)
    merged = tuple(pa) + tuple(x + na for x in pb)
    return ChordDiagram(merged)


def has_isolated_chord(d: ChordDiagram) -> bool:
    """True iff some chord's endpoints are cyclically adjacent."""
    n = len(d.pairing)
    if n == 0:
        return False
    return any(d.pairing[i] == (i + 1) % n or d.pairing[i] == (i - 1) % n
               for i in range(n))


def _coerce(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class DiagramSum:
    """A finite rational linear combination of canonical chord diagrams.

    All diagrams share one degree; zero coefficients are never stored.  A
    zero sum still carries a degree so that operators can report their
    target grading, but adding a zero sum to a sum of another degree is
    permitted (the zero side is absorbed).
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        t: dict[ChordDiagram, Fraction] = {}
        if terms:
            for d, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _coerce(c)
                if c == 0:
                    continue
                if d.degree != degree:
                    raise DiagramError(
                        "degree mismatch: diagram of degree %d in degree-%d sum"
                        % (d.degree, degree))
                t[d] = t.get(d, Fraction(0)) + c
                if t[d] == 0:
                    del t[d]
        self._terms = t

    @classmethod
    def zero(cls, degree: int) -> "DiagramSum":
        return cls(degree)

    @classmethod
    def single(cls, d: ChordDiagram, coeff=1) -> "DiagramSum":
        return cls(d.degree, {d: _coerce(coeff)})

    def items(self):
        return self._terms.items()

    def diagrams(self):
        return self._terms.keys()

    def coefficient(self, d: ChordDiagram) -> Fraction:
        return self._terms.get(d, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def mass(self) -> Fraction:
        """Sum of all coefficients."""
        return sum(self._terms.values(), Fraction(0))

    def _combine(self, other: "DiagramSum", sign: int) -> "DiagramSum":
        if not isinstance(other, DiagramSum):
            return NotImplemented
        if self.degree != other.degree and self._terms and other._terms:
            raise DiagramError("degree mismatch in sum: %d vs %d"
                               % (self.degree, other.degree))
        degree = self.degree if self._terms or not other._terms else other.degree
        t = dict(self._terms)
        for d, c in other._terms.items():
            t[d] = t.get(d, Fraction(0)) + sign * c
            if t[d] == 0:
                del t[d]
        out = DiagramSum(degree)
        out._terms = t
        return out

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, c) -> "DiagramSum":
        c = _coerce(c)
        out = DiagramSum(self.degree)
        if c != 0:
            out._terms = {d: x * c for d, x in self._terms.items()}
        return out

    def __rmul__(self, c):
        return self.scaled(c)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiagramSum):
            return NotImplemented
        if self._terms != other._terms:
            return False
        # two zero sums are equal regardless of their nominal degree
        return not self._terms or self.degree == other.degree

    def __hash__(self):
        return hash((self.degree, frozenset(self._terms.items())))

    def sorted_items(self) -> list[tuple[ChordDiagram, Fraction]]:
        return sorted(self._terms.items(), key=lambda kv: kv[0].pairs())

    def __repr__(self) -> str:
        if not self._terms:
            return "DiagramSum(0; degree=%d)" % self.degree
        body = " + ".join("%s*%r" % (c, d) for d, c in self.sorted_items())
        return "DiagramSum(%s)" % body


def diagram_sum(terms: Iterable[tuple[ChordDiagram, object]], degree: int | None = None) -> DiagramSum:
    """Build a DiagramSum from (diagram, coefficient) pairs."""
    terms = list(terms)
    if degree is None:
        if not terms:
            raise DiagramError("degree required for an empty sum")
        degree = terms[0][0].degree
    return DiagramSum(degree, terms)


class TensorSum:
    """A rational combination of ordered pairs of chord diagrams.

    Left degree plus right degree is constant across terms; that total is
    the degree of the coproduct's argument.
    """

    __slots__ = ("degree", "_terms")

    def __init__(self, degree: int, terms=None):
        self.degree = degree
        t: dict[tuple[ChordDiagram, ChordDiagram], Fraction] = {}
        if terms:
            for key, c in (terms.items() if isinstance(terms, dict) else terms):
                c = _coerce(c)
                if c == 0:
                    continue
                left, right = key
                if left.degree + right.degree != degree:
                    raise DiagramError("tensor term degrees %d+%d != %d"
                                       % (left.degree, right.degree, degree))
                t[key] = t.get(key, Fraction(0)) + c
                if t[key] == 0:
                    del t[key]
        self._terms = t

    def items(self):
        return self._terms.items()

    def coefficient(self, left: ChordDiagram, right: ChordDiagram) -> Fraction:
        return self._terms.get((left, right), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def swap(self) -> "TensorSum":
        return TensorSum(self.degree,
                         {(r, l): c for (l, r), c in self._terms.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorSum) and self.degree == other.degree
                and self._terms == other._terms)

    def __repr__(self) -> str:
        body = " + ".join("%s*(%r (x) %r)" % (c, l, r)
                          for (l, r), c in sorted(
                              self._terms.items(),
                              key=lambda kv: (kv[0][0].pairs(), kv[0][1].pairs())))
        return "TensorSum(%s)" % (body or "0")


def _restrict(pairs: tuple[tuple[int, int], ...],
              chosen: tuple[int, ...]) -> ChordDiagram:
    """Sub-diagram on a subset of chords, endpoints re-indexed in cyclic order."""
    kept = [pairs[i] for i in chosen]
    endpoints = sorted(e for p in kept for e in p)
    index = {e: k for k, e in enumerate(endpoints)}
    return ChordDiagram([(index[a], index[b]) for a, b in kept])


def coproduct(d: ChordDiagram) -> TensorSum:
    """Sum over all ways of splitting the chords into an ordered pair of sets.

    Each of the 2^m chord subsets S contributes (restriction to S) tensor
    (restriction to the complement); colliding terms accumulate, so the
    total coefficient mass is 2^m.
    """
    pairs = d.pairs()
    m = d.degree
    out: dict[tuple[ChordDiagram, ChordDiagram], Fraction] = {}
    indices = tuple(range(m))
    for k in range(m + 1):
        for chosen in itertools.combinations(indices, k):
            rest = tuple(i for i in indices if i not in chosen)
            key = (_restrict(pairs, chosen), _restrict(pairs, rest))
            out[key] = out.get(key, Fraction(0)) + 1
    return TensorSum(m, out)
