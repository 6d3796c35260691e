"""Feynman diagrams: trivalent graphs on the Wilson loop, and STU resolution.

A Feynman diagram (FD) has u univalent legs attached to the oriented
Wilson loop at order positions 0..u-1 (counterclockwise) and t internal
trivalent vertices whose three slots (0, 1, 2) are cyclically ordered
counterclockwise.  Anchors name half-edge endpoints:

* ``("L", k)``    -- leg at order position k,
* ``("V", i, j)`` -- slot j of internal vertex i.

An edge is an unordered pair of anchors; every anchor lies on exactly one
edge.  Multi-edges and same-vertex slot-to-slot edges are allowed (they
arise in the loop graphs), but every connected component of the graph must
carry at least one leg, otherwise STU cannot resolve it.

STU convention.  Resolving an internal vertex w through its leg at
position q removes the leg and re-attaches w's two remaining edges at the
two positions flanking q.  If the slots of w in counterclockwise order
starting from the leg slot are (leg, a, b), the positive term T puts b at
the earlier flank and a at the later flank; U is the swap, and the vertex
contributes T - U.  The pivot is always the vertex adjacent to the
earliest-positioned leg, which makes the resolved representative
deterministic; independence of the choice holds modulo 4T and is covered
by the test suite rather than assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .diagrams import ChordDiagram, DiagramSum

Anchor = tuple


class FeynmanError(ValueError):
    """Raised for ill-formed Feynman diagrams or unresolvable input."""


@dataclass(frozen=True)
class FeynmanDiagram:
    legs: int
    vertices: int
    edges: frozenset  # frozenset of frozenset({anchor, anchor})

    @property
    def degree(self) -> int:
        return (self.legs + self.vertices) // 2

    def sorted_edges(self) -> list[tuple[Anchor, Anchor]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def __repr__(self) -> str:
        edges = ";".join("%s~%s" % (_fmt_anchor(a), _fmt_anchor(b))
                         for a, b in self.sorted_edges())
        return "FD(u=%d,t=%d;%s)" % (self.legs, self.vertices, edges)


def _fmt_anchor(a: Anchor) -> str:
    if a[0] == "L":
        return "L%d" % a[1]
    return "v%d.%d" % (a[1], a[2])


def feynman_diagram(legs: int,
                    vertex_slots: Sequence[Sequence[Anchor]] = (),
                    chords: Iterable[tuple[int, int]] = ()) -> FeynmanDiagram:
    """Build an FD from a per-vertex slot table plus optional leg-leg chords.

    ``vertex_slots[i][j]`` is the anchor that slot j of vertex i connects
    to; entries referring to vertex slots must be mutually consistent.
    ``chords`` are pairs of leg positions joined directly.
    """
    edges = set()
    for i, slots in enumerate(vertex_slots):
        if len(slots) != 3:
            raise FeynmanError("vertex %d needs exactly 3 slots" % i)
        for j, target in enumerate(slots):
            a = ("V", i, j)
            t = tuple(target)
            if t == a:
                raise FeynmanError("slot %s connected to itself" % (a,))
            if t[0] == "V":
                vi, vj = t[1], t[2]
                if not (0 <= vi < len(vertex_slots)) or not 0 <= vj < 3:
                    raise FeynmanError("bad anchor %r" % (t,))
                back = tuple(vertex_slots[vi][vj])
                if back != a:
                    raise FeynmanError(
                        "slot table inconsistent: %s -> %s but %s -> %s"
                        % (_fmt_anchor(a), _fmt_anchor(t), _fmt_anchor(t),
                           _fmt_anchor(back)))
            edges.add(frozenset((a, t)))
    for a, b in chords:
        if a == b:
            raise FeynmanError("chord joins leg %d to itself" % a)
        edges.add(frozenset((("L", a), ("L", b))))
    fd = FeynmanDiagram(legs, len(vertex_slots), frozenset(edges))
    violations = validate_fd(fd)
    if violations:
        raise FeynmanError("; ".join(violations))
    return fd


def chord_fd(pairs: Iterable[tuple[int, int]], legs: int | None = None) -> FeynmanDiagram:
    """A vertex-free FD: legs paired directly into chords."""
    pairs = list(pairs)
    if legs is None:
        legs = 2 * len(pairs)
    return feynman_diagram(legs, (), pairs)


def validate_fd(f: FeynmanDiagram) -> list[str]:
    """Check every structural invariant; return all violations (empty = ok)."""
    violations = []
    seen: dict[Anchor, int] = {}
    for e in f.edges:
        anchors = tuple(e)
        if len(anchors) != 2:
            violations.append("edge %r does not join two distinct anchors"
                              % (sorted(e),))
            continue
        for a in anchors:
            seen[a] = seen.get(a, 0) + 1
            if a[0] == "L":
                if not 0 <= a[1] < f.legs:
                    violations.append("leg index %d out of range" % a[1])
            elif a[0] == "V":
                if not 0 <= a[1] < f.vertices or not 0 <= a[2] < 3:
                    violations.append("bad vertex anchor %r" % (a,))
            else:
                violations.append("unknown anchor tag %r" % (a[0],))
    for k in range(f.legs):
        n = seen.get(("L", k), 0)
        if n != 1:
            violations.append("leg arity: leg %d lies on %d edges" % (k, n))
    for i in range(f.vertices):
        for j in range(3):
            n = seen.get(("V", i, j), 0)
            if n != 1:
                violations.append("slot arity: vertex %d slot %d lies on %d edges"
                                  % (i, j, n))
    if (f.legs + f.vertices) % 2:
        violations.append("u + t = %d is odd" % (f.legs + f.vertices))
    if not violations:
        for comp_nodes, _ in _graph_components(f):
            if not any(n[0] == "L" for n in comp_nodes):
                violations.append("component without a leg: %s"
                                  % sorted(map(str, comp_nodes)))
    return violations


def _graph_components(f: FeynmanDiagram):
    """Connected components of the graph (Wilson loop removed).

    Nodes are legs ("L", k) and vertices ("V", i); yields
    (node set, edge count) per component.
    """
    parent: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    nodes = [("L", k) for k in range(f.legs)] + [("V", i) for i in range(f.vertices)]
    for n in nodes:
        parent[n] = n
    edge_node = lambda a: ("L", a[1]) if a[0] == "L" else ("V", a[1])
    for e in f.edges:
        a, b = tuple(e)
        union(edge_node(a), edge_node(b))
    comps: dict = {}
    for n in nodes:
        comps.setdefault(find(n), set()).add(n)
    counts: dict = {}
    for e in f.edges:
        a, _ = tuple(e)
        counts[find(edge_node(a))] = counts.get(find(edge_node(a)), 0) + 1
    for root, members in sorted(comps.items(), key=lambda kv: sorted(map(str, kv[1]))):
        yield members, counts.get(root, 0)


def component_genera(f: FeynmanDiagram) -> tuple[int, ...]:
    """Genus 1 - #vertices + #edges of each graph component, sorted."""
    out = []
    for members, nedges in _graph_components(f):
        out.append(1 - len(members) + nedges)
    return tuple(sorted(out))


def permute_legs(f: FeynmanDiagram, sigma: Sequence[int]) -> FeynmanDiagram:
    """Re-attach legs so the leg at order position k moves to position sigma[k]."""
    if sorted(sigma) != list(range(f.legs)):
        raise FeynmanError("not a permutation of %d legs: %r" % (f.legs, sigma))
    remap = lambda a: ("L", sigma[a[1]]) if a[0] == "L" else a
    edges = frozenset(frozenset(remap(a) for a in e) for e in f.edges)
    return FeynmanDiagram(f.legs, f.vertices, edges)


def sym(f: FeynmanDiagram) -> list[FeynmanDiagram]:
    """The u! leg re-orderings of f; their sum is the symmetrised FD."""
    return [permute_legs(f, sigma)
            for sigma in itertools.permutations(range(f.legs))]


def disjoint_union(f: FeynmanDiagram, g: FeynmanDiagram) -> FeynmanDiagram:
    """f next to g, g's legs following f's on the loop."""
    def shift(a: Anchor) -> Anchor:
        if a[0] == "L":
            return ("L", a[1] + f.legs)
        return ("V", a[1] + f.vertices, a[2])

    edges = set(f.edges)
    for e in g.edges:
        edges.add(frozenset(shift(a) for a in e))
    return FeynmanDiagram(f.legs + g.legs, f.vertices + g.vertices,
                          frozenset(edges))


def tau_prime(p: int) -> FeynmanDiagram:
    """Planar loop FD: a p-cycle of vertices, one radial leg each.

    Legs appear on the Wilson loop in the cyclic order of the loop's
    vertices; at vertex i the counterclockwise slot order is
    (leg i, edge to vertex i+1, edge to vertex i-1).
    """
    if p < 2:
        raise FeynmanError("loop length must be >= 2, got %d" % p)
    slots = []
    for i in range(p):
        nxt, prv = (i + 1) % p, (i - 1) % p
        slots.append((("L", i), ("V", nxt, 2), ("V", prv, 1)))
    return feynman_diagram(p, slots)


def check_partition(parts: Sequence[int], min_part: int = 1) -> tuple[int, ...]:
    parts = tuple(parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise FeynmanError("partition parts must be weakly decreasing: %r" % (parts,))
    if any(q < min_part for q in parts):
        raise FeynmanError("partition part below %d in %r" % (min_part, parts))
    return parts


def tau(partition: Sequence[int]) -> list[FeynmanDiagram]:
    """The symmetrised loop-union FD for a partition with all parts >= 2.

    Returns the m! leg-ordered FDs whose formal sum is the cabling
    eigenvector attached to the partition (m = weight).
    """
    parts = check_partition(partition, min_part=2)
    if not parts:
        raise FeynmanError("empty partition")
    base = tau_prime(parts[0])
    for q in parts[1:]:
        base = disjoint_union(base, tau_prime(q))
    return sym(base)


# --- STU resolution ---------------------------------------------------------

def stu_resolve(f: FeynmanDiagram) -> DiagramSum:
    """Resolve every internal vertex by STU into a canonical DiagramSum."""
    violations = validate_fd(f)
    if violations:
        raise FeynmanError("; ".join(violations))

    # points: circle order of attachment ids; conn: id -> ("c", id) chord
    # partner or ("v", vertex, slot); vert: vertex -> 3 anchors, each
    # ("p", id) or ("v", vertex, slot).
    points = list(range(f.legs))
    conn: dict = {}
    vert: dict[int, list] = {i: [None, None, None] for i in range(f.vertices)}
    for e in f.edges:
        a, b = tuple(sorted(e))
        for x, y in ((a, b), (b, a)):
            if x[0] == "L":
                conn[x[1]] = ("c", y[1]) if y[0] == "L" else ("v", y[1], y[2])
            else:
                vert[x[1]][x[2]] = ("p", y[1]) if y[0] == "L" else ("v", y[1], y[2])

    acc: dict[tuple, int] = {}
    fresh = itertools.count(f.legs)

    def emit(points, conn, sign):
        order = {pid: pos for pos, pid in enumerate(points)}
        pairing = [0] * len(points)
        for pid in points:
            pairing[order[pid]] = order[conn[pid][1]]
        key = ChordDiagram(tuple(pairing), _canonical=False).pairing
        acc[key] = acc.get(key, 0) + sign

    def attach(conn, vert, anchor, pid):
        if anchor[0] == "p":
            q = anchor[1]
            conn[q] = ("c", pid)
            conn[pid] = ("c", q)
        else:
            _, w2, j2 = anchor
            vert[w2][j2] = ("p", pid)
            conn[pid] = ("v", w2, j2)

    def resolve(points, conn, vert, sign):
        pivot = None
        for pos, pid in enumerate(points):
            if conn[pid][0] == "v":
                pivot = pos
                break
        if pivot is None:
            if vert:
                raise FeynmanError("internal vertices with no path to the loop")
            emit(points, conn, sign)
            return
        pid = points[pivot]
        _, w, j = conn[pid]
        a = vert[w][(j + 1) % 3]
        b = vert[w][(j + 2) % 3]
        if a[0] == "v" and a[1] == w:
            # self-loop at w: both resolutions give the same diagram, T - U = 0
            return
        n1, n2 = next(fresh), next(fresh)
        for early, late, branch_sign in ((b, a, sign), (a, b, -sign)):
            pts = points[:pivot] + [n1, n2] + points[pivot + 1:]
            cn = dict(conn)
            vt = {k: list(v) for k, v in vert.items() if k != w}
            del cn[pid]
            # anchors held by w's remaining slots may reference each other
            # only via w itself, which the self-loop branch already handled
            attach(cn, vt, early, n1)
            attach(cn, vt, late, n2)
            resolve(pts, cn, vt, branch_sign)

    resolve(points, conn, vert, 1)
    degree = f.degree
    return DiagramSum(degree,
                      {ChordDiagram(p, _canonical=True): Fraction(c)
                       for p, c in acc.items() if c})


def resolve_sum(fds: Iterable[FeynmanDiagram],
                coefficients: Iterable = None) -> DiagramSum:
    """Linear combination of STU resolutions (default coefficient 1 each)."""
    fds = list(fds)
    if not fds:
        raise FeynmanError("no diagrams to resolve")
    coefficients = list(coefficients) if coefficients is not None else [1] * len(fds)
    total = DiagramSum.zero(fds[0].degree)
    for f, c in zip(fds, coefficients):
        total = total + stu_resolve(f).scaled(c)
    return total


def stu_resolutions_all_orders(f: FeynmanDiagram, limit: int = 20000) -> list[DiagramSum]:
    """Every DiagramSum reachable by choosing pivot legs freely.

    Each unresolved branch may pick any internal-adjacent leg as its next
    pivot, which is a superset of the fixed-vertex-order resolutions.
    Exponential; intended for the choice-independence tests at low degree.
    """
    violations = validate_fd(f)
    if violations:
        raise FeynmanError("; ".join(violations))

    points0 = list(range(f.legs))
    conn0: dict = {}
    vert0: dict[int, list] = {i: [None, None, None] for i in range(f.vertices)}
    for e in f.edges:
        a, b = tuple(sorted(e))
        for x, y in ((a, b), (b, a)):
            if x[0] == "L":
                conn0[x[1]] = ("c", y[1]) if y[0] == "L" else ("v", y[1], y[2])
            else:
                vert0[x[1]][x[2]] = ("p", y[1]) if y[0] == "L" else ("v", y[1], y[2])

    fresh = itertools.count(f.legs)
    results: list[DiagramSum] = []

    def attach(conn, vert, anchor, pid):
        if anchor[0] == "p":
            conn[anchor[1]] = ("c", pid)
            conn[pid] = ("c", anchor[1])
        else:
            vert[anchor[1]][anchor[2]] = ("p", pid)
            conn[pid] = ("v", anchor[1], anchor[2])

    def simple(unfinished, finished_acc):
        if len(results) >= limit:
            return
        if not unfinished:
            results.append(DiagramSum(f.degree, dict(finished_acc)))
            return
        (points, conn, vert, sign) = unfinished[0]
        rest = unfinished[1:]
        pivots = [pos for pos, pid in enumerate(points) if conn[pid][0] == "v"]
        if not pivots:
            order = {pid: pos for pos, pid in enumerate(points)}
            pairing = [0] * len(points)
            for pid in points:
                pairing[order[pid]] = order[conn[pid][1]]
            d = ChordDiagram(tuple(pairing))
            acc = dict(finished_acc)
            acc[d] = acc.get(d, Fraction(0)) + sign
            simple(rest, acc)
            return
        for pivot in pivots:
            pid = points[pivot]
            _, w, j = conn[pid]
            a = vert[w][(j + 1) % 3]
            b = vert[w][(j + 2) % 3]
            branches = []
            if not (a[0] == "v" and a[1] == w):
                n1, n2 = next(fresh), next(fresh)
                for early, late, bsign in ((b, a, sign), (a, b, -sign)):
                    pts = points[:pivot] + [n1, n2] + points[pivot + 1:]
                    cn = dict(conn)
                    vt = {k: list(v) for k, v in vert.items() if k != w}
                    del cn[pid]
                    attach(cn, vt, early, n1)
                    attach(cn, vt, late, n2)
                    branches.append((pts, cn, vt, bsign))
            simple(branches + rest, finished_acc)

    simple([(points0, conn0, vert0, 1)], {})
    return results
