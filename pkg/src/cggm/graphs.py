"""Vertex/edge-colored undirected graphs and their orbit (RCOP) colorings.

Vertices are the integers 1..p.  A coloring is an ordered partition of the
vertices into classes V_1..V_r plus an ordered partition of the edges into
classes E_{r+1}..E_{r+R}.  Color 0 is reserved for non-adjacent pairs, colors
1..r are the loop (vertex) colors and r+1..r+R the edge colors, so the single
function ``color_of(g, v, w)`` describes the whole coloring on the reflexive
extension of the graph (every vertex carries an implicit loop).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    GroupOrderCapError,
    InvalidGraphError,
    NotAutomorphismError,
)

Edge = tuple[int, int]

#: BFS enumeration cap for permutation groups (see is_generously_transitive).
DEFAULT_GROUP_CAP = 10_000


def _norm_edge(v, w) -> Edge:
    return (v, w) if v < w else (w, v)


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected graph with ordered vertex- and edge-color partitions."""

    p: int
    edges: frozenset
    vertex_classes: tuple
    edge_classes: tuple

    # derived lookups, filled in __post_init__
    _color: dict = field(repr=False, compare=False, default=None)
    _adj: dict = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        color = {}
        for i, cls in enumerate(self.vertex_classes, start=1):
            for v in cls:
                color[(v, v)] = i
        for j, cls in enumerate(self.edge_classes, start=self.r + 1):
            for e in cls:
                color[e] = j
        adj = {v: set() for v in range(1, self.p + 1)}
        for v, w in self.edges:
            adj[v].add(w)
            adj[w].add(v)
        object.__setattr__(self, "_color", color)
        object.__setattr__(self, "_adj", adj)

    @property
    def r(self) -> int:
        return len(self.vertex_classes)

    @property
    def n_edge_colors(self) -> int:
        return len(self.edge_classes)

    @property
    def n_colors(self) -> int:
        return self.r + self.n_edge_colors

    def vertices(self):
        return range(1, self.p + 1)

    def neighbors(self, v) -> set:
        return self._adj[v]

    def adjacent(self, v, w) -> bool:
        return w in self._adj[v]

    def color_of(self, v, w=None) -> int:
        """Color of an extended edge; 0 for a non-adjacent pair v != w."""
        if w is None:
            w = v
        if not (1 <= v <= self.p and 1 <= w <= self.p):
            raise InvalidGraphError(f"vertex out of range: ({v}, {w}), p={self.p}")
        if v == w:
            return self._color[(v, v)]
        return self._color.get(_norm_edge(v, w), 0)

    def vertex_color(self, v) -> int:
        return self.color_of(v, v)

    def extended_edges(self):
        """All loops (v, v) and edges (v, w), v < w, in lexicographic order."""
        for v in self.vertices():
            yield (v, v)
        for e in sorted(self.edges):
            yield e

    def color_class(self, k):
        """Members of color class k as a sorted list of extended edges."""
        if 1 <= k <= self.r:
            return [(v, v) for v in sorted(self.vertex_classes[k - 1])]
        if self.r < k <= self.n_colors:
            return sorted(self.edge_classes[k - self.r - 1])
        raise InvalidGraphError(f"color index out of range: {k}")

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.p, self.p), dtype=np.int64)
        for v, w in self.edges:
            a[v - 1, w - 1] = 1
            a[w - 1, v - 1] = 1
        return a


def build(p, edges, vertex_classes, edge_classes) -> ColoredGraph:
    """Validate and construct a colored graph.

    Raises InvalidGraphError on overlapping/incomplete partitions, an edge
    class containing a non-edge, or a self-loop in the edge list.
    """
    if p < 1:
        raise InvalidGraphError(f"vertex count must be positive, got {p}")
    edge_set = set()
    for e in edges:
        v, w = e
        if v == w:
            raise InvalidGraphError(f"self-loop not allowed: {e}")
        if not (1 <= v <= p and 1 <= w <= p):
            raise InvalidGraphError(f"edge out of range: {e}")
        edge_set.add(_norm_edge(v, w))

    seen = set()
    vcs = []
    for cls in vertex_classes:
        cls = tuple(sorted(cls))
        if not cls:
            raise InvalidGraphError("empty vertex class")
        for v in cls:
            if not (1 <= v <= p):
                raise InvalidGraphError(f"vertex out of range in class: {v}")
            if v in seen:
                raise InvalidGraphError(f"vertex {v} appears in two classes")
            seen.add(v)
        vcs.append(cls)
    if len(seen) != p:
        missing = sorted(set(range(1, p + 1)) - seen)
        raise InvalidGraphError(f"vertex classes do not cover {missing}")

    seen_e = set()
    ecs = []
    for cls in edge_classes:
        cls = tuple(sorted(_norm_edge(*e) for e in cls))
        if not cls:
            raise InvalidGraphError("empty edge class")
        for e in cls:
            if e not in edge_set:
                raise InvalidGraphError(f"edge class contains a non-edge: {e}")
            if e in seen_e:
                raise InvalidGraphError(f"edge {e} appears in two classes")
            seen_e.add(e)
        ecs.append(cls)
    if len(seen_e) != len(edge_set):
        missing = sorted(edge_set - seen_e)
        raise InvalidGraphError(f"edge classes do not cover {missing}")

    return ColoredGraph(p, frozenset(edge_set), tuple(vcs), tuple(ecs))


def color_of(g: ColoredGraph, v, w=None) -> int:
    return g.color_of(v, w)


def uncolored(p, edges) -> ColoredGraph:
    """All-singleton coloring: every vertex and edge is its own class."""
    edge_set = sorted(_norm_edge(*e) for e in set(map(tuple, edges)))
    return build(
        p,
        edge_set,
        [(v,) for v in range(1, p + 1)],
        [(e,) for e in edge_set],
    )


# ---------------------------------------------------------------------------
# permutation groups and RCOP colorings


def _check_permutation(sigma, p):
    if sorted(sigma) != list(range(1, p + 1)):
        raise InvalidGraphError(f"not a permutation of 1..{p}: {sigma}")


def _check_automorphism(sigma, p, edge_set):
    _check_permutation(sigma, p)
    for v, w in edge_set:
        if _norm_edge(sigma[v - 1], sigma[w - 1]) not in edge_set:
            raise NotAutomorphismError(
                f"generator {sigma} maps edge ({v},{w}) to a non-edge"
            )


def rcop_coloring(p, edges, generators) -> ColoredGraph:
    """Coloring whose classes are the orbits of the generated group on loops and edges.

    Orbits are computed by closure of the generator action on extended edges
    directly (union-find), so the group itself is never enumerated.
    """
    edge_set = {(_norm_edge(*e)) for e in map(tuple, edges)}
    for e in edge_set:
        if e[0] == e[1]:
            raise InvalidGraphError(f"self-loop not allowed: {e}")
    gens = [tuple(sig) for sig in generators]
    for sig in gens:
        _check_automorphism(sig, p, edge_set)

    items = [(v, v) for v in range(1, p + 1)] + sorted(edge_set)
    parent = {e: e for e in items}

    def find(e):
        root = e
        while parent[root] != root:
            root = parent[root]
        while parent[e] != root:
            parent[e], e = root, parent[e]
        return root

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for sig in gens:
        for e in items:
            v, w = e
            union(e, _norm_edge(sig[v - 1], sig[w - 1]))

    orbits = {}
    for e in items:
        orbits.setdefault(find(e), []).append(e)
    loop_orbits = sorted(
        (sorted(o) for o in orbits.values() if o[0][0] == o[0][1]),
        key=lambda o: o[0],
    )
    edge_orbits = sorted(
        (sorted(o) for o in orbits.values() if o[0][0] != o[0][1]),
        key=lambda o: o[0],
    )
    return build(
        p,
        sorted(edge_set),
        [[v for v, _ in o] for o in loop_orbits],
        edge_orbits,
    )


def enumerate_group(generators, p, cap=DEFAULT_GROUP_CAP):
    """BFS closure of the generators; raises GroupOrderCapError beyond cap."""
    gens = [tuple(sig) for sig in generators]
    for sig in gens:
        _check_permutation(sig, p)
    identity = tuple(range(1, p + 1))
    group = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for sig in frontier:
            for gen in gens:
                composed = tuple(gen[sig[i] - 1] for i in range(p))
                if composed not in group:
                    group.add(composed)
                    nxt.append(composed)
                    if len(group) > cap:
                        raise GroupOrderCapError(
                            f"group order exceeds cap {cap}; answer unknown"
                        )
        frontier = nxt
    return group


def vertex_orbits(generators, p):
    """Orbits of the generated group on vertices (no group enumeration)."""
    parent = list(range(p + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for sig in generators:
        for v in range(1, p + 1):
            rv, rw = find(v), find(sig[v - 1])
            if rv != rw:
                parent[max(rv, rw)] = min(rv, rw)
    orbits = {}
    for v in range(1, p + 1):
        orbits.setdefault(find(v), []).append(v)
    return sorted(orbits.values())


def is_generously_transitive(generators, p, cap=DEFAULT_GROUP_CAP) -> bool:
    """True iff on every vertex orbit each pair can be swapped by a group element.

    Enumerates the group by BFS; raises GroupOrderCapError if its order
    exceeds ``cap`` (the answer is then unknown, not false).
    """
    group = enumerate_group(generators, p, cap=cap)
    swapped = set()
    for sig in group:
        for v in range(1, p + 1):
            w = sig[v - 1]
            if w > v and sig[w - 1] == v:
                swapped.add((v, w))
    for orbit in vertex_orbits([tuple(s) for s in generators], p):
        for a in range(len(orbit)):
            for b in range(a + 1, len(orbit)):
                if (orbit[a], orbit[b]) not in swapped:
                    return False
    return True


# ---------------------------------------------------------------------------
# basis matrices and relabeling


@dataclass(frozen=True)
class BasisMatrix:
    """0/1 indicator matrix of one extended-edge color class."""

    color: int
    matrix: np.ndarray


def basis_matrices(g: ColoredGraph):
    """Indicator matrices J^k, k = 1..r+R; their supports partition the
    support of the reflexive extension."""
    out = []
    for k in range(1, g.n_colors + 1):
        m = np.zeros((g.p, g.p), dtype=np.int64)
        for v, w in g.color_class(k):
            m[v - 1, w - 1] = 1
            m[w - 1, v - 1] = 1
        out.append(BasisMatrix(k, m))
    return out


def apply_vertex_permutation(g: ColoredGraph, perm, class_order=None) -> ColoredGraph:
    """Rename vertex v to perm[v-1]; optionally reorder vertex classes."""
    if sorted(perm) != list(range(1, g.p + 1)):
        raise InvalidGraphError("perm is not a vertex permutation")
    order = class_order if class_order is not None else range(1, g.r + 1)
    vcs = [[perm[v - 1] for v in g.vertex_classes[i - 1]] for i in order]
    ecs = [
        [_norm_edge(perm[v - 1], perm[w - 1]) for v, w in cls]
        for cls in g.edge_classes
    ]
    edges = [_norm_edge(perm[v - 1], perm[w - 1]) for v, w in g.edges]
    return build(g.p, edges, vcs, ecs)


def relabel_for_ordering(g: ColoredGraph, eta):
    """Renumber vertices so the classes V_eta_1, ..., V_eta_r occupy
    consecutive index blocks 1..n_1, n_1+1..n_1+n_2, ...

    Returns (relabeled graph, perm) with perm[v-1] the new label of old
    vertex v.  In the result, vertex class i is the i-th eliminated class.
    """
    eta = tuple(eta)
    if sorted(eta) != list(range(1, g.r + 1)):
        raise InvalidGraphError(f"eta is not a permutation of 1..{g.r}: {eta}")
    perm = [0] * g.p
    nxt = 1
    for i in eta:
        for v in sorted(g.vertex_classes[i - 1]):
            perm[v - 1] = nxt
            nxt += 1
    return apply_vertex_permutation(g, perm, class_order=eta), tuple(perm)


# ---------------------------------------------------------------------------
# JSON interchange


def graph_to_json(g: ColoredGraph) -> dict:
    return {
        "p": g.p,
        "edges": [list(e) for e in sorted(g.edges)],
        "vertex_classes": [list(c) for c in g.vertex_classes],
        "edge_classes": [[list(e) for e in c] for c in g.edge_classes],
    }


def graph_from_json(obj) -> ColoredGraph:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        p = int(obj["p"])
        edges = [tuple(e) for e in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed graph JSON: {exc}") from exc
    if "generators" in obj:
        gens = [tuple(int(x) for x in sig) for sig in obj["generators"]]
        return rcop_coloring(p, edges, gens)
    try:
        vcs = [tuple(int(v) for v in c) for c in obj["vertex_classes"]]
        ecs = [[tuple(e) for e in c] for c in obj["edge_classes"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed graph JSON: {exc}") from exc
    return build(p, edges, vcs, ecs)
