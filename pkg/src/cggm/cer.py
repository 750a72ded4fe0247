"""Color elimination orderings and 2-path regularity tests.

A color perfect elimination ordering (cpeo) is an ordering of the vertex
color classes such that every vertex is simplicial in the subgraph induced
by its own class and all later classes; any vertex order consistent with a
cpeo is a perfect elimination ordering, so the underlying graph is chordal.

The 2-path function m_{v->w}(k, h) counts intermediate vertices u, drawn
from classes ordered no later than those of v and w, with edge colors
c(v,u) = k and c(u,w) = h.  Condition (M1) asks the symmetrized count to be
constant on extended-edge color classes; (M2) asks m_{v->w} = m_{w->v} on
F x F for same-colored v, w, where F collects the colors joining vertices
of equal color; (M3) is the analogous constancy for counts whose
intermediate class lies between those of the endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ColorCountCapError, InvalidGraphError, NoCpeoError, NotPeoError
from .graphs import ColoredGraph

#: classify() refuses colorings with more classes than this (search is
#: exponential in r and the witnessing cpeo must be found exhaustively).
DEFAULT_R_CAP = 12


def is_simplicial(g: ColoredGraph, v, subset) -> bool:
    """True iff the neighbors of v inside ``subset`` form a clique."""
    subset = set(subset)
    if v not in subset:
        raise InvalidGraphError(f"vertex {v} not in subset")
    nbrs = [w for w in g.neighbors(v) if w in subset]
    for a in range(len(nbrs)):
        for b in range(a + 1, len(nbrs)):
            if not g.adjacent(nbrs[a], nbrs[b]):
                return False
    return True


def _class_simplicial(g, color, remaining):
    return all(is_simplicial(g, v, remaining) for v in g.vertex_classes[color - 1])


def is_cpeo(g: ColoredGraph, eta) -> bool:
    """Check the defining property: every vertex simplicial in the subgraph
    induced by its own class plus all later classes."""
    eta = tuple(eta)
    if sorted(eta) != list(range(1, g.r + 1)):
        raise InvalidGraphError(f"eta is not a permutation of 1..{g.r}: {eta}")
    remaining = set(g.vertices())
    for color in eta:
        if not _class_simplicial(g, color, remaining):
            return False
        remaining -= set(g.vertex_classes[color - 1])
    return True


def greedy_find_cpeo(g: ColoredGraph):
    """Greedy search with backtracking; candidate classes are tried in
    ascending color index.  Returns a cpeo tuple or None."""

    def rec(remaining, used):
        if len(used) == g.r:
            return ()
        for color in range(1, g.r + 1):
            if color in used:
                continue
            if _class_simplicial(g, color, remaining):
                rest = rec(remaining - set(g.vertex_classes[color - 1]), used | {color})
                if rest is not None:
                    return (color,) + rest
        return None

    return rec(set(g.vertices()), frozenset())


def _color_digraph(g):
    """Digraph H on colors: edge h -> k whenever some v in V_k has two
    non-adjacent neighbors w, w' in V_k union V_h, so class h must be
    eliminated strictly before class k in any cpeo."""
    succ = {k: set() for k in range(1, g.r + 1)}  # succ[h] = {k: h -> k}
    for v in g.vertices():
        k = g.vertex_color(v)
        nbrs = sorted(g.neighbors(v))
        for a in range(len(nbrs)):
            for b in range(a + 1, len(nbrs)):
                w, w2 = nbrs[a], nbrs[b]
                if g.adjacent(w, w2):
                    continue
                cw, cw2 = g.vertex_color(w), g.vertex_color(w2)
                if cw == k and cw2 == k:
                    for h in range(1, g.r + 1):
                        succ[h].add(k)  # k can never be eliminated
                elif cw == k:
                    succ[cw2].add(k)
                elif cw2 == k:
                    succ[cw].add(k)
                elif cw == cw2:
                    succ[cw].add(k)
    return succ


def cpeo_via_color_dag(g: ColoredGraph):
    """cpeo search driven by the color digraph H.

    A cycle in H (including a self-loop) certifies that no cpeo exists.
    When H is acyclic, every cpeo is one of its topological orders, but not
    every topological order is a cpeo: pairs of non-adjacent neighbors in
    two *different* other classes impose an or-constraint that H cannot
    express.  The sort therefore only emits a class once it is both ready in
    H and fully simplicial in the remaining graph, which keeps the result
    in exact agreement with greedy_find_cpeo on existence.
    """
    succ = _color_digraph(g)
    if any(k in succ[k] for k in succ):
        return None
    indeg = {k: 0 for k in range(1, g.r + 1)}
    for h in succ:
        for k in succ[h]:
            indeg[k] += 1
    if _has_cycle(succ, dict(indeg)):
        return None

    def rec(remaining, indeg, used):
        if len(used) == g.r:
            return ()
        for color in sorted(indeg):
            if color in used or indeg[color] > 0:
                continue
            if not _class_simplicial(g, color, remaining):
                continue
            nxt = dict(indeg)
            del nxt[color]
            for k in succ[color]:
                if k in nxt:
                    nxt[k] -= 1
            rest = rec(
                remaining - set(g.vertex_classes[color - 1]), nxt, used | {color}
            )
            if rest is not None:
                return (color,) + rest
        return None

    return rec(set(g.vertices()), indeg, frozenset())


def _has_cycle(succ, indeg):
    ready = [k for k, d in indeg.items() if d == 0]
    seen = 0
    while ready:
        h = ready.pop()
        seen += 1
        for k in succ[h]:
            indeg[k] -= 1
            if indeg[k] == 0:
                ready.append(k)
    return seen < len(succ)


def is_peo(g: ColoredGraph, peo) -> bool:
    peo = list(peo)
    if sorted(peo) != list(range(1, g.p + 1)):
        return False
    remaining = set(g.vertices())
    for v in peo:
        if not is_simplicial(g, v, remaining):
            return False
        remaining.discard(v)
    return True


def cpeo_from_peo(g: ColoredGraph, peo):
    """Derive a class ordering from a perfect elimination ordering: take the
    colors of the peo in order of first appearance among unused classes.
    Valid for orbit colorings; the result is verified to be a cpeo."""
    if not is_peo(g, peo):
        raise NotPeoError("peo is not a perfect elimination ordering")
    used = set()
    eta = []
    for v in peo:
        c = g.vertex_color(v)
        if c not in used:
            used.add(c)
            eta.append(c)
    eta = tuple(eta)
    if not is_cpeo(g, eta):
        raise NoCpeoError(
            "ordering derived from the peo is not a cpeo "
            "(coloring is not compatible with the elimination ordering)"
        )
    return eta


# ---------------------------------------------------------------------------
# 2-path counting


def _positions(g, eta):
    pos = [0] * (g.r + 1)
    for idx, color in enumerate(eta, start=1):
        pos[color] = idx
    return pos


def _two_path_counts(g, pos, v, w) -> np.ndarray:
    """Directed table m_{v->w}; entry (k, h) counts u with c(v,u)=k,
    c(u,w)=h and u in a class ordered no later than both endpoints."""
    nk = g.n_colors
    table = np.zeros((nk + 1, nk + 1), dtype=np.int64)
    bound = min(pos[g.vertex_color(v)], pos[g.vertex_color(w)])
    for u in g.vertices():
        if pos[g.vertex_color(u)] > bound:
            continue
        k = g.color_of(v, u)
        if k == 0:
            continue
        h = g.color_of(u, w)
        if h == 0:
            continue
        table[k, h] += 1
    return table


def two_path_table(g: ColoredGraph, eta, v, w) -> np.ndarray:
    """Directed 2-path table m_{v->w} for an extended edge {v, w}."""
    if v != w and not g.adjacent(v, w):
        raise InvalidGraphError(f"({v}, {w}) is not an extended edge")
    return _two_path_counts(g, _positions(g, eta), v, w)


def symmetric_two_path_table(g: ColoredGraph, eta, v, w) -> np.ndarray:
    """m_{v<->w}(k, h) = m_{v->w}(k, h) + m_{v->w}(h, k)."""
    t = two_path_table(g, eta, v, w)
    return t + t.T


def f_sets(g: ColoredGraph):
    """Per-class sets F_i of extended-edge colors joining two vertices of
    color i (the loop color i always belongs), and their union F."""
    fs = []
    for i, cls in enumerate(g.vertex_classes, start=1):
        fi = {i}
        members = set(cls)
        for v, w in g.edges:
            if v in members and w in members:
                fi.add(g.color_of(v, w))
        fs.append(frozenset(fi))
    return tuple(fs), frozenset().union(*fs)


def check_m1(g: ColoredGraph, eta):
    """Constancy of the symmetric 2-path table on extended-edge color
    classes.  Returns (ok, witness) with the lexicographically first
    violating pair of extended edges."""
    pos = _positions(g, eta)
    for k in range(1, g.n_colors + 1):
        members = g.color_class(k)
        ref = None
        for v, w in members:
            t = _two_path_counts(g, pos, v, w)
            t = t + t.T
            if ref is None:
                ref = t
                first = (v, w)
            elif not np.array_equal(ref, t):
                return False, (first, (v, w))
    return True, None


def check_m2(g: ColoredGraph, eta):
    """Symmetry m_{v->w} = m_{w->v} restricted to F x F for all pairs of
    same-colored vertices.  Returns (ok, witness pair of vertices)."""
    pos = _positions(g, eta)
    _, f_all = f_sets(g)
    idx = sorted(f_all)
    for cls in g.vertex_classes:
        cls = sorted(cls)
        for a in range(len(cls)):
            for b in range(a + 1, len(cls)):
                v, w = cls[a], cls[b]
                fwd = _two_path_counts(g, pos, v, w)[np.ix_(idx, idx)]
                bwd = _two_path_counts(g, pos, w, v)[np.ix_(idx, idx)]
                if not np.array_equal(fwd, bwd):
                    return False, (v, w)
    return True, None


def _between_counts(g, pos, v, w) -> np.ndarray:
    """Like the 2-path table but the intermediate class must lie between the
    classes of v and w in the elimination order."""
    nk = g.n_colors
    table = np.zeros((nk + 1, nk + 1), dtype=np.int64)
    lo, hi = pos[g.vertex_color(v)], pos[g.vertex_color(w)]
    for u in g.vertices():
        pu = pos[g.vertex_color(u)]
        if not lo <= pu <= hi:
            continue
        k = g.color_of(v, u)
        if k == 0:
            continue
        h = g.color_of(u, w)
        if h == 0:
            continue
        table[k, h] += 1
    return table


def check_m3(g: ColoredGraph, eta=None) -> bool:
    """Constancy of the between-class path counts on extended-edge color
    classes; equivalent to multiplicative closure of the block-triangular
    images of the basis matrices.  Requires a cpeo (found greedily when
    ``eta`` is not supplied)."""
    if eta is None:
        eta = greedy_find_cpeo(g)
        if eta is None:
            raise NoCpeoError("graph admits no cpeo; M3 is undefined")
    elif not is_cpeo(g, eta):
        raise NoCpeoError(f"{eta} is not a cpeo")
    pos = _positions(g, eta)
    for k in range(1, g.n_colors + 1):
        ref = None
        for v, w in g.color_class(k):
            # representatives with endpoint classes in elimination order;
            # both directions when the endpoints share a class (these are
            # exactly the entries the block-triangular pattern retains)
            if pos[g.vertex_color(v)] > pos[g.vertex_color(w)]:
                v, w = w, v
            reps = ((v, w), (w, v)) if (
                v != w and pos[g.vertex_color(v)] == pos[g.vertex_color(w)]
            ) else ((v, w),)
            for a, b in reps:
                t = _between_counts(g, pos, a, b)
                if ref is None:
                    ref = t
                elif not np.array_equal(ref, t):
                    return False
    return True


# ---------------------------------------------------------------------------
# classification


class Verdict(Enum):
    NOT_DECOMPOSABLE_COLORING = "NotDecomposableColoring"
    CPEO_ONLY = "CpeoOnly"
    CER = "Cer"
    SYMMETRIC_CER = "SymmetricCer"


@dataclass(frozen=True)
class CerVerdict:
    """Outcome of classify(): the strongest level reached, a witnessing
    ordering (when one exists) and the first counterexample one level up."""

    kind: Verdict
    eta: tuple | None = None
    witness: tuple | None = None

    @property
    def is_cer(self) -> bool:
        return self.kind in (Verdict.CER, Verdict.SYMMETRIC_CER)

    @property
    def is_symmetric(self) -> bool:
        return self.kind is Verdict.SYMMETRIC_CER


def _iter_cpeos(g):
    """All cpeos in lexicographic depth-first order."""

    def rec(remaining, prefix, used):
        if len(prefix) == g.r:
            yield tuple(prefix)
            return
        for color in range(1, g.r + 1):
            if color in used:
                continue
            if _class_simplicial(g, color, remaining):
                yield from rec(
                    remaining - set(g.vertex_classes[color - 1]),
                    prefix + [color],
                    used | {color},
                )

    yield from rec(set(g.vertices()), [], frozenset())


def classify(g: ColoredGraph, r_cap=DEFAULT_R_CAP) -> CerVerdict:
    """Search the cpeo space exhaustively (lexicographic order) and return
    SymmetricCer with the first ordering passing (M1)+(M2), else Cer with
    the first ordering passing (M1), else CpeoOnly, else
    NotDecomposableColoring.  Deterministic for a given graph."""
    if g.r > r_cap:
        raise ColorCountCapError(
            f"{g.r} vertex color classes exceed the search cap {r_cap}"
        )
    first_cpeo = None
    first_cpeo_m1_witness = None
    first_m1 = None
    first_m1_m2_witness = None
    for eta in _iter_cpeos(g):
        m1_ok, w1 = check_m1(g, eta)
        if first_cpeo is None:
            first_cpeo = eta
            first_cpeo_m1_witness = w1
        if not m1_ok:
            continue
        m2_ok, w2 = check_m2(g, eta)
        if m2_ok:
            return CerVerdict(Verdict.SYMMETRIC_CER, eta)
        if first_m1 is None:
            first_m1 = eta
            first_m1_m2_witness = w2
    if first_m1 is not None:
        return CerVerdict(Verdict.CER, first_m1, first_m1_m2_witness)
    if first_cpeo is not None:
        return CerVerdict(Verdict.CPEO_ONLY, first_cpeo, first_cpeo_m1_witness)
    return CerVerdict(Verdict.NOT_DECOMPOSABLE_COLORING)
