"""Shared example graphs and spaces used across the test suite."""

import numpy as np
import pytest

from cggm import graphs


@pytest.fixture
def k3_orange_purple():
    """Complete graph on 3 vertices, singleton vertex colors (Blue=1, Red=2,
    Green=3), edges {1,2} and {1,3} sharing one color, {2,3} another."""
    return graphs.build(
        p=3,
        edges=[(1, 2), (1, 3), (2, 3)],
        vertex_classes=[(1,), (2,), (3,)],
        edge_classes=[((1, 2), (1, 3)), ((2, 3),)],
    )


@pytest.fixture
def four_cycle_one_color():
    """4-cycle, one vertex color, one edge color (no cpeo)."""
    return graphs.build(
        p=4,
        edges=[(1, 2), (2, 3), (3, 4), (1, 4)],
        vertex_classes=[(1, 2, 3, 4)],
        edge_classes=[((1, 2), (2, 3), (3, 4), (1, 4))],
    )


@pytest.fixture
def p3_mid_leaf():
    """Path 1-2-3 with the middle vertex colored A=1 and the leaves B=2."""
    return graphs.build(
        p=3,
        edges=[(1, 2), (2, 3)],
        vertex_classes=[(2,), (1, 3)],
        edge_classes=[((1, 2), (2, 3))],
    )


def circulant6_graph():
    """Complete graph K6 whose edge classes are the orbitals of the regular
    action of the order-6 nonabelian group generated by (12)(34)(56) and
    (23)(45)(61): matchings a, b, the distance-2 class c and the antipodal
    matching d.  CER but not symmetric CER."""
    a = [(1, 2), (3, 4), (5, 6)]
    b = [(2, 3), (4, 5), (1, 6)]
    c = [(1, 3), (2, 4), (3, 5), (4, 6), (1, 5), (2, 6)]
    d = [(1, 4), (2, 5), (3, 6)]
    return graphs.build(
        p=6,
        edges=a + b + c + d,
        vertex_classes=[(1, 2, 3, 4, 5, 6)],
        edge_classes=[tuple(a), tuple(b), tuple(c), tuple(d)],
    )


@pytest.fixture
def circulant6():
    return circulant6_graph()


def petersen_edges():
    outer = [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]
    spokes = [(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]
    inner = [(6, 8), (8, 10), (7, 10), (7, 9), (6, 9)]
    return outer + spokes + inner


def petersen_colored_complete():
    """K10 with one vertex color; edges split into the Petersen graph's
    edges and non-edges (srg(10, 3, 0, 1))."""
    pet = set(map(tuple, (tuple(sorted(e)) for e in petersen_edges())))
    edge_cls = sorted(pet)
    non_cls = [
        (v, w)
        for v in range(1, 11)
        for w in range(v + 1, 11)
        if (v, w) not in pet
    ]
    return graphs.build(
        p=10,
        edges=edge_cls + non_cls,
        vertex_classes=[tuple(range(1, 11))],
        edge_classes=[tuple(edge_cls), tuple(non_cls)],
    )


@pytest.fixture
def petersen_space_graph():
    return petersen_colored_complete()


def space4x4_basis():
    """Basis of the 4x4 non-graphical space with parameters (a, b, c, d, e),
    r = 2, n = (2, 2)."""
    A = np.zeros((4, 4))
    A[0, 0] = A[1, 1] = 1.0
    D = np.zeros((4, 4))
    D[2, 2] = D[3, 3] = 1.0
    E = np.zeros((4, 4))
    E[2, 3] = E[3, 2] = 1.0
    B = np.zeros((4, 4))
    B[0, 2] = B[2, 0] = 1.0
    B[1, 3] = B[3, 1] = 1.0
    C = np.zeros((4, 4))
    C[0, 3] = C[3, 0] = 1.0
    C[1, 2] = C[2, 1] = -1.0
    return [A, B, C, D, E]


def random_pd(p, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    m = rng.standard_normal((p, p))
    return scale * (m @ m.T + 0.5 * np.eye(p))
