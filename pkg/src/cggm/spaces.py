"""Block-structured linear spaces of symmetric matrices.

A space is stored as a pairwise-orthogonal basis where each element is
supported either inside one diagonal block (the M_i part) or inside one
lower/upper strip L_i (blocks (j, i) and (i, j) for j > i).  Graph-derived
spaces use the 0/1 color indicator matrices as basis; raw bases may carry
arbitrary values.  The Block-Cholesky axioms checked here are

  (Z0)  identity in the span and the M/L direct-sum decomposition,
  (Z1)  BlockTri(x) BlockTri(x)^T stays in the span,
  (Z2)  products of block-diagonal parts stay in the span.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidGraphError, SpaceStructureError
from .graphs import ColoredGraph, basis_matrices

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class BlockStructure:
    """Ordered partition of 1..p into consecutive index blocks."""

    sizes: tuple

    def __post_init__(self):
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise SpaceStructureError(f"block sizes must be positive: {self.sizes}")
        object.__setattr__(self, "sizes", tuple(int(n) for n in self.sizes))

    @property
    def r(self) -> int:
        return len(self.sizes)

    @property
    def p(self) -> int:
        return sum(self.sizes)

    @property
    def offsets(self):
        """N_0 = 0, N_i = n_1 + ... + n_i."""
        out = [0]
        for n in self.sizes:
            out.append(out[-1] + n)
        return tuple(out)

    def block_slice(self, i):
        off = self.offsets
        return slice(off[i - 1], off[i])

    def block_index(self):
        """0-based array mapping matrix row/column -> 1-based block."""
        idx = np.empty(self.p, dtype=np.int64)
        for i in range(1, self.r + 1):
            idx[self.block_slice(i)] = i
        return idx


def block_tri(blocks: BlockStructure, x) -> np.ndarray:
    """Keep the diagonal blocks and everything below them."""
    x = np.asarray(x)
    if x.shape != (blocks.p, blocks.p):
        raise SpaceStructureError(f"size mismatch: {x.shape} vs p={blocks.p}")
    idx = blocks.block_index()
    keep = idx[:, None] >= idx[None, :]
    return np.where(keep, x, 0)


def block_diag(blocks: BlockStructure, x) -> np.ndarray:
    """Keep only the diagonal blocks."""
    x = np.asarray(x)
    if x.shape != (blocks.p, blocks.p):
        raise SpaceStructureError(f"size mismatch: {x.shape} vs p={blocks.p}")
    idx = blocks.block_index()
    keep = idx[:, None] == idx[None, :]
    return np.where(keep, x, 0)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a (Z1)/(Z2)-style closure check."""

    ok: bool
    worst_residual: float
    witness: tuple | None = None


def _classify_support(blocks, mat):
    """('M', i) for a single diagonal block, ('L', i) for one strip."""
    idx = blocks.block_index()
    rows, cols = np.nonzero(mat)
    if len(rows) == 0:
        raise SpaceStructureError("zero basis matrix")
    pairs = {
        (min(a, b), max(a, b)) for a, b in zip(idx[rows].tolist(), idx[cols].tolist())
    }
    diag = {q for q in pairs if q[0] == q[1]}
    off = pairs - diag
    if off and diag:
        raise SpaceStructureError(
            f"basis matrix mixes diagonal blocks {sorted(diag)} "
            f"and off-diagonal blocks {sorted(off)}"
        )
    if diag:
        if len(diag) > 1:
            raise SpaceStructureError(
                f"basis matrix straddles diagonal blocks {sorted(diag)}"
            )
        return ("M", diag.pop()[0])
    strips = {q[0] for q in off}
    if len(strips) > 1:
        raise SpaceStructureError(f"basis matrix straddles strips {sorted(strips)}")
    return ("L", strips.pop())


@dataclass(frozen=True)
class ColorSpace:
    """Linear space of symmetric matrices with an orthogonal block-adapted basis.

    ``labels[k]`` records where basis element k lives: ('M', i) inside
    diagonal block i, or ('L', i) inside strip i.  ``colors`` carries the
    original extended-edge color index for graph-derived spaces.
    """

    blocks: BlockStructure
    basis: tuple
    labels: tuple
    colors: tuple | None = None
    integral: bool = False

    _onb: np.ndarray = field(repr=False, compare=False, default=None)
    _norms: np.ndarray = field(repr=False, compare=False, default=None)

    def __post_init__(self):
        stacked = np.stack([np.asarray(b, dtype=float) for b in self.basis])
        norms = np.sqrt(np.einsum("kij,kij->k", stacked, stacked))
        if np.any(norms == 0):
            raise SpaceStructureError("zero basis matrix")
        object.__setattr__(self, "_onb", stacked / norms[:, None, None])
        object.__setattr__(self, "_norms", norms)

    @property
    def p(self) -> int:
        return self.blocks.p

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def onb(self) -> np.ndarray:
        """Orthonormalized basis, stacked (dim, p, p)."""
        return self._onb

    @property
    def log_entrywise_factor(self) -> float:
        """log of prod_k ||J^k||_F: converts an integral taken w.r.t. one
        Lebesgue coordinate per basis element (at unit entry height) into
        the orthonormal-coordinate measure used throughout."""
        return float(np.sum(np.log(self._norms)))

    def diag_color_indices(self, i) -> list:
        return [k for k, lab in enumerate(self.labels) if lab == ("M", i)]

    def strip_color_indices(self, i) -> list:
        return [k for k, lab in enumerate(self.labels) if lab == ("L", i)]

    def project(self, x) -> np.ndarray:
        """Coordinates of x in the orthonormalized basis."""
        return np.einsum("kij,ij->k", self._onb, np.asarray(x, dtype=float))

    def from_coords(self, coords) -> np.ndarray:
        return np.einsum("k,kij->ij", np.asarray(coords, dtype=float), self._onb)

    def residual(self, x) -> float:
        """Relative Frobenius distance from x to the span."""
        x = np.asarray(x, dtype=float)
        rec = self.from_coords(self.project(x))
        nx = np.linalg.norm(x)
        if nx == 0:
            return 0.0
        return float(np.linalg.norm(x - rec) / nx)

    def member(self, x, tol=DEFAULT_TOL) -> bool:
        return self.residual(x) <= tol

    def embed_block(self, i, mat) -> np.ndarray:
        """Place an n_i x n_i matrix into the (i, i) block of a p x p zero matrix."""
        out = np.zeros((self.p, self.p), dtype=np.asarray(mat).dtype)
        sl = self.blocks.block_slice(i)
        out[sl, sl] = mat
        return out

    def block_of(self, x, i) -> np.ndarray:
        sl = self.blocks.block_slice(i)
        return np.asarray(x)[sl, sl]


def space_from_graph(g: ColoredGraph, eta=None) -> ColorSpace:
    """Space spanned by the color indicator matrices of a relabeled graph.

    When ``eta`` is given the graph is relabeled first; otherwise the vertex
    classes must already occupy consecutive index blocks in class order.
    """
    if eta is not None:
        from .graphs import relabel_for_ordering

        g, _ = relabel_for_ordering(g, eta)
    blocks = BlockStructure(tuple(len(c) for c in g.vertex_classes))
    off = blocks.offsets
    for i, cls in enumerate(g.vertex_classes, start=1):
        expected = tuple(range(off[i - 1] + 1, off[i] + 1))
        if tuple(sorted(cls)) != expected:
            raise SpaceStructureError(
                f"vertex class {i} = {sorted(cls)} does not occupy the "
                f"consecutive block {list(expected)}; relabel first"
            )
    mats = basis_matrices(g)
    labels = []
    for bm in mats:
        labels.append(_classify_support(blocks, bm.matrix))
    return ColorSpace(
        blocks,
        tuple(bm.matrix for bm in mats),
        tuple(labels),
        colors=tuple(bm.color for bm in mats),
        integral=True,
    )


def space_from_basis(basis, block_sizes, tol=DEFAULT_TOL) -> ColorSpace:
    """Space over an arbitrary symmetric, pairwise-orthogonal basis whose
    elements respect the M/L decomposition.  Raises SpaceStructureError on
    a direct-sum violation or when the identity is not in the span."""
    blocks = BlockStructure(tuple(block_sizes))
    mats = [np.asarray(b, dtype=float) for b in basis]
    labels = []
    for k, m in enumerate(mats):
        if m.shape != (blocks.p, blocks.p):
            raise SpaceStructureError(f"basis matrix {k} has shape {m.shape}")
        if not np.allclose(m, m.T, atol=tol * max(1.0, np.abs(m).max())):
            raise SpaceStructureError(f"basis matrix {k} is not symmetric")
        labels.append(_classify_support(blocks, m))
    for a in range(len(mats)):
        for b in range(a + 1, len(mats)):
            ip = float(np.tensordot(mats[a], mats[b]))
            scale = np.linalg.norm(mats[a]) * np.linalg.norm(mats[b])
            if abs(ip) > 1e-9 * scale:
                raise SpaceStructureError(
                    f"basis matrices {a} and {b} are not orthogonal"
                )
    integral = all(
        np.array_equal(m, np.round(m)) for m in mats
    )
    space = ColorSpace(blocks, tuple(mats), tuple(labels), integral=integral)
    if not space.member(np.eye(blocks.p), tol=max(tol, 1e-12)):
        raise SpaceStructureError("identity matrix is not in the span")
    return space


def space_from_json(obj) -> ColorSpace:
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        sizes = [int(n) for n in obj["block_sizes"]]
        p = sum(sizes)
        mats = [np.asarray(row, dtype=float).reshape(p, p) for row in obj["basis"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraphError(f"malformed space JSON: {exc}") from exc
    return space_from_basis(mats, sizes)


# ---------------------------------------------------------------------------
# membership with exact integer arithmetic for indicator bases


def _exact_residual(space, x_int):
    """Max absolute deviation of an integer matrix from the span of a
    disjoint-support integer basis (infinity, as inf, when impossible)."""
    recon = np.zeros_like(x_int)
    for b in space.basis:
        b = np.asarray(b)
        mask = b != 0
        if not mask.any():
            continue
        v, w = np.argwhere(mask)[0]
        # entries of x on this support must all equal coeff * pattern
        coeff = x_int[v, w] // b[v, w] if x_int[v, w] % b[v, w] == 0 else None
        if coeff is None:
            return float("inf")
        recon = recon + coeff * b
    return float(np.abs(x_int - recon).max())


def _closure_residual(space, product, tol):
    """(residual, ok) of a basis product against the span; exact for
    integer spaces, orthogonal projection otherwise."""
    if space.integral and np.issubdtype(np.asarray(product).dtype, np.integer):
        res = _exact_residual(space, product)
        return res, res == 0
    res = space.residual(product)
    return res, res <= tol


def check_z1(space: ColorSpace, tol=DEFAULT_TOL) -> AxiomReport:
    """(Z1) via polarization: the symmetrized products
    BlockTri(J^k) BlockTri(J^h)^T + (k <-> h) must stay in the span."""
    tris = [block_tri(space.blocks, np.asarray(b)) for b in space.basis]
    worst = 0.0
    witness = None
    for k in range(space.dim):
        for h in range(k, space.dim):
            s = tris[k] @ tris[h].T
            s = s + s.T
            res, ok = _closure_residual(space, s, tol)
            if res > worst:
                worst = res
            if not ok and witness is None:
                witness = (k, h)
    return AxiomReport(witness is None, worst, witness)


def check_z2(space: ColorSpace, tol=DEFAULT_TOL) -> AxiomReport:
    """(Z2): products J^k J^h of diagonal-block basis elements stay in the
    span, for all ordered pairs of diagonal colors."""
    worst = 0.0
    witness = None
    for i in range(1, space.blocks.r + 1):
        idxs = space.diag_color_indices(i)
        for k in idxs:
            for h in idxs:
                s = np.asarray(space.basis[k]) @ np.asarray(space.basis[h])
                res, ok = _closure_residual(space, s, tol)
                if res > worst:
                    worst = res
                if not ok and witness is None:
                    witness = (k, h)
    return AxiomReport(witness is None, worst, witness)


def block_tri_closure(space: ColorSpace, tol=1e-12) -> AxiomReport:
    """Multiplicative closure of span{BlockTri(J^k)} under plain products;
    holds iff the between-class count condition (M3) holds."""
    tris = [block_tri(space.blocks, np.asarray(b)) for b in space.basis]
    supports = [t != 0 for t in tris]
    union = np.zeros((space.p, space.p), dtype=bool)
    for s in supports:
        union |= s
    worst = 0.0
    witness = None
    for k in range(space.dim):
        for h in range(space.dim):
            prod = tris[k] @ tris[h]
            recon = np.zeros_like(prod)
            bad = False
            for s, t in zip(supports, tris):
                if not s.any():
                    continue
                v, w = np.argwhere(s)[0]
                recon = recon + (prod[v, w] / t[v, w]) * t
            res = float(np.abs(np.where(union, recon, 0) - prod).max())
            bad = res > tol
            if res > worst:
                worst = res
            if bad and witness is None:
                witness = (k, h)
    return AxiomReport(witness is None, worst, witness)


def random_element(space: ColorSpace, seed=0, positive_definite=False) -> np.ndarray:
    """Element with standard-normal orthonormal coordinates; optionally
    shifted by the smallest integer multiple of I that pushes the minimum
    eigenvalue to at least 0.1 (the identity is in the span, so the shift
    stays inside)."""
    rng = np.random.default_rng(seed)
    coords = rng.standard_normal(space.dim)
    x = space.from_coords(coords)
    if positive_definite:
        lam = np.linalg.eigvalsh(x).min()
        if lam < 0.1:
            x = x + float(np.ceil(0.1 - lam)) * np.eye(space.p)
    return x
