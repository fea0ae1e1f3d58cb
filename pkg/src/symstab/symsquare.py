"""Symmetric squares of finite-dimensional inner-product spaces.

The basis of Sym^2 V is ``e_a (.) e_b`` for ``a <= b`` where
``u (.) v = u (x) v + v (x) u``; in particular ``e_a (.) e_a = 2 e_a (x) e_a``.
The inner product is the one induced from V (x) V.
"""

from __future__ import annotations

from collections import defaultdict
from functools import cached_property

from .exactlin import (
    ExactMatrix,
    GaussianRational,
    GramSpace,
    null_space,
    orthogonal_projection,
    rref,
)


def _sparse_columns(m: ExactMatrix) -> list[list[tuple[int, GaussianRational]]]:
    """Nonzero entries of each column of ``m`` as ``(row, value)`` lists."""
    rows = m.tolist()
    cols: list[list[tuple[int, GaussianRational]]] = [[] for _ in range(m.cols)]
    for i, row in enumerate(rows):
        for j, x in enumerate(row):
            if x:
                cols[j].append((i, x))
    return cols


class SymSquare:
    """Sym^2 of a :class:`GramSpace`, with the trace-free subspace Sym^2_0."""

    def __init__(self, base: GramSpace):
        self.base = base
        d = base.dim
        self.pairs = [(a, b) for a in range(d) for b in range(a, d)]
        self._index = {p: k for k, p in enumerate(self.pairs)}
        self.dim = len(self.pairs)
        self._g = base.gram.tolist()

    def index(self, a: int, b: int) -> int:
        return self._index[(a, b) if a <= b else (b, a)]

    @cached_property
    def space(self) -> GramSpace:
        g = self._g
        nz = [[(c, g[a][c]) for c in range(self.base.dim) if g[a][c]] for a in range(self.base.dim)]
        entries: dict = defaultdict(GaussianRational)
        for k, (a, b) in enumerate(self.pairs):
            for c, gac in nz[a]:
                for d, gbd in nz[b]:
                    w = 2 * gac * gbd
                    if c == d:
                        w = 2 * w
                    key = (k, self.index(c, d))
                    entries[key] = entries[key] + w
        return GramSpace(self.dim, ExactMatrix.from_sparse(self.dim, self.dim, entries))

    def product(self, u: ExactMatrix, v: ExactMatrix) -> ExactMatrix:
        """Coordinates of ``u (.) v`` for column vectors ``u``, ``v``."""
        uu = [x[0] for x in u.tolist()]
        vv = [x[0] for x in v.tolist()]
        entries: dict = defaultdict(GaussianRational)
        for a, x in enumerate(uu):
            if not x:
                continue
            for b, y in enumerate(vv):
                if y:
                    key = (self.index(a, b), 0)
                    entries[key] = entries[key] + x * y
        return ExactMatrix.from_sparse(self.dim, 1, entries)

    def product_matrix(self, u: ExactMatrix) -> ExactMatrix:
        """Matrix of ``X -> u (.) X`` from V to Sym^2 V."""
        uu = [x[0] for x in u.tolist()]
        entries: dict = defaultdict(GaussianRational)
        for a, x in enumerate(uu):
            if not x:
                continue
            for b in range(self.base.dim):
                key = (self.index(a, b), b)
                entries[key] = entries[key] + x
        return ExactMatrix.from_sparse(self.dim, self.base.dim, entries)

    def induced(self, op: ExactMatrix) -> ExactMatrix:
        """Derivation action ``D(u (.) v) = Du (.) v + u (.) Dv`` on Sym^2."""
        if op.shape != (self.base.dim, self.base.dim):
            raise ValueError("operator does not act on the base space")
        cols = _sparse_columns(op)
        entries: dict = defaultdict(GaussianRational)
        for k, (a, b) in enumerate(self.pairs):
            for c, x in cols[a]:
                key = (self.index(c, b), k)
                entries[key] = entries[key] + x
            for c, x in cols[b]:
                key = (self.index(a, c), k)
                entries[key] = entries[key] + x
        return ExactMatrix.from_sparse(self.dim, self.dim, entries)

    def map_from_bilinear(self, images: dict[tuple[int, int], ExactMatrix], target_dim: int) -> ExactMatrix:
        """Matrix of the linear map Sym^2 V -> W with ``e_a (.) e_b -> images[a, b]``."""
        cols = []
        for a, b in self.pairs:
            img = images[(a, b)]
            if img.shape != (target_dim, 1):
                raise ValueError("image has the wrong shape")
            cols.append(img)
        return ExactMatrix.hstack(cols, rows=target_dim)

    @cached_property
    def trace_row(self) -> ExactMatrix:
        """Row of the trace functional ``tr(u (.) v) = 2 <u, v>`` (real forms)."""
        g = self._g
        return ExactMatrix([[2 * g[a][b] for a, b in self.pairs]], shape=(1, self.dim))

    @cached_property
    def traceless_basis(self) -> ExactMatrix:
        """Columns spanning Sym^2_0, in canonical nullspace form."""
        return null_space(self.trace_row)

    @cached_property
    def traceless_free(self) -> list[int]:
        """Coordinates of Sym^2 that serve as coordinates on Sym^2_0."""
        _, pivots = rref(self.trace_row)
        return [k for k in range(self.dim) if k not in pivots]

    @cached_property
    def traceless_space(self) -> GramSpace:
        b = self.traceless_basis
        return GramSpace(b.cols, b.T @ self.space.gram @ b.conjugate())

    def to_traceless(self, v: ExactMatrix) -> ExactMatrix:
        """Sym^2_0 coordinates of a vector (or matrix columns) lying in Sym^2_0."""
        if not (self.trace_row @ v).is_zero():
            raise ValueError("vector is not trace-free")
        return v.submatrix(self.traceless_free, None)

    def restrict_to_traceless(self, op: ExactMatrix) -> ExactMatrix:
        """An operator on Sym^2 preserving Sym^2_0, written on Sym^2_0."""
        return self.to_traceless(op @ self.traceless_basis)

    @cached_property
    def traceless_projection(self) -> ExactMatrix:
        """Orthogonal projection of Sym^2 onto Sym^2_0."""
        return orthogonal_projection(self.traceless_basis, self.space)


def sym_dim(d: int) -> int:
    return d * (d + 1) // 2


__all__ = ["SymSquare", "sym_dim"]
