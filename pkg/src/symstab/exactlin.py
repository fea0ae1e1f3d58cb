"""Exact scalars and dense matrices over the Gaussian rationals Q(i).

Real parts and imaginary parts are stored as separate FLINT ``fmpq_mat``
objects, so purely real matrices (the common case) never pay for complex
arithmetic.  Elimination on genuinely complex matrices falls back to a
pure-Python Gauss-Jordan routine; it is also used as an independent
cross-check of the FLINT path in the test-suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import flint

Rational = Fraction

__all__ = [
    "Rational",
    "GaussianRational",
    "IMAG",
    "ExactMatrix",
    "GramSpace",
    "as_fraction",
    "rref",
    "rref_python",
    "rank",
    "null_space",
    "kernel_basis",
    "ortho_complement",
    "inverse",
    "solve",
    "adjoint",
    "pseudo_inverse_on_image",
    "eigenspace_dim",
    "orthogonal_projection",
    "column_space_coordinates",
]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions, FLINT rationals and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, flint.fmpq):
        return Fraction(int(x.p), int(x.q))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, GaussianRational):
        if x.im:
            raise ValueError(f"{x} is not real")
        return x.re
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _fmpq(x: Fraction) -> flint.fmpq:
    return flint.fmpq(x.numerator, x.denominator)


class GaussianRational:
    """Immutable complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex numbers are not exact")
        return cls(x)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def bitsize(self) -> int:
        return (
            self.re.numerator.bit_length()
            + self.re.denominator.bit_length()
            + self.im.numerator.bit_length()
            + self.im.denominator.bit_length()
        )

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


IMAG = GaussianRational(0, 1)


def _zero_q(rows: int, cols: int) -> flint.fmpq_mat:
    return flint.fmpq_mat(rows, cols)


def _is_zero_q(m: flint.fmpq_mat) -> bool:
    return m == flint.fmpq_mat(m.nrows(), m.ncols())


def _sub_q(m: flint.fmpq_mat, rows: Sequence[int], cols: Sequence[int]) -> flint.fmpq_mat:
    ent = m.entries()
    nc = m.ncols()
    return flint.fmpq_mat(len(rows), len(cols), [ent[i * nc + j] for i in rows for j in cols])


def _stack_q(blocks: Sequence[Sequence[flint.fmpq_mat]]) -> flint.fmpq_mat:
    nrows = sum(row[0].nrows() for row in blocks)
    ncols = sum(b.ncols() for b in blocks[0])
    out = []
    for row in blocks:
        ents = [b.entries() for b in row]
        for i in range(row[0].nrows()):
            for b, e in zip(row, ents):
                nc = b.ncols()
                out.extend(e[i * nc : (i + 1) * nc])
    return flint.fmpq_mat(nrows, ncols, out)


class ExactMatrix:
    """Dense immutable matrix with Gaussian-rational entries.

    Construct from a nested list of rows; entries may be ints, Fractions,
    ``"p/q"`` strings or :class:`GaussianRational`.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, rows: Iterable[Iterable] = (), shape: tuple[int, int] | None = None):
        rows = [list(r) for r in rows]
        if shape is None:
            nrows = len(rows)
            ncols = len(rows[0]) if rows else 0
        else:
            nrows, ncols = shape
        if len(rows) != nrows or any(len(r) != ncols for r in rows):
            raise ValueError("ragged or mis-shaped matrix data")
        re, im, has_im = [], [], False
        for r in rows:
            for x in r:
                z = GaussianRational.coerce(x)
                re.append(_fmpq(z.re))
                im.append(_fmpq(z.im))
                has_im = has_im or z.im != 0
        object.__setattr__(self, "_re", flint.fmpq_mat(nrows, ncols, re))
        object.__setattr__(
            self, "_im", flint.fmpq_mat(nrows, ncols, im) if has_im else None
        )

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def _wrap(cls, re: flint.fmpq_mat, im: flint.fmpq_mat | None = None) -> "ExactMatrix":
        self = cls.__new__(cls)
        if im is not None and _is_zero_q(im):
            im = None
        object.__setattr__(self, "_re", re)
        object.__setattr__(self, "_im", im)
        return self

    @classmethod
    def from_parts(cls, re: "ExactMatrix", im: "ExactMatrix") -> "ExactMatrix":
        """Return ``re + i*im`` for two real matrices of the same shape."""
        if not (re.is_real() and im.is_real()):
            raise ValueError("parts must be real")
        return cls._wrap(re._re, im._re)

    @classmethod
    def from_flat(cls, rows: int, cols: int, values: Sequence) -> "ExactMatrix":
        """Build from a row-major flat sequence of real rationals."""
        return cls._wrap(flint.fmpq_mat(rows, cols, [_fmpq(as_fraction(v)) for v in values]))

    @classmethod
    def from_sparse(cls, rows: int, cols: int, entries: dict) -> "ExactMatrix":
        """Build from ``{(i, j): value}``; missing entries are zero."""
        re = _zero_q(rows, cols)
        im = None
        for (i, j), v in entries.items():
            z = GaussianRational.coerce(v)
            if z.re:
                re[i, j] = _fmpq(z.re)
            if z.im:
                if im is None:
                    im = _zero_q(rows, cols)
                im[i, j] = _fmpq(z.im)
        return cls._wrap(re, im)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._wrap(_zero_q(rows, cols))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        m = _zero_q(n, n)
        for i in range(n):
            m[i, i] = 1
        return cls._wrap(m)

    @classmethod
    def diagonal(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def column(cls, values: Sequence) -> "ExactMatrix":
        return cls([[v] for v in values], shape=(len(values), 1))

    @classmethod
    def hstack(cls, mats: Sequence["ExactMatrix"], rows: int | None = None) -> "ExactMatrix":
        if not mats:
            return cls.zeros(rows or 0, 0)
        if len({m.rows for m in mats}) != 1:
            raise ValueError("row counts differ")
        re = _stack_q([[m._re for m in mats]])
        if all(m._im is None for m in mats):
            return cls._wrap(re)
        return cls._wrap(re, _stack_q([[m._imag_q() for m in mats]]))

    @classmethod
    def vstack(cls, mats: Sequence["ExactMatrix"], cols: int | None = None) -> "ExactMatrix":
        if not mats:
            return cls.zeros(0, cols or 0)
        return cls.hstack([m.T for m in mats]).T

    # -- basic accessors -------------------------------------------------

    @property
    def rows(self) -> int:
        return self._re.nrows()

    @property
    def cols(self) -> int:
        return self._re.ncols()

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def _imag_q(self) -> flint.fmpq_mat:
        return self._im if self._im is not None else _zero_q(self.rows, self.cols)

    def is_real(self) -> bool:
        return self._im is None

    def is_zero(self) -> bool:
        return self._im is None and _is_zero_q(self._re)

    def __getitem__(self, key) -> GaussianRational:
        i, j = key
        re = self._re[i, j]
        im = self._im[i, j] if self._im is not None else 0
        return GaussianRational(as_fraction(re), as_fraction(im) if im else 0)

    def tolist(self) -> list[list[GaussianRational]]:
        re = self._re.entries()
        im = self._im.entries() if self._im is not None else None
        c = self.cols
        out = []
        for i in range(self.rows):
            row = []
            for j in range(c):
                k = i * c + j
                row.append(
                    GaussianRational(
                        as_fraction(re[k]), as_fraction(im[k]) if im is not None else 0
                    )
                )
            out.append(row)
        return out

    def real_entries(self) -> list[list[Fraction]]:
        """Entries as Fractions; the matrix must be real."""
        if self._im is not None:
            raise ValueError("matrix has a nonzero imaginary part")
        ent = [as_fraction(q) for q in self._re.entries()]
        c = self.cols
        return [ent[i * c : (i + 1) * c] for i in range(self.rows)]

    @property
    def real(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self._re)

    @property
    def imag(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self._imag_q())

    @property
    def T(self) -> "ExactMatrix":
        return ExactMatrix._wrap(
            self._re.transpose(), self._im.transpose() if self._im is not None else None
        )

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix._wrap(self._re, -self._im if self._im is not None else None)

    @property
    def H(self) -> "ExactMatrix":
        """Conjugate transpose (standard-dot-product adjoint)."""
        return self.conjugate().T

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "ExactMatrix":
        rows = range(self.rows) if rows is None else list(rows)
        cols = range(self.cols) if cols is None else list(cols)
        im = _sub_q(self._im, rows, cols) if self._im is not None else None
        return ExactMatrix._wrap(_sub_q(self._re, rows, cols), im)

    def reshape(self, rows: int, cols: int) -> "ExactMatrix":
        """Row-major reshape."""
        if rows * cols != self.rows * self.cols:
            raise ValueError("cannot reshape to a different size")
        im = flint.fmpq_mat(rows, cols, self._im.entries()) if self._im is not None else None
        return ExactMatrix._wrap(flint.fmpq_mat(rows, cols, self._re.entries()), im)

    def col(self, j: int) -> "ExactMatrix":
        return self.submatrix(None, [j])

    def columns(self) -> list["ExactMatrix"]:
        return [self.col(j) for j in range(self.cols)]

    def trace(self) -> GaussianRational:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self[i, i] for i in range(self.rows)), GaussianRational())

    # -- arithmetic ------------------------------------------------------

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        if self._im is None and other._im is None:
            return ExactMatrix._wrap(self._re + other._re)
        return ExactMatrix._wrap(self._re + other._re, self._imag_q() + other._imag_q())

    def __sub__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ExactMatrix._wrap(-self._re, -self._im if self._im is not None else None)

    def scale(self, c) -> "ExactMatrix":
        z = GaussianRational.coerce(c)
        a, b = _fmpq(z.re), _fmpq(z.im)
        if b == 0:
            return ExactMatrix._wrap(
                self._re * a, self._im * a if self._im is not None else None
            )
        im = self._imag_q()
        return ExactMatrix._wrap(self._re * a - im * b, self._re * b + im * a)

    def __mul__(self, c):
        if isinstance(c, ExactMatrix):
            raise TypeError("use @ for matrix products")
        try:
            return self.scale(c)
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self.scale(1 / GaussianRational.coerce(c))

    def __matmul__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b, c, d = self._re, self._im, other._re, other._im
        if b is None and d is None:
            return ExactMatrix._wrap(a * c)
        if b is None:
            return ExactMatrix._wrap(a * c, a * d)
        if d is None:
            return ExactMatrix._wrap(a * c, b * c)
        return ExactMatrix._wrap(a * c - b * d, a * d + b * c)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (
            self.shape == other.shape
            and self._re == other._re
            and (self._im is None) == (other._im is None)
            and (self._im is None or self._im == other._im)
        )

    __hash__ = None

    def realify(self) -> "ExactMatrix":
        """The real 2r x 2c matrix [[A, -B], [B, A]] of ``A + iB``."""
        a, b = self._re, self._imag_q()
        return ExactMatrix._wrap(_stack_q([[a, -b], [b, a]]))

    def __repr__(self):
        return f"ExactMatrix({[[str(x) for x in row] for row in self.tolist()]})"


def _unrealify(m: ExactMatrix, rows: int, cols: int) -> ExactMatrix:
    """Inverse of :meth:`ExactMatrix.realify` (reads the left block column)."""
    re = m.submatrix(range(rows), range(cols))
    im = m.submatrix(range(rows, 2 * rows), range(cols))
    return ExactMatrix.from_parts(re, im)


# -- elimination ---------------------------------------------------------


def rref_python(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Gauss-Jordan elimination in pure Python over Q(i).

    Pivot rows are chosen to minimise the bit-size of the pivot entry.
    """
    a = m.tolist()
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best, best_size = None, None
        for i in range(r, nrows):
            x = a[i][c]
            if x:
                size = x.bitsize()
                if best is None or size < best_size:
                    best, best_size = i, size
        if best is None:
            continue
        a[r], a[best] = a[best], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        piv_row = a[r]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], piv_row)]
        pivots.append(c)
        r += 1
    return ExactMatrix(a, shape=(nrows, ncols)), pivots


def _pivots_of(reduced: flint.fmpq_mat, rank_: int) -> list[int]:
    ent = reduced.entries()
    nc = reduced.ncols()
    pivots = []
    for i in range(rank_):
        row = ent[i * nc : (i + 1) * nc]
        start = pivots[-1] + 1 if pivots else 0
        for j in range(start, nc):
            if row[j] != 0:
                pivots.append(j)
                break
    return pivots


def rref(m: ExactMatrix) -> tuple[ExactMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns over Q(i)."""
    if m.is_real():
        reduced, rk = m._re.rref()
        return ExactMatrix._wrap(reduced), _pivots_of(reduced, rk)
    return rref_python(m)


def rank(m: ExactMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.is_real():
        return m._re.rank()
    return m.realify()._re.rank() // 2


def null_space(m: ExactMatrix) -> ExactMatrix:
    """Matrix whose columns are an exact basis of ker(m).

    The basis is the canonical one read off the reduced row-echelon form:
    each vector has a single 1 in one free column and zeros in the others.
    """
    reduced, pivots = rref(m)
    ncols = m.cols
    free = [j for j in range(ncols) if j not in set(pivots)]
    if not free:
        return ExactMatrix.zeros(ncols, 0)
    if reduced.is_real():
        red = reduced._re.entries()
        out = [flint.fmpq(0)] * (ncols * len(free))
        for k, f in enumerate(free):
            out[f * len(free) + k] = flint.fmpq(1)
            for r, p in enumerate(pivots):
                out[p * len(free) + k] = -red[r * ncols + f]
        return ExactMatrix._wrap(flint.fmpq_mat(ncols, len(free), out))
    red = reduced.tolist()
    out = [[GaussianRational()] * len(free) for _ in range(ncols)]
    for k, f in enumerate(free):
        out[f][k] = GaussianRational(1)
        for r, p in enumerate(pivots):
            out[p][k] = -red[r][f]
    return ExactMatrix(out, shape=(ncols, len(free)))


def kernel_basis(m: ExactMatrix) -> list[ExactMatrix]:
    """Exact nullspace basis as a list of column vectors."""
    return null_space(m).columns()


def _as_basis_matrix(vectors, dim: int) -> ExactMatrix:
    if isinstance(vectors, ExactMatrix):
        if vectors.rows != dim:
            raise ValueError(f"vectors have length {vectors.rows}, expected {dim}")
        return vectors
    vecs = list(vectors)
    for v in vecs:
        if v.shape != (dim, 1):
            raise ValueError(f"vector of shape {v.shape} does not lie in a {dim}-space")
    return ExactMatrix.hstack(vecs, rows=dim)


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    if m.rows == 0:
        return m
    try:
        if m.is_real():
            return ExactMatrix._wrap(m._re.inv())
        return _unrealify(ExactMatrix._wrap(m.realify()._re.inv()), m.rows, m.cols)
    except ZeroDivisionError as exc:
        raise ValueError("matrix is singular") from exc


def solve(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Solve ``a @ x = b`` for square invertible ``a``."""
    return inverse(a) @ b


@dataclass(frozen=True)
class GramSpace:
    """A finite-dimensional space with a Hermitian positive-definite gram."""

    dim: int
    gram: ExactMatrix

    def __post_init__(self):
        g = self.gram
        if g.shape != (self.dim, self.dim):
            raise ValueError("gram has the wrong shape")
        if g != g.H:
            raise ValueError("gram is not Hermitian")
        for i in range(self.dim):
            d = g[i, i]
            if d.im != 0 or d.re <= 0:
                raise ValueError("gram diagonal must be real positive")
        if rank(g) != self.dim:
            raise ValueError("gram is singular")

    @classmethod
    def standard(cls, dim: int) -> "GramSpace":
        return cls(dim, ExactMatrix.identity(dim))

    def inner(self, u: ExactMatrix, v: ExactMatrix) -> GaussianRational:
        """<u, v> = u^T G conj(v), linear in the first slot."""
        return (u.T @ self.gram @ v.conjugate())[0, 0]


def adjoint(m: ExactMatrix, dom: GramSpace, cod: GramSpace) -> ExactMatrix:
    """Adjoint of ``m: dom -> cod`` with respect to both grams."""
    # <m u, v>_cod = u^T m^T Gc conj(v) must equal u^T Gd conj(m* v)
    return inverse(dom.gram.conjugate()) @ m.H @ cod.gram.conjugate()


def ortho_complement(subspace, space: GramSpace) -> ExactMatrix:
    """Basis (as columns) of the orthogonal complement of ``subspace``."""
    s = _as_basis_matrix(subspace, space.dim)
    if s.cols == 0:
        return ExactMatrix.identity(space.dim)
    # <v, s_k> = v^T G conj(s_k) = 0 for every column s_k
    return null_space((space.gram @ s.conjugate()).T)


def pseudo_inverse_on_image(m: ExactMatrix, dom: GramSpace, cod: GramSpace) -> ExactMatrix:
    """Gram-aware Moore-Penrose inverse of ``m: dom -> cod``.

    The result ``A`` satisfies: ``A @ m`` is the orthogonal projection of
    ``dom`` onto ``(ker m)^perp`` and ``m @ A`` the orthogonal projection of
    ``cod`` onto ``im m``.
    """
    if m.shape != (cod.dim, dom.dim):
        raise ValueError("map does not match the given spaces")
    reduced, pivots = rref(m)
    r = len(pivots)
    if r == 0:
        return ExactMatrix.zeros(dom.dim, cod.dim)
    right = reduced.submatrix(range(r), None)  # r x dom, full row rank
    left = m.submatrix(None, pivots)  # cod x r, full column rank
    std = GramSpace.standard(r)
    right_adj = adjoint(right, dom, std)
    left_adj = adjoint(left, std, cod)
    return right_adj @ inverse(right @ right_adj) @ inverse(left_adj @ left) @ left_adj


def eigenspace_dim(m: ExactMatrix, value) -> int:
    """dim ker(m - value*I), exact."""
    if m.rows != m.cols:
        raise ValueError("eigenspace of a non-square matrix")
    shifted = m - ExactMatrix.identity(m.rows).scale(value)
    return m.cols - rank(shifted)


def orthogonal_projection(basis, space: GramSpace) -> ExactMatrix:
    """Matrix of the gram-orthogonal projection onto the span of ``basis``."""
    b = _as_basis_matrix(basis, space.dim)
    if b.cols == 0:
        return ExactMatrix.zeros(space.dim, space.dim)
    # P v = B x with <v - B x, b_k> = 0 for all k
    m = b.T @ space.gram @ b.conjugate()
    return b @ inverse(m.T) @ b.H @ space.gram.T


def column_space_coordinates(basis: ExactMatrix, vectors: ExactMatrix) -> ExactMatrix:
    """Coordinates ``x`` with ``basis @ x == vectors``; basis columns independent.

    Raises ValueError when some vector is not in the column span.
    """
    reduced, pivots = rref(basis.T)
    if len(pivots) != basis.cols:
        raise ValueError("basis columns are dependent")
    square = basis.submatrix(pivots, None)
    coords = solve(square, vectors.submatrix(pivots, None))
    if basis @ coords != vectors:
        raise ValueError("vector not in the span of the basis")
    return coords
