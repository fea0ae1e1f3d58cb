"""SU(n) as the symmetric space (SU(n) x SU(n)) / SU(n).

Here m is identified with su(n), V = E (x) E* with gl(n) and the isotropy
algebra k = su(n) acts on both by commutators.  Complex n x n matrices are
plain :class:`ExactMatrix` values.

Basis of su(n) in this order: E_ab - E_ba (a < b), i(E_ab + E_ba) (a < b),
i(E_aa - E_{a+1,a+1}).  So f_1 = E_12 - E_21 and f_2 = E_13 - E_31.
V = gl(n) uses the same vectors followed by the identity matrix.
"""

from __future__ import annotations

from functools import lru_cache

from .exactlin import IMAG, ExactMatrix, GramSpace, inverse
from .spaces import SpaceModel
from .symsquare import SymSquare


def unit(n: int, a: int, b: int) -> ExactMatrix:
    """E_ab with 1-based indices."""
    return ExactMatrix.from_sparse(n, n, {(a - 1, b - 1): 1})


def _check_n(n: int):
    if n < 3:
        raise ValueError("SU(n) model needs n >= 3")


def sl_matrix(entries) -> ExactMatrix:
    """A trace-free complex matrix (element of E (x)_0 E*)."""
    m = entries if isinstance(entries, ExactMatrix) else ExactMatrix(entries)
    if m.rows != m.cols:
        raise ValueError("matrix must be square")
    if m.trace():
        raise ValueError("matrix is not trace-free")
    return m


@lru_cache(maxsize=None)
def su_basis(n: int) -> tuple[tuple[ExactMatrix, ...], tuple[str, ...]]:
    pairs = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]
    mats, labels = [], []
    for a, b in pairs:
        mats.append(unit(n, a, b) - unit(n, b, a))
        labels.append(f"E{a}{b}-E{b}{a}")
    for a, b in pairs:
        mats.append((unit(n, a, b) + unit(n, b, a)).scale(IMAG))
        labels.append(f"i(E{a}{b}+E{b}{a})")
    for a in range(1, n):
        mats.append((unit(n, a, a) - unit(n, a + 1, a + 1)).scale(IMAG))
        labels.append(f"i(E{a}{a}-E{a + 1}{a + 1})")
    return tuple(mats), tuple(labels)


def trace_form(x: ExactMatrix, y: ExactMatrix) -> object:
    """<A, B> = tr(A B*)."""
    return (x @ y.H).trace()


def _gram_of(mats) -> ExactMatrix:
    return ExactMatrix([[trace_form(x, y) for y in mats] for x in mats])


@lru_cache(maxsize=None)
def su_gram(n: int) -> ExactMatrix:
    return _gram_of(su_basis(n)[0])


@lru_cache(maxsize=None)
def gl_basis(n: int) -> tuple[ExactMatrix, ...]:
    return su_basis(n)[0] + (ExactMatrix.identity(n),)


@lru_cache(maxsize=None)
def gl_gram(n: int) -> ExactMatrix:
    return _gram_of(gl_basis(n))


@lru_cache(maxsize=None)
def _coordinate_map(n: int) -> ExactMatrix:
    """Maps row-major vec(M) to coordinates of M in ``gl_basis``."""
    bs = gl_basis(n)
    stacked = ExactMatrix.hstack([b.reshape(n * n, 1) for b in bs])
    # <M, b_l> = sum_k u_k <b_k, b_l>, and the gram is real symmetric
    return inverse(gl_gram(n)) @ stacked.H


def coordinates(m: ExactMatrix) -> ExactMatrix:
    """Coordinates of an n x n matrix in the basis of V = gl(n) (column)."""
    n = m.rows
    return _coordinate_map(n) @ m.reshape(n * n, 1)


def from_coordinates(n: int, v: ExactMatrix) -> ExactMatrix:
    bs = gl_basis(n)
    vals = [row[0] for row in v.tolist()]
    out = ExactMatrix.zeros(n, n)
    for c, b in zip(vals, bs):
        if c:
            out = out + b.scale(c)
    return out


def _operator(n: int, fn) -> ExactMatrix:
    """Matrix on V coordinates of the linear map ``fn`` of n x n matrices."""
    return ExactMatrix.hstack([coordinates(fn(b)) for b in gl_basis(n)])


def rho(f: ExactMatrix) -> ExactMatrix:
    """d rho(f): F -> fF + Ff on V coordinates."""
    return _operator(f.rows, lambda x: f @ x + x @ f)


def ad(f: ExactMatrix) -> ExactMatrix:
    """ad(f): F -> fF - Ff on V coordinates."""
    return _operator(f.rows, lambda x: f @ x - x @ f)


def pi_sun(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """pi(A (.) B) = AB* + BA*."""
    return a @ b.H + b @ a.H


def _drop_identity(n: int) -> ExactMatrix:
    """V coordinates -> su(n) coordinates, i.e. pr onto E (x)_0 E*."""
    d = n * n - 1
    return ExactMatrix.hstack([ExactMatrix.identity(d), ExactMatrix.zeros(d, 1)])


@lru_cache(maxsize=None)
def su_space(n: int) -> GramSpace:
    return GramSpace(n * n - 1, su_gram(n))


@lru_cache(maxsize=None)
def su_sym(n: int) -> SymSquare:
    return SymSquare(su_space(n))


@lru_cache(maxsize=None)
def pi_full_matrix(n: int) -> ExactMatrix:
    """pi on Sym^2 su(n), valued in V coordinates."""
    _check_n(n)
    fs = su_basis(n)[0]
    sym = su_sym(n)
    images = {(a, b): coordinates(pi_sun(fs[a], fs[b])) for a, b in sym.pairs}
    return sym.map_from_bilinear(images, n * n)


@lru_cache(maxsize=None)
def pi_matrix(n: int) -> ExactMatrix:
    """pi on Sym^2_0 su(n) in su(n) coordinates."""
    sym = su_sym(n)
    img = pi_full_matrix(n) @ sym.traceless_basis
    if not img.submatrix([n * n - 1], None).is_zero():
        raise ArithmeticError("pi does not map Sym^2_0 into E (x)_0 E*")
    return _drop_identity(n) @ img


@lru_cache(maxsize=None)
def ad_action_basis(n: int) -> tuple[list[ExactMatrix], ExactMatrix]:
    """ad(f) on E (x)_0 E* for each basis vector f, and the Killing gram."""
    _check_n(n)
    drop = _drop_identity(n)
    emb = drop.T
    gens = [drop @ ad(f) @ emb for f in su_basis(n)[0]]
    # the real span of su(n) is closed under brackets; coordinates are real
    real_gens = []
    for g in gens:
        if not g.is_real():
            raise ArithmeticError("ad(f) is not real on the su(n) basis")
        real_gens.append(g)
    kill = ExactMatrix([[(x @ y).trace() for y in real_gens] for x in real_gens])
    return real_gens, kill


@lru_cache(maxsize=None)
def sun_space_model(n: int) -> SpaceModel:
    _check_n(n)
    fs, labels = su_basis(n)
    gens, _ = ad_action_basis(n)
    drop = _drop_identity(n)
    return SpaceModel(
        name=f"SU({n})",
        rep_label="E(x)E*",
        m_space=su_space(n),
        m_labels=list(labels),
        v_space=GramSpace(n * n, gl_gram(n)),
        v_labels=list(labels) + ["I"],
        action=[rho(f) for f in fs],
        target_proj=drop,
        sym=su_sym(n),
        pi_matrix=pi_matrix(n),
        k_action_v=[ad(f) for f in fs],
        k_action_m=gens,
        witness=(1, 1),  # F = X = E_13 - E_31
    )


__all__ = [
    "ad",
    "ad_action_basis",
    "coordinates",
    "from_coordinates",
    "gl_basis",
    "pi_full_matrix",
    "pi_matrix",
    "pi_sun",
    "rho",
    "sl_matrix",
    "su_basis",
    "su_gram",
    "sun_space_model",
    "trace_form",
    "unit",
]
