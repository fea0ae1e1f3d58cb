"""Divergence of the prototypical tensor on one isotypic component.

For an intertwiner A : V -> Sym^2_0 m the divergence at the base point is

    (delta h)(X) = sum_ij (G^-1)_ij < A(d rho(e_i) F), e_j (.) X >

where G is the gram of the basis (e_i) of m.  With an orthonormal basis
this is the usual single sum; the inverse gram makes it basis-free.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import (
    IMAG,
    ExactMatrix,
    GaussianRational,
    adjoint,
    inverse,
    pseudo_inverse_on_image,
    rank,
)
from .spaces import SpaceModel


class IntertwinerError(ArithmeticError):
    """pi fails to be surjective, so no inverse on its image exists."""


@dataclass(frozen=True, eq=False)
class DivergenceReport:
    space: str
    rep_label: str
    values: ExactMatrix  # rows: V basis (F), columns: m basis (X)
    f_labels: list[str]
    x_labels: list[str]
    hom_multiplicity: int | None = None
    witness: tuple[int, int] | None = None
    terms: dict = field(default_factory=dict)  # per-i terms at the witness

    @property
    def nonzero(self) -> bool:
        return not self.values.is_zero()

    def value(self, f: int, x: int) -> GaussianRational:
        return self.values[f, x]

    def witness_labels(self) -> tuple[str, str] | None:
        if self.witness is None:
            return None
        f, x = self.witness
        return self.f_labels[f], self.x_labels[x]


def build_intertwiner(sm: SpaceModel) -> ExactMatrix:
    """A = pi|_W^{-1} o pr, from V to Sym^2_0 m (zero off the target summand)."""
    pm = sm.pi_matrix
    r = rank(pm)
    if r != sm.m_dim:
        raise IntertwinerError(f"pi has rank {r} on Sym^2_0, expected {sm.m_dim}; pi must be surjective")
    pinv = pseudo_inverse_on_image(pm, sm.sym.traceless_space, sm.m_space)
    return pinv @ sm.target_proj


def complement_of_kernel(sm: SpaceModel) -> ExactMatrix:
    """Basis of W = (ker pi)^perp inside Sym^2_0 m, as the image of pi*."""
    return adjoint(sm.pi_matrix, sm.sym.traceless_space, sm.m_space)


def unitarity_constant(sm: SpaceModel) -> GaussianRational | None:
    """The c > 0 with <pi w, pi w'> = c <w, w'> on W, or None if pi|_W is not conformal."""
    w = complement_of_kernel(sm)
    g_w = w.T @ sm.sym.traceless_space.gram @ w.conjugate()
    img = sm.pi_matrix @ w
    g_pi = img.T @ sm.m_space.gram @ img.conjugate()
    c = proportionality_constant(g_w, g_pi)
    if c is None or not c.is_real() or c.re <= 0:
        return None
    return c


def _pairing_matrices(sm: SpaceModel):
    """tau_i = sum_j Ginv_ij (e_j (.) -) as maps m -> Sym^2 m."""
    ginv = inverse(sm.m_space.gram).tolist()
    d = sm.m_dim
    sym = sm.sym
    prods = [sym.product_matrix(ExactMatrix.column([int(k == j) for k in range(d)])) for j in range(d)]
    taus = []
    for i in range(d):
        acc = None
        for j in range(d):
            c = ginv[i][j]
            if c:
                t = prods[j].scale(c)
                acc = t if acc is None else acc + t
        taus.append(acc if acc is not None else ExactMatrix.zeros(sym.dim, d))
    return taus


def divergence_terms(sm: SpaceModel, A: ExactMatrix) -> list[ExactMatrix]:
    """The i-th summand of the divergence, as a (V x m) matrix, for every i."""
    sym = sm.sym
    b = sym.traceless_basis
    g2 = sym.space.gram
    taus = _pairing_matrices(sm)
    out = []
    for rho_i, tau_i in zip(sm.action, taus):
        lifted = b @ (A @ rho_i)  # V -> Sym^2 m
        out.append(lifted.T @ g2 @ tau_i.conjugate())
    return out


def evaluate_divergence(sm: SpaceModel, A: ExactMatrix, hom_multiplicity: int | None = None) -> DivergenceReport:
    terms = divergence_terms(sm, A)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    witness = sm.witness
    if witness is None or not total[witness]:
        witness = _first_nonzero(total)
    wterms = {}
    if witness is not None:
        for label, t in zip(sm.m_labels, terms):
            v = t[witness]
            if v:
                wterms[label] = v
    return DivergenceReport(
        space=sm.name,
        rep_label=sm.rep_label,
        values=total,
        f_labels=list(sm.v_labels),
        x_labels=list(sm.m_labels),
        hom_multiplicity=hom_multiplicity,
        witness=witness,
        terms=wterms,
    )


def _first_nonzero(m: ExactMatrix) -> tuple[int, int] | None:
    for i, row in enumerate(m.tolist()):
        for j, x in enumerate(row):
            if x:
                return i, j
    return None


# -- closed forms --------------------------------------------------------------


def simplified_divergence_e6(F, X) -> GaussianRational:
    """2i sum_ij Ginv_ij < e_i o F, pr_{H_0}(e_j o X) > for F in H^C, X in H_0.

    ``F`` and ``X`` are Albert elements (X trace-free) or coordinate columns
    on H and H_0 respectively.
    """
    from . import albert

    f = F.column() if isinstance(F, albert.AlbertElement) else F
    if isinstance(X, albert.AlbertElement):
        if X.trace():
            raise ValueError("X must be trace-free")
        x = albert.traceless_projection() @ X.column()
    else:
        x = X
    return (f.T @ simplified_matrix_e6() @ x)[0, 0]


def simplified_matrix_e6() -> ExactMatrix:
    """The E6/F4 closed form on (H basis) x (H_0 basis)."""
    from . import albert

    emb = albert.traceless_embedding()
    return _closed_form(
        [albert.multiplication_operator(c) for c in emb.columns()],
        albert.traceless_gram(),
        albert.gram(),
        emb @ albert.traceless_projection(),
        IMAG * 2,
    ) @ emb


def simplified_divergence_sun(n: int, F, X) -> GaussianRational:
    """-sum_ij Ginv_ij < f_i F + F f_i, pr(f_j X + X f_j) > for n x n matrices F, X."""
    from . import sunmodel

    f = sunmodel.coordinates(F)
    x = sunmodel.coordinates(X)
    if x[n * n - 1, 0]:
        raise ValueError("X must be trace-free")
    return (f.T @ simplified_matrix_sun(n) @ x.submatrix(range(n * n - 1), None))[0, 0]


def simplified_matrix_sun(n: int) -> ExactMatrix:
    from . import sunmodel

    d = n * n - 1
    drop = ExactMatrix.hstack([ExactMatrix.identity(d), ExactMatrix.zeros(d, 1)])
    return _closed_form(
        [sunmodel.rho(f) for f in sunmodel.su_basis(n)[0]],
        sunmodel.su_gram(n),
        sunmodel.gl_gram(n),
        drop.T @ drop,
        -1,
    ) @ drop.T


def _closed_form(ops, m_gram, v_gram, proj, const) -> ExactMatrix:
    """const * sum_ij Ginv_ij op_i^T Gv conj(proj op_j), a bilinear form on V."""
    ginv = inverse(m_gram).tolist()
    d = len(ops)
    left = [op.T @ v_gram for op in ops]
    right = [(proj @ op).conjugate() for op in ops]
    acc = ExactMatrix.zeros(v_gram.rows, v_gram.rows)
    for i in range(d):
        for j in range(d):
            c = ginv[i][j]
            if c:
                acc = acc + (left[i] @ right[j]).scale(c)
    return acc.scale(const)


def simplified_values(sm: SpaceModel) -> ExactMatrix:
    """Closed-form values on all (F, X) basis pairs of a packaged model."""
    if sm.name == "E6/F4":
        m = simplified_matrix_e6()
    elif sm.name.startswith("SU("):
        m = simplified_matrix_sun(_n_of(sm))
    else:
        raise ValueError(f"no closed form for {sm.name}")
    if sm.rep_label.startswith("conj"):
        m = m.conjugate()
    return m


def _n_of(sm: SpaceModel) -> int:
    return int(sm.name[3:-1])


def proportionality_constant(engine: ExactMatrix, simplified: ExactMatrix) -> GaussianRational | None:
    """The c with simplified = c * engine on every entry, or None if no such c."""
    e, s = engine.tolist(), simplified.tolist()
    c = None
    for er, sr in zip(e, s):
        for x, y in zip(er, sr):
            if not x:
                if y:
                    return None
                continue
            r = y / x
            if c is None:
                c = r
            elif r != c:
                return None
    return c


__all__ = [
    "DivergenceReport",
    "IntertwinerError",
    "build_intertwiner",
    "divergence_terms",
    "evaluate_divergence",
    "proportionality_constant",
    "simplified_divergence_e6",
    "simplified_divergence_sun",
    "simplified_values",
]
