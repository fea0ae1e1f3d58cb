"""Packaged instances of the divergence problem, one per symmetric space."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .exactlin import ExactMatrix, GramSpace
from .symsquare import SymSquare


@dataclass(frozen=True, eq=False)
class SpaceModel:
    """Finite-dimensional data for evaluating the divergence on one isotypic piece.

    ``action[i]`` is d rho(e_i) on V for the i-th basis vector e_i of m.  The
    summand of V identified with m^C uses the m-basis as its coordinates, so
    ``target_proj`` maps V-coordinates to m-coordinates and ``pi_matrix``
    maps Sym^2_0 m to the same coordinates.  ``k_action_v``/``k_action_m``
    are matching bases of the isotropy algebra acting on V and on m; they
    are only used for equivariance checks.
    """

    name: str
    rep_label: str
    m_space: GramSpace
    m_labels: list[str]
    v_space: GramSpace
    v_labels: list[str]
    action: list[ExactMatrix]
    target_proj: ExactMatrix
    sym: SymSquare
    pi_matrix: ExactMatrix
    k_action_v: list[ExactMatrix] = field(default_factory=list)
    k_action_m: list[ExactMatrix] = field(default_factory=list)
    witness: tuple[int, int] | None = None

    def __post_init__(self):
        dm, dv = self.m_space.dim, self.v_space.dim
        if len(self.action) != dm:
            raise ValueError("need one action matrix per basis vector of m")
        if any(a.shape != (dv, dv) for a in self.action):
            raise ValueError("action matrices must act on V")
        if self.target_proj.shape != (dm, dv):
            raise ValueError("target projection must map V to m")
        if self.pi_matrix.shape != (dm, self.sym.traceless_space.dim):
            raise ValueError("pi must map Sym^2_0 m to m")

    @property
    def m_dim(self) -> int:
        return self.m_space.dim

    @property
    def v_dim(self) -> int:
        return self.v_space.dim

    def conjugate(self, rep_label: str | None = None) -> "SpaceModel":
        """Same model on the complex-conjugate representation of V."""
        return replace(
            self,
            action=[a.conjugate() for a in self.action],
            rep_label=rep_label or f"conj({self.rep_label})",
        )
