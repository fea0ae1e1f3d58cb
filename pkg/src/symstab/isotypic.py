"""Isotypic decomposition of explicit modules through their Casimir operator."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable

from .exactlin import ExactMatrix, eigenspace_dim, inverse, rank
from .rootdata import (
    Multiset,
    RootSystem,
    Weight,
    casimir,
    decompose_multiset,
    weyl_dimension,
)
from .symsquare import SymSquare


class IsotypicError(ArithmeticError):
    pass


class ResidualError(IsotypicError):
    """Candidate eigenspaces do not fill the module."""

    def __init__(self, residual: int, found: list):
        super().__init__(f"eigenspaces miss {residual} dimensions; candidate list is incomplete")
        self.residual = residual
        self.found = found


class CasimirCollision(IsotypicError):
    pass


@dataclass(frozen=True, eq=False)
class ModuleAction:
    """A Lie algebra acting on C^dim through ``generators`` (one per basis vector).

    ``character`` is the optional weight multiset of the module, used only as
    a fallback when candidate Casimir values collide.
    """

    dim: int
    generators: list[ExactMatrix]
    killing_gram: ExactMatrix
    character: Multiset | None = None

    def __post_init__(self):
        k = len(self.generators)
        if self.killing_gram.shape != (k, k):
            raise ValueError("killing gram does not match the generators")
        if any(g.shape != (self.dim, self.dim) for g in self.generators):
            raise ValueError("generator of the wrong size")
        if rank(self.killing_gram) != k:
            raise ValueError("killing gram is singular")

    def is_closed(self) -> bool:
        """Commutators of generators lie in the span of the generators."""
        gens = self.generators
        flat = ExactMatrix.vstack([g.reshape(1, self.dim * self.dim) for g in gens])
        r = rank(flat)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                br = gens[i] @ gens[j] - gens[j] @ gens[i]
                if rank(ExactMatrix.vstack([flat, br.reshape(1, self.dim * self.dim)])) != r:
                    return False
        return True

    @cached_property
    def casimir(self) -> ExactMatrix:
        return casimir_matrix(self)


def casimir_matrix(m: ModuleAction) -> ExactMatrix:
    """-sum_ij (G^-1)_ij rho_i rho_j with G = -killing_gram."""
    ginv = inverse(-m.killing_gram).tolist()
    gens = m.generators
    acc = ExactMatrix.zeros(m.dim, m.dim)
    for i, gi in enumerate(gens):
        row = ginv[i]
        comb = None
        for j, gj in enumerate(gens):
            if row[j]:
                t = gj.scale(row[j])
                comb = t if comb is None else comb + t
        if comb is not None:
            acc = acc - gi @ comb
    return acc


def _normalize(candidates, rs: RootSystem | None) -> list[tuple[Weight, Fraction]]:
    out = []
    for c in candidates:
        if isinstance(c, tuple) and len(c) == 2 and isinstance(c[0], tuple):
            out.append((tuple(c[0]), Fraction(c[1])))
        else:
            if rs is None:
                raise ValueError("a root system is needed to compute candidate Casimirs")
            out.append((tuple(c), casimir(rs, c)))
    return out


def isotypic_dimensions(
    m: ModuleAction, candidates: Iterable, rs: RootSystem | None = None
) -> list[tuple[Weight, int]]:
    """Dimension of each candidate's isotypic component.

    ``candidates`` holds ``(weight, casimir)`` pairs, or bare weights when
    ``rs`` is given.  With ``rs`` the dimensions are also checked to be
    multiples of the Weyl dimensions.
    """
    cands = _normalize(candidates, rs)
    values = [c for _, c in cands]
    if len(set(values)) != len(values):
        if m.character is None or rs is None:
            raise CasimirCollision("candidate Casimir values collide and no character is available")
        parts = dict(decompose_multiset(rs, m.character))
        return [(w, parts.get(w, 0) * weyl_dimension(rs, w)) for w, _ in cands]
    cas = m.casimir
    dims = [(w, eigenspace_dim(cas, c)) for w, c in cands]
    residual = m.dim - sum(d for _, d in dims)
    if residual:
        raise ResidualError(residual, dims)
    if rs is not None:
        for w, d in dims:
            if d % weyl_dimension(rs, w):
                raise IsotypicError(f"isotypic dimension {d} of {w} is not a multiple of its Weyl dimension")
    return dims


def isotypic_multiplicities(m: ModuleAction, candidates: Iterable, rs: RootSystem) -> list[tuple[Weight, int]]:
    return [(w, d // weyl_dimension(rs, w)) for w, d in isotypic_dimensions(m, candidates, rs)]


def hom_multiplicity(m: ModuleAction, lam: Iterable[int], rs: RootSystem, candidates: Iterable | None = None) -> int:
    """Multiplicity of V_lam in the module.

    With ``candidates`` the full decomposition is validated first; without,
    only the eigenspace of Cas(lam) is inspected.
    """
    lam = tuple(lam)
    if candidates is not None:
        cands = _normalize(candidates, rs)
        for w, mult in isotypic_multiplicities(m, cands, rs):
            if w == lam:
                return mult
        if casimir(rs, lam) in {c for _, c in cands}:
            raise CasimirCollision(f"{lam} shares a Casimir value with a candidate")
        return 0
    d = eigenspace_dim(m.casimir, casimir(rs, lam))
    w = weyl_dimension(rs, lam)
    if d % w:
        raise IsotypicError(f"eigenspace dimension {d} is not a multiple of dim V_lam = {w}")
    return d // w


def traceless_sym_module(base: ModuleAction, sym: SymSquare, character: Multiset | None = None) -> ModuleAction:
    """The induced action on Sym^2_0 of ``base`` (``sym`` built on the same space)."""
    gens = [sym.restrict_to_traceless(sym.induced(g)) for g in base.generators]
    return ModuleAction(sym.traceless_space.dim, gens, base.killing_gram, character)


def hom_dimension(parts_a: Iterable[tuple[Weight, int]], parts_b: Iterable[tuple[Weight, int]]) -> int:
    """dim Hom(A, B) from the multiplicity lists of A and B."""
    b = dict(parts_b)
    return sum(m * b.get(w, 0) for w, m in parts_a)


__all__ = [
    "CasimirCollision",
    "IsotypicError",
    "ModuleAction",
    "ResidualError",
    "casimir_matrix",
    "hom_dimension",
    "hom_multiplicity",
    "isotypic_dimensions",
    "isotypic_multiplicities",
    "traceless_sym_module",
]
