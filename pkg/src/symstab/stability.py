"""Stability verdicts for SU(n) and E6/F4, with a full audit trail."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from . import albert, divergence, isotypic, rootdata, sunmodel
from .exactlin import ExactMatrix
from .rootdata import ProductWeight, RootSystem, Weight
from .spaces import SpaceModel

log = logging.getLogger("symstab")

LINEARLY_STABLE = "linearly stable"
UNSTABLE = "unstable"
UNDETERMINED = "undetermined"

DEFAULT_MAX_N = 6

NOTIONS = ("einstein-hilbert", "physical")


class UnsupportedSpace(ValueError):
    pass


class ConsistencyError(ArithmeticError):
    """An internal cross-check failed; the message names the violated fact."""


@dataclass(frozen=True)
class StabilityProblem:
    """``space`` is ``"su"`` (with ``n``) or ``"e6f4"``.

    The default threshold 1 is the critical eigenvalue 2*Lambda of the
    standard metric.  ``notion="physical"`` uses (9 - dim M)/4 * Lambda.
    """

    space: str
    n: int | None = None
    threshold: Fraction | None = None
    notion: str = "einstein-hilbert"
    max_n: int = DEFAULT_MAX_N

    def __post_init__(self):
        if self.space not in ("su", "e6f4"):
            raise UnsupportedSpace(f"unsupported space {self.space!r}; expected 'su' or 'e6f4'")
        if self.space == "su":
            if self.n is None or self.n < 3:
                raise UnsupportedSpace("SU(n) needs n >= 3")
            if self.n > self.max_n:
                raise UnsupportedSpace(f"n = {self.n} exceeds the configured bound {self.max_n}")
        elif self.n is not None:
            raise UnsupportedSpace("E6/F4 takes no n")
        if self.notion not in NOTIONS:
            raise UnsupportedSpace(f"unknown stability notion {self.notion!r}")
        if self.threshold is None:
            object.__setattr__(self, "threshold", self.default_threshold())
        else:
            object.__setattr__(self, "threshold", Fraction(self.threshold))
        if self.notion == "einstein-hilbert" and self.threshold <= 0:
            raise UnsupportedSpace("threshold must be positive")

    @property
    def name(self) -> str:
        return f"SU({self.n})" if self.space == "su" else "E6/F4"

    @property
    def manifold_dim(self) -> int:
        return self.n * self.n - 1 if self.space == "su" else 26

    def default_threshold(self) -> Fraction:
        if self.notion == "physical":
            # (9 - dim M)/4 * Lambda with 2 Lambda = 1
            return Fraction(9 - self.manifold_dim, 8)
        return Fraction(1)


@dataclass(frozen=True)
class RepResult:
    label: str
    weight: object
    casimir: Fraction
    restriction: list
    hom_multiplicity: int | None  # None: restriction to K unknown
    divergence_nonzero: bool | None = None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "weight": _weight_json(self.weight),
            "casimir": self.casimir,
            "restriction": [[list(w), m] for w, m in self.restriction],
            "hom_multiplicity": self.hom_multiplicity,
            "divergence_nonzero": self.divergence_nonzero,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Verdict:
    space: str
    threshold: Fraction
    subcritical: list[RepResult]
    conclusion: str
    audit: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "space": self.space,
            "threshold": self.threshold,
            "subcritical": [r.to_dict() for r in self.subcritical],
            "conclusion": self.conclusion,
            "audit": self.audit,
        }


def _weight_json(w):
    if isinstance(w, ProductWeight):
        return [list(w.left), list(w.right)]
    return list(w)


def weight_label(w: Weight) -> str:
    terms = []
    for i, a in enumerate(w, start=1):
        if a == 1:
            terms.append(f"w{i}")
        elif a:
            terms.append(f"{a}w{i}")
    return "+".join(terms) or "0"


def _fundamental(rs: RootSystem, r: int) -> Weight:
    return rootdata.fundamental_weight(rs, r)


# -- K-modules --------------------------------------------------------------


def _candidates_from_character(rs: RootSystem, base_char) -> list[tuple[Weight, int]]:
    """Character-theoretic decomposition of Sym^2_0 of a module with one trivial summand removed."""
    ch = rootdata.sym_square_multiset(base_char)
    zero = (0,) * rs.rank
    ch[zero] -= 1
    if ch[zero] < 0:
        raise ConsistencyError("Sym^2 has no trivial summand to remove")
    return rootdata.decompose_multiset(rs, ch)


def _sym2_decomposition(rs: RootSystem, base: isotypic.ModuleAction, sym, base_weight: Weight) -> dict:
    by_char = _candidates_from_character(rs, rootdata.character(rs, base_weight))
    module = isotypic.traceless_sym_module(base, sym)
    dims = isotypic.isotypic_dimensions(module, [w for w, _ in by_char], rs)
    by_casimir = [(w, d // rootdata.weyl_dimension(rs, w)) for w, d in dims]
    if sorted(by_casimir) != sorted(by_char):
        raise ConsistencyError("Sym^2_0 decomposition: Casimir eigenspaces disagree with the character")
    return {
        "parts": by_char,
        "audit": {
            "dimension": module.dim,
            "character_method": [[list(w), m] for w, m in by_char],
            "casimir_method": [[list(w), d] for w, d in dims],
            "methods_agree": True,
        },
    }


# -- divergence on one modelled representation ------------------------------


def _run_model(sm: SpaceModel, hom: int) -> tuple[bool, dict]:
    log.info("%s: building intertwiner for %s", sm.name, sm.rep_label)
    A = divergence.build_intertwiner(sm)
    log.info("%s: evaluating divergence", sm.name)
    report = divergence.evaluate_divergence(sm, A, hom)
    c = divergence.unitarity_constant(sm)
    if c is None:
        raise ConsistencyError("pi restricted to W is not unitary up to a positive constant")
    ratio = divergence.proportionality_constant(report.values, divergence.simplified_values(sm))
    if ratio is None or not ratio.is_real() or ratio.re <= 0:
        raise ConsistencyError("engine and closed-form divergence are not positively proportional")
    nonzero_entries = sum(1 for row in report.values.tolist() for x in row if x)
    audit = {
        "model": sm.rep_label,
        "pi_rank": sm.m_dim,
        "w_dimension": sm.m_dim,
        "unitarity_constant": c,
        "closed_form_ratio": ratio,
        "nonzero_entries": nonzero_entries,
    }
    if report.witness is not None:
        f, x = report.witness
        audit["witness"] = {
            "F": report.f_labels[f],
            "X": report.x_labels[x],
            "value": report.values[f, x],
            "terms": dict(sorted(report.terms.items())),
        }
    return report.nonzero, audit


def _short_witness(model_audit: dict) -> dict | None:
    w = model_audit.get("witness")
    return None if w is None else {k: w[k] for k in ("F", "X", "value")}


def _conclude(results: list[RepResult]) -> str:
    outcome = LINEARLY_STABLE
    for r in results:
        if r.hom_multiplicity is None:
            outcome = UNDETERMINED
            continue
        if r.hom_multiplicity == 0:
            continue
        if r.hom_multiplicity >= 2 or r.divergence_nonzero is None:
            outcome = UNDETERMINED
        elif not r.divergence_nonzero:
            return UNSTABLE
    return outcome


def _su_pipeline(p: StabilityProblem) -> Verdict:
    n = p.n
    rs = rootdata.root_system(rootdata.CartanType.su(n))
    w1, wlast = _fundamental(rs, 1), _fundamental(rs, n - 1)
    adjoint = tuple(a + b for a, b in zip(w1, wlast))
    cas_adj = rootdata.casimir(rs, adjoint)
    if cas_adj != 1:
        raise ConsistencyError(f"Casimir of the adjoint is {cas_adj}, not 1")
    subcrit = rootdata.subcritical_product_weights(rs, p.threshold)
    log.info("%s: %d subcritical representations", p.name, len(subcrit))

    gens, kill = sunmodel.ad_action_basis(n)
    m_module = isotypic.ModuleAction(n * n - 1, gens, kill)
    if m_module.casimir != ExactMatrix.identity(n * n - 1):
        raise ConsistencyError("Casimir of su(n) on m is not the identity")
    log.info("%s: decomposing Sym^2_0 m", p.name)
    sym2 = _sym2_decomposition(rs, m_module, sunmodel.su_sym(n), adjoint)

    results = []
    model_audit = {}
    for pw, cas in subcrit:
        lam, mu = pw.left, pw.right
        label = f"({weight_label(lam)}, {weight_label(mu)})"
        restr = rootdata.decompose_multiset(
            rs, rootdata.tensor_multiset(rootdata.character(rs, lam), rootdata.character(rs, mu))
        )
        hom = isotypic.hom_dimension(restr, sym2["parts"])
        nonzero = witness = None
        if hom == 1 and {lam, mu} == {w1, wlast}:
            sm = sunmodel.sun_space_model(n)
            # the explicit V = E (x) E* splits as adjoint + trivial under K
            v_module = isotypic.ModuleAction(n * n, sm.k_action_v, kill)
            v_parts = isotypic.isotypic_multiplicities(v_module, [adjoint, (0,) * (n - 1)], rs)
            if sorted(v_parts) != sorted(restr):
                raise ConsistencyError("explicit E (x) E* disagrees with the tensor character")
            nonzero, model_audit[label] = _run_model(sm, hom)
            witness = _short_witness(model_audit[label])
        results.append(RepResult(label, pw, cas, restr, hom, nonzero, witness))

    audit = {
        "space": p.name,
        "root_system": str(rs.cartan_type),
        "notion": p.notion,
        "threshold": p.threshold,
        "casimir_adjoint": cas_adj,
        "subcritical": [[_weight_json(pw), c] for pw, c in subcrit],
        "sym2_0_m": sym2["audit"],
        "divergence": model_audit,
    }
    return Verdict(p.name, p.threshold, results, _conclude(results), audit)


def _e6_pipeline(p: StabilityProblem) -> Verdict:
    e6 = rootdata.root_system("E6")
    f4 = rootdata.root_system("F4")
    cas_adj = rootdata.casimir(e6, e6.highest_root)
    if cas_adj != 1:
        raise ConsistencyError(f"Casimir of the E6 adjoint is {cas_adj}, not 1")
    subcrit = rootdata.subcritical_weights(e6, p.threshold)
    log.info("E6/F4: %d subcritical representations", len(subcrit))

    eta4 = _fundamental(f4, 4)
    zero4 = (0,) * 4
    log.info("E6/F4: computing Der(H)")
    ders, kill = albert.f4_orthogonal_basis()
    emb, proj = albert.traceless_embedding(), albert.traceless_projection()
    m_module = isotypic.ModuleAction(26, [proj @ d.matrix @ emb for d in ders], kill)
    cas_m = m_module.casimir
    if cas_m != ExactMatrix.identity(26).scale(rootdata.casimir(f4, eta4)):
        raise ConsistencyError("f4 Casimir on H_0 differs from Cas(eta_4)")
    log.info("E6/F4: decomposing Sym^2_0 H_0 (350-dimensional)")
    sym2 = _sym2_decomposition(f4, m_module, albert.traceless_sym(), eta4)

    h_module = isotypic.ModuleAction(27, [d.matrix for d in ders], kill)
    h_parts = isotypic.isotypic_multiplicities(h_module, [eta4, zero4], f4)
    restrictions = {
        (0,) * 6: [(zero4, 1)],
        _fundamental(e6, 1): h_parts,
        _fundamental(e6, 6): h_parts,  # the conjugate module restricts the same way
    }

    results = []
    model_audit = {}
    for lam, cas in subcrit:
        label = weight_label(lam)
        restr = restrictions.get(lam)
        if restr is None:
            log.warning("E6/F4: no restriction to F4 available for %s", label)
            results.append(RepResult(label, lam, cas, [], None))
            continue
        hom = isotypic.hom_dimension(restr, sym2["parts"])
        nonzero = witness = None
        if hom == 1:
            sm = albert.e6f4_space_model()
            if lam == _fundamental(e6, 6):
                sm = sm.conjugate("conj(H^C)")
            nonzero, model_audit[label] = _run_model(sm, hom)
            witness = _short_witness(model_audit[label])
        results.append(RepResult(label, lam, cas, restr, hom, nonzero, witness))

    audit = {
        "space": p.name,
        "root_system": "E6",
        "isotropy": "F4",
        "notion": p.notion,
        "threshold": p.threshold,
        "casimir_adjoint": cas_adj,
        "subcritical": [[list(w), c] for w, c in subcrit],
        "casimir_f4_on_H0": rootdata.casimir(f4, eta4),
        "restriction_of_H": [[list(w), m] for w, m in h_parts],
        "sym2_0_m": sym2["audit"],
        "divergence": model_audit,
    }
    return Verdict(p.name, p.threshold, results, _conclude(results), audit)


def run_pipeline(p: StabilityProblem) -> Verdict:
    log.info("%s: threshold %s (%s)", p.name, p.threshold, p.notion)
    if p.space == "su":
        return _su_pipeline(p)
    return _e6_pipeline(p)


# -- reference data ----------------------------------------------------------


@dataclass(frozen=True)
class ClassificationEntry:
    space: str
    status: str
    source: str
    origin: str = "literature"


CLASSIFICATION = (
    ClassificationEntry("SU(n), n >= 3", "infinitesimally deformable", "Koiso"),
    ClassificationEntry("SU(n)/SO(n), n >= 3", "infinitesimally deformable; linearly stable", "Koiso; Cao-He"),
    ClassificationEntry("SU(2n)/Sp(n), n >= 3", "infinitesimally deformable; linearly stable", "Koiso; Cao-He"),
    ClassificationEntry(
        "SU(p+q)/S(U(p)xU(q)), p >= q >= 2", "infinitesimally deformable; linearly stable", "Koiso; Cao-He"
    ),
    ClassificationEntry("E6/F4", "infinitesimally deformable", "Koiso"),
    ClassificationEntry("Sp(n), n >= 2", "unstable", "Koiso"),
    ClassificationEntry("Sp(n)/U(n), n >= 3", "unstable", "Koiso"),
    ClassificationEntry("SO(5)/(SO(3)xSO(2))", "unstable", "Gasqui-Goldschmidt"),
    ClassificationEntry("Sp(3)/(Sp(2)xSp(1))", "linearly stable", "Semmelmann-Weingart"),
    ClassificationEntry("Sp(p+q)/(Sp(p)xSp(q)), p >= q >= 2", "unstable", "Semmelmann-Weingart"),
    ClassificationEntry("F4/Spin(9)", "linearly stable", "Semmelmann-Weingart"),
    ClassificationEntry("every other irreducible symmetric space of compact type", "strictly stable", "Koiso"),
)


def classification_table() -> list[ClassificationEntry]:
    return list(CLASSIFICATION)


__all__ = [
    "CLASSIFICATION",
    "ClassificationEntry",
    "ConsistencyError",
    "LINEARLY_STABLE",
    "RepResult",
    "StabilityProblem",
    "UNDETERMINED",
    "UNSTABLE",
    "UnsupportedSpace",
    "Verdict",
    "classification_table",
    "run_pipeline",
    "weight_label",
]
