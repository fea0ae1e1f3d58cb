"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py``; the lines are printed even
when output capture is on.
"""

import random
import time
from fractions import Fraction

import pytest

from symstab import albert as al, rootdata, sunmodel as su
from symstab.divergence import (
    build_intertwiner,
    divergence_terms,
    evaluate_divergence,
    proportionality_constant,
    simplified_values,
    unitarity_constant,
)
from symstab.exactlin import (
    IMAG,
    ExactMatrix,
    GaussianRational,
    GramSpace,
    adjoint,
    null_space,
    pseudo_inverse_on_image,
    rank,
)
from symstab.isotypic import ModuleAction, hom_dimension, isotypic_dimensions, isotypic_multiplicities, traceless_sym_module
from symstab.octonion import Octonion, norm
from symstab.stability import LINEARLY_STABLE, StabilityProblem, run_pipeline

CASES = 100


class Checks:
    """Collects named boolean checks and the elapsed time of a criterion."""

    def __init__(self):
        self.failed = []
        self.count = 0
        self.start = time.perf_counter()

    def check(self, ok, what):
        self.count += 1
        if not ok:
            self.failed.append(what)

    @property
    def elapsed(self):
        return time.perf_counter() - self.start


def report(capsys, number, title, checks, limit=None):
    elapsed = checks.elapsed
    if limit is not None and elapsed > limit:
        checks.failed.append(f"took {elapsed:.2f}s, limit {limit}s")
    status = "PASS" if not checks.failed else "FAIL"
    line = f"{status} criterion {number}: {title} ({checks.count} checks, {elapsed:.2f}s)"
    if checks.failed:
        line += " -- " + "; ".join(checks.failed[:5])
    with capsys.disabled():
        print("\n" + line)
    assert not checks.failed, line


def su_rs(n):
    return rootdata.root_system(rootdata.CartanType.su(n))


def fundamental(n, r):
    return tuple(int(i == r) for i in range(1, n))


# -- 1 -----------------------------------------------------------------------------


def test_criterion_1_casimir_tables(capsys):
    c = Checks()
    for n in range(3, 11):
        rs = su_rs(n)
        for r in range(1, n):
            c.check(
                rootdata.casimir(rs, fundamental(n, r)) == Fraction((n + 1) * r * (n - r), 2 * n * n),
                f"SU({n}) w{r}",
            )
        adj = tuple(a + b for a, b in zip(fundamental(n, 1), fundamental(n, n - 1)))
        c.check(rootdata.casimir(rs, adj) == 1, f"SU({n}) adjoint")
    c.check(rootdata.casimir(su_rs(6), fundamental(6, 3)) == Fraction(7, 8), "SU(6) w3")
    c.check(rootdata.casimir(su_rs(7), fundamental(7, 3)) == Fraction(48, 49), "SU(7) w3")
    e6 = rootdata.root_system("E6")
    c.check(rootdata.casimir(e6, (1, 0, 0, 0, 0, 0)) == Fraction(13, 18), "E6 w1")
    c.check(rootdata.casimir(e6, (0, 0, 0, 0, 0, 1)) == Fraction(13, 18), "E6 w6")
    report(capsys, 1, "Casimir tables", c, limit=1.0)


# -- 2 -----------------------------------------------------------------------------


def test_criterion_2_subcritical_lists(capsys):
    c = Checks()
    one = Fraction(1)
    for n in range(3, 11):
        rs = su_rs(n)
        got = {w for w, _ in rootdata.subcritical_weights(rs, one)}
        expected = {(0,) * (n - 1)} | {fundamental(n, r) for r in (1, n - 1, 2, n - 2)}
        if n in (6, 7):
            expected |= {fundamental(n, 3), fundamental(n, n - 3)}
        c.check(got == expected, f"SU({n}) single factors")
        w1, wl = fundamental(n, 1), fundamental(n, n - 1)
        pairs = {
            frozenset((p.left, p.right))
            for p, _ in rootdata.subcritical_product_weights(rs, one)
            if any(p.left) and any(p.right)
        }
        c.check(pairs == {frozenset((w1,)), frozenset((w1, wl)), frozenset((wl,))}, f"SU({n}) pairs")
    e6 = rootdata.root_system("E6")
    got = {w for w, _ in rootdata.subcritical_weights(e6, one)}
    c.check(got == {(0,) * 6, (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1)}, "E6")
    report(capsys, 2, "subcritical enumeration", c, limit=1.0)


# -- 3 -----------------------------------------------------------------------------


def su_sym0_module(n):
    gens, kill = su.ad_action_basis(n)
    return traceless_sym_module(ModuleAction(n * n - 1, gens, kill), su.su_sym(n))


def su_expected(n):
    w1, wl = fundamental(n, 1), fundamental(n, n - 1)
    adj = tuple(a + b for a, b in zip(w1, wl))
    big = tuple(2 * a for a in adj)
    if n == 3:
        return adj, {big: 1, adj: 1}
    middle = tuple(a + b for a, b in zip(fundamental(n, 2), fundamental(n, n - 2)))
    return adj, {big: 1, middle: 1, adj: 1}


def test_criterion_3_decompositions(capsys):
    c = Checks()
    su_time = 0.0
    for n in (3, 4, 5):
        t0 = time.perf_counter()
        rs = su_rs(n)
        adj, expected = su_expected(n)
        ch = rootdata.sym_square_multiset(rootdata.character(rs, adj))
        ch[(0,) * (n - 1)] -= 1
        by_character = dict(rootdata.decompose_multiset(rs, ch))
        c.check(by_character == expected, f"SU({n}) character method")
        by_casimir = dict(isotypic_multiplicities(su_sym0_module(n), list(expected), rs))
        c.check(by_casimir == expected, f"SU({n}) Casimir method")
        su_time += time.perf_counter() - t0
    c.check(su_time < 30, f"su(n) decompositions took {su_time:.1f}s")

    f4 = rootdata.root_system("F4")
    ders, kill = al.f4_orthogonal_basis()
    pr, emb = al.traceless_projection(), al.traceless_embedding()
    base = ModuleAction(26, [pr @ d.matrix @ emb for d in ders], kill)
    dims = dict(isotypic_dimensions(traceless_sym_module(base, al.traceless_sym()), [(0, 0, 0, 2), (0, 0, 0, 1)], f4))
    c.check(sorted(dims.values()) == [26, 324], f"Sym^2_0(H_0) eigenspaces {dims}")
    ch = rootdata.sym_square_multiset(rootdata.character(f4, (0, 0, 0, 1)))
    ch[(0, 0, 0, 0)] -= 1
    c.check(dict(rootdata.decompose_multiset(f4, ch)) == {(0, 0, 0, 2): 1, (0, 0, 0, 1): 1}, "F4 character method")
    report(capsys, 3, "decompositions by two methods", c, limit=300)


# -- 4 -----------------------------------------------------------------------------


def test_criterion_4_multiplicity_one(capsys, e6_model):
    c = Checks()
    for n in (3, 4, 5):
        rs = su_rs(n)
        adj, expected = su_expected(n)
        sym2 = isotypic_multiplicities(su_sym0_module(n), list(expected), rs)
        sm = su.sun_space_model(n)
        _, kill = su.ad_action_basis(n)
        v_parts = isotypic_multiplicities(ModuleAction(n * n, sm.k_action_v, kill), [adj, (0,) * (n - 1)], rs)
        c.check(hom_dimension(v_parts, sym2) == 1, f"SU({n}) E (x) E*")

    f4 = rootdata.root_system("F4")
    eta4, triv = (0, 0, 0, 1), (0, 0, 0, 0)
    _, kill = al.f4_orthogonal_basis()
    sym_base = ModuleAction(26, e6_model.k_action_m, kill)
    sym2 = isotypic_multiplicities(traceless_sym_module(sym_base, e6_model.sym), [(0, 0, 0, 2), eta4], f4)
    for label, sm in (("H^C", e6_model), ("conj H^C", e6_model.conjugate())):
        v_parts = isotypic_multiplicities(ModuleAction(27, sm.k_action_v, kill), [eta4, triv], f4)
        c.check(hom_dimension(v_parts, sym2) == 1, label)
    report(capsys, 4, "multiplicity one", c)


# -- 5 -----------------------------------------------------------------------------


def test_criterion_5_anchors(capsys, e6_model, e6_intertwiner):
    c = Checks()
    E = su.unit
    c.check(su.pi_sun(E(3, 2, 1), E(3, 3, 1)) == E(3, 2, 3) + E(3, 3, 2), "pi(E21 . E31)")
    f1 = E(3, 1, 2) - E(3, 2, 1)
    F = E(3, 1, 3) - E(3, 3, 1)
    out = f1 @ F + F @ f1
    c.check(out == -E(3, 2, 3) - E(3, 3, 2), "f1 F + F f1")
    c.check(su.trace_form(out, out) == 2, "square of f1 F + F f1")

    half = Fraction(1, 2)
    prod = al.jordan(al.F(2), al.F(1))
    c.check(prod == al.F(3) * half, "F2(1) o F1(1)")
    c.check(al.pi_albert(al.F(1), al.F(2)) == al.F(3), "pi(F1(1) . F2(1))")
    term = al.inner(prod, prod)
    c.check(term == half, "F2(1)-term")
    # the engine's F2(1) summand carries that value times 2i/c and Ginv = 1/2
    f2 = e6_model.m_labels.index("F2(1)")
    terms = divergence_terms(e6_model, e6_intertwiner)
    cst = unitarity_constant(e6_model)
    c.check(terms[f2][3, 2] == IMAG * 2 * half * term / cst, "engine F2(1)-term")
    report(capsys, 5, "hand-computed anchors", c)


# -- 6 -----------------------------------------------------------------------------


def test_criterion_6_verdicts(capsys, e6_model, e6_intertwiner):
    c = Checks()
    t0 = time.perf_counter()
    v = run_pipeline(StabilityProblem("su", 3))
    c.check(time.perf_counter() - t0 < 10, "SU(3) runtime")
    verdicts = {3: v} | {n: run_pipeline(StabilityProblem("su", n)) for n in (4, 5)}
    for n, v in verdicts.items():
        c.check(v.conclusion == LINEARLY_STABLE, f"SU({n}) {v.conclusion}")
        wit = [(r.witness["F"], r.witness["X"]) for r in v.subcritical if r.witness]
        c.check(wit == [("E13-E31", "E13-E31")], f"SU({n}) witness {wit}")

    t0 = time.perf_counter()
    v = run_pipeline(StabilityProblem("e6f4"))
    c.check(time.perf_counter() - t0 < 600, "E6/F4 runtime")
    c.check(v.conclusion == LINEARLY_STABLE, f"E6/F4 {v.conclusion}")
    wit = [(r.witness["F"], r.witness["X"]) for r in v.subcritical if r.witness]
    c.check(wit == [("F1(1)", "F1(1)")] * 2, f"E6/F4 witnesses {wit}")

    plain = evaluate_divergence(e6_model, e6_intertwiner)
    conj_model = e6_model.conjugate()
    conj = evaluate_divergence(conj_model, build_intertwiner(conj_model))
    pattern = lambda r: [[bool(x) for x in row] for row in r.values.tolist()]  # noqa: E731
    c.check(conj.nonzero and pattern(conj) == pattern(plain), "conjugate pattern")
    c.check(conj.witness_labels() == ("F1(1)", "F1(1)"), "conjugate witness")
    report(capsys, 6, "divergence and verdicts", c, limit=900)


# -- 7 -----------------------------------------------------------------------------


def rand_q(rng, bound=4):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 3))


def rand_matrix(rng, rows, cols):
    # about a third of the entries vanish, so rank deficiency shows up often
    def entry():
        if rng.random() < 0.35:
            return 0
        return GaussianRational(rand_q(rng), rand_q(rng))

    return ExactMatrix([[entry() for _ in range(cols)] for _ in range(rows)], shape=(rows, cols))


def rand_gram(rng, n):
    b = rand_matrix(rng, n, n)
    return GramSpace(n, b.H @ b + ExactMatrix.identity(n))


def rand_su(rng, n):
    fs, _ = su.su_basis(n)
    acc = ExactMatrix.zeros(n, n)
    for f in fs:
        acc = acc + f.scale(rng.randint(-3, 3))
    return acc


def test_criterion_7_property_suites(capsys, e6_model, e6_intertwiner):
    c = Checks()
    rng = random.Random(20261015)

    for _ in range(CASES):
        x = Octonion([rand_q(rng) for _ in range(8)])
        y = Octonion([rand_q(rng) for _ in range(8)])
        c.check(norm(x * y) == norm(x) * norm(y), "octonion norm")
        c.check(x * (x * y) == (x * x) * y and (y * x) * x == y * (x * x), "alternativity")

    for _ in range(CASES):
        x, y = al.random_element(rng, 3), al.random_element(rng, 3)
        xx = al.jordan(x, x)
        c.check(al.jordan(al.jordan(x, y), xx) == al.jordan(x, al.jordan(y, xx)), "Jordan identity")

    for _ in range(CASES):
        a, b, x, y = (al.random_element(rng, 2) for _ in range(4))
        d = al.derivation_from_pair(a, b)
        c.check(d.apply(al.jordan(x, y)) == al.jordan(d.apply(x), y) + al.jordan(x, d.apply(y)), "Leibniz")
    ders, _ = al.f4_orthogonal_basis()
    c.check(len(ders) == 52, "dim Der(H)")

    # equivariance of pi: for random k in the isotropy algebra and random arguments
    for _ in range(CASES):
        d = ders[rng.randrange(52)].matrix.scale(rng.randint(1, 3)) + ders[rng.randrange(52)].matrix
        dd = al.Derivation(d)
        a, b = al.random_element(rng, 2), al.random_element(rng, 2)
        lhs = dd.apply(al.pi_albert(a, b))
        c.check(lhs == al.pi_albert(dd.apply(a), b) + al.pi_albert(a, dd.apply(b)), "pi equivariance (E6/F4)")
    for _ in range(CASES):
        n = rng.choice((3, 4))
        k, a, b = rand_su(rng, n), rand_su(rng, n), rand_su(rng, n)
        br = lambda p, q: p @ q - q @ p  # noqa: E731
        c.check(
            br(k, su.pi_sun(a, b)) == su.pi_sun(br(k, a), b) + su.pi_sun(a, br(k, b)), "pi equivariance (SU)"
        )

    pi = al.pi_full_matrix()
    proj = al.traceless_embedding() @ al.traceless_projection()
    c.check(pi @ al.traceless_sym().traceless_projection == proj @ pi, "pr pi = pi pr (E6/F4)")
    for n in (3, 4, 5):
        sm = su.sun_space_model(n)
        pin = su.pi_full_matrix(n)
        c.check(
            pin @ sm.sym.traceless_projection == sm.target_proj.T @ sm.target_proj @ pin, f"pr pi = pi pr (SU({n}))"
        )

    models = [su.sun_space_model(n) for n in (3, 4, 5)] + [e6_model]
    for sm in models:
        cst = unitarity_constant(sm)
        c.check(cst is not None and cst.is_real() and cst.re > 0, f"Schur unitarity {sm.name}")
        a = e6_intertwiner if sm is e6_model else build_intertwiner(sm)
        rep = evaluate_divergence(sm, a)
        ratio = proportionality_constant(rep.values, simplified_values(sm))
        c.check(ratio is not None and ratio.is_real() and ratio.re > 0, f"closed-form ratio {sm.name}")

    for _ in range(CASES):
        rows, cols = rng.randint(1, 4), rng.randint(1, 4)
        m = rand_matrix(rng, rows, cols)
        k = null_space(m)
        c.check(rank(m) + k.cols == cols and (m @ k).is_zero(), "rank-nullity")
        dom, cod = rand_gram(rng, cols), rand_gram(rng, rows)
        p = pseudo_inverse_on_image(m, dom, cod)
        pm, mp = p @ m, m @ p
        ok = m @ p @ m == m and p @ m @ p == p and adjoint(pm, dom, dom) == pm and adjoint(mp, cod, cod) == mp
        c.check(ok, "pseudo-inverse laws")
    report(capsys, 7, "property suites", c)
