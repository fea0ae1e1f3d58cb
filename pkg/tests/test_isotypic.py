import pytest

from symstab import albert as al, sunmodel as su
from symstab.exactlin import ExactMatrix
from symstab.isotypic import (
    CasimirCollision,
    ModuleAction,
    ResidualError,
    casimir_matrix,
    hom_dimension,
    hom_multiplicity,
    isotypic_dimensions,
    traceless_sym_module,
)
from symstab.rootdata import CartanType, character, decompose_multiset, root_system, sym_square_multiset


def su_adjoint(n):
    gens, kill = su.ad_action_basis(n)
    return ModuleAction(n * n - 1, gens, kill)


def su_sym0(n):
    return traceless_sym_module(su_adjoint(n), su.su_sym(n))


def test_trivial_module():
    m = ModuleAction(3, [ExactMatrix.zeros(3, 3)] * 2, ExactMatrix.diagonal([-1, -1]))
    assert casimir_matrix(m).is_zero()


def test_singular_killing_rejected():
    with pytest.raises(ValueError):
        ModuleAction(2, [ExactMatrix.zeros(2, 2)] * 2, ExactMatrix.zeros(2, 2))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_su_adjoint_casimir_is_one(n):
    assert su_adjoint(n).casimir == ExactMatrix.identity(n * n - 1)


def test_closure():
    assert su_adjoint(3).is_closed()


@pytest.mark.parametrize("n", [3, 4])
def test_casimir_commutes_with_generators(n):
    m = su_sym0(n)
    c = m.casimir
    for g in m.generators:
        assert c @ g == g @ c


def test_su3_sym0():
    rs = root_system("A2")
    dims = isotypic_dimensions(su_sym0(3), [(2, 2), (1, 1)], rs)
    assert dims == [((2, 2), 27), ((1, 1), 8)]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_casimir_method_agrees_with_characters(n):
    rs = root_system(CartanType.su(n))
    adj = (1,) + (0,) * (n - 3) + (1,)
    ch = sym_square_multiset(character(rs, adj))
    ch[(0,) * (n - 1)] -= 1
    parts = decompose_multiset(rs, ch)
    expected_count = 2 if n == 3 else 3
    assert len(parts) == expected_count
    from symstab.rootdata import weyl_dimension

    dims = isotypic_dimensions(su_sym0(n), [w for w, _ in parts], rs)
    assert sorted(dims) == sorted((w, m * weyl_dimension(rs, w)) for w, m in parts)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_adjoint_multiplicity_one(n):
    rs = root_system(CartanType.su(n))
    adj = (1,) + (0,) * (n - 3) + (1,)
    assert hom_multiplicity(su_sym0(n), adj, rs) == 1


def test_absent_weight_gives_zero():
    rs = root_system("A2")
    assert hom_multiplicity(su_sym0(3), (1, 0), rs) == 0
    assert hom_multiplicity(su_sym0(3), (3, 0), rs, candidates=[(2, 2), (1, 1)]) == 0


def test_residual_reported():
    rs = root_system("A2")
    with pytest.raises(ResidualError) as exc:
        isotypic_dimensions(su_sym0(3), [(2, 2)], rs)
    assert exc.value.residual == 8


def test_single_irreducible():
    rs = root_system("A2")
    assert isotypic_dimensions(su_adjoint(3), [(1, 1)], rs) == [((1, 1), 8)]


def test_collision_falls_back_to_character():
    rs = root_system("A2")
    m = su_adjoint(3)
    # w1 and w2 share the Casimir 4/9
    with pytest.raises(CasimirCollision):
        isotypic_dimensions(m, [(1, 0), (0, 1), (1, 1)], rs)
    with_char = ModuleAction(m.dim, m.generators, m.killing_gram, character(rs, (1, 1)))
    assert isotypic_dimensions(with_char, [(1, 0), (0, 1), (1, 1)], rs) == [((1, 0), 0), ((0, 1), 0), ((1, 1), 8)]


def test_hom_dimension():
    assert hom_dimension([((1, 1), 1), ((0, 0), 1)], [((2, 2), 1), ((1, 1), 1)]) == 1


@pytest.fixture(scope="module")
def f4_sym0():
    ders, kill = al.f4_orthogonal_basis()
    pr, emb = al.traceless_projection(), al.traceless_embedding()
    base = ModuleAction(26, [pr @ d.matrix @ emb for d in ders], kill)
    return traceless_sym_module(base, al.traceless_sym())


def test_f4_sym0_decomposition(f4_sym0):
    f4 = root_system("F4")
    assert isotypic_dimensions(f4_sym0, [(0, 0, 0, 2), (0, 0, 0, 1)], f4) == [((0, 0, 0, 2), 324), ((0, 0, 0, 1), 26)]
    assert hom_multiplicity(f4_sym0, (0, 0, 0, 1), f4) == 1


def test_f4_sym0_agrees_with_character(f4_sym0):
    f4 = root_system("F4")
    ch = sym_square_multiset(character(f4, (0, 0, 0, 1)))
    ch[(0, 0, 0, 0)] -= 1
    assert sorted(decompose_multiset(f4, ch)) == [((0, 0, 0, 1), 1), ((0, 0, 0, 2), 1)]
