from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import gaussians, matrices
from symstab.exactlin import (
    IMAG,
    ExactMatrix,
    GaussianRational,
    GramSpace,
    adjoint,
    as_fraction,
    column_space_coordinates,
    eigenspace_dim,
    inverse,
    null_space,
    ortho_complement,
    orthogonal_projection,
    pseudo_inverse_on_image,
    rank,
    rref,
    rref_python,
)


def test_as_fraction_accepts_strings_and_ints():
    assert as_fraction("3/6") == Fraction(1, 2)
    assert as_fraction(4) == 4
    with pytest.raises((TypeError, ValueError)):
        as_fraction(0.5)


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == GaussianRational(5)
    assert IMAG * IMAG == -1
    assert (z / z) == 1
    assert str(GaussianRational(0, Fraction(1, 2))) == "1/2i"
    with pytest.raises(ZeroDivisionError):
        z / 0


def test_identity_and_product():
    a = ExactMatrix([[1, 2], [3, 4]])
    assert a @ ExactMatrix.identity(2) == a
    assert (a @ a)[1, 1] == 22
    assert a.T[0, 1] == 3


def test_complex_matrix_parts():
    a = ExactMatrix([[1, IMAG], [0, 2]])
    assert not a.is_real()
    assert a.H[1, 0] == -IMAG
    assert ExactMatrix.from_parts(a.real, a.imag) == a
    assert a.reshape(1, 4).tolist()[0] == [1, IMAG, 0, 2]


def test_inverse_of_singular_raises():
    with pytest.raises(ValueError):
        inverse(ExactMatrix([[1, 2], [2, 4]]))


def test_rank_of_known_matrices():
    assert rank(ExactMatrix([[1, 2], [2, 4]])) == 1
    assert rank(ExactMatrix([[1, IMAG], [IMAG, -1]])) == 1
    assert rank(ExactMatrix.zeros(3, 2)) == 0


def test_null_space_is_canonical():
    k = null_space(ExactMatrix([[1, 1, 1]]))
    assert k == ExactMatrix([[-1, -1], [1, 0], [0, 1]])


def test_gram_space_rejects_non_hermitian():
    with pytest.raises(ValueError):
        GramSpace(2, ExactMatrix([[1, 1], [0, 1]]))


@given(matrices(complex_=False))
def test_flint_rref_matches_python_oracle(m):
    fast, p1 = rref(m)
    slow, p2 = rref_python(m)
    assert p1 == p2
    assert fast == slow


@given(matrices())
def test_rank_nullity(m):
    k = null_space(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()
    assert rank(k) == k.cols


@given(matrices())
def test_complex_rank_matches_python_rref(m):
    assert rank(m) == len(rref_python(m)[1])


@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_inverse_law(m):
    if rank(m) < m.rows:
        with pytest.raises(ValueError):
            inverse(m)
    else:
        assert m @ inverse(m) == ExactMatrix.identity(m.rows)


def _random_gram(data, n: int) -> GramSpace:
    b = data.draw(matrices(rows=n, cols=n))
    # B^H B + I is Hermitian positive definite
    return GramSpace(n, b.H @ b + ExactMatrix.identity(n))


@given(matrices(max_dim=4), st.data())
def test_pseudo_inverse_laws(m, data):
    dom = _random_gram(data, m.cols)
    cod = _random_gram(data, m.rows)
    a = pseudo_inverse_on_image(m, dom, cod)
    assert m @ a @ m == m
    assert a @ m @ a == a
    am, ma = a @ m, m @ a
    assert adjoint(am, dom, dom) == am
    assert adjoint(ma, cod, cod) == ma


@given(matrices(max_dim=4), st.data())
def test_adjoint_defining_property(m, data):
    dom = GramSpace(m.cols, ExactMatrix.identity(m.cols).scale(2))
    cod = GramSpace.standard(m.rows)
    u = data.draw(matrices(rows=m.cols, cols=1))
    v = data.draw(matrices(rows=m.rows, cols=1))
    assert cod.inner(m @ u, v) == dom.inner(u, adjoint(m, dom, cod) @ v)


@given(matrices(rows=4, max_dim=3))
def test_orthogonal_projection_is_idempotent(b):
    space = GramSpace(4, ExactMatrix([[2, 1, 0, 0], [1, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 3]]))
    p = orthogonal_projection(b.submatrix(None, rref(b)[1]), space)
    assert p @ p == p
    assert adjoint(p, space, space) == p
    comp = ortho_complement(b, space)
    assert (p @ comp).is_zero()
    assert rank(b) + comp.cols == 4


def test_column_space_coordinates_rejects_outside_vectors():
    basis = ExactMatrix([[1], [0]])
    assert column_space_coordinates(basis, ExactMatrix([[3], [0]])) == ExactMatrix([[3]])
    with pytest.raises(ValueError):
        column_space_coordinates(basis, ExactMatrix([[0], [1]]))


def test_eigenspace_dim():
    m = ExactMatrix.diagonal([1, 1, 2])
    assert eigenspace_dim(m, 1) == 2
    assert eigenspace_dim(m, 3) == 0


@given(gaussians, gaussians)
def test_gaussian_field_laws(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a
