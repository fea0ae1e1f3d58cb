from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from symstab.exactlin import ExactMatrix, GaussianRational

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
gaussians = st.builds(GaussianRational, small_rationals, small_rationals)


@st.composite
def matrices(draw, rows=None, cols=None, complex_=True, max_dim=5):
    r = rows if rows is not None else draw(st.integers(1, max_dim))
    c = cols if cols is not None else draw(st.integers(1, max_dim))
    elem = gaussians if complex_ else small_rationals
    # sparse-ish entries make rank deficiency common
    entry = st.one_of(st.just(0), elem)
    return ExactMatrix([[draw(entry) for _ in range(c)] for _ in range(r)], shape=(r, c))


@pytest.fixture(scope="session")
def e6_model():
    from symstab.albert import e6f4_space_model

    return e6f4_space_model()


@pytest.fixture(scope="session")
def e6_intertwiner(e6_model):
    from symstab.divergence import build_intertwiner

    return build_intertwiner(e6_model)


@pytest.fixture(scope="session")
def e6_report(e6_model, e6_intertwiner):
    from symstab.divergence import evaluate_divergence

    return evaluate_divergence(e6_model, e6_intertwiner)
