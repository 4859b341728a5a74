import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays


def ginibre(rng, n):
    return (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2 * n)


def hermitian(rng, n):
    g = ginibre(rng, n)
    return 0.5 * (g + g.conj().T)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_entries = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)


@st.composite
def complex_matrices(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    return draw(arrays(np.complex128, (n, n), elements=_entries))


@st.composite
def hermitian_matrices(draw, min_n=1, max_n=8):
    m = draw(complex_matrices(min_n, max_n))
    return 0.5 * (m + m.conj().T)
