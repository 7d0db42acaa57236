import numpy as np
import pytest
from hypothesis import strategies as st

from periodlab.fourier import VectorField


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


finite = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)


@st.composite
def normalized_fields(draw, max_mode=10, n_modes=None):
    """sl2-normalized real fields with modes 2..max_mode."""
    coeffs = draw(st.lists(st.tuples(finite, finite), min_size=max_mode - 1,
                           max_size=max_mode - 1))
    modes = {m: complex(re, im) for m, (re, im) in zip(range(2, max_mode + 1), coeffs)}
    return VectorField.from_modes(modes, n_modes or max_mode, sl2_normalized=True)
