import numpy as np
import pytest

from nlfrac import DerivativeSpec


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


# one representative per named operator family, reused across files
RL_1 = DerivativeSpec(1, 0.6, (0.0,))
CAPUTO_1 = DerivativeSpec(1, 0.6, (0.4,))
HILFER_1 = DerivativeSpec(1, 0.6, (0.2,))
CAPUTO_V2 = DerivativeSpec(2, 0.6, (0.4, 1.0))
TRULY_2L = DerivativeSpec(2, 0.6, (0.4, 0.6))
HILFER_RED = DerivativeSpec(2, 0.6, (0.1, 1.0))

TAXONOMY = (RL_1, CAPUTO_1, HILFER_1, CAPUTO_V2, TRULY_2L, HILFER_RED)
