import sys
from pathlib import Path

import numpy as np
import pytest

from gipower import (
    CovarianceMatrix,
    apply_local_symplectic,
    from_standard_form,
    random_local_symplectic,
    random_state,
)

sys.path.insert(0, str(Path(__file__).parent))


def random_physical_cm(rng, a_max=5.0, b_max=5.0, conjugate=False) -> CovarianceMatrix:
    """A random physical state; optionally kicked out of standard form."""
    cm = from_standard_form(random_state(rng, a_max, b_max))
    if conjugate:
        cm = apply_local_symplectic(cm, random_local_symplectic(rng), random_local_symplectic(rng))
    return cm


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)
