import numpy as np
import pytest

from spinsqueeze import build_operators
from spinsqueeze.spin_ops import DickeState, _frozen


@pytest.fixture(scope="session")
def ops20():
    return build_operators(20)


def random_state(n_spins: int, seed: int) -> DickeState:
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=n_spins + 1) + 1j * rng.normal(size=n_spins + 1)
    amps /= np.linalg.norm(amps)
    return DickeState(n_spins, _frozen(amps))
