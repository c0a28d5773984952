import numpy as np
import pytest

from hdgp.gramian import Hdm, ObservationMask, hdm_of_points
from hdgp.lorentz import random_loid_points


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def planar_points():
    """Eight points on the 2-dimensional 'Loid."""
    return random_loid_points(8, 2, seed=7)


@pytest.fixture
def compact_points():
    """Six tightly spread points; keeps cosh-scaled residuals small."""
    return random_loid_points(6, 2, seed=3, spread=0.5)


@pytest.fixture
def complete_measurements(compact_points):
    truth = hdm_of_points(compact_points)
    return truth, ObservationMask.full(truth.n)


@pytest.fixture
def write_text(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def two_point_hdm():
    return Hdm(np.array([[0.0, 1.0], [1.0, 0.0]]))
