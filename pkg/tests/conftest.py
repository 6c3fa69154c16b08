import numpy as np
import pytest

from pupilcover import Point, Pupil, PupilConfig


def random_config(rng: np.random.Generator, n: int, radius: float = 1.0) -> PupilConfig:
    """Random configuration: centers uniform in the [-R, R] square, radii
    uniform in [0, R/2]."""
    pupils = [
        Pupil(
            Point(float(rng.uniform(-radius, radius)), float(rng.uniform(-radius, radius))),
            float(rng.uniform(0.0, radius / 2.0)),
        )
        for _ in range(n)
    ]
    return PupilConfig(pupils, radius)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
