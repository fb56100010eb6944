import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "spfft",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("spfft")


@pytest.fixture
def example_256():
    """Known-answer instance: length 256, support of length 6 starting at 105."""
    x = np.zeros(256, dtype=np.complex128)
    x[105] = 8
    x[107] = -3
    x[108] = -5
    x[110] = 2
    return x
