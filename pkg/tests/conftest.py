import math

import pytest

from nullpencil.curve import NullCurve
from nullpencil.presets import PRESETS

HELIX_FRAME = {
    "l": ["1", "cos(s)", "-sin(s)"],
    "n": ["1/2", "-cos(s)/2", "sin(s)/2"],
    "u": ["0", "-sin(s)", "-cos(s)"],
}
CUBIC = [
    "-sqrt(2)/12*s^3 - sqrt(2)/2*s",
    "-s^2/2",
    "-sqrt(2)/12*s^3 + sqrt(2)/2*s",
]
CUBIC_FRAME = {
    "l": ["-sqrt(2)/4*s^2 - sqrt(2)/2", "-s", "-sqrt(2)/4*s^2 + sqrt(2)/2"],
    "n": ["-sqrt(2)/2", "0", "-sqrt(2)/2"],
    "u": ["-sqrt(2)/2*s", "-1", "-sqrt(2)/2*s"],
}


@pytest.fixture
def helix():
    return NullCurve.from_strings(["s", "sin(s)", "cos(s)"], [0, 2 * math.pi], HELIX_FRAME)


@pytest.fixture
def cubic():
    return NullCurve.from_strings(CUBIC, [-4, 4], CUBIC_FRAME)


@pytest.fixture(params=sorted(PRESETS))
def preset(request):
    return PRESETS[request.param]
