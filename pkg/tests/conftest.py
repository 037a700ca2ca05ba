"""Shared test setup: import path and small reference codes."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import pytest  # noqa: E402

from fast_polar.code import code_from_frozen, construct  # noqa: E402
from fast_polar.serializers import load_code  # noqa: E402

DATA = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def code_8_5():
    """The (8,5) code with u_0..u_2 frozen."""
    return code_from_frozen(8, [0, 1, 2])


@pytest.fixture(scope="session")
def code_128_64():
    """A (128,64) code from a coarse construction; equivalence tests do not care which."""
    return construct(128, 64, 3.0, fidelity=32)


@pytest.fixture(scope="session")
def reference_code_128_64():
    """The (128,64) code of the fidelity-256 construction at 3 dB, as checked in."""
    return load_code(os.path.join(DATA, "frozen_128_64.json"))
