import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

from hfo.io import load_fixture, load_window_fixture  # noqa: E402

KNOTS = ("unknot", "trefoil_lh", "figure_eight")
# hat HF rank of 0-surgery: S2 x S1, and the two genus one examples
ZERO_SURGERY_RANK = {"unknot": 2, "trefoil_lh": 2, "trefoil_rh": 2, "figure_eight": 4}


@pytest.fixture(scope="session")
def knots():
    return {k: load_fixture(k) for k in KNOTS + ("trefoil_rh",)}


@pytest.fixture(scope="session")
def windows():
    return {k: load_window_fixture(k) for k in KNOTS + ("trefoil_rh",)}
