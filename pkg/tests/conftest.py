import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from spintherm import EntropyBattery, Responses  # noqa: E402


@pytest.fixture
def responses():
    return Responses({"workers": 1})


@pytest.fixture
def battery():
    return EntropyBattery({"workers": 1})
