import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from locsing import QQ, PrimeField, RationalFunctionField, make_ring

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ROOT = Path(__file__).resolve().parent.parent
FAMILIES = ROOT / "families"


@pytest.fixture
def Rq():
    return make_ring("x,y", QQ)


@pytest.fixture
def Rx():
    return make_ring("x", QQ)


def ring(vars_="x,y", field=QQ, ordering="ds"):
    return make_ring(vars_, field, ordering)


def fp(p):
    return PrimeField(p)


QT = RationalFunctionField(QQ)
