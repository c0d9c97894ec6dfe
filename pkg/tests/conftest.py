"""Shared fixtures and hypothesis profiles."""

import os

import pytest
from hypothesis import HealthCheck, settings

from src.chase.engine import ChaseCaps
from src.core.terms import NullInterner
from src.textio.parser import parse_program

settings.register_profile("ci", max_examples=200, deadline=None)
settings.register_profile(
    "dev", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "dev"))


SL_DIVERGE = """
R(a,b).
R(X,Y) -> exists Z: R(Y,Z).
"""

LINEAR_NO_TRIGGER = """
R(a,b).
R(X,X) -> exists Z: R(Z,X).
"""


@pytest.fixture
def sl_diverge():
    """D = {R(a,b)} with R(X,Y) -> exists Z: R(Y,Z); the chase is infinite."""
    return parse_program(SL_DIVERGE)


@pytest.fixture
def linear_no_trigger():
    """Linear program whose only rule never fires on R(a,b)."""
    return parse_program(LINEAR_NO_TRIGGER)


@pytest.fixture
def small_caps():
    return ChaseCaps.of(100)


@pytest.fixture
def nulls():
    """A fresh null interner."""
    return NullInterner()
