from fractions import Fraction

import pytest

from oneshotcap import FunnelSpec, gen_funnel, identity_channel


@pytest.fixture
def funnel3_spec():
    """3-symbol funnel with leaks 1/100 and 1/50."""
    return FunnelSpec.make(3, [Fraction(1, 100), Fraction(1, 50)])


@pytest.fixture
def funnel3(funnel3_spec):
    return gen_funnel(funnel3_spec)


@pytest.fixture
def id3():
    return identity_channel(3)
