from fractions import Fraction

import pytest

from oneshotcap import (
    Channel,
    ChannelFormatError,
    CubicGraph,
    FunnelSpec,
    gen_from_cubic_graph,
    gen_funnel,
    gen_random,
    parse_channel,
    parse_cubic_graph,
    parse_prob,
    serialize_channel,
    serialize_cubic_graph,
)
from corpus import random_channels
from oneshotcap.hardness import cubic_k4, cubic_prism

F = Fraction

FUNNEL3_TEXT = """\
channel 3 3
# symbol 0 is noiseless, 1 and 2 leak into output 0
1 0 0
1/100 99/100 0
2/100 0 98/100
"""


def test_parse_identity():
    c = parse_channel("channel 2 2\n1 0\n0 1\n")
    assert c.rows == ((F(1), F(0)), (F(0), F(1)))


def test_parse_funnel3_matrix(funnel3):
    c = parse_channel(FUNNEL3_TEXT)
    assert c == funnel3
    assert c.prob(1, 0) == F(1, 100)
    assert c.prob(2, 2) == F(98, 100)


def test_parse_decimals_are_exact():
    c = parse_channel("channel 1 3\n0.01 0.02 0.97\n")
    assert c.row(0) == (F(1, 100), F(1, 50), F(97, 100))
    # 0.1 is not representable in binary floating point; the parse must not
    # go anywhere near it
    assert parse_prob("0.1") == F(1, 10)
    assert parse_prob("0.1") != Fraction(0.1)


def test_parse_rejects_bad_row_sum():
    with pytest.raises(ChannelFormatError, match="row 1"):
        parse_channel("channel 2 2\n1 0\n49/100 1/2\n")


def test_parse_reports_entry_location():
    with pytest.raises(ChannelFormatError, match="row 0, column 1"):
        parse_channel("channel 1 2\n1/2 3/2\n")
    with pytest.raises(ChannelFormatError, match="row 1, column 0"):
        parse_channel("channel 2 1\n1\nnope\n")


def test_parse_rejects_bad_shapes():
    with pytest.raises(ChannelFormatError, match="expected 'channel"):
        parse_channel("matrix 2 2\n1 0\n0 1\n")
    with pytest.raises(ChannelFormatError, match="expected 2 rows"):
        parse_channel("channel 2 2\n1 0\n")
    with pytest.raises(ChannelFormatError, match="has 3 entries, expected 2"):
        parse_channel("channel 2 2\n1 0 0\n0 1\n")
    with pytest.raises(ChannelFormatError):
        parse_prob("1e-2")  # exponents are not finite-decimal syntax here


def test_roundtrip_exact(funnel3):
    for c in [funnel3] + random_channels(20, seed0=500):
        assert parse_channel(serialize_channel(c)) == c


def test_channel_validation():
    with pytest.raises(ValueError, match="sum to"):
        Channel.make([[F(1, 2), F(1, 4)]])
    with pytest.raises(ValueError, match="outside"):
        Channel.make([[F(3, 2), F(-1, 2)]])
    with pytest.raises(ValueError, match="expected 2 entries"):
        Channel(((F(1), F(0)), (F(1),)))


# ---------------------------------------------------------------------------
# Funnel family
# ---------------------------------------------------------------------------

def test_gen_funnel_matches_fixture(funnel3, funnel3_spec):
    assert gen_funnel(funnel3_spec).rows == funnel3.rows


def test_gen_funnel_degenerate_full_leak():
    c = gen_funnel(FunnelSpec.make(2, [F(1)]))
    assert c.row(0) == c.row(1) == (F(1), F(0))


def test_gen_funnel_formula_entry_by_entry():
    e = (F(1, 10), F(1, 5), F(3, 10))
    c = gen_funnel(FunnelSpec.make(4, e))
    assert c.num_inputs == c.num_outputs == 4
    for i in range(4):
        for y in range(4):
            if i == 0:
                expected = F(1) if y == 0 else F(0)
            elif y == i:
                expected = 1 - e[i - 1]
            elif y == 0:
                expected = e[i - 1]
            else:
                expected = F(0)
            assert c.prob(i, y) == expected


def test_funnel_spec_invariants():
    with pytest.raises(ValueError):
        FunnelSpec.make(3, [F(0), F(1, 2)])  # zero leak rejected
    with pytest.raises(ValueError):
        FunnelSpec.make(3, [F(1, 2), F(1, 2)])  # not strictly increasing
    with pytest.raises(ValueError):
        FunnelSpec.make(3, [F(1, 2), F(3, 2)])  # above 1
    with pytest.raises(ValueError):
        FunnelSpec.make(3, [F(1, 2)])  # wrong count
    with pytest.raises(ValueError):
        FunnelSpec.make(1, [])


def test_funnel_rows_sum_to_one():
    for n, e in [(2, [F(1, 7)]), (5, [F(1, 9), F(2, 9), F(1, 3), F(1)])]:
        c = gen_funnel(FunnelSpec.make(n, e))
        for x in range(n):
            assert sum(c.row(x)) == 1


# ---------------------------------------------------------------------------
# Cubic-graph channels
# ---------------------------------------------------------------------------

def test_gen_from_cubic_k4():
    c = gen_from_cubic_graph(cubic_k4())
    assert (c.num_inputs, c.num_outputs) == (4, 6)
    for x in range(4):
        assert sorted(c.row(x), reverse=True)[:3] == [F(1, 3)] * 3
        assert sum(c.row(x)) == 1


def test_gen_from_cubic_prism_output_order():
    g = cubic_prism()
    c = gen_from_cubic_graph(g)
    assert (c.num_inputs, c.num_outputs) == (6, 9)
    for v in range(6):
        for i, (a, b) in enumerate(g.edges):
            assert c.prob(v, i) == (F(1, 3) if v in (a, b) else F(0))


def test_cubic_graph_rejects_wrong_degree():
    with pytest.raises(ValueError, match="degree"):
        CubicGraph.make(4, [(0, 1), (1, 2), (2, 3), (3, 0)])  # a 2-regular cycle
    with pytest.raises(ValueError, match="loop"):
        CubicGraph.make(2, [(0, 0), (0, 1), (0, 1)])


def test_cubic_graph_roundtrip():
    g = cubic_prism()
    assert parse_cubic_graph(serialize_cubic_graph(g)) == g
    with pytest.raises(ChannelFormatError, match="expected 9 edges"):
        parse_cubic_graph("graph 6 9\n0 1\n")


# ---------------------------------------------------------------------------
# Random channels
# ---------------------------------------------------------------------------

def test_gen_random_trivial_1x1():
    assert gen_random(1, 1, seed=7, denominator_bound=5).rows == ((F(1),),)


def test_gen_random_deterministic():
    a = gen_random(3, 4, seed=42, denominator_bound=12)
    b = gen_random(3, 4, seed=42, denominator_bound=12)
    assert a == b
    assert a != gen_random(3, 4, seed=43, denominator_bound=12)


def test_gen_random_exact_rows_and_denominators():
    c = gen_random(3, 3, seed=7, denominator_bound=12)
    for x in range(3):
        assert sum(c.row(x)) == 1
        for p in c.row(x):
            assert p.denominator <= 12
