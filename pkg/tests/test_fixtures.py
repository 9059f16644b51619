"""The bundled example files keep working as documented."""

from pathlib import Path

import pytest

from dcrel import enum_exact, factor, parse_network, sweep

FIXTURES = Path(__file__).parent / "fixtures"


def _load(name, diameter=None):
    return parse_network((FIXTURES / name).read_text(), diameter=diameter)


def test_hubarc_values():
    net = _load("hubarc.net")
    assert enum_exact(net) == 0.265625
    assert factor(net).reliability == pytest.approx(0.265625, abs=1e-12)
    flagged = {r.link_id for r in sweep(net) if r.exact_irrelevant}
    assert flagged == {1, 2, 3}


def test_series_value():
    net = _load("series.net")
    assert factor(net).reliability == pytest.approx(0.3, abs=1e-15)


def test_bridge_values():
    net = _load("bridge.net")
    # two link-disjoint 2-hop routes: 0.72 + 0.42 - 0.72 * 0.42
    assert enum_exact(net) == pytest.approx(0.8376, abs=1e-12)
    assert factor(net).reliability == pytest.approx(0.8376, abs=1e-12)
    reports = {r.link_id: r for r in sweep(net)}
    assert reports[4].exact_irrelevant       # the bridge needs 3 hops
    assert reports[4].relevance_threshold == 3
    wider = _load("bridge.net", diameter=3)
    assert not any(r.exact_irrelevant for r in sweep(wider))
