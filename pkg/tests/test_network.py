import math
import random

import pytest

from dcrel import (
    Link,
    Network,
    ParseError,
    SystemState,
    UNREACHABLE,
    parse_network,
    phi,
    serialize_network,
)
from helpers import all_simple_paths, connected, hub_arc, hub_arc_text, make_suite


# ----------------------------------------------------------------------
# parsing

def test_parse_two_link_file():
    net = parse_network("n 8\nd 6\ns 0\nt 7\ne 0 0 1 0.9\ne 1 1 7 0.9")
    assert len(net.links) == 2
    assert net.source == 0 and net.terminal == 7
    assert net.diameter == 6
    assert net.nodes == frozenset(range(8))


def test_parse_hub_arc_file():
    net = parse_network(hub_arc_text())
    assert len(net.links) == 9
    assert net == hub_arc()


def test_parse_reliability_out_of_range():
    with pytest.raises(ParseError, match="line 4.*out of range"):
        parse_network("d 1\ns 0\nt 1\ne 0 0 1 1.5")
    with pytest.raises(ParseError, match="out of range"):
        parse_network("d 1\ns 0\nt 1\ne 0 0 1 -0.1")


def test_parse_missing_terminals():
    with pytest.raises(ParseError, match="missing required 's'"):
        parse_network("d 1\nt 1\ne 0 0 1 0.5")
    with pytest.raises(ParseError, match="missing required 't'"):
        parse_network("d 1\ns 0\ne 0 0 1 0.5")


def test_parse_source_equals_terminal():
    with pytest.raises(ParseError, match="source equals terminal"):
        parse_network("d 1\ns 0\nt 0\ne 0 0 1 0.5")


def test_parse_duplicate_link_id():
    with pytest.raises(ParseError, match="duplicate link id 0"):
        parse_network("d 1\ns 0\nt 1\ne 0 0 1 0.5\ne 0 1 0 0.5")


def test_parse_unknown_node_with_declared_count():
    with pytest.raises(ParseError, match="unknown node 9"):
        parse_network("n 2\nd 1\ns 0\nt 1\ne 0 0 9 0.5")
    with pytest.raises(ParseError, match="unknown node 5"):
        parse_network("n 2\nd 1\ns 0\nt 5\ne 0 0 1 0.5")


def test_parse_malformed_lines():
    with pytest.raises(ParseError, match="unrecognized line tag"):
        parse_network("q 1\nd 1\ns 0\nt 1")
    with pytest.raises(ParseError, match="malformed 'e' line"):
        parse_network("d 1\ns 0\nt 1\ne 0 0 1")
    with pytest.raises(ParseError, match="malformed"):
        parse_network("d 1\ns 0\nt 1\ne 0 zero 1 0.5")


def test_parse_comments_and_blank_lines():
    net = parse_network("# header\n\nd 2   # budget\ns 0\nt 1\ne 0 0 1 0.5\n")
    assert net.diameter == 2
    assert len(net.links) == 1


def test_parse_diameter_override_and_absence():
    net = parse_network("d 3\ns 0\nt 1\ne 0 0 1 0.5", diameter=7)
    assert net.diameter == 7
    net = parse_network("s 0\nt 1\ne 0 0 1 0.5", diameter=2)
    assert net.diameter == 2
    with pytest.raises(ParseError, match="no diameter"):
        parse_network("s 0\nt 1\ne 0 0 1 0.5")


def test_parse_implied_nodes():
    net = parse_network("d 1\ns 0\nt 9\ne 0 0 4 0.5\ne 1 4 9 0.5")
    assert net.nodes == frozenset({0, 4, 9})


def test_roundtrip_preserves_ids_and_reliabilities():
    rng = random.Random(7)
    links = tuple(Link(i, u, v, rng.random()) for i, u, v in
                  ((0, 0, 1), (3, 1, 2), (9, 2, 3), (12, 0, 3)))
    net = Network(nodes=frozenset(range(4)), links=links, source=0, terminal=3, diameter=3)
    net = net.delete_link(3)
    again = parse_network(serialize_network(net))
    assert [(l.id, l.u, l.v) for l in again.links] == [(l.id, l.u, l.v) for l in net.links]
    assert [l.reliability for l in again.links] == [l.reliability for l in net.links]
    assert again.diameter == net.diameter


def test_serialize_uses_seventeen_digits():
    net = Network(nodes=frozenset({0, 1}), links=(Link(0, 0, 1, 1 / 3),),
                  source=0, terminal=1, diameter=1)
    assert "0.33333333333333331" in serialize_network(net)


# ----------------------------------------------------------------------
# network invariants

def test_network_validation():
    link = Link(0, 0, 1, 0.5)
    with pytest.raises(ValueError, match="distinct"):
        Network(frozenset({0, 1}), (link,), source=0, terminal=0, diameter=1)
    with pytest.raises(ValueError, match="terminal 5"):
        Network(frozenset({0, 1}), (link,), source=0, terminal=5, diameter=1)
    with pytest.raises(ValueError, match="duplicate link id"):
        Network(frozenset({0, 1}), (link, Link(0, 1, 0, 0.4)), source=0, terminal=1, diameter=1)
    with pytest.raises(ValueError, match="outside"):
        Network(frozenset({0, 1}), (Link(0, 0, 1, 1.2),), source=0, terminal=1, diameter=1)
    with pytest.raises(ValueError, match="perfect"):
        Network(frozenset({0, 1}), (Link(0, 0, 1, 0.5, perfect=True),),
                source=0, terminal=1, diameter=1)
    with pytest.raises(ValueError, match="diameter"):
        Network(frozenset({0, 1}), (link,), source=0, terminal=1, diameter=-1)


def test_link_helpers():
    link = Link(4, 2, 5, 0.5)
    assert link.endpoints == frozenset({2, 5})
    assert link.other(2) == 5 and link.other(5) == 2
    with pytest.raises(ValueError):
        link.other(3)
    assert Link(0, 1, 1, 0.5).is_self_loop


# ----------------------------------------------------------------------
# structure function

def _all_up(net):
    return SystemState({l.id: True for l in net.links})


def test_phi_all_up_small_budget():
    assert phi(hub_arc(2), _all_up(hub_arc(2))) is True  # 2-hop route via the hub


def test_phi_down_links_force_long_route():
    net = hub_arc(6)
    up = {l.id: True for l in net.links}
    up[8] = False  # direct hub-terminal link
    up[7] = False  # hub shortcut
    assert phi(net, SystemState(up)) is False  # remaining route needs 7 hops
    assert phi(net.with_diameter(7), SystemState(up)) is True


def test_phi_all_down():
    net = hub_arc(6)
    assert phi(net, SystemState({l.id: False for l in net.links})) is False


def test_phi_requires_exact_domain():
    net = hub_arc()
    with pytest.raises(ValueError):
        phi(net, SystemState({0: True}))
    extra = {l.id: True for l in net.links}
    extra[99] = True
    with pytest.raises(ValueError):
        phi(net, SystemState(extra))


def test_phi_ignores_self_loops():
    net = Network(
        nodes=frozenset({0, 1}),
        links=(Link(0, 0, 1, 0.5), Link(1, 0, 0, 0.5)),
        source=0, terminal=1, diameter=1,
    )
    assert phi(net, SystemState({0: False, 1: True})) is False
    assert phi(net, SystemState({0: True, 1: False})) is True


def test_phi_monotone_on_random_instances(suite_small):
    rng = random.Random(99)
    for net in suite_small[:30]:
        up = {l.id: rng.random() < 0.5 for l in net.links}
        before = phi(net, SystemState(up))
        down_ids = [lid for lid, bit in up.items() if not bit]
        if not down_ids:
            continue
        up[rng.choice(down_ids)] = True
        after = phi(net, SystemState(up))
        assert not (before and not after)


def test_phi_with_loose_budget_is_plain_connectivity(suite_small):
    rng = random.Random(5)
    for net in suite_small[:25]:
        loose = net.with_diameter(len(net.nodes) - 1)
        up = {l.id: rng.random() < 0.6 for l in net.links}
        kept = tuple(l for l in net.links if up[l.id])
        sub = Network(nodes=net.nodes, links=kept, source=net.source,
                      terminal=net.terminal, diameter=loose.diameter)
        assert phi(loose, SystemState(up)) == connected(sub, net.source, net.terminal)


# ----------------------------------------------------------------------
# edits

def test_make_perfect_keeps_topology():
    net = hub_arc(2)
    state = _all_up(net)
    assert phi(net.make_perfect(3), state) == phi(net, state)
    pinned = net.make_perfect(3).link(3)
    assert pinned.reliability == 1.0 and pinned.perfect


def test_delete_sole_link_disconnects():
    net = Network(nodes=frozenset({0, 1}), links=(Link(0, 0, 1, 0.5),),
                  source=0, terminal=1, diameter=1)
    assert net.delete_link(0).hop_distance(0, 1) == UNREACHABLE


def test_delete_reroutes_distances():
    # removing the short hub connection forces the long way around
    net = hub_arc().delete_link(1)
    assert net.hop_distance(0, 2) == 4


def test_edit_unknown_id():
    with pytest.raises(KeyError):
        hub_arc().delete_link(99)
    with pytest.raises(KeyError):
        hub_arc().make_perfect(99)


def test_edits_do_not_mutate():
    net = hub_arc()
    net.delete_link(0)
    net.make_perfect(1)
    assert len(net.links) == 9
    assert not net.link(1).perfect


# ----------------------------------------------------------------------
# hop distances

def test_hop_distance_anchor_values():
    net = hub_arc()
    assert net.hop_distance(0, 1) == 1
    assert net.hop_distance(2, 7) == 2
    assert net.hop_distance(0, 1, {2, 7}) == 1
    assert net.hop_distance(2, 7, {0, 1}) == 5
    assert net.hop_distance(2, 0, {1, 7}) == UNREACHABLE


def test_hop_distance_validation():
    net = hub_arc()
    with pytest.raises(ValueError):
        net.hop_distance(0, 42)
    with pytest.raises(ValueError):
        net.hop_distance(0, 1, {0})


def test_hop_distance_symmetric_and_monotone(suite_small):
    rng = random.Random(3)
    for net in suite_small[:25]:
        nodes = sorted(net.nodes)
        a, b = rng.sample(nodes, 2) if len(nodes) >= 2 else (nodes[0], nodes[0])
        assert net.hop_distance(a, b) == net.hop_distance(b, a)
        others = [n for n in nodes if n not in (a, b)]
        rng.shuffle(others)
        banned: set[int] = set()
        previous = net.hop_distance(a, b)
        for extra in others[:3]:
            banned.add(extra)
            now = net.hop_distance(a, b, banned)
            assert now >= previous
            previous = now


def test_hop_distance_agrees_with_path_search(suite_small):
    for net in suite_small[:15]:
        got = net.hop_distance(net.source, net.terminal)
        paths = all_simple_paths(net, net.source, net.terminal, len(net.nodes))
        want = min((len(links) for _nodes, links in paths), default=UNREACHABLE)
        assert got == want
