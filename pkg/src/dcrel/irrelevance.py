"""Detectors for links that can never influence source-terminal connectivity.

A link is irrelevant when no simple source-terminal path of at most
``diameter`` hops contains it; flipping such a link's state never changes the
structure function, so it can be deleted without changing the reliability.

Three distance-based sufficient tests of increasing strength are provided for
comparison, plus the exact verdict: the link is irrelevant exactly when the
minimum length-sum of two node-disjoint paths wiring its endpoints to the
terminals exceeds ``diameter - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .disjoint import min_disjoint_pair
from .network import Network, UNREACHABLE


@dataclass(frozen=True)
class IrrelevanceReport:
    """Per-link verdicts. ``relevance_threshold`` is the smallest hop budget
    at which the link becomes relevant (infinite when it never does)."""

    link_id: int
    cond1: bool
    cond2: bool
    cond3: bool
    exact_irrelevant: bool
    relevance_threshold: int | float


def _vertex_deleted_distance(net: Network, a: int, b: int, forbidden: Iterable[int]) -> int | float:
    """Distance with the forbidden nodes deleted; infinite when a query
    endpoint is itself deleted (its distances are undefined in that graph)."""
    banned = frozenset(forbidden)
    if a in banned or b in banned:
        return UNREACHABLE
    return net.hop_distance(a, b, banned)


def sufficient_condition(net: Network, link_id: int, level: int) -> bool:
    """Historical sufficient tests; True means "detected irrelevant".

    Level 1 compares terminal distances in the graph itself, level 2 in the
    graph without the link, level 3 uses vertex-deleted distances. Each level
    requires both endpoint pairings to reach the hop budget; an unreachable
    distance counts as infinite and satisfies the comparison.
    """
    link = net.link(link_id)
    x, y = link.u, link.v
    s, t, d = net.source, net.terminal, net.diameter
    if level == 1:
        g = net
        return (g.hop_distance(s, x) + g.hop_distance(y, t) >= d
                and g.hop_distance(s, y) + g.hop_distance(x, t) >= d)
    if level == 2:
        g = net.delete_link(link_id)
        return (g.hop_distance(s, x) + g.hop_distance(y, t) >= d
                and g.hop_distance(s, y) + g.hop_distance(x, t) >= d)
    if level == 3:
        return (_vertex_deleted_distance(net, s, x, {y, t})
                + _vertex_deleted_distance(net, y, t, {s, x}) >= d
                and _vertex_deleted_distance(net, s, y, {x, t})
                + _vertex_deleted_distance(net, x, t, {s, y}) >= d)
    raise ValueError(f"level must be 1, 2 or 3, got {level!r}")


def relevance_threshold(net: Network, link_id: int) -> int | float:
    """Smallest hop budget at which the link lies on some feasible path."""
    length_sum = min_disjoint_pair(net, link_id).length_sum
    if length_sum == UNREACHABLE:
        return UNREACHABLE
    return length_sum + 1


def exact_irrelevant(net: Network, link_id: int) -> bool:
    """Exact verdict: every simple source-terminal path through the link
    needs more than ``diameter`` hops."""
    return min_disjoint_pair(net, link_id).length_sum > net.diameter - 1


def irrelevant_link_ids(net: Network) -> tuple[int, ...]:
    """Ids of all exactly-irrelevant links, ascending. Cheaper than
    :func:`sweep` because the sufficient conditions are skipped."""
    return tuple(
        link.id for link in sorted(net.links, key=lambda l: l.id)
        if exact_irrelevant(net, link.id)
    )


def sweep(net: Network) -> tuple[IrrelevanceReport, ...]:
    """One report per link in link-id order, all judged against this network
    snapshot. Deleting an irrelevant link never makes another link relevant,
    but can make more links irrelevant, so iterated pruning re-sweeps."""
    reports = []
    for link in sorted(net.links, key=lambda l: l.id):
        threshold = relevance_threshold(net, link.id)
        reports.append(IrrelevanceReport(
            link_id=link.id,
            cond1=sufficient_condition(net, link.id, 1),
            cond2=sufficient_condition(net, link.id, 2),
            cond3=sufficient_condition(net, link.id, 3),
            exact_irrelevant=threshold > net.diameter,
            relevance_threshold=threshold,
        ))
    return tuple(reports)
