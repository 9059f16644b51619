"""Recursive exact computation of hop-constrained source-terminal reliability.

One non-perfect link per level is conditioned on: pinned perfect with weight
p, deleted with weight 1 - p. Between levels the network is simplified by the
reduction rules (folding their factor and hop-budget adjustment into the
result) and pruned of irrelevant links. The recursion bottoms out when the
perfect links alone connect the terminals within budget (value 1) or when the
terminals cannot be connected within budget at all (value 0). Contraction is
never used: it does not preserve hop counts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from random import Random
from typing import Callable

from .network import Network, UNREACHABLE
from .reductions import DEFAULT_RULES, apply_all, prune_irrelevant

#: Called at every interior recursion node with
#: (pivot link id, p, perfect-branch value, delete-branch value, combined value).
BranchHook = Callable[[int, float, float, float, float], None]


@dataclass(frozen=True)
class FactorOutcome:
    reliability: float
    recursion_nodes: int
    leaves_one: int
    leaves_zero: int
    reductions_applied: int


def has_perfect_path(net: Network) -> bool:
    """True when the perfect links alone contain a source-terminal path
    within the hop budget."""
    adj: dict[int, list[int]] = {n: [] for n in net.nodes}
    for l in net.links:
        if l.perfect and not l.is_self_loop:
            adj[l.u].append(l.v)
            adj[l.v].append(l.u)
    dist = {net.source: 0}
    queue = deque([net.source])
    while queue:
        cur = queue.popleft()
        step = dist[cur] + 1
        if step > net.diameter:
            continue
        for nb in adj[cur]:
            if nb in dist:
                continue
            if nb == net.terminal:
                return True
            dist[nb] = step
            queue.append(nb)
    return False


def pivot_select(net: Network, *, rng: Random | None = None) -> int:
    """Pick the non-perfect link to condition on: one whose nearer endpoint
    is closest to the terminal, so that repeated pinning quickly saturates
    the terminal's neighborhood. Ties break to the smallest link id, or
    uniformly at random when ``rng`` is supplied."""
    dist = {net.terminal: 0}
    queue = deque([net.terminal])
    adj = net.adjacency()
    while queue:
        cur = queue.popleft()
        for nb, _lid in adj[cur]:
            if nb not in dist:
                dist[nb] = dist[cur] + 1
                queue.append(nb)

    candidates = [l for l in net.links if not l.perfect]
    if not candidates:
        raise ValueError("pivot_select requires at least one non-perfect link")
    best_key = min(
        min(dist.get(l.u, UNREACHABLE), dist.get(l.v, UNREACHABLE)) for l in candidates
    )
    tied = sorted(
        l.id for l in candidates
        if min(dist.get(l.u, UNREACHABLE), dist.get(l.v, UNREACHABLE)) == best_key
    )
    if rng is not None:
        return rng.choice(tied)
    return tied[0]


class _Stats:
    __slots__ = ("nodes", "ones", "zeros", "reductions")

    def __init__(self):
        self.nodes = 0
        self.ones = 0
        self.zeros = 0
        self.reductions = 0


def factor(
    net: Network,
    *,
    irrelevance_pruning: bool = True,
    rng: Random | None = None,
    on_branch: BranchHook | None = None,
) -> FactorOutcome:
    """Exact reliability with recursion statistics.

    ``irrelevance_pruning=False`` drops the irrelevant-link deletion rule
    from the reduction round; the result must not change, only the recursion
    shape. ``on_branch`` is debug instrumentation receiving every interior
    node's branch values. The delete branch is always evaluated after the
    perfect branch and the combination order is fixed, so results are
    bit-identical run to run.
    """
    rules = DEFAULT_RULES if irrelevance_pruning else tuple(
        r for r in DEFAULT_RULES if r is not prune_irrelevant
    )
    stats = _Stats()

    def recurse(current: Network) -> float:
        stats.nodes += 1
        if has_perfect_path(current):
            stats.ones += 1
            return 1.0
        if current.hop_distance(current.source, current.terminal) > current.diameter:
            stats.zeros += 1
            return 0.0
        reduced, trace = apply_all(current, rules=rules)
        stats.reductions += len(trace.steps)
        scale = trace.total_factor
        if scale == 0.0:
            stats.zeros += 1
            return 0.0
        if has_perfect_path(reduced):
            stats.ones += 1
            return scale
        if reduced.hop_distance(reduced.source, reduced.terminal) > reduced.diameter:
            stats.zeros += 1
            return 0.0
        pivot = pivot_select(reduced, rng=rng)
        p = reduced.link(pivot).reliability
        up_value = recurse(reduced.make_perfect(pivot))
        down_value = recurse(reduced.delete_link(pivot))
        combined = p * up_value + (1.0 - p) * down_value
        if on_branch is not None:
            on_branch(pivot, p, up_value, down_value, combined)
        return scale * combined

    reliability = recurse(net)
    return FactorOutcome(
        reliability=reliability,
        recursion_nodes=stats.nodes,
        leaves_one=stats.ones,
        leaves_zero=stats.zeros,
        reductions_applied=stats.reductions,
    )
