"""Minimum length-sum pair of node-disjoint paths tying a link to the terminals.

For a link {x, y}, the relevant question is how cheaply x and y can be wired
to the source and terminal by two paths that share no node: the link lies on
a simple source-terminal path of ``sum + 1`` hops where ``sum`` is the
minimum combined hop count of such a pair, and on nothing shorter.

The pair is found on an extended graph: an artificial node attached to both
terminals and another attached to x and y, between which two node-disjoint
paths of minimum total length are computed. Both endpoint pairings
((x->s, y->t) and (x->t, y->s)) are covered automatically by the extension.
Node-disjointness reduces to arc-disjointness by splitting every node into an
in/out pair joined by a unit-capacity zero-cost arc; original links become
unit-cost unit-capacity arcs in both directions, artificial attachments cost
nothing, and a two-unit min-cost flow yields the pair.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .network import Network, UNREACHABLE


def _hops(path: tuple[int, ...]) -> int:
    return max(0, len(path) - 1)


@dataclass(frozen=True)
class DisjointPairResult:
    """Optimal pair for one link; ``length_sum`` is infinite when no two
    node-disjoint connecting paths exist (then both paths are empty).

    ``path1`` runs from one link endpoint to the source, ``path2`` from the
    other endpoint to the terminal, each as a node sequence. A path whose
    endpoint coincides with its terminal is a single-node sequence with zero
    hops.
    """

    path1: tuple[int, ...]
    path2: tuple[int, ...]
    length_sum: int | float

    @property
    def feasible(self) -> bool:
        return self.length_sum != UNREACHABLE


class _MinCostFlow:
    """Successive shortest paths with SPFA; residual costs may be negative."""

    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add_arc(self, u: int, v: int, cap: int, cost: int) -> int:
        """Returns the arc index; the paired reverse arc is index + 1."""
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)
        return idx

    def flow(self, src: int, dst: int, want: int) -> tuple[int, int]:
        sent = 0
        total_cost = 0
        while sent < want:
            dist = [None] * self.n
            in_queue = [False] * self.n
            pred_arc = [-1] * self.n
            dist[src] = 0
            queue = deque([src])
            while queue:
                u = queue.popleft()
                in_queue[u] = False
                du = dist[u]
                for idx in self.head[u]:
                    if self.cap[idx] <= 0:
                        continue
                    v = self.to[idx]
                    nd = du + self.cost[idx]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        pred_arc[v] = idx
                        if not in_queue[v]:
                            in_queue[v] = True
                            queue.append(v)
            if dist[dst] is None:
                break
            # unit capacities everywhere: each augmentation pushes one unit
            v = dst
            while v != src:
                idx = pred_arc[v]
                self.cap[idx] -= 1
                self.cap[idx ^ 1] += 1
                v = self.to[idx ^ 1]
            total_cost += dist[dst]
            sent += 1
        return sent, total_cost

    def arc_flow(self, idx: int) -> int:
        return self.cap[idx ^ 1]


def min_disjoint_pair(net: Network, link_id: int) -> DisjointPairResult:
    """Optimal node-disjoint pair for the link, or an infeasible result.

    A self-loop never admits a pair. The link under test itself can never be
    traversed by an optimal pair (both its endpoints are already path
    endpoints), which is asserted on the way out.
    """
    link = net.link(link_id)
    x, y = link.u, link.v
    if x == y:
        return DisjointPairResult((), (), UNREACHABLE)

    order = sorted(net.nodes)
    index = {node: i for i, node in enumerate(order)}
    n = len(order)

    def node_in(v: int) -> int:
        return 2 * index[v]

    def node_out(v: int) -> int:
        return 2 * index[v] + 1

    art_u = 2 * n
    art_z = 2 * n + 1
    mcf = _MinCostFlow(2 * n + 2)

    internal_arc: dict[int, int] = {}
    for v in order:
        internal_arc[v] = mcf.add_arc(node_in(v), node_out(v), 1, 0)

    link_arcs: list[tuple[int, int, int]] = []  # (arc idx, tail node, head node)
    for l in net.links:
        if l.is_self_loop:
            continue
        link_arcs.append((mcf.add_arc(node_out(l.u), node_in(l.v), 1, 1), l.u, l.v))
        link_arcs.append((mcf.add_arc(node_out(l.v), node_in(l.u), 1, 1), l.v, l.u))

    mcf.add_arc(art_u, node_in(net.source), 1, 0)
    mcf.add_arc(art_u, node_in(net.terminal), 1, 0)
    mcf.add_arc(node_out(x), art_z, 1, 0)
    mcf.add_arc(node_out(y), art_z, 1, 0)

    sent, cost = mcf.flow(art_u, art_z, 2)
    if sent < 2:
        return DisjointPairResult((), (), UNREACHABLE)

    # Walk the two unit flows from each terminal to x or y. Inside the split
    # graph every node carries at most one unit, so each walk is forced.
    succ: dict[int, int] = {}  # node_out -> next graph node via a flowing link arc
    for idx, tail, head in link_arcs:
        if mcf.arc_flow(idx) > 0:
            succ[node_out(tail)] = head

    def walk(start: int) -> tuple[int, ...]:
        if mcf.arc_flow(internal_arc[start]) == 0:
            raise AssertionError("flow walk started at a node without flow")
        nodes = [start]
        cur = start
        while node_out(cur) in succ:
            cur = succ[node_out(cur)]
            nodes.append(cur)
        return tuple(nodes)

    from_source = walk(net.source)
    from_terminal = walk(net.terminal)
    path1 = tuple(reversed(from_source))   # ends at the source
    path2 = tuple(reversed(from_terminal))  # ends at the terminal

    length_sum = _hops(path1) + _hops(path2)
    assert length_sum == cost, "flow cost must equal the combined hop count"
    assert not (set(path1) & set(path2)), "paths must be node-disjoint"
    assert {path1[0], path2[0]} == {x, y}, "paths must start at the link endpoints"
    for path in (path1, path2):
        assert not (x in path and y in path), "a path may not traverse the link under test"
    return DisjointPairResult(path1, path2, length_sum)
