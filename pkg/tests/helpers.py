"""Test-side reference implementations and fixtures.

Everything here is deliberately independent of the package internals: path
search is a recursive DFS (the package uses BFS), the reliability reference
multiplies out all link-state combinations with itertools, and the disjoint
pair reference enumerates every pair of simple paths. Slow but obviously
correct, which is the point.
"""

from __future__ import annotations

import itertools
import math
import random

from dcrel import Link, Network

# nodes 0..7 with source 0 and terminal 7; three simple source-terminal
# paths of 2, 5 and 7 hops
HUB_ARC_EDGES = (
    (0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 4), (4, 4, 5),
    (5, 5, 6), (6, 6, 7), (7, 1, 4), (8, 1, 7),
)


def hub_arc(d: int = 6, p: float = 0.5) -> Network:
    links = tuple(Link(i, u, v, p) for i, u, v in HUB_ARC_EDGES)
    return Network(nodes=frozenset(range(8)), links=links, source=0, terminal=7, diameter=d)


def hub_arc_text(d: int = 6, p: float = 0.5) -> str:
    lines = ["n 8", f"d {d}", "s 0", "t 7"]
    lines += [f"e {i} {u} {v} {p}" for i, u, v in HUB_ARC_EDGES]
    return "\n".join(lines) + "\n"


def _adjacency(net: Network, up: dict[int, bool] | None = None):
    adj: dict[int, list[tuple[int, int]]] = {n: [] for n in net.nodes}
    for l in net.links:
        if l.u == l.v:
            continue
        if up is not None and not up[l.id]:
            continue
        adj[l.u].append((l.v, l.id))
        adj[l.v].append((l.u, l.id))
    return adj


def all_simple_paths(net: Network, start: int, goal: int, max_hops: int,
                     up: dict[int, bool] | None = None):
    """Every simple path as (node tuple, link-id frozenset), found by DFS."""
    adj = _adjacency(net, up)
    out: list[tuple[tuple[int, ...], frozenset[int]]] = []

    def walk(cur: int, nodes: list[int], links: list[int]) -> None:
        if cur == goal:
            out.append((tuple(nodes), frozenset(links)))
            return
        if len(links) >= max_hops:
            return
        for nb, lid in adj[cur]:
            if nb in nodes:
                continue
            nodes.append(nb)
            links.append(lid)
            walk(nb, nodes, links)
            nodes.pop()
            links.pop()

    walk(start, [start], [])
    return out


def brute_phi(net: Network, up: dict[int, bool]) -> bool:
    return bool(all_simple_paths(net, net.source, net.terminal, net.diameter, up))


def brute_reliability(net: Network) -> float:
    """Reference reliability: plain sum over every link-state combination."""
    ids = [l.id for l in net.links]
    rels = [l.reliability for l in net.links]
    total = 0.0
    for bits in itertools.product((False, True), repeat=len(ids)):
        weight = 1.0
        for rel, bit in zip(rels, bits):
            weight *= rel if bit else 1.0 - rel
        if weight and brute_phi(net, dict(zip(ids, bits))):
            total += weight
    return total


def brute_min_disjoint_sum(net: Network, link_id: int) -> int | float:
    """Reference minimum combined length of two node-disjoint paths wiring
    the link's endpoints to the terminals, over both pairings."""
    link = net.link(link_id)
    if link.u == link.v:
        return math.inf
    limit = len(net.nodes)
    best: int | float = math.inf
    for a, b in ((link.u, link.v), (link.v, link.u)):
        to_source = all_simple_paths(net, a, net.source, limit)
        to_terminal = all_simple_paths(net, b, net.terminal, limit)
        for nodes1, links1 in to_source:
            for nodes2, links2 in to_terminal:
                if set(nodes1) & set(nodes2):
                    continue
                best = min(best, len(links1) + len(links2))
    return best


def connected(net: Network, a: int, b: int) -> bool:
    adj = _adjacency(net)
    seen = {a}
    stack = [a]
    while stack:
        for nb, _lid in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return b in seen


def make_suite(count: int, seed: int, max_nodes: int = 8, max_links: int = 12):
    """Pseudo-random connected multigraphs: a random spanning tree plus extra
    links (parallels allowed, rare self-loops), reliabilities uniform in
    [0.05, 0.95], hop budget uniform in [1, node count]."""
    rng = random.Random(seed)
    suite: list[Network] = []
    for _ in range(count):
        n = rng.randint(2, max_nodes)
        order = list(range(1, n))
        rng.shuffle(order)
        ends: list[tuple[int, int]] = []
        reached = [0]
        for v in order:
            ends.append((rng.choice(reached), v))
            reached.append(v)
        m = rng.randint(n - 1, max_links)
        while len(ends) < m:
            if rng.random() < 0.04:
                u = rng.randrange(n)
                ends.append((u, u))
            else:
                u, v = rng.randrange(n), rng.randrange(n)
                if u != v:
                    ends.append((u, v))
        links = tuple(
            Link(i, u, v, rng.uniform(0.05, 0.95)) for i, (u, v) in enumerate(ends)
        )
        suite.append(Network(
            nodes=frozenset(range(n)),
            links=links,
            source=0,
            terminal=rng.randint(1, n - 1),
            diameter=rng.randint(1, n),
        ))
    return suite
