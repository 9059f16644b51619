"""Independent ground-truth computations for cross-checking the engine.

Three routes to the same number: exhaustive state enumeration (the defining
sum over all link-state combinations), inclusion-exclusion over the minimal
feasible paths, and a seeded Monte Carlo estimator. The enumerators are kept
deliberately naive so they stay trustworthy.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .network import Network

#: Exhaustive enumeration refuses beyond this many links (2^m states).
ENUM_MAX_LINKS = 25
#: Inclusion-exclusion refuses beyond this many minimal paths (2^l terms).
IE_MAX_MINPATHS = 30

_MC_BLOCK = 1 << 16


class GuardError(Exception):
    """A method's input-size guard was violated."""


@dataclass(frozen=True)
class MinpathSet:
    """Link-id sets of all minimal feasible source-terminal paths. No member
    is a subset of another."""

    paths: tuple[frozenset[int], ...]

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    standard_error: float
    samples: int
    seed: int


def _reaches_within(adjacency, source: int, terminal: int, budget: int) -> bool:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        cur = queue.popleft()
        step = dist[cur] + 1
        if step > budget:
            continue
        for nb in adjacency[cur]:
            if nb in dist:
                continue
            if nb == terminal:
                return True
            dist[nb] = step
            queue.append(nb)
    return False


def enum_exact(net: Network) -> float:
    """Defining sum: over all 2^m link states, the state's probability times
    the structure function. States are visited in Gray-code order (one link
    flips between consecutive states); the structure function is re-evaluated
    naively each time, which is the correctness baseline."""
    m = len(net.links)
    if m > ENUM_MAX_LINKS:
        raise GuardError(
            f"{m} links means 2^{m} states; exhaustive enumeration is capped at "
            f"{ENUM_MAX_LINKS} links, use the Monte Carlo estimator instead"
        )
    ends = [(l.u, l.v) for l in net.links]
    rels = [l.reliability for l in net.links]
    nodes = net.nodes
    s, t, d = net.source, net.terminal, net.diameter

    total = 0.0
    for i in range(1 << m):
        code = i ^ (i >> 1)
        weight = 1.0
        adjacency: dict[int, list[int]] = {n: [] for n in nodes}
        for k in range(m):
            if code >> k & 1:
                weight *= rels[k]
                u, v = ends[k]
                if u != v:
                    adjacency[u].append(v)
                    adjacency[v].append(u)
            else:
                weight *= 1.0 - rels[k]
        if weight != 0.0 and _reaches_within(adjacency, s, t, d):
            total += weight
    return total


def enumerate_minpaths(net: Network) -> MinpathSet:
    """All simple source-terminal paths within the hop budget, as link-id
    sets, found by depth-first search; sets dominated by a subset are
    removed. Exponential in the worst case; callers bound usage."""
    adj: dict[int, list[tuple[int, int]]] = {n: [] for n in net.nodes}
    for l in net.links:
        if not l.is_self_loop:
            adj[l.u].append((l.v, l.id))
            adj[l.v].append((l.u, l.id))

    found: set[frozenset[int]] = set()
    path_links: list[int] = []
    visited = {net.source}

    def dfs(cur: int, budget: int) -> None:
        if budget == 0:
            return
        for nb, lid in adj[cur]:
            if nb == net.terminal:
                found.add(frozenset(path_links + [lid]))
                continue
            if nb in visited:
                continue
            visited.add(nb)
            path_links.append(lid)
            dfs(nb, budget - 1)
            path_links.pop()
            visited.remove(nb)

    dfs(net.source, net.diameter)

    by_size = sorted(found, key=len)
    kept: list[frozenset[int]] = []
    for candidate in by_size:
        if not any(previous <= candidate for previous in kept):
            kept.append(candidate)
    kept.sort(key=lambda ps: (len(ps), sorted(ps)))
    return MinpathSet(tuple(kept))


def inclusion_exclusion(net: Network) -> float:
    """Probability of the union of the minimal feasible paths: the
    alternating sum over nonempty subsets of minpaths, where each subset
    contributes the product of reliabilities over the union of its link
    sets. Evaluated recursively so that subsets whose union already covers a
    remaining minpath cancel in pairs instead of being enumerated."""
    minpaths = enumerate_minpaths(net).paths
    count = len(minpaths)
    if count == 0:
        return 0.0
    if count > IE_MAX_MINPATHS:
        raise GuardError(
            f"{count} minpaths means 2^{count} inclusion-exclusion terms; capped at "
            f"{IE_MAX_MINPATHS}, use the Monte Carlo estimator instead"
        )
    position = {l.id: k for k, l in enumerate(net.links)}
    rels = [l.reliability for l in net.links]
    masks = sorted(
        (sum(1 << position[lid] for lid in ps) for ps in minpaths),
        key=lambda mask: bin(mask).count("1"),
    )

    def prob(mask: int) -> float:
        out = 1.0
        k = 0
        while mask:
            if mask & 1:
                out *= rels[k]
            mask >>= 1
            k += 1
        return out

    memo: dict[tuple[int, int], float] = {}

    def signed_sum(union: int, i: int) -> float:
        # sum over subsets T of masks[i:] of (-1)^|T| * prob(union of T | union)
        if i == count:
            return prob(union)
        key = (union, i)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if masks[i] & ~union == 0:
            # masks[i] already covered: including and excluding it cancel
            value = 0.0
        else:
            value = signed_sum(union, i + 1) - signed_sum(union | masks[i], i + 1)
        memo[key] = value
        return value

    return 1.0 - signed_sum(0, 0)


def monte_carlo(net: Network, samples: int, seed: int) -> McEstimate:
    """Average of the structure function over independent sampled states.

    The generator is Philox keyed with ``seed``; sample block ``b`` uses the
    stream jumped ``b`` times, so blocks could be evaluated in parallel and
    the success count (an integer) is reproducible bit-exactly for a given
    (seed, samples)."""
    if samples < 1:
        raise ValueError("samples must be at least 1")
    order = sorted(net.nodes)
    index = {n: k for k, n in enumerate(order)}
    rels = np.array([l.reliability for l in net.links], dtype=np.float64)
    arcs = []
    for col, l in enumerate(net.links):
        if not l.is_self_loop:
            arcs.append((index[l.u], index[l.v], col))
            arcs.append((index[l.v], index[l.u], col))
    s_idx, t_idx = index[net.source], index[net.terminal]

    base = np.random.Philox(key=seed & (2**64 - 1))
    successes = 0
    drawn = 0
    block = 0
    while drawn < samples:
        size = min(_MC_BLOCK, samples - drawn)
        gen = np.random.Generator(base.jumped(block))
        up = gen.random((size, len(net.links))) < rels
        reach = np.zeros((size, len(order)), dtype=bool)
        reach[:, s_idx] = True
        for _ in range(net.diameter):
            prev = reach
            reach = reach.copy()
            for a, b, col in arcs:
                np.logical_or(reach[:, b], prev[:, a] & up[:, col], out=reach[:, b])
            if np.array_equal(reach, prev):
                break
        successes += int(np.count_nonzero(reach[:, t_idx]))
        drawn += size
        block += 1

    estimate = successes / samples
    stderr = math.sqrt(estimate * (1.0 - estimate) / samples)
    return McEstimate(estimate=estimate, standard_error=stderr, samples=samples, seed=seed)
