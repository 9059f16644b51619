"""Reliability-preserving graph simplifications with an accumulated factor.

Every rule rewrites a network so that

    reliability(before, d) == factor * reliability(after, d - diameter_delta)

holds exactly. Hop counts are sacred: series chains are collapsed into a
probability product on one link instead of being contracted, because
contraction would shorten paths. Each public operation applies its rule
repeatedly until it no longer fires; :func:`apply_all` cycles through all
rules until a full round leaves the network unchanged. Every firing either
removes a link or node or moves a chain's reliabilities into their canonical
pinned form (which is idempotent), so both loops terminate.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .irrelevance import irrelevant_link_ids
from .network import Link, Network


@dataclass(frozen=True)
class ReductionStep:
    """One rule firing: which links/nodes it touched, how much hop budget it
    consumed and which scalar factor it contributed."""

    rule: str
    links: tuple[int, ...] = ()
    nodes: tuple[int, ...] = ()
    diameter_delta: int = 0
    factor: float = 1.0

    def format_line(self) -> str:
        links = ",".join(str(i) for i in self.links) or "-"
        nodes = ",".join(str(i) for i in self.nodes) or "-"
        return (f"{self.rule} links={links} nodes={nodes} "
                f"ddelta={self.diameter_delta} factor={self.factor:.17g}")


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...] = ()

    @property
    def total_factor(self) -> float:
        out = 1.0
        for step in self.steps:
            out *= step.factor
        return out

    @property
    def total_diameter_delta(self) -> int:
        return sum(step.diameter_delta for step in self.steps)

    def extend(self, other: "ReductionTrace") -> "ReductionTrace":
        return ReductionTrace(self.steps + other.steps)


def _without(net: Network, link_ids: set[int], node_ids: set[int],
             diameter: int | None = None) -> Network:
    links = tuple(l for l in net.links if l.id not in link_ids)
    return Network(
        nodes=frozenset(net.nodes - node_ids),
        links=links,
        source=net.source,
        terminal=net.terminal,
        diameter=net.diameter if diameter is None else diameter,
    )


# ----------------------------------------------------------------------
# irrelevant links

def prune_irrelevant(net: Network) -> tuple[Network, ReductionTrace]:
    """Delete every exactly-irrelevant link, re-sweeping until none remain.

    Factor 1, hop budget unchanged: an irrelevant link sits on no feasible
    path, so its state never matters. Nodes isolated by the deletions are
    removed (they can no longer carry any path)."""
    steps = []
    while True:
        doomed = set(irrelevant_link_ids(net))
        if not doomed:
            break
        survivors = tuple(l for l in net.links if l.id not in doomed)
        used = {net.source, net.terminal}
        for l in survivors:
            used.add(l.u)
            used.add(l.v)
        gone_nodes = net.nodes - used
        steps.append(ReductionStep(
            "prune-irrelevant",
            links=tuple(sorted(doomed)),
            nodes=tuple(sorted(gone_nodes)),
        ))
        net = _without(net, doomed, gone_nodes)
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# pending nodes

def _pending_step(net: Network) -> tuple[Network, ReductionStep] | None:
    """One firing of the pending-node rule, or None when it does not apply.

    Non-terminal nodes of degree <= 1 are deleted outright. A terminal
    hanging on a single link is contracted into its neighbor, spending one
    hop of budget and multiplying the factor by the link's reliability; when
    that neighbor is the other terminal no contraction is possible (the
    terminals would merge), but then the direct link is the only feasible
    path, so the whole network collapses to a single pinned link with the
    link's reliability as factor."""
    for v in sorted(net.nodes):
        if v in (net.source, net.terminal):
            continue
        incident = net.incident(v)
        if not incident:
            return _without(net, set(), {v}), ReductionStep("pending-node-prune", nodes=(v,))
        if len(incident) == 1 and not incident[0].is_self_loop:
            return (
                _without(net, {incident[0].id}, {v}),
                ReductionStep("pending-node-prune", links=(incident[0].id,), nodes=(v,)),
            )
    if net.diameter < 1:
        return None
    for term, other in ((net.source, net.terminal), (net.terminal, net.source)):
        incident = net.incident(term)
        if len(incident) != 1 or incident[0].is_self_loop:
            continue
        e = incident[0]
        neighbor = e.other(term)
        if neighbor == other:
            if len(net.links) == 1 and e.reliability == 1.0:
                continue  # already the trivial pinned form
            dropped_links = tuple(sorted(l.id for l in net.links if l.id != e.id))
            dropped_nodes = tuple(sorted(net.nodes - {net.source, net.terminal}))
            trivial = Network(
                nodes=frozenset({net.source, net.terminal}),
                links=(Link(e.id, e.u, e.v, 1.0, perfect=True),),
                source=net.source,
                terminal=net.terminal,
                diameter=net.diameter,
            )
            return trivial, ReductionStep(
                "pending-node-direct",
                links=(e.id,) + dropped_links,
                nodes=dropped_nodes,
                factor=e.reliability,
            )
        new_source = neighbor if term == net.source else net.source
        new_terminal = neighbor if term == net.terminal else net.terminal
        contracted = Network(
            nodes=frozenset(net.nodes - {term}),
            links=tuple(l for l in net.links if l.id != e.id),
            source=new_source,
            terminal=new_terminal,
            diameter=net.diameter - 1,
        )
        return contracted, ReductionStep(
            "pending-node-contract",
            links=(e.id,),
            nodes=(term, neighbor),
            diameter_delta=1,
            factor=e.reliability,
        )
    return None


def pending_node(net: Network) -> tuple[Network, ReductionTrace]:
    """Apply the pending-node rule until it no longer fires."""
    steps = []
    while (fired := _pending_step(net)) is not None:
        net, step = fired
        steps.append(step)
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# series chains

def _chain_from(net: Network, seed: int) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Maximal chain of degree-2 non-terminal nodes through ``seed``.

    Returns (node sequence, link id sequence) oriented from the smaller-id
    anchor, or None for a cycle made only of interior nodes (no anchor to
    carry the product; such a cycle is dead weight handled elsewhere)."""

    def interior(v: int) -> bool:
        if v in (net.source, net.terminal):
            return False
        inc = net.incident(v)
        return len(inc) == 2 and not any(l.is_self_loop for l in inc)

    def extend(start_link: Link, at: int) -> tuple[list[int], list[int]] | None:
        nodes: list[int] = []
        links: list[int] = []
        link, cur = start_link, at
        while True:
            nxt = link.other(cur)
            links.append(link.id)
            nodes.append(nxt)
            if nxt == seed:
                return None  # walked all the way around a cycle
            if not interior(nxt):
                return nodes, links
            a, b = net.incident(nxt)
            link = b if a.id == link.id else a
            cur = nxt

    first, second = net.incident(seed)
    left = extend(first, seed)
    if left is None:
        return None
    right = extend(second, seed)
    if right is None:
        return None
    left_nodes, left_links = left
    right_nodes, right_links = right
    nodes = tuple(reversed(left_nodes)) + (seed,) + tuple(right_nodes)
    links = tuple(reversed(left_links)) + tuple(right_links)
    if nodes[0] == nodes[-1]:
        return None  # degenerate: both walks anchored at the same node
    if nodes[0] > nodes[-1]:
        nodes = tuple(reversed(nodes))
        links = tuple(reversed(links))
    return nodes, links


def _perfect_path_step(net: Network) -> tuple[Network, ReductionStep] | None:
    seen: set[int] = set()
    for seed in sorted(net.nodes):
        if seed in seen or seed in (net.source, net.terminal):
            continue
        inc = net.incident(seed)
        if len(inc) != 2 or any(l.is_self_loop for l in inc):
            continue
        chain = _chain_from(net, seed)
        if chain is None:
            continue
        chain_nodes, chain_links = chain
        seen.update(chain_nodes[1:-1])
        by_id = {l.id: l for l in net.links}
        product = 1.0
        for lid in chain_links:
            product *= by_id[lid].reliability
        updated = dict(by_id)
        for lid in chain_links[:-1]:
            updated[lid] = replace(by_id[lid], reliability=1.0, perfect=True)
        last = chain_links[-1]
        updated[last] = replace(by_id[last], reliability=product, perfect=product == 1.0)
        new_links = tuple(updated[l.id] for l in net.links)
        if new_links == net.links:
            continue
        return (
            replace(net, links=new_links),
            ReductionStep("perfect-path", links=chain_links, nodes=chain_nodes),
        )
    return None


def perfect_path(net: Network) -> tuple[Network, ReductionTrace]:
    """Serialize chains whose interior nodes have degree 2 and are not
    terminals: every feasible path uses all of a chain's links or none, so
    their joint behavior is one Bernoulli draw with the product reliability.
    All chain links but the last are pinned perfect, the last carries the
    product; topology and hop budget stay untouched."""
    steps = []
    while (fired := _perfect_path_step(net)) is not None:
        net, step = fired
        steps.append(step)
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# perfect neighborhoods of a terminal

def _perfect_neighbors_step(net: Network) -> tuple[Network, ReductionStep] | None:
    if net.diameter < 1:
        return None
    for term, other in ((net.source, net.terminal), (net.terminal, net.source)):
        spokes = [l for l in net.incident(term) if not l.is_self_loop]
        if not spokes:
            continue
        neighbors = {l.other(term) for l in spokes}
        if other in neighbors:
            continue  # a perfect one-hop path would already terminate the computation
        if any(not l.perfect for l in spokes):
            continue
        merged = neighbors | {term}
        dropped: list[int] = []
        new_links: list[Link] = []
        for l in net.links:
            u_in, v_in = l.u in merged, l.v in merged
            if u_in and v_in:
                dropped.append(l.id)
                continue
            if u_in:
                l = replace(l, u=term)
            elif v_in:
                l = replace(l, v=term)
            new_links.append(l)
        shrunk = Network(
            nodes=frozenset(net.nodes - neighbors),
            links=tuple(new_links),
            source=net.source,
            terminal=net.terminal,
            diameter=net.diameter - 1,
        )
        return shrunk, ReductionStep(
            "perfect-neighbors",
            links=tuple(sorted(dropped)),
            nodes=(term,) + tuple(sorted(neighbors)),
            diameter_delta=1,
        )
    return None


def perfect_neighbors(net: Network) -> tuple[Network, ReductionTrace]:
    """When every link at a terminal is perfect (and the other terminal is
    not adjacent), the first hop is free and deterministic: the terminal and
    its whole neighborhood merge into one node and the hop budget drops by
    one. Links inside the merged set disappear; links leaving it are kept,
    as parallels if need be."""
    steps = []
    while (fired := _perfect_neighbors_step(net)) is not None:
        net, step = fired
        steps.append(step)
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# parallel links

def parallel_links(net: Network) -> tuple[Network, ReductionTrace]:
    """Merge links sharing both endpoints pairwise: the pair works when
    either link works, so the merged reliability is p1 + p2 - p1*p2. The
    smaller id survives."""
    steps = []
    while True:
        first_by_pair: dict[frozenset[int], Link] = {}
        pair: tuple[Link, Link] | None = None
        for l in sorted(net.links, key=lambda l: l.id):
            key = l.endpoints
            if key in first_by_pair:
                pair = (first_by_pair[key], l)
                break
            first_by_pair[key] = l
        if pair is None:
            break
        keep, drop = pair
        merged_rel = keep.reliability + drop.reliability - keep.reliability * drop.reliability
        merged = replace(keep, reliability=merged_rel, perfect=merged_rel == 1.0)
        net = replace(
            net,
            links=tuple(merged if l.id == keep.id else l
                        for l in net.links if l.id != drop.id),
        )
        steps.append(ReductionStep("parallel-links", links=(keep.id, drop.id)))
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# dangling components

def prune_dangling(net: Network) -> tuple[Network, ReductionTrace]:
    """Delete, for every node v, the components of the graph minus v that
    contain neither terminal: no simple source-terminal path can enter them
    (it would have to pass v twice). Factor 1, hop budget unchanged."""
    steps = []
    changed = True
    while changed:
        changed = False
        for v in sorted(net.nodes):
            doomed_nodes: set[int] = set()
            remaining = set(net.nodes) - {v}
            adj = net.adjacency()
            while remaining:
                start = min(remaining)
                component = {start}
                stack = [start]
                while stack:
                    cur = stack.pop()
                    for nb, _lid in adj[cur]:
                        if nb in remaining and nb not in component:
                            component.add(nb)
                            stack.append(nb)
                remaining -= component
                if net.source not in component and net.terminal not in component:
                    doomed_nodes |= component
            if doomed_nodes:
                doomed_links = {
                    l.id for l in net.links if l.u in doomed_nodes or l.v in doomed_nodes
                }
                steps.append(ReductionStep(
                    "prune-dangling",
                    links=tuple(sorted(doomed_links)),
                    nodes=tuple(sorted(doomed_nodes)),
                ))
                net = _without(net, doomed_links, doomed_nodes)
                changed = True
                break
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# fixpoint driver

DEFAULT_RULES = (
    prune_irrelevant,
    pending_node,
    perfect_path,
    perfect_neighbors,
    parallel_links,
    prune_dangling,
)


def apply_all(net: Network, *, rules=DEFAULT_RULES) -> tuple[Network, ReductionTrace]:
    """Round-robin over the rules until a full round changes nothing.

    The composite trace satisfies the same preservation identity as each
    step. Idempotent: a second call returns the input unchanged."""
    steps: list[ReductionStep] = []
    while True:
        before = net
        for rule in rules:
            net, trace = rule(net)
            steps.extend(trace.steps)
        if net == before:
            break
    return net, ReductionTrace(tuple(steps))


# ----------------------------------------------------------------------
# trace replay

def replay_trace(net: Network, trace: ReductionTrace) -> Network:
    """Re-apply a recorded trace to its original input network.

    Used to audit traces: replaying the steps must reproduce the reduced
    network exactly."""
    for step in trace.steps:
        net = _replay_step(net, step)
    return net


def _replay_step(net: Network, step: ReductionStep) -> Network:
    if step.rule in ("prune-irrelevant", "prune-dangling", "pending-node-prune"):
        return _without(net, set(step.links), set(step.nodes))
    if step.rule == "pending-node-contract":
        term, neighbor = step.nodes
        return Network(
            nodes=frozenset(net.nodes - {term}),
            links=tuple(l for l in net.links if l.id != step.links[0]),
            source=neighbor if term == net.source else net.source,
            terminal=neighbor if term == net.terminal else net.terminal,
            diameter=net.diameter - 1,
        )
    if step.rule == "pending-node-direct":
        kept = net.link(step.links[0])
        return Network(
            nodes=frozenset({net.source, net.terminal}),
            links=(Link(kept.id, kept.u, kept.v, 1.0, perfect=True),),
            source=net.source,
            terminal=net.terminal,
            diameter=net.diameter,
        )
    if step.rule == "perfect-path":
        by_id = {l.id: l for l in net.links}
        product = 1.0
        for lid in step.links:
            product *= by_id[lid].reliability
        updated = dict(by_id)
        for lid in step.links[:-1]:
            updated[lid] = replace(by_id[lid], reliability=1.0, perfect=True)
        last = step.links[-1]
        updated[last] = replace(by_id[last], reliability=product, perfect=product == 1.0)
        return replace(net, links=tuple(updated[l.id] for l in net.links))
    if step.rule == "perfect-neighbors":
        term = step.nodes[0]
        neighbors = set(step.nodes[1:])
        merged = neighbors | {term}
        new_links = []
        for l in net.links:
            if l.id in step.links:
                continue
            if l.u in merged:
                l = replace(l, u=term)
            elif l.v in merged:
                l = replace(l, v=term)
            new_links.append(l)
        return Network(
            nodes=frozenset(net.nodes - neighbors),
            links=tuple(new_links),
            source=net.source,
            terminal=net.terminal,
            diameter=net.diameter - 1,
        )
    if step.rule == "parallel-links":
        keep = net.link(step.links[0])
        drop = net.link(step.links[1])
        merged_rel = keep.reliability + drop.reliability - keep.reliability * drop.reliability
        merged = replace(keep, reliability=merged_rel, perfect=merged_rel == 1.0)
        return replace(
            net,
            links=tuple(merged if l.id == keep.id else l
                        for l in net.links if l.id != drop.id),
        )
    raise ValueError(f"unknown reduction rule {step.rule!r}")
