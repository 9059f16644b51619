"""Undirected multigraph with failable links, two terminals and a hop budget.

A :class:`Network` is immutable: every edit (deleting a link, pinning a link
to perfect operation, moving a terminal) returns a new value, so networks can
be shared freely between recursive computations and concurrent readers.

The text format accepted by :func:`parse_network` is line oriented, UTF-8,
``#`` starts a comment::

    n <node-count>          optional; nodes are otherwise implied by edges
    d <diameter>            optional; callers may override
    s <node>                required
    t <node>                required
    e <id> <u> <v> <p>      one per link, p is a decimal in [0, 1]
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

#: Distance value returned when no connecting path exists.
UNREACHABLE = math.inf


class ParseError(ValueError):
    """Malformed network text. ``line`` is 1-based; 0 means the whole file."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class Link:
    """One failable connection; parallel links may share both endpoints.

    ``perfect`` is True only when the reliability has been pinned to 1 by the
    recursion or by a reduction; a link parsed with reliability 1.0 is not
    automatically perfect.
    """

    id: int
    u: int
    v: int
    reliability: float
    perfect: bool = False

    @property
    def endpoints(self) -> frozenset[int]:
        return frozenset((self.u, self.v))

    @property
    def is_self_loop(self) -> bool:
        return self.u == self.v

    def other(self, node: int) -> int:
        """The endpoint opposite ``node`` (itself for a self-loop)."""
        if node == self.u:
            return self.v
        if node == self.v:
            return self.u
        raise ValueError(f"node {node} is not an endpoint of link {self.id}")


@dataclass(frozen=True)
class SystemState:
    """Up/down assignment for every link of one network, keyed by link id."""

    up: Mapping[int, bool]


@dataclass(frozen=True)
class Network:
    nodes: frozenset[int]
    links: tuple[Link, ...]
    source: int
    terminal: int
    diameter: int

    def __post_init__(self):
        if not isinstance(self.diameter, int) or self.diameter < 0:
            raise ValueError(f"diameter must be a non-negative integer, got {self.diameter!r}")
        if self.source == self.terminal:
            raise ValueError("source and terminal must be distinct nodes")
        for name, node in (("source", self.source), ("terminal", self.terminal)):
            if node not in self.nodes:
                raise ValueError(f"{name} {node} is not a node of the network")
        if any(n < 0 for n in self.nodes):
            raise ValueError("node identifiers must be non-negative")
        seen: set[int] = set()
        for link in self.links:
            if link.id in seen:
                raise ValueError(f"duplicate link id {link.id}")
            seen.add(link.id)
            if link.u not in self.nodes or link.v not in self.nodes:
                raise ValueError(f"link {link.id} references a node outside the network")
            if not (0.0 <= link.reliability <= 1.0):
                raise ValueError(f"link {link.id} reliability {link.reliability} outside [0, 1]")
            if link.perfect and link.reliability != 1.0:
                raise ValueError(f"link {link.id} flagged perfect but reliability != 1")

    # ------------------------------------------------------------------
    # queries

    def link(self, link_id: int) -> Link:
        for link in self.links:
            if link.id == link_id:
                return link
        raise KeyError(link_id)

    def has_link(self, link_id: int) -> bool:
        return any(link.id == link_id for link in self.links)

    def incident(self, node: int) -> tuple[Link, ...]:
        """Links touching ``node``; a self-loop appears once."""
        return tuple(l for l in self.links if node in (l.u, l.v))

    def degree(self, node: int) -> int:
        """Link-end count at ``node``; a self-loop contributes 2."""
        total = 0
        for l in self.links:
            total += (l.u == node) + (l.v == node)
        return total

    def adjacency(self) -> Mapping[int, tuple[tuple[int, int], ...]]:
        """node -> ((neighbor, link id), ...). Self-loops are omitted: they can
        never advance a path. Cached; safe because the value is immutable."""
        cached = self.__dict__.get("_adjacency")
        if cached is None:
            adj: dict[int, list[tuple[int, int]]] = {n: [] for n in self.nodes}
            for l in self.links:
                if l.u != l.v:
                    adj[l.u].append((l.v, l.id))
                    adj[l.v].append((l.u, l.id))
            cached = {n: tuple(v) for n, v in adj.items()}
            object.__setattr__(self, "_adjacency", cached)
        return cached

    def hop_distance(self, a: int, b: int, forbidden: Iterable[int] = ()) -> int | float:
        """Minimum hop count from ``a`` to ``b`` avoiding ``forbidden`` nodes.

        Returns :data:`UNREACHABLE` when no such path exists. ``forbidden``
        must not contain the query endpoints.
        """
        if a not in self.nodes or b not in self.nodes:
            raise ValueError(f"hop_distance endpoints must be nodes, got {a}, {b}")
        banned = frozenset(forbidden)
        if a in banned or b in banned:
            raise ValueError("forbidden set may not contain the query endpoints")
        if a == b:
            return 0
        adj = self.adjacency()
        dist = {a: 0}
        queue = deque([a])
        while queue:
            cur = queue.popleft()
            step = dist[cur] + 1
            for nb, _lid in adj[cur]:
                if nb in banned or nb in dist:
                    continue
                if nb == b:
                    return step
                dist[nb] = step
                queue.append(nb)
        return UNREACHABLE

    # ------------------------------------------------------------------
    # edits (each returns a new Network)

    def delete_link(self, link_id: int) -> "Network":
        """Remove one link. Nodes are kept; isolated non-terminal nodes are
        pruned lazily by the reduction rules, never here."""
        if not self.has_link(link_id):
            raise KeyError(link_id)
        return replace(self, links=tuple(l for l in self.links if l.id != link_id))

    def make_perfect(self, link_id: int) -> "Network":
        """Pin one link's reliability to 1. Topology is untouched."""
        if not self.has_link(link_id):
            raise KeyError(link_id)
        new_links = tuple(
            replace(l, reliability=1.0, perfect=True) if l.id == link_id else l
            for l in self.links
        )
        return replace(self, links=new_links)

    def with_diameter(self, diameter: int) -> "Network":
        return replace(self, diameter=diameter)


def phi(net: Network, state: SystemState) -> bool:
    """Structure function: is there a source-terminal path of at most
    ``net.diameter`` hops using only links that are up in ``state``?"""
    ids = {l.id for l in net.links}
    if set(state.up.keys()) != ids:
        raise ValueError("state must cover exactly the network's links")
    adj: dict[int, list[int]] = {n: [] for n in net.nodes}
    for l in net.links:
        if state.up[l.id] and l.u != l.v:
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


def parse_network(text: str, *, diameter: int | None = None) -> Network:
    """Parse the line-oriented network format.

    ``diameter`` overrides the file's ``d`` line; if neither is present the
    text is rejected, since every computation needs a hop budget.
    """
    declared_n: tuple[int, int] | None = None  # (value, line)
    file_d: tuple[int, int] | None = None
    src: tuple[int, int] | None = None
    term: tuple[int, int] | None = None
    links: list[tuple[Link, int]] = []
    seen_ids: set[int] = set()

    def _int(token: str, line: int, what: str) -> int:
        try:
            value = int(token)
        except ValueError:
            raise ParseError(line, f"malformed {what}: {token!r}") from None
        if value < 0:
            raise ParseError(line, f"{what} must be non-negative, got {value}")
        return value

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        fields = stripped.split()
        tag = fields[0]
        if tag == "n":
            if len(fields) != 2:
                raise ParseError(line_no, "malformed 'n' line")
            if declared_n is not None:
                raise ParseError(line_no, "duplicate 'n' line")
            count = _int(fields[1], line_no, "node count")
            if count < 1:
                raise ParseError(line_no, "node count must be at least 1")
            declared_n = (count, line_no)
        elif tag == "d":
            if len(fields) != 2:
                raise ParseError(line_no, "malformed 'd' line")
            if file_d is not None:
                raise ParseError(line_no, "duplicate 'd' line")
            file_d = (_int(fields[1], line_no, "diameter"), line_no)
        elif tag == "s":
            if len(fields) != 2:
                raise ParseError(line_no, "malformed 's' line")
            if src is not None:
                raise ParseError(line_no, "duplicate 's' line")
            src = (_int(fields[1], line_no, "source node"), line_no)
        elif tag == "t":
            if len(fields) != 2:
                raise ParseError(line_no, "malformed 't' line")
            if term is not None:
                raise ParseError(line_no, "duplicate 't' line")
            term = (_int(fields[1], line_no, "terminal node"), line_no)
        elif tag == "e":
            if len(fields) != 5:
                raise ParseError(line_no, "malformed 'e' line, expected: e <id> <u> <v> <p>")
            link_id = _int(fields[1], line_no, "link id")
            if link_id in seen_ids:
                raise ParseError(line_no, f"duplicate link id {link_id}")
            seen_ids.add(link_id)
            u = _int(fields[2], line_no, "link endpoint")
            v = _int(fields[3], line_no, "link endpoint")
            try:
                p = float(fields[4])
            except ValueError:
                raise ParseError(line_no, f"malformed reliability: {fields[4]!r}") from None
            if not (math.isfinite(p) and 0.0 <= p <= 1.0):
                raise ParseError(line_no, f"reliability out of range: {fields[4]}")
            links.append((Link(link_id, u, v, p), line_no))
        else:
            raise ParseError(line_no, f"unrecognized line tag {tag!r}")

    if src is None:
        raise ParseError(0, "missing required 's' line")
    if term is None:
        raise ParseError(0, "missing required 't' line")
    if src[0] == term[0]:
        raise ParseError(term[1], "source equals terminal")

    if declared_n is not None:
        count = declared_n[0]
        nodes = frozenset(range(count))
        for node, line_no in (src, term):
            if node >= count:
                raise ParseError(line_no, f"unknown node {node} (only {count} nodes declared)")
        for link, line_no in links:
            for node in (link.u, link.v):
                if node >= count:
                    raise ParseError(line_no, f"unknown node {node} (only {count} nodes declared)")
    else:
        nodes = frozenset({src[0], term[0]})
        for link, _ in links:
            nodes |= {link.u, link.v}

    if diameter is None:
        if file_d is None:
            raise ParseError(0, "no diameter: the file has no 'd' line and none was supplied")
        diameter = file_d[0]

    return Network(
        nodes=nodes,
        links=tuple(l for l, _ in links),
        source=src[0],
        terminal=term[0],
        diameter=diameter,
    )


def serialize_network(net: Network) -> str:
    """Emit the text format. Reliabilities use 17 significant digits so a
    round trip is bit-exact. Perfect flags and isolated non-terminal nodes
    have no representation in the format and are dropped."""
    lines = [f"d {net.diameter}", f"s {net.source}", f"t {net.terminal}"]
    for l in net.links:
        lines.append(f"e {l.id} {l.u} {l.v} {l.reliability:.17g}")
    return "\n".join(lines) + "\n"
