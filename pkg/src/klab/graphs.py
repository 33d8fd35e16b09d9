"""Simple undirected graphs and the S_n x K_2 family.

Vertices are the integers ``0 .. vertex_count - 1``.  For members of the
family, vertex ``i`` (0-based) carries the label ``str(i + 1)`` and its mirror
``i + n`` carries ``f"{i + 1}'"``, so the star center is ``0`` / ``n``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .errors import DisconnectedFamily, InvalidInput, InvalidParameter, NotConnected


@dataclass(frozen=True)
class Graph:
    vertex_count: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InvalidParameter("a graph needs at least one vertex")
        normalized = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidInput(f"edge {edge} has an endpoint outside 0..{self.vertex_count - 1}")
            normalized.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(normalized))
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.vertex_count:
                raise InvalidInput("labels must name every vertex exactly once")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]], labels=None) -> Graph:
        edges = list(edges)
        keyed = {(min(u, v), max(u, v)) for u, v in edges}
        if len(keyed) != len(edges):
            raise InvalidInput("duplicate edge")
        return cls(vertex_count, frozenset(keyed), labels)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        out = {"n_vertices": self.vertex_count, "edges": [list(e) for e in self.sorted_edges()]}
        out["labels"] = {str(v): lab for v, lab in enumerate(self.labels)} if self.labels else {}
        return out

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> Graph:
        try:
            n = int(data["n_vertices"])
            edges = [(int(u), int(v)) for u, v in data["edges"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed graph document: {exc}") from None
        labels = data.get("labels") or None
        if labels:
            labels = tuple(labels[str(v)] for v in range(n))
        return cls.from_edges(n, edges, labels)

    @classmethod
    def from_json(cls, text: str) -> Graph:
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class FamilySpec:
    """One member of S^2_{n,r}: ``deleted`` holds 1-based indices i whose edge ii' is removed."""

    n: int
    deleted: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.n < 2:
            raise InvalidParameter(f"n must be >= 2, got {self.n}")
        deleted = frozenset(int(i) for i in self.deleted)
        bad = [i for i in deleted if not 1 <= i <= self.n]
        if bad:
            raise InvalidParameter(f"deleted indices must lie in 1..{self.n}, got {sorted(bad)}")
        if len(deleted) == self.n:
            raise DisconnectedFamily(f"deleting all {self.n} vertical edges leaves a disconnected graph")
        object.__setattr__(self, "deleted", deleted)

    @property
    def r(self) -> int:
        return len(self.deleted)

    @property
    def center_deleted(self) -> bool:
        return 1 in self.deleted

    def describe(self) -> str:
        if not self.deleted:
            return f"S2_{self.n}"
        return f"S2_{self.n},{self.r}[{','.join(map(str, sorted(self.deleted)))}]"


def star(n: int) -> Graph:
    """Star of order n; vertex 0 is the center."""
    if n < 1:
        raise InvalidParameter(f"star order must be >= 1, got {n}")
    return Graph(n, frozenset((0, i) for i in range(1, n)), tuple(str(i + 1) for i in range(n)))


def complete(n: int) -> Graph:
    if n < 1:
        raise InvalidParameter(f"complete graph order must be >= 1, got {n}")
    return Graph(n, frozenset(combinations(range(n), 2)), tuple(str(i + 1) for i in range(n)))


def _product(g: Graph, h: Graph, strong: bool) -> Graph:
    # (u, v) -> v * |G| + u, so each copy of G occupies a contiguous block.
    ng, nh = g.vertex_count, h.vertex_count
    edges = set()
    for v in range(nh):
        for u1, u2 in g.edges:
            edges.add((v * ng + u1, v * ng + u2))
    for u in range(ng):
        for v1, v2 in h.edges:
            edges.add((v1 * ng + u, v2 * ng + u))
    if strong:
        for u1, u2 in g.edges:
            for v1, v2 in h.edges:
                edges.add((v1 * ng + u1, v2 * ng + u2))
                edges.add((v1 * ng + u2, v2 * ng + u1))
    labels = None
    if g.labels is not None and h.labels is not None:
        labels = tuple(f"({g.labels[u]},{h.labels[v]})" for v in range(nh) for u in range(ng))
    return Graph(ng * nh, frozenset((min(a, b), max(a, b)) for a, b in edges), labels)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    return _product(g, h, strong=False)


def strong_product(g: Graph, h: Graph) -> Graph:
    """Strong product: distinct (u1,v1), (u2,v2) adjacent iff each coordinate is equal or adjacent."""
    return _product(g, h, strong=True)


def make_snr2(spec: FamilySpec) -> Graph:
    n = spec.n
    base = cartesian_product(star(n), complete(2))
    removed = {(i - 1, i - 1 + n) for i in spec.deleted}
    labels = tuple(str(i + 1) for i in range(n)) + tuple(f"{i + 1}'" for i in range(n))
    return Graph(2 * n, base.edges - removed, labels)


def sn2(n: int) -> Graph:
    return make_snr2(FamilySpec(n))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Hop distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    nbrs = g.neighbors
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    return min(bfs_distances(g, 0)) >= 0


def distance_matrix(g: Graph) -> list[list[int]]:
    rows = [bfs_distances(g, s) for s in range(g.vertex_count)]
    if any(d < 0 for d in rows[0]):
        raise NotConnected("distance matrix requires a connected graph")
    return rows
