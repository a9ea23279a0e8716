"""Simple undirected graphs on vertices 1..n and their text format.

Text format::

    # optional comments
    n m
    u v        (m lines, 1 <= u < v <= n)
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphParseError(ValueError):
    pass


class DisconnectedGraphError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledGraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge {e} out of range 1..{self.n}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> LabeledGraph:
        edges = list(edges)
        seen = set()
        for u, v in edges:
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"multi-edge {key}")
            seen.add(key)
        return cls(n, frozenset(edges))

    # adjacency as python sets and as bitmasks (bit i-1 <-> vertex i)
    @cached_property
    def adj(self) -> dict[int, frozenset]:
        nbrs: dict[int, set] = {v: set() for v in range(1, self.n + 1)}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(s) for v, s in nbrs.items()}

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        """Index v holds the neighbour mask of vertex v (index 0 unused)."""
        masks = [0] * (self.n + 1)
        for u, v in self.edges:
            masks[u] |= 1 << (v - 1)
            masks[v] |= 1 << (u - 1)
        return tuple(masks)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def leaves(self) -> list[int]:
        return [v for v in self.vertices if len(self.adj[v]) == 1]

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def with_edges(self, remove=(), add=()) -> LabeledGraph:
        edges = set(self.edges)
        for u, v in remove:
            edges.discard((min(u, v), max(u, v)))
        for u, v in add:
            edges.add((min(u, v), max(u, v)))
        return LabeledGraph(self.n, frozenset(edges))

    def distances_from(self, s: int) -> dict[int, int]:
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.distances_from(1)) == self.n

    def is_tree(self) -> bool:
        return self.n >= 1 and len(self.edges) == self.n - 1 and self.is_connected()

    def components(self, within: Iterable[int] | None = None) -> list[frozenset]:
        """Connected components of the subgraph induced on ``within`` (default: all)."""
        pool = set(self.vertices if within is None else within)
        comps = []
        while pool:
            start = min(pool)
            comp = {start}
            stack = [start]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w in pool and w not in comp:
                        comp.add(w)
                        stack.append(w)
            pool -= comp
            comps.append(frozenset(comp))
        return comps

    def induced_edges(self, vs: Iterable[int]) -> set[tuple[int, int]]:
        vs = set(vs)
        return {(u, v) for u, v in self.edges if u in vs and v in vs}

    def relabel(self, perm: dict[int, int]) -> LabeledGraph:
        return LabeledGraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.edges))

    def to_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in sorted(self.edges)]}

    def __str__(self) -> str:
        body = " ".join(f"{u}-{v}" for u, v in sorted(self.edges))
        return f"G(n={self.n}: {body})"


def parse_graph(text: str) -> LabeledGraph:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line)
    if not rows:
        raise GraphParseError("empty graph file")
    try:
        header = [int(x) for x in rows[0].split()]
    except ValueError as exc:
        raise GraphParseError(f"bad header {rows[0]!r}") from exc
    if len(header) != 2:
        raise GraphParseError(f"header must be 'n m', got {rows[0]!r}")
    n, m = header
    if n < 1:
        raise GraphParseError("graph needs at least one vertex")
    if len(rows) - 1 != m:
        raise GraphParseError(f"header announces {m} edges, found {len(rows) - 1}")
    edges = set()
    for line in rows[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError(f"bad edge line {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphParseError(f"bad edge line {line!r}") from exc
        if u == v:
            raise GraphParseError(f"self-loop {line!r}")
        if not (1 <= u < v <= n):
            raise GraphParseError(f"edge {line!r} must satisfy 1 <= u < v <= {n}")
        if (u, v) in edges:
            raise GraphParseError(f"multi-edge {line!r}")
        edges.add((u, v))
    return LabeledGraph(n, frozenset(edges))


def read_graph(path) -> LabeledGraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def path_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, frozenset((i, i + 1) for i in range(1, n)))


def star_graph(n: int, center: int = 1) -> LabeledGraph:
    """K_{1,n-1} on n vertices."""
    return LabeledGraph(n, frozenset((center, v) for v in range(1, n + 1) if v != center))


def complete_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def cycle_graph(n: int) -> LabeledGraph:
    edges = {(i, i + 1) for i in range(1, n)}
    if n >= 3:
        edges.add((1, n))
    return LabeledGraph(n, frozenset(edges))


def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, frozenset())


def wiener_index(g: LabeledGraph) -> int:
    """Sum of shortest-path distances over unordered vertex pairs."""
    total = 0
    for v in g.vertices:
        dist = g.distances_from(v)
        if len(dist) != g.n:
            raise DisconnectedGraphError("Wiener index needs a connected graph")
        total += sum(dist.values())
    return total // 2
