"""Tree shifts, reverse shifts and flossing moves on labelled graphs."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graph import DisconnectedGraphError, LabeledGraph, wiener_index

__all__ = [
    "InvalidMove",
    "TreeShiftMove",
    "FlossingMove",
    "enumerate_tree_shifts",
    "apply_tree_shift",
    "reverse_shift",
    "enumerate_flossing",
    "apply_flossing",
    "wiener_index",
]


class InvalidMove(ValueError):
    pass


@dataclass(frozen=True)
class TreeShiftMove:
    leaf: int
    branch: int
    path: tuple[int, ...]  # c_1..c_k, starting next to the branch vertex
    moved: frozenset  # F

    def rest(self, g: LabeledGraph) -> frozenset:
        """The vertex set E left behind at the branch vertex."""
        used = set(self.moved) | set(self.path) | {self.branch, self.leaf}
        return frozenset(v for v in g.vertices if v not in used)


@dataclass(frozen=True)
class FlossingMove:
    leaf: int  # l
    far_leaf: int  # l-hat
    flossed: int  # v
    anchor: int  # w, the neighbour of l
    r: int
    r_hat: int


def _walk_to_branch(g: LabeledGraph, leaf: int):
    """Follow degree-2 vertices inward from ``leaf``; (branch, path) or None."""
    prev, cur = leaf, next(iter(g.adj[leaf]))
    inner = []
    while g.degree(cur) == 2:
        inner.append(cur)
        prev, cur = cur, next(w for w in g.adj[cur] if w != prev)
    if g.degree(cur) < 3:
        return None
    return cur, tuple(reversed(inner))


def _hangs_as_tree(g: LabeledGraph, comp: frozenset, c: int) -> bool:
    # comp together with c induces a tree: connected already, so count edges
    edges = len(g.induced_edges(comp | {c}))
    return edges == len(comp)


def enumerate_tree_shifts(g: LabeledGraph) -> list[TreeShiftMove]:
    if not g.is_connected():
        raise DisconnectedGraphError("tree shifts are defined on connected graphs")
    moves = []
    for l in g.leaves():
        found = _walk_to_branch(g, l)
        if found is None:
            continue
        c, path = found
        blocked = set(path) | {l}
        comps = [q for q in g.components(v for v in g.vertices if v != c) if not q & blocked]
        ok = [q for q in comps if _hangs_as_tree(g, q, c)]
        for size in range(1, len(ok) + 1):
            for pick in combinations(ok, size):
                moved = frozenset().union(*pick)
                if len(moved) + len(path) + 2 == g.n:
                    continue  # E would be empty
                moves.append(TreeShiftMove(l, c, path, moved))
    return moves


def _check_shift(g: LabeledGraph, m: TreeShiftMove) -> None:
    if not g.is_connected():
        raise InvalidMove("graph is not connected")
    if m.leaf not in g.adj or g.degree(m.leaf) != 1:
        raise InvalidMove(f"{m.leaf} is not a leaf")
    found = _walk_to_branch(g, m.leaf)
    if found != (m.branch, m.path):
        raise InvalidMove(f"branch vertex/path do not match leaf {m.leaf}")
    if not m.moved or m.moved & (set(m.path) | {m.branch, m.leaf}):
        raise InvalidMove("moved set must be nonempty and avoid the branch path")
    closed = set(m.moved) | {m.branch}
    for v in m.moved:
        if g.adj[v] - closed:
            raise InvalidMove(f"{v} in the moved set has a neighbour outside it")
    if len(g.components(closed)) != 1 or len(g.induced_edges(closed)) != len(m.moved):
        raise InvalidMove("moved set plus branch vertex is not a tree")
    if not m.rest(g):
        raise InvalidMove("nothing would remain attached to the branch vertex")


def apply_tree_shift(g: LabeledGraph, m: TreeShiftMove) -> LabeledGraph:
    """Move every edge (v, c), v in F, to (v, l)."""
    _check_shift(g, m)
    cut = [(v, m.branch) for v in m.moved if g.has_edge(v, m.branch)]
    return g.with_edges(remove=cut, add=[(v, m.leaf) for v, _ in cut])


def reverse_shift(t: LabeledGraph, c: int, l: int) -> LabeledGraph:
    """Reattach everything hanging off ``l`` (other than ``c``) to ``c``."""
    if not t.is_tree():
        raise InvalidMove("reverse shift needs a tree")
    if not t.has_edge(c, l):
        raise InvalidMove(f"{c} and {l} are not adjacent")
    if t.degree(c) < 2 or t.degree(l) < 2:
        raise InvalidMove("neither endpoint may be a leaf")
    others = [u for u in t.adj[l] if u != c]
    return t.with_edges(remove=[(u, l) for u in others], add=[(u, c) for u in others])


def _shortest_paths(g: LabeledGraph, s: int):
    """BFS distances, shortest-path counts and one predecessor per vertex."""
    dist = {s: 0}
    count = {s: 1}
    pred = {}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                count[w] = count[u]
                pred[w] = u
                queue.append(w)
            elif dist[w] == dist[u] + 1:
                count[w] += count[u]
    return dist, count, pred


def enumerate_flossing(g: LabeledGraph) -> list[FlossingMove]:
    """Every ordered leaf pair (l, l-hat) flossing a vertex with dist(l,v) <= dist(l-hat,v)."""
    if not g.is_connected():
        raise DisconnectedGraphError("flossing moves are defined on connected graphs")
    leaves = g.leaves()
    moves = []
    for lh in leaves:
        dist, count, pred = _shortest_paths(g, lh)
        for l in leaves:
            if l == lh or count[l] != 1:
                continue
            path = [l]
            while path[-1] != lh:
                path.append(pred[path[-1]])
            branched = [u for u in path if g.degree(u) >= 3]
            if len(branched) != 1:
                continue
            v = branched[0]
            to_l = path.index(v)
            to_lh = len(path) - 1 - to_l
            if to_l > to_lh:
                continue
            moves.append(FlossingMove(l, lh, v, path[1], to_l + 1, to_lh + 1))
    moves.sort(key=lambda m: (m.leaf, m.far_leaf))
    return moves


def _check_flossing(g: LabeledGraph, m: FlossingMove) -> None:
    if m not in set(enumerate_flossing(g)):
        raise InvalidMove(f"{m} is not a flossing move of this graph")


def apply_flossing(g: LabeledGraph, m: FlossingMove) -> LabeledGraph:
    """Delete edge (l, w) and add edge (l-hat, l)."""
    _check_flossing(g, m)
    return g.with_edges(remove=[(m.leaf, m.anchor)], add=[(m.far_leaf, m.leaf)])


def flossing_as_shift(g: LabeledGraph, m: FlossingMove) -> TreeShiftMove:
    """For r = 2 a flossing move is the shift of {l} from v onto l-hat."""
    if m.r != 2:
        raise InvalidMove("only flossing moves with dist(l, v) = 1 are tree shifts")
    branch, path = _walk_to_branch(g, m.far_leaf)
    return TreeShiftMove(m.far_leaf, branch, path, frozenset({m.leaf}))


def leaf_count(g: LabeledGraph) -> int:
    return len(g.leaves())


def wiener_change(g: LabeledGraph, h: LabeledGraph) -> int:
    return wiener_index(h) - wiener_index(g)
