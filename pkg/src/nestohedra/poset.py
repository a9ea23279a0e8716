"""Unlabelled trees, their canonical codes, and the tree-shift order."""

from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .buildset import graphical_building_set
from .gamma_engine import GammaEngine
from .graph import LabeledGraph, path_graph, star_graph
from .moves import apply_flossing, apply_tree_shift, enumerate_flossing, enumerate_tree_shifts
from .poly import IntPolynomial, gamma_le

MAX_TREE_N = 12
MAX_POSET_N = 10


class VerificationFailure(AssertionError):
    pass


# -- canonical form ----------------------------------------------------------

def tree_centers(g: LabeledGraph) -> list[int]:
    """The one or two centroid vertices of a tree."""
    n = g.n
    if n == 1:
        return [1]
    root = 1
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    size = {}
    for u in reversed(order):
        size[u] = 1 + sum(size[w] for w in g.adj[u] if parent.get(w) == u)
    best = []
    best_val = n + 1
    for u in order:
        heaviest = n - size[u]
        for w in g.adj[u]:
            if parent.get(w) == u:
                heaviest = max(heaviest, size[w])
        if heaviest < best_val:
            best, best_val = [u], heaviest
        elif heaviest == best_val:
            best.append(u)
    return sorted(best)


def _rooted_code(g: LabeledGraph, root: int) -> str:
    parent = {root: 0}
    order = [root]
    for u in order:
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
    code = {}
    for u in reversed(order):
        kids = sorted(code[w] for w in g.adj[u] if parent.get(w) == u)
        code[u] = "(" + "".join(kids) + ")"
    return code[root]


def canonical_code(g: LabeledGraph) -> str:
    """AHU string rooted at the centroid; the smaller code wins for a bicentroid."""
    if not g.is_tree():
        raise ValueError("canonical codes are defined for trees")
    return min(_rooted_code(g, c) for c in tree_centers(g))


def tree_from_code(code: str) -> LabeledGraph:
    """Rebuild a labelled tree (labels in preorder) from a rooted code."""
    edges = []
    stack: list[int] = []
    nxt = 0
    for ch in code:
        if ch == "(":
            nxt += 1
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
        else:
            stack.pop()
    return LabeledGraph(nxt, frozenset(edges))


@dataclass
class CanonicalTree:
    code: str
    n: int
    leaf_count: int
    gamma: IntPolynomial | None = None

    @property
    def graph(self) -> LabeledGraph:
        return tree_from_code(self.code)

    def label(self) -> str:
        g = "" if self.gamma is None else str(self.gamma.to_list())
        return f"{self.code} | {g}"


def _leaves(g: LabeledGraph) -> int:
    return len(g.leaves())


def canonical_tree(g: LabeledGraph) -> CanonicalTree:
    return CanonicalTree(canonical_code(g), g.n, _leaves(g))


def enumerate_trees(n: int) -> list[CanonicalTree]:
    """One representative per isomorphism class, sorted by code."""
    if not 1 <= n <= MAX_TREE_N:
        raise ValueError(f"n must lie in 1..{MAX_TREE_N}")
    layer = {canonical_code(LabeledGraph(1)): LabeledGraph(1)}
    for m in range(2, n + 1):
        grown = {}
        for g in layer.values():
            for v in g.vertices:
                h = LabeledGraph(m, g.edges | {(v, m)})
                grown.setdefault(canonical_code(h), h)
        layer = grown
    return [CanonicalTree(code, n, _leaves(g)) for code, g in sorted(layer.items())]


# -- the poset ---------------------------------------------------------------

@dataclass
class TreePoset:
    n: int
    nodes: list[CanonicalTree]
    shift_edges: set = field(default_factory=set)  # (code T, code T') with T' a shift of T
    floss_edges: set = field(default_factory=set)
    below: dict = field(default_factory=dict)  # code -> codes reachable by shifts (incl. itself)

    @property
    def by_code(self) -> dict[str, CanonicalTree]:
        return {t.code: t for t in self.nodes}

    def le(self, a: str, b: str) -> bool:
        """a <= b: a is obtained from b by some number of tree shifts."""
        return a in self.below[b]

    def path_code(self) -> str:
        return canonical_code(path_graph(self.n))

    def star_code(self) -> str:
        return canonical_code(star_graph(self.n))

    def class_arrows(self) -> tuple[dict, dict]:
        """Edge counts between leaf classes: shifts keyed (k, k'), floss keyed by k."""
        leaf = {t.code: t.leaf_count for t in self.nodes}
        shifts: dict = defaultdict(int)
        for a, b in self.shift_edges:
            shifts[(leaf[a], leaf[b])] += 1
        floss: dict = defaultdict(int)
        for a, b in self.floss_edges:
            floss[leaf[a]] += 1
        return dict(shifts), dict(floss)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "nodes": [
                {"code": t.code, "leaves": t.leaf_count,
                 "gamma": None if t.gamma is None else t.gamma.to_list()}
                for t in self.nodes
            ],
            "shift_edges": sorted(map(list, self.shift_edges)),
            "floss_edges": sorted(map(list, self.floss_edges)),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self) -> str:
        ids = {t.code: f"t{k}" for k, t in enumerate(self.nodes)}
        lines = [f"digraph trees_{self.n} {{", "  rankdir=TB;", "  node [shape=box];"]
        ranks = defaultdict(list)
        for t in self.nodes:
            ranks[t.leaf_count].append(t)
        for k in sorted(ranks, reverse=True):
            lines.append(f"  subgraph rank_{k} {{")
            lines.append("    rank=same;")
            for t in ranks[k]:
                lines.append(f'    {ids[t.code]} [label="{t.label()}"];')
            lines.append("  }")
        for a, b in sorted(self.shift_edges):
            lines.append(f"  {ids[a]} -> {ids[b]};")
        for a, b in sorted(self.floss_edges):
            lines.append(f"  {ids[a]} -> {ids[b]} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _tree_gamma(code: str) -> IntPolynomial:
    return GammaEngine().gamma(graphical_building_set(tree_from_code(code)))


def _edges_of(code: str) -> tuple[set, set]:
    g = tree_from_code(code)
    shifts = {canonical_code(apply_tree_shift(g, m)) for m in enumerate_tree_shifts(g)}
    floss = {canonical_code(apply_flossing(g, m)) for m in enumerate_flossing(g) if m.r >= 3}
    return shifts, floss


def build_poset(n: int, *, jobs: int = 1, engine: GammaEngine | None = None) -> TreePoset:
    if not 1 <= n <= MAX_POSET_N:
        raise ValueError(f"n must lie in 1..{MAX_POSET_N}")
    nodes = enumerate_trees(n)
    codes = [t.code for t in nodes]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            gammas = list(pool.map(_tree_gamma, codes))
            edges = list(pool.map(_edges_of, codes))
    else:
        engine = engine or GammaEngine()
        gammas = [engine.gamma(graphical_building_set(t.graph)) for t in nodes]
        edges = [_edges_of(c) for c in codes]
    p = TreePoset(n, nodes)
    for t, gam, (shifts, floss) in zip(nodes, gammas, edges):
        t.gamma = gam
        p.shift_edges |= {(t.code, s) for s in shifts}
        p.floss_edges |= {(t.code, f) for f in floss if f != t.code}
    children = defaultdict(set)
    for a, b in p.shift_edges:
        children[a].add(b)
    # leaf count drops along every shift edge, so process fewest leaves first
    for t in sorted(nodes, key=lambda t: t.leaf_count):
        reach = {t.code}
        for c in children[t.code]:
            reach |= p.below[c]
        p.below[t.code] = reach
    return p


@dataclass
class PosetReport:
    n: int
    minimum: str
    maximum: str
    checks: list = field(default_factory=list)  # (name, passed, detail)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'}  {name}: {detail}" for name, ok, detail in self.checks]


def verify_poset(p: TreePoset, *, raise_on_failure: bool = True) -> PosetReport:
    """Check extremes, gamma monotonicity along shifts/floss edges and the tree bounds."""
    by = p.by_code
    path, star = p.path_code(), p.star_code()
    report = PosetReport(p.n, path, star)

    def record(name, ok, detail):
        report.checks.append((name, ok, detail))
        if not ok and raise_on_failure:
            raise VerificationFailure(f"{name}: {detail}")

    minima = [c for c in by if all(c in p.below[d] for d in by)]
    maxima = [c for c in by if all(d in p.below[c] for d in by)]
    record("unique minimum is Path_n", minima == [path], f"minimum elements {minima}")
    record("unique maximum is K_{1,n-1}", maxima == [star], f"maximum elements {maxima}")

    leaf = {t.code: t.leaf_count for t in p.nodes}
    bad = [(a, b) for a, b in p.shift_edges if leaf[a] != leaf[b] + 1]
    record("shift edges drop one leaf", not bad, f"violations {bad}")
    bad = [(a, b) for a, b in p.floss_edges if leaf[a] != leaf[b]]
    record("floss edges keep leaf count", not bad, f"violations {bad}")

    bad = [(a, b) for a in by for b in p.below[a] if not gamma_le(by[b].gamma, by[a].gamma)]
    record("gamma monotone along the order", not bad, f"violations {bad}")
    bad = [(a, b) for a, b in p.floss_edges if not gamma_le(by[b].gamma, by[a].gamma)]
    record("gamma monotone along floss edges", not bad, f"violations {bad}")

    lo, hi = by[path].gamma, by[star].gamma
    bad = [c for c in by if not (gamma_le(lo, by[c].gamma) and gamma_le(by[c].gamma, hi))]
    record("gamma(Path_n) <= gamma(T) <= gamma(K_{1,n-1})", not bad, f"violations {bad}")
    bad = [c for c in by if (by[c].gamma == lo) != (c == path) or (by[c].gamma == hi) != (c == star)]
    if path == star:
        bad = []
    record("bounds attained only at the extremes", not bad, f"violations {bad}")
    return report
