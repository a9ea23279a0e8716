"""Exhaustive verification suites run by ``nestohedra verify`` and the acceptance tests."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx
import numpy as np

from .buildset import (
    BuildingSet,
    graphical_building_set,
    product_building_set,
)
from .gamma_engine import ChainError, GammaEngine, flag_chain, initial_comb
from .graph import LabeledGraph, complete_graph, path_graph, star_graph
from .moves import apply_flossing, apply_tree_shift, enumerate_flossing, enumerate_tree_shifts
from .nested import f_polynomial, facet_f_identity_all, gamma_oracle
from .poly import IntPolynomial, f_to_h, gamma_le, h_to_gamma, product
from .poset import build_poset, enumerate_trees, verify_poset, VerificationFailure

# expected leaf-class sizes and class-level arrow counts for the 7-vertex trees
SEVEN_VERTEX_CLASS_SIZES = {6: 1, 5: 2, 4: 4, 3: 3, 2: 1}
SEVEN_VERTEX_SHIFT_ARROWS = {(6, 5): 2, (5, 4): 7, (4, 3): 8, (3, 2): 3}
SEVEN_VERTEX_FLOSS_ARROWS = {4: 1, 3: 2}

KNOWN_GAMMAS = {
    "Path_2": (path_graph(2), [1]),
    "Path_3": (path_graph(3), [1, 1]),
    "K_3": (complete_graph(3), [1, 2]),
    "Path_4": (path_graph(4), [1, 3]),
    "K_{1,3}": (star_graph(4), [1, 4]),
    "K_4": (complete_graph(4), [1, 8]),
}


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    failures: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number}. {self.name} ({self.seconds:.1f}s): {self.detail}"


# -- graph censuses -----------------------------------------------------------

def _from_nx(h) -> LabeledGraph:
    idx = {v: k + 1 for k, v in enumerate(sorted(h.nodes()))}
    return LabeledGraph(h.number_of_nodes(), frozenset((idx[u], idx[v]) for u, v in h.edges()))


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[LabeledGraph, ...]:
    """One labelled representative per isomorphism class of connected graphs on n vertices (n <= 7)."""
    if not 1 <= n <= 7:
        raise ValueError("the graph atlas covers 1..7 vertices")
    return tuple(_from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h))


def random_connected_graph(n: int, rng: random.Random, p: float | None = None) -> LabeledGraph:
    while True:
        q = rng.uniform(0.2, 0.9) if p is None else p
        edges = {(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < q}
        g = LabeledGraph(n, frozenset(edges))
        if g.is_connected():
            return g


def trees(n: int) -> list[LabeledGraph]:
    return [t.graph for t in enumerate_trees(n)]


# -- independent axiom checks (vectorised, share no code with the engine) ----

def _np_axioms(elements, ground: int) -> tuple[bool, bool]:
    """(is building set, is flag) by direct all-pairs tests."""
    arr = np.array(sorted(elements), dtype=np.uint64)
    members = set(int(x) for x in arr)
    inter = (arr[:, None] & arr[None, :]) != 0
    unions = (arr[:, None] | arr[None, :])[inter]
    building = bool(np.isin(unions, arr).all())
    bits = ground
    while bits:
        b = bits & -bits
        building &= b in members
        bits ^= b
    big = arr[(arr & (arr - np.uint64(1))) != 0]
    inside = ((arr[None, :] & ~big[:, None]) == 0) & (arr[None, :] != big[:, None])
    splits = inside & np.isin(big[:, None] ^ arr[None, :], arr)
    flag = bool(splits.any(axis=1).all())
    return building, flag


# -- criteria ----------------------------------------------------------------

def criterion_engine_oracle(max_n: int = 6, engine: GammaEngine | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    engine = engine or GammaEngine()
    failures = []
    count = 0
    per_n = {}
    for n in range(1, max_n + 1):
        graphs = connected_graphs(n)
        per_n[n] = len(graphs)
        for g in graphs:
            b = graphical_building_set(g)
            a, o = engine.gamma(b), gamma_oracle(b)
            count += 1
            if a != o:
                failures.append((str(g), a.to_list(), o.to_list()))
    ok = not failures and (max_n < 6 or per_n[6] == 112)
    return CriterionResult(1, "engine = oracle on connected graphs", ok,
                           f"{count} classes (n=6: {per_n.get(6)}), {len(failures)} mismatches",
                           time.perf_counter() - t0, failures)


def criterion_known_values(engine: GammaEngine | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    engine = engine or GammaEngine()
    failures = []
    for name, (g, expected) in KNOWN_GAMMAS.items():
        b = graphical_building_set(g)
        got = (engine.gamma(b).to_list(), gamma_oracle(b).to_list())
        if got != (expected, expected):
            failures.append((name, got, expected))
    return CriterionResult(2, "known small gamma values", not failures,
                           f"{len(KNOWN_GAMMAS)} values, {len(failures)} wrong", time.perf_counter() - t0, failures)


def _moves_suite(number, name, enumerate_moves, apply_move, max_tree_n, max_graph_n, engine, leaf_rule):
    t0 = time.perf_counter()
    engine = engine or GammaEngine()

    def gamma(g):
        return engine.gamma(graphical_building_set(g))

    graphs = []
    tree_classes = 0
    for n in range(1, max_tree_n + 1):
        ts = trees(n)
        tree_classes += len(ts) if n >= 2 else 0
        graphs += ts
    for n in range(1, max_graph_n + 1):
        graphs += [g for g in connected_graphs(n) if not g.is_tree()]
    failures = []
    moves = 0
    for g in graphs:
        base = gamma(g)
        for m in enumerate_moves(g):
            h = apply_move(g, m)
            moves += 1
            if not h.is_connected():
                failures.append((str(g), m, "disconnected result"))
            elif not gamma_le(gamma(h), base):
                failures.append((str(g), m, gamma(h).to_list(), base.to_list()))
            elif not leaf_rule(g, h, m):
                failures.append((str(g), m, "leaf count rule"))
    detail = f"{len(graphs)} graphs ({tree_classes} trees n=2..{max_tree_n}), {moves} moves, {len(failures)} violations"
    return CriterionResult(number, name, not failures, detail, time.perf_counter() - t0, failures)


def _shift_leaves(g, h, m):
    return len(h.leaves()) == len(g.leaves()) - 1


def _floss_leaves(g, h, m):
    delta = len(g.leaves()) - len(h.leaves())
    return delta == (1 if m.r == 2 else 0)


def criterion_tree_shifts(max_tree_n: int = 8, max_graph_n: int = 6, engine=None) -> CriterionResult:
    return _moves_suite(3, "tree shifts lower gamma", enumerate_tree_shifts, apply_tree_shift,
                        max_tree_n, max_graph_n, engine, _shift_leaves)


def criterion_flossing(max_tree_n: int = 8, max_graph_n: int = 6, engine=None) -> CriterionResult:
    return _moves_suite(4, "flossing moves lower gamma", enumerate_flossing, apply_flossing,
                        max_tree_n, max_graph_n, engine, _floss_leaves)


def criterion_tree_bounds(max_n: int = 8, engine: GammaEngine | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    engine = engine or GammaEngine()
    failures = []
    checked = 0
    for n in range(1, max_n + 1):
        lo = engine.gamma(graphical_building_set(path_graph(n)))
        hi = engine.gamma(graphical_building_set(star_graph(n)))
        for t in enumerate_trees(n):
            g = t.graph
            gam = engine.gamma(graphical_building_set(g))
            checked += 1
            is_path = t.leaf_count <= 2
            is_star = n <= 2 or t.leaf_count == n - 1
            if not (gamma_le(lo, gam) and gamma_le(gam, hi)):
                failures.append((n, t.code, "outside bounds"))
            if (gam == lo) != is_path or (gam == hi) != is_star:
                failures.append((n, t.code, "bound attained by a non-extreme tree"))
    return CriterionResult(5, "Path_n <= T <= K_{1,n-1} with sharp attainment", not failures,
                           f"{checked} trees, {len(failures)} violations", time.perf_counter() - t0, failures)


def criterion_poset(ns=range(2, 9), engine: GammaEngine | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    engine = engine or GammaEngine()
    failures = []
    for n in ns:
        try:
            verify_poset(build_poset(n, engine=engine))
        except VerificationFailure as exc:
            failures.append((n, str(exc)))
    ns = list(ns)
    return CriterionResult(6, "tree-shift order: extremes and monotone gamma", not failures,
                           f"n={ns[0]}..{ns[-1]}, {len(failures)} failing", time.perf_counter() - t0, failures)


def criterion_seven_vertex(engine: GammaEngine | None = None) -> CriterionResult:
    t0 = time.perf_counter()
    p = build_poset(7, engine=engine)
    sizes: dict = {}
    for t in p.nodes:
        sizes[t.leaf_count] = sizes.get(t.leaf_count, 0) + 1
    shifts, floss = p.class_arrows()
    failures = []
    if len(p.nodes) != 11:
        failures.append(("tree count", len(p.nodes)))
    if sizes != SEVEN_VERTEX_CLASS_SIZES:
        failures.append(("class sizes", sizes))
    if shifts != SEVEN_VERTEX_SHIFT_ARROWS:
        failures.append(("shift arrows", shifts))
    if floss != SEVEN_VERTEX_FLOSS_ARROWS:
        failures.append(("floss arrows", floss))
    detail = f"{len(p.nodes)} trees, classes {dict(sorted(sizes.items(), reverse=True))}, shifts {shifts}, floss {floss}"
    return CriterionResult(7, "7-vertex trees by leaf class", not failures, detail, time.perf_counter() - t0, failures)


def _random_flag_pair(rng: random.Random, max_n: int = 6) -> tuple[BuildingSet, BuildingSet]:
    n = rng.randint(2, max_n)
    g = random_connected_graph(n, rng)
    target = graphical_building_set(g)
    if rng.random() < 0.5:
        # spanning connected subgraph
        edges = list(g.edges)
        rng.shuffle(edges)
        keep = set(edges)
        for e in edges:
            trial = LabeledGraph(n, frozenset(keep - {e}))
            if trial.is_connected() and rng.random() < 0.6:
                keep.discard(e)
        return graphical_building_set(LabeledGraph(n, frozenset(keep))), target
    chain = flag_chain(initial_comb(target), target)
    i = rng.randint(0, len(chain.additions))
    j = rng.randint(i, len(chain.additions))
    base = set(chain.base.members) | set(chain.additions[:i])
    top = set(chain.base.members) | set(chain.additions[:j])
    return BuildingSet(base, target.ground), BuildingSet(top, target.ground)


def _random_product(rng: random.Random):
    k = rng.randint(1, 3)
    base = graphical_building_set(random_connected_graph(k, rng))
    if rng.random() < 0.3 and k >= 2:
        base = BuildingSet(set(initial_comb(base).members), base.ground)
    sizes = []
    budget = 7
    for _ in range(k):
        s = rng.randint(1, max(1, min(3, budget - (k - len(sizes) - 1))))
        sizes.append(s)
        budget -= s
    parts = [graphical_building_set(random_connected_graph(s, rng)) for s in sizes]
    return base, parts


def criterion_structural(seed: int = 0, engine: GammaEngine | None = None, max_n: int = 6) -> CriterionResult:
    t0 = time.perf_counter()
    engine = engine or GammaEngine()
    rng = random.Random(seed)
    failures = []
    notes = []

    # Dehn-Sommerville and nonnegativity over every connected graph
    hs = 0
    for n in range(1, max_n + 1):
        for g in connected_graphs(n):
            b = graphical_building_set(g)
            engine.gamma(b)
            f, d = f_polynomial(b)
            h = f_to_h(f, d)
            hs += 1
            if not h.is_symmetric(d):
                failures.append(("Dehn-Sommerville", str(g)))
            if h(1) != f[0]:
                failures.append(("h(1) = f_0", str(g)))
    for key, gam in engine.memo.items():
        if not gam.is_nonnegative():
            failures.append(("gamma >= 0", key))
    notes.append(f"{hs} h-polys symmetric, {len(engine.memo)} flag gammas >= 0")

    # monotonicity under inclusion
    for _ in range(100):
        base, target = _random_flag_pair(rng, max_n)
        if not (base.members <= target.members and base.is_flag and target.is_flag and base.is_connected):
            failures.append(("inclusion pair invalid", base, target))
            continue
        if not gamma_le(gamma_oracle(base), gamma_oracle(target)):
            failures.append(("monotone under inclusion", base, target))
    notes.append("100 inclusion pairs")

    # facet identity, exhaustive for n <= max_n
    facets = 0
    for n in range(1, max_n + 1):
        for g in connected_graphs(n):
            for i, ok in facet_f_identity_all(graphical_building_set(g)).items():
                facets += 1
                if not ok:
                    failures.append(("facet identity", str(g), i))
    notes.append(f"{facets} facet identities")

    # product law
    for _ in range(50):
        base, parts = _random_product(rng)
        prod = product_building_set(base, parts)
        f_prod, _ = f_polynomial(prod)
        f_parts = product(f_polynomial(x)[0] for x in [base, *parts])
        g_parts = product(engine.gamma(x) for x in [base, *parts])
        if f_prod != f_parts or engine.gamma(prod) != g_parts or gamma_oracle(prod) != g_parts:
            failures.append(("product law", base, parts))
    notes.append("50 products")
    return CriterionResult(8, "structural invariants", not failures, "; ".join(notes),
                           time.perf_counter() - t0, failures)


def criterion_flag_chains(max_n: int = 7) -> CriterionResult:
    t0 = time.perf_counter()
    failures = []
    graphs = 0
    prefixes = 0
    for n in range(1, max_n + 1):
        for g in connected_graphs(n):
            graphs += 1
            b = graphical_building_set(g)
            try:
                chain = flag_chain(initial_comb(b), b)
            except ChainError as exc:
                failures.append((str(g), str(exc)))
                continue
            current = set(chain.base.members)
            for x in [None, *chain.additions]:
                if x is not None:
                    current.add(x)
                prefixes += 1
                building, flag = _np_axioms(current, b.ground)
                if not (building and flag):
                    failures.append((str(g), x, building, flag))
                    break
            if current != set(b.members):
                failures.append((str(g), "chain does not reach target"))
    return CriterionResult(9, "flag chains exist and stay flag", not failures,
                           f"{graphs} graphs, {prefixes} prefixes checked", time.perf_counter() - t0, failures)


def run_all(*, seed: int = 0, max_tree_n: int = 8, max_graph_n: int = 6, chain_n: int = 7) -> list[CriterionResult]:
    engine = GammaEngine()
    return [
        criterion_engine_oracle(max_graph_n, engine),
        criterion_known_values(engine),
        criterion_tree_shifts(max_tree_n, max_graph_n, engine),
        criterion_flossing(max_tree_n, max_graph_n, engine),
        criterion_tree_bounds(max_tree_n, engine),
        criterion_poset(range(2, max_tree_n + 1), engine),
        criterion_seven_vertex(engine),
        criterion_structural(seed, engine, max_graph_n),
        criterion_flag_chains(chain_n),
    ]
