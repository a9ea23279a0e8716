import itertools
import json
import re

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from nestohedra.graph import LabeledGraph, path_graph, star_graph
from nestohedra.moves import apply_tree_shift, enumerate_tree_shifts
from nestohedra.poset import (
    MAX_POSET_N,
    MAX_TREE_N,
    VerificationFailure,
    build_poset,
    canonical_code,
    enumerate_trees,
    tree_centers,
    tree_from_code,
    verify_poset,
)
from nestohedra.verification import (
    SEVEN_VERTEX_CLASS_SIZES,
    SEVEN_VERTEX_FLOSS_ARROWS,
    SEVEN_VERTEX_SHIFT_ARROWS,
    trees,
)


def isomorphic(a: LabeledGraph, b: LabeledGraph) -> bool:
    """Brute force over all relabellings."""
    if a.n != b.n or len(a.edges) != len(b.edges):
        return False
    for perm in itertools.permutations(range(1, a.n + 1)):
        if a.relabel(dict(zip(range(1, a.n + 1), perm))).edges == b.edges:
            return True
    return False


def random_labelling(t, seed):
    import random
    perm = list(range(1, t.n + 1))
    random.Random(seed).shuffle(perm)
    return t.relabel(dict(zip(range(1, t.n + 1), perm)))


class TestEnumerateTrees:
    @pytest.mark.parametrize("n, count", [(4, 2), (5, 3), (7, 11)])
    def test_examples(self, n, count):
        assert len(enumerate_trees(n)) == count

    @pytest.mark.parametrize("n", range(1, MAX_TREE_N + 1))
    def test_counts_match_networkx(self, n):
        expected = 1 if n == 1 else sum(1 for _ in nx.nonisomorphic_trees(n))
        assert len(enumerate_trees(n)) == expected

    def test_seven_leaf_classes(self):
        sizes = {}
        for t in enumerate_trees(7):
            sizes[t.leaf_count] = sizes.get(t.leaf_count, 0) + 1
        assert sizes == SEVEN_VERTEX_CLASS_SIZES

    def test_sorted_and_distinct(self):
        codes = [t.code for t in enumerate_trees(8)]
        assert codes == sorted(set(codes))

    @pytest.mark.parametrize("n", [0, MAX_TREE_N + 1])
    def test_range(self, n):
        with pytest.raises(ValueError):
            enumerate_trees(n)


class TestCanonicalCode:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_agrees_with_brute_force_isomorphism(self, n):
        reps = [t.graph for t in enumerate_trees(n)]
        # distinct codes are pairwise non-isomorphic
        for a, b in itertools.combinations(reps, 2):
            assert not isomorphic(a, b)
        # relabelled copies keep their code
        for k, t in enumerate(reps):
            for seed in range(3):
                assert canonical_code(random_labelling(t, seed * 31 + k)) == canonical_code(t)

    def test_round_trip_through_code(self):
        for t in enumerate_trees(9):
            g = tree_from_code(t.code)
            assert g.is_tree() and canonical_code(g) == t.code

    def test_centers(self):
        assert tree_centers(path_graph(5)) == [3]
        assert tree_centers(path_graph(4)) == [2, 3]
        assert tree_centers(star_graph(6, center=4)) == [4]

    def test_rejects_non_trees(self):
        with pytest.raises(ValueError):
            canonical_code(LabeledGraph(3, frozenset({(1, 2), (2, 3), (1, 3)})))

    @given(st.integers(2, 9), st.integers(0, 10_000))
    def test_invariant_under_relabelling(self, n, seed):
        t = trees(n)[seed % len(trees(n))]
        assert canonical_code(random_labelling(t, seed)) == canonical_code(t)


class TestBuildPoset:
    def test_n2(self):
        p = build_poset(2)
        assert len(p.nodes) == 1 and not p.shift_edges and not p.floss_edges
        assert verify_poset(p).passed

    def test_n4(self):
        p = build_poset(4)
        path, star = p.path_code(), p.star_code()
        assert p.shift_edges == {(star, path)}
        assert p.le(path, star) and not p.le(star, path)
        report = verify_poset(p)
        assert report.passed and report.minimum == path and report.maximum == star
        by = p.by_code
        assert by[path].gamma == [1, 3] and by[star].gamma == [1, 4]

    def test_n7_arrows_by_class(self):
        p = build_poset(7)
        assert len(p.nodes) == 11
        shifts, floss = p.class_arrows()
        assert shifts == SEVEN_VERTEX_SHIFT_ARROWS
        assert floss == SEVEN_VERTEX_FLOSS_ARROWS
        report = verify_poset(p)
        assert report.passed
        lo, hi = p.by_code[p.path_code()].gamma, p.by_code[p.star_code()].gamma
        interior = [t for t in p.nodes if t.code not in (p.path_code(), p.star_code())]
        assert len(interior) == 9
        assert all(t.gamma != lo and t.gamma != hi for t in interior)

    @pytest.mark.parametrize("n", range(1, 10))
    def test_edges_from_and_into_every_node(self, n):
        p = build_poset(n)
        sources = {a for a, _ in p.shift_edges}
        targets = {b for _, b in p.shift_edges}
        for t in p.nodes:
            if t.code != p.path_code():
                assert t.code in sources
            if t.code != p.star_code():
                assert t.code in targets
        assert verify_poset(p).passed

    def test_shift_edges_are_actual_shifts(self):
        p = build_poset(6)
        for a, b in p.shift_edges:
            g = tree_from_code(a)
            assert b in {canonical_code(apply_tree_shift(g, m)) for m in enumerate_tree_shifts(g)}

    def test_parallel_matches_serial(self):
        a, b = build_poset(6), build_poset(6, jobs=2)
        assert a.to_json() == b.to_json()

    @pytest.mark.parametrize("n", [0, MAX_POSET_N + 1])
    def test_range(self, n):
        with pytest.raises(ValueError):
            build_poset(n)


def test_verify_names_the_counterexample():
    p = build_poset(5)
    star = p.star_code()
    p.by_code[star].gamma = p.by_code[p.path_code()].gamma  # break the upper bound
    with pytest.raises(VerificationFailure, match="gamma"):
        verify_poset(p)
    report = verify_poset(p, raise_on_failure=False)
    assert not report.passed
    assert any(line.startswith("FAIL") for line in report.lines())


def star_graph_code(n):
    return canonical_code(star_graph(n))


class TestOutput:
    def test_dot_for_seven(self):
        dot = build_poset(7).to_dot()
        assert dot.startswith("digraph")
        assert len(re.findall(r"^\s+t\d+ \[label=", dot, re.M)) == 11
        assert len(re.findall(r"subgraph rank_\d+", dot)) == 5
        assert dot.count("style=dashed") == sum(SEVEN_VERTEX_FLOSS_ARROWS.values())
        assert f'| {build_poset(7).by_code[star_graph_code(7)].gamma.to_list()}' in dot

    def test_json_is_stable(self):
        a, b = build_poset(6).to_json(), build_poset(6).to_json()
        assert a == b
        data = json.loads(a)
        assert data["n"] == 6 and len(data["nodes"]) == 6
