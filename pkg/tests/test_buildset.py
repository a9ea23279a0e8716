import itertools
import json

import pytest
from hypothesis import given, strategies as st

from nestohedra.buildset import (
    BuildingSet,
    BuildingSetError,
    DecompositionTree,
    DomainError,
    GroundSetTooLarge,
    NotFlagError,
    binary_decomposition,
    contraction,
    decomposition_containing,
    graphical_building_set,
    is_building_set,
    mask,
    popcount,
    product_building_set,
    restriction,
)
from nestohedra.graph import LabeledGraph, complete_graph, empty_graph, path_graph, star_graph
from nestohedra.verification import connected_graphs


def sets(*groups):
    return {mask(g) for g in groups}


def contracted_graph(g: LabeledGraph, i: int) -> LabeledGraph:
    """The graph on [n] - I: old edges plus edges between any two vertices touching I."""
    inside = set(v for v in g.vertices if i >> (v - 1) & 1)
    touching = {v for v in g.vertices if v not in inside and g.adj[v] & inside}
    edges = {(u, v) for u, v in g.edges if u not in inside and v not in inside}
    edges |= {(u, v) for u, v in itertools.combinations(sorted(touching), 2)}
    return LabeledGraph(g.n, frozenset(edges))


def all_decompositions(b: BuildingSet, i: int):
    """Every subfamily of B|_I forming a binary tree on I (exhaustive)."""
    inner = [e for e in b.elements if e & ~i == 0 and popcount(e) > 1 and e != i]
    need = popcount(i) - 2
    singles = {e for e in b.elements if e & ~i == 0 and popcount(e) == 1}
    for fam in itertools.combinations(inner, need):
        nodes = set(fam) | singles | {i}
        try:
            d = BuildingSet(nodes, i)
        except BuildingSetError:
            continue
        if d.is_flag and d.is_connected:
            yield nodes


class TestGraphical:
    def test_path3(self):
        assert graphical_building_set(path_graph(3)).members == sets([1], [2], [3], [1, 2], [2, 3], [1, 2, 3])

    def test_k3_has_every_subset(self):
        assert len(graphical_building_set(complete_graph(3))) == 7

    def test_edgeless(self):
        b = graphical_building_set(empty_graph(2))
        assert b.members == sets([1], [2])
        assert set(b.b_max) == sets([1], [2])
        assert not b.is_connected
        assert b.dimension == 0

    def test_too_large(self):
        with pytest.raises(GroundSetTooLarge):
            graphical_building_set(path_graph(65))

    def test_brute_force_connectivity(self):
        for g in connected_graphs(5):
            expected = set()
            for m in range(1, 1 << 5):
                vs = [v for v in g.vertices if m >> (v - 1) & 1]
                if len(g.components(vs)) == 1:
                    expected.add(m)
            assert graphical_building_set(g).members == expected

    @pytest.mark.parametrize("n", range(1, 7))
    def test_graphical_sets_are_flag_building_sets(self, n):
        for g in connected_graphs(n):
            b = graphical_building_set(g)
            assert is_building_set(b.members, b.ground)
            assert b.is_flag
            assert b.is_connected


@pytest.mark.parametrize("family, expected", [
    ([[1], [2], [3], [1, 2, 3]], True),
    ([[1], [2], [1, 2], [2, 3]], False),
    ([[1], [2], [3], [1, 2], [2, 3]], False),
])
def test_is_building_set(family, expected):
    assert is_building_set({mask(x) for x in family}, mask([1, 2, 3])) is expected


def test_constructor_validates():
    with pytest.raises(BuildingSetError):
        BuildingSet.from_labels([[1], [2], [3], [1, 2], [2, 3]])
    with pytest.raises(BuildingSetError):
        BuildingSet.from_labels([[1], [1, 2]], [1, 2])


def test_b_max_partitions_ground():
    b = graphical_building_set(LabeledGraph(5, frozenset({(1, 2), (4, 5)})))
    assert set(b.b_max) == sets([1, 2], [3], [4, 5])


class TestRestrictionContraction:
    def test_restriction_examples(self):
        p3, k3 = graphical_building_set(path_graph(3)), graphical_building_set(complete_graph(3))
        assert restriction(p3, mask([1, 2])).members == sets([1], [2], [1, 2])
        assert restriction(p3, mask([1, 3])).members == sets([1], [3])
        assert restriction(k3, mask([1, 3])).members == sets([1], [3], [1, 3])

    def test_restriction_domain(self):
        with pytest.raises(DomainError):
            restriction(graphical_building_set(path_graph(3)), mask([4]))

    def test_contraction_examples(self):
        p3 = graphical_building_set(path_graph(3))
        c = contraction(p3, mask([2]))
        assert c.ground == mask([1, 3]) and c.members == sets([1], [3], [1, 3])
        c = contraction(p3, mask([1]))
        assert c.members == sets([2], [3], [2, 3])

    def test_contract_star_center(self):
        star = graphical_building_set(star_graph(4, center=4))
        c = contraction(star, mask([4]))
        assert c.members == {m for m in range(1, 8)}
        # definitional formula, written out directly
        direct = {j & ~mask([4]) for j in star.members if j & ~mask([4])}
        assert c.members == direct

    def test_contraction_domain(self):
        with pytest.raises(DomainError):
            contraction(graphical_building_set(path_graph(3)), mask([1, 3]))

    @pytest.mark.parametrize("n", range(2, 7))
    def test_contraction_matches_contracted_graph(self, n):
        for g in connected_graphs(n):
            b = graphical_building_set(g)
            for i in b.elements:
                if i == b.ground:
                    continue
                c = contraction(b, i)
                expected = restriction(graphical_building_set(contracted_graph(g, i)), b.ground & ~i)
                assert c == expected
                assert c.is_flag and restriction(b, i).is_flag
                assert is_building_set(c.members, c.ground)


class TestFlag:
    def test_examples(self):
        assert not BuildingSet.from_labels([[1], [2], [3], [1, 2, 3]]).is_flag
        assert BuildingSet.from_labels([[1], [2], [3], [1, 2], [1, 2, 3]]).is_flag

    def test_minimal_flag_size(self):
        d = BuildingSet.from_labels([[1], [2], [3], [4], [1, 2], [3, 4], [1, 2, 3, 4]])
        assert d.is_minimal_flag()
        assert len(d) == 2 * d.n - 1


class TestDecompositions:
    def test_path3(self):
        b = graphical_building_set(path_graph(3))
        t = binary_decomposition(b, mask([1, 2, 3]))
        assert t.children[mask([1, 2, 3])] == (mask([1, 2]), mask([3]))
        assert t.children[mask([1, 2])] == (mask([1]), mask([2]))

    def test_path2(self):
        t = binary_decomposition(graphical_building_set(path_graph(2)), mask([1, 2]))
        assert t.children == {mask([1, 2]): (mask([1]), mask([2]))}

    def test_k3_tie_break(self):
        b = graphical_building_set(complete_graph(3))
        splits = {frozenset((d, mask([1, 2, 3]) ^ d)) for d in b.elements
                  if popcount(d) < 3 and (mask([1, 2, 3]) ^ d) in b.members}
        assert len(splits) == 3
        t = binary_decomposition(b, mask([1, 2, 3]))
        assert t.children[mask([1, 2, 3])] == (mask([1, 2]), mask([3]))

    def test_not_flag(self):
        b = BuildingSet.from_labels([[1], [2], [3], [1, 2, 3]])
        with pytest.raises(NotFlagError):
            binary_decomposition(b, mask([1, 2, 3]))
        with pytest.raises(DomainError):
            binary_decomposition(b, mask([1, 2]))

    @pytest.mark.parametrize("graph, j", [(path_graph(3), [2, 3]), (complete_graph(3), [1, 3])])
    def test_containing_matches_exhaustive_search(self, graph, j):
        b = graphical_building_set(graph)
        i = mask([1, 2, 3])
        matches = [d for d in all_decompositions(b, i) if mask(j) in d]
        assert len(matches) == 1
        t = decomposition_containing(b, i, mask(j))
        t.validate(b)
        assert t.nodes == matches[0]

    def test_containing_singleton(self):
        b = graphical_building_set(path_graph(3))
        t = decomposition_containing(b, mask([1, 2, 3]), mask([1]))
        t.validate(b)
        assert mask([1]) in t.nodes

    def test_containing_domain(self):
        b = graphical_building_set(path_graph(3))
        with pytest.raises(DomainError):
            decomposition_containing(b, mask([1, 2]), mask([1, 2]))
        with pytest.raises(DomainError):
            decomposition_containing(b, mask([1, 2]), mask([2, 3]))

    @pytest.mark.parametrize("n", range(2, 6))
    def test_every_decomposition_validates(self, n):
        for g in connected_graphs(n):
            b = graphical_building_set(g)
            for i in b.elements:
                if popcount(i) > 1:
                    binary_decomposition(b, i).validate(b)
                for j in b.elements:
                    if j & ~i == 0 and j != i and popcount(i) > 1:
                        t = decomposition_containing(b, i, j)
                        t.validate(b)
                        assert j in t.nodes
                        assert t.as_building_set().is_minimal_flag()

    def test_validate_catches_bad_split(self):
        t = DecompositionTree(mask([1, 2]), {mask([1, 2]): (mask([1]), mask([1]))})
        with pytest.raises(AssertionError):
            t.validate()


class TestProduct:
    def test_example(self):
        base = BuildingSet.from_labels([[1], [2], [1, 2]])
        parts = [graphical_building_set(path_graph(2)), BuildingSet.from_labels([[1]])]
        prod = product_building_set(base, parts)
        assert prod.members == sets([1], [2], [3], [1, 2], [1, 2, 3])
        assert is_building_set(prod.members, prod.ground)

    def test_disconnected_base_is_disjoint_union(self):
        base = BuildingSet.from_labels([[1], [2]])
        parts = [graphical_building_set(path_graph(2)), graphical_building_set(complete_graph(3))]
        prod = product_building_set(base, parts)
        assert prod.members == sets([1], [2], [1, 2], [3], [4], [5], [3, 4], [3, 5], [4, 5], [3, 4, 5])

    def test_blocks_restrict_to_parts(self):
        base = graphical_building_set(path_graph(3))
        parts = [graphical_building_set(g) for g in (path_graph(2), complete_graph(3), path_graph(1))]
        prod = product_building_set(base, parts)
        assert restriction(prod, mask([3, 4, 5])).compact_key() == parts[1].compact_key()
        assert mask([1, 2, 3, 4, 5]) in prod and mask([3, 4, 5, 6]) in prod
        assert mask([1, 2, 6]) not in prod

    def test_errors(self):
        base = BuildingSet.from_labels([[1], [2], [1, 2]])
        with pytest.raises(DomainError):
            product_building_set(base, [graphical_building_set(empty_graph(2)), BuildingSet.from_labels([[1]])])
        with pytest.raises(DomainError):
            product_building_set(base, [BuildingSet.from_labels([[1]])])
        big = graphical_building_set(path_graph(40))
        with pytest.raises(GroundSetTooLarge):
            product_building_set(base, [big, big])


def test_json_round_trip():
    b = graphical_building_set(path_graph(3))
    data = json.loads(b.to_json())
    assert data == {"ground": [1, 2, 3], "elements": [[1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]}
    assert BuildingSet.from_json(b.to_json()) == b
    with pytest.raises(BuildingSetError):
        BuildingSet.from_dict({"ground": [0], "elements": [[0]]})
    with pytest.raises(BuildingSetError):
        BuildingSet.from_dict({"elements": []})


@given(st.integers(1, 6), st.data())
def test_restriction_of_graphical_is_graphical(n, data):
    edges = data.draw(st.sets(st.sampled_from([(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]))
                      if n > 1 else st.just(set()))
    g = LabeledGraph(n, frozenset(edges))
    b = graphical_building_set(g)
    i = data.draw(st.integers(1, (1 << n) - 1))
    r = restriction(b, i)
    vs = [v for v in g.vertices if i >> (v - 1) & 1]
    sub = LabeledGraph(n, frozenset(g.induced_edges(vs)))
    assert r == restriction(graphical_building_set(sub), i)
    assert r.is_flag
