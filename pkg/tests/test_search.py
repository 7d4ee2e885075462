"""Unit tests for the bitset isomorphism search."""

import networkx as nx

from distantline.core.search import (
    IsomorphismSearch,
    count_automorphisms_orbit_stabilizer,
    count_by_listing,
    list_isomorphisms,
    refine_colors,
)


def _bits(G: nx.Graph):
    nodes = sorted(G.nodes())
    position = {v: i for i, v in enumerate(nodes)}
    bits = [0] * len(nodes)
    for u, v in G.edges():
        bits[position[u]] |= 1 << position[v]
        bits[position[v]] |= 1 << position[u]
    return bits


def test_four_cycle():
    """Test that the square has the dihedral group of order 8."""
    bits = [0b1010, 0b0101, 0b1010, 0b0101]
    maps = list_isomorphisms(bits, bits)
    assert len(maps) == 8
    assert maps[0] == [0, 1, 2, 3]
    assert count_automorphisms_orbit_stabilizer(bits).count == 8


def test_petersen_graph():
    """Test both counting methods on the Petersen graph."""
    bits = _bits(nx.petersen_graph())
    assert count_by_listing(bits, bits) == 120
    result = count_automorphisms_orbit_stabilizer(bits)
    assert result.count == 120
    assert result.method == "orbit-stabilizer"
    for g in result.generators:
        assert all((bits[v] >> w & 1) == (bits[g[v]] >> g[w] & 1) for v in range(10) for w in range(10))


def test_non_isomorphic_graphs():
    """Test that a path and a star are told apart."""
    path = _bits(nx.path_graph(4))
    star = _bits(nx.star_graph(3))
    assert list_isomorphisms(path, star) == []
    assert not IsomorphismSearch(path, star).compatible


def test_isomorphism_between_relabelled_graphs():
    """Test a search between two labellings of the same graph."""
    G = nx.cycle_graph(5)
    H = nx.relabel_nodes(G, {0: 0, 1: 2, 2: 4, 3: 1, 4: 3})
    source, target = _bits(G), _bits(H)
    maps = list_isomorphisms(source, target)
    assert len(maps) == 10
    for m in maps:
        assert all((source[v] >> w & 1) == (target[m[v]] >> m[w] & 1) for v in range(5) for w in range(5))


def test_fixed_assignments_and_candidates():
    """Test search with vertices pinned in advance."""
    bits = _bits(nx.cycle_graph(6))
    search = IsomorphismSearch(bits, bits)
    assert sorted(search.candidates(1, [(0, 0)])) == [1, 5]
    assert search.first([(0, 0), (1, 1)]) == list(range(6))
    assert search.first([(0, 0), (1, 3)]) is None


def test_refine_colors_separates_degrees():
    """Test that colour refinement distinguishes the centre of a star."""
    star = _bits(nx.star_graph(3))
    colors, _ = refine_colors(star, star)
    assert colors[0] != colors[1]
    assert colors[1] == colors[2] == colors[3]
