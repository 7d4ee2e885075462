"""Unit tests for projective lines and their relations."""

import pytest

from distantline.core import projline
from distantline.core.errors import InadmissiblePairError, PreconditionError, RingMismatchError
from distantline.core.projline import (
    bartolone_table,
    canonical_pair,
    distant,
    enumerate_points,
    find_completion,
    intrinsic_line_space,
    is_admissible,
    join_product_point,
    neighbour_classes,
    nondistant_is_equivalence,
    parallel_transport_holds,
    point_literal,
    point_of,
    product_relations_hold,
    split_product_point,
    unimodular,
)
from distantline.core.rings import make_gf, make_zmod, units
from distantline.spec import parse_ring


@pytest.mark.parametrize(
    "spec,count",
    [
        ("GF(2)", 3),
        ("GF(3)", 4),
        ("GF(2^2)", 5),
        ("Z4", 6),
        ("dual(GF(2))", 6),
        ("Z6", 12),
        ("GF(2) x GF(2)", 9),
        ("M(2,GF(2))", 35),
    ],
)
def test_point_counts(spec, count):
    """Test the number of points on small lines."""
    assert len(enumerate_points(parse_ring(spec))) == count


@pytest.mark.slow
def test_point_count_m2_gf3():
    """Test that P(M(2, GF(3))) has 130 points."""
    assert len(enumerate_points(parse_ring("M(2,GF(3))"))) == 130


def test_points_are_canonical_and_sorted():
    """Test that each point is stored as the least member of its unit orbit."""
    R = make_zmod(4)
    line = enumerate_points(R)
    reps = [p.rep for p in line.points]
    assert reps == sorted(reps)
    for a, b in reps:
        orbit = {(R.mul(u, a), R.mul(u, b)) for u in units(R)}
        assert (a, b) == min(orbit)
        assert canonical_pair(R, a, b) == (a, b)
    assert point_literal(line.points[0]) == "R(0, 1)"


def test_index_of_pair_accepts_any_representative():
    """Test that unit multiples of a pair name the same point."""
    R = make_zmod(4)
    line = enumerate_points(R)
    assert line.index_of_pair(3, 2) == line.index_of_pair(1, 2)
    assert line.index_of_pair(0, 3) == 0


def test_inadmissible_pair_raises():
    """Test that (2, 2) over Z/4 is rejected."""
    line = enumerate_points(make_zmod(4))
    with pytest.raises(InadmissiblePairError):
        line.index_of_pair(2, 2)
    with pytest.raises(InadmissiblePairError):
        point_of(make_zmod(4), 0, 0)


def test_parse_point():
    """Test point literals over Z/4 and M(2, GF(2))."""
    line = enumerate_points(make_zmod(4))
    assert line.parse_point("R(3, 2)").rep == (1, 2)
    with pytest.raises(ValueError):
        line.parse_point("(1, 2)")
    M = enumerate_points(parse_ring("M(2,GF(2))"))
    p = M.parse_point("R([[1,0],[0,1]], [[0,0],[0,0]])")
    assert M.distant(p, M.parse_point("R([[0,0],[0,0]], [[1,0],[0,1]])"))


def test_distant_relation_is_symmetric_and_irreflexive():
    """Test the distant bitsets on Z/6 and dual numbers."""
    for spec in ("Z6", "dual(GF(2))", "M(2,GF(2))"):
        line = enumerate_points(parse_ring(spec))
        bits = line.distant_bits
        for i in range(len(line)):
            assert not bits[i] >> i & 1
            for j in range(len(line)):
                assert (bits[i] >> j & 1) == (bits[j] >> i & 1)


def test_distant_matches_matrix_test():
    """Test the bitsets against invertibility of stacked representatives."""
    line = enumerate_points(make_zmod(6))
    for i, p in enumerate(line.points):
        for j, q in enumerate(line.points):
            assert line.distant(i, j) == distant(p, q)


def test_distant_over_different_rings_raises():
    """Test that points over different rings cannot be compared."""
    p = enumerate_points(make_zmod(4)).points[0]
    q = enumerate_points(make_gf(2)).points[0]
    with pytest.raises(RingMismatchError):
        distant(p, q)
    with pytest.raises(RingMismatchError):
        enumerate_points(make_zmod(4)).index_of(q)


def test_m2_gf2_degrees():
    """Test the distant and adjacency degrees on P(M(2, GF(2)))."""
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    assert {b.bit_count() for b in line.distant_bits} == {16}
    assert {b.bit_count() for b in line.adjacency_bits()} == {18}


def test_z4_parallel_classes():
    """Test that P(Z4) splits into three parallel classes of two points."""
    line = enumerate_points(make_zmod(4))
    classes = line.parallel_classes()
    assert sorted(len(c) for c in classes) == [2, 2, 2]
    line_bar, table = line.quotient_line()
    assert len(line_bar) == 3
    for cls in classes:
        assert len({table[i] for i in cls}) == 1
        i, j = cls
        assert line.parallel(i, j)


def test_field_classes_are_singletons():
    """Test that parallelism over a field is equality."""
    line = enumerate_points(make_gf(3))
    assert line.parallel_classes() == [[0], [1], [2], [3]]


def test_neighbour_classes_on_local_ring():
    """Test that non-distance is an equivalence over Z/4 and matches parallelism."""
    line = enumerate_points(make_zmod(4))
    assert nondistant_is_equivalence(line)
    assert sorted(map(sorted, neighbour_classes(line))) == sorted(map(sorted, line.parallel_classes()))


def test_neighbour_classes_on_non_local_ring_raises():
    """Test that Z/6 is rejected."""
    line = enumerate_points(make_zmod(6))
    assert not nondistant_is_equivalence(line)
    with pytest.raises(PreconditionError):
        neighbour_classes(line)


def test_local_ring_adjacency_equals_distance():
    """Test that adjacent and distant coincide over a local ring."""
    line = enumerate_points(parse_ring("dual(GF(2))"))
    assert line.adjacency_bits("definitional") == line.distant_bits


def test_grassmann_adjacency_matches_definition():
    """Test the subspace shortcut against the definitional adjacency."""
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    assert line.adjacency_method() == "grassmann"
    assert line.adjacency_bits("grassmann") == line.adjacency_bits("definitional")


def test_product_adjacency_matches_definition():
    """Test the componentwise shortcut against the definitional adjacency."""
    line = enumerate_points(parse_ring("GF(2) x Z4"))
    assert line.adjacency_method() == "product"
    assert line.adjacency_bits("product") == line.adjacency_bits("definitional")


def test_product_and_generic_lines_agree():
    """Test that the factorwise construction gives the same points and distance."""
    R = parse_ring("GF(2) x Z4")
    product = enumerate_points(R)
    generic = enumerate_points(R, method="generic")
    assert [p.rep for p in product.points] == [p.rep for p in generic.points]
    assert product.distant_bits == generic.distant_bits


def test_product_relations_hold():
    """Test the componentwise laws on GF(2) x GF(3)."""
    assert product_relations_hold(enumerate_points(parse_ring("GF(2) x GF(3)")))


def test_split_and_join_product_points():
    """Test that a product point is recovered from its components."""
    line = enumerate_points(parse_ring("GF(2) x Z4"))
    for p in line.points:
        parts = split_product_point(line, p)
        assert [q.ring.order for q in parts] == [2, 4]
        assert join_product_point(line, parts) == p


def test_bartolone_table_covers_every_point():
    """Test that each point has a representative R(ab - 1, a)."""
    for spec in ("Z4", "Z6", "M(2,GF(2))"):
        line = enumerate_points(parse_ring(spec))
        R = line.ring
        table = bartolone_table(line)
        assert len(table) == len(line)
        for i, (a, b) in table.items():
            assert line.index_of_pair(R.sub(R.mul(a, b), R.one), a) == i


def test_intrinsic_line_space_of_a_field():
    """Test that a line over a field carries a single line through every point."""
    space = intrinsic_line_space(enumerate_points(make_gf(3)))
    assert space.n_points == 4
    assert [sorted(line) for line in space.lines] == [[0, 1, 2, 3]]


def test_graphs_match_bitsets():
    """Test the networkx views of the relations."""
    line = enumerate_points(make_zmod(4))
    G = line.distant_graph()
    assert G.number_of_nodes() == 6
    assert sorted(G.edges()) == line.edges(line.distant_bits)
    assert G.nodes[0]["label"] == "R(0, 1)"


def test_distant_neighborhood():
    """Test the distant neighbourhood against the bitsets and parallel classes."""
    line = enumerate_points(make_zmod(4))
    for i, p in enumerate(line.points):
        neighbourhood = line.distant_neighborhood(p)
        assert len(neighbourhood) == line.distant_bits[i].bit_count()
        assert all(line.distant(p, q) for q in neighbourhood)
    for cls in line.parallel_classes():
        first = line.distant_neighborhood(cls[0])
        assert all(line.distant_neighborhood(i) == first for i in cls)


def test_project_point():
    """Test that R(1, 2) over Z/4 projects to R(1, 0) over GF(2)."""
    line = enumerate_points(make_zmod(4))
    image = line.project_point(line.point_of(1, 2))
    assert image.rep == (1, 0)
    assert image.ring.order == 2
    assert line.project_point(line.point_of(1, 0)) == image
    assert line.project_point(line.point_of(0, 1)).rep == (0, 1)


@pytest.mark.parametrize("spec", ["Z4", "dual(GF(2))", "Z9", "Z6"])
def test_parallel_transport(spec):
    """Test that distance and adjacency via a point only see parallel classes."""
    assert parallel_transport_holds(enumerate_points(parse_ring(spec)))


@pytest.mark.parametrize(
    "spec",
    [
        "GF(2)",
        "GF(3)",
        "GF(2^2)",
        "Z4",
        "Z9",
        "dual(GF(2))",
        "Z6",
        "GF(2) x GF(2)",
        "M(2,GF(2))",
        pytest.param("M(2,GF(3))", marks=pytest.mark.slow),
    ],
)
def test_unimodular_pairs_are_admissible(spec):
    """Test that ax + by = 1 is solvable exactly when (a, b) has a completion."""
    R = parse_ring(spec)
    for a in R.elements():
        for b in R.elements():
            assert unimodular(R, a, b) == (find_completion(R, a, b) is not None)


def test_unimodular_mismatch_disables_fast_path(monkeypatch, caplog):
    """Test that a unimodular pair without a completion turns the fast path off."""
    R = make_zmod(4)
    monkeypatch.setattr(projline, "admissible_frames", lambda R: {})
    monkeypatch.setattr(projline, "find_completion", lambda R, a, b: None)
    assert is_admissible(R, 0, 1) == (False, None)
    assert "disabling the fast path" in caplog.text
    assert not projline._unimodular_fast_path(R)
