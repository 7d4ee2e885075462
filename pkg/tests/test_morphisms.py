"""Unit tests for point maps, dis-morphisms and their factorization."""

import pytest

from distantline.core.config import get_config, set_config
from distantline.core.errors import (
    CapExceededError,
    MapFileError,
    MapKindError,
    NotInvertibleError,
    PreconditionError,
    RingMismatchError,
)
from distantline.core.morphisms import (
    CertificateKind,
    Provenance,
    check_semilocal_corollary,
    compose,
    count_dis_automorphisms,
    decompose_product_dis_iso,
    enumerate_dis_isomorphisms,
    factorize_dis_automorphism,
    factorize_product_dis_iso,
    identity_map,
    induced_by_antihom,
    induced_by_hom,
    induced_by_jordan,
    induced_map,
    induced_quotient_map,
    inverse,
    is_adj_isomorphism,
    is_dis_isomorphism,
    is_dis_morphism,
    is_grassmann_collineation,
    is_par_isomorphism,
    is_par_morphism,
    point_map_from_table,
    product_transport,
    projectivity,
    sweep_factorizations,
    verify_wreath_structure,
)
from distantline.core.projline import enumerate_points
from distantline.core.rings import (
    classify_map,
    entrywise_map,
    field_automorphisms,
    identity_ring_map,
    make_gf,
    regular_representation,
    transpose_map,
)
from distantline.spec import parse_ring


@pytest.fixture
def m2_line():
    return enumerate_points(parse_ring("M(2,GF(2))"))


def _swap_map(spec):
    """The point map induced by swapping the two factors of a square product."""
    R = parse_ring(spec)
    table = [R.compose(tuple(reversed(R.decompose(x)))) for x in R.elements()]
    return induced_by_hom(classify_map(R, R, table))


def test_identity_and_projectivity():
    """Test the identity and the coordinate swap over Z/4."""
    line = enumerate_points(parse_ring("Z4"))
    f = identity_map(line)
    assert f.table == tuple(range(6))
    assert is_dis_isomorphism(f)
    g = projectivity(line, ((0, 1), (1, 0)))
    assert g.provenance == Provenance.PROJECTIVITY
    assert g(line.parse_point("R(0, 1)")) == line.parse_point("R(1, 0)")
    assert is_dis_isomorphism(g)
    assert compose(g, g).table == f.table


def test_projectivity_needs_invertible_matrix():
    """Test that a singular matrix over Z/4 is rejected."""
    line = enumerate_points(parse_ring("Z4"))
    with pytest.raises(NotInvertibleError):
        projectivity(line, ((2, 0), (0, 1)))


def test_compose_and_inverse():
    """Test composition order and inverses of projectivities."""
    R = parse_ring("GF(3)")
    line = enumerate_points(R)
    shear = projectivity(line, ((1, 1), (0, 1)))
    swap = projectivity(line, ((0, 1), (1, 0)))
    both = compose(shear, swap)
    assert both.table == tuple(swap.table[shear.table[i]] for i in range(4))
    assert compose(both, inverse(both)).table == tuple(range(4))


def test_compose_across_lines_raises():
    """Test that maps over different lines do not compose."""
    f = identity_map(enumerate_points(parse_ring("Z4")))
    g = identity_map(enumerate_points(make_gf(2)))
    with pytest.raises(RingMismatchError):
        compose(f, g)


def test_inverse_of_non_bijection_raises():
    """Test that a constant map has no inverse."""
    line = enumerate_points(make_gf(2))
    with pytest.raises(NotInvertibleError):
        inverse(point_map_from_table(line, line, [0, 0, 0]))


def test_point_map_validation():
    """Test the checks on raw index tables."""
    line = enumerate_points(parse_ring("Z4"))
    with pytest.raises(MapFileError):
        point_map_from_table(line, line, [0, 1, 2, 3, 4])
    with pytest.raises(MapFileError):
        point_map_from_table(line, line, [0, 1, 2, 3, 4, 6])
    with pytest.raises(MapFileError):
        point_map_from_table(line, line, [True, 1, 2, 3, 4, 5])
    with pytest.raises(MapFileError):
        point_map_from_table(line, line, "012345")


def test_predicates_on_a_raw_swap():
    """Test that swapping two non-parallel points of Z/4 is not a dis-isomorphism."""
    line = enumerate_points(parse_ring("Z4"))
    table = list(range(6))
    table[0], table[1] = 1, 0
    f = point_map_from_table(line, line, table)
    assert not is_dis_isomorphism(f)
    assert not is_par_isomorphism(f)
    assert check_semilocal_corollary(f) is False


def test_swapping_parallel_points_is_a_dis_automorphism():
    """Test that points with equal neighbourhoods can be exchanged."""
    line = enumerate_points(parse_ring("Z4"))
    i, j = next(c for c in line.parallel_classes() if len(c) == 2)
    table = list(range(6))
    table[i], table[j] = j, i
    f = point_map_from_table(line, line, table)
    assert is_dis_isomorphism(f)
    assert is_par_isomorphism(f)
    assert check_semilocal_corollary(f) is True
    assert induced_quotient_map(f).table == (0, 1, 2)


@pytest.mark.parametrize(
    "spec,count",
    [
        ("GF(2)", 6),
        ("GF(3)", 24),
        ("GF(2^2)", 120),
        ("Z4", 48),
        ("dual(GF(2))", 48),
        ("GF(2) x GF(2)", 72),
        ("Z6", 144),
    ],
)
def test_dis_automorphism_counts(spec, count):
    """Test group orders on small lines."""
    result = count_dis_automorphisms(enumerate_points(parse_ring(spec)))
    assert result.count == count
    assert result.method == "listing"


def test_orbit_stabilizer_agrees_with_listing():
    """Test that both counting paths give 48 on P(Z4)."""
    line = enumerate_points(parse_ring("Z4"))
    result = count_dis_automorphisms(line, listing_cap=4)
    assert result.method == "orbit-stabilizer"
    assert result.count == 48


@pytest.mark.slow
def test_m2_gf2_automorphism_count(m2_line):
    """Test that P(M(2, GF(2))) has 2 |GL(4, 2)| dis-automorphisms."""
    assert count_dis_automorphisms(m2_line, listing_cap=0).count == 40320


def test_counting_caps():
    """Test the listing and counting caps."""
    line = enumerate_points(parse_ring("Z4"))
    with pytest.raises(CapExceededError):
        count_dis_automorphisms(line, listing_cap=4, counting_cap=4)
    with pytest.raises(CapExceededError):
        enumerate_dis_isomorphisms(line, line, cap=3)
    set_config(get_config().with_overrides(listing_cap=2, counting_cap=2))
    with pytest.raises(CapExceededError):
        count_dis_automorphisms(line)


def test_induced_maps_check_the_kind():
    """Test that each construction refuses maps of the wrong kind."""
    R = parse_ring("M(2,GF(2))")
    with pytest.raises(MapKindError):
        induced_by_hom(transpose_map(R))
    with pytest.raises(MapKindError):
        induced_by_antihom(identity_ring_map(R))
    with pytest.raises(MapKindError):
        induced_by_jordan(classify_map(R, R, [0] * 16))


def test_induced_maps_agree_on_commutative_rings():
    """Test that hom, anti-hom and Jordan constructions coincide for the identity of Z/4."""
    alpha = identity_ring_map(parse_ring("Z4"))
    hom = induced_by_hom(alpha)
    assert induced_by_antihom(alpha).table == hom.table
    assert induced_by_jordan(alpha).table == hom.table
    assert hom.table == tuple(range(6))


def test_transpose_induces_a_dis_automorphism(m2_line):
    """Test the anti-homomorphism construction on M(2, GF(2))."""
    f = induced_map(transpose_map(m2_line.ring), m2_line, m2_line)
    assert f.provenance == Provenance.ANTIHOM_INDUCED
    assert is_dis_isomorphism(f)
    assert is_adj_isomorphism(f)
    assert is_grassmann_collineation(f)
    assert induced_by_jordan(transpose_map(m2_line.ring), m2_line, m2_line).table == f.table


def test_factorize_identity(m2_line):
    """Test the certificate of the identity."""
    certificate = factorize_dis_automorphism(identity_map(m2_line))
    assert certificate.kind == CertificateKind.ISOMORPHISM
    assert certificate.recompose(m2_line).table == tuple(range(35))


def test_factorize_transpose(m2_line):
    """Test that the transpose map is classified as anti-isomorphism induced."""
    f = induced_map(transpose_map(m2_line.ring), m2_line, m2_line)
    certificate = factorize_dis_automorphism(f)
    assert certificate.kind == CertificateKind.ANTI_ISOMORPHISM
    assert certificate.recompose(m2_line).table == f.table


def test_factorize_projectivity(m2_line):
    """Test that a projectivity factors with alpha the identity."""
    R = m2_line.ring
    one = R.one
    x = R.parse("[[0,1],[1,1]]")
    f = projectivity(m2_line, ((one, R.zero), (x, one)))
    certificate = factorize_dis_automorphism(f)
    assert certificate.kind == CertificateKind.ISOMORPHISM
    assert certificate.alpha.table == tuple(R.elements())
    assert certificate.recompose(m2_line).table == f.table


@pytest.mark.slow
def test_factorize_composite_with_field_automorphism():
    """Test a semilinear map over M(2, GF(4)) followed by a projectivity."""
    R = parse_ring("M(2,GF(2^2))")
    line = enumerate_points(R)
    frobenius = field_automorphisms(R.base)[1]
    alpha = entrywise_map(R, frobenius)
    f = compose(induced_by_hom(alpha, line, line), projectivity(line, ((R.zero, R.one), (R.one, R.zero))))
    certificate = factorize_dis_automorphism(f)
    assert certificate.kind == CertificateKind.ISOMORPHISM
    assert certificate.beta == 1
    assert certificate.recompose(line).table == f.table


def test_factorize_preconditions(m2_line):
    """Test rejection of fields and of non dis-automorphisms."""
    field_line = enumerate_points(parse_ring("GF(2^2)"))
    with pytest.raises(PreconditionError):
        factorize_dis_automorphism(identity_map(field_line))
    table = list(range(35))
    table[0], table[1] = 1, 0
    with pytest.raises(PreconditionError):
        factorize_dis_automorphism(point_map_from_table(m2_line, m2_line, table))


def test_sweep_factorizations(m2_line):
    """Test a sweep over a handful of explicit maps."""
    R = m2_line.ring
    x = R.parse("[[1,1],[0,1]]")
    maps = [
        identity_map(m2_line),
        projectivity(m2_line, ((R.zero, R.one), (R.one, R.zero))),
        projectivity(m2_line, ((R.one, x), (R.zero, R.one))),
        induced_map(transpose_map(R), m2_line, m2_line),
    ]
    result = sweep_factorizations(m2_line, maps=maps)
    assert result.failures == []
    assert result.checked == 4
    assert not result.sampled
    assert result.kinds == {"isomorphism": 3, "anti-isomorphism": 1}
    sampled = sweep_factorizations(m2_line, maps=maps, sample=2, seed=1)
    assert sampled.sampled and sampled.checked == 2


@pytest.mark.slow
def test_full_factorization_sweep(m2_line):
    """Test that every dis-automorphism of P(M(2, GF(2))) factors."""
    result = sweep_factorizations(m2_line)
    assert result.total == 40320
    assert result.failures == []
    assert result.kinds == {"isomorphism": 20160, "anti-isomorphism": 20160}


def test_product_swap_decomposition():
    """Test that the factor swap of GF(2) x GF(2) is recognised."""
    f = _swap_map("GF(2) x GF(2)")
    assert is_dis_isomorphism(f)
    decomposition = decompose_product_dis_iso(f)
    assert decomposition.sigma == (1, 0)
    assert decomposition.recompose().table == f.table


def test_product_decomposition_of_z6_uses_transport():
    """Test that Z/6 is split along its central idempotents."""
    line = enumerate_points(parse_ring("Z6"))
    product_line, transport = product_transport(line)
    assert transport is not None
    assert [f.order for f in product_line.ring.factors] == [2, 3]
    f = projectivity(line, ((0, 1), (1, 0)))
    decomposition = decompose_product_dis_iso(f)
    assert decomposition.sigma == (0, 1)
    assert decomposition.recompose().table == f.table


def test_product_decomposition_needs_a_splitting_ring():
    """Test that a local ring is rejected."""
    f = identity_map(enumerate_points(parse_ring("Z4")))
    with pytest.raises(PreconditionError):
        decompose_product_dis_iso(f)


def test_product_certificate_needs_matrix_size_two():
    """Test that field factors are rejected for product certificates."""
    with pytest.raises(PreconditionError):
        factorize_product_dis_iso(_swap_map("GF(2) x GF(2)"))


@pytest.mark.slow
def test_product_certificate_of_a_swap():
    """Test the assembled certificate of the factor swap on M(2, GF(2)) x M(2, GF(2))."""
    f = _swap_map("M(2,GF(2)) x M(2,GF(2))")
    certificate = factorize_product_dis_iso(f)
    assert certificate.kind == CertificateKind.PRODUCT
    assert certificate.sigma == (1, 0)
    assert certificate.alpha.is_jordan
    assert certificate.recompose(f.source).table == f.table


def test_wreath_structure():
    """Test the order identity over Z/4 and the dual numbers."""
    for spec in ("Z4", "dual(GF(2))"):
        report = verify_wreath_structure(parse_ring(spec))
        assert report.holds
        assert report.radical_size == 2
        assert report.quotient_points == 3
        assert report.quotient_count == 6
        assert report.expected == 48


def test_regular_representation_is_a_dis_morphism():
    """Test an injective dis-morphism that does not preserve parallelism."""
    rep = regular_representation(parse_ring("dual(GF(2))"))
    f = induced_by_hom(rep)
    assert len(f.source) == 6 and len(f.target) == 35
    assert len(set(f.table)) == 6
    assert is_dis_morphism(f)
    assert not is_dis_isomorphism(f)
    assert not is_par_morphism(f)
