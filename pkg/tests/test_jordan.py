"""Unit tests for Jordan isomorphisms."""

import pytest

from distantline.core.config import get_config, set_config
from distantline.core.errors import CapExceededError, MapKindError
from distantline.core.jordan import classify_jordan, enumerate_jordan_isomorphisms, recompose_jordan
from distantline.core.morphisms import CertificateKind, induced_by_jordan, is_dis_isomorphism
from distantline.core.rings import MapKind, classify_map, transpose_map
from distantline.spec import parse_ring


def test_m2_gf2_jordan_automorphisms():
    """Test that M(2, GF(2)) has six inner automorphisms and six anti-automorphisms."""
    R = parse_ring("M(2,GF(2))")
    omegas = enumerate_jordan_isomorphisms(R)
    assert len(omegas) == 12
    kinds = [omega.kind for omega in omegas]
    assert kinds.count(MapKind.HOMOMORPHISM) == 6
    assert kinds.count(MapKind.ANTI_HOMOMORPHISM) == 6
    assert [omega.table for omega in omegas] == sorted(omega.table for omega in omegas)


def test_classification_recomposes():
    """Test that every classified map is rebuilt from (beta, G)."""
    R = parse_ring("M(2,GF(2))")
    for omega in enumerate_jordan_isomorphisms(R):
        classification = classify_jordan(omega)
        expected = (
            CertificateKind.ISOMORPHISM if omega.kind == MapKind.HOMOMORPHISM else CertificateKind.ANTI_ISOMORPHISM
        )
        assert classification.kind == expected
        assert classification.beta == 0
        assert recompose_jordan(classification, R).table == omega.table


def test_transpose_is_classified_as_anti():
    """Test that the transpose needs G = I up to scalars."""
    R = parse_ring("M(2,GF(2))")
    classification = classify_jordan(transpose_map(R))
    assert classification.kind == CertificateKind.ANTI_ISOMORPHISM
    assert classification.G == ((1, 0), (0, 1))


def test_product_of_fields():
    """Test that GF(2) x GF(2) has the identity and the swap."""
    R = parse_ring("GF(2) x GF(2)")
    omegas = enumerate_jordan_isomorphisms(R)
    assert len(omegas) == 2
    sigmas = sorted(classify_jordan(omega).sigma for omega in omegas)
    assert sigmas == [(0, 1), (1, 0)]


def test_field_automorphisms_of_gf4():
    """Test that the Jordan automorphisms of GF(4) are its Frobenius powers."""
    omegas = enumerate_jordan_isomorphisms(parse_ring("GF(2^2)"))
    assert len(omegas) == 2
    assert sorted(classify_jordan(omega).beta for omega in omegas) == [0, 1]


def test_no_jordan_maps_between_different_orders():
    """Test rings of different order."""
    assert enumerate_jordan_isomorphisms(parse_ring("Z4"), parse_ring("GF(2)")) == []


def test_jordan_cap():
    """Test that the enumeration honours the cap."""
    set_config(get_config().with_overrides(jordan_cap=8))
    with pytest.raises(CapExceededError):
        enumerate_jordan_isomorphisms(parse_ring("M(2,GF(2))"))


def test_classification_needs_a_jordan_isomorphism():
    """Test that a non-unital additive map is rejected."""
    R = parse_ring("M(2,GF(2))")
    with pytest.raises(MapKindError):
        classify_jordan(classify_map(R, R, [0] * 16))


def test_mixed_product_map():
    """Test (A, B) -> (A, B^T), which is Jordan but neither iso nor anti-iso."""
    R = parse_ring("M(2,GF(2)) x M(2,GF(2))")
    M = R.factors[0]
    T = transpose_map(M).table
    table = [R.compose([a, T[b]]) for a, b in (R.decompose(x) for x in R.elements())]
    omega = classify_map(R, R, table)
    assert omega.kind == MapKind.JORDAN
    classification = classify_jordan(omega)
    assert classification.kind == CertificateKind.PRODUCT
    assert classification.sigma == (0, 1)
    assert [c.kind for c in classification.components] == [
        CertificateKind.ISOMORPHISM,
        CertificateKind.ANTI_ISOMORPHISM,
    ]
    assert recompose_jordan(classification, R).table == omega.table


@pytest.mark.slow
def test_mixed_product_map_induces_a_dis_automorphism():
    """Test the point map of (A, B) -> (A, B^T) on a line of 1225 points."""
    R = parse_ring("M(2,GF(2)) x M(2,GF(2))")
    M = R.factors[0]
    T = transpose_map(M).table
    table = [R.compose([a, T[b]]) for a, b in (R.decompose(x) for x in R.elements())]
    f = induced_by_jordan(classify_map(R, R, table))
    assert len(f.table) == 1225
    assert is_dis_isomorphism(f)
