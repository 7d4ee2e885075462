"""Unit tests for ring specification parsing."""

import pytest

from distantline.core.errors import RingConstructionError, SpecParameterError, SpecSyntaxError
from distantline.core.rings import DualRing, GFRing, MatrixRing, ProductRing, ZModRing
from distantline.spec import RingSpec, parse_ring, parse_ring_spec


def test_atoms():
    """Test each constructor form."""
    assert parse_ring_spec("Z4") == RingSpec("zmod", (4,))
    assert parse_ring_spec("GF(2)") == RingSpec("gf", (2, 1))
    assert parse_ring_spec("GF(2^3)") == RingSpec("gf", (2, 3))
    assert parse_ring_spec("dual(GF(3))") == RingSpec("dual", children=(RingSpec("gf", (3, 1)),))
    spec = parse_ring_spec("M(2,GF(2))")
    assert spec.kind == "matrix"
    assert spec.args == (2,)
    assert spec.pretty() == "M(2, GF(2))"


def test_products_and_whitespace():
    """Test products and insensitivity to spacing."""
    spec = parse_ring_spec("  M( 2 , GF(2) )x Z4 ")
    assert spec.kind == "product"
    assert [c.kind for c in spec.children] == ["matrix", "zmod"]
    assert str(spec) == "M(2, GF(2)) x Z4"
    assert spec.children[1].offset > spec.children[0].offset


def test_built_rings():
    """Test the ring classes behind each spec."""
    assert isinstance(parse_ring("Z4"), ZModRing)
    assert isinstance(parse_ring("GF(2^2)"), GFRing)
    assert isinstance(parse_ring("M(2,GF(2))"), MatrixRing)
    assert isinstance(parse_ring("dual(GF(2))"), DualRing)
    product = parse_ring("Z4 x GF(3)")
    assert isinstance(product, ProductRing)
    assert product.name == "Z4 x GF(3)"
    assert parse_ring("M(2, GF(2))").name == "M(2,GF(2))"


def test_equal_factors_share_one_ring():
    """Test that repeated subexpressions build a single ring object."""
    R = parse_ring("M(2,GF(2)) x M(2,GF(2))")
    assert R.factors[0] is R.factors[1]
    assert R.order == 256


@pytest.mark.parametrize(
    "text,offset",
    [
        ("Q5", 0),
        ("GF(2", 4),
        ("Z4 x", 4),
        ("Z4 × Z2", 3),
        ("Z4\u00a0x\u00a0", 7),
        ("", 0),
        ("Z4 Z2", 3),
        ("M(2 GF(2))", 4),
    ],
)
def test_syntax_error_offsets(text, offset):
    """Test that errors carry the byte offset of the offending token."""
    with pytest.raises(SpecSyntaxError) as info:
        parse_ring_spec(text)
    assert info.value.offset == offset


@pytest.mark.parametrize("text", ["Z1", "GF(4)", "GF(2^0)", "M(2, Z4)", "dual(Z4)", "M(0,GF(2))"])
def test_unsupported_parameters(text):
    """Test that well-formed but unsupported specs fail at construction."""
    with pytest.raises(RingConstructionError):
        parse_ring(text)


def test_order_cap_applies_to_specs():
    """Test that a spec above the ring order cap is refused."""
    with pytest.raises(RingConstructionError):
        parse_ring("M(3,GF(2)) x M(3,GF(2))")


@pytest.mark.parametrize(
    "text,offset",
    [
        ("Z2 x GF(6^1)", 5),
        ("Z2 x M(4,GF(2))", 5),
        ("GF(2) x dual(Z4)", 8),
        ("M(3,GF(2)) x M(3,GF(2))", 0),
    ],
)
def test_unsupported_parameters_carry_offsets(text, offset):
    """Test that constructor errors point at the refusing constructor."""
    with pytest.raises(SpecParameterError) as info:
        parse_ring(text)
    assert info.value.offset == offset
    assert isinstance(info.value, SpecSyntaxError)
