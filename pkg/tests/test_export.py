"""Unit tests for JSON and DOT exports and map files."""

import json

import pytest

from distantline.core.errors import MapFileError
from distantline.core.grassmann import grassmann_space
from distantline.core.morphisms import factorize_dis_automorphism, identity_map, projectivity
from distantline.core.projline import enumerate_points
from distantline.export.lines import (
    certificate_export,
    graph_to_dot,
    graph_to_json,
    line_export,
    load_map_file,
    map_export,
    save_map_file,
    space_export,
)
from distantline.spec import parse_ring


@pytest.fixture
def z4_line():
    return enumerate_points(parse_ring("Z4"))


def test_line_export(z4_line):
    """Test the exported points, relations and ring metadata."""
    document = line_export(z4_line)
    assert document.format == 1
    assert document.ring.order == 4
    assert document.ring.structure_tag == "zmod"
    assert [p.literal for p in document.points][:2] == ["R(0, 1)", "R(1, 0)"]
    assert len(document.parallel_classes) == 3
    assert [0, 1] in document.distant_edges
    assert document.adjacency_edges == document.distant_edges
    assert line_export(z4_line, include_adjacency=False).adjacency_edges is None


def test_line_export_keeps_constructor_parameters():
    """Test that extra ring metadata survives the round trip through the model."""
    document = line_export(enumerate_points(parse_ring("GF(2^2)"))).model_dump()
    assert document["ring"]["modulus_poly"] == "x^2 + x + 1"
    assert document["ring"]["k"] == 2


def test_graph_to_dot(z4_line):
    """Test the DOT rendering of the distant graph."""
    text = graph_to_dot(z4_line)
    assert text.startswith('graph "distant" {')
    assert '0 [label="R(0, 1)"];' in text
    assert "    0 -- 1;" in text
    assert text.rstrip().endswith("}")


def test_graph_to_json(z4_line):
    """Test the JSON rendering of the adjacency graph."""
    document = json.loads(graph_to_json(z4_line, "adjacency"))
    assert document["relation"] == "adjacency"
    assert document["ring"] == "Z4"
    assert len(document["nodes"]) == 6
    assert [0, 1] in document["edges"]


def test_unknown_relation_raises(z4_line):
    """Test that only distant and adjacency graphs can be exported."""
    with pytest.raises(ValueError):
        graph_to_dot(z4_line, "parallel")


def test_map_files(tmp_path, z4_line):
    """Test writing and reading map files."""
    f = projectivity(z4_line, ((0, 1), (1, 0)))
    path = save_map_file(tmp_path / "maps" / "swap.json", f.table)
    assert load_map_file(path, z4_line, z4_line).table == f.table

    wrapped = tmp_path / "wrapped.json"
    wrapped.write_text(map_export(f).model_dump_json(), encoding="utf-8")
    assert load_map_file(wrapped, z4_line, z4_line).table == f.table


def test_map_file_errors(tmp_path, z4_line):
    """Test malformed, out-of-range and non-bijective map files."""
    malformed = tmp_path / "malformed.json"
    malformed.write_text("[0, 1,", encoding="utf-8")
    with pytest.raises(MapFileError):
        load_map_file(malformed, z4_line, z4_line)

    out_of_range = tmp_path / "range.json"
    out_of_range.write_text("[0, 1, 2, 3, 4, 9]", encoding="utf-8")
    with pytest.raises(MapFileError):
        load_map_file(out_of_range, z4_line, z4_line)

    constant = tmp_path / "constant.json"
    constant.write_text("[0, 0, 0, 0, 0, 0]", encoding="utf-8")
    with pytest.raises(MapFileError):
        load_map_file(constant, z4_line, z4_line)
    assert load_map_file(constant, z4_line, z4_line, require_bijection=False).table == (0,) * 6

    with pytest.raises(MapFileError):
        load_map_file(tmp_path / "missing.json", z4_line, z4_line)


def test_map_export(z4_line):
    """Test the map document fields."""
    document = map_export(identity_map(z4_line))
    assert document.source == "Z4"
    assert document.provenance == "projectivity"
    assert document.note == "identity"


def test_certificate_export():
    """Test the exported certificate of a projectivity over M(2, GF(2))."""
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    R = line.ring
    f = projectivity(line, ((R.zero, R.one), (R.one, R.zero)))
    exported = certificate_export(factorize_dis_automorphism(f), line)
    assert exported.kind == "isomorphism"
    assert exported.alpha_kind == "homomorphism"
    assert exported.alpha == list(range(16))
    assert exported.sigma is None
    assert len(exported.gamma_literals) == 2
    assert all(literal.startswith("[[") for row in exported.gamma_literals for literal in row)


def test_space_export():
    """Test the export of the Grassmann space over GF(2)."""
    space = grassmann_space(enumerate_points(parse_ring("M(2,GF(2))"))).space
    document = space_export(space)
    assert document.points == 35
    assert len(document.lines) == 105
