"""Lines, maps and certificates as JSON documents and graph files."""

import json
import logging
from pathlib import Path
from typing import List, Sequence, Union

from distantline.core.errors import MapFileError
from distantline.core.geometry import PartialLinearSpace
from distantline.core.morphisms import DecompositionCertificate, PointMap, point_map_from_table
from distantline.core.projline import ProjectiveLine, point_literal
from distantline.core.rings import ring_meta
from distantline.export.models import (
    CertificateExport,
    LineExport,
    PointMapExport,
    PointModel,
    RingMeta,
    SpaceExport,
)

logger = logging.getLogger(__name__)

RELATIONS = ("distant", "adjacency")


def line_export(line: ProjectiveLine, include_adjacency: bool = True) -> LineExport:
    """Points in canonical order with distant, parallel and (optionally) adjacency data."""
    points = [
        PointModel(index=i, rep_a=p.a, rep_b=p.b, literal=point_literal(p))
        for i, p in enumerate(line.points)
    ]
    return LineExport(
        ring=RingMeta(**ring_meta(line.ring)),
        points=points,
        distant_edges=[list(e) for e in line.edges(line.distant_bits)],
        parallel_classes=[sorted(c) for c in line.parallel_classes()],
        adjacency_edges=[list(e) for e in line.edges(line.adjacency_bits())] if include_adjacency else None,
    )


def space_export(space: PartialLinearSpace) -> SpaceExport:
    return SpaceExport(**space.to_json())


def _relation_bits(line: ProjectiveLine, which: str) -> List[int]:
    if which not in RELATIONS:
        raise ValueError(f"unknown relation {which!r}; choose from {', '.join(RELATIONS)}")
    return line.distant_bits if which == "distant" else line.adjacency_bits()


def graph_to_dot(line: ProjectiveLine, which: str = "distant") -> str:
    """Undirected DOT graph of a relation, vertices labelled R(a, b)."""
    edges = line.edges(_relation_bits(line, which))
    lines = [f'graph "{which}" {{']
    lines.append(f'    label="{which} graph of P({line.ring.name})";')
    for i, p in enumerate(line.points):
        lines.append(f'    {i} [label="{point_literal(p)}"];')
    for i, j in edges:
        lines.append(f"    {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(line: ProjectiveLine, which: str = "distant") -> str:
    edges = line.edges(_relation_bits(line, which))
    document = {
        "format": 1,
        "ring": line.ring.name,
        "relation": which,
        "nodes": [{"id": i, "label": point_literal(p)} for i, p in enumerate(line.points)],
        "edges": [list(e) for e in edges],
    }
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


# Maps

def map_export(f: PointMap) -> PointMapExport:
    return PointMapExport(
        source=f.source.ring.name,
        target=f.target.ring.name,
        table=list(f.table),
        provenance=f.provenance.value,
        note=f.note,
    )


def certificate_export(certificate: DecompositionCertificate, line: ProjectiveLine) -> CertificateExport:
    R = line.ring
    gamma = certificate.gamma
    components = []
    if certificate.component_certs:
        factor_lines = line.factor_lines or ()
        components = [
            certificate_export(c, factor_lines[k]) for k, c in enumerate(certificate.component_certs)
        ]
    return CertificateExport(
        kind=certificate.kind.value,
        alpha=list(certificate.alpha.table) if certificate.alpha else None,
        alpha_kind=certificate.alpha.kind.name.lower() if certificate.alpha else None,
        gamma=[list(row) for row in gamma] if gamma else None,
        gamma_literals=[[R.literal(x) for x in row] for row in gamma] if gamma else None,
        beta=certificate.beta,
        sigma=list(certificate.sigma) if certificate.sigma is not None else None,
        components=components,
    )


def load_map_file(
    path: Union[str, Path],
    source: ProjectiveLine,
    target: ProjectiveLine,
    require_bijection: bool = True,
) -> PointMap:
    """Read a JSON array of target indices over the source's canonical point order.

    Raises:
        MapFileError: If the file is unreadable, malformed, out of range, or
            (with ``require_bijection``) not a bijection.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise MapFileError(f"cannot read map file {path}: {e}") from e
    if isinstance(data, dict) and "table" in data:
        data = data["table"]
    f = point_map_from_table(source, target, data)
    if require_bijection and not f.is_bijective():
        raise MapFileError(f"map in {path} is not a bijection")
    return f


def save_map_file(path: Union[str, Path], table: Sequence[int]) -> str:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(list(table)) + "\n", encoding="utf-8")
    logger.debug("Wrote map file %s", path)
    return str(path)
