"""Distant-morphisms between projective lines and their factorization certificates."""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from distantline.core.config import get_config
from distantline.core.errors import (
    CapExceededError,
    MapFileError,
    MapKindError,
    NotInvertibleError,
    PreconditionError,
    RingMismatchError,
    TheoremViolationError,
)
from distantline.core.geometry import Collineation, compose_product_collineation, decompose_product_collineation
from distantline.core.grassmann import element_from_rows, factor_lines, grassmann_space, matrix_shape, segre_model
from distantline.core.linalg import Subspace
from distantline.core.projline import (
    Matrix2,
    ProjectiveLine,
    ProjPoint,
    _iter_bits,
    enumerate_points,
    identity_matrix,
    mat_mul,
    matrix_inverse,
    row_times,
)
from distantline.core.rings import (
    FiniteRing,
    MapKind,
    ProductRing,
    RingMapTable,
    central_decomposition,
    classify_map,
    compose_maps,
    entrywise_map,
    field_automorphisms,
    field_isomorphism,
    galois_field_of_order,
    is_field,
    jacobson_radical,
    make_product,
    transpose_map,
)
from distantline.core.search import (
    AutomorphismCount,
    count_automorphisms_orbit_stabilizer,
    list_isomorphisms,
)

logger = logging.getLogger(__name__)


class Provenance(Enum):
    """How a point map was constructed."""

    PROJECTIVITY = "projectivity"
    HOM_INDUCED = "hom-induced"
    ANTIHOM_INDUCED = "antihom-induced"
    JORDAN_INDUCED = "jordan-induced"
    COMPOSITE = "composite"
    RAW = "raw"


@dataclass(frozen=True)
class PointMap:
    """A total map between the point sets of two lines, as an index table."""

    source: ProjectiveLine = field(repr=False)
    target: ProjectiveLine = field(repr=False)
    table: Tuple[int, ...]
    provenance: Provenance = Provenance.RAW
    note: str = ""

    def __call__(self, p: ProjPoint) -> ProjPoint:
        return self.target.points[self.table[self.source.index_of(p)]]

    def is_bijective(self) -> bool:
        return len(self.source) == len(self.target) and len(set(self.table)) == len(self.table)


def point_map_from_table(source: ProjectiveLine, target: ProjectiveLine, table: Sequence[int]) -> PointMap:
    """Validate a raw index table.

    Raises:
        MapFileError: If the table has the wrong length or an index is out of range.
    """
    if not isinstance(table, (list, tuple)):
        raise MapFileError("a point map must be a list of target indices")
    if len(table) != len(source):
        raise MapFileError(f"a point map over {len(source)} points has {len(table)} entries")
    for x in table:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(target):
            raise MapFileError(f"target index {x!r} is out of range 0..{len(target) - 1}")
    return PointMap(source, target, tuple(table))


def identity_map(line: ProjectiveLine) -> PointMap:
    return PointMap(line, line, tuple(range(len(line))), Provenance.PROJECTIVITY, "identity")


def compose(f: PointMap, g: PointMap) -> PointMap:
    """Apply f, then g."""
    if f.target is not g.source:
        raise RingMismatchError("point maps are not composable")
    return PointMap(f.source, g.target, tuple(g.table[y] for y in f.table), Provenance.COMPOSITE)


def inverse(f: PointMap) -> PointMap:
    """Inverse of a bijective point map.

    Raises:
        NotInvertibleError: If f is not bijective.
    """
    if not f.is_bijective():
        raise NotInvertibleError("point map is not bijective")
    table = [0] * len(f.table)
    for x, y in enumerate(f.table):
        table[y] = x
    return PointMap(f.target, f.source, tuple(table), Provenance.COMPOSITE, "inverse")


# Constructions

def projectivity(line: ProjectiveLine, gamma: Matrix2) -> PointMap:
    """R(a, b) -> R((a, b) gamma).

    Raises:
        NotInvertibleError: If gamma is singular.
    """
    R = line.ring
    matrix_inverse(R, gamma)
    table = tuple(line.index_of_pair(*row_times(R, p.a, p.b, gamma)) for p in line.points)
    return PointMap(line, line, table, Provenance.PROJECTIVITY)


def _lines_for(alpha: RingMapTable, source: Optional[ProjectiveLine], target: Optional[ProjectiveLine]):
    source = source or enumerate_points(alpha.source)
    target = target or enumerate_points(alpha.target)
    if source.ring is not alpha.source or target.ring is not alpha.target:
        raise RingMismatchError("ring map and lines are over different rings")
    return source, target


def induced_by_hom(
    alpha: RingMapTable,
    source: Optional[ProjectiveLine] = None,
    target: Optional[ProjectiveLine] = None,
) -> PointMap:
    """R(a, b) -> R'(alpha(a), alpha(b)) for a unital homomorphism.

    Raises:
        MapKindError: If alpha is not a homomorphism.
    """
    if alpha.kind != MapKind.HOMOMORPHISM:
        raise MapKindError(f"expected a homomorphism, got {alpha.kind.name.lower()}")
    source, target = _lines_for(alpha, source, target)
    t = alpha.table
    table = tuple(target.index_of_pair(t[p.a], t[p.b]) for p in source.points)
    return PointMap(source, target, table, Provenance.HOM_INDUCED)


def induced_by_antihom(
    alpha: RingMapTable,
    source: Optional[ProjectiveLine] = None,
    target: Optional[ProjectiveLine] = None,
) -> PointMap:
    """p -> R'(-alpha(w), alpha(v)) with (v, w) the second column of M^-1.

    M is the stored completion of p. A second completion [[1,0],[1,u]] M
    with a unit u != 1 (when one exists) must give the same image.

    Raises:
        MapKindError: If alpha is not an anti-homomorphism.
        TheoremViolationError: If the two completions disagree.
    """
    if alpha.kind != MapKind.ANTI_HOMOMORPHISM and not alpha.also_anti:
        raise MapKindError(f"expected an anti-homomorphism, got {alpha.kind.name.lower()}")
    source, target = _lines_for(alpha, source, target)
    R, R2 = source.ring, target.ring
    t = alpha.table
    others = [u for u in R.units() if u != R.one]
    u = others[0] if others else R.one
    u_inv = R.unit_inverses()[u]
    shear = ((R.one, R.zero), (R.one, u))
    shear_inv = ((R.one, R.zero), (R.neg(u_inv), u_inv))

    table = []
    for i, p in enumerate(source.points):
        N = source.frames[i]
        v, w = N[0][1], N[1][1]
        image = target.index_of_pair(R2.neg(t[w]), t[v])

        M = ((p.a, p.b), p.witness)
        M2 = mat_mul(R, shear, M)
        N2 = mat_mul(R, N, shear_inv)
        if mat_mul(R, M2, N2) != identity_matrix(R):
            raise TheoremViolationError("second completion inverse is wrong")
        v2, w2 = N2[0][1], N2[1][1]
        if target.index_of_pair(R2.neg(t[w2]), t[v2]) != image:
            raise TheoremViolationError(f"anti-homomorphism image of point {i} depends on the completion")
        table.append(image)
    return PointMap(source, target, tuple(table), Provenance.ANTIHOM_INDUCED)


def induced_by_jordan(
    alpha: RingMapTable,
    source: Optional[ProjectiveLine] = None,
    target: Optional[ProjectiveLine] = None,
) -> PointMap:
    """R(ab - 1, a) -> R'(alpha(a) alpha(b) - 1, alpha(a)).

    Every representation of every point is tried; all must agree.

    Raises:
        MapKindError: If alpha is not a Jordan homomorphism.
        TheoremViolationError: If two representations of a point disagree.
    """
    if not alpha.is_jordan:
        raise MapKindError(f"expected a Jordan homomorphism, got {alpha.kind.name.lower()}")
    source, target = _lines_for(alpha, source, target)
    R, R2 = source.ring, target.ring
    t = alpha.table
    table: List[Optional[int]] = [None] * len(source)
    for a in R.elements():
        ta = t[a]
        for b in R.elements():
            i = source.index_of_pair(R.sub(R.mul(a, b), R.one), a)
            image = target.index_of_pair(R2.sub(R2.mul(ta, t[b]), R2.one), ta)
            if table[i] is None:
                table[i] = image
            elif table[i] != image:
                raise TheoremViolationError(f"Jordan-induced image of point {i} depends on its representation")
    if any(x is None for x in table):
        raise TheoremViolationError("some point has no representation R(ab - 1, a)")
    return PointMap(source, target, tuple(table), Provenance.JORDAN_INDUCED)


def induced_map(alpha: RingMapTable, source=None, target=None) -> PointMap:
    """The point map of a ring map, using the construction its kind licenses."""
    if alpha.kind == MapKind.HOMOMORPHISM:
        return induced_by_hom(alpha, source, target)
    if alpha.kind == MapKind.ANTI_HOMOMORPHISM:
        return induced_by_antihom(alpha, source, target)
    return induced_by_jordan(alpha, source, target)


# Predicates

def _mapped_bits(bits: int, table: Sequence[int]) -> int:
    out = 0
    for j in _iter_bits(bits):
        out |= 1 << table[j]
    return out


def is_dis_morphism(f: PointMap) -> bool:
    """Distant points go to distant points."""
    source_bits, target_bits = f.source.distant_bits, f.target.distant_bits
    t = f.table
    return all(_mapped_bits(bits, t) & ~target_bits[t[i]] == 0 for i, bits in enumerate(source_bits))


def is_dis_isomorphism(f: PointMap) -> bool:
    """Bijective, preserving distant and non-distant pairs."""
    if not f.is_bijective():
        return False
    source_bits, target_bits = f.source.distant_bits, f.target.distant_bits
    t = f.table
    return all(_mapped_bits(bits, t) == target_bits[t[i]] for i, bits in enumerate(source_bits))


def _class_map(f: PointMap) -> Optional[Dict[int, int]]:
    source_cls, target_cls = f.source.parallel_class_ids, f.target.parallel_class_ids
    mapping: Dict[int, int] = {}
    for i, c in enumerate(source_cls):
        image = target_cls[f.table[i]]
        if mapping.setdefault(c, image) != image:
            return None
    return mapping


def is_par_morphism(f: PointMap) -> bool:
    """Parallel points go to parallel points."""
    return _class_map(f) is not None


def is_par_isomorphism(f: PointMap) -> bool:
    if not f.is_bijective():
        return False
    mapping = _class_map(f)
    return mapping is not None and len(set(mapping.values())) == len(mapping)


def is_adj_morphism(f: PointMap) -> bool:
    source_bits, target_bits = f.source.adjacency_bits(), f.target.adjacency_bits()
    t = f.table
    return all(_mapped_bits(bits, t) & ~target_bits[t[i]] == 0 for i, bits in enumerate(source_bits))


def is_adj_isomorphism(f: PointMap) -> bool:
    if not f.is_bijective():
        return False
    source_bits, target_bits = f.source.adjacency_bits(), f.target.adjacency_bits()
    t = f.table
    return all(_mapped_bits(bits, t) == target_bits[t[i]] for i, bits in enumerate(source_bits))


def is_grassmann_collineation(f: PointMap) -> bool:
    """Whether f carries pencils onto pencils of the Grassmann model."""
    space_s = grassmann_space(f.source).space
    space_t = grassmann_space(f.target).space
    return Collineation(space_s, space_t, f.table).is_collineation()


# Enumeration

def enumerate_dis_isomorphisms(
    source: ProjectiveLine, target: ProjectiveLine, cap: Optional[int] = None
) -> List[PointMap]:
    """All distant-isomorphisms, in lexicographic order of their tables.

    Raises:
        CapExceededError: If the line has more points than the listing cap.
    """
    cap = cap if cap is not None else get_config().listing_cap
    if len(source) > cap:
        raise CapExceededError("dis-isomorphism listing", len(source), cap)
    tables = list_isomorphisms(source.distant_bits, target.distant_bits)
    return [PointMap(source, target, tuple(t)) for t in tables]


def count_dis_automorphisms(
    line: ProjectiveLine,
    listing_cap: Optional[int] = None,
    counting_cap: Optional[int] = None,
) -> AutomorphismCount:
    """Order of the distant-automorphism group.

    Lines within the listing cap are counted by full listing; larger lines
    up to the counting cap use orbit-stabilizer on discovered generators.

    Raises:
        CapExceededError: If the line exceeds the counting cap.
    """
    config = get_config()
    listing_cap = listing_cap if listing_cap is not None else config.listing_cap
    counting_cap = counting_cap if counting_cap is not None else config.counting_cap
    n = len(line)
    if n <= listing_cap:
        maps = enumerate_dis_isomorphisms(line, line, cap=listing_cap)
        return AutomorphismCount(len(maps), "listing", [])
    if n <= counting_cap:
        return count_automorphisms_orbit_stabilizer(line.distant_bits)
    raise CapExceededError("dis-automorphism counting", n, counting_cap)


# Certificates

class CertificateKind(Enum):
    ISOMORPHISM = "isomorphism"
    ANTI_ISOMORPHISM = "anti-isomorphism"
    PRODUCT = "product"


@dataclass(frozen=True)
class DecompositionCertificate:
    """f = alpha~ followed by gamma~, with sigma-routing for products.

    Attributes:
        kind: Isomorphism, anti-isomorphism, or product.
        alpha: The ring (Jordan) isomorphism.
        gamma: Invertible 2x2 matrix over the target ring.
        beta: Index of the field automorphism into field_automorphisms(K).
        sigma: Factor permutation, products only.
        component_certs: Per-factor certificates, products only.
    """

    kind: CertificateKind
    alpha: Optional[RingMapTable]
    gamma: Optional[Matrix2]
    beta: int = 0
    sigma: Optional[Tuple[int, ...]] = None
    component_certs: Tuple["DecompositionCertificate", ...] = ()

    def recompose(self, line: ProjectiveLine) -> PointMap:
        """Rebuild the point map from alpha and gamma."""
        alpha_tilde = induced_map(self.alpha, line, line)
        gamma_tilde = projectivity(line, self.gamma)
        composite = compose(alpha_tilde, gamma_tilde)
        return PointMap(line, line, composite.table, Provenance.COMPOSITE, f"{self.kind.value} certificate")


def _collineation_kind(space, table: Sequence[int]) -> CertificateKind:
    star = min(space.star_sets, key=sorted)
    image = frozenset(table[x] for x in star)
    if image in space.star_sets:
        return CertificateKind.ISOMORPHISM
    if image in space.top_sets:
        return CertificateKind.ANTI_ISOMORPHISM
    raise TheoremViolationError("a star is mapped onto neither a star nor a top")


def _projective_map(space, table: Sequence[int], points: Sequence[Subspace]) -> Optional[List[Subspace]]:
    """Images of projective points under a Grassmann collineation of star type."""
    position = space._cached(
        "projective_position", lambda: {P: k for k, P in enumerate(space.projective_points)}
    )
    lookup = space.projective_lookup
    images = []
    for P in points:
        k = lookup.get(frozenset(table[x] for x in space.points_through[position[P]]))
        if k is None:
            return None
        images.append(space.projective_points[k])
    return images


def _frame_points(q: int, m: int, extra: Sequence[Sequence[int]] = ()) -> List[Subspace]:
    frame = [Subspace.from_rows(q, m, [[int(i == j) for j in range(m)]]) for i in range(m)]
    frame.append(Subspace.from_rows(q, m, [[1] * m]))
    frame.extend(Subspace.from_rows(q, m, [row]) for row in extra)
    return frame


def _solve_frame(q: int, images: Sequence[Subspace], m: int) -> Optional[List[List[int]]]:
    """Rows g_i = lambda_i w_i with sum g_i spanning the image of the unit point."""

    GF = galois_field_of_order(q)
    W = GF(np.array([images[i].basis[0] for i in range(m)], dtype=np.int64))
    s = GF(np.array(images[m].basis[0], dtype=np.int64))
    try:
        lam = np.linalg.solve(W.T, s)
    except np.linalg.LinAlgError:
        return None
    if any(int(x) == 0 for x in lam):
        return None
    G = W * lam[:, None]
    return G.view(np.ndarray).tolist()


def _recover_beta(space, table: Sequence[int], betas: Sequence[RingMapTable]) -> Optional[int]:
    """Read the field automorphism off the image of <e_0 + c e_1> for a field generator c."""
    K = space.K
    q, m = space.q, 2 * space.n
    c = int(K.galois_field.primitive_element)
    vector = [c if j == 1 else int(j == 0) for j in range(m)]
    points = _frame_points(q, m, [vector])
    images = _projective_map(space, table, points)
    if images is None:
        return None
    G = _solve_frame(q, images, m)
    if G is None:
        return None
    target = images[m + 1]
    for t in K.elements():
        row = [K.add(G[0][j], K.mul(t, G[1][j])) for j in range(m)]
        if Subspace.from_rows(q, m, [row]) == target:
            return next((b for b, beta in enumerate(betas) if beta.table[c] == t), None)
    return None


def _alpha_tilde(line: ProjectiveLine, kind: CertificateKind, b: int) -> Tuple[RingMapTable, PointMap, Tuple[int, ...]]:
    """alpha, alpha~ and the inverse table of alpha~, cached per line."""

    def build():
        R = line.ring
        _, K = matrix_shape(R)
        beta = field_automorphisms(K)[b]
        alpha = entrywise_map(R, beta)
        if kind == CertificateKind.ANTI_ISOMORPHISM:
            alpha = compose_maps(alpha, transpose_map(R))
            alpha_tilde = induced_by_antihom(alpha, line, line)
        else:
            alpha_tilde = induced_by_hom(alpha, line, line)
        inverse_table = inverse(alpha_tilde).table
        return alpha, alpha_tilde, inverse_table

    return line._cached(f"alpha_tilde_{kind.value}_{b}", build)


def _gamma_from_matrix(R: FiniteRing, n: int, G: Sequence[Sequence[int]]) -> Matrix2:

    def block(r0: int, c0: int) -> int:
        return element_from_rows(R, [list(G[r0 + i][c0:c0 + n]) for i in range(n)])

    return ((block(0, 0), block(0, n)), (block(n, 0), block(n, n)))


def factorize_dis_automorphism(f: PointMap) -> DecompositionCertificate:
    """Write a dis-automorphism of P(M_n(GF(q))), n > 1, as alpha~ followed by gamma~.

    The map is read as a collineation of the Grassmann model. Stars going to
    stars means alpha is an isomorphism (entrywise field automorphism),
    stars going to tops means an anti-isomorphism (transpose after it).
    Removing alpha~ leaves a projectivity whose matrix is rebuilt from the
    images of the standard frame of PG(2n-1, q).

    Raises:
        PreconditionError: If f is not a dis-automorphism or n < 2.
        TheoremViolationError: If no certificate recomposes to f.
    """
    line = f.source
    if f.target is not line:
        raise PreconditionError("factorization needs an automorphism of one line")
    R = line.ring
    n, K = matrix_shape(R)
    if n < 2:
        raise PreconditionError("factorization needs matrix size n > 1")
    if not is_dis_isomorphism(f):
        raise PreconditionError("map is not a dis-automorphism")

    space = grassmann_space(line)
    kind = _collineation_kind(space, f.table)
    betas = field_automorphisms(K)
    order = list(range(len(betas)))
    if len(betas) > 1:
        table = f.table
        if kind == CertificateKind.ANTI_ISOMORPHISM:
            perp = space.perp
            table = [f.table[perp[i]] for i in range(len(line))]
        recovered = _recover_beta(space, table, betas)
        if recovered is not None:
            order.remove(recovered)
            order.insert(0, recovered)

    m = 2 * n
    frame = _frame_points(K.order, m)
    for b in order:
        alpha, alpha_tilde, alpha_inverse = _alpha_tilde(line, kind, b)
        h = [f.table[alpha_inverse[j]] for j in range(len(line))]
        images = _projective_map(space, h, frame)
        if images is None:
            continue
        G = _solve_frame(K.order, images, m)
        if G is None:
            continue
        gamma = _gamma_from_matrix(R, n, G)
        gamma_table = projectivity(line, gamma).table
        if tuple(gamma_table[x] for x in alpha_tilde.table) == f.table:
            return DecompositionCertificate(kind, alpha, gamma, beta=b)
        logger.debug("beta %d gave a certificate that does not recompose", b)
    raise TheoremViolationError("no (alpha, gamma) certificate recomposes to the map")


# Products

@dataclass(frozen=True)
class ProductDecomposition:
    """f(p)[sigma[k]] = components[k](p[k]) on the product line.

    Attributes:
        sigma: Factor permutation.
        components: Component dis-isomorphisms between factor lines.
        line: The product line the components live on.
        transport: Map from the original line onto ``line`` when the ring
            was split along central idempotents, else None.
    """

    sigma: Tuple[int, ...]
    components: Tuple[PointMap, ...]
    line: ProjectiveLine = field(repr=False)
    transport: Optional[PointMap] = field(default=None, repr=False)

    def recompose(self) -> PointMap:
        segre, embedding = segre_model(self.line)
        position = {x: i for i, x in enumerate(embedding)}
        spaces = segre.factors
        comps = [
            Collineation(spaces[k], spaces[self.sigma[k]], c.table) for k, c in enumerate(self.components)
        ]
        product = compose_product_collineation(self.sigma, comps, segre, segre)
        table = tuple(position[product.table[embedding[i]]] for i in range(len(self.line)))
        f = PointMap(self.line, self.line, table, Provenance.COMPOSITE, "product")
        if self.transport is not None:
            f = compose(compose(self.transport, f), inverse(self.transport))
        return f


def product_transport(line: ProjectiveLine) -> Tuple[ProjectiveLine, Optional[PointMap]]:
    """A product line for ``line`` and the transport map onto it.

    Product rings need no transport. Other rings are split along their
    primitive central idempotents; corners that are fields are replaced
    by the canonical GF(p^k).
    """
    R = line.ring
    if isinstance(R, ProductRing):
        return line, None

    def build():
        decomposition = central_decomposition(R)
        if len(decomposition.idempotents) < 2:
            raise PreconditionError(f"{R.name} does not split as a product")
        corner_isos = []
        for corner in decomposition.corners:
            if not is_field(corner):
                raise PreconditionError(f"corner {corner.name} is not a field")
            corner_isos.append(field_isomorphism(corner))
        P = make_product([iso.target for iso in corner_isos])
        inner = decomposition.product
        table = [
            P.compose([iso.table[c] for iso, c in zip(corner_isos, inner.decompose(decomposition.iso.table[x]))])
            for x in R.elements()
        ]
        theta = classify_map(R, P, table)
        if theta.kind != MapKind.HOMOMORPHISM or not theta.is_bijective():
            raise TheoremViolationError(f"{R.name} is not isomorphic to {P.name}")
        product_line = enumerate_points(P)
        return product_line, induced_by_hom(theta, line, product_line)

    return line._cached("product_transport", build)


def decompose_product_dis_iso(f: PointMap) -> ProductDecomposition:
    """Split a dis-automorphism of a product line into sigma and component maps.

    Raises:
        PreconditionError: If f is not a dis-automorphism or a factor is not
            a matrix ring over a field.
        TheoremViolationError: If the decomposition fails.
    """
    if f.target is not f.source:
        raise PreconditionError("product decomposition needs an automorphism of one line")
    if not is_dis_isomorphism(f):
        raise PreconditionError("map is not a dis-automorphism")
    line, transport = product_transport(f.source)
    if transport is not None:
        f = compose(compose(inverse(transport), f), transport)
    for factor in line.ring.factors:
        matrix_shape(factor)

    segre, embedding = segre_model(line)
    table = [0] * segre.n_points
    for i, x in enumerate(embedding):
        table[x] = embedding[f.table[i]]
    decomposition = decompose_product_collineation(Collineation(segre, segre, tuple(table)))

    lines = factor_lines(line)
    components = tuple(
        PointMap(lines[k], lines[decomposition.sigma[k]], c.table, Provenance.RAW, f"component {k}")
        for k, c in enumerate(decomposition.components)
    )
    for k, c in enumerate(components):
        if not is_dis_isomorphism(c):
            raise TheoremViolationError(f"component {k} is not a dis-isomorphism")
    return ProductDecomposition(decomposition.sigma, components, line, transport)


def _as_automorphism(f: PointMap) -> PointMap:
    if f.source is f.target:
        return f
    if f.source.ring.name != f.target.ring.name or len(f.source) != len(f.target):
        raise PreconditionError("component map joins non-isomorphic factor lines")
    return PointMap(f.source, f.source, f.table, f.provenance, f.note)


def factorize_product_dis_iso(f: PointMap) -> DecompositionCertificate:
    """Product certificate: sigma, per-component (alpha_k, gamma_k), and the
    assembled Jordan isomorphism alpha with matrix gamma over the product.

    Raises:
        PreconditionError: If some factor has matrix size 1.
    """
    decomposition = decompose_product_dis_iso(f)
    line = decomposition.line
    P = line.ring
    if decomposition.transport is not None:
        raise PreconditionError("product certificates need a ring given as a product of matrix rings")
    for factor in P.factors:
        if matrix_shape(factor)[0] < 2:
            raise PreconditionError("product certificates need matrix size n > 1 in every factor")

    sigma = decomposition.sigma
    certs = tuple(factorize_dis_automorphism(_as_automorphism(c)) for c in decomposition.components)

    alpha_table = []
    for x in P.elements():
        parts = P.decompose(x)
        image = [0] * len(parts)
        for k, cert in enumerate(certs):
            image[sigma[k]] = cert.alpha.table[parts[k]]
        alpha_table.append(P.compose(image))
    alpha = classify_map(P, P, alpha_table)
    if not alpha.is_jordan:
        raise TheoremViolationError("assembled product map is not a Jordan isomorphism")

    def entry(r: int, c: int) -> int:
        image = [0] * len(certs)
        for k, cert in enumerate(certs):
            image[sigma[k]] = cert.gamma[r][c]
        return P.compose(image)

    gamma = ((entry(0, 0), entry(0, 1)), (entry(1, 0), entry(1, 1)))
    return DecompositionCertificate(CertificateKind.PRODUCT, alpha, gamma, sigma=sigma, component_certs=certs)


# Radical structure

def induced_quotient_map(f: PointMap) -> PointMap:
    """The map of quotient lines p-bar -> f(p)-bar.

    Raises:
        PreconditionError: If f does not respect parallel classes.
    """
    line_bar, proj = f.source.quotient_line()
    target_bar, proj_t = f.target.quotient_line()
    table: List[Optional[int]] = [None] * len(line_bar)
    for i, image in enumerate(f.table):
        c = proj[i]
        value = proj_t[image]
        if table[c] is None:
            table[c] = value
        elif table[c] != value:
            raise PreconditionError("map does not induce a well-defined map of quotient lines")
    return PointMap(line_bar, target_bar, tuple(table), Provenance.RAW, "quotient")


def check_semilocal_corollary(f: PointMap) -> bool:
    """Cross-check: dis-iso iff (parallel-iso and the quotient map is a dis-iso).

    Raises:
        PreconditionError: If f is not bijective.
        TheoremViolationError: If the two sides disagree.
    """
    if not f.is_bijective():
        raise PreconditionError("map is not bijective")
    dis_iso = is_dis_isomorphism(f)
    par_iso = is_par_isomorphism(f)
    quotient_dis_iso = par_iso and is_dis_isomorphism(induced_quotient_map(f))
    if dis_iso != (par_iso and quotient_dis_iso):
        raise TheoremViolationError(
            f"dis-iso={dis_iso} but parallel-iso={par_iso}, quotient dis-iso={quotient_dis_iso}"
        )
    return dis_iso


@dataclass
class WreathReport:
    """Counts behind |Aut| = (|rad R|!)^|P(R/rad R)| * |Aut(P(R/rad R))|."""

    ring: str
    line_count: int
    radical_size: int
    quotient_points: int
    quotient_count: int
    expected: int
    holds: bool
    method: str


def verify_wreath_structure(R: FiniteRing) -> WreathReport:
    """Check the wreath-product order identity and the induced quotient maps.

    Raises:
        TheoremViolationError: If the identity or a quotient map fails.
    """
    line = enumerate_points(R)
    line_bar, _ = line.quotient_line()
    radical = len(jacobson_radical(R))
    quotient_count = count_dis_automorphisms(line_bar)
    expected = math.factorial(radical) ** len(line_bar) * quotient_count.count

    if len(line) <= get_config().listing_cap:
        maps = enumerate_dis_isomorphisms(line, line)
        count, method = len(maps), "listing"
        for f in maps:
            if not is_dis_isomorphism(induced_quotient_map(f)):
                raise TheoremViolationError("a dis-automorphism induces a non-automorphism of the quotient line")
    else:
        result = count_dis_automorphisms(line)
        count, method = result.count, result.method

    report = WreathReport(R.name, count, radical, len(line_bar), quotient_count.count, expected, count == expected, method)
    if not report.holds:
        raise TheoremViolationError(f"wreath identity fails for {R.name}: {count} != {expected}")
    return report


# Sweeps

@dataclass
class SweepResult:
    total: int
    checked: int
    failures: List[Tuple[int, str]]
    sampled: bool
    kinds: Dict[str, int]


def sweep_factorizations(
    line: ProjectiveLine,
    maps: Optional[Sequence[PointMap]] = None,
    sample: Optional[int] = None,
    seed: int = 0,
) -> SweepResult:
    """Factorize every (or a random sample of) dis-automorphism and check recomposition."""
    if maps is None:
        maps = enumerate_dis_isomorphisms(line, line)
    indices = list(range(len(maps)))
    sampled = sample is not None and sample < len(maps)
    if sampled:
        rng = np.random.default_rng(seed)
        indices = sorted(int(i) for i in rng.choice(len(maps), size=sample, replace=False))

    failures: List[Tuple[int, str]] = []
    kinds: Dict[str, int] = {}
    factorize = factorize_product_dis_iso if isinstance(line.ring, ProductRing) else factorize_dis_automorphism
    for count, i in enumerate(indices, 1):
        try:
            certificate = factorize(maps[i])
        except TheoremViolationError as e:
            failures.append((i, str(e)))
            continue
        kinds[certificate.kind.value] = kinds.get(certificate.kind.value, 0) + 1
        if count % 5000 == 0:
            logger.info("Factorized %d of %d maps", count, len(indices))
    return SweepResult(len(maps), len(indices), failures, sampled, kinds)
