"""Jordan isomorphisms of small rings and their classification.

Enumeration builds additive bijections generator by generator, starting
from 1 -> 1, and prunes every partial map that breaks the Jordan identity
(aba)w = a'b'a' on the elements already mapped.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from distantline.core.config import get_config
from distantline.core.errors import CapExceededError, MapKindError, RingMismatchError, TheoremViolationError
from distantline.core.grassmann import element_from_rows, element_rows, matrix_shape
from distantline.core.linalg import is_invertible, mat_inv, mat_mul, null_space
from distantline.core.morphisms import CertificateKind
from distantline.core.rings import (
    FiniteRing,
    MapKind,
    ProductRing,
    RingMapTable,
    additive_generators,
    classify_map,
    field_automorphisms,
)

logger = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, ...], ...]


class _PartialJordan:
    """An additive partial map, extended one generator at a time."""

    def __init__(self, source: FiniteRing, target: FiniteRing):
        self.source = source
        self.target = target
        self.mapping: Dict[int, int] = {source.zero: target.zero}

    def extend(self, g: int, h: int) -> Optional[Dict[int, int]]:
        """The additive closure of mapping + (g -> h), or None on conflict."""
        S, T = self.source, self.target
        mapping = dict(self.mapping)
        if g in mapping:
            return mapping if mapping[g] == h else None
        frontier = list(mapping.items())
        while frontier:
            x, y = frontier.pop()
            x2, y2 = S.add(x, g), T.add(y, h)
            known = mapping.get(x2)
            if known is None:
                mapping[x2] = y2
                frontier.append((x2, y2))
            elif known != y2:
                return None
        if len(set(mapping.values())) != len(mapping):
            return None
        return mapping

    @staticmethod
    def jordan_consistent(S: FiniteRing, T: FiniteRing, mapping: Dict[int, int], new: Sequence[int]) -> bool:
        for x in new:
            wx = mapping[x]
            sq = S.mul(x, x)
            if sq in mapping and mapping[sq] != T.mul(wx, wx):
                return False
            for y, wy in mapping.items():
                xyx = S.mul(S.mul(x, y), x)
                if xyx in mapping and mapping[xyx] != T.mul(T.mul(wx, wy), wx):
                    return False
                yxy = S.mul(S.mul(y, x), y)
                if yxy in mapping and mapping[yxy] != T.mul(T.mul(wy, wx), wy):
                    return False
        return True


def enumerate_jordan_isomorphisms(R: FiniteRing, R2: Optional[FiniteRing] = None) -> List[RingMapTable]:
    """All Jordan isomorphisms R -> R2, sorted by table.

    Raises:
        CapExceededError: If |R| exceeds the Jordan cap.
    """
    R2 = R2 or R
    cap = get_config().jordan_cap
    if R.order > cap:
        raise CapExceededError("Jordan enumeration", R.order, cap)
    if R.order != R2.order:
        return []

    generators = list(additive_generators(R))
    if generators[0] != R.one:
        raise TheoremViolationError("additive generators must start with 1")
    found: List[RingMapTable] = []

    def walk(partial: _PartialJordan, k: int) -> None:
        if k == len(generators):
            if len(partial.mapping) != R.order:
                return
            table = [partial.mapping[x] for x in R.elements()]
            omega = classify_map(R, R2, table)
            if omega.is_jordan and omega.is_bijective():
                found.append(omega)
            return
        g = generators[k]
        used = set(partial.mapping.values())
        choices = [R2.one] if k == 0 else [h for h in R2.elements() if h not in used]
        for h in choices:
            mapping = partial.extend(g, h)
            if mapping is None:
                continue
            new = [x for x in mapping if x not in partial.mapping]
            if not _PartialJordan.jordan_consistent(R, R2, mapping, new):
                continue
            child = _PartialJordan(R, R2)
            child.mapping = mapping
            walk(child, k + 1)

    walk(_PartialJordan(R, R2), 0)
    found.sort(key=lambda omega: omega.table)
    logger.info("%s has %d Jordan isomorphisms onto %s", R.name, len(found), R2.name)
    return found


# Classification

@dataclass(frozen=True)
class JordanClassification:
    """X -> G^-1 X^beta G (isomorphism) or G^-1 (X^beta)^T G (anti-isomorphism).

    For products, ``sigma`` routes component k to target component sigma[k]
    and ``components`` classifies each component map.
    """

    kind: CertificateKind
    beta: int = 0
    G: Optional[Rows] = None
    sigma: Optional[Tuple[int, ...]] = None
    components: Tuple["JordanClassification", ...] = ()


def _solve_intertwiner(K: FiniteRing, n: int, pairs) -> Optional[List[List[int]]]:
    """An invertible G with G A = B G for every (A, B), via the null space over K."""
    q = K.order
    rows = []
    for A, B in pairs:
        for r in range(n):
            for c in range(n):
                row = [K.zero] * (n * n)
                for k in range(n):
                    row[r * n + k] = K.add(row[r * n + k], A[k][c])
                    row[k * n + c] = K.sub(row[k * n + c], B[r][k])
                rows.append(row)
    basis = null_space(q, rows, n * n)
    candidates = [list(v) for v in basis]
    if len(basis) > 1:
        total = [K.zero] * (n * n)
        for v in basis:
            total = [K.add(a, b) for a, b in zip(total, v)]
        candidates.append(total)
    for v in candidates:
        G = [v[r * n:(r + 1) * n] for r in range(n)]
        if is_invertible(q, G):
            return G
    return None


def _apply_beta(rows: List[List[int]], beta: RingMapTable, transpose: bool) -> List[List[int]]:
    out = [[beta.table[x] for x in row] for row in rows]
    return [list(col) for col in zip(*out)] if transpose else out


def _classify_matrix(omega: RingMapTable) -> JordanClassification:
    R = omega.source
    n, K = matrix_shape(R)
    if omega.kind == MapKind.HOMOMORPHISM:
        kind = CertificateKind.ISOMORPHISM
    elif omega.kind == MapKind.ANTI_HOMOMORPHISM:
        kind = CertificateKind.ANTI_ISOMORPHISM
    else:
        raise TheoremViolationError(f"Jordan automorphism of {R.name} is neither an isomorphism nor an anti-isomorphism")

    transpose = kind == CertificateKind.ANTI_ISOMORPHISM
    units = []
    for i in range(n):
        for j in range(n):
            rows = [[K.one if (r, c) == (i, j) else K.zero for c in range(n)] for r in range(n)]
            units.append(rows)
    for b, beta in enumerate(field_automorphisms(K)):
        pairs = [
            (element_rows(R, omega.table[element_from_rows(R, E)]), _apply_beta(E, beta, transpose))
            for E in units
        ]
        G = _solve_intertwiner(K, n, pairs)
        if G is None:
            continue
        classification = JordanClassification(kind, b, tuple(tuple(r) for r in G))
        if recompose_jordan(classification, R, omega.target).table == omega.table:
            return classification
    raise TheoremViolationError(f"no (beta, G) describes the Jordan automorphism of {R.name}")


def _classify_field(omega: RingMapTable) -> JordanClassification:
    for b, beta in enumerate(field_automorphisms(omega.source)):
        if beta.table == omega.table:
            return JordanClassification(CertificateKind.ISOMORPHISM, b, ((omega.source.one,),))
    raise TheoremViolationError(f"Jordan automorphism of {omega.source.name} is not a field automorphism")


def classify_jordan(omega: RingMapTable) -> JordanClassification:
    """Classify a Jordan automorphism.

    Raises:
        MapKindError: If omega is not a bijective Jordan map.
        TheoremViolationError: If no classification fits.
    """
    if not omega.is_jordan or not omega.is_bijective():
        raise MapKindError("classification needs a Jordan isomorphism")
    R = omega.source
    if isinstance(R, ProductRing):
        return _classify_product(omega)
    n, _ = matrix_shape(R)
    if n == 1:
        return _classify_field(omega)
    return _classify_matrix(omega)


def _classify_product(omega: RingMapTable) -> JordanClassification:
    R, R2 = omega.source, omega.target
    if not isinstance(R2, ProductRing) or len(R.factors) != len(R2.factors):
        raise RingMismatchError("product Jordan maps need products with the same number of factors")
    m = len(R.factors)
    idempotents = {R2.inject(f.one, k): k for k, f in enumerate(R2.factors)}
    sigma = []
    for k, factor in enumerate(R.factors):
        image = omega.table[R.inject(factor.one, k)]
        if image not in idempotents:
            raise TheoremViolationError(f"identity of factor {k} is not sent to a factor identity")
        sigma.append(idempotents[image])
    if sorted(sigma) != list(range(m)):
        raise TheoremViolationError(f"factor map {sigma} is not a permutation")

    components = []
    for k, factor in enumerate(R.factors):
        j = sigma[k]
        table = []
        for x in factor.elements():
            parts = R2.decompose(omega.table[R.inject(x, k)])
            if any(parts[i] != R2.factors[i].zero for i in range(m) if i != j):
                raise TheoremViolationError(f"factor {k} leaks outside target factor {j}")
            table.append(parts[j])
        component = classify_map(factor, R2.factors[j], table)
        components.append(classify_jordan(component))
    return JordanClassification(CertificateKind.PRODUCT, sigma=tuple(sigma), components=tuple(components))


def recompose_jordan(classification: JordanClassification, R: FiniteRing, R2: Optional[FiniteRing] = None) -> RingMapTable:
    """Rebuild the ring map a classification describes."""
    R2 = R2 or R
    if classification.kind == CertificateKind.PRODUCT:
        sigma = classification.sigma
        component_maps = [
            recompose_jordan(c, R.factors[k], R2.factors[sigma[k]])
            for k, c in enumerate(classification.components)
        ]
        table = []
        for x in R.elements():
            parts = R.decompose(x)
            image = [0] * len(parts)
            for k, f in enumerate(component_maps):
                image[sigma[k]] = f.table[parts[k]]
            table.append(R2.compose(image))
        return classify_map(R, R2, table)

    n, K = matrix_shape(R)
    q = K.order
    beta = field_automorphisms(K)[classification.beta]
    G = [list(r) for r in classification.G]
    G_inv = mat_inv(q, G)
    transpose = classification.kind == CertificateKind.ANTI_ISOMORPHISM
    table = []
    for x in R.elements():
        X = _apply_beta(element_rows(R, x), beta, transpose)
        table.append(element_from_rows(R2, mat_mul(q, mat_mul(q, G_inv, X), G)))
    return classify_map(R, R2, table)
