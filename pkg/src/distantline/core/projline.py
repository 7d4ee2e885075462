"""The projective line over a finite ring and its distant, parallel and adjacency relations.

A point R(a, b) is the orbit {(ua, ub) : u a unit} of a pair that is the
first row of an invertible 2x2 matrix. Points are held by the
lexicographically least pair of their orbit; lines keep their points sorted
by that representative, and every relation query works on point indices and
integer bitsets.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from distantline.core import linalg
from distantline.core.caching import OnceCache
from distantline.core.errors import (
    InadmissiblePairError,
    NotInvertibleError,
    PreconditionError,
    RingMismatchError,
    TheoremViolationError,
    UnsupportedRingError,
)
from distantline.core.rings import (
    FiniteRing,
    GFRing,
    MatrixRing,
    ProductRing,
    ZModRing,
    additive_generators,
    is_field,
    jacobson_radical,
    reduce_ring,
    split_top_level,
    unit_group_generators,
)

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Matrix2 = Tuple[Tuple[int, int], Tuple[int, int]]


# 2x2 matrices over a ring

def identity_matrix(R: FiniteRing) -> Matrix2:
    return ((R.one, R.zero), (R.zero, R.one))


def row_times(R: FiniteRing, a: int, b: int, M: Matrix2) -> Pair:
    """The row vector (a, b) times M."""
    add, mul = R.add, R.mul
    return (
        add(mul(a, M[0][0]), mul(b, M[1][0])),
        add(mul(a, M[0][1]), mul(b, M[1][1])),
    )


def mat_mul(R: FiniteRing, M: Matrix2, N: Matrix2) -> Matrix2:
    return (row_times(R, M[0][0], M[0][1], N), row_times(R, M[1][0], M[1][1], N))


def matrix_inverse(R: FiniteRing, M: Matrix2) -> Matrix2:
    """Two-sided inverse of a 2x2 matrix over R.

    M acts on R^2 by right multiplication of row vectors. Scanning R^2 for
    preimages of (1, 0) and (0, 1) yields N with N M = I; for finite rings
    that forces M N = I, which is checked.

    Matrix rings over fields and products of them take the block-matrix
    route instead of the scan.

    Raises:
        NotInvertibleError: If M is singular.
    """
    if isinstance(R, ProductRing):
        parts = [
            matrix_inverse(f, tuple(tuple(R.project(x, k) for x in row) for row in M))
            for k, f in enumerate(R.factors)
        ]
        return tuple(
            tuple(R.compose([N[r][c] for N in parts]) for c in range(2)) for r in range(2)
        )
    if supports_subspace_model(R) or (isinstance(R, MatrixRing) and supports_subspace_model(R.base)):
        return _block_inverse(R, M)
    first = second = None
    one, zero = R.one, R.zero
    for s in R.elements():
        for t in R.elements():
            image = row_times(R, s, t, M)
            if image == (one, zero):
                first = (s, t)
            elif image == (zero, one):
                second = (s, t)
            if first is not None and second is not None:
                N = (first, second)
                if mat_mul(R, M, N) != identity_matrix(R):
                    raise TheoremViolationError("left inverse of a matrix over a finite ring is not a right inverse")
                return N
    raise NotInvertibleError("matrix is singular")


def _block_inverse(R: FiniteRing, M: Matrix2) -> Matrix2:
    """Invert M as a 2n x 2n matrix over the base field."""
    if isinstance(R, MatrixRing):
        n, q = R.n, R.base.order
        rows_of, from_rows = R.to_rows, R.from_rows
    else:
        n, q = 1, R.order
        rows_of, from_rows = (lambda x: [[x]]), (lambda rows: rows[0][0])
    blocks = [[rows_of(M[r][c]) for c in range(2)] for r in range(2)]
    big = [blocks[r][0][i] + blocks[r][1][i] for r in range(2) for i in range(n)]
    if not linalg.is_invertible(q, big):
        raise NotInvertibleError("matrix is singular")
    inv = linalg.mat_inv(q, big)
    return tuple(
        tuple(from_rows([inv[r * n + i][c * n:(c + 1) * n] for i in range(n)]) for c in range(2))
        for r in range(2)
    )


def is_invertible_matrix(R: FiniteRing, M: Matrix2) -> bool:
    try:
        matrix_inverse(R, M)
    except NotInvertibleError:
        return False
    return True


def unimodular(R: FiniteRing, a: int, b: int) -> bool:
    """Whether ax + by = 1 for some x, y in R."""
    bR = {R.mul(b, y) for y in R.elements()}
    return any(R.sub(R.one, R.mul(a, x)) in bR for x in R.elements())


def find_completion(R: FiniteRing, a: int, b: int) -> Optional[Pair]:
    """Exhaustive search for (c, d) with [[a, b], [c, d]] invertible."""
    for c in R.elements():
        for d in R.elements():
            if is_invertible_matrix(R, ((a, b), (c, d))):
                return (c, d)
    return None


def _elementary_generators(R: FiniteRing) -> List[Tuple[Matrix2, Matrix2]]:
    one, zero = R.one, R.zero
    gens: List[Tuple[Matrix2, Matrix2]] = []
    for r in additive_generators(R):
        gens.append((((one, r), (zero, one)), ((one, R.neg(r)), (zero, one))))
        gens.append((((one, zero), (r, one)), ((one, zero), (R.neg(r), one))))
    inverses = R.unit_inverses()
    for u in unit_group_generators(R):
        v = inverses[u]
        gens.append((((u, zero), (zero, one)), ((v, zero), (zero, one))))
        gens.append((((one, zero), (zero, u)), ((one, zero), (zero, v))))
    swap = ((zero, one), (one, zero))
    gens.append((swap, swap))
    return gens


def _unimodular_fast_path(R: FiniteRing) -> bool:
    return R._once.get("unimodular_fast_path", True)


def _disable_fast_path(R: FiniteRing, a: int, b: int) -> None:
    with R._once_lock:
        if R._once.get("unimodular_fast_path", True):
            logger.warning(
                "Unimodular pair (%s, %s) over %s has no completion; disabling the fast path for this ring",
                R.literal(a), R.literal(b), R.name,
            )
        R._once["unimodular_fast_path"] = False


def admissible_frames(R: FiniteRing) -> Dict[Pair, Tuple[Matrix2, Matrix2]]:
    """Every admissible pair with an invertible completion and its inverse.

    Walks the orbit of (1, 0) under elementary and diagonal generators of
    GL_2(R), then checks every remaining unimodular pair by exhaustive
    completion search.
    """

    def build():
        gens = _elementary_generators(R)
        start = (R.one, R.zero)
        frames: Dict[Pair, Tuple[Matrix2, Matrix2]] = {start: (identity_matrix(R), identity_matrix(R))}
        queue = deque([start])
        while queue:
            pair = queue.popleft()
            M, N = frames[pair]
            for g, g_inv in gens:
                M2 = mat_mul(R, M, g)
                if M2[0] not in frames:
                    frames[M2[0]] = (M2, mat_mul(R, g_inv, N))
                    queue.append(M2[0])
        logger.debug("Generated %d admissible pairs over %s", len(frames), R.name)

        right_ideals = [frozenset(R.mul(a, x) for x in R.elements()) for a in R.elements()]
        for a in R.elements():
            for b in R.elements():
                if (a, b) in frames:
                    continue
                bR = right_ideals[b]
                if not any(R.sub(R.one, s) in bR for s in right_ideals[a]):
                    continue
                completion = find_completion(R, a, b)
                if completion is None:
                    _disable_fast_path(R, a, b)
                    continue
                M = ((a, b), completion)
                frames[(a, b)] = (M, matrix_inverse(R, M))
                logger.info("Completion for (%s, %s) found outside the generated orbit", R.literal(a), R.literal(b))
        return frames

    return R._cached("admissible_frames", build)


def is_admissible(R: FiniteRing, a: int, b: int) -> Tuple[bool, Optional[Pair]]:
    """Whether (a, b) is the first row of an invertible matrix.

    Returns:
        (True, (c, d)) with a completion, or (False, None).
    """
    if isinstance(R, ProductRing):
        witnesses = []
        for i, factor in enumerate(R.factors):
            ok, witness = is_admissible(factor, R.project(a, i), R.project(b, i))
            if not ok:
                return False, None
            witnesses.append(witness)
        return True, (R.compose([w[0] for w in witnesses]), R.compose([w[1] for w in witnesses]))
    if _unimodular_fast_path(R) and not unimodular(R, a, b):
        return False, None
    frames = admissible_frames(R)
    if (a, b) in frames:
        return True, frames[(a, b)][0][1]
    completion = find_completion(R, a, b)
    if completion is None:
        if _unimodular_fast_path(R):
            _disable_fast_path(R, a, b)
        return False, None
    return True, completion


def canonical_pair(R: FiniteRing, a: int, b: int) -> Pair:
    """Lexicographically least member of the unit orbit of (a, b)."""
    if isinstance(R, ProductRing):
        parts = [canonical_pair(f, R.project(a, i), R.project(b, i)) for i, f in enumerate(R.factors)]
        return R.compose([p[0] for p in parts]), R.compose([p[1] for p in parts])
    mul = R.mul
    return min((mul(u, a), mul(u, b)) for u in R.units())


# Points and lines

@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point R(a, b) held by its canonical representative."""

    a: int
    b: int
    witness: Pair = field(compare=False)
    ring: FiniteRing = field(compare=False, repr=False)

    @property
    def rep(self) -> Pair:
        return (self.a, self.b)

    def literal(self) -> str:
        return point_literal(self)


def point_literal(p: ProjPoint) -> str:
    return f"R({p.ring.literal(p.a)}, {p.ring.literal(p.b)})"


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


class ProjectiveLine(OnceCache):
    """All points of P(R) in canonical order, with lazily built relation caches."""

    def __init__(
        self,
        ring: FiniteRing,
        points: Sequence[ProjPoint],
        frames: Sequence[Matrix2],
        factor_lines: Optional[Sequence["ProjectiveLine"]] = None,
        method: str = "generic",
    ):
        super().__init__()
        self.ring = ring
        self.points: Tuple[ProjPoint, ...] = tuple(points)
        self.frames: Tuple[Matrix2, ...] = tuple(frames)
        self.factor_lines = tuple(factor_lines) if factor_lines else None
        self.method = method
        self._index: Dict[Pair, int] = {p.rep: i for i, p in enumerate(self.points)}
        if len(self._index) != len(self.points):
            raise TheoremViolationError("duplicate canonical representatives")
        self.full_mask = (1 << len(self.points)) - 1

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[ProjPoint]:
        return iter(self.points)

    def __getitem__(self, i: int) -> ProjPoint:
        return self.points[i]

    def __repr__(self) -> str:
        return f"<ProjectiveLine over {self.ring.name}: {len(self)} points>"

    # Lookups
    def index_of(self, p: ProjPoint) -> int:
        if p.ring is not self.ring:
            raise RingMismatchError(f"point over {p.ring.name} used on a line over {self.ring.name}")
        try:
            return self._index[p.rep]
        except KeyError:
            raise InadmissiblePairError(f"{point_literal(p)} is not a point of this line") from None

    def index_of_pair(self, a: int, b: int) -> int:
        """Index of R(a, b) for any admissible pair.

        Raises:
            InadmissiblePairError: If (a, b) is not admissible.
        """
        rep = canonical_pair(self.ring, a, b)
        try:
            return self._index[rep]
        except KeyError:
            R = self.ring
            raise InadmissiblePairError(f"({R.literal(a)}, {R.literal(b)}) is not admissible over {R.name}") from None

    def point_of(self, a: int, b: int) -> ProjPoint:
        return self.points[self.index_of_pair(a, b)]

    def parse_point(self, text: str) -> ProjPoint:
        """Parse a literal of the form R(a, b)."""
        text = text.strip()
        if not (text.startswith("R(") and text.endswith(")")):
            raise ValueError(f"{text!r} is not a point literal")
        parts = split_top_level(text[2:-1])
        if len(parts) != 2:
            raise ValueError(f"{text!r} does not have two coordinates")
        return self.point_of(self.ring.parse(parts[0].strip()), self.ring.parse(parts[1].strip()))

    def _idx(self, p) -> int:
        return p if isinstance(p, int) else self.index_of(p)

    # Distant relation
    @property
    def distant_bits(self) -> List[int]:
        """Bitset of the distant neighbourhood of each point."""
        return self._cached("distant_bits", self._build_distant_bits)

    def _build_distant_bits(self) -> List[int]:
        if self.factor_lines is not None:
            return self._product_bits(lambda line: line.distant_bits)
        R = self.ring
        add, mul = R.add, R.mul
        unit_set = R.unit_inverses()
        bits = [0] * len(self.points)
        for i, frame in enumerate(self.frames):
            n01, n11 = frame[0][1], frame[1][1]
            mask = 0
            for j, q in enumerate(self.points):
                if add(mul(q.a, n01), mul(q.b, n11)) in unit_set:
                    mask |= 1 << j
            bits[i] = mask
        logger.debug("Distant relation on %d points over %s built", len(self.points), R.name)
        return bits

    def distant(self, p, q) -> bool:
        return bool(self.distant_bits[self._idx(p)] >> self._idx(q) & 1)

    def distant_neighborhood(self, p) -> List[ProjPoint]:
        return [self.points[j] for j in _iter_bits(self.distant_bits[self._idx(p)])]

    # Parallelism
    def quotient_line(self) -> Tuple["ProjectiveLine", Tuple[int, ...]]:
        """The line over R/rad R and the point projection as an index table."""

        def build():
            Rbar, pi = reduce_ring(self.ring)
            if Rbar is self.ring:
                return self, tuple(range(len(self.points)))
            line_bar = enumerate_points(Rbar)
            table = tuple(line_bar.index_of_pair(pi.table[p.a], pi.table[p.b]) for p in self.points)
            return line_bar, table

        return self._cached("quotient_line", build)

    def project_point(self, p) -> ProjPoint:
        line_bar, table = self.quotient_line()
        return line_bar.points[table[self._idx(p)]]

    @property
    def parallel_class_ids(self) -> List[int]:
        """Class id of each point, classes numbered by their first member.

        The partition by equal images in P(R/rad R) must coincide with the
        partition by equal distant neighbourhoods.
        """

        def build():
            _, table = self.quotient_line()
            by_projection: Dict[int, int] = {}
            by_neighbourhood: Dict[int, int] = {}
            ids = []
            for i, bits in enumerate(self.distant_bits):
                a = by_projection.setdefault(table[i], len(by_projection))
                b = by_neighbourhood.setdefault(bits, len(by_neighbourhood))
                if a != b:
                    raise TheoremViolationError(
                        f"parallel classes from the radical and from neighbourhoods disagree at point {i}"
                    )
                ids.append(a)
            return ids

        return self._cached("parallel_class_ids", build)

    def parallel(self, p, q) -> bool:
        i, j = self._idx(p), self._idx(q)
        bits = self.distant_bits
        definitional = bits[i] & ~bits[j] == 0
        _, table = self.quotient_line()
        via_quotient = table[i] == table[j]
        if definitional != via_quotient:
            raise TheoremViolationError(f"parallel({i}, {j}): neighbourhood test and quotient test disagree")
        return definitional

    def parallel_classes(self) -> List[List[int]]:
        classes: Dict[int, List[int]] = {}
        for i, c in enumerate(self.parallel_class_ids):
            classes.setdefault(c, []).append(i)
        return list(classes.values())

    def class_masks(self) -> List[int]:
        """Bitset of the parallel class of each point."""

        def build():
            masks: Dict[int, int] = {}
            for i, c in enumerate(self.parallel_class_ids):
                masks[c] = masks.get(c, 0) | 1 << i
            return [masks[c] for c in self.parallel_class_ids]

        return self._cached("class_masks", build)

    # Adjacency
    def adjacent_via(self, p, q, r) -> bool:
        """r is not parallel to p or q, and its distant neighbourhood is covered by theirs."""
        i, j, k = self._idx(p), self._idx(q), self._idx(r)
        cls = self.parallel_class_ids
        bits = self.distant_bits
        if cls[k] == cls[i] or cls[k] == cls[j]:
            return False
        return bits[k] & ~(bits[i] | bits[j]) == 0

    def adjacency_method(self) -> str:
        R = self.ring
        if self.factor_lines is not None:
            return "product"
        if (isinstance(R, MatrixRing) and supports_subspace_model(R.base)) or supports_subspace_model(R):
            return "grassmann"
        return "definitional"

    def adjacency_bits(self, method: Optional[str] = None) -> List[int]:
        """Bitset of adjacent points for each point.

        Args:
            method: "definitional", "grassmann", "product" or None for the
                fastest method licensed for this ring.
        """
        method = method or self.adjacency_method()
        builders = {
            "definitional": self._adjacency_definitional,
            "grassmann": self._adjacency_grassmann,
            "product": self._adjacency_product,
        }
        return self._cached(f"adjacency_{method}", builders[method])

    def _adjacency_definitional(self) -> List[int]:
        n = len(self.points)
        bits = self.distant_bits
        cls = self.parallel_class_ids
        adjacency = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if cls[i] == cls[j]:
                    continue
                cover = bits[i] | bits[j]
                for k in range(n):
                    if cls[k] != cls[i] and cls[k] != cls[j] and bits[k] & ~cover == 0:
                        adjacency[i] |= 1 << j
                        adjacency[j] |= 1 << i
                        break
        return adjacency

    def _adjacency_grassmann(self) -> List[int]:
        from distantline.core.grassmann import grassmann_space

        space = grassmann_space(self)
        n = space.n
        subspaces = space.subspaces
        adjacency = [0] * len(self.points)
        for i, X in enumerate(subspaces):
            for j in range(i + 1, len(subspaces)):
                if X.dim_intersection(subspaces[j]) == n - 1:
                    adjacency[i] |= 1 << j
                    adjacency[j] |= 1 << i
        return adjacency

    def _adjacency_product(self) -> List[int]:
        # p ~ q iff they are adjacent in one component and parallel in all others
        coords = self.product_coordinates()
        factor_adj = [line.adjacency_bits() for line in self.factor_lines]
        factor_cls = [line.parallel_class_ids for line in self.factor_lines]
        n = len(self.points)
        adjacency = [0] * n
        for i in range(n):
            ci = coords[i]
            for j in range(i + 1, n):
                cj = coords[j]
                differing = [
                    k for k in range(len(ci)) if factor_cls[k][ci[k]] != factor_cls[k][cj[k]]
                ]
                if len(differing) == 1:
                    k = differing[0]
                    if factor_adj[k][ci[k]] >> cj[k] & 1:
                        adjacency[i] |= 1 << j
                        adjacency[j] |= 1 << i
        return adjacency

    def adjacent(self, p, q) -> bool:
        return bool(self.adjacency_bits()[self._idx(p)] >> self._idx(q) & 1)

    # Graphs
    def distant_graph(self) -> nx.Graph:
        return self._graph(self.distant_bits, "distant")

    def adjacency_graph(self) -> nx.Graph:
        return self._graph(self.adjacency_bits(), "adjacency")

    def _graph(self, bits: List[int], name: str) -> nx.Graph:
        G = nx.Graph(name=f"{name} graph of P({self.ring.name})")
        for i, p in enumerate(self.points):
            G.add_node(i, label=point_literal(p))
        for i, mask in enumerate(bits):
            for j in _iter_bits(mask >> (i + 1)):
                G.add_edge(i, i + 1 + j)
        return G

    def edges(self, bits: List[int]) -> List[Tuple[int, int]]:
        return [(i, j) for i, mask in enumerate(bits) for j in _iter_bits(mask) if i < j]

    # Products
    def product_coordinates(self) -> List[Tuple[int, ...]]:
        """Component point indices of every point of a product line."""
        if not isinstance(self.ring, ProductRing):
            raise UnsupportedRingError(f"{self.ring.name} is not a product ring")

        def build():
            lines = self.factor_lines or tuple(enumerate_points(f) for f in self.ring.factors)
            R = self.ring
            return [
                tuple(line.index_of_pair(R.project(p.a, k), R.project(p.b, k)) for k, line in enumerate(lines))
                for p in self.points
            ]

        return self._cached("product_coordinates", build)

    def _product_bits(self, getter) -> List[int]:
        # a relation holding in every component, as a product of component bitsets
        coords = self.product_coordinates()
        position = {c: i for i, c in enumerate(coords)}
        factor_bits = [getter(line) for line in self.factor_lines]
        bits = []
        for ci in coords:
            combos: List[Tuple[int, ...]] = [()]
            for fb, a in zip(factor_bits, ci):
                combos = [c + (b,) for c in combos for b in _iter_bits(fb[a])]
            mask = 0
            for c in combos:
                mask |= 1 << position[c]
            bits.append(mask)
        return bits


def supports_subspace_model(R: FiniteRing) -> bool:
    """Whether R is a field whose arithmetic galois can reproduce."""
    return isinstance(R, GFRing) or (isinstance(R, ZModRing) and is_field(R))


def enumerate_points(R: FiniteRing, method: str = "auto") -> ProjectiveLine:
    """Build P(R) with canonically ordered points.

    Args:
        R: The ring.
        method: "auto" builds product lines from their factor lines,
            "generic" always scans admissible pairs of R itself.
    """
    if method == "auto" and isinstance(R, ProductRing):
        return R._cached("line", lambda: _product_line(R))
    key = "line" if not isinstance(R, ProductRing) else "line_generic"
    return R._cached(key, lambda: _generic_line(R))


def _generic_line(R: FiniteRing) -> ProjectiveLine:
    frames = admissible_frames(R)
    covered = set()
    points = []
    inverse_frames = []
    for pair in sorted(frames):
        if pair in covered:
            continue
        a, b = pair
        covered.update((R.mul(u, a), R.mul(u, b)) for u in R.units())
        M, N = frames[pair]
        points.append(ProjPoint(a, b, M[1], R))
        inverse_frames.append(N)
    logger.info("P(%s) has %d points", R.name, len(points))
    return ProjectiveLine(R, points, inverse_frames, method="generic")


def _product_line(R: ProductRing) -> ProjectiveLine:
    factor_lines = [enumerate_points(f) for f in R.factors]
    combos: List[Tuple[int, ...]] = [()]
    for line in factor_lines:
        combos = [c + (i,) for c in combos for i in range(len(line))]

    entries = []
    for combo in combos:
        parts = [line.points[i] for line, i in zip(factor_lines, combo)]
        frames = [line.frames[i] for line, i in zip(factor_lines, combo)]
        a = R.compose([p.a for p in parts])
        b = R.compose([p.b for p in parts])
        witness = (R.compose([p.witness[0] for p in parts]), R.compose([p.witness[1] for p in parts]))
        frame = tuple(
            tuple(R.compose([f[r][c] for f in frames]) for c in range(2)) for r in range(2)
        )
        entries.append(((a, b), witness, frame, combo))
    entries.sort(key=lambda e: e[0])
    points = [ProjPoint(a, b, w, R) for (a, b), w, _, _ in entries]
    line = ProjectiveLine(R, points, [e[2] for e in entries], factor_lines=factor_lines, method="product")
    line._cached("product_coordinates", lambda: [e[3] for e in entries])
    logger.info("P(%s) has %d points", R.name, len(points))
    return line


def point_of(R: FiniteRing, a: int, b: int) -> ProjPoint:
    """The canonical point R(a, b).

    Raises:
        InadmissiblePairError: If (a, b) is not admissible.
    """
    return enumerate_points(R).point_of(a, b)


def distant(p: ProjPoint, q: ProjPoint) -> bool:
    """Whether the stacked representatives form an invertible matrix."""
    if p.ring is not q.ring:
        raise RingMismatchError("points lie on lines over different rings")
    return is_invertible_matrix(p.ring, ((p.a, p.b), (q.a, q.b)))


# Local rings and products

def nondistant_is_equivalence(line: ProjectiveLine) -> bool:
    """Whether "not distant" is transitive on the line (true exactly for local rings)."""
    full = line.full_mask
    neighbours = [full & ~bits for bits in line.distant_bits]
    return all(neighbours[j] == neighbours[i] for i, mask in enumerate(neighbours) for j in _iter_bits(mask))


def parallel_transport_holds(line: ProjectiveLine) -> bool:
    """Whether distance and adjacency depend only on parallel classes.

    Checks every pair for the distant relation and every triple for
    adjacency via a third point: replacing any point by a parallel one must
    not change the verdict.
    """
    cls = line.parallel_class_ids
    n = len(line)
    distant: Dict[Tuple[int, int], bool] = {}
    via: Dict[Tuple[int, int, int], bool] = {}
    for i in range(n):
        for j in range(n):
            verdict = line.distant(i, j)
            if distant.setdefault((cls[i], cls[j]), verdict) != verdict:
                logger.debug("Distance of %d, %d differs within their parallel classes", i, j)
                return False
            for k in range(n):
                verdict = line.adjacent_via(i, j, k)
                if via.setdefault((cls[i], cls[j], cls[k]), verdict) != verdict:
                    logger.debug("Adjacency of %d, %d via %d differs within their parallel classes", i, j, k)
                    return False
    return True


def neighbour_classes(line: ProjectiveLine) -> List[List[int]]:
    """Classes of the non-distant relation.

    Raises:
        PreconditionError: If non-distance is not an equivalence relation.
    """
    if not nondistant_is_equivalence(line):
        raise PreconditionError(f"non-distance is not transitive on P({line.ring.name})")
    classes: Dict[int, List[int]] = {}
    for i, bits in enumerate(line.distant_bits):
        classes.setdefault(bits, []).append(i)
    return list(classes.values())


def split_product_point(line: ProjectiveLine, p) -> List[ProjPoint]:
    """Component points of a point over a product ring."""
    if not isinstance(line.ring, ProductRing):
        raise UnsupportedRingError(f"{line.ring.name} is not a product ring")
    R = line.ring
    point = line.points[line._idx(p)]
    return [
        enumerate_points(f).point_of(R.project(point.a, k), R.project(point.b, k))
        for k, f in enumerate(R.factors)
    ]


def join_product_point(line: ProjectiveLine, parts: Sequence[ProjPoint]) -> ProjPoint:
    """The point over a product ring with the given components."""
    R = line.ring
    if not isinstance(R, ProductRing) or len(parts) != len(R.factors):
        raise UnsupportedRingError("join needs one component point per factor")
    return line.point_of(R.compose([p.a for p in parts]), R.compose([p.b for p in parts]))


def product_relations_hold(line: ProjectiveLine) -> bool:
    """Check the componentwise laws for distant, parallel and adjacent-via on a product line.

    The line's own relations (computed over the product ring) are compared
    with the relations of the factor lines.
    """
    R = line.ring
    if not isinstance(R, ProductRing):
        raise UnsupportedRingError(f"{R.name} is not a product ring")
    factor_lines = [enumerate_points(f) for f in R.factors]
    coords = [
        tuple(fl.index_of_pair(R.project(p.a, k), R.project(p.b, k)) for k, fl in enumerate(factor_lines))
        for p in line.points
    ]
    n = len(line)
    m = len(factor_lines)
    for i in range(n):
        for j in range(n):
            ci, cj = coords[i], coords[j]
            if line.distant(i, j) != all(fl.distant(ci[k], cj[k]) for k, fl in enumerate(factor_lines)):
                return False
            if line.parallel(i, j) != all(fl.parallel(ci[k], cj[k]) for k, fl in enumerate(factor_lines)):
                return False
            for r in range(n):
                cr = coords[r]
                componentwise = any(
                    factor_lines[k].adjacent_via(ci[k], cj[k], cr[k])
                    and all(
                        factor_lines[h].parallel(ci[h], cj[h]) and factor_lines[h].parallel(ci[h], cr[h])
                        for h in range(m) if h != k
                    )
                    for k in range(m)
                )
                if line.adjacent_via(i, j, r) != componentwise:
                    return False
    return True


# Bartolone representation

def bartolone_table(line: ProjectiveLine) -> Dict[int, Pair]:
    """For each point index, the least (a, b) with p = R(ab - 1, a)."""

    def build():
        R = line.ring
        table: Dict[int, Pair] = {}
        for a in R.elements():
            for b in R.elements():
                i = line.index_of_pair(R.sub(R.mul(a, b), R.one), a)
                table.setdefault(i, (a, b))
        if len(table) != len(line):
            raise TheoremViolationError(f"{len(line) - len(table)} points of P({R.name}) lack a representation R(ab-1, a)")
        return table

    return line._cached("bartolone", build)


def bartolone_repr(line: ProjectiveLine, p) -> Pair:
    """Some (a, b) with p = R(ab - 1, a)."""
    return bartolone_table(line)[line._idx(p)]


def intrinsic_line_space(line: ProjectiveLine):
    """Partial linear space whose lines are {p, q} plus every r with p ~ q via r."""
    from distantline.core.geometry import PartialLinearSpace

    bits = line.distant_bits
    cls = line.parallel_class_ids
    adjacency = line.adjacency_bits()
    lines = set()
    n = len(line)
    for i in range(n):
        for j in _iter_bits(adjacency[i] >> (i + 1)):
            j += i + 1
            cover = bits[i] | bits[j]
            members = {i, j}
            for k in range(n):
                if cls[k] != cls[i] and cls[k] != cls[j] and bits[k] & ~cover == 0:
                    members.add(k)
            lines.add(frozenset(members))
    labels = [point_literal(p) for p in line.points]
    return PartialLinearSpace(n, sorted(lines, key=sorted), labels)


def radical_size(R: FiniteRing) -> int:
    return len(jacobson_radical(R))
