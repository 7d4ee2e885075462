"""Grassmann model of projective lines over matrix rings.

A point R(A, B) over M_n(GF(q)) corresponds to the row space of the
n x 2n block matrix [A | B]. Fields are treated as M_1.
"""

import logging
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from distantline.core.caching import OnceCache
from distantline.core.errors import PreconditionError, UnsupportedRingError
from distantline.core.geometry import Collineation, PartialLinearSpace, SegreProduct
from distantline.core.linalg import Subspace, annihilator, enumerate_subspaces, mat_mul
from distantline.core.projline import (
    Matrix2,
    ProjectiveLine,
    ProjPoint,
    enumerate_points,
    matrix_inverse,
    point_literal,
    supports_subspace_model,
)
from distantline.core.rings import FiniteRing, MatrixRing, ProductRing

logger = logging.getLogger(__name__)


def matrix_shape(R: FiniteRing) -> Tuple[int, FiniteRing]:
    """(n, K) for R = M_n(K), or (1, R) for a field.

    Raises:
        UnsupportedRingError: For other rings.
    """
    if isinstance(R, MatrixRing) and supports_subspace_model(R.base):
        return R.n, R.base
    if supports_subspace_model(R):
        return 1, R
    raise UnsupportedRingError(f"{R.name} is not a matrix ring over a finite field")


def element_rows(R: FiniteRing, x: int) -> List[List[int]]:
    """Entries of a matrix ring element (a field element is a 1 x 1 matrix)."""
    if isinstance(R, MatrixRing):
        return R.to_rows(x)
    return [[x]]


def element_from_rows(R: FiniteRing, rows: Sequence[Sequence[int]]) -> int:
    if isinstance(R, MatrixRing):
        return R.from_rows(rows)
    return rows[0][0]


def psi(p: ProjPoint) -> Subspace:
    """Row space of [A | B] for p = R(A, B)."""
    R = p.ring
    n, K = matrix_shape(R)
    A = element_rows(R, p.a)
    B = element_rows(R, p.b)
    return Subspace.from_rows(K.order, 2 * n, [A[i] + B[i] for i in range(n)])


def psi_inverse(line: ProjectiveLine, X: Subspace) -> ProjPoint:
    """The point whose image under psi is X.

    Raises:
        PreconditionError: If dim X is not n.
    """
    R = line.ring
    n, K = matrix_shape(R)
    if X.dim != n or X.ambient_dim != 2 * n or X.q != K.order:
        raise PreconditionError(f"subspace of dimension {X.dim} in GF({X.q})^{X.ambient_dim} is not in G({n}, {2 * n})")
    a = element_from_rows(R, [row[:n] for row in X.basis])
    b = element_from_rows(R, [row[n:] for row in X.basis])
    return line.point_of(a, b)


def dim_intersection(P: Subspace, Q: Subspace) -> int:
    return P.dim_intersection(Q)


def adjacent_subspaces(P: Subspace, Q: Subspace) -> bool:
    return P.dim == Q.dim and P.dim_intersection(Q) == P.dim - 1


def grassmann_distance(P: Subspace, Q: Subspace) -> int:
    if P.dim != Q.dim:
        raise PreconditionError("subspaces of different dimensions")
    return P.dim - P.dim_intersection(Q)


def pencil(M: Subspace, N: Subspace) -> List[Subspace]:
    """All X with M < X < N, for dim M = n-1 and dim N = n+1."""
    if N.dim != M.dim + 2 or not N.contains(M):
        raise PreconditionError("pencil needs M inside N with dim N = dim M + 2")
    extra = []
    current = M
    for row in N.basis:
        grown = current.sum(Subspace.from_rows(M.q, M.ambient_dim, [row]))
        if grown.dim > current.dim:
            extra.append(row)
            current = grown
    v1, v2 = extra
    q = M.q
    members = []
    for c in enumerate_subspaces(q, 1, 2):
        lam, mu = c.basis[0]
        vector = mat_mul(q, [[lam, mu]], [list(v1), list(v2)])[0]
        members.append(M.sum(Subspace.from_rows(q, M.ambient_dim, [vector])))
    return members


def annihilator_formula(line: ProjectiveLine, p, completion: Optional[Matrix2] = None) -> Subspace:
    """Annihilator of psi(p) read off the inverse of a completion.

    With (V, W) the second column of the inverse of [[A, B], [C, D]], the
    annihilator is spanned by the columns of the stacked matrix [V; W],
    written here as the rows of [V^T | W^T].
    """
    i = line._idx(p)
    R = line.ring
    n, K = matrix_shape(R)
    if completion is None:
        N = line.frames[i]
    else:
        N = matrix_inverse(R, completion)
    V = element_rows(R, N[0][1])
    W = element_rows(R, N[1][1])
    rows = [[V[k][c] for k in range(n)] + [W[k][c] for k in range(n)] for c in range(n)]
    return Subspace.from_rows(K.order, 2 * n, rows)


class GrassmannSpace(OnceCache):
    """G(n, 2n) over GF(q), with points in the canonical order of the line."""

    def __init__(self, line: ProjectiveLine):
        super().__init__()
        self.line = line
        self.n, self.K = matrix_shape(line.ring)
        self.q = self.K.order
        self.subspaces: Tuple[Subspace, ...] = tuple(psi(p) for p in line.points)
        self.index: Dict[Subspace, int] = {X: i for i, X in enumerate(self.subspaces)}
        if len(self.index) != len(self.subspaces):
            raise PreconditionError("psi is not injective on this line")

    def __len__(self) -> int:
        return len(self.subspaces)

    def hyperplanes(self, i: int) -> List[Subspace]:
        """(n-1)-dimensional subspaces of the i-th point."""
        X = self.subspaces[i]
        if self.n == 1:
            return [Subspace.zero(self.q, 2 * self.n)]
        return [X.span_of(C.basis) for C in enumerate_subspaces(self.q, self.n - 1, self.n)]

    def superspaces(self, i: int) -> List[Subspace]:
        """(n+1)-dimensional subspaces containing the i-th point."""
        X = self.subspaces[i]
        pivots = set(X.pivots())
        free = [j for j in range(2 * self.n) if j not in pivots]
        result = []
        for c in enumerate_subspaces(self.q, 1, self.n):
            v = [0] * (2 * self.n)
            for j, value in zip(free, c.basis[0]):
                v[j] = value
            result.append(Subspace.from_rows(self.q, 2 * self.n, X.basis + (tuple(v),)))
        return result

    def projective_points_of(self, i: int) -> List[Subspace]:
        X = self.subspaces[i]
        return [X.span_of(c.basis) for c in enumerate_subspaces(self.q, 1, self.n)]

    def _flags(self):
        def build():
            stars: Dict[Subspace, set] = {}
            tops: Dict[Subspace, set] = {}
            for i in range(len(self.subspaces)):
                for M in self.hyperplanes(i):
                    stars.setdefault(M, set()).add(i)
                for N in self.superspaces(i):
                    tops.setdefault(N, set()).add(i)
            return (
                {M: frozenset(s) for M, s in stars.items()},
                {N: frozenset(s) for N, s in tops.items()},
            )

        return self._cached("flags", build)

    @property
    def stars(self) -> Dict[Subspace, FrozenSet[int]]:
        """Points through each (n-1)-subspace."""
        return self._flags()[0]

    @property
    def tops(self) -> Dict[Subspace, FrozenSet[int]]:
        """Points inside each (n+1)-subspace."""
        return self._flags()[1]

    @property
    def star_sets(self) -> FrozenSet[FrozenSet[int]]:
        return self._cached("star_sets", lambda: frozenset(self.stars.values()))

    @property
    def top_sets(self) -> FrozenSet[FrozenSet[int]]:
        return self._cached("top_sets", lambda: frozenset(self.tops.values()))

    @property
    def lines(self) -> Tuple[FrozenSet[int], ...]:
        """Pencils, as point index sets."""

        def build():
            stars, tops = self.stars, self.tops
            found = set()
            for i in range(len(self.subspaces)):
                for M in self.hyperplanes(i):
                    for N in self.superspaces(i):
                        found.add(stars[M] & tops[N])
            return tuple(sorted(found, key=sorted))

        return self._cached("lines", build)

    @property
    def space(self) -> PartialLinearSpace:
        def build():
            labels = [point_literal(p) for p in self.line.points]
            return PartialLinearSpace(len(self.subspaces), self.lines, labels)

        return self._cached("space", build)

    @property
    def perp(self) -> List[int]:
        """Index of the annihilator of each point."""
        return self._cached("perp", lambda: [self.index[annihilator(X)] for X in self.subspaces])

    def _projective_incidence(self):
        def build():
            points = enumerate_subspaces(self.q, 1, 2 * self.n)
            position = {P: k for k, P in enumerate(points)}
            through: List[set] = [set() for _ in points]
            for i in range(len(self.subspaces)):
                for P in self.projective_points_of(i):
                    through[position[P]].add(i)
            sets = [frozenset(s) for s in through]
            return points, sets, {s: k for k, s in enumerate(sets)}

        return self._cached("projective_incidence", build)

    @property
    def projective_points(self) -> Tuple[Subspace, ...]:
        """Points of PG(2n-1, q) in echelon order."""
        return self._projective_incidence()[0]

    @property
    def points_through(self) -> List[FrozenSet[int]]:
        """For each projective point, the Grassmann points containing it."""
        return self._projective_incidence()[1]

    @property
    def projective_lookup(self) -> Dict[FrozenSet[int], int]:
        return self._projective_incidence()[2]


def grassmann_space(line: ProjectiveLine) -> GrassmannSpace:
    """The Grassmann model of a line over M_n(GF(q)), built once per line."""
    return line._cached("grassmann_space", lambda: GrassmannSpace(line))


def all_lines(space: GrassmannSpace) -> Tuple[FrozenSet[int], ...]:
    return space.lines


def grassmann_graph(line: ProjectiveLine) -> nx.Graph:
    """Vertices are psi-images; edges join subspaces meeting in dimension n-1."""
    space = grassmann_space(line)
    G = nx.Graph()
    G.add_nodes_from(range(len(space)))
    for i, X in enumerate(space.subspaces):
        for j in range(i + 1, len(space)):
            if adjacent_subspaces(X, space.subspaces[j]):
                G.add_edge(i, j)
    return G


def collineation_from_matrix(space: GrassmannSpace, G: Sequence[Sequence[int]], dual: bool = False) -> Collineation:
    """X -> X G, or X -> (X^perp) G when dual is set."""
    perp = space.perp
    table = []
    for i, X in enumerate(space.subspaces):
        Y = space.subspaces[perp[i]] if dual else X
        table.append(space.index[Y.image(G)])
    return Collineation(space.space, space.space, tuple(table))


# Products

def factor_lines(line: ProjectiveLine) -> Tuple[ProjectiveLine, ...]:
    if not isinstance(line.ring, ProductRing):
        return (line,)
    return line.factor_lines or tuple(enumerate_points(f) for f in line.ring.factors)


def component_coordinates(line: ProjectiveLine) -> List[Tuple[int, ...]]:
    if not isinstance(line.ring, ProductRing):
        return [(i,) for i in range(len(line))]
    return line.product_coordinates()


def product_psi(line: ProjectiveLine, p) -> Tuple[Subspace, ...]:
    """Componentwise psi of a point over a product of matrix rings."""
    coords = component_coordinates(line)[line._idx(p)]
    spaces = [grassmann_space(fl) for fl in factor_lines(line)]
    return tuple(space.subspaces[c] for space, c in zip(spaces, coords))


def segre_model(line: ProjectiveLine) -> Tuple[SegreProduct, Tuple[int, ...]]:
    """Segre product of the factor Grassmann spaces and the point embedding."""

    def build():
        spaces = [grassmann_space(fl).space for fl in factor_lines(line)]
        segre = SegreProduct(spaces)
        embedding = tuple(segre.index(c) for c in component_coordinates(line))
        return segre, embedding

    return line._cached("segre_model", build)


def check_distance_law(line: ProjectiveLine) -> bool:
    """Adjacency-graph distance equals the summed Grassmann distances.

    Also checks that points are distant exactly when the distance is maximal.
    """
    components = [product_psi(line, i) for i in range(len(line))]
    maximum = sum(X.dim for X in components[0])
    lengths = dict(nx.all_pairs_shortest_path_length(line.adjacency_graph()))
    for i in range(len(line)):
        for j in range(len(line)):
            expected = sum(grassmann_distance(X, Y) for X, Y in zip(components[i], components[j]))
            if lengths[i].get(j) != expected:
                return False
            if line.distant(i, j) != (expected == maximum):
                return False
    return True


def intrinsic_matches_grassmann(line: ProjectiveLine) -> bool:
    """Whether the line's intrinsic line space equals its Segre/Grassmann model."""
    from distantline.core.projline import intrinsic_line_space

    intrinsic = intrinsic_line_space(line)
    segre, embedding = segre_model(line)
    mapped = {frozenset(embedding[x] for x in L) for L in intrinsic.lines}
    return mapped == set(segre.lines)
