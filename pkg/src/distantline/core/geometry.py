"""Partial linear spaces, Segre products and collineations between them."""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from distantline.core.caching import OnceCache
from distantline.core.config import get_config
from distantline.core.errors import (
    CapExceededError,
    NotACollineationError,
    PreconditionError,
    TheoremViolationError,
)

logger = logging.getLogger(__name__)


class PartialLinearSpace(OnceCache):
    """Points 0..n_points-1 and lines given as point sets.

    Args:
        n_points: Number of points.
        lines: Lines as iterables of point indices.
        labels: Optional display label per point.
    """

    def __init__(self, n_points: int, lines, labels: Optional[Sequence[str]] = None):
        super().__init__()
        self.n_points = n_points
        self.lines: Tuple[FrozenSet[int], ...] = tuple(frozenset(line) for line in lines)
        self.labels = list(labels) if labels is not None else None

    def __repr__(self) -> str:
        return f"<{type(self).__name__}: {self.n_points} points, {len(self.lines)} lines>"

    @property
    def lines_through(self) -> List[Tuple[int, ...]]:
        """Indices of the lines through each point."""

        def build():
            through: List[List[int]] = [[] for _ in range(self.n_points)]
            for k, line in enumerate(self.lines):
                for x in line:
                    through[x].append(k)
            return [tuple(ks) for ks in through]

        return self._cached("lines_through", build)

    @property
    def _pair_lines(self) -> Dict[Tuple[int, int], int]:
        def build():
            pairs: Dict[Tuple[int, int], int] = {}
            for k, line in enumerate(self.lines):
                members = sorted(line)
                for i, x in enumerate(members):
                    for y in members[i + 1:]:
                        if (x, y) in pairs:
                            self._once["pair_conflict"] = True
                        pairs[(x, y)] = k
            return pairs

        return self._cached("pair_lines", build)

    @property
    def line_lookup(self) -> Dict[FrozenSet[int], int]:
        return self._cached("line_lookup", lambda: {line: k for k, line in enumerate(self.lines)})

    def line_index(self, x: int, y: int) -> Optional[int]:
        """Index of the line joining x and y, if any."""
        if x == y:
            return None
        return self._pair_lines.get((x, y) if x < y else (y, x))

    def collinear(self, x: int, y: int) -> bool:
        return self.line_index(x, y) is not None

    def is_partial_linear_space(self, min_line_size: int = 2) -> bool:
        """Every line has min_line_size points and two points share at most one line."""
        if any(len(line) < min_line_size for line in self.lines):
            return False
        self._pair_lines
        return not self._once.get("pair_conflict", False)

    def collinearity_graph(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(range(self.n_points))
        G.add_edges_from(self._pair_lines)
        return G

    def to_json(self) -> dict:
        return {"points": self.n_points, "lines": [sorted(line) for line in self.lines]}


class SegreProduct(PartialLinearSpace):
    """Segre product: lines vary in exactly one coordinate.

    Points are encoded in mixed radix, first factor most significant.
    """

    def __init__(self, factors: Sequence[PartialLinearSpace]):
        if not factors:
            raise PreconditionError("a Segre product needs at least one factor")
        self.factors = tuple(factors)
        self.sizes = [f.n_points for f in self.factors]
        self.weights = [math.prod(self.sizes[i + 1:]) for i in range(len(self.sizes))]
        total = math.prod(self.sizes)

        lines = []
        directions = []
        for j, factor in enumerate(self.factors):
            for base in range(total):
                if (base // self.weights[j]) % self.sizes[j] != 0:
                    continue
                for line in factor.lines:
                    lines.append(frozenset(base + x * self.weights[j] for x in line))
                    directions.append(j)
        super().__init__(total, lines)
        self.directions: Tuple[int, ...] = tuple(directions)

    def coords(self, x: int) -> Tuple[int, ...]:
        return tuple((x // w) % s for w, s in zip(self.weights, self.sizes))

    def index(self, coords: Sequence[int]) -> int:
        return sum(c * w for c, w in zip(coords, self.weights))


def segre_product(spaces: Sequence[PartialLinearSpace]) -> SegreProduct:
    return SegreProduct(spaces)


def disjoint_union(spaces: Sequence[PartialLinearSpace]) -> PartialLinearSpace:
    """Side-by-side union of spaces with no lines between them."""
    offset = 0
    lines = []
    for space in spaces:
        lines.extend(frozenset(x + offset for x in line) for line in space.lines)
        offset += space.n_points
    return PartialLinearSpace(offset, lines)


# Strong subspaces

def _closure(space: PartialLinearSpace, seed) -> Optional[FrozenSet[int]]:
    """Smallest line-closed superset of seed, or None if it is not a clique."""
    members: set = set()
    queue = list(seed)
    lines = space.lines
    while queue:
        x = queue.pop()
        if x in members:
            continue
        joining = []
        for y in members:
            k = space.line_index(x, y)
            if k is None:
                return None
            joining.append(k)
        members.add(x)
        for k in joining:
            queue.extend(z for z in lines[k] if z not in members)
    return frozenset(members)


def strong_subspaces(space: PartialLinearSpace, cap: Optional[int] = None) -> List[Tuple[int, ...]]:
    """All inclusion-maximal strong subspaces, grown from lines.

    Raises:
        CapExceededError: If the space has more points than the cap.
    """
    cap = cap if cap is not None else get_config().strong_subspace_cap
    if space.n_points > cap:
        raise CapExceededError("strong subspace search", space.n_points, cap)

    memo: Dict[FrozenSet[int], Optional[FrozenSet[int]]] = {}

    def close(seed: FrozenSet[int]) -> Optional[FrozenSet[int]]:
        if seed not in memo:
            memo[seed] = _closure(space, seed)
        return memo[seed]

    neighbours = [0] * space.n_points
    for (x, y) in space._pair_lines:
        neighbours[x] |= 1 << y
        neighbours[y] |= 1 << x

    found = {line for line in space.lines}
    frontier = list(found)
    while frontier:
        grown = []
        for T in frontier:
            common = (1 << space.n_points) - 1
            for x in T:
                common &= neighbours[x]
            while common:
                low = common & -common
                x = low.bit_length() - 1
                common ^= low
                S = close(T | {x})
                if S is not None and S not in found:
                    found.add(S)
                    grown.append(S)
        frontier = grown
        logger.debug("strong subspace search: %d found, %d new", len(found), len(grown))

    maximal = [S for S in found if not any(S < other for other in found)]
    covered = set().union(*found) if found else set()
    maximal.extend(frozenset([x]) for x in range(space.n_points) if x not in covered)
    return sorted(tuple(sorted(S)) for S in maximal)


def line_link_components(space: PartialLinearSpace) -> List[int]:
    """Component id of every line under the strong-subspace chain relation.

    Two lines through a common point are linked when the closure of their
    union is a strong subspace; chains of overlapping strong subspaces
    connect exactly the lines that such links connect.
    """

    def build():
        parent = list(range(len(space.lines)))

        def find(k: int) -> int:
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for x in range(space.n_points):
            through = space.lines_through[x]
            for i, k1 in enumerate(through):
                for k2 in through[i + 1:]:
                    r1, r2 = find(k1), find(k2)
                    if r1 == r2:
                        continue
                    if _closure(space, space.lines[k1] | space.lines[k2]) is not None:
                        parent[r2] = r1
        return [find(k) for k in range(len(space.lines))]

    return space._cached("line_link_components", build)


def approx_classes_at(space: PartialLinearSpace, p: int) -> int:
    """Number of chain classes among strong subspaces through p with >= 2 points."""
    components = line_link_components(space)
    return len({components[k] for k in space.lines_through[p]})


def is_strongly_connected(space: PartialLinearSpace) -> bool:
    """Every point is reachable from every strong subspace by an overlapping chain."""
    if not space.lines:
        return True
    if any(not ks for ks in space.lines_through):
        return False
    return len(set(line_link_components(space))) == 1


# Collineations

@dataclass(frozen=True)
class Collineation:
    """A point bijection between partial linear spaces."""

    source: PartialLinearSpace = field(repr=False)
    target: PartialLinearSpace = field(repr=False)
    table: Tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def is_bijective(self) -> bool:
        return (
            self.source.n_points == self.target.n_points
            and sorted(self.table) == list(range(self.target.n_points))
        )

    def is_collineation(self) -> bool:
        """Lines go onto lines in both directions."""
        if not self.is_bijective() or len(self.source.lines) != len(self.target.lines):
            return False
        lookup = self.target.line_lookup
        images = set()
        for line in self.source.lines:
            image = frozenset(self.table[x] for x in line)
            if image not in lookup:
                return False
            images.add(image)
        return len(images) == len(self.target.lines)

    def compose(self, other: "Collineation") -> "Collineation":
        """Apply self, then other."""
        return Collineation(self.source, other.target, tuple(other.table[y] for y in self.table))

    def inverse(self) -> "Collineation":
        table = [0] * len(self.table)
        for x, y in enumerate(self.table):
            table[y] = x
        return Collineation(self.target, self.source, tuple(table))


def identity_collineation(space: PartialLinearSpace) -> Collineation:
    return Collineation(space, space, tuple(range(space.n_points)))


@dataclass(frozen=True)
class ProductCollineationDecomposition:
    """f(c_1, ..., c_m)[sigma[k]] = components[k](c_k)."""

    sigma: Tuple[int, ...]
    components: Tuple[Collineation, ...]


def compose_product_collineation(
    sigma: Sequence[int],
    components: Sequence[Collineation],
    source: SegreProduct,
    target: SegreProduct,
) -> Collineation:
    """Build the product collineation routing component k to target factor sigma[k]."""
    table = []
    for x in range(source.n_points):
        c = source.coords(x)
        image = [0] * len(c)
        for k, comp in enumerate(components):
            image[sigma[k]] = comp.table[c[k]]
        table.append(target.index(image))
    return Collineation(source, target, tuple(table))


def decompose_product_collineation(f: Collineation) -> ProductCollineationDecomposition:
    """Split a collineation between Segre products into a factor permutation and component maps.

    Raises:
        NotACollineationError: If f does not carry lines onto lines.
        PreconditionError: If a factor is not strongly connected or has no line.
        TheoremViolationError: If the decomposition fails despite the hypotheses.
    """
    source, target = f.source, f.target
    if not isinstance(source, SegreProduct) or not isinstance(target, SegreProduct):
        raise PreconditionError("both spaces must be Segre products")
    if not f.is_collineation():
        raise NotACollineationError("map does not carry lines onto lines")
    for space in source.factors + target.factors:
        if not space.lines or not is_strongly_connected(space):
            raise PreconditionError("every factor must be strongly connected with at least one line")

    m = len(source.factors)
    classes_source = approx_classes_at(source, 0)
    classes_target = approx_classes_at(target, f.table[0])
    if classes_source != classes_target or classes_source != m or len(target.factors) != m:
        raise TheoremViolationError(
            f"factor counts disagree: {m} vs {len(target.factors)} (chain classes {classes_source}, {classes_target})"
        )

    lookup = target.line_lookup
    sigma: List[Optional[int]] = [None] * m
    for k, line in enumerate(source.lines):
        image = lookup[frozenset(f.table[x] for x in line)]
        j, j_image = source.directions[k], target.directions[image]
        if sigma[j] is None:
            sigma[j] = j_image
        elif sigma[j] != j_image:
            raise TheoremViolationError(f"direction {j} is sent to both {sigma[j]} and {j_image}")
    if sorted(sigma) != list(range(m)):
        raise TheoremViolationError(f"direction map {sigma} is not a permutation")

    base = [0] * m
    components = []
    for k in range(m):
        table = []
        for c in range(source.sizes[k]):
            point = list(base)
            point[k] = c
            table.append(target.coords(f.table[source.index(point)])[sigma[k]])
        comp = Collineation(source.factors[k], target.factors[sigma[k]], tuple(table))
        if not comp.is_collineation():
            raise TheoremViolationError(f"component {k} is not a collineation")
        components.append(comp)

    for x in range(source.n_points):
        c = source.coords(x)
        image = target.coords(f.table[x])
        for k in range(m):
            if image[sigma[k]] != components[k].table[c[k]]:
                raise TheoremViolationError(f"point {x} does not factor through the components")

    return ProductCollineationDecomposition(tuple(sigma), tuple(components))
