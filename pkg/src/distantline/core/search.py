"""Isomorphism search between graphs held as neighbour bitsets.

The search assigns source vertices one at a time, always picking the vertex
with the fewest remaining candidates. Each assignment prunes every other
domain to the targets whose (non-)adjacency matches, and vertices left with
a single candidate are assigned immediately.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger(__name__)

State = Tuple[List[int], List[int], List[int]]


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def refine_colors(source: Sequence[int], target: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Joint colour refinement of two graphs.

    Colours are comparable across the two graphs; an isomorphism must map
    every vertex to a vertex of the same colour.
    """
    nbrs_s = [list(_iter_bits(b)) for b in source]
    nbrs_t = [list(_iter_bits(b)) for b in target]
    cs = [len(n) for n in nbrs_s]
    ct = [len(n) for n in nbrs_t]
    while True:
        signatures: Dict[tuple, int] = {}
        new_s = [signatures.setdefault((cs[v], tuple(sorted(cs[u] for u in nbrs_s[v]))), len(signatures)) for v in range(len(cs))]
        new_t = [signatures.setdefault((ct[v], tuple(sorted(ct[u] for u in nbrs_t[v]))), len(signatures)) for v in range(len(ct))]
        if len(set(new_s)) == len(set(cs)) and len(set(new_t)) == len(set(ct)):
            return new_s, new_t
        cs, ct = new_s, new_t


class IsomorphismSearch:
    """Backtracking over bijections preserving adjacency and non-adjacency.

    Args:
        source: Neighbour bitset of each source vertex.
        target: Neighbour bitset of each target vertex.
    """

    def __init__(self, source: Sequence[int], target: Sequence[int]):
        self.n = len(source)
        self.source = list(source)
        self.target = list(target)
        full = (1 << self.n) - 1
        self.target_non = [full & ~b & ~(1 << w) for w, b in enumerate(self.target)]
        self.nodes = 0
        self.compatible = len(source) == len(target)
        self.initial_domains: List[int] = []
        if self.compatible:
            colors_s, colors_t = refine_colors(self.source, self.target)
            if sorted(colors_s) != sorted(colors_t):
                self.compatible = False
            else:
                by_color: Dict[int, int] = {}
                for w, c in enumerate(colors_t):
                    by_color[c] = by_color.get(c, 0) | 1 << w
                self.initial_domains = [by_color[c] for c in colors_s]

    def _assign(self, v: int, w: int, state: State) -> Optional[State]:
        domains, mapping, unassigned = state
        domains = domains[:]
        mapping = mapping[:]
        unassigned = unassigned[:]
        pending = [(v, w)]
        source, target, target_non = self.source, self.target, self.target_non
        while pending:
            v, w = pending.pop()
            if mapping[v] != -1:
                if mapping[v] != w:
                    return None
                continue
            mapping[v] = w
            unassigned.remove(v)
            adjacent = source[v]
            keep_adj = target[w]
            keep_non = target_non[w]
            clear = ~(1 << w)
            for u in unassigned:
                domain = domains[u] & clear & (keep_adj if adjacent >> u & 1 else keep_non)
                if not domain:
                    return None
                domains[u] = domain
                if domain & (domain - 1) == 0:
                    pending.append((u, domain.bit_length() - 1))
        return domains, mapping, unassigned

    def _start(self, fixed: Sequence[Tuple[int, int]] = ()) -> Optional[State]:
        if not self.compatible:
            return None
        state: Optional[State] = (self.initial_domains[:], [-1] * self.n, list(range(self.n)))
        for v, w in fixed:
            if not state[0][v] >> w & 1 and state[1][v] != w:
                return None
            state = self._assign(v, w, state)
            if state is None:
                return None
        for v in range(self.n):
            domain = state[0][v]
            if state[1][v] == -1 and domain & (domain - 1) == 0:
                state = self._assign(v, domain.bit_length() - 1, state)
                if state is None:
                    return None
        return state

    def _walk(self, state: State) -> Iterator[List[int]]:
        self.nodes += 1
        domains, mapping, unassigned = state
        if not unassigned:
            yield mapping
            return
        v = min(unassigned, key=lambda u: (domains[u].bit_count(), u))
        for w in _iter_bits(domains[v]):
            child = self._assign(v, w, state)
            if child is not None:
                yield from self._walk(child)

    def isomorphisms(self, fixed: Sequence[Tuple[int, int]] = ()) -> Iterator[List[int]]:
        """All isomorphisms extending the fixed assignments."""
        state = self._start(fixed)
        if state is None:
            return
        yield from self._walk(state)

    def first(self, fixed: Sequence[Tuple[int, int]] = ()) -> Optional[List[int]]:
        return next(self.isomorphisms(fixed), None)

    def candidates(self, v: int, fixed: Sequence[Tuple[int, int]] = ()) -> List[int]:
        """Targets still possible for v once the fixed assignments are propagated."""
        state = self._start(fixed)
        if state is None:
            return []
        if state[1][v] != -1:
            return [state[1][v]]
        return list(_iter_bits(state[0][v]))


def list_isomorphisms(source: Sequence[int], target: Sequence[int]) -> List[List[int]]:
    """All isomorphisms, sorted lexicographically."""
    search = IsomorphismSearch(source, target)
    found = sorted(list(m) for m in search.isomorphisms())
    logger.debug("Isomorphism listing: %d maps, %d search nodes", len(found), search.nodes)
    return found


def count_by_listing(source: Sequence[int], target: Sequence[int]) -> int:
    search = IsomorphismSearch(source, target)
    count = sum(1 for _ in search.isomorphisms())
    logger.debug("Counted %d isomorphisms in %d search nodes", count, search.nodes)
    return count


@dataclass
class AutomorphismCount:
    """Group order, the method that produced it, and the generators found."""

    count: int
    method: str
    generators: List[List[int]]


def count_automorphisms_orbit_stabilizer(bits: Sequence[int]) -> AutomorphismCount:
    """|Aut| as the product of basic orbit lengths along a stabilizer chain.

    Orbits are closed under the automorphisms discovered so far; a
    candidate image is only searched for when it is not yet in the orbit.
    """
    search = IsomorphismSearch(bits, bits)
    n = len(bits)
    fixed: List[Tuple[int, int]] = []
    total = 1
    generators: List[List[int]] = []
    for v in range(n):
        state = search._start(fixed)
        if state is None:
            raise RuntimeError("identity is not an automorphism")
        if not state[2]:
            break
        if state[1][v] != -1:
            fixed.append((v, v))
            continue
        orbit = {v}
        level_generators: List[List[int]] = []
        for w in search.candidates(v, fixed):
            if w in orbit:
                continue
            g = search.first(fixed + [(v, w)])
            if g is None:
                continue
            level_generators.append(g)
            frontier = list(orbit)
            while frontier:
                x = frontier.pop()
                for h in level_generators:
                    y = h[x]
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
        total *= len(orbit)
        generators.extend(level_generators)
        fixed.append((v, v))
    logger.debug("Orbit-stabilizer count %d from %d generators", total, len(generators))
    return AutomorphismCount(total, "orbit-stabilizer", generators)
