"""Named acceptance suites.

Each suite records its checks on a ReportLogger. Suites have a quick
default form; ``full`` switches to exhaustive sweeps where the quick form
samples.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

import numpy as np

from distantline.core.config import get_config
from distantline.core.errors import TheoremViolationError, UnsupportedRingError
from distantline.core.geometry import (
    approx_classes_at,
    compose_product_collineation,
    decompose_product_collineation,
    segre_product,
)
from distantline.core.grassmann import (
    annihilator_formula,
    collineation_from_matrix,
    grassmann_space,
    intrinsic_matches_grassmann,
    matrix_shape,
    psi,
)
from distantline.core.jordan import classify_jordan, enumerate_jordan_isomorphisms, recompose_jordan
from distantline.core.linalg import annihilator, count_gl, gaussian_binomial, is_invertible
from distantline.core.morphisms import (
    CertificateKind,
    PointMap,
    compose,
    count_dis_automorphisms,
    decompose_product_dis_iso,
    enumerate_dis_isomorphisms,
    factorize_dis_automorphism,
    induced_by_antihom,
    induced_by_hom,
    induced_by_jordan,
    is_adj_isomorphism,
    is_dis_isomorphism,
    is_grassmann_collineation,
    projectivity,
    sweep_factorizations,
    verify_wreath_structure,
)
from distantline.core.projline import (
    bartolone_table,
    enumerate_points,
    find_completion,
    is_invertible_matrix,
    nondistant_is_equivalence,
    parallel_transport_holds,
    radical_size,
)
from distantline.core.rings import FiniteRing, identity_ring_map, transpose_map
from distantline.core.search import count_automorphisms_orbit_stabilizer
from distantline.spec import parse_ring
from distantline.verify.report import ReportLogger

logger = logging.getLogger(__name__)

CARDINALITY_RINGS = {
    "GF(2)": 3,
    "Z4": 6,
    "dual(GF(2))": 6,
    "Z6": 12,
    "M(2,GF(2))": 35,
    "M(2,GF(3))": 130,
}
LOCAL_RINGS = ("Z4", "Z9", "GF(2^2)", "dual(GF(2))")
AUTOMORPHISM_COUNTS = {
    "GF(2)": 6,
    "Z4": 48,
    "dual(GF(2))": 48,
    "GF(2) x GF(2)": 72,
    "Z6": 144,
}


@dataclass
class SuiteOptions:
    full: bool = False
    seed: int = 0


Suite = Callable[[ReportLogger, SuiteOptions], None]


def _oracle_count(R: FiniteRing) -> int:
    """|P(R)| as admissible pairs over units, or as n-subspaces of GF(q)^2n."""
    try:
        n, K = matrix_shape(R)
        return gaussian_binomial(2 * n, n, K.order)
    except UnsupportedRingError:
        pairs = sum(1 for a in R.elements() for b in R.elements() if find_completion(R, a, b) is not None)
        return pairs // len(R.units())


def suite_cardinalities(report: ReportLogger, options: SuiteOptions) -> None:
    for text, expected in CARDINALITY_RINGS.items():
        R = parse_ring(text)
        line = enumerate_points(R)
        report.check(f"|P({text})|", expected, len(line))
        report.check(f"|P({text})| oracle", expected, _oracle_count(R))


def suite_parallel_classes(report: ReportLogger, options: SuiteOptions) -> None:
    for text in CARDINALITY_RINGS:
        R = parse_ring(text)
        line = enumerate_points(R)
        sizes = sorted({len(c) for c in line.parallel_classes()})
        report.check(f"parallel class sizes on P({text})", [radical_size(R)], sizes)


def suite_local_ring_laws(report: ReportLogger, options: SuiteOptions) -> None:
    for text in LOCAL_RINGS:
        line = enumerate_points(parse_ring(text))
        n = len(line)
        distant = line.distant_bits
        adjacency = line.adjacency_bits("definitional")
        report.check(f"non-distance is an equivalence on P({text})", True, nondistant_is_equivalence(line))
        parallel_is_nondistant = all(
            line.parallel(i, j) == (not distant[i] >> j & 1) for i in range(n) for j in range(n)
        )
        report.check(f"parallel = non-distant on P({text})", True, parallel_is_nondistant)
        report.check(f"adjacent = distant on P({text})", distant, adjacency)
        report.check(f"relations are invariant under parallel transport on P({text})", True, parallel_transport_holds(line))
    report.check("non-distance is not transitive on P(Z6)", False, nondistant_is_equivalence(enumerate_points(parse_ring("Z6"))))


def suite_psi_model(report: ReportLogger, options: SuiteOptions) -> None:
    for text in ("M(2,GF(2))", "M(2,GF(3))"):
        line = enumerate_points(parse_ring(text))
        space = grassmann_space(line)
        n = space.n
        X = space.subspaces
        distant = line.distant_bits
        adjacency = line.adjacency_bits("definitional")
        size = len(line)
        distant_ok = all(
            bool(distant[i] >> j & 1) == X[i].is_complement(X[j]) for i in range(size) for j in range(size)
        )
        adjacent_ok = all(
            bool(adjacency[i] >> j & 1) == (X[i].dim_intersection(X[j]) == n - 1)
            for i in range(size) for j in range(size)
        )
        report.check(f"distant = complementary on P({text})", True, distant_ok)
        report.check(f"adjacent = meeting in dimension n-1 on P({text})", True, adjacent_ok)
        report.check(f"psi image size on P({text})", gaussian_binomial(2 * n, n, space.q), len(set(X)))
        report.check(f"intrinsic lines = Grassmann pencils on P({text})", True, intrinsic_matches_grassmann(line))


def suite_annihilator(report: ReportLogger, options: SuiteOptions) -> None:
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    space = grassmann_space(line)
    mismatches = [i for i, p in enumerate(line.points) if annihilator_formula(line, p) != annihilator(psi(p))]
    report.check("annihilator formula = kernel on P(M(2,GF(2)))", [], mismatches)
    perp = space.perp
    report.check("annihilation is an involution", list(range(len(line))), [perp[perp[i]] for i in range(len(line))])


def suite_automorphism_counts(report: ReportLogger, options: SuiteOptions) -> None:
    for text, expected in AUTOMORPHISM_COUNTS.items():
        result = count_dis_automorphisms(enumerate_points(parse_ring(text)))
        report.check(f"|Aut P({text})| ({result.method})", expected, result.count)
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    expected = 2 * count_gl(4, 2)
    if options.full:
        result = count_dis_automorphisms(line)
    else:
        result = count_automorphisms_orbit_stabilizer(line.distant_bits)
    report.check(f"|Aut P(M(2,GF(2)))| ({result.method}) = 2 |GL(4,2)|", expected, result.count)
    fields = {"GF(3)": math.factorial(4), "GF(2^2)": math.factorial(5)}
    for text, expected in fields.items():
        result = count_dis_automorphisms(enumerate_points(parse_ring(text)))
        report.check(f"every bijection of P({text}) is a dis-automorphism", expected, result.count)


def _random_invertible(R: FiniteRing, rng: np.random.Generator):
    while True:
        entries = [int(x) for x in rng.integers(0, R.order, size=4)]
        gamma = ((entries[0], entries[1]), (entries[2], entries[3]))
        if is_invertible_matrix(R, gamma):
            return gamma


def suite_factorization(report: ReportLogger, options: SuiteOptions) -> None:
    R = parse_ring("M(2,GF(2))")
    line = enumerate_points(R)
    identity = factorize_dis_automorphism(projectivity(line, ((R.one, R.zero), (R.zero, R.one))))
    report.check("identity factorizes as an isomorphism", CertificateKind.ISOMORPHISM.value, identity.kind.value)
    transpose = induced_by_antihom(transpose_map(R), line, line)
    certificate = factorize_dis_automorphism(transpose)
    report.check("transpose factorizes as an anti-isomorphism", CertificateKind.ANTI_ISOMORPHISM.value, certificate.kind.value)
    report.check("transpose certificate recomposes", transpose.table, certificate.recompose(line).table)

    if options.full:
        result = sweep_factorizations(line)
        report.check("dis-automorphisms factorized", 2 * count_gl(4, 2), result.checked)
        report.check("factorization failures", [], result.failures)
        report.note("factorization kinds", result.kinds)
        report.note("sampled", result.sampled)
        return

    rng = np.random.default_rng(options.seed)
    samples = min(get_config().sample_size, 100)
    hom = induced_by_hom(identity_ring_map(R), line, line)
    wrong_kind = 0
    failures = 0
    predicates_agree = True
    for _ in range(samples):
        anti = bool(rng.integers(0, 2))
        f = compose(transpose if anti else hom, projectivity(line, _random_invertible(R, rng)))
        try:
            certificate = factorize_dis_automorphism(f)
        except TheoremViolationError:
            failures += 1
            continue
        expected_kind = CertificateKind.ANTI_ISOMORPHISM if anti else CertificateKind.ISOMORPHISM
        wrong_kind += certificate.kind != expected_kind
        if certificate.recompose(line).table != f.table:
            failures += 1
        predicates_agree &= is_dis_isomorphism(f) and is_adj_isomorphism(f) and is_grassmann_collineation(f)

    for _ in range(samples):
        table = tuple(int(x) for x in rng.permutation(len(line)))
        f = PointMap(line, line, table)
        verdicts = {is_dis_isomorphism(f), is_adj_isomorphism(f), is_grassmann_collineation(f)}
        predicates_agree &= len(verdicts) == 1

    report.check(f"factorization failures in {samples} random maps", 0, failures)
    report.check("certificate kinds match construction", 0, wrong_kind)
    report.check("dis-iso, adj-iso and Grassmann collineation agree", True, predicates_agree)
    report.note("sampled", True)


def suite_product_theorem(report: ReportLogger, options: SuiteOptions) -> None:
    for text, identity_only in (("GF(2) x GF(2)", False), ("Z6", True)):
        line = enumerate_points(parse_ring(text))
        maps = enumerate_dis_isomorphisms(line, line)
        sigmas: Counter = Counter()
        exact = 0
        for f in maps:
            decomposition = decompose_product_dis_iso(f)
            sigmas[decomposition.sigma] += 1
            exact += decomposition.recompose().table == f.table
        report.check(f"dis-automorphisms of P({text}) decomposed exactly", len(maps), exact)
        if identity_only:
            report.check(f"sigma is the identity on P({text})", [(0, 1)], sorted(sigmas))
        else:
            report.check(f"factor swaps on P({text})", len(maps) // 2, sigmas[(1, 0)])


def suite_wreath_structure(report: ReportLogger, options: SuiteOptions) -> None:
    for text in ("Z4", "dual(GF(2))"):
        result = verify_wreath_structure(parse_ring(text))
        report.check(
            f"|Aut P({text})| = ({result.radical_size}!)^{result.quotient_points} * {result.quotient_count}",
            result.expected,
            result.line_count,
        )


def suite_jordan_classification(report: ReportLogger, options: SuiteOptions) -> None:
    R = parse_ring("M(2,GF(2))")
    omegas = enumerate_jordan_isomorphisms(R)
    kinds: Counter = Counter()
    exact = 0
    for omega in omegas:
        classification = classify_jordan(omega)
        kinds[classification.kind.value] += 1
        exact += recompose_jordan(classification, R).table == omega.table
    report.check("Jordan automorphisms of M(2,GF(2))", 12, len(omegas))
    report.check("isomorphisms / anti-isomorphisms", {"isomorphism": 6, "anti-isomorphism": 6}, dict(kinds))
    report.check("classifications recompose exactly", len(omegas), exact)

    P = parse_ring("GF(2) x GF(2)")
    product_maps = enumerate_jordan_isomorphisms(P)
    report.check("Jordan automorphisms of GF(2) x GF(2)", 2, len(product_maps))
    sigmas = sorted(classify_jordan(omega).sigma for omega in product_maps)
    report.check("product classification sigmas", [(0, 1), (1, 0)], sigmas)


def suite_bartolone(report: ReportLogger, options: SuiteOptions) -> None:
    for text in CARDINALITY_RINGS:
        line = enumerate_points(parse_ring(text))
        report.check(f"every point of P({text}) has a representation R(ab-1, a)", len(line), len(bartolone_table(line)))
    for text in ("Z4", "Z6", "M(2,GF(2))"):
        R = parse_ring(text)
        line = enumerate_points(R)
        identity = identity_ring_map(R)
        report.check(
            f"Jordan-induced = hom-induced for the identity of {text}",
            induced_by_hom(identity, line, line).table,
            induced_by_jordan(identity, line, line).table,
        )
        anti = transpose_map(R) if text.startswith("M") else identity
        report.check(
            f"Jordan-induced = antihom-induced on {text}",
            induced_by_antihom(anti, line, line).table,
            induced_by_jordan(anti, line, line).table,
        )


def suite_appendix_decomposition(report: ReportLogger, options: SuiteOptions) -> None:
    line = enumerate_points(parse_ring("M(2,GF(2))"))
    space = grassmann_space(line)
    product = segre_product([space.space, space.space])
    rng = np.random.default_rng(options.seed)
    rounds = 100
    recovered = 0
    for _ in range(rounds):
        components = []
        for _ in range(2):
            while True:
                G = rng.integers(0, 2, size=(4, 4)).tolist()
                if is_invertible(2, G):
                    break
            components.append(collineation_from_matrix(space, G, dual=bool(rng.integers(0, 2))))
        sigma = tuple(int(x) for x in rng.permutation(2))
        f = compose_product_collineation(sigma, components, product, product)
        decomposition = decompose_product_collineation(f)
        recovered += decomposition.sigma == sigma and all(
            c.table == d.table for c, d in zip(components, decomposition.components)
        )
    report.check("compose-then-decompose round trips", rounds, recovered)
    points = sorted(int(x) for x in rng.choice(product.n_points, size=20, replace=False))
    report.check("chain classes at sampled product points", [2] * len(points), [approx_classes_at(product, p) for p in points])
    report.check("chain classes on one factor", [1] * 5, [approx_classes_at(space.space, p) for p in range(5)])
    report.check("lines of the product", 2 * len(space.space.lines) * len(line), len(product.lines))


SUITES: Dict[str, Suite] = {
    "cardinalities": suite_cardinalities,
    "parallel-classes": suite_parallel_classes,
    "local-ring-laws": suite_local_ring_laws,
    "psi-model": suite_psi_model,
    "annihilator": suite_annihilator,
    "automorphism-counts": suite_automorphism_counts,
    "factorization": suite_factorization,
    "product-theorem": suite_product_theorem,
    "wreath-structure": suite_wreath_structure,
    "jordan-classification": suite_jordan_classification,
    "bartolone": suite_bartolone,
    "appendix-decomposition": suite_appendix_decomposition,
}


def suite_names() -> List[str]:
    return list(SUITES) + ["all"]


def run_suite(name: str, full: bool = False, seed: int = 0, report: Optional[ReportLogger] = None) -> ReportLogger:
    """Run one suite (or every suite for "all") and return its logger.

    Theorem violations end the suite that raised them and are recorded as
    "violation" checks.
    """
    if name not in SUITES and name != "all":
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(suite_names())}")
    report = report or ReportLogger(name)
    options = SuiteOptions(full=full, seed=seed)
    names = list(SUITES) if name == "all" else [name]
    for suite in names:
        logger.info("Running suite %s", suite)
        try:
            SUITES[suite](report, options)
        except TheoremViolationError as e:
            logger.error("Theorem violation in suite %s: %s", suite, e)
            report.violation(f"{suite} raised a theorem violation", e)
    return report
