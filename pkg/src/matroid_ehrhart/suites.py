"""Verification suites run by ``matroid-ehrhart check``.

Each suite returns a flat list of :class:`Check` records.  Grid bounds are
keyword arguments so the CLI can override them.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from itertools import product

from .exactmath import (
    UniPoly,
    binomial,
    is_log_concave,
    is_real_rooted,
    is_unimodal,
    rising_binomial_poly,
    shift,
)
from .formulas import (
    Check,
    D_binomial,
    D_factored,
    D_truncated_sum,
    R_poly,
    bounded_compositions,
    conjecture_bounds_check,
    d_coefficient_discrepancies,
    double_hockey_stick_check,
    hstar_minimal,
    hypersimplex_ehrhart,
    positivity_and_realroot_check,
    relaxation_ehrhart_identity,
    relaxation_hstar_identity,
    suranyi_check,
    tutte,
    tutte_relaxation_identity,
    volume_minimal,
)
from .matroid import (
    Matroid,
    canonical_key,
    circuit_hyperplanes,
    enumerate_connected_matroids,
    is_connected,
    labels,
    mask_of,
    minimal,
    relax,
    relaxed_flats_check,
    uniform,
)
from .polytope import EhrhartData, ehrhart, f_vector, facet_count_S, hstar_from_ehrhart

__all__ = [
    "NAMED_FIXTURES",
    "load_fixture",
    "named_fixtures",
    "default_fixtures",
    "cached_ehrhart",
    "formulas_suite",
    "identities_suite",
    "relaxation_suite",
    "conjectures_suite",
    "SUITES",
]

NAMED_FIXTURES = (
    "u37_minus_6",
    "u37_minus_5",
    "u37_minus_123_456",
    "u37_minus_123_345",
    "u36_minus_123",
)


def load_fixture(name: str) -> Matroid:
    text = resources.files(__package__).joinpath("fixtures").joinpath(f"{name}.json").read_text()
    return Matroid.from_json(json.loads(text))


def named_fixtures() -> dict[str, Matroid]:
    return {name: load_fixture(name) for name in NAMED_FIXTURES}


def default_fixtures(max_n: int = 7) -> dict[str, Matroid]:
    """Minimal and uniform matroids up to ``max_n`` plus the named fixtures."""
    out: dict[str, Matroid] = {}
    for n in range(2, max_n + 1):
        for k in range(1, n):
            out[f"minimal_{k}_{n}"] = minimal(k, n)
            out[f"uniform_{k}_{n}"] = uniform(k, n)
    out.update(named_fixtures())
    return out


_EHRHART_MEMO: dict[tuple, EhrhartData] = {}


def cached_ehrhart(M: Matroid, cap: int | None = None) -> EhrhartData:
    """ehrhart(M), memoised up to relabeling for n <= 8."""
    if M.n > 8:
        return ehrhart(M, cap)
    key = canonical_key(M)
    if key not in _EHRHART_MEMO:
        _EHRHART_MEMO[key] = ehrhart(M, cap)
    return _EHRHART_MEMO[key]


def _summary(name: str, failures: list[str], cases: int) -> Check:
    if failures:
        shown = "; ".join(failures[:5])
        more = f" (+{len(failures) - 5} more)" if len(failures) > 5 else ""
        return Check(name, False, f"{len(failures)}/{cases} failed: {shown}{more}")
    return Check(name, True, f"{cases} cases")


# -- formulas -----------------------------------------------------------------


def formulas_suite(max_n: int = 12, positivity_max_n: int = 30, brute_max_n: int = 8) -> list[Check]:
    pairs = [(k, n) for n in range(2, max_n + 1) for k in range(1, n)]
    checks = []

    fails, cases = [], 0
    for k, n in pairs:
        D = D_binomial(k, n)
        cases += 1
        if D != D_factored(k, n):
            fails.append(f"binomial != factored at ({k},{n})")
        bad_t = [t for t in range(max_n + 1) if D(t) != D_truncated_sum(k, n, t)]
        if bad_t:
            fails.append(f"truncated sum differs at ({k},{n}) t={bad_t}")
    checks.append(_summary("D_binomial = D_factored = D_truncated_sum", fails, cases))

    fails = []
    for k, n in pairs:
        try:
            R = R_poly(k, n)
        except AssertionError as exc:
            fails.append(str(exc))
            continue
        if D_factored(k, n) != rising_binomial_poly(n - k) * R:
            fails.append(f"D != C(t+n-k,n-k) R at ({k},{n})")
    checks.append(_summary("R_poly forms agree and factor D", fails, len(pairs)))

    fails = []
    for k, n in pairs:
        for m, got, want in d_coefficient_discrepancies(k, n):
            fails.append(f"d({k},{n},{m}) = {got}, factored form gives {want}")
    checks.append(_summary("d_coefficient matches D coefficients", fails, len(pairs)))

    fails, cases = [], 0
    for n in range(2, positivity_max_n + 1):
        for k in range(1, n):
            cases += 1
            D = D_binomial(k, n)
            if not all(c > 0 for c in D.coefficients) or len(D.coefficients) != n:
                fails.append(f"D({k},{n}) has a nonpositive coefficient")
            if not all(c >= 0 for c in shift(D, -1).coefficients):
                fails.append(f"D({k},{n})(t-1) has a negative coefficient")
    checks.append(_summary("D positive, D(t-1) nonnegative", fails, cases))

    fails, cases = [], 0
    for n in range(2, positivity_max_n + 1):
        for k in range(1, n):
            cases += 1
            h = hstar_minimal(k, n)
            if sum(h) != volume_minimal(k, n):
                fails.append(f"sum h*({k},{n}) != C(n-2,k-1)")
            if not (is_log_concave(h) and is_unimodal(h)):
                fails.append(f"h*({k},{n}) not log-concave/unimodal")
            if hstar_from_ehrhart(D_binomial(k, n), n - 1) != h:
                fails.append(f"h*({k},{n}) differs from the transform of D")
    checks.append(_summary("h* formula, volume, log-concavity", fails, cases))

    fails, cases = [], 0
    for n in range(2, min(max_n, brute_max_n) + 1):
        for k in range(1, n):
            cases += 1
            data = cached_ehrhart(minimal(k, n))
            if data.ehrhart != D_binomial(k, n):
                fails.append(f"counted Ehrhart differs at ({k},{n})")
            if data.hstar != hstar_minimal(k, n):
                fails.append(f"counted h* {data.hstar} != {hstar_minimal(k, n)} at ({k},{n})")
    checks.append(_summary("lattice counts match D and h* (brute force)", fails, cases))

    fails, cases = [], 0
    for k, n in pairs:
        D = D_binomial(k, n)
        for t in range(1, min(max_n, 10) + 1):
            cases += 1
            s_formula = binomial(n - k - 1 + t, n - k - 1) * binomial(k - 1 + t, k - 1)
            if D(t) - s_formula != D(t - 1):
                fails.append(f"D(t)-S(t) != D(t-1) at ({k},{n}) t={t}")
    checks.append(_summary("D(t) - S(t) = D(t-1)", fails, cases))

    fails = [f"({k},{n})" for k, n in pairs if D_binomial(k, n) != D_binomial(n - k, n)]
    checks.append(_summary("D(k,n) = D(n-k,n)", fails, len(pairs)))
    return checks


# -- appendix identities ------------------------------------------------------


def identities_suite(max_param: int = 12, max_capacity: int = 5, max_boxes: int = 4,
                     facet_max_n: int = 8, facet_max_t: int = 4) -> list[Check]:
    grid = list(product(range(max_param + 1), repeat=3))
    checks = [
        _summary("suranyi", [str(p) for p in grid if not suranyi_check(*p)], len(grid)),
        _summary(
            "double_hockey_stick",
            [str(p) for p in grid if not double_hockey_stick_check(*p)],
            len(grid),
        ),
    ]

    fails, cases = [], 0
    for boxes in range(1, max_boxes + 1):
        for caps in product(range(max_capacity + 1), repeat=boxes):
            if list(caps) != sorted(caps, reverse=True):
                continue
            total = sum(caps)
            for balls in range(total - caps[-1], total + 1):
                cases += 1
                a = bounded_compositions(balls, caps, method="formula")
                b = bounded_compositions(balls, caps, method="enumerate")
                if a != b:
                    fails.append(f"balls={balls} caps={caps}: {a} vs {b}")
    checks.append(_summary("bounded_compositions formula = enumeration", fails, cases))

    fails, cases = [], 0
    for n in range(2, facet_max_n + 1):
        for k in range(1, n):
            for t in range(facet_max_t + 1):
                cases += 1
                closed = binomial(n - k - 1 + t, n - k - 1) * binomial(k - 1 + t, k - 1)
                if facet_count_S(k, n, t) != closed:
                    fails.append(f"S({k},{n},{t})")
    checks.append(_summary("facet_count_S enumeration = closed form", fails, cases))
    return checks


# -- relaxation ---------------------------------------------------------------


def relaxation_suite(fixtures: dict[str, Matroid] | None = None) -> list[Check]:
    fixtures = default_fixtures() if fixtures is None else fixtures
    checks = []
    for name, M in fixtures.items():
        for H in circuit_hyperplanes(M):
            tag = f"{name} H={list(labels(H))}"
            checks.append(Check(f"relaxed flats: {tag}", relaxed_flats_check(M, H)))
            if is_connected(M):
                lhs, rhs, ok = relaxation_ehrhart_identity(M, H)
                checks.append(Check(f"ehrhart: {tag}", ok, "" if ok else f"{lhs} vs {rhs}"))
                checks.append(Check(f"hstar: {tag}", relaxation_hstar_identity(M, H)))
            checks.append(Check(f"tutte: {tag}", tutte_relaxation_identity(M, H)))
    checks.extend(twin_relaxation_checks())
    return checks


def twin_relaxation_checks() -> list[Check]:
    """The pair U37 - {123,456} and U37 - {123,345}: both relax twice to U37,
    so they share Ehrhart and Tutte polynomials, yet their f-vectors differ."""
    a = load_fixture("u37_minus_123_456")
    b = load_fixture("u37_minus_123_345")
    target = uniform(3, 7)
    ra = relax(relax(a, mask_of([1, 2, 3])), mask_of([4, 5, 6]))
    rb = relax(relax(b, mask_of([1, 2, 3])), mask_of([3, 4, 5]))
    fa, fb = f_vector(a), f_vector(b)
    return [
        Check("twins relax to U(3,7)", ra == target and rb == target),
        Check("twins share Ehrhart polynomial", ehrhart(a).ehrhart == ehrhart(b).ehrhart),
        Check("twins share Tutte polynomial", tutte(a) == tutte(b)),
        Check("twins differ in f-vector", fa != fb, f"{list(fa)} vs {list(fb)}"),
    ]


# -- conjectures --------------------------------------------------------------


def _check_one(M: Matroid) -> list[str]:
    data = cached_ehrhart(M)
    problems = []
    for rep in (conjecture_bounds_check(M, data=data), positivity_and_realroot_check(M, data=data)):
        problems += [f"{c.name} {M.to_json()['bases']}: {c.detail}" for c in rep.checks if not c.passed]
    return problems


def _check_batch(batch: list[Matroid]) -> list[list[str]]:
    return [_check_one(M) for M in batch]


def conjectures_suite(enumerate_n: int = 6, threads: int = 1) -> list[Check]:
    checks = []
    for n in range(2, enumerate_n + 1):
        for k in range(1, n):
            family = enumerate_connected_matroids(n, k)
            least = min(len(M.bases) for M in family)
            minimizers = [M for M in family if len(M.bases) == least]
            target = canonical_key(minimal(k, n))
            checks.append(Check(
                f"min basis count ({k},{n})",
                least == k * (n - k) + 1 and all(canonical_key(M) == target for M in minimizers),
                f"least={least}, expected {k * (n - k) + 1}, {len(minimizers)} minimizers "
                f"of {len(family)}",
            ))
            if threads > 1:
                chunks = [family[i::threads] for i in range(threads)]
                with ProcessPoolExecutor(max_workers=threads) as pool:
                    parts = list(pool.map(_check_batch, chunks))
                problems = [p for part in parts for per in part for p in per]
            else:
                problems = [p for M in family for p in _check_one(M)]
            checks.append(_summary(f"bounds, positivity, real roots ({k},{n})", problems, len(family)))

    for name in ("u37_minus_6", "u37_minus_5"):
        M = load_fixture(name)
        problems = _check_one(M)
        checks.append(_summary(f"bounds, positivity, real roots {name}", problems, 1))
    m1, m2 = load_fixture("u37_minus_6"), load_fixture("u37_minus_5")
    lead1, lead2 = ehrhart(m1).ehrhart[6], ehrhart(m2).ehrhart[6]
    checks.append(Check(
        "fewer bases, larger volume",
        len(m1.bases) < len(m2.bases) and lead1 > lead2,
        f"|B|={len(m1.bases)} vs {len(m2.bases)}; [t^6] = {lead1} vs {lead2}",
    ))

    fails, cases = [], 0
    for n in range(2, 15):
        for k in range(1, n):
            cases += 1
            h = hstar_from_ehrhart(hypersimplex_ehrhart(k, n), n - 1)
            if not is_real_rooted(UniPoly(h)):
                fails.append(f"({k},{n})")
    checks.append(_summary("hypersimplex h* real-rooted (n <= 14)", fails, cases))
    return checks


SUITES = {
    "formulas": formulas_suite,
    "identities": identities_suite,
    "relaxation": relaxation_suite,
    "conjectures": conjectures_suite,
}
