"""Closed forms for minimal matroids, relaxation identities, Tutte polynomials,
binomial identities and conjecture checkers.

Every closed form here has a second, independent route elsewhere in the
package (lattice-point counting, enumeration or an alternative sum), and
the checkers compare the two exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import CapacityError, DomainError, InputError
from .exactmath import (
    BiPolyInt,
    UniPoly,
    binomial,
    count_compositions,
    is_log_concave,
    is_real_rooted,
    is_unimodal,
    lagrange_interpolate,
    rising_binomial_poly,
    shift,
    stirling_first_unsigned,
)
from .matroid import EXHAUSTIVE_CAP, Matroid, is_connected, relax
from .polytope import ehrhart

__all__ = [
    "Check",
    "Report",
    "MinimalEhrhartForms",
    "D_binomial",
    "D_truncated_sum",
    "D_factored",
    "R_poly",
    "d_coefficient",
    "d_coefficient_discrepancies",
    "minimal_forms",
    "hstar_minimal",
    "volume_minimal",
    "relaxation_ehrhart_identity",
    "relaxation_hstar_identity",
    "tutte",
    "tutte_relaxation_identity",
    "bounded_compositions",
    "suranyi_check",
    "double_hockey_stick_check",
    "hypersimplex_ehrhart",
    "conjecture_bounds_check",
    "positivity_and_realroot_check",
]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass
class Report:
    matroid: Matroid
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"matroid": self.matroid.to_json(), "checks": [c.to_json() for c in self.checks]}


def _check_range(k: int, n: int) -> None:
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got k={k}, n={n}")


def _binom_poly_lower(j: int) -> UniPoly:
    """C(t, j) = t(t-1)...(t-j+1)/j! as a polynomial in t."""
    p = UniPoly([1])
    for i in range(j):
        p = p * UniPoly([-i, 1])
    return p / math.factorial(j)


def D_binomial(k: int, n: int) -> UniPoly:
    """Ehrhart polynomial of the minimal matroid as
    sum_j C(k-1,j) C(n-k-1,j) C(t+n-1-j, n-1)."""
    _check_range(k, n)
    base = rising_binomial_poly(n - 1)
    out = UniPoly()
    for j in range(k):
        w = binomial(k - 1, j) * binomial(n - k - 1, j)
        if w:
            out = out + shift(base, -j) * w
    return out


def D_truncated_sum(k: int, n: int, t: int) -> int:
    """sum_{j=0}^{t} C(n-k-1+j, j) C(k-1+j, j), i.e. the value at t by
    splitting on how much weight the red coordinates carry."""
    _check_range(k, n)
    if t < 0:
        raise DomainError(f"negative dilation {t}")
    return sum(binomial(n - k - 1 + j, j) * binomial(k - 1 + j, j) for j in range(t + 1))


def _R_second_form(k: int, n: int) -> UniPoly:
    acc = UniPoly()
    for j in range(k):
        acc = acc + rising_binomial_poly(j) * binomial(n - k - 1 + j, j)
    return acc / binomial(n - 1, k - 1)


def D_factored(k: int, n: int) -> UniPoly:
    """C(t+n-k, n-k) / C(n-1, k-1) * sum_j C(n-k-1+j, j) C(t+j, j)."""
    _check_range(k, n)
    return rising_binomial_poly(n - k) * _R_second_form(k, n)


def R_poly(k: int, n: int) -> UniPoly:
    """The cofactor of C(t+n-k, n-k) in D, computed in both known forms.

    Raises AssertionError if the two forms disagree.
    """
    _check_range(k, n)
    first = UniPoly()
    for j in range(k):
        w = Fraction(n - k, n - k + j) * binomial(k - 1, j)
        first = first + _binom_poly_lower(j) * w
    second = _R_second_form(k, n)
    if first != second:
        raise AssertionError(f"R_{k},{n}: forms disagree: {first} vs {second}")
    return first


def d_coefficient(k: int, n: int, m: int) -> Fraction:
    """Coefficient of t^m in D via unsigned Stirling numbers of the first kind."""
    _check_range(k, n)
    if not 0 <= m <= n - 1:
        raise DomainError(f"coefficient index {m} outside 0..{n - 1}")
    total = Fraction(0)
    for j in range(k):
        outer = Fraction(math.factorial(k - 1), math.factorial(j)) * binomial(n - k - 1 + j, j)
        inner = 0
        for ell in range(j + 1):
            if m - ell + 1 < 0:
                continue
            inner += stirling_first_unsigned(j + 1, ell + 1) * stirling_first_unsigned(
                n - k + 1, m - ell + 1
            )
        total += outer * inner
    return total / math.factorial(n - 1)


def d_coefficient_discrepancies(k: int, n: int) -> list[tuple[int, Fraction, Fraction]]:
    """(m, stirling value, coefficient of the factored form) wherever they differ.

    The factored form is treated as ground truth.
    """
    ref = D_factored(k, n)
    return [
        (m, d_coefficient(k, n, m), ref[m])
        for m in range(n)
        if d_coefficient(k, n, m) != ref[m]
    ]


@dataclass(frozen=True)
class MinimalEhrhartForms:
    k: int
    n: int
    binomial_form: UniPoly
    factored_form: UniPoly
    coefficients: tuple[Fraction, ...]


def minimal_forms(k: int, n: int) -> MinimalEhrhartForms:
    b = D_binomial(k, n)
    f = D_factored(k, n)
    if b != f:
        raise AssertionError(f"D_{k},{n}: binomial and factored forms disagree")
    coeffs = tuple(d_coefficient(k, n, m) for m in range(n))
    return MinimalEhrhartForms(k, n, b, f, coeffs)


def hstar_minimal(k: int, n: int) -> tuple[int, ...]:
    """h* vector of the minimal matroid: C(k-1, j) C(n-k-1, j) for j < k."""
    _check_range(k, n)
    h = [binomial(k - 1, j) * binomial(n - k - 1, j) for j in range(k)]
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    assert is_log_concave(h), f"h*(T_{k},{n}) = {h} is not log-concave"
    return tuple(h)


def volume_minimal(k: int, n: int) -> int:
    _check_range(k, n)
    return binomial(n - 2, k - 1)


# -- relaxation ---------------------------------------------------------------


def relaxation_ehrhart_identity(M: Matroid, H, cap: int | None = None):
    """(i(relaxed M), i(M) + D(t-1), whether they agree)."""
    relaxed = relax(M, H)
    lhs = ehrhart(relaxed, cap).ehrhart
    rhs = ehrhart(M, cap).ehrhart + shift(D_binomial(M.k, M.n), -1)
    return lhs, rhs, lhs == rhs


def _pad(v: Sequence[int], size: int) -> list[int]:
    return list(v) + [0] * (size - len(v))


def relaxation_hstar_identity(M: Matroid, H, cap: int | None = None) -> bool:
    """h*(relaxed M) == h*(M) + x * h*(minimal matroid)."""
    relaxed = relax(M, H)
    big = ehrhart(relaxed, cap)
    small = ehrhart(M, cap)
    if big.dimension != small.dimension:
        return False
    size = big.dimension + 2
    shifted = [0] + _pad(hstar_minimal(M.k, M.n), size - 1)
    expected = [a + b for a, b in zip(_pad(small.hstar, size), shifted)]
    return _pad(big.hstar, size) == expected


def tutte(M: Matroid) -> BiPolyInt:
    """Sum over subsets A of (x-1)^(k - r(A)) (y-1)^(|A| - r(A))."""
    if M.n > EXHAUSTIVE_CAP:
        raise CapacityError("tutte", M.n, EXHAUSTIVE_CAP)
    rank = M.rank_table.astype(np.int64)
    size = np.zeros(1 << M.n, dtype=np.int64)
    for e in range(M.n):
        size.reshape(-1, 2, 1 << e)[:, 1, :] += 1
    corank = M.k - rank
    nullity = size - rank
    width = M.n + 1
    tally = np.bincount(corank * width + nullity, minlength=width * width)
    terms: dict[tuple[int, int], int] = {}
    for code in np.flatnonzero(tally):
        a, b = divmod(int(code), width)
        mult = int(tally[code])
        # (x-1)^a (y-1)^b expanded
        for i in range(a + 1):
            ci = binomial(a, i) * (-1) ** (a - i)
            for j in range(b + 1):
                cj = binomial(b, j) * (-1) ** (b - j)
                terms[(i, j)] = terms.get((i, j), 0) + mult * ci * cj
    return BiPolyInt(terms)


def tutte_relaxation_identity(M: Matroid, H) -> bool:
    x, y = BiPolyInt.x(), BiPolyInt.y()
    return tutte(relax(M, H)) == tutte(M) - x * y + x + y


# -- appendix identities ------------------------------------------------------


def bounded_compositions(balls: int, capacities: Sequence[int], method: str = "auto") -> int:
    """Ways to put ``balls`` identical balls into boxes with the given capacities.

    ``capacities`` must be sorted in descending order.  When
    balls >= c_1 + ... + c_{k-1} the count is C(k-1 + sum(c) - balls, k-1)
    (only the last box can be left with spare room to matter); otherwise,
    or with ``method="enumerate"``, it is counted directly.
    """
    caps = list(capacities)
    if any(c < 0 for c in caps) or balls < 0:
        raise InputError("balls and capacities must be nonnegative")
    if any(a < b for a, b in zip(caps, caps[1:])):
        raise InputError(f"capacities {caps} are not sorted in descending order")
    if method not in ("auto", "formula", "enumerate"):
        raise InputError(f"unknown method {method!r}")
    total = sum(caps)
    if balls > total:
        return 0
    applies = bool(caps) and balls >= total - caps[-1]
    if method == "formula" and not applies:
        raise DomainError("closed form needs balls >= sum of all but the smallest capacity")
    if method == "enumerate" or not applies:
        return count_compositions(balls, caps)
    k = len(caps)
    return binomial(k - 1 + total - balls, k - 1)


def suranyi_check(r: int, s: int, j: int) -> bool:
    lhs = binomial(r + j, r) * binomial(s + j, s)
    rhs = sum(
        binomial(r, i) * binomial(s, i) * binomial(j + r + s - i, r + s)
        for i in range(min(r, s) + 1)
    )
    return lhs == rhs


def double_hockey_stick_check(r: int, s: int, m: int) -> bool:
    lhs = sum(binomial(r + j, j) * binomial(s + j, j) for j in range(m + 1))
    rhs = sum(
        binomial(r, i) * binomial(s, i) * binomial(r + s + 1 + m - i, r + s + 1)
        for i in range(min(r, s) + 1)
    )
    return lhs == rhs


# -- hypersimplex and conjectures -------------------------------------------


def _hypersimplex_count(k: int, n: int, t: int) -> int:
    total = 0
    for j in range(n + 1):
        free = k * t - j * (t + 1)
        if free < 0:
            break
        total += (-1) ** j * binomial(n, j) * binomial(free + n - 1, n - 1)
    return total


def hypersimplex_ehrhart(k: int, n: int) -> UniPoly:
    """Ehrhart polynomial of the (k, n) hypersimplex by inclusion-exclusion
    on the box constraints, interpolated from t = 0..n-1."""
    _check_range(k, n)
    return lagrange_interpolate([(t, _hypersimplex_count(k, n, t)) for t in range(n)])


def conjecture_bounds_check(M: Matroid, cap: int | None = None, data=None) -> Report:
    """Coefficientwise minimal <= i(M) <= hypersimplex for a connected M."""
    if not is_connected(M):
        raise DomainError("conjecture_bounds_check needs a connected matroid")
    k, n = M.k, M.n
    poly = (data or ehrhart(M, cap)).ehrhart
    upper = hypersimplex_ehrhart(k, n)
    low_bad, high_bad = [], []
    for m in range(n):
        lo, mid, hi = d_coefficient(k, n, m), poly[m], upper[m]
        if lo > mid:
            low_bad.append(f"m={m}: d={lo} > {mid}")
        if mid > hi:
            high_bad.append(f"m={m}: {mid} > e={hi}")
    return Report(
        M,
        [
            Check("lower_bound", not low_bad, "; ".join(low_bad)),
            Check("upper_bound", not high_bad, "; ".join(high_bad)),
        ],
    )


def positivity_and_realroot_check(M: Matroid, cap: int | None = None, data=None) -> Report:
    data = data or ehrhart(M, cap)
    coeffs = data.ehrhart.coefficients
    h = list(data.hstar)
    hpoly = UniPoly(h)
    return Report(
        M,
        [
            Check("ehrhart_positive", all(c > 0 for c in coeffs), str(data.ehrhart)),
            Check("hstar_unimodal", is_unimodal(h), str(h)),
            Check("hstar_log_concave", is_log_concave(h), str(h)),
            Check("hstar_real_rooted", is_real_rooted(hpoly), str(h)),
        ],
    )
