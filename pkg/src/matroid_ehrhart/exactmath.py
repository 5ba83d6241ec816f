"""Exact integer/rational arithmetic and univariate polynomial algebra.

Rationals are :class:`fractions.Fraction` throughout; no floating point is
used anywhere in this module.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Iterable, Mapping, Sequence

from .errors import DomainError, InputError

__all__ = [
    "UniPoly",
    "BiPolyInt",
    "binomial",
    "stirling_first_unsigned",
    "rising_binomial_poly",
    "lagrange_interpolate",
    "shift",
    "poly_gcd",
    "square_free_part",
    "sturm_sequence",
    "sturm_distinct_real_roots",
    "is_real_rooted",
    "is_log_concave",
    "is_unimodal",
    "count_compositions",
]


def binomial(a: int, b: int) -> int:
    """C(a, b) for a >= 0, with C(a, b) = 0 outside 0 <= b <= a."""
    if a < 0:
        raise DomainError(f"binomial: negative upper index {a}")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


@lru_cache(maxsize=None)
def _stirling_row(a: int) -> tuple[int, ...]:
    if a == 0:
        return (1,)
    prev = _stirling_row(a - 1)
    m = a - 1
    return tuple(
        (prev[j - 1] if j >= 1 else 0) + m * (prev[j] if j < len(prev) else 0)
        for j in range(a + 1)
    )


def stirling_first_unsigned(a: int, b: int) -> int:
    """Unsigned Stirling number of the first kind [a brack b].

    Built row by row from s(a+1, b) = s(a, b-1) + a*s(a, b), s(0, 0) = 1.
    """
    if a < 0 or b < 0:
        raise DomainError(f"stirling_first_unsigned: negative argument ({a}, {b})")
    if b > a:
        return 0
    return _stirling_row(a)[b]


class UniPoly:
    """Dense univariate polynomial with exact rational coefficients.

    Coefficients are stored in ascending degree with no trailing zeros, so
    the zero polynomial has an empty coefficient tuple and degree -1 (used as
    a stand-in for minus infinity).
    """

    __slots__ = ("_c",)

    def __init__(self, coefficients: Iterable[Fraction | int] = ()):
        c = [Fraction(x) for x in coefficients]
        while c and c[-1] == 0:
            c.pop()
        self._c: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def constant(cls, value) -> UniPoly:
        return cls([value])

    @classmethod
    def monomial(cls, degree: int, coefficient=1) -> UniPoly:
        return cls([0] * degree + [coefficient])

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def leading_coefficient(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def __getitem__(self, m: int) -> Fraction:
        if 0 <= m < len(self._c):
            return self._c[m]
        return Fraction(0)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def _coerce(self, other) -> UniPoly:
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly([other])
        return NotImplemented

    def __add__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> UniPoly:
        return UniPoly([-x for x in self._c])

    def __sub__(self, other) -> UniPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return (-self) + other

    def __mul__(self, other) -> UniPoly:
        if isinstance(other, (int, Fraction)):
            return UniPoly([x * other for x in self._c])
        if not isinstance(other, UniPoly):
            return NotImplemented
        if not self._c or not other._c:
            return UniPoly()
        # convolve integer numerators over common denominators
        da, na = self.to_lcd()
        db, nb = other.to_lcd()
        out = [0] * (len(na) + len(nb) - 1)
        for i, x in enumerate(na):
            if x:
                for j, y in enumerate(nb):
                    out[i + j] += x * y
        den = da * db
        return UniPoly([Fraction(x, den) for x in out])

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise DomainError("negative polynomial power")
        result = UniPoly([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, scalar) -> UniPoly:
        scalar = Fraction(scalar)
        if scalar == 0:
            raise ZeroDivisionError("polynomial division by zero scalar")
        return UniPoly([x / scalar for x in self._c])

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dd = other.degree
        lc = other._c[-1]
        if len(rem) - 1 < dd:
            return UniPoly(), UniPoly(rem)
        quo = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            q = rem[i] / lc
            quo[i - dd] = q
            if q:
                for j, y in enumerate(other._c):
                    rem[i - dd + j] -= q * y
        return UniPoly(quo), UniPoly(rem[:dd])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def derivative(self) -> UniPoly:
        return UniPoly([i * c for i, c in enumerate(self._c)][1:])

    def monic(self) -> UniPoly:
        if not self._c:
            return self
        return self / self._c[-1]

    def primitive(self) -> UniPoly:
        """Positive rational multiple with coprime integer coefficients."""
        if not self._c:
            return self
        den = reduce(math.lcm, (c.denominator for c in self._c), 1)
        nums = [int(c * den) for c in self._c]
        g = reduce(math.gcd, nums, 0)
        return UniPoly([Fraction(x, g) for x in nums])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._c)

    def to_lcd(self, denominator: int | None = None) -> tuple[int, list[int]]:
        """Return (denominator, integer numerators) with a common denominator.

        ``denominator`` forces a particular (multiple of the least) denominator.
        """
        den = reduce(math.lcm, (c.denominator for c in self._c), 1)
        if denominator is not None:
            if denominator <= 0 or denominator % den:
                raise DomainError(f"{denominator} is not a common denominator (need a multiple of {den})")
            den = denominator
        return den, [int(c * den) for c in self._c]

    def to_json(self) -> dict:
        den, nums = self.to_lcd()
        return {"denominator": str(den), "numerators": [str(x) for x in nums]}

    @classmethod
    def from_json(cls, data: Mapping) -> UniPoly:
        try:
            den = int(data["denominator"])
            nums = [int(x) for x in data["numerators"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial record: {exc}") from None
        if den <= 0:
            raise InputError("polynomial denominator must be positive")
        return cls([Fraction(x, den) for x in nums])

    def __repr__(self) -> str:
        return f"UniPoly({[str(c) for c in self._c]})"

    def __str__(self) -> str:
        return self.format("t")

    def format(self, var: str = "t", denominator: int | None = None) -> str:
        if not self._c:
            return "0"
        den, nums = self.to_lcd(denominator)
        terms = []
        for m in range(len(nums) - 1, -1, -1):
            c = nums[m]
            if c == 0:
                continue
            mag = abs(c)
            if m == 0:
                body = str(mag)
            else:
                coef = "" if mag == 1 else str(mag)
                body = coef + (var if m == 1 else f"{var}^{m}")
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        if den != 1:
            s = f"({s})/{den}"
        return s


T = UniPoly([0, 1])


def rising_binomial_poly(a: int) -> UniPoly:
    """The polynomial C(t+a, a) = (t+1)(t+2)...(t+a)/a! in t."""
    if a < 0:
        raise DomainError(f"rising_binomial_poly: negative degree {a}")
    p = UniPoly([1])
    for i in range(1, a + 1):
        p = p * UniPoly([i, 1])
    return p / math.factorial(a)


def lagrange_interpolate(points: Sequence[tuple[int, int | Fraction]]) -> UniPoly:
    """Unique polynomial of degree < len(points) through the given points.

    Uses Newton divided differences, which is exact over the rationals.
    """
    if not points:
        raise InputError("lagrange_interpolate: need at least one point")
    xs = [int(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise InputError("lagrange_interpolate: duplicate abscissae")
    coef = [Fraction(y) for _, y in points]
    n = len(xs)
    for level in range(1, n):
        for i in range(n - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    p = UniPoly([coef[-1]])
    for i in range(n - 2, -1, -1):
        p = p * UniPoly([-xs[i], 1]) + coef[i]
    return p


def shift(p: UniPoly, s: int) -> UniPoly:
    """Return p(t + s), expanded."""
    den, nums = p.to_lcd()
    out = [0] * len(nums)
    for i, a in enumerate(nums):
        if a:
            power = 1
            for j in range(i, -1, -1):
                out[j] += a * math.comb(i, j) * power
                power *= s
    return UniPoly([Fraction(x, den) for x in out])


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def square_free_part(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise DomainError("square-free part of the zero polynomial")
    return p // poly_gcd(p, p.derivative())


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    """Sturm chain p, p', -rem(...), ... with each term scaled positively to
    primitive integer form (positive scaling leaves every sign count intact)."""
    seq = [p.primitive(), p.derivative().primitive()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r.primitive())
    return [q for q in seq if not q.is_zero()]


def _sign_changes(signs: Iterable[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def sturm_distinct_real_roots(p: UniPoly) -> int:
    """Number of distinct real roots, via Sturm's theorem on the square-free part."""
    if p.is_zero():
        raise DomainError("sturm_distinct_real_roots: zero polynomial")
    q = square_free_part(p)
    if q.degree <= 0:
        return 0
    seq = sturm_sequence(q)
    at_pos = [1 if s.leading_coefficient() > 0 else -1 for s in seq]
    at_neg = [a if s.degree % 2 == 0 else -a for a, s in zip(at_pos, seq)]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def is_real_rooted(p: UniPoly) -> bool:
    """All complex roots real, i.e. the square-free part is totally real."""
    q = square_free_part(p)
    return sturm_distinct_real_roots(q) == q.degree


def is_log_concave(v: Sequence[int]) -> bool:
    v = list(v)
    nz = [i for i, x in enumerate(v) if x != 0]
    if nz and any(v[i] == 0 for i in range(nz[0], nz[-1] + 1)):
        return False
    return all(v[j] * v[j] >= v[j - 1] * v[j + 1] for j in range(1, len(v) - 1))


def is_unimodal(v: Sequence[int]) -> bool:
    v = list(v)
    i = 0
    while i + 1 < len(v) and v[i] <= v[i + 1]:
        i += 1
    while i + 1 < len(v) and v[i] >= v[i + 1]:
        i += 1
    return i >= len(v) - 1


class BiPolyInt:
    """Bivariate integer polynomial stored sparsely as {(i, j): coeff}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {k: int(v) for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def x(cls) -> BiPolyInt:
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> BiPolyInt:
        return cls({(0, 1): 1})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self._terms.get(key, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPolyInt):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: BiPolyInt) -> BiPolyInt:
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return BiPolyInt(out)

    def __neg__(self) -> BiPolyInt:
        return BiPolyInt({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: BiPolyInt) -> BiPolyInt:
        return self + (-other)

    def __mul__(self, other) -> BiPolyInt:
        if isinstance(other, int):
            return BiPolyInt({k: v * other for k, v in self._terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (a, b), u in self._terms.items():
            for (c, d), v in other._terms.items():
                out[(a + c, b + d)] = out.get((a + c, b + d), 0) + u * v
        return BiPolyInt(out)

    __rmul__ = __mul__

    def __call__(self, x, y):
        return sum(c * x**i * y**j for (i, j), c in self._terms.items())

    def to_json(self) -> dict:
        return {"terms": [[i, j, str(c)] for (i, j), c in sorted(self._terms.items())]}

    @classmethod
    def from_json(cls, data: Mapping) -> BiPolyInt:
        return cls({(int(i), int(j)): int(c) for i, j, c in data["terms"]})

    def __repr__(self) -> str:
        return f"BiPolyInt({self._terms!r})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (i, j), c in sorted(self._terms.items(), key=lambda kv: (-kv[0][0] - kv[0][1], -kv[0][0])):
            mono = "".join(
                v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", j)) if e
            )
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mono else "") + mono
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def count_compositions(balls: int, capacities: Sequence[int]) -> int:
    """Ways to place ``balls`` identical balls in boxes of the given capacities.

    Coefficient extraction from prod(1 + x + ... + x^c), done as a running
    table; no closed form is involved.
    """
    if balls < 0:
        return 0
    ways = [1] + [0] * balls
    for cap in capacities:
        if cap < 0:
            raise DomainError(f"negative capacity {cap}")
        nxt = [0] * (balls + 1)
        window = 0
        for s in range(balls + 1):
            window += ways[s]
            if s - cap - 1 >= 0:
                window -= ways[s - cap - 1]
            nxt[s] = window
        ways = nxt
    return ways[balls]
