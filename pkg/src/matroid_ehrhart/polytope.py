"""Base polytopes of matroids: inequality descriptions, lattice-point counts,
Ehrhart data, vertex adjacency and face numbers.

The base polytope P(M) is cut out of {x >= 0, sum(x) = k} by one
inequality sum_{i in F} x_i <= rk(F) per flat F.  Every count here is an
exact enumeration over that description; nothing is triangulated.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import CapacityError, DomainError
from .exactmath import UniPoly, binomial, count_compositions, lagrange_interpolate
from .matroid import Matroid, _bits, components, flats, labels, mask_of

__all__ = [
    "HRepresentation",
    "EhrhartData",
    "DEFAULT_EHRHART_CAP",
    "DEFAULT_FVECTOR_CAP",
    "ehrhart_cap",
    "fvector_cap",
    "h_representation",
    "reduced_h_representation_minimal",
    "count_lattice_points",
    "hstar_from_ehrhart",
    "ehrhart",
    "affine_dimension",
    "vertex_adjacency",
    "f_vector",
    "facet_count_S",
]

DEFAULT_EHRHART_CAP = 8
DEFAULT_FVECTOR_CAP = 8
CAP_ENV = "MATROID_EHRHART_CAP"


def _env_cap(default: int) -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"{CAP_ENV} must be an integer, got {raw!r}") from None


def ehrhart_cap() -> int:
    return _env_cap(DEFAULT_EHRHART_CAP)


def fvector_cap() -> int:
    return _env_cap(DEFAULT_FVECTOR_CAP)


@dataclass(frozen=True)
class HRepresentation:
    """{x in R^n : x >= 0, sum(x) = k, sum_{i in F} x_i <= bound for each row}."""

    n: int
    k: int
    rows: tuple[tuple[int, int], ...]

    def contains(self, x: Sequence[int], t: int = 1) -> bool:
        """Membership of an integer point in the t-th dilate."""
        if len(x) != self.n or any(v < 0 for v in x) or sum(x) != self.k * t:
            return False
        return all(
            sum(x[i] for i in _bits(mask)) <= bound * t for mask, bound in self.rows
        )


@dataclass(frozen=True)
class EhrhartData:
    ehrhart: UniPoly
    dimension: int
    hstar: tuple[int, ...]
    volume: int

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "ehrhart": self.ehrhart.to_json(),
            "hstar": list(self.hstar),
            "volume": str(self.volume),
        }


def h_representation(M: Matroid) -> HRepresentation:
    """One row per proper nonempty flat, bounded by its rank."""
    full = M.ground
    rows = tuple(
        (f.subset, f.rank) for f in flats(M) if f.subset not in (0, full)
    )
    return HRepresentation(M.n, M.k, rows)


def reduced_h_representation_minimal(k: int, n: int) -> HRepresentation:
    """Irredundant description of the minimal matroid's polytope: the unit box
    plus one row capping the red coordinates k+1..n at 1."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got k={k}, n={n}")
    rows = tuple((1 << i, 1) for i in range(n)) + ((mask_of(range(k + 1, n + 1)), 1),)
    return HRepresentation(n, k, rows)


def count_lattice_points(rep: HRepresentation, t: int) -> int:
    """Number of integer points in the t-th dilate of ``rep``.

    Depth-first assignment of coordinates (most constrained first), with the
    box 0 <= x_i <= t, running-sum and row-slack pruning.  Subtrees are
    memoised on the partial sums of rows that are still open, which is exact
    because closed rows no longer constrain the remaining coordinates.
    """
    if t < 0:
        raise DomainError(f"count_lattice_points: negative dilation {t}")
    n = rep.n
    target = rep.k * t
    rows = [(mask, bound * t) for mask, bound in rep.rows]
    weight = [sum(1 for mask, _ in rows if mask >> i & 1) for i in range(n)]
    order = sorted(range(n), key=lambda i: (-weight[i], i))
    pos = {c: p for p, c in enumerate(order)}

    members = [sorted(pos[i] for i in _bits(mask)) for mask, _ in rows]
    bounds = [b for _, b in rows]
    # rows touched by the coordinate at each position
    touching = [[r for r, mem in enumerate(members) if p in mem] for p in range(n)]
    # rows open (started, not finished) just before position p
    open_at = [
        [r for r, mem in enumerate(members) if mem and mem[0] < p <= mem[-1]]
        for p in range(n + 1)
    ]
    # complement positions still unassigned from position p on, per row
    comp_left = [
        [sum(1 for q in range(p, n) if q not in set(mem)) for p in range(n + 1)]
        for mem in members
    ]
    memo: dict = {}
    partial = [0] * len(rows)

    def go(p: int, total: int) -> int:
        left = target - total
        if p == n:
            return 1 if left == 0 else 0
        if left < 0 or left > t * (n - p):
            return 0
        key = (p, total, tuple(partial[r] for r in open_at[p]))
        hit = memo.get(key)
        if hit is not None:
            return hit
        rows_here = touching[p]
        cap = t
        for r in rows_here:
            cap = min(cap, bounds[r] - partial[r])
        lo = max(0, left - t * (n - p - 1))
        count = 0
        for x in range(lo, cap + 1):
            for r in rows_here:
                partial[r] += x
            ok = True
            new_total = total + x
            for r in rows_here:
                # complement of the row must still be able to absorb the rest
                if (new_total - partial[r]) + t * comp_left[r][p + 1] < target - bounds[r]:
                    ok = False
                    break
            if ok:
                count += go(p + 1, new_total)
            for r in rows_here:
                partial[r] -= x
        memo[key] = count
        return count

    if any(b < 0 for b in bounds):
        return 0
    return go(0, 0)


def hstar_from_ehrhart(poly: UniPoly, d: int) -> tuple[int, ...]:
    """Numerator coefficients of sum_t i(t) x^t = h*(x) / (1-x)^(d+1)."""
    values = [poly(t) for t in range(d + 1)]
    h = []
    for j in range(d + 1):
        h.append(sum((-1) ** i * binomial(d + 1, i) * values[j - i] for i in range(j + 1)))
    while len(h) > 1 and h[-1] == 0:
        h.pop()
    if any(Fraction(v).denominator != 1 for v in h):
        raise AssertionError(f"non-integral h* vector {h}")
    return tuple(int(v) for v in h)


def ehrhart(M: Matroid, cap: int | None = None) -> EhrhartData:
    """Ehrhart polynomial of P(M) interpolated from counts at t = 0..dim."""
    cap = ehrhart_cap() if cap is None else cap
    if M.n > cap:
        raise CapacityError("ehrhart", M.n, cap)
    d = M.n - components(M)
    rep = h_representation(M)
    poly = lagrange_interpolate([(t, count_lattice_points(rep, t)) for t in range(d + 1)])
    hstar = hstar_from_ehrhart(poly, d)
    return EhrhartData(poly, d, hstar, sum(hstar))


def _rank_exact(vectors: list[list[int]]) -> int:
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col] / pv
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def affine_dimension(points: Sequence[Sequence[int]]) -> int:
    """Dimension of the affine hull of a finite point set (-1 if empty)."""
    points = list(points)
    if not points:
        return -1
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return _rank_exact(diffs) if diffs else 0


def _indicator(mask: int, n: int) -> list[int]:
    return [mask >> i & 1 for i in range(n)]


def vertex_adjacency(M: Matroid) -> list[tuple[int, int]]:
    """Edges of P(M): basis pairs with symmetric difference of size two."""
    ordered = M.sorted_bases()
    edges = []
    for i, b1 in enumerate(ordered):
        for b2 in ordered[i + 1:]:
            if bin(b1 ^ b2).count("1") == 2:
                edges.append((b1, b2))
    return edges


def f_vector(M: Matroid, cap: int | None = None) -> tuple[int, ...]:
    """(f_-1, f_0, ..., f_d) from the vertex-facet incidences of P(M).

    Facets are the inclusion-maximal proper vertex sets tight on a single
    inequality (a flat row or a nonnegativity bound); faces are all
    intersections of facets, and each face's dimension is the affine rank of
    its vertices.
    """
    cap = fvector_cap() if cap is None else cap
    if M.n > cap:
        raise CapacityError("f_vector", M.n, cap)
    verts = M.sorted_bases()
    nv = len(verts)
    everything = (1 << nv) - 1
    coords = [_indicator(b, M.n) for b in verts]
    d = affine_dimension(coords)
    if d == 0:
        return (1, 1)

    tight = set()
    for mask, bound in h_representation(M).rows:
        tight.add(sum(1 << v for v, b in enumerate(verts) if bin(b & mask).count("1") == bound))
    for i in range(M.n):
        tight.add(sum(1 << v for v, b in enumerate(verts) if not b >> i & 1))
    proper = [s for s in tight if s and s != everything]
    facets = [s for s in proper if not any(s != o and s & o == s for o in proper)]

    faces = set(facets)
    frontier = list(facets)
    while frontier:
        nxt = []
        for f in frontier:
            for g in facets:
                h = f & g
                if h and h not in faces:
                    faces.add(h)
                    nxt.append(h)
        frontier = nxt

    counts = [0] * (d + 2)
    counts[0] = 1
    counts[d + 1] = 1
    for face in faces:
        pts = [coords[v] for v in range(nv) if face >> v & 1]
        counts[affine_dimension(pts) + 1] += 1
    return tuple(counts)


def facet_count_S(k: int, n: int, t: int) -> int:
    """Integer points of [0,t]^n with sum kt whose red coordinates k+1..n sum to t."""
    if not 1 <= k <= n - 1:
        raise DomainError(f"need 1 <= k <= n-1; got k={k}, n={n}")
    if t < 0:
        raise DomainError(f"negative dilation {t}")
    reds = count_compositions(t, [t] * (n - k))
    blacks = count_compositions(k * t - t, [t] * k)
    return reds * blacks
