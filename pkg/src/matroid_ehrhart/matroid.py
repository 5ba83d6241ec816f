"""Matroids given by their bases.

Subsets of the ground set are n-bit integer masks internally (bit i is
element i+1).  Public functions that take a subset accept either such a
mask or an iterable of 1-based element labels; subsets are always returned
as masks, and :func:`labels` converts back.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapacityError, DomainError, InputError

__all__ = [
    "Matroid",
    "FlatRecord",
    "ExchangeAxiomError",
    "EXHAUSTIVE_CAP",
    "ENUMERATION_CAP",
    "mask_of",
    "labels",
    "from_bases",
    "uniform",
    "minimal",
    "graphic_from_multigraph",
    "rank_of",
    "closure",
    "flats",
    "is_connected",
    "components",
    "connected_components",
    "dual",
    "direct_sum",
    "circuit_hyperplanes",
    "circuit_hyperplane_defect",
    "relax",
    "relaxed_flats_check",
    "enumerate_connected_matroids",
    "relabel",
    "canonical_key",
]

EXHAUSTIVE_CAP = 20
ENUMERATION_CAP = 6

Subset = Union[int, Iterable[int]]


class ExchangeAxiomError(InputError):
    pass


def mask_of(elements: Iterable[int]) -> int:
    """Bit mask of a collection of 1-based labels."""
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def labels(mask: int) -> tuple[int, ...]:
    """Sorted 1-based labels of a bit mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class FlatRecord:
    subset: int
    rank: int

    @property
    def labels(self) -> tuple[int, ...]:
        return labels(self.subset)


@dataclass(frozen=True)
class Matroid:
    """A matroid on {1..n} of rank k, stored as its family of bases.

    Instances are immutable.  Use :func:`from_bases` to build one from
    untrusted input; the dataclass constructor performs no validation.
    """

    n: int
    k: int
    bases: frozenset

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def sorted_bases(self) -> list[int]:
        """Bases in lexicographic order of their sorted label lists."""
        return sorted(self.bases, key=labels)

    def to_json(self) -> dict:
        return {"n": self.n, "bases": [list(labels(b)) for b in self.sorted_bases()]}

    @classmethod
    def from_json(cls, data) -> Matroid:
        if not isinstance(data, dict) or "n" not in data or "bases" not in data:
            raise InputError('matroid record needs keys "n" and "bases"')
        n, bases = data["n"], data["bases"]
        if not isinstance(n, int) or not isinstance(bases, list):
            raise InputError("matroid record: n must be an int and bases a list")
        for b in bases:
            if not isinstance(b, list) or any(not isinstance(e, int) for e in b):
                raise InputError("matroid record: each basis must be a list of ints")
            if any(x >= y for x, y in zip(b, b[1:])):
                raise InputError(f"matroid record: basis {b} is not strictly increasing")
        return from_bases(n, bases)

    @cached_property
    def rank_table(self) -> np.ndarray:
        """rank of every subset, indexed by mask (exhaustive, n <= 20)."""
        if self.n > EXHAUSTIVE_CAP:
            raise CapacityError("rank table", self.n, EXHAUSTIVE_CAP)
        size = 1 << self.n
        indep = np.zeros(size, dtype=bool)
        indep[np.fromiter(self.bases, dtype=np.int64)] = True
        for e in range(self.n):
            v = indep.reshape(-1, 2, 1 << e)
            v[:, 0, :] |= v[:, 1, :]
        rank = np.where(indep, _popcount_table(self.n), 0).astype(np.int8)
        for e in range(self.n):
            v = rank.reshape(-1, 2, 1 << e)
            np.maximum(v[:, 1, :], v[:, 0, :], out=v[:, 1, :])
        rank.setflags(write=False)
        return rank

    def rank(self, subset: Subset) -> int:
        return rank_of(self, subset)

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, k={self.k}, bases={len(self.bases)})"


_POPCOUNT_CACHE: dict[int, np.ndarray] = {}


def _popcount_table(n: int) -> np.ndarray:
    if n not in _POPCOUNT_CACHE:
        pc = np.zeros(1 << n, dtype=np.int8)
        for e in range(n):
            pc.reshape(-1, 2, 1 << e)[:, 1, :] += 1
        pc.setflags(write=False)
        _POPCOUNT_CACHE[n] = pc
    return _POPCOUNT_CACHE[n]


def _as_mask(M: Matroid, subset: Subset) -> int:
    if isinstance(subset, (int, np.integer)):
        mask = int(subset)
    else:
        subset = list(subset)
        if any(not 1 <= e <= M.n for e in subset):
            raise InputError(f"subset {subset} not within 1..{M.n}")
        mask = mask_of(subset)
    if mask < 0 or mask >> M.n:
        raise InputError(f"subset mask {mask} not within the ground set of size {M.n}")
    return mask


def _check_exchange(bases: frozenset) -> None:
    for b1 in bases:
        for b2 in bases:
            only1 = b1 & ~b2
            if not only1:
                continue
            only2 = _bits(b2 & ~b1)
            for e in _bits(only1):
                base = b1 & ~(1 << e)
                if not any(base | (1 << f) in bases for f in only2):
                    raise ExchangeAxiomError(
                        f"exchange axiom violated at pair {list(labels(b1))}, "
                        f"{list(labels(b2))} (element {e + 1})"
                    )


def from_bases(n: int, bases: Iterable[Iterable[int]], *, check: bool = True) -> Matroid:
    """Validated matroid from a family of 1-based basis label lists."""
    if not isinstance(n, int) or n < 1:
        raise InputError(f"ground-set size must be a positive integer, got {n!r}")
    masks = set()
    sizes = set()
    for b in bases:
        b = list(b)
        if any(not 1 <= e <= n for e in b):
            raise InputError(f"basis {b} has elements outside 1..{n}")
        if len(set(b)) != len(b):
            raise InputError(f"basis {b} repeats an element")
        sizes.add(len(b))
        masks.add(mask_of(b))
    if not masks:
        raise InputError("empty basis family")
    if len(sizes) > 1:
        raise InputError(f"mixed basis sizes {sorted(sizes)}")
    family = frozenset(masks)
    if check:
        _check_exchange(family)
    return Matroid(n, sizes.pop(), family)


def uniform(k: int, n: int) -> Matroid:
    if n < 1 or not 0 <= k <= n:
        raise DomainError(f"uniform: need 0 <= k <= n, n >= 1; got k={k}, n={n}")
    bases = frozenset(mask_of(c) for c in itertools.combinations(range(1, n + 1), k))
    return Matroid(n, k, bases)


def minimal(k: int, n: int) -> Matroid:
    """The minimal connected matroid: black elements 1..k, red elements k+1..n.

    Bases are {1..k} and every ({1..k} minus i) plus j with i black, j red.
    """
    if not 1 <= k <= n - 1:
        raise DomainError(f"minimal: need 1 <= k <= n-1; got k={k}, n={n}")
    black = (1 << k) - 1
    bases = {black}
    for i in range(k):
        for j in range(k, n):
            bases.add(black & ~(1 << i) | 1 << j)
    return Matroid(n, k, frozenset(bases))


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, a: int) -> int:
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def graphic_from_multigraph(vertices: int, edges: Sequence[tuple[int, int]]) -> Matroid:
    """Cycle matroid of a connected multigraph on vertices 1..vertices.

    Edge i of ``edges`` becomes matroid element i+1; bases are spanning trees.
    """
    if vertices < 1 or not edges:
        raise InputError("graphic_from_multigraph: need at least one vertex and one edge")
    for u, v in edges:
        if not (1 <= u <= vertices and 1 <= v <= vertices):
            raise InputError(f"edge ({u}, {v}) has an endpoint outside 1..{vertices}")
    uf = _UnionFind(vertices)
    for u, v in edges:
        uf.union(u - 1, v - 1)
    if len({uf.find(v) for v in range(vertices)}) != 1:
        raise DomainError("graphic_from_multigraph: graph is disconnected")
    m = len(edges)
    trees = []
    for combo in itertools.combinations(range(m), vertices - 1):
        uf = _UnionFind(vertices)
        if all(uf.union(edges[i][0] - 1, edges[i][1] - 1) for i in combo):
            trees.append(sum(1 << i for i in combo))
    return Matroid(m, vertices - 1, frozenset(trees))


def rank_of(M: Matroid, subset: Subset) -> int:
    """Largest intersection of the subset with a basis."""
    mask = _as_mask(M, subset)
    if "rank_table" in M.__dict__:
        return int(M.rank_table[mask])
    return max(_popcount(mask & b) for b in M.bases)


def closure(M: Matroid, subset: Subset) -> int:
    mask = _as_mask(M, subset)
    r = rank_of(M, mask)
    for e in range(M.n):
        bit = 1 << e
        if not mask & bit and rank_of(M, mask | bit) == r:
            mask |= bit
    return mask


def _flat_mask_array(M: Matroid) -> np.ndarray:
    rank = M.rank_table
    idx = np.arange(1 << M.n)
    is_flat = np.ones(1 << M.n, dtype=bool)
    for e in range(M.n):
        has = (idx >> e) & 1 == 1
        is_flat &= has | (rank[idx | (1 << e)] > rank)
    return is_flat


def flats(M: Matroid) -> list[FlatRecord]:
    """All flats of M, ordered by (rank, size, mask)."""
    if M.n > EXHAUSTIVE_CAP:
        raise CapacityError("flats", M.n, EXHAUSTIVE_CAP)
    masks = np.flatnonzero(_flat_mask_array(M))
    rank = M.rank_table
    recs = [FlatRecord(int(m), int(rank[m])) for m in masks]
    recs.sort(key=lambda f: (f.rank, _popcount(f.subset), f.subset))
    return recs


def connected_components(M: Matroid) -> list[int]:
    """Masks of the connected components, ordered by smallest element.

    A separator is a set A with r(A) + r(E - A) = k; separators are closed
    under intersection and the components are the minimal nonempty ones.
    """
    if M.n > EXHAUSTIVE_CAP:
        raise CapacityError("connectivity", M.n, EXHAUSTIVE_CAP)
    rank = M.rank_table.astype(np.int32)
    separators = np.flatnonzero(rank + rank[::-1] == M.k)
    comps = []
    seen = 0
    for e in range(M.n):
        bit = 1 << e
        if seen & bit:
            continue
        containing = separators[(separators & bit) != 0]
        comp = int(np.bitwise_and.reduce(containing))
        comps.append(comp)
        seen |= comp
    return comps


def components(M: Matroid) -> int:
    return len(connected_components(M))


def is_connected(M: Matroid) -> bool:
    return components(M) == 1


def dual(M: Matroid) -> Matroid:
    full = M.ground
    return Matroid(M.n, M.n - M.k, frozenset(full & ~b for b in M.bases))


def direct_sum(M1: Matroid, M2: Matroid) -> Matroid:
    if M1.n < 1 or M2.n < 1:
        raise InputError("direct_sum: both summands need a nonempty ground set")
    bases = frozenset(b1 | (b2 << M1.n) for b1 in M1.bases for b2 in M2.bases)
    return Matroid(M1.n + M2.n, M1.k + M2.k, bases)


def relabel(M: Matroid, perm: Sequence[int]) -> Matroid:
    """Apply the permutation i -> perm[i-1] (1-based) to the ground set."""
    if sorted(perm) != list(range(1, M.n + 1)):
        raise InputError(f"relabel: {list(perm)} is not a permutation of 1..{M.n}")
    bases = frozenset(mask_of(perm[e - 1] for e in labels(b)) for b in M.bases)
    return Matroid(M.n, M.k, bases)


def circuit_hyperplane_defect(M: Matroid, H: Subset) -> str | None:
    """Why H fails to be a circuit-hyperplane, or None if it is one."""
    mask = _as_mask(M, H)
    if _popcount(mask) != M.k:
        return f"wrong size: |H| = {_popcount(mask)}, rank is {M.k}"
    if rank_of(M, mask) != M.k - 1:
        return f"wrong rank: rk(H) = {rank_of(M, mask)}, need {M.k - 1}"
    if closure(M, mask) != mask:
        return "not closed"
    for e in _bits(mask):
        if rank_of(M, mask & ~(1 << e)) != M.k - 1:
            return "not a circuit"
    return None


def circuit_hyperplanes(M: Matroid) -> list[int]:
    """All circuit-hyperplanes, in lexicographic label order."""
    if M.k == 0:
        return []
    out = []
    for combo in itertools.combinations(range(1, M.n + 1), M.k):
        mask = mask_of(combo)
        if mask not in M.bases and circuit_hyperplane_defect(M, mask) is None:
            out.append(mask)
    return out


def relax(M: Matroid, H: Subset) -> Matroid:
    mask = _as_mask(M, H)
    reason = circuit_hyperplane_defect(M, mask)
    if reason is not None:
        raise DomainError(f"{list(labels(mask))} is not a circuit-hyperplane: {reason}")
    return Matroid(M.n, M.k, M.bases | {mask})


def relaxed_flats_check(M: Matroid, H: Subset) -> bool:
    """Compare the flats of the relaxation with F(M) - {H} plus the facets of H."""
    mask = _as_mask(M, H)
    relaxed = relax(M, mask)
    lhs = {f.subset for f in flats(relaxed)}
    rhs = {f.subset for f in flats(M)} - {mask}
    rhs |= {mask & ~(1 << e) for e in _bits(mask)}
    return lhs == rhs


_PERM_TABLES: dict[int, np.ndarray] = {}


def _perm_tables(n: int) -> np.ndarray:
    """Row p maps every mask to its image under the p-th permutation of range(n)."""
    if n not in _PERM_TABLES:
        perms = list(itertools.permutations(range(n)))
        masks = np.arange(1 << n)
        table = np.zeros((len(perms), 1 << n), dtype=np.int64)
        for row, perm in enumerate(perms):
            for i, j in enumerate(perm):
                table[row] |= ((masks >> i) & 1) << j
        _PERM_TABLES[n] = table
    return _PERM_TABLES[n]


def canonical_key(M: Matroid) -> tuple:
    """Lexicographically least sorted basis list over all relabelings.

    Equal keys mean isomorphic matroids; used to memoise label-invariant
    computations for small ground sets (n <= 8).
    """
    if M.n > 8:
        raise CapacityError("canonical_key", M.n, 8)
    images = np.sort(_perm_tables(M.n)[:, sorted(M.bases)], axis=1)
    best = images[np.lexsort(images.T[::-1])[0]]
    return (M.n, M.k, tuple(int(b) for b in best))


# -- exhaustive enumeration -------------------------------------------------


def _exchange_constraints(cands: list[int]) -> list[list[tuple[int, int, tuple[int, ...]]]]:
    """Exchange constraints grouped by the last candidate index they mention.

    Each constraint (i, j, witnesses) reads: if candidates i and j are both
    bases then at least one witness index is a basis.
    """
    index = {m: i for i, m in enumerate(cands)}
    by_trigger: list[list] = [[] for _ in cands]
    for i, b1 in enumerate(cands):
        for j, b2 in enumerate(cands):
            only1 = b1 & ~b2
            if not only1:
                continue
            only2 = _bits(b2 & ~b1)
            for e in _bits(only1):
                base = b1 & ~(1 << e)
                wit = tuple(index[base | (1 << f)] for f in only2)
                trig = max(i, j, *wit)
                by_trigger[trig].append((i, j, wit))
    return by_trigger


def _search(n: int, k: int, prefix: tuple[bool, ...]) -> list[frozenset]:
    cands = [mask_of(c) for c in itertools.combinations(range(1, n + 1), k)]
    by_trigger = _exchange_constraints(cands)
    N = len(cands)
    chosen = [False] * N
    found = []

    def consistent(d: int) -> bool:
        for i, j, wit in by_trigger[d]:
            if chosen[i] and chosen[j] and not any(chosen[w] for w in wit):
                return False
        return True

    def dfs(d: int) -> None:
        if d == N:
            if any(chosen):
                found.append(frozenset(cands[i] for i in range(N) if chosen[i]))
            return
        options = (prefix[d],) if d < len(prefix) else (True, False)
        for val in options:
            chosen[d] = val
            if consistent(d):
                dfs(d + 1)
        chosen[d] = False

    dfs(0)
    return found


def _search_connected(args) -> list[frozenset]:
    n, k, prefix = args
    return [
        fam for fam in _search(n, k, prefix) if is_connected(Matroid(n, k, fam))
    ]


def enumerate_connected_matroids(n: int, k: int, workers: int = 1) -> list[Matroid]:
    """Every labeled connected matroid of rank k on {1..n}, canonically sorted.

    Exhaustive backtracking over subfamilies of k-subsets; an exchange
    constraint is checked as soon as all the sets it mentions are decided.
    """
    if n > ENUMERATION_CAP:
        raise CapacityError("enumerate_connected_matroids", n, ENUMERATION_CAP)
    if not 1 <= k <= n - 1:
        raise DomainError(f"enumerate_connected_matroids: need 1 <= k <= n-1; got k={k}, n={n}")
    depth = min(4, len(list(itertools.combinations(range(n), k))))
    jobs = [(n, k, p) for p in itertools.product((True, False), repeat=depth)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_connected, jobs))
    else:
        parts = [_search_connected(j) for j in jobs]
    families = [fam for part in parts for fam in part]
    families.sort(key=lambda fam: sorted(labels(b) for b in fam))
    return [Matroid(n, k, fam) for fam in families]
