import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matroid_ehrhart import matroid as mt
from matroid_ehrhart.errors import CapacityError, DomainError, InputError
from matroid_ehrhart.matroid import ExchangeAxiomError, mask_of
from matroid_ehrhart.suites import default_fixtures, load_fixture

FIXTURES = default_fixtures()
SMALL = {name: M for name, M in FIXTURES.items() if M.n <= 6}


def oracle_rank(M, A):
    return max(bin(B & A).count("1") for B in M.bases)


def oracle_exchange(n, family):
    for b1, b2 in itertools.product(family, repeat=2):
        for e in b1 - b2:
            if not any((b1 - {e}) | {f} in family for f in b2 - b1):
                return False
    return True


def oracle_connected(M):
    full = M.ground
    return not any(
        oracle_rank(M, A) + oracle_rank(M, full ^ A) == M.k for A in range(1, full)
    )


def subsets(n):
    return range(1 << n)


# -- construction ---------------------------------------------------------------


def test_from_bases_small_uniform():
    assert mt.from_bases(2, [[1], [2]]) == mt.uniform(1, 2)


def test_from_bases_rank3_seven_element_matroid():
    removed = [{2, 5, 7}, {3, 4, 5}, {2, 4, 6}, {3, 6, 7}, {1, 5, 6}, {1, 2, 3}]
    bases = [b for b in itertools.combinations(range(1, 8), 3) if set(b) not in removed]
    M = mt.from_bases(7, bases)
    assert len(M.bases) == 29 and M.k == 3


@pytest.mark.parametrize(
    "n,bases,fragment",
    [
        (3, [[1, 2], [3]], "mixed basis sizes"),
        (3, [[1, 4]], "outside 1..3"),
        (3, [], "empty basis family"),
        (3, [[1, 1]], "repeats an element"),
    ],
)
def test_from_bases_rejects_bad_families(n, bases, fragment):
    with pytest.raises(InputError, match=fragment) as info:
        mt.from_bases(n, bases)
    assert not isinstance(info.value, ExchangeAxiomError)


def test_from_bases_exchange_violation_names_pair():
    with pytest.raises(ExchangeAxiomError, match="exchange axiom violated at pair"):
        mt.from_bases(4, [[1, 2], [3, 4]])


def test_exchange_check_matches_oracle_on_all_small_families():
    # every family of 2-subsets of [4]: accept iff the oracle accepts
    pairs = [frozenset(p) for p in itertools.combinations(range(1, 5), 2)]
    for r in range(1, len(pairs) + 1):
        for fam in itertools.combinations(pairs, r):
            ok = oracle_exchange(4, set(fam))
            try:
                mt.from_bases(4, [sorted(b) for b in fam])
                got = True
            except ExchangeAxiomError:
                got = False
            assert got == ok, fam


@pytest.mark.parametrize("k,n,count", [(2, 4, 6), (1, 5, 5), (3, 7, 35), (0, 3, 1)])
def test_uniform_counts(k, n, count):
    assert len(mt.uniform(k, n).bases) == count


def test_uniform_rejects_bad_rank():
    with pytest.raises(DomainError):
        mt.uniform(4, 3)


def test_minimal_examples():
    M = mt.minimal(2, 4)
    assert M.to_json()["bases"] == [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]]
    assert mt.minimal(1, 6) == mt.uniform(1, 6)
    assert len(mt.minimal(5, 8).bases) == 16
    with pytest.raises(DomainError):
        mt.minimal(4, 4)


def test_minimal_basis_count_formula():
    for n in range(2, 11):
        for k in range(1, n):
            assert len(mt.minimal(k, n).bases) == k * (n - k) + 1


def test_graphic_examples():
    assert mt.graphic_from_multigraph(3, [(1, 2), (2, 3), (1, 3)]) == mt.uniform(2, 3)
    assert mt.graphic_from_multigraph(2, [(1, 2)] * 3) == mt.uniform(1, 3)
    with pytest.raises(DomainError):
        mt.graphic_from_multigraph(3, [(1, 2)])


def cycle_with_parallels(k, n):
    """Cycle on k+1 vertices; edges 1..k are the path, edges k+1..n all join
    its endpoints (the replaced edge and its parallel copies)."""
    edges = [(i, i + 1) for i in range(1, k + 1)]
    edges += [(1, k + 1)] * (n - k)
    return mt.graphic_from_multigraph(k + 1, edges)


def test_graphic_cycle_reproduces_minimal():
    for n in range(2, 9):
        for k in range(1, n):
            assert cycle_with_parallels(k, n) == mt.minimal(k, n)


# -- rank, closure, flats -------------------------------------------------------


def test_rank_examples():
    M = mt.minimal(2, 4)
    assert mt.rank_of(M, []) == 0
    assert mt.rank_of(M, [3, 4]) == 1
    assert mt.rank_of(M, M.ground) == 2


@pytest.mark.parametrize("name", sorted(SMALL))
def test_rank_table_matches_max_intersection(name):
    M = SMALL[name]
    table = M.rank_table
    assert all(table[A] == oracle_rank(M, A) for A in subsets(M.n))


def test_closure_examples():
    assert mt.closure(mt.uniform(2, 4), [1]) == mask_of([1])
    assert mt.closure(mt.minimal(2, 4), [3]) == mask_of([3, 4])


def test_flats_of_minimal_2_4():
    got = {f.labels for f in mt.flats(mt.minimal(2, 4))}
    assert got == {(), (1,), (2,), (3, 4), (1, 2, 3, 4)}


def test_flats_census_of_minimal():
    for n in range(2, 9):
        for k in range(1, n):
            assert len(mt.flats(mt.minimal(k, n))) == 2 ** (k + 1) - k - 1


@pytest.mark.parametrize("name", sorted(SMALL))
def test_flats_are_exactly_closed_sets(name):
    M = SMALL[name]
    want = {
        A
        for A in subsets(M.n)
        if all(oracle_rank(M, A | 1 << e) > oracle_rank(M, A) for e in range(M.n) if not A >> e & 1)
    }
    assert {f.subset for f in mt.flats(M)} == want


def test_flats_capacity_guard():
    big = mt.Matroid(21, 1, frozenset(1 << i for i in range(21)))
    with pytest.raises(CapacityError):
        mt.flats(big)


# -- connectivity ---------------------------------------------------------------


def test_connectivity_examples():
    S = mt.direct_sum(mt.uniform(1, 2), mt.uniform(1, 2))
    assert not mt.is_connected(S) and mt.components(S) == 2
    assert mt.is_connected(mt.uniform(2, 4)) and mt.components(mt.uniform(2, 4)) == 1
    for n in range(2, 9):
        for k in range(1, n):
            assert mt.is_connected(mt.minimal(k, n))


@pytest.mark.parametrize("name", sorted(SMALL))
def test_connectivity_matches_separator_oracle(name):
    M = SMALL[name]
    assert mt.is_connected(M) == oracle_connected(M)


def test_component_count_of_triple_sum():
    M = mt.direct_sum(mt.direct_sum(mt.uniform(1, 2), mt.minimal(2, 4)), mt.uniform(0, 1))
    assert mt.components(M) == 3
    assert len(mt.connected_components(M)) == 3


# -- duality, sums --------------------------------------------------------------


def test_dual_examples():
    assert mt.dual(mt.uniform(2, 5)) == mt.uniform(3, 5)
    assert mt.relabel(mt.dual(mt.minimal(2, 4)), [3, 4, 1, 2]) == mt.minimal(2, 4)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_dual_rank_formula(name):
    M = SMALL[name]
    D = mt.dual(M)
    assert mt.dual(D) == M
    for A in subsets(M.n):
        assert mt.rank_of(D, A) == bin(A).count("1") - M.k + mt.rank_of(M, M.ground ^ A)


def test_minimal_dual_is_minimal():
    for n in range(2, 8):
        for k in range(1, n):
            D = mt.dual(mt.minimal(k, n))
            # reds become blacks: send k+1..n to 1..n-k and 1..k to n-k+1..n
            perm = [n - k + i for i in range(1, k + 1)] + list(range(1, n - k + 1))
            assert mt.relabel(D, perm) == mt.minimal(n - k, n)


def test_direct_sum_examples():
    S = mt.direct_sum(mt.uniform(1, 2), mt.uniform(1, 2))
    assert (S.n, S.k, len(S.bases)) == (4, 2, 4)
    with pytest.raises(InputError):
        mt.direct_sum(mt.uniform(1, 2), mt.Matroid(0, 0, frozenset({0})))


# -- relaxation -----------------------------------------------------------------

U36_MINUS = load_fixture("u36_minus_123")


def test_circuit_hyperplane_examples():
    assert mt.circuit_hyperplanes(mt.uniform(3, 6)) == []
    assert mt.circuit_hyperplanes(mt.minimal(2, 4)) == [mask_of([3, 4])]
    assert mt.circuit_hyperplanes(U36_MINUS) == [mask_of([1, 2, 3])]


@pytest.mark.parametrize("name", sorted(SMALL))
def test_circuit_hyperplanes_match_definition(name):
    M = SMALL[name]
    want = []
    for H in subsets(M.n):
        if bin(H).count("1") != M.k or oracle_rank(M, H) != M.k - 1:
            continue
        closed = all(oracle_rank(M, H | 1 << e) > M.k - 1 for e in range(M.n) if not H >> e & 1)
        circuit = all(oracle_rank(M, H ^ 1 << e) == M.k - 1 for e in range(M.n) if H >> e & 1)
        if closed and circuit:
            want.append(H)
    assert sorted(mt.circuit_hyperplanes(M)) == sorted(want)


def test_relax_examples():
    assert mt.relax(mt.minimal(2, 4), [3, 4]) == mt.uniform(2, 4)
    assert mt.relax(U36_MINUS, [1, 2, 3]) == mt.uniform(3, 6)


@pytest.mark.parametrize("H,reason", [([1, 2], "wrong rank"), ([1, 3], "wrong rank"), ([1], "wrong size")])
def test_relax_names_the_defect(H, reason):
    with pytest.raises(DomainError, match=reason):
        mt.relax(mt.minimal(2, 4), H)


def test_relax_uniform_always_fails():
    for H in itertools.combinations(range(1, 5), 2):
        with pytest.raises(DomainError, match="not a circuit-hyperplane"):
            mt.relax(mt.uniform(2, 4), H)


def test_relaxed_flats_of_minimal_2_4():
    assert mt.relaxed_flats_check(mt.minimal(2, 4), [3, 4])
    got = {f.labels for f in mt.flats(mt.uniform(2, 4))}
    assert got == {(), (1,), (2,), (3,), (4,), (1, 2, 3, 4)}


def test_relaxed_flats_on_fixtures():
    for M in FIXTURES.values():
        for H in mt.circuit_hyperplanes(M):
            assert mt.relaxed_flats_check(M, H)


def test_twin_fixtures_relax_to_u37():
    for name, (h1, h2) in {
        "u37_minus_123_456": ([1, 2, 3], [4, 5, 6]),
        "u37_minus_123_345": ([1, 2, 3], [3, 4, 5]),
    }.items():
        M = load_fixture(name)
        assert mt.relax(mt.relax(M, h1), h2) == mt.uniform(3, 7)


# -- enumeration ----------------------------------------------------------------


def brute_connected_matroids(n, k):
    ksets = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    found = set()
    for mask in range(1, 1 << len(ksets)):
        fam = {ksets[i] for i in range(len(ksets)) if mask >> i & 1}
        if oracle_exchange(n, fam):
            M = mt.from_bases(n, [sorted(b) for b in fam], check=False)
            if oracle_connected(M):
                found.add(M)
    return found


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2), (4, 1), (5, 2)])
def test_enumeration_matches_subfamily_brute_force(n, k):
    got = mt.enumerate_connected_matroids(n, k)
    assert len(got) == len(set(got))
    assert set(got) == brute_connected_matroids(n, k)


def test_enumeration_examples():
    assert mt.enumerate_connected_matroids(2, 1) == [mt.uniform(1, 2)]
    found = mt.enumerate_connected_matroids(4, 2)
    assert len(found) == 7
    assert sum(len(M.bases) == 5 for M in found) == 6


def test_enumeration_6_3_all_connected_and_minimizers():
    found = mt.enumerate_connected_matroids(6, 3)
    assert all(mt.is_connected(M) for M in found)
    low = min(len(M.bases) for M in found)
    assert low == 10
    key = mt.canonical_key(mt.minimal(3, 6))
    assert all(mt.canonical_key(M) == key for M in found if len(M.bases) == low)


def test_enumeration_is_worker_invariant():
    assert mt.enumerate_connected_matroids(5, 2, workers=2) == mt.enumerate_connected_matroids(5, 2)


def test_enumeration_capacity():
    with pytest.raises(CapacityError):
        mt.enumerate_connected_matroids(7, 3)


# -- serialization --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FIXTURES)), st.data())
def test_json_round_trip_under_relabeling(name, data):
    M = FIXTURES[name]
    perm = data.draw(st.permutations(range(1, M.n + 1)))
    P = mt.relabel(M, list(perm))
    assert mt.Matroid.from_json(P.to_json()) == P
    assert P.to_json()["bases"] == sorted(P.to_json()["bases"])
    assert mt.canonical_key(P) == mt.canonical_key(M)


@pytest.mark.parametrize(
    "data", [{"n": 2}, {"n": "2", "bases": [[1]]}, {"n": 2, "bases": [[2, 1]]}, {"n": 2, "bases": [1]}]
)
def test_from_json_rejects_malformed(data):
    with pytest.raises(InputError):
        mt.Matroid.from_json(data)
