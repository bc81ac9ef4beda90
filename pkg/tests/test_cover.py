"""Exact min-cover solver, covering invariants, and T-collections."""
import itertools
import random

import pytest

from lscat.cover import (INF, TCollectionSpec, maximal_sets, min_cover, nu_H,
                         nu_LS, nu_T, t_of_nu, verify_t_collection)
from lscat.finspace import SpaceError, builtin_space


def brute_min_cover(target, candidates):
    """Reference solver: try all candidate subsets by increasing size."""
    cands = [c for c in candidates if c & target]
    for k in range(len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            covered = 0
            for c in combo:
                covered |= c
            if target & ~covered == 0:
                return k
    return INF


def test_min_cover_matches_brute_force():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 8)
        target = rng.getrandbits(n) or 1
        cands = [rng.getrandbits(n) for _ in range(rng.randint(0, 7))]
        value, witness = min_cover(target, cands)
        assert value == brute_min_cover(target, cands)
        if value != INF:
            covered = 0
            for w in witness:
                assert w in cands
                covered |= w
            assert target & ~covered == 0
            assert len(witness) == value


def test_min_cover_edge_cases():
    assert min_cover(0, [0b1]) == (0, [])
    assert min_cover(0b11, []) == (INF, [])
    assert min_cover(0b11, [0b01]) == (INF, [])


def test_min_cover_deterministic_witness():
    cands = [0b011, 0b110, 0b101, 0b111]
    first = min_cover(0b111, cands)
    for _ in range(5):
        assert min_cover(0b111, list(reversed(cands))) == first


def test_maximal_sets():
    assert maximal_sets([0b001, 0b011, 0b100, 0b011]) == [0b011, 0b100]


def test_nu_H_circle4():
    S = builtin_space("circle4")
    value, witness = nu_H(S, S.full)
    assert value == 2
    # witness sets really are open and cover
    covered = 0
    for w in witness:
        assert S.is_open(w)
        covered |= w
    assert covered == S.full
    # proper subsets are contractible in S, so they need one set
    a = 1 << S.index["a"]
    assert nu_H(S, a)[0] == 1


def test_nu_LS_circle4():
    S = builtin_space("circle4")
    value, witness = nu_LS(S, S.full)
    assert value == 2
    for w in witness:
        assert S.is_closed(w)


def test_cone_all_one():
    for name in ("chain(3)", "chain(5)"):
        S = builtin_space(name)
        assert nu_H(S, S.full)[0] == 1
        assert nu_LS(S, S.full)[0] == 1


def test_antichain_counts_components():
    S = builtin_space("antichain(3)")
    assert nu_H(S, S.full)[0] == 3


def test_t_collection_spec():
    S = builtin_space("circle4")
    opens = S.open_sets()
    T = TCollectionSpec.from_family(S, "all_opens", opens)
    assert T.members() == sorted(opens)
    closed_singleton = 1 << S.index["c"]  # c is minimal, so {c} is not open
    assert not S.is_open(closed_singleton)
    assert not T.contains(closed_singleton)
    with pytest.raises(SpaceError, match="non-open"):
        TCollectionSpec.from_family(S, "bad", [closed_singleton])
    P = TCollectionSpec.from_predicate(S, "small",
                                       lambda b: b.bit_count() <= 2)
    assert all(m.bit_count() <= 2 and S.is_open(m) for m in P.members())


def test_nu_T_all_opens_counts_components():
    S = builtin_space("antichain(2)")
    T = TCollectionSpec.from_family(S, "all_opens", S.open_sets())
    assert nu_T(T, S.full)[0] == 1  # the full set itself is open
    T1 = TCollectionSpec.from_predicate(S, "singletons",
                                        lambda b: b.bit_count() == 1)
    assert nu_T(T1, S.full)[0] == 2


def test_t_of_nu_and_verification():
    S = builtin_space("circle4")
    nu = lambda bits: nu_H(S, bits)[0]
    T = t_of_nu(nu, S, 1)
    # members are the opens covered by one contractible open
    for m in T.members():
        assert S.is_open(m) and nu(m) <= 1
    report = verify_t_collection(S, T)
    assert report["status"] == "verified (complete)"
    with pytest.raises(SpaceError):
        t_of_nu(nu, S, 0)


def test_verify_t_collection_flags_violation():
    # on a chain, the map collapsing everything to the top is homotopic to
    # the identity; a family holding the full set but not all preimages of
    # it cannot be closed under preimages unless it contains them
    S = builtin_space("chain(3)")
    top_only = TCollectionSpec.from_family(S, "top", [1 << (S.n - 1)])
    report = verify_t_collection(S, top_only)
    assert report["status"] == "violated"
    assert report["violations"]
