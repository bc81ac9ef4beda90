"""Homotopy decision procedure vs. the exhaustive oracle, contractibility,
and beat-point retractions."""
import itertools

import pytest

from lscat.finspace import (ContMap, UndecidedError, are_homotopic,
                            beat_point_retraction, builtin_space,
                            constant_map, continuous_maps,
                            enumerate_self_maps_homotopic_to_id,
                            find_beat_points, homotopy_oracle, identity_map,
                            is_contractible_in)
from lscat.harness import GenConfig, gen_posets


def test_identity_homotopic_to_itself():
    S = builtin_space("circle4")
    f = identity_map(S)
    assert are_homotopic(f, f)


def test_circle_identity_not_homotopic_to_constant():
    S = builtin_space("circle4")
    f = identity_map(S)
    for p in range(S.n):
        g = constant_map(S, S, p)
        assert not are_homotopic(f, g)
        assert not homotopy_oracle(f, g)


def test_chain_identity_homotopic_to_constant():
    S = builtin_space("chain(3)")
    f = identity_map(S)
    g = constant_map(S, S, S.n - 1)
    assert are_homotopic(f, g)
    assert homotopy_oracle(f, g)


def test_constants_homotopic_iff_same_component():
    S = builtin_space("antichain(2)")
    c0, c1 = constant_map(S, S, 0), constant_map(S, S, 1)
    assert not are_homotopic(c0, c1)
    T = builtin_space("circle4")
    d0, d1 = constant_map(T, T, 0), constant_map(T, T, 1)
    assert are_homotopic(d0, d1)


def test_bfs_matches_oracle_on_random_spaces():
    cfg = GenConfig(seed=5, size_min=2, size_max=4, count=10)
    spaces = gen_posets(cfg)
    pairs = 0
    for dom in spaces[:5]:
        for cod in spaces[:5]:
            if cod.n ** dom.n > 3000:
                continue
            maps = [ContMap(dom, cod, img)
                    for img in continuous_maps(dom, cod)]
            for f, g in itertools.islice(
                    itertools.combinations(maps, 2), 40):
                assert are_homotopic(f, g) == homotopy_oracle(f, g)
                pairs += 1
    assert pairs >= 100


def test_are_homotopic_raises_over_cap():
    S = builtin_space("chain(4)")
    f = identity_map(S)
    g = constant_map(S, S, 0)
    with pytest.raises(UndecidedError):
        are_homotopic(f, g, cap=2)


def test_continuous_maps_are_all_monotone_and_complete():
    dom = builtin_space("chain(2)")
    cod = builtin_space("circle4")
    maps = continuous_maps(dom, cod)
    expected = {(x, y) for x in range(4) for y in range(4) if cod.leq(x, y)}
    assert set(maps) == expected


def test_is_contractible_in():
    S = builtin_space("circle4")
    # any proper subset misses a point of the circle, hence contractible in S
    for bits in range(1, S.full):
        assert is_contractible_in(S, bits)
    assert not is_contractible_in(S, S.full)
    with pytest.raises(Exception):
        is_contractible_in(S, 0)


def test_contractible_in_vs_definition_oracle():
    # definition: the inclusion is homotopic (via the oracle) to a constant
    spaces = gen_posets(GenConfig(seed=11, size_min=3, size_max=4, count=8))
    checked = 0
    for S in spaces:
        for bits in range(1, 1 << S.n):
            sub, emb = S.subspace(bits)
            expected = any(
                homotopy_oracle(emb, constant_map(sub, S, p))
                for p in range(S.n))
            assert is_contractible_in(S, bits) == expected
            checked += 1
    assert checked >= 50


def test_beat_point_retractions_are_dominations():
    S = builtin_space("chain(4)")
    beats = find_beat_points(S)
    assert beats, "a chain has beat points"
    for x, r_self in beats:
        sub, emb, r = beat_point_retraction(S, x, r_self)
        # r o i = id on the subspace, i o r ~ id on S
        comp = r.compose(emb)
        assert comp.image == tuple(range(sub.n))
        assert emb.compose(r).image == r_self.image
        assert are_homotopic(r_self, identity_map(S))


def test_minimal_space_has_no_beat_points():
    assert find_beat_points(builtin_space("circle4")) == []
    assert find_beat_points(builtin_space("sphere(1)")) == []


def test_enumerate_self_maps_homotopic_to_id():
    S = builtin_space("chain(2)")
    maps, truncated = enumerate_self_maps_homotopic_to_id(S)
    assert not truncated
    ident = identity_map(S)
    expected = {img for img in continuous_maps(S, S)
                if homotopy_oracle(ContMap(S, S, img), ident)}
    assert {m.image for m in maps} == expected
    # the minimal circle model admits only the identity
    C = builtin_space("circle4")
    maps, _ = enumerate_self_maps_homotopic_to_id(C)
    assert [m.image for m in maps] == [identity_map(C).image]
