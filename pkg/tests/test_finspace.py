"""Space construction, topology primitives, and JSON i/o."""
import json

import pytest

from lscat.finspace import (ContMap, FinSpace, SpaceError, bits_of,
                            build_space, builtin_space, identity_map,
                            is_normal, iter_bits, load_space, space_from_dict)


def up_set_oracle(S, bits):
    """Open iff it contains the up-set of each of its points."""
    return all(S.up[x] & ~bits == 0 for x in iter_bits(bits))


def test_build_space_rejects_cycles_and_duplicates():
    with pytest.raises(SpaceError, match="cycle"):
        build_space(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(SpaceError, match="duplicate"):
        build_space(["a", "a"], [])
    with pytest.raises(SpaceError, match="unknown point"):
        build_space(["a"], [("a", "z")])


def test_transitive_closure():
    S = build_space(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert S.leq(S.index["a"], S.index["c"])


def test_open_closed_against_upset_oracle():
    for name in ("circle4", "wedge2circles", "sphere(1)", "chain(3)"):
        S = builtin_space(name)
        for bits in range(1 << S.n):
            assert S.is_open(bits) == up_set_oracle(S, bits)
            # closed iff complement is open
            assert S.is_closed(bits) == S.is_open(S.full & ~bits)


def test_open_sets_enumeration_is_complete_and_sorted():
    S = builtin_space("circle4")
    opens = S.open_sets()
    assert list(opens) == sorted(b for b in range(16) if S.is_open(b))
    # derived by brute force: circle4 has exactly 7 up-sets
    assert len(opens) == 7


def test_minimal_open_hull_and_closure():
    S = builtin_space("circle4")
    for bits in range(1, 16):
        hull = S.minimal_open_hull(bits)
        assert S.is_open(hull) and hull & bits == bits
        # minimality: contained in every open superset
        for u in S.open_sets():
            if u & bits == bits:
                assert hull & u == hull
        clo = S.closure_of(bits)
        assert S.is_closed(clo) and clo & bits == bits
        for c in S.closed_sets():
            if c & bits == bits:
                assert clo & c == clo


def test_components():
    S = builtin_space("antichain(3)")
    assert len(S.components()) == 3
    S = builtin_space("circle4")
    assert S.components() == [S.full]


def test_subspace_embedding_is_continuous_and_induced():
    S = builtin_space("wedge2circles")
    bits = bits_of([0, 2, 3])
    sub, emb = S.subspace(bits)
    assert isinstance(emb, ContMap)
    for i in range(sub.n):
        for j in range(sub.n):
            assert sub.leq(i, j) == S.leq(emb(i), emb(j))
    with pytest.raises(SpaceError):
        S.subspace(0)


def test_parse_subset():
    S = builtin_space("circle4")
    assert S.parse_subset("full") == S.full
    assert S.parse_subset("") == 0
    assert S.parse_subset("a, c") == (1 << S.index["a"]) | (1 << S.index["c"])
    with pytest.raises(SpaceError, match="unknown point"):
        S.parse_subset("zz")


def test_contmap_validates_monotonicity():
    S = builtin_space("chain(2)")
    with pytest.raises(SpaceError):
        ContMap(S, S, (1, 0))  # order-reversing on a chain
    f = identity_map(S)
    assert f.compose(f).image == f.image
    assert f.image_of_set(0b01) == 0b01
    assert f.preimage_of_set(0b10) == 0b10


def test_builtin_space_names_resolve():
    for name in ("chain(4)", "antichain(2)", "sphere(2)", "circle4",
                 "wedge2circles", "torus16"):
        S = builtin_space(name)
        assert isinstance(S, FinSpace)
    with pytest.raises(SpaceError, match="unknown builtin"):
        builtin_space("klein_bottle")


def test_is_normal():
    # a chain's closed sets are nested, so normality is vacuous
    assert is_normal(builtin_space("chain(3)"))
    # the 4-point circle model: disjoint closed singletons {c},{d} have
    # minimal open hulls {c},{d} which are disjoint; {a},{b} hulls
    # {a,c,d},{b,c,d} overlap
    assert not is_normal(builtin_space("circle4"))


def test_space_json_roundtrip(tmp_path):
    data = {"points": ["a", "b", "c"], "order": [["a", "b"], ["b", "c"]]}
    path = tmp_path / "space.json"
    path.write_text(json.dumps(data))
    S = load_space(str(path))
    assert S.n == 3 and S.leq(0, 2)


def test_space_json_structured_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(SpaceError, match=r"malformed JSON .* line 1"):
        load_space(str(bad))
    with pytest.raises(SpaceError, match="'points' and 'order'"):
        space_from_dict({"points": ["a"]})
    with pytest.raises(SpaceError, match="list of strings"):
        space_from_dict({"points": [1], "order": []})
    with pytest.raises(SpaceError, match=r"\[lo, hi\] pairs"):
        space_from_dict({"points": ["a"], "order": [["a"]]})
