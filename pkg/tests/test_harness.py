"""Random instance generation and the relation suites."""
from lscat.harness import (GenConfig, _isomorphic, gen_posets,
                           run_chain_suite, run_full_report,
                           run_domination_suite, run_oracle_suite)
from lscat.finspace import builtin_space


SMALL = GenConfig(seed=3, size_min=3, size_max=5, count=10,
                  oracle_trials=20, cup_union_trials=30)


def test_gen_posets_is_deterministic_and_valid():
    a = gen_posets(SMALL)
    b = gen_posets(SMALL)
    assert len(a) == SMALL.count
    assert [S.labels for S in a] == [S.labels for S in b]
    assert [tuple(S.up) for S in a] == [tuple(S.up) for S in b]
    for S in a:
        assert SMALL.size_min <= S.n <= SMALL.size_max


def test_gen_posets_avoids_isomorphic_duplicates():
    spaces = gen_posets(SMALL)
    for i, A in enumerate(spaces):
        for B in spaces[i + 1:]:
            assert not _isomorphic(A, B)


def test_isomorphism_detector():
    A = builtin_space("chain(3)")
    B = builtin_space("chain(3)")
    assert _isomorphic(A, B)
    assert not _isomorphic(A, builtin_space("antichain(3)"))


def test_oracle_suite_passes():
    report = run_oracle_suite(SMALL)
    assert report["status"] == "pass"
    assert report["checked"] >= SMALL.oracle_trials
    assert report["disagreements"] == []


def test_chain_suite_passes_with_strict_instances():
    spaces = gen_posets(SMALL)
    report = run_chain_suite(spaces, seed=SMALL.seed)
    assert report["status"] == "pass"
    assert report["checked"] > 0


def test_domination_suite_passes():
    spaces = gen_posets(SMALL)
    report = run_domination_suite(spaces, seed=SMALL.seed)
    assert report["status"] == "pass"
    assert report["checked"] >= 20


def test_full_report_passes_and_is_deterministic():
    cfg = GenConfig(seed=9, size_min=3, size_max=5, count=8,
                    oracle_trials=15, cup_union_trials=25)
    first = run_full_report(cfg)
    assert first["status"] == "pass", first["suites"]
    assert set(first["suites"]) == {
        "oracle", "axioms", "chain", "dominations", "tcollections", "relations",
        "closure_equality", "cup_union", "cuplength_maps", "t_nucl_is_t_c"}
    for name, suite in first["suites"].items():
        assert suite["status"] == "pass", (name, suite)
    second = run_full_report(cfg)
    assert first == second
