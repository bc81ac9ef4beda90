"""GF(2) linear algebra on int bitsets, checked against brute force."""
import itertools
import random

from lscat.gf2 import Reducer, nullspace, rank


def brute_rank(rows, n_cols):
    """Rank as the log2 of the span size, enumerated directly."""
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    size = len(span)
    return size.bit_length() - 1


def test_rank_matches_span_enumeration():
    rng = random.Random(0)
    for _ in range(200):
        n_cols = rng.randint(1, 8)
        rows = [rng.getrandbits(n_cols) for _ in range(rng.randint(0, 6))]
        assert rank(rows) == brute_rank(rows, n_cols)


def test_reducer_membership():
    rng = random.Random(1)
    for _ in range(100):
        n_cols = rng.randint(1, 8)
        rows = [rng.getrandbits(n_cols) for _ in range(rng.randint(0, 5))]
        red = Reducer(rows)
        span = {0}
        for r in rows:
            span |= {s ^ r for s in span}
        for vec in range(1 << n_cols):
            assert red.contains(vec) == (vec in span)


def test_reduce_is_canonical_on_cosets():
    # two vectors reduce to the same representative iff they differ by
    # an element of the span
    rng = random.Random(2)
    for _ in range(50):
        n_cols = rng.randint(1, 7)
        rows = [rng.getrandbits(n_cols) for _ in range(rng.randint(1, 4))]
        red = Reducer(rows)
        span = {0}
        for r in rows:
            span |= {s ^ r for s in span}
        for a, b in itertools.product(range(1 << n_cols), repeat=2):
            same_coset = (a ^ b) in span
            assert (red.reduce(a) == red.reduce(b)) == same_coset


def test_nullspace_exact():
    rng = random.Random(3)
    for _ in range(100):
        n_cols = rng.randint(1, 8)
        rows = [rng.getrandbits(n_cols) for _ in range(rng.randint(0, 5))]
        basis = nullspace(rows, n_cols)
        # every basis vector kills every row
        for vec in basis:
            for r in rows:
                assert bin(vec & r).count("1") % 2 == 0
        # dimension = n_cols - rank, and the basis is independent
        assert len(basis) == n_cols - rank(rows)
        assert rank(basis) == len(basis)


def test_add_reports_dependence():
    red = Reducer()
    assert red.add(0b011)
    assert red.add(0b101)
    assert not red.add(0b110)  # xor of the first two
    assert red.rank == 2
