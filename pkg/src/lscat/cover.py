"""Covering-number machinery: T-collections, exact min covers, nu_H / nu_LS / nu_T.

Category values live in Z>=0 union {+inf}; float('inf') is the infinity,
so comparisons are total and arithmetic saturates for free.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .finspace import (FinSpace, DEFAULT_BFS_CAP, SpaceError, iter_bits,
                       enumerate_self_maps_homotopic_to_id, is_contractible_in)

INF = float("inf")


@dataclass
class TCollectionSpec:
    """A family of open sets, given explicitly or by a predicate on opens.

    Membership of non-open sets is always False.  Closure under preimages by
    self-maps homotopic to the identity is a testable property (see
    verify_t_collection), not an invariant.
    """

    space: FinSpace
    name: str
    explicit: Optional[frozenset] = None
    predicate: Optional[Callable[[int], bool]] = None

    @classmethod
    def from_family(cls, space, name, members):
        for m in members:
            if not space.is_open(m):
                raise SpaceError(f"non-open member in T-collection {name!r}")
        return cls(space, name, explicit=frozenset(members))

    @classmethod
    def from_predicate(cls, space, name, predicate):
        return cls(space, name, predicate=predicate)

    def contains(self, bits: int) -> bool:
        if not self.space.is_open(bits):
            return False
        if self.explicit is not None:
            return bits in self.explicit
        return bool(self.predicate(bits))

    def members(self) -> list[int]:
        """All members, ascending by bitset value."""
        if self.explicit is not None:
            return sorted(self.explicit)
        return [u for u in self.space.open_sets() if self.predicate(u)]


def maximal_sets(sets) -> list[int]:
    """Inclusion-maximal bitsets, ascending by value."""
    out = []
    for s in sorted(set(sets), key=lambda b: (b.bit_count(), b), reverse=True):
        if not any((s | t) == t for t in out):
            out.append(s)
    return sorted(out)


def maximal_trivial_opens(S: FinSpace, predicate) -> list[int]:
    """Inclusion-maximal nonempty open sets satisfying a downward-closed
    predicate; memoized over the space's open-set list."""
    memo = {}

    def check(bits):
        if bits not in memo:
            memo[bits] = bool(predicate(bits))
        return memo[bits]

    good = [u for u in S.open_sets() if u and check(u)]
    return maximal_sets(good)


def min_cover(target: int, candidates) -> tuple:
    """Exact minimum number of candidate sets covering target, with witness.

    Branch and bound: greedy upper bound, branching on the uncovered point
    with fewest covering candidates, deterministic candidate order.
    Returns (value, witness list of bitsets); (inf, []) when uncoverable.
    """
    if target == 0:
        return 0, []
    cands = sorted({c for c in candidates if c & target})
    total = 0
    for c in cands:
        total |= c
    if target & ~total:
        return INF, []

    # greedy bound
    greedy = []
    left = target
    while left:
        best = max(cands, key=lambda c: ((c & left).bit_count(), -c))
        greedy.append(best)
        left &= ~best
    best_len = len(greedy)
    best_witness = sorted(greedy)

    covering = {}
    for x in iter_bits(target):
        covering[x] = [c for c in cands if (c >> x) & 1]

    def branch(left, chosen):
        nonlocal best_len, best_witness
        if left == 0:
            if len(chosen) < best_len:
                best_len = len(chosen)
                best_witness = sorted(chosen)
            return
        if len(chosen) + 1 >= best_len:
            return  # cannot beat the incumbent
        x = min(iter_bits(left), key=lambda p: (len(covering[p]), p))
        for c in covering[x]:
            branch(left & ~c, chosen + [c])

    branch(target, [])
    return best_len, best_witness


def contractible_open_candidates(S: FinSpace, cap: int = DEFAULT_BFS_CAP):
    if "nu_H_candidates" not in S._cache:
        S._cache["nu_H_candidates"] = maximal_trivial_opens(
            S, lambda bits: is_contractible_in(S, bits, cap))
    return S._cache["nu_H_candidates"]


def contractible_closed_candidates(S: FinSpace, cap: int = DEFAULT_BFS_CAP):
    if "nu_LS_candidates" not in S._cache:
        good = [c for c in S.closed_sets()
                if c and is_contractible_in(S, c, cap)]
        S._cache["nu_LS_candidates"] = maximal_sets(good)
    return S._cache["nu_LS_candidates"]


def nu_H(S: FinSpace, bits: int, cap: int = DEFAULT_BFS_CAP) -> tuple:
    """Min cover of the subset by open sets contractible in S."""
    return min_cover(bits, contractible_open_candidates(S, cap))


def nu_LS(S: FinSpace, bits: int, cap: int = DEFAULT_BFS_CAP) -> tuple:
    """Min cover of the subset by closed sets contractible in S."""
    return min_cover(bits, contractible_closed_candidates(S, cap))


def nu_T(T: TCollectionSpec, bits: int) -> tuple:
    """Min cover by members of T.

    Only maximal members are offered to the solver: every member lies under
    a maximal one, so replacing cover elements by maximal supersets never
    changes the minimum.
    """
    members = [m for m in T.members() if m]
    return min_cover(bits, maximal_sets(members))


def t_of_nu(nu_eval, S: FinSpace, n: int, name: str = "T_nu") -> TCollectionSpec:
    """The opens with nu-value at most n, as a predicate-kind collection."""
    if n < 1:
        raise SpaceError("T_{nu,n} needs n >= 1")
    return TCollectionSpec.from_predicate(
        S, f"{name},{n}", lambda bits: nu_eval(bits) <= n)


def verify_t_collection(S: FinSpace, T: TCollectionSpec,
                        cap: int = DEFAULT_BFS_CAP) -> dict:
    """Check closure of T under preimages by self-maps homotopic to id."""
    maps, truncated = enumerate_self_maps_homotopic_to_id(S, cap)
    members = T.members()
    violations = []
    for f in maps:
        for u in members:
            pre = f.preimage_of_set(u)
            if not T.contains(pre):
                violations.append({
                    "map": list(f.image),
                    "member": S.subset_labels(u),
                    "preimage": S.subset_labels(pre),
                })
    if violations:
        return {"status": "violated", "violations": violations}
    return {"status": "verified (sampled)" if truncated else "verified (complete)",
            "maps_checked": len(maps), "members_checked": len(members)}
