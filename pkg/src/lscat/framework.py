"""Category/precategory algebra: evaluable set-functions, the tilde and bar
combinators, the nu_T / T_{nu,n} pair, and finite axiom/theorem checkers.

Checkers verify instances on one given finite space and hunt counterexamples;
they never claim anything about spaces they were not run on.  Every failure
carries a certificate (the violating subset, pair, or map) that can be
re-verified with a single call.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from . import cohom, cover
from .finspace import (FinSpace, DEFAULT_BFS_CAP, SpaceError,
                       enumerate_self_maps_homotopic_to_id, is_normal)

INF = cover.INF


@dataclass
class CategoryFn:
    """An evaluable set-function nu: 2^M -> Z>=0 union {+inf}, memoized.

    claims lists the axioms {i,ii,iii,iv,v} the constructor asserts; they are
    what check_axioms is expected to confirm, not a proof.
    """

    space: FinSpace
    provenance: str
    fn: Callable[[int], object]
    claims: frozenset = frozenset()
    _memo: dict = field(default_factory=dict, repr=False)

    def eval(self, bits: int):
        if bits == 0:
            return 0
        if bits not in self._memo:
            self._memo[bits] = self.fn(bits)
        return self._memo[bits]

    __call__ = eval

    def clear_cache(self):
        self._memo.clear()


@dataclass
class PrecategoryFn:
    """A set-function defined on open sets only (claims include ii and iv)."""

    space: FinSpace
    provenance: str
    fn: Callable[[int], object]
    claims: frozenset = frozenset({"ii", "iv"})
    _memo: dict = field(default_factory=dict, repr=False)

    def eval(self, bits: int):
        if not self.space.is_open(bits):
            raise SpaceError("precategory evaluated on a non-open set")
        if bits == 0:
            return 0
        if bits not in self._memo:
            self._memo[bits] = self.fn(bits)
        return self._memo[bits]

    __call__ = eval


# -- the standard categories as CategoryFn values ---------------------------

def category_nu_H(S: FinSpace, cap: int = DEFAULT_BFS_CAP) -> CategoryFn:
    return CategoryFn(S, "nu_H", lambda bits: cover.nu_H(S, bits, cap)[0],
                      claims=frozenset({"i", "ii", "iii", "iv", "v"}))


def category_nu_LS(S: FinSpace, cap: int = DEFAULT_BFS_CAP) -> CategoryFn:
    return CategoryFn(S, "nu_LS", lambda bits: cover.nu_LS(S, bits, cap)[0],
                      claims=frozenset({"i", "ii", "iv", "v"}))


def category_nu_c(S: FinSpace) -> CategoryFn:
    return CategoryFn(S, "nu_c", lambda bits: cohom.nu_c(S, bits)[0],
                      claims=frozenset({"i", "ii", "iii", "iv", "v"}))


def category_nu_CL(S: FinSpace) -> CategoryFn:
    return CategoryFn(S, "nu_CL", lambda bits: cohom.nu_CL(S, bits),
                      claims=frozenset({"i", "ii", "iii", "iv"}))


def precategory_cuplength(S: FinSpace) -> PrecategoryFn:
    return PrecategoryFn(S, "cuplength", lambda bits: cohom.cuplength(S, bits))


STANDARD_CATEGORIES = {
    "nu_H": category_nu_H,
    "nu_LS": category_nu_LS,
    "nu_c": lambda S, cap=None: category_nu_c(S),
    "nu_CL": lambda S, cap=None: category_nu_CL(S),
}


# -- combinators -------------------------------------------------------------

def tilde(pre: PrecategoryFn, monotone: bool = False) -> CategoryFn:
    """Category induced by minimizing a precategory over open supersets.

    With monotone=True the minimum is taken at the minimal open hull (valid
    exactly when the precategory is monotone under inclusion of opens).
    """
    S = pre.space

    def fn(bits):
        if monotone:
            return pre.eval(S.minimal_open_hull(bits))
        vals = [pre.eval(u) for u in S.open_sets() if (u & bits) == bits]
        return min(vals) if vals else INF

    return CategoryFn(S, f"tilde({pre.provenance})", fn,
                      claims=pre.claims | {"i", "iii"})


def bar(nu: CategoryFn) -> CategoryFn:
    """Category evaluated on topological closures."""
    S = nu.space
    return CategoryFn(S, f"bar({nu.provenance})",
                      lambda bits: nu.eval(S.closure_of(bits)),
                      claims=nu.claims)


def nu_from_T(T: cover.TCollectionSpec) -> CategoryFn:
    return CategoryFn(T.space, f"nu_T({T.name})",
                      lambda bits: cover.nu_T(T, bits)[0],
                      claims=frozenset({"i", "ii", "iii", "iv"}))


def T_from_nu(nu: CategoryFn, n: int) -> cover.TCollectionSpec:
    return cover.t_of_nu(nu.eval, nu.space, n, name=f"T_{{{nu.provenance}}}")


# -- axiom checking ----------------------------------------------------------

def _subset_pool(S: FinSpace, exhaustive_n: int, samples: int, seed: int):
    if S.n <= exhaustive_n or (1 << S.n) <= samples:
        return list(range(1 << S.n)), "exhaustive"
    rng = random.Random(seed)
    pool = {0, S.full}
    while len(pool) < samples:
        pool.add(rng.getrandbits(S.n))
    return sorted(pool), "sampled"


def check_axioms(nu: CategoryFn, exhaustive_n: int = 6, samples: int = 200,
                 map_cap: int = DEFAULT_BFS_CAP, seed: int = 0,
                 axioms=("i", "ii", "iii", "iv", "v")) -> dict:
    """Per-axiom pass/fail report with counterexample certificates."""
    S = nu.space
    subsets, mode = _subset_pool(S, exhaustive_n, samples, seed)
    report = {"space_points": S.n, "nu": nu.provenance, "mode": mode}

    def fail(axiom, cert):
        report[axiom] = {"status": "fail", "mode": mode, "certificate": cert}

    def ok(axiom, checked):
        report[axiom] = {"status": "pass", "mode": mode, "checked": checked}

    if "i" in axioms:
        checked = 0
        bad = None
        for b in subsets:
            vb = nu.eval(b)
            # descending submask walk hits every A subset of b
            a = b
            while True:
                if nu.eval(a) > vb:
                    bad = {"A": S.subset_labels(a), "B": S.subset_labels(b),
                           "nu_A": nu.eval(a), "nu_B": vb}
                    break
                checked += 1
                if a == 0:
                    break
                a = (a - 1) & b
            if bad:
                break
        fail("i", bad) if bad else ok("i", checked)

    if "ii" in axioms:
        checked = 0
        bad = None
        for a in subsets:
            va = nu.eval(a)
            for b in subsets:
                if nu.eval(a | b) > va + nu.eval(b):
                    bad = {"A": S.subset_labels(a), "B": S.subset_labels(b),
                           "nu_A": va, "nu_B": nu.eval(b),
                           "nu_union": nu.eval(a | b)}
                    break
                checked += 1
            if bad:
                break
        fail("ii", bad) if bad else ok("ii", checked)

    if "iii" in axioms:
        checked = 0
        bad = None
        opens = S.open_sets()
        for a in subsets:
            va = nu.eval(a)
            if not any((u & a) == a and nu.eval(u) == va for u in opens):
                bad = {"A": S.subset_labels(a), "nu_A": va}
                break
            checked += 1
        fail("iii", bad) if bad else ok("iii", checked)

    if "iv" in axioms:
        maps, truncated = enumerate_self_maps_homotopic_to_id(S, map_cap)
        iv_budget = 400_000
        sampled_maps = False
        if len(maps) * len(subsets) > iv_budget:
            step = (len(maps) * len(subsets)) // iv_budget + 1
            maps = maps[::step]
            sampled_maps = True
        checked = 0
        bad = None
        for f in maps:
            for a in subsets:
                if nu.eval(a) > nu.eval(f.image_of_set(a)):
                    bad = {"map": list(f.image), "A": S.subset_labels(a),
                           "nu_A": nu.eval(a),
                           "nu_fA": nu.eval(f.image_of_set(a))}
                    break
                checked += 1
            if bad:
                break
        if bad:
            fail("iv", bad)
        else:
            report["iv"] = {
                "status": "pass",
                "mode": ("sampled" if truncated or sampled_maps
                         or mode == "sampled" else mode),
                "checked": checked, "maps": len(maps)}

    if "v" in axioms:
        bad = None
        for x in range(S.n):
            if nu.eval(1 << x) != 1:
                bad = {"point": S.labels[x], "nu": nu.eval(1 << x)}
                break
        fail("v", bad) if bad else ok("v", S.n)

    return report


# -- theorem checkers --------------------------------------------------------

def check_t_cover_bound(nu: CategoryFn, n: int, exhaustive_n: int = 6,
                  samples: int = 200, seed: int = 0) -> dict:
    """nu <= n * nu_{T_{nu,n}} on all (or sampled) subsets."""
    S = nu.space
    nu_t = nu_from_T(T_from_nu(nu, n))
    subsets, mode = _subset_pool(S, exhaustive_n, samples, seed)
    strict = 0
    for a in subsets:
        lhs, rhs = nu.eval(a), n * nu_t.eval(a)
        if lhs > rhs:
            return {"status": "violated", "mode": mode,
                    "certificate": {"A": S.subset_labels(a),
                                    "nu": lhs, "n_nu_T": rhs}}
        if lhs < rhs:
            strict += 1
    return {"status": "pass", "mode": mode, "checked": len(subsets),
            "strict_instances": strict}


def check_galois_identities(nu: CategoryFn = None, T: cover.TCollectionSpec = None,
                 exhaustive_n: int = 8, samples: int = 200, seed: int = 0) -> dict:
    """Fixed-point identities of the nu <-> T correspondence."""
    out = {}
    if nu is not None:
        S = nu.space
        t1 = T_from_nu(nu, 1)
        t2 = T_from_nu(nu_from_T(t1), 1)
        m1, m2 = set(t1.members()), set(t2.members())
        out["identity_i"] = {
            "status": "pass" if m1 == m2 else "violated",
            "T_nu_size": len(m1), "T_nu_T_nu_size": len(m2),
        }
        if m1 != m2:
            diff = sorted(m1 ^ m2)[0]
            out["identity_i"]["certificate"] = {"U": S.subset_labels(diff)}
    if T is not None:
        S = T.space
        nu_t = nu_from_T(T)
        nu_tt = nu_from_T(T_from_nu(nu_t, 1))
        subsets, mode = _subset_pool(S, exhaustive_n, samples, seed)
        bad = None
        for a in subsets:
            if nu_t.eval(a) != nu_tt.eval(a):
                bad = {"A": S.subset_labels(a), "nu_T": nu_t.eval(a),
                       "nu_T_nu_T": nu_tt.eval(a)}
                break
        out["identity_ii"] = {"status": "violated" if bad else "pass",
                              "mode": mode}
        if bad:
            out["identity_ii"]["certificate"] = bad
    return out


def check_galois_fixed_points(nu: CategoryFn = None, T: cover.TCollectionSpec = None,
                exhaustive_n: int = 8, samples: int = 200, seed: int = 0) -> dict:
    """Fixed-point characterizations: nu == nu_{T_nu} / T == T_{nu_T}."""
    out = {}
    if nu is not None:
        S = nu.space
        nu_t = nu_from_T(T_from_nu(nu, 1))
        subsets, mode = _subset_pool(S, exhaustive_n, samples, seed)
        mismatch = None
        for a in subsets:
            if nu.eval(a) != nu_t.eval(a):
                mismatch = {"A": S.subset_labels(a), "nu": nu.eval(a),
                            "nu_T_nu": nu_t.eval(a)}
                break
        out["nu_fixed_point"] = {"holds": mismatch is None, "mode": mode}
        if mismatch:
            out["nu_fixed_point"]["witness"] = mismatch
    if T is not None:
        t2 = T_from_nu(nu_from_T(T), 1)
        m1, m2 = set(T.members()), set(t2.members())
        out["T_fixed_point"] = {"holds": m1 == m2,
                                "T_size": len(m1), "T_nu_T_size": len(m2)}
    return out


def _axiom_iii_holds(nu: CategoryFn) -> bool:
    S = nu.space
    opens = S.open_sets()
    for a in range(1 << S.n):
        va = nu.eval(a)
        if not any((u & a) == a and nu.eval(u) == va for u in opens):
            return False
    return True


def check_closure_equality(S: FinSpace, cap: int = DEFAULT_BFS_CAP) -> dict:
    """Conditional equality nu_LS = bar(nu_H), with the three proof steps.

    Step 1 (nu_LS of a set equals nu_LS of its closure) is asserted always;
    step 2 needs axiom (iii) for nu_LS on S; step 3 needs S normal; the full
    equality needs both.  Unmet hypotheses are reported as skips.
    """
    nu_ls = category_nu_LS(S, cap)
    nu_h = category_nu_H(S, cap)
    bar_h = bar(nu_h)
    normal = is_normal(S)
    ls_iii = _axiom_iii_holds(nu_ls)
    report = {"normal": normal, "nu_LS_axiom_iii": ls_iii,
              "steps": {}, "status": "pass"}

    def record(name, bad, checked, skipped=False):
        if skipped:
            report["steps"][name] = {"status": "skipped"}
        elif bad:
            report["steps"][name] = {"status": "violated", "certificate": bad}
            report["status"] = "violated"
        else:
            report["steps"][name] = {"status": "pass", "checked": checked}

    subsets = list(range(1 << S.n))

    bad = None
    for a in subsets:
        if nu_ls.eval(a) != nu_ls.eval(S.closure_of(a)):
            bad = {"A": S.subset_labels(a)}
            break
    record("step1_nu_LS_closure_invariant", bad, len(subsets))

    if ls_iii:
        bad = None
        for a in subsets:
            if nu_h.eval(a) > nu_ls.eval(a):
                bad = {"A": S.subset_labels(a), "nu_H": nu_h.eval(a),
                       "nu_LS": nu_ls.eval(a)}
                break
        record("step2_nu_H_below_nu_LS", bad, len(subsets))
    else:
        record("step2_nu_H_below_nu_LS", None, 0, skipped=True)

    if normal:
        closed = [c for c in S.closed_sets()]
        bad = None
        for a in closed:
            if nu_ls.eval(a) > nu_h.eval(a):
                bad = {"A": S.subset_labels(a), "nu_LS": nu_ls.eval(a),
                       "nu_H": nu_h.eval(a)}
                break
        record("step3_nu_LS_below_nu_H_on_closed", bad, len(closed))
    else:
        record("step3_nu_LS_below_nu_H_on_closed", None, 0, skipped=True)

    if normal and ls_iii:
        bad = None
        for a in subsets:
            if nu_ls.eval(a) != bar_h.eval(a):
                bad = {"A": S.subset_labels(a), "nu_LS": nu_ls.eval(a),
                       "bar_nu_H": bar_h.eval(a)}
                break
        record("equality_nu_LS_is_bar_nu_H", bad, len(subsets))
    else:
        record("equality_nu_LS_is_bar_nu_H", None, 0, skipped=True)
        report["status"] = "skipped" if report["status"] == "pass" else report["status"]

    return report
