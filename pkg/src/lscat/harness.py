"""Random instance generation and the cross-module relation suites.

Every suite distinguishes violations (release-blocking for statements the
underlying theory proves) from skips (hypotheses unmet on that instance),
and reports counts plus machine-checkable certificates.  All generation is
seeded; a fixed config reproduces identical instance streams and reports.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, asdict

from . import cohom, cover, framework
from .finspace import (FinSpace, ContMap, UndecidedError, build_space,
                       builtin_space, beat_point_retraction, continuous_maps,
                       enumerate_self_maps_homotopic_to_id, find_beat_points,
                       are_homotopic, homotopy_oracle, identity_map,
                       is_normal, iter_bits)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 42
    size_min: int = 3
    size_max: int = 6
    density: float = 0.3
    count: int = 40
    cap_maps: int = 200_000
    cap_oracle: int = 1_000_000
    oracle_trials: int = 60
    cup_union_trials: int = 120


def _signature(S: FinSpace):
    return (S.n, tuple(sorted((S.up[x].bit_count(), S.down[x].bit_count())
                              for x in range(S.n))))


def _isomorphic(A: FinSpace, B: FinSpace) -> bool:
    if _signature(A) != _signature(B):
        return False
    sig_a = [(A.up[x].bit_count(), A.down[x].bit_count()) for x in range(A.n)]
    sig_b = [(B.up[x].bit_count(), B.down[x].bit_count()) for x in range(B.n)]
    used = [False] * B.n

    def place(x, perm):
        if x == A.n:
            return True
        for y in range(B.n):
            if used[y] or sig_a[x] != sig_b[y]:
                continue
            ok = True
            for z in range(x):
                if A.leq(x, z) != B.leq(y, perm[z]) or \
                        A.leq(z, x) != B.leq(perm[z], y):
                    ok = False
                    break
            if ok:
                used[y] = True
                perm.append(y)
                if place(x + 1, perm):
                    return True
                perm.pop()
                used[y] = False
        return False

    return place(0, [])


def _random_poset(rng: random.Random, n: int, density: float) -> FinSpace:
    labels = [f"p{i}" for i in range(n)]
    pairs = [(labels[i], labels[j])
             for i in range(n) for j in range(i + 1, n)
             if rng.random() < density]
    return build_space(labels, pairs)


def _targeted_family(size_min: int, size_max: int):
    """Chains, antichains, cones and circle-like spaces so that the suites
    with restrictive hypotheses always see non-vacuous instances."""
    out = []
    for k in range(max(2, size_min), size_max + 1):
        out.append(builtin_space(f"chain({k})"))
        out.append(builtin_space(f"antichain({k})"))
        # cone: an antichain with an added minimum (beat-point rich)
        labels = [f"p{i}" for i in range(k)] + ["bot"]
        out.append(build_space(labels, [("bot", f"p{i}") for i in range(k)]))
    if size_min <= 4 <= size_max:
        out.append(builtin_space("circle4"))
    if size_min <= 5 <= size_max:
        out.append(builtin_space("wedge2circles"))
    if size_min <= 6 <= size_max:
        out.append(builtin_space("sphere(2)"))
    return [S for S in out if size_min <= S.n <= size_max]


def gen_posets(cfg: GenConfig) -> list:
    """Deterministic stream of pairwise non-isomorphic FinSpaces."""
    rng = random.Random(cfg.seed)
    out = []
    seen: dict = {}

    def keep(S):
        sig = _signature(S)
        bucket = seen.setdefault(sig, [])
        if S.n <= 8 and any(_isomorphic(S, T) for T in bucket):
            return False
        bucket.append(S)
        out.append(S)
        return True

    for S in _targeted_family(cfg.size_min, cfg.size_max):
        if len(out) >= cfg.count:
            break
        keep(S)
    attempts = 0
    while len(out) < cfg.count and attempts < cfg.count * 60:
        attempts += 1
        n = rng.randint(cfg.size_min, cfg.size_max)
        keep(_random_poset(rng, n, cfg.density))
    return out


def _subsets_of(S: FinSpace, rng: random.Random, exhaustive_n: int = 6,
                samples: int = 60):
    if S.n <= exhaustive_n or (1 << S.n) <= samples:
        return list(range(1 << S.n))
    pool = {0, S.full}
    while len(pool) < samples:
        pool.add(rng.getrandbits(S.n))
    return sorted(pool)


# -- suites ------------------------------------------------------------------

def run_oracle_suite(cfg: GenConfig) -> dict:
    """are_homotopic must agree with the enumeration oracle everywhere."""
    rng = random.Random(cfg.seed + 1)
    spaces = gen_posets(GenConfig(seed=cfg.seed + 1, size_min=2,
                                  size_max=min(5, cfg.size_max),
                                  density=cfg.density,
                                  count=max(8, cfg.count // 3)))
    checked = 0
    undecided = 0
    disagreements = []
    trials = 0
    while checked < cfg.oracle_trials and trials < cfg.oracle_trials * 20:
        trials += 1
        dom = spaces[rng.randrange(len(spaces))]
        cod = spaces[rng.randrange(len(spaces))]
        if cod.n ** dom.n > cfg.cap_oracle:
            continue
        maps = continuous_maps(dom, cod, cfg.cap_oracle)
        f = ContMap(dom, cod, maps[rng.randrange(len(maps))])
        g = ContMap(dom, cod, maps[rng.randrange(len(maps))])
        try:
            fast = are_homotopic(f, g, cfg.cap_maps)
        except UndecidedError:
            undecided += 1
            continue
        slow = homotopy_oracle(f, g, cfg.cap_oracle)
        checked += 1
        if fast != slow:
            disagreements.append({"dom": dom.n, "cod": cod.n,
                                  "f": list(f.image), "g": list(g.image),
                                  "fast": fast, "oracle": slow})
    return {"status": "violated" if disagreements else "pass",
            "checked": checked, "undecided": undecided,
            "disagreements": disagreements}


def run_chain_suite(spaces, seed: int = 0) -> dict:
    """nu_CL <= nu_c <= nu_H on every (or sampled) subset of every space."""
    rng = random.Random(seed)
    checked = 0
    strict = 0
    violations = []
    for idx, S in enumerate(spaces):
        nu_h = framework.category_nu_H(S)
        nu_c = framework.category_nu_c(S)
        nu_cl = framework.category_nu_CL(S)
        for a in _subsets_of(S, rng):
            v_cl, v_c, v_h = nu_cl.eval(a), nu_c.eval(a), nu_h.eval(a)
            if not (v_cl <= v_c <= v_h):
                violations.append({"space": idx, "A": S.subset_labels(a),
                                   "nu_CL": v_cl, "nu_c": v_c, "nu_H": v_h})
            else:
                checked += 1
                if v_cl < v_h:
                    strict += 1
    return {"status": "violated" if violations else "pass",
            "checked": checked, "strict_instances": strict,
            "violations": violations[:5]}


def run_domination_suite(spaces, seed: int = 0) -> dict:
    """Beat-point dominations: nu_H(preimage) <= nu_H(A), and nu_H is a
    homotopy-type invariant across the retraction."""
    rng = random.Random(seed)
    checked = 0
    skipped = 0
    violations = []
    for idx, S in enumerate(spaces):
        beats = find_beat_points(S)
        if not beats or S.n < 2:
            skipped += 1
            continue
        for x, r_self in beats:
            sub, emb, r = beat_point_retraction(S, x, r_self)
            # sanity of the domination pair: r o i = id, i o r ~ id
            assert r.compose(emb).image == tuple(range(sub.n))
            assert are_homotopic(emb.compose(r), identity_map(S))
            for a in _subsets_of(sub, rng):
                lhs = cover.nu_H(S, r.preimage_of_set(a))[0]
                rhs = cover.nu_H(sub, a)[0]
                if lhs > rhs:
                    violations.append({"space": idx, "beat_point": S.labels[x],
                                       "A": sub.subset_labels(a),
                                       "nu_H_preimage": lhs, "nu_H_A": rhs})
                else:
                    checked += 1
            full_s = cover.nu_H(S, S.full)[0]
            full_sub = cover.nu_H(sub, sub.full)[0]
            if full_s != full_sub:
                violations.append({"space": idx, "beat_point": S.labels[x],
                                   "nu_H_space": full_s,
                                   "nu_H_retract": full_sub,
                                   "kind": "homotopy invariance"})
            else:
                checked += 1
    return {"status": "violated" if violations else "pass",
            "checked": checked, "skipped_spaces": skipped,
            "violations": violations[:5]}


def run_tcollection_suite(spaces, cap: int = 200_000) -> dict:
    """Pullback-generated families are T-collections; so are pairwise unions
    and intersections of T-collections."""
    checked = 0
    skipped = 0
    violations = []
    for idx, S in enumerate(spaces):
        maps, truncated = enumerate_self_maps_homotopic_to_id(S, cap)
        if truncated:
            skipped += 1
            continue
        seeds = [S.full] + [S.up[x] for x in range(S.n)]
        collections = []
        for u in seeds:
            members = sorted({f.preimage_of_set(u) for f in maps})
            T = cover.TCollectionSpec.from_family(S, f"pullbacks", members)
            rep = cover.verify_t_collection(S, T, cap)
            if rep["status"].startswith("verified"):
                checked += 1
                collections.append(T)
            else:
                violations.append({"space": idx, "seed": S.subset_labels(u),
                                   "report": rep})
        for t1, t2 in itertools.combinations(collections[:4], 2):
            for name, members in (
                    ("union", set(t1.members()) | set(t2.members())),
                    ("intersection", set(t1.members()) & set(t2.members()))):
                T = cover.TCollectionSpec.from_family(S, name, members)
                rep = cover.verify_t_collection(S, T, cap)
                if rep["status"].startswith("verified"):
                    checked += 1
                else:
                    violations.append({"space": idx, "combiner": name,
                                       "report": rep})
    return {"status": "violated" if violations else "pass",
            "checked": checked, "skipped_spaces": skipped,
            "violations": violations[:5]}


def run_cup_union_suite(spaces, cfg: GenConfig) -> dict:
    """Random cochain-level trials of the cup-vanishing-on-unions law."""
    rng = random.Random(cfg.seed + 5)
    checked = 0
    skipped = 0
    violations = []
    trials = 0
    spaces = [S for S in spaces if S.n <= 10]
    while checked < cfg.cup_union_trials and trials < cfg.cup_union_trials * 30:
        trials += 1
        S = spaces[rng.randrange(len(spaces))]
        data = cohom.space_cohomology(S)
        opens = [u for u in S.open_sets() if u]
        u = opens[rng.randrange(len(opens))]
        v = opens[rng.randrange(len(opens))]
        classes = data.positive_classes()
        if classes and rng.random() < 0.85:
            a = classes[rng.randrange(len(classes))]
            b = classes[rng.randrange(len(classes))]
            # random coboundary perturbation exercises representative choice
            if a.degree >= 1 and data.K.n_simplices(a.degree - 1):
                pert = rng.getrandbits(data.K.n_simplices(a.degree - 1))
                a = cohom.CohomClass(a.degree,
                                     a.bits ^ data.coboundary(a.degree - 1, pert))
        else:
            deg = 1
            a = cohom.CohomClass(deg, 0)
            b = cohom.CohomClass(deg, 0)
        if classes and rng.random() < 0.85:
            b = classes[rng.randrange(len(classes))]
        res = cohom.check_cup_vanishing_on_union(
            data, cohom._vertex_bits(S, u), cohom._vertex_bits(S, v), a, b)
        if res["status"] == "skipped":
            skipped += 1
            continue
        checked += 1
        if not res["ok"]:
            violations.append({"space_points": S.n,
                               "U": S.subset_labels(u), "V": S.subset_labels(v),
                               "deg_a": a.degree, "deg_b": b.degree})
    return {"status": "violated" if violations else "pass",
            "checked": checked, "skipped": skipped,
            "violations": violations[:5]}


def run_cuplength_map_suite(spaces, seed: int = 0) -> dict:
    """Cuplength monotonicity along maps with surjective pullback."""
    rng = random.Random(seed)
    checked = 0
    skipped = 0
    violations = []
    for idx, S in enumerate(spaces):
        cases = [(identity_map(S), S)]
        for x, r_self in find_beat_points(S)[:2]:
            sub, emb, r = beat_point_retraction(S, x, r_self)
            cases.append((r, S))
            cases.append((emb, sub))
        # constant maps: skipped whenever the codomain has positive cohomology
        cases.append((ContMap(S, S, (0,) * S.n), S))
        for f, dom in cases:
            for a in _subsets_of(f.dom, rng, samples=30):
                if a == 0:
                    continue
                res = cohom.check_cuplength_under_map(f, a)
                if res["status"] == "skipped":
                    skipped += 1
                    break
                if res["ok"]:
                    checked += 1
                else:
                    violations.append({"space": idx, "map": list(f.image),
                                       "A": f.dom.subset_labels(a), **res})
    return {"status": "violated" if violations else "pass",
            "checked": checked, "skipped": skipped,
            "violations": violations[:5]}


def run_closure_equality_suite(spaces) -> dict:
    checked = 0
    skipped = 0
    violations = []
    for idx, S in enumerate(spaces):
        if S.n > 8:
            continue
        rep = framework.check_closure_equality(S)
        if rep["status"] == "violated":
            violations.append({"space": idx, "report": rep})
        elif rep["status"] == "skipped":
            skipped += 1
            # the unconditional steps still count as exercised
            if rep["steps"]["step1_nu_LS_closure_invariant"]["status"] == "pass":
                checked += 1
        else:
            checked += 1
    return {"status": "violated" if violations else "pass",
            "checked": checked, "skipped": skipped,
            "violations": violations[:5]}


def run_t_nucl_suite(spaces) -> dict:
    """Opens with nu_CL <= 1 are exactly the trivial opens plus the empty
    set, and nu_c coincides with the covering category of that family."""
    checked = 0
    violations = []
    for idx, S in enumerate(spaces):
        if S.n > 8:
            continue
        nu_cl = framework.category_nu_CL(S)
        t_nucl = {u for u in S.open_sets() if nu_cl.eval(u) <= 1}
        t_c = {u for u in S.open_sets()
               if u and cohom.is_cohomologically_trivial(S, u)}
        if t_nucl != t_c | {0}:
            violations.append({"space": idx, "kind": "T_nuCL != T_c + empty"})
            continue
        checked += 1
        T = cover.TCollectionSpec.from_family(S, "T_nuCL", sorted(t_nucl))
        nu_t = framework.nu_from_T(T)
        rng = random.Random(idx)
        for a in _subsets_of(S, rng):
            if cohom.nu_c(S, a)[0] != nu_t.eval(a):
                violations.append({"space": idx, "A": S.subset_labels(a),
                                   "kind": "nu_c != nu_T_nuCL"})
                break
        else:
            checked += 1
    return {"status": "violated" if violations else "pass",
            "checked": checked, "violations": violations[:5]}


def run_axiom_suite(spaces, seed: int = 0, cap: int = 200_000) -> dict:
    """Axiom reports for the four concrete categories on every space."""
    expected = {
        "nu_H": ("i", "ii", "iii", "iv", "v"),
        "nu_LS": ("i", "ii", "iv", "v"),
        "nu_c": ("i", "ii", "iii", "iv"),
        "nu_CL": ("i", "ii", "iii", "iv"),
    }
    counts = {name: 0 for name in expected}
    iii_failures_nu_LS = 0
    violations = []
    for idx, S in enumerate(spaces):
        for name, axioms in expected.items():
            nu = framework.STANDARD_CATEGORIES[name](S, cap)
            rep = framework.check_axioms(nu, seed=seed + idx, axioms=axioms,
                                         map_cap=cap)
            for ax in axioms:
                if rep[ax]["status"] != "pass":
                    violations.append({"space": idx, "nu": name, "axiom": ax,
                                       "certificate": rep[ax].get("certificate")})
                else:
                    counts[name] += 1
        # nu_LS axiom (iii) is genuinely space-dependent: just record it
        nu_ls = framework.category_nu_LS(S, cap)
        if S.n <= 7 and not framework._axiom_iii_holds(nu_ls):
            iii_failures_nu_LS += 1
    return {"status": "violated" if violations else "pass",
            "checked": counts, "nu_LS_axiom_iii_failures": iii_failures_nu_LS,
            "violations": violations[:5]}


def run_relation_suite(spaces, seed: int = 0) -> dict:
    """Lemma on nu <= n*nu_{T_{nu,n}} plus both fixed-point identities."""
    checked = {"t_bound_n1": 0, "t_bound_n2": 0, "galois_identities": 0, "galois_fixed_points": 0}
    violations = []
    for idx, S in enumerate(spaces):
        if S.n > 7:
            continue
        for name in ("nu_H", "nu_CL"):
            nu = framework.STANDARD_CATEGORIES[name](S)
            for n in (1, 2):
                rep = framework.check_t_cover_bound(nu, n, seed=seed)
                key = f"t_bound_n{n}"
                if rep["status"] == "pass":
                    checked[key] += 1
                else:
                    violations.append({"space": idx, "nu": name, "n": n,
                                       "report": rep})
        nu_h = framework.category_nu_H(S)
        all_opens = cover.TCollectionSpec.from_family(
            S, "all_opens", S.open_sets())
        rep_gal = framework.check_galois_identities(nu=nu_h, T=all_opens, seed=seed)
        if all(v["status"] == "pass" for v in rep_gal.values()):
            checked["galois_identities"] += 1
        else:
            violations.append({"space": idx, "report": rep_gal})
        rep_fix = framework.check_galois_fixed_points(nu=framework.nu_from_T(all_opens),
                                      T=all_opens, seed=seed)
        if rep_fix["nu_fixed_point"]["holds"] and rep_fix["T_fixed_point"]["holds"]:
            checked["galois_fixed_points"] += 1
        else:
            violations.append({"space": idx, "report": rep_fix})
    return {"status": "violated" if violations else "pass",
            "checked": checked, "violations": violations[:5]}


def run_full_report(cfg: GenConfig) -> dict:
    """Every suite, with pass/fail/skip counts; deterministic for fixed cfg."""
    spaces = gen_posets(cfg)
    suites = {
        "oracle": run_oracle_suite(cfg),
        "axioms": run_axiom_suite(spaces, seed=cfg.seed, cap=cfg.cap_maps),
        "chain": run_chain_suite(spaces, seed=cfg.seed),
        "dominations": run_domination_suite(spaces, seed=cfg.seed),
        "tcollections": run_tcollection_suite(spaces, cap=cfg.cap_maps),
        "relations": run_relation_suite(spaces, seed=cfg.seed),
        "closure_equality": run_closure_equality_suite(spaces),
        "cup_union": run_cup_union_suite(spaces, cfg),
        "cuplength_maps": run_cuplength_map_suite(spaces, seed=cfg.seed),
        "t_nucl_is_t_c": run_t_nucl_suite(spaces),
    }
    violations = sum(1 for s in suites.values() if s["status"] == "violated")
    return {
        "manifest": asdict(cfg),
        "spaces_generated": len(spaces),
        "suites": suites,
        "violation_suites": violations,
        "status": "violated" if violations else "pass",
    }
