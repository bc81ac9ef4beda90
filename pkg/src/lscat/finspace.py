"""Finite T0 spaces as posets: open/up-set structure, continuous maps, homotopy.

Convention fixed once for the whole package: open sets are up-sets, closed
sets are down-sets, and the minimal open neighborhood of x is its up-set.
Point sets are plain int bitsets over the space's point indices.
"""
from __future__ import annotations

import itertools
import json
import re
from collections import deque
from dataclasses import dataclass

DEFAULT_BFS_CAP = 200_000
DEFAULT_ORACLE_CAP = 10**6
# Comparability-matrix connectivity needs O(M^2) bools for M maps.
_ORACLE_MAP_LIMIT = 20_000


class SpaceError(ValueError):
    """Invalid space construction or a point set over the wrong space."""


class UndecidedError(RuntimeError):
    """A homotopy search exceeded its cap; callers never get a wrong boolean."""


def iter_bits(bits: int):
    """Yield set bit positions of a bitset, ascending."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def bits_of(points) -> int:
    out = 0
    for p in points:
        out |= 1 << p
    return out


class FinSpace:
    """A finite T0 topological space encoded as a poset.

    up[x] is the bitset {y : x <= y} (the minimal open neighborhood U_x);
    down[x] is {y : y <= x} (the closure of {x}).  Instances are immutable
    after construction; the private _cache dict only memoizes derived data.
    """

    def __init__(self, labels, up):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        if len(set(self.labels)) != self.n:
            raise SpaceError("duplicate labels")
        self.up = tuple(up)
        down = [0] * self.n
        for x in range(self.n):
            for y in iter_bits(self.up[x]):
                down[y] |= 1 << x
        self.down = tuple(down)
        self.full = (1 << self.n) - 1
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self._cache = {}
        self._check_order()

    def _check_order(self):
        for x in range(self.n):
            if not (self.up[x] >> x) & 1:
                raise SpaceError("order not reflexive")
            for y in iter_bits(self.up[x]):
                if y != x and (self.up[y] >> x) & 1:
                    raise SpaceError("order not antisymmetric (cycle)")
                if self.up[y] & ~self.up[x]:
                    raise SpaceError("order not transitive")

    # -- basic structure ---------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        return bool((self.up[x] >> y) & 1)

    def is_open(self, bits: int) -> bool:
        out = 0
        for x in iter_bits(bits):
            out |= self.up[x]
        return (out | bits) == bits

    def is_closed(self, bits: int) -> bool:
        out = 0
        for x in iter_bits(bits):
            out |= self.down[x]
        return (out | bits) == bits

    def minimal_open_hull(self, bits: int) -> int:
        out = 0
        for x in iter_bits(bits):
            out |= self.up[x]
        return out

    def closure_of(self, bits: int) -> int:
        out = 0
        for x in iter_bits(bits):
            out |= self.down[x]
        return out

    def up_strict(self, x: int) -> int:
        return self.up[x] & ~(1 << x)

    def down_strict(self, x: int) -> int:
        return self.down[x] & ~(1 << x)

    def covers_above(self, x: int) -> list[int]:
        """Immediate successors of x."""
        out = []
        for y in iter_bits(self.up_strict(x)):
            if self.up_strict(x) & self.down_strict(y) == 0:
                out.append(y)
        return out

    def covers_below(self, x: int) -> list[int]:
        out = []
        for y in iter_bits(self.down_strict(x)):
            if self.down_strict(x) & self.up_strict(y) == 0:
                out.append(y)
        return out

    def components(self) -> list[int]:
        """Connected components of the comparability graph, as bitsets."""
        if "components" not in self._cache:
            seen = 0
            comps = []
            for x in range(self.n):
                if (seen >> x) & 1:
                    continue
                comp = 1 << x
                frontier = [x]
                while frontier:
                    y = frontier.pop()
                    nbrs = (self.up[y] | self.down[y]) & ~comp
                    comp |= nbrs
                    frontier.extend(iter_bits(nbrs))
                seen |= comp
                comps.append(comp)
            self._cache["components"] = comps
        return self._cache["components"]

    def component_of(self, x: int) -> int:
        for comp in self.components():
            if (comp >> x) & 1:
                return comp
        raise SpaceError("point out of range")

    def open_sets(self) -> tuple[int, ...]:
        """All up-sets (including the empty set), ascending by bitset value."""
        if "open_sets" not in self._cache:
            order = sorted(range(self.n), key=lambda x: (self.up[x].bit_count(), x))
            out = []

            def rec(i, cur):
                if i == len(order):
                    out.append(cur)
                    return
                x = order[i]
                rec(i + 1, cur)
                if (self.up_strict(x) & ~cur) == 0:
                    rec(i + 1, cur | (1 << x))

            rec(0, 0)
            self._cache["open_sets"] = tuple(sorted(out))
        return self._cache["open_sets"]

    def closed_sets(self) -> tuple[int, ...]:
        if "closed_sets" not in self._cache:
            self._cache["closed_sets"] = tuple(
                sorted(self.full & ~u for u in self.open_sets())
            )
        return self._cache["closed_sets"]

    def subspace(self, bits: int):
        """Induced subposet on bits plus the (continuous) embedding into self."""
        if bits == 0:
            raise SpaceError("empty subspace")
        points = list(iter_bits(bits))
        pos = {p: i for i, p in enumerate(points)}
        up = []
        for p in points:
            mask = 0
            for q in iter_bits(self.up[p] & bits):
                mask |= 1 << pos[q]
            up.append(mask)
        sub = FinSpace([self.labels[p] for p in points], up)
        emb = ContMap(sub, self, tuple(points))
        return sub, emb

    def parse_subset(self, text: str) -> int:
        """Parse 'a,b,c' / 'full' / '' into a bitset."""
        text = text.strip()
        if text == "full":
            return self.full
        if not text:
            return 0
        bits = 0
        for name in text.split(","):
            name = name.strip()
            if name not in self.index:
                raise SpaceError(f"unknown point {name!r}")
            bits |= 1 << self.index[name]
        return bits

    def subset_labels(self, bits: int) -> list[str]:
        return [self.labels[x] for x in iter_bits(bits)]

    def __repr__(self):
        return f"FinSpace({self.n} points)"


def build_space(labels, order_pairs) -> FinSpace:
    """Build a FinSpace from strict order pairs (lo, hi) meaning lo < hi.

    Takes the reflexive-transitive closure; rejects cycles and duplicates.
    """
    labels = list(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    if len(index) != len(labels):
        raise SpaceError("duplicate labels")
    n = len(labels)
    adj = [0] * n
    for lo, hi in order_pairs:
        if lo not in index or hi not in index:
            raise SpaceError(f"unknown point in pair ({lo}, {hi})")
        a, b = index[lo], index[hi]
        if a != b:
            adj[a] |= 1 << b

    up = [None] * n
    visiting = [False] * n

    def reach(x):
        if up[x] is not None:
            return up[x]
        if visiting[x]:
            raise SpaceError("cycle detected: relation is not antisymmetric")
        visiting[x] = True
        mask = 1 << x
        for y in iter_bits(adj[x]):
            mask |= reach(y)
        visiting[x] = False
        up[x] = mask
        return mask

    for x in range(n):
        reach(x)
    return FinSpace(labels, up)


@dataclass(frozen=True)
class PointSet:
    """A subset of a FinSpace's points; internal code passes raw bitsets,
    this wrapper is the convenience type at API boundaries."""

    space: FinSpace
    bits: int

    def __post_init__(self):
        if self.bits & ~self.space.full:
            raise SpaceError("bits outside the space")

    @classmethod
    def from_labels(cls, space: FinSpace, names) -> "PointSet":
        return cls(space, bits_of(space.index[n] for n in names))

    def labels(self) -> list[str]:
        return self.space.subset_labels(self.bits)

    def __iter__(self):
        return iter_bits(self.bits)

    def __contains__(self, point: int) -> bool:
        return bool((self.bits >> point) & 1)

    def __len__(self) -> int:
        return self.bits.bit_count()


# -- continuous maps -------------------------------------------------------

@dataclass(frozen=True)
class ContMap:
    """An order-preserving (= continuous, Alexandrov) map between FinSpaces."""

    dom: FinSpace
    cod: FinSpace
    image: tuple

    def __post_init__(self):
        if len(self.image) != self.dom.n:
            raise SpaceError("image length mismatch")
        for x in range(self.dom.n):
            fx = self.image[x]
            for y in iter_bits(self.dom.up_strict(x)):
                if not self.cod.leq(fx, self.image[y]):
                    raise SpaceError("map is not order-preserving")

    def __call__(self, x: int) -> int:
        return self.image[x]

    def compose(self, other: "ContMap") -> "ContMap":
        """self after other."""
        if other.cod is not self.dom:
            raise SpaceError("composition mismatch")
        return ContMap(other.dom, self.cod,
                       tuple(self.image[other.image[x]] for x in range(other.dom.n)))

    def image_of_set(self, bits: int) -> int:
        out = 0
        for x in iter_bits(bits):
            out |= 1 << self.image[x]
        return out

    def preimage_of_set(self, bits: int) -> int:
        out = 0
        for x in range(self.dom.n):
            if (bits >> self.image[x]) & 1:
                out |= 1 << x
        return out


def identity_map(S: FinSpace) -> ContMap:
    return ContMap(S, S, tuple(range(S.n)))


def constant_map(dom: FinSpace, cod: FinSpace, p: int) -> ContMap:
    return ContMap(dom, cod, (p,) * dom.n)


# -- homotopy engine -------------------------------------------------------

def _single_point_moves(dom: FinSpace, cod: FinSpace, img: tuple):
    """Deterministic point-major, value-ascending neighbor generation."""
    for x in range(dom.n):
        cur = img[x]
        candidates = (cod.up[cur] | cod.down[cur]) & ~(1 << cur)
        for v in iter_bits(candidates):
            ok = True
            for y in iter_bits(dom.up_strict(x)):
                if not cod.leq(v, img[y]):
                    ok = False
                    break
            if ok:
                for y in iter_bits(dom.down_strict(x)):
                    if not cod.leq(img[y], v):
                        ok = False
                        break
            if ok:
                yield x, v


def _same_component_assignment(f: ContMap, g: ContMap) -> bool:
    # single-point comparable moves never change the component of any value,
    # so differing assignments rule out homotopy immediately
    for x in range(f.dom.n):
        if f.cod.component_of(f.image[x]) != g.cod.component_of(g.image[x]):
            return False
    return True


def are_homotopic(f: ContMap, g: ContMap, cap: int = DEFAULT_BFS_CAP) -> bool:
    """Decide whether f ~ g by BFS over single-point comparable moves.

    Raises UndecidedError if more than cap maps are visited before the
    component of f is exhausted.
    """
    if f.dom is not g.dom or f.cod is not g.cod:
        raise SpaceError("maps must share domain and codomain")
    if f.image == g.image:
        return True
    if not _same_component_assignment(f, g):
        return False
    dom, cod = f.dom, f.cod
    start, target = f.image, g.image
    seen = {start}
    queue = deque([start])
    while queue:
        img = queue.popleft()
        for x, v in _single_point_moves(dom, cod, img):
            nxt = img[:x] + (v,) + img[x + 1:]
            if nxt in seen:
                continue
            if nxt == target:
                return True
            seen.add(nxt)
            if len(seen) > cap:
                raise UndecidedError("homotopy BFS cap exceeded")
            queue.append(nxt)
    return False


def continuous_maps(dom: FinSpace, cod: FinSpace, cap: int = DEFAULT_ORACLE_CAP):
    """All continuous maps dom -> cod as image tuples, lexicographic order."""
    if cod.n ** dom.n > cap:
        raise UndecidedError("oracle bound exceeded")
    out = []
    img = [0] * dom.n
    comparable = [
        [(y, dom.leq(x, y)) for y in range(x) if dom.leq(x, y) or dom.leq(y, x)]
        for x in range(dom.n)
    ]

    def rec(x):
        if x == dom.n:
            out.append(tuple(img))
            return
        for v in range(cod.n):
            ok = True
            for y, x_below_y in comparable[x]:
                if x_below_y:
                    if not cod.leq(v, img[y]):
                        ok = False
                        break
                elif not cod.leq(img[y], v):
                    ok = False
                    break
            if ok:
                img[x] = v
                rec(x + 1)
        img[x] = 0

    rec(0)
    return out


def _map_components(dom: FinSpace, cod: FinSpace, maps):
    """Component labels of the pointwise-comparability graph on maps."""
    import numpy as np
    from scipy.sparse import csr_matrix
    from scipy.sparse.csgraph import connected_components

    m = len(maps)
    if m > _ORACLE_MAP_LIMIT:
        raise UndecidedError("oracle comparability matrix too large")
    arr = np.asarray(maps, dtype=np.int64).reshape(m, dom.n)
    leq = np.zeros((cod.n, cod.n), dtype=bool)
    for x in range(cod.n):
        for y in iter_bits(cod.up[x]):
            leq[x, y] = True
    below = np.ones((m, m), dtype=bool)
    for x in range(dom.n):
        col = arr[:, x]
        below &= leq[col[:, None], col[None, :]]
    comparable = below | below.T
    _, labels = connected_components(csr_matrix(comparable), directed=False)
    return labels


def homotopy_oracle(f: ContMap, g: ContMap, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Exact homotopy test by full map enumeration plus graph connectivity."""
    if f.dom is not g.dom or f.cod is not g.cod:
        raise SpaceError("maps must share domain and codomain")
    maps = continuous_maps(f.dom, f.cod, cap)
    labels = _map_components(f.dom, f.cod, maps)
    pos = {img: i for i, img in enumerate(maps)}
    return labels[pos[f.image]] == labels[pos[g.image]]


def enumerate_self_maps_homotopic_to_id(S: FinSpace, cap: int = DEFAULT_BFS_CAP):
    """BFS the component of id_S; returns (list of ContMap, truncated flag)."""
    key = ("selfmaps", cap)
    if key in S._cache:
        return S._cache[key]
    start = tuple(range(S.n))
    seen = {start}
    queue = deque([start])
    truncated = False
    while queue:
        img = queue.popleft()
        for x, v in _single_point_moves(S, S, img):
            nxt = img[:x] + (v,) + img[x + 1:]
            if nxt in seen:
                continue
            if len(seen) >= cap:
                truncated = True
                queue.clear()
                break
            seen.add(nxt)
            queue.append(nxt)
    maps = [ContMap(S, S, img) for img in sorted(seen)]
    S._cache[key] = (maps, truncated)
    return maps, truncated


def _core_points(sub: FinSpace):
    """Iteratively remove beat points of sub; returns surviving local indices."""
    live = (1 << sub.n) - 1
    changed = True
    while changed and live.bit_count() > 1:
        changed = False
        for x in iter_bits(live):
            upx = sub.up_strict(x) & live
            downx = sub.down_strict(x) & live
            # beat point iff the strict up-set has a minimum or the strict
            # down-set has a maximum (within the live induced subposet)
            is_beat = any((upx & ~sub.up[y]) == 0 for y in iter_bits(upx)) or \
                any((downx & ~sub.down[y]) == 0 for y in iter_bits(downx))
            if is_beat:
                live &= ~(1 << x)
                changed = True
                break
    return list(iter_bits(live))


def is_contractible_in(S: FinSpace, bits: int,
                       cap: int = DEFAULT_BFS_CAP) -> bool:
    """Whether the inclusion of the subset into S is homotopic to a constant."""
    if bits == 0:
        raise SpaceError("empty set: contractibility of the empty set is not consulted")
    comps = {S.component_of(x) for x in iter_bits(bits)}
    if len(comps) > 1:
        return False
    comp = comps.pop()
    sub, emb = S.subspace(bits)
    core_local = _core_points(sub)
    if len(core_local) == 1:
        return True
    core_points = [emb.image[i] for i in core_local]
    core_space, _ = S.subspace(bits_of(core_points))
    inclusion = ContMap(core_space, S, tuple(core_points))
    rep = next(iter_bits(comp))  # one constant per component suffices
    return are_homotopic(inclusion, constant_map(core_space, S, rep), cap)


def find_beat_points(S: FinSpace):
    """Points with a unique immediate neighbor above or below, each with the
    self-retraction sending the point there; i o r ~ id_S by construction."""
    out = []
    for x in range(S.n):
        target = None
        above = S.covers_above(x)
        below = S.covers_below(x)
        if len(above) == 1 and (S.up_strict(x) & ~S.up[above[0]]) == 0:
            target = above[0]
        elif len(below) == 1 and (S.down_strict(x) & ~S.down[below[0]]) == 0:
            target = below[0]
        if target is not None:
            image = list(range(S.n))
            image[x] = target
            out.append((x, ContMap(S, S, tuple(image))))
    return out


def beat_point_retraction(S: FinSpace, x: int, r_self: ContMap):
    """Split a beat-point self-retraction into (X', i: X'->S, r: S->X')."""
    rest = S.full & ~(1 << x)
    sub, emb = S.subspace(rest)
    pos = {p: i for i, p in enumerate(emb.image)}
    r = ContMap(S, sub, tuple(pos[r_self.image[p]] for p in range(S.n)))
    return sub, emb, r


def is_normal(S: FinSpace, max_points: int = 12) -> bool:
    """Exhaustive separation search over pairs of disjoint closed sets."""
    if S.n > max_points:
        raise SpaceError("normality check capped at 12 points")
    closed = [c for c in S.closed_sets() if c]
    for i, c1 in enumerate(closed):
        h1 = S.minimal_open_hull(c1)
        for c2 in closed[i + 1:]:
            if c1 & c2:
                continue
            # the minimal open hulls are contained in every open superset,
            # so disjoint open neighborhoods exist iff the hulls are disjoint
            if h1 & S.minimal_open_hull(c2):
                return False
    return True


# -- builtin spaces and JSON i/o -------------------------------------------

def _chain(k):
    return build_space([f"p{i}" for i in range(k)],
                       [(f"p{i}", f"p{i+1}") for i in range(k - 1)])


def _antichain(k):
    return build_space([f"p{i}" for i in range(k)], [])


def _circle4():
    return build_space(["a", "b", "c", "d"],
                       [("c", "a"), ("c", "b"), ("d", "a"), ("d", "b")])


def _sphere(n):
    # minimal 2n+2 point model: n+1 antichain levels of pairs, each pair
    # below both points of the next level
    labels = []
    pairs = []
    for lev in range(n + 1):
        labels += [f"a{lev}", f"b{lev}"]
    for lev in range(n):
        for lo in (f"a{lev}", f"b{lev}"):
            for hi in (f"a{lev+1}", f"b{lev+1}"):
                pairs.append((lo, hi))
    return build_space(labels, pairs)


def _wedge2circles():
    # K_{2,3} incidence poset: order complex is a wedge of two circles
    labels = ["x", "y", "c", "d", "e"]
    pairs = [(lo, hi) for lo in ("c", "d", "e") for hi in ("x", "y")]
    return build_space(labels, pairs)


def _torus16():
    base = _circle4()
    labels = []
    for i in range(4):
        for j in range(4):
            labels.append(f"{base.labels[i]}{base.labels[j]}")
    pairs = []
    for i in range(4):
        for j in range(4):
            for k in range(4):
                for l in range(4):
                    if (i, j) != (k, l) and base.leq(i, k) and base.leq(j, l):
                        pairs.append((labels[4 * i + j], labels[4 * k + l]))
    return build_space(labels, pairs)


_BUILTIN_PATTERNS = {
    "chain": _chain,
    "antichain": _antichain,
    "sphere": _sphere,
}
_BUILTIN_FIXED = {
    "circle4": _circle4,
    "wedge2circles": _wedge2circles,
    "torus16": _torus16,
}


def builtin_space_names():
    return ["chain(k)", "antichain(k)", "circle4", "sphere(n)",
            "wedge2circles", "torus16"]


def builtin_space(name: str) -> FinSpace:
    name = name.strip()
    if name in _BUILTIN_FIXED:
        return _BUILTIN_FIXED[name]()
    m = re.fullmatch(r"(\w+)\((\d+)\)", name)
    if m and m.group(1) in _BUILTIN_PATTERNS:
        return _BUILTIN_PATTERNS[m.group(1)](int(m.group(2)))
    raise SpaceError(f"unknown builtin space {name!r}")


def space_from_dict(data: dict) -> FinSpace:
    if not isinstance(data, dict):
        raise SpaceError("space JSON must be an object")
    if "points" not in data or "order" not in data:
        raise SpaceError("space JSON needs 'points' and 'order' fields")
    points = data["points"]
    order = data["order"]
    if not isinstance(points, list) or not all(isinstance(p, str) for p in points):
        raise SpaceError("field 'points' must be a list of strings")
    if not isinstance(order, list) or not all(
            isinstance(p, list) and len(p) == 2 for p in order):
        raise SpaceError("field 'order' must be a list of [lo, hi] pairs")
    return build_space(points, [tuple(p) for p in order])


def load_space(path: str) -> FinSpace:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceError(f"malformed JSON in {path}: line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}") from None
    return space_from_dict(data)
