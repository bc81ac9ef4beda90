"""Simplicial cohomology over F2: cup products, cuplength, nu_c, nu_CL.

Cochains in degree k are int bitsets over the k-simplices of a complex.
Cup products use Alexander-Whitney front/back faces; on order complexes the
simplex tuples are sorted by a linear extension of the poset, so induced
maps of continuous maps are order-preserving on every simplex.
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from . import cover, gf2
from .finspace import FinSpace, ContMap, SpaceError, bits_of, iter_bits


class SimplicialComplex:
    """Finite abstract simplicial complex with a fixed total vertex order.

    simplices[k] lists k-simplices as ascending tuples of vertex indices.
    """

    def __init__(self, vertices, simplices):
        self.vertices = tuple(vertices)
        self.simplices = [sorted(set(s)) for s in simplices]
        while self.simplices and not self.simplices[-1]:
            self.simplices.pop()
        self.dim = len(self.simplices) - 1
        self.index = [{s: i for i, s in enumerate(level)}
                      for level in self.simplices]
        self._check_closed()

    def _check_closed(self):
        for k in range(1, self.dim + 1):
            below = self.index[k - 1]
            for s in self.simplices[k]:
                for facet in itertools.combinations(s, k):
                    if facet not in below:
                        raise SpaceError("complex not closed under faces")

    @classmethod
    def from_maximal_faces(cls, faces):
        labels = sorted({v for f in faces for v in f})
        idx = {v: i for i, v in enumerate(labels)}
        by_dim: dict[int, set] = {}
        for f in faces:
            fi = tuple(sorted(idx[v] for v in set(f)))
            for k in range(len(fi)):
                for s in itertools.combinations(fi, k + 1):
                    by_dim.setdefault(k, set()).add(s)
        max_dim = max(by_dim) if by_dim else -1
        return cls(labels, [by_dim.get(k, set()) for k in range(max_dim + 1)])

    def n_simplices(self, k: int) -> int:
        if 0 <= k <= self.dim:
            return len(self.simplices[k])
        return 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(level) for k, level in enumerate(self.simplices))


@dataclass(frozen=True)
class CohomClass:
    """A cohomology class of a fixed complex: degree plus a cocycle bitset."""
    degree: int
    bits: int


class CohomologyData:
    """Coboundary structure and an F2 cohomology basis of one complex."""

    def __init__(self, K: SimplicialComplex):
        self.K = K
        # delta_rows[k][t] = facet bitset of the t-th (k+1)-simplex, over C^k
        self.delta_rows = []
        for k in range(K.dim):
            rows = []
            for s in K.simplices[k + 1]:
                mask = 0
                for facet in itertools.combinations(s, k + 1):
                    mask |= 1 << K.index[k][facet]
                rows.append(mask)
            self.delta_rows.append(rows)
        # coboundary reducers and cohomology bases per degree
        self.cob_reducer = []
        self.betti = []
        self.basis = []
        for k in range(K.dim + 1):
            red = gf2.Reducer()
            if k > 0:
                for sigma in range(K.n_simplices(k - 1)):
                    red.add(self.coboundary(k - 1, 1 << sigma))
            self.cob_reducer.append(red)
            cocycles = (gf2.nullspace(self.delta_rows[k], K.n_simplices(k))
                        if k < K.dim else
                        [1 << i for i in range(K.n_simplices(k))])
            probe = gf2.Reducer(red.rows.values())
            reps = [z for z in cocycles if probe.add(z)]
            self.basis.append([CohomClass(k, z) for z in reps])
            self.betti.append(len(reps))

    def coboundary(self, k: int, c: int) -> int:
        if k >= self.K.dim:
            return 0
        out = 0
        for t, row in enumerate(self.delta_rows[k]):
            if (row & c).bit_count() & 1:
                out |= 1 << t
        return out

    def is_cocycle(self, k: int, c: int) -> bool:
        return self.coboundary(k, c) == 0

    def class_is_zero(self, k: int, c: int) -> bool:
        return self.cob_reducer[k].contains(c)

    def classes_equal(self, a: CohomClass, b: CohomClass) -> bool:
        return a.degree == b.degree and self.class_is_zero(a.degree, a.bits ^ b.bits)

    def positive_classes(self):
        return [c for k in range(1, self.K.dim + 1) for c in self.basis[k]]

    def cup(self, a: CohomClass, b: CohomClass) -> CohomClass:
        """Alexander-Whitney cup product of cocycle representatives."""
        K = self.K
        p, q = a.degree, b.degree
        k = p + q
        if k > K.dim:
            return CohomClass(k, 0)
        out = 0
        for t, s in enumerate(K.simplices[k]):
            front = K.index[p].get(s[:p + 1])
            back = K.index[q].get(s[p:])
            if front is None or back is None:
                continue
            if (a.bits >> front) & 1 and (b.bits >> back) & 1:
                out |= 1 << t
        return CohomClass(k, out)


class SubcomplexView:
    """Induced subcomplex on a vertex subset, with coordinate restriction."""

    def __init__(self, K: SimplicialComplex, vertex_bits: int):
        self.K = K
        verts = list(iter_bits(vertex_bits))
        keep = vertex_bits
        simplices = []
        self.maps = []  # per degree: ambient simplex index -> sub index or None
        for k in range(K.dim + 1):
            level = []
            mapping = [None] * K.n_simplices(k)
            for i, s in enumerate(K.simplices[k]):
                if all((keep >> v) & 1 for v in s):
                    mapping[i] = len(level)
                    level.append(s)
            simplices.append(level)
            self.maps.append(mapping)
        self.sub = SimplicialComplex([K.vertices[v] for v in verts],
                                     [[tuple(verts.index(v) for v in s)
                                       for s in level] for level in simplices]) \
            if verts else None
        self.data = CohomologyData(self.sub) if self.sub else None

    def restrict_bits(self, k: int, c: int) -> int:
        out = 0
        if self.sub is None or k > self.sub.dim:
            return 0
        for i in iter_bits(c):
            j = self.maps[k][i] if k < len(self.maps) else None
            if j is not None:
                out |= 1 << j
        return out

    def restricts_to_zero_class(self, cls: CohomClass) -> bool:
        if self.sub is None:
            return True
        vec = self.restrict_bits(cls.degree, cls.bits)
        if cls.degree > self.sub.dim:
            return vec == 0
        return self.data.class_is_zero(cls.degree, vec)


def restrict(data: CohomologyData, cls: CohomClass, vertex_bits: int) -> CohomClass:
    """Restriction j* of a class to the induced subcomplex on vertex_bits."""
    view = SubcomplexView(data.K, vertex_bits)
    return CohomClass(cls.degree, view.restrict_bits(cls.degree, cls.bits))


# -- order complexes and face posets ---------------------------------------

def linear_extension(S: FinSpace) -> list[int]:
    """Point order compatible with the partial order (x < y => earlier)."""
    return sorted(range(S.n), key=lambda x: (S.down[x].bit_count(), x))


def order_complex(S: FinSpace) -> SimplicialComplex:
    """Complex of chains of S; vertex order is a linear extension."""
    if S.n == 0:
        raise SpaceError("empty space")
    key = "order_complex"
    if key in S._cache:
        return S._cache[key]
    ext = linear_extension(S)
    rank = {p: i for i, p in enumerate(ext)}
    chains = [[] for _ in range(S.n)]
    stack = [(x, (rank[x],)) for x in range(S.n)]
    while stack:
        x, chain = stack.pop()
        chains[len(chain) - 1].append(chain)
        for y in iter_bits(S.up_strict(x)):
            stack.append((y, chain + (rank[y],)))
    while chains and not chains[-1]:
        chains.pop()
    K = SimplicialComplex([S.labels[p] for p in ext], chains)
    K.point_to_vertex = tuple(rank[p] for p in range(S.n))
    S._cache[key] = K
    return K


def space_cohomology(S: FinSpace) -> CohomologyData:
    if "cohom_data" not in S._cache:
        S._cache["cohom_data"] = CohomologyData(order_complex(S))
    return S._cache["cohom_data"]


def _vertex_bits(S: FinSpace, point_bits: int) -> int:
    K = order_complex(S)
    out = 0
    for p in iter_bits(point_bits):
        out |= 1 << K.point_to_vertex[p]
    return out


def _subview(S: FinSpace, point_bits: int) -> SubcomplexView:
    cache = S._cache.setdefault("subviews", {})
    if point_bits not in cache:
        cache[point_bits] = SubcomplexView(order_complex(S),
                                           _vertex_bits(S, point_bits))
    return cache[point_bits]


def face_poset(K: SimplicialComplex) -> FinSpace:
    """Poset of simplices ordered by inclusion (faces below)."""
    from .finspace import build_space
    labels = []
    sims = []
    for k in range(K.dim + 1):
        for s in K.simplices[k]:
            labels.append("|".join(str(K.vertices[v]) for v in s))
            sims.append(frozenset(s))
    pairs = []
    for i, a in enumerate(sims):
        for j, b in enumerate(sims):
            if i != j and a < b:
                pairs.append((labels[i], labels[j]))
    return build_space(labels, pairs)


# -- cuplength and the cohomological categories -----------------------------

def _span_classes(data: CohomologyData, classes) -> list[CohomClass]:
    """Reduce classes to an independent set modulo coboundaries, per degree."""
    out = []
    reducers = {}
    for c in classes:
        if c.bits == 0 or c.degree > data.K.dim:
            continue
        red = reducers.get(c.degree)
        if red is None:
            red = gf2.Reducer(data.cob_reducer[c.degree].rows.values())
            reducers[c.degree] = red
        if red.add(c.bits):
            out.append(c)
    return out


def cuplength_of_complex(data: CohomologyData, vertex_bits: int) -> int:
    """Least N > 0 with every N-fold product of positive-degree classes of
    the ambient complex restricting to zero on the given vertex subset."""
    view = SubcomplexView(data.K, vertex_bits)
    generators = _span_classes(data, data.positive_classes())
    current = generators
    n = 1
    while True:
        if all(view.restricts_to_zero_class(c) for c in current):
            return n
        products = [data.cup(v, g) for v in current for g in generators]
        current = _span_classes(data, products)
        n += 1


def cuplength(S: FinSpace, bits: int) -> int:
    """Cuplength of a point subset inside the ambient finite space."""
    cache = S._cache.setdefault("cuplength", {})
    if bits not in cache:
        cache[bits] = cuplength_of_complex(space_cohomology(S),
                                           _vertex_bits(S, bits))
    return cache[bits]


def is_cohomologically_trivial(S: FinSpace, bits: int) -> bool:
    """Whether every positive-degree class of S restricts to zero on bits."""
    if bits == 0:
        return True
    cache = S._cache.setdefault("cohom_trivial", {})
    if bits not in cache:
        view = _subview(S, bits)
        data = space_cohomology(S)
        cache[bits] = all(view.restricts_to_zero_class(c)
                          for c in data.positive_classes())
    return cache[bits]


def trivial_open_candidates(S: FinSpace) -> list[int]:
    if "tc_candidates" not in S._cache:
        S._cache["tc_candidates"] = cover.maximal_trivial_opens(
            S, lambda bits: is_cohomologically_trivial(S, bits))
    return S._cache["tc_candidates"]


def nu_c(S: FinSpace, bits: int):
    """Covering number by cohomologically trivial open sets."""
    value, witness = cover.min_cover(bits, trivial_open_candidates(S))
    return value, witness


def nu_CL(S: FinSpace, bits: int):
    """Tilde-closure of cuplength: evaluated at the minimal open hull."""
    if bits == 0:
        return 0
    return cuplength(S, S.minimal_open_hull(bits))


def nu_CL_definitional(S: FinSpace, bits: int):
    """Oracle: the definitional minimum over all open supersets."""
    if bits == 0:
        return 0
    return min(cuplength(S, u) for u in S.open_sets() if (u & bits) == bits)


def t_c(S: FinSpace) -> "cover.TCollectionSpec":
    """The nonempty cohomologically trivial open sets of S."""
    return cover.TCollectionSpec.from_predicate(
        S, "T_c", lambda bits: bits != 0 and is_cohomologically_trivial(S, bits))


# -- theorem-shaped checkers -------------------------------------------------

def check_cup_vanishing_on_union(data: CohomologyData, u_bits: int, v_bits: int,
                                 a: CohomClass, b: CohomClass) -> dict:
    """If a dies on U and b dies on V, a cup b must die on U union V.

    vertex subsets here; returns a machine-checkable report dict.
    """
    view_u = SubcomplexView(data.K, u_bits)
    view_v = SubcomplexView(data.K, v_bits)
    if not (view_u.restricts_to_zero_class(a) and view_v.restricts_to_zero_class(b)):
        return {"status": "skipped", "reason": "precondition unmet"}
    prod = data.cup(a, b)
    ok = SubcomplexView(data.K, u_bits | v_bits).restricts_to_zero_class(prod)
    return {"status": "checked", "ok": ok}


def induced_cochain_map(f: ContMap):
    """Per-degree index maps of the simplicial map on order complexes.

    Returns maps[k][i] = index of the image simplex in K(cod), or None when
    the image chain is degenerate.
    """
    KX = order_complex(f.dom)
    KY = order_complex(f.cod)
    ext_x = linear_extension(f.dom)
    maps = []
    for k in range(KX.dim + 1):
        level = []
        for s in KX.simplices[k]:
            img = {KY.point_to_vertex[f.image[ext_x[v]]] for v in s}
            if len(img) == len(s):
                level.append(KY.index[k].get(tuple(sorted(img))))
            else:
                level.append(None)
        maps.append(level)
    return KX, KY, maps


def pullback_class(f: ContMap, cls: CohomClass) -> CohomClass:
    """f* on a class of the codomain's order complex."""
    KX, KY, maps = induced_cochain_map(f)
    k = cls.degree
    out = 0
    if k <= KX.dim:
        for i, j in enumerate(maps[k]):
            if j is not None and (cls.bits >> j) & 1:
                out |= 1 << i
    return CohomClass(k, out)


def pullback_surjective_positive(f: ContMap) -> bool:
    """Whether f* is surjective on cohomology in every positive degree."""
    dx = space_cohomology(f.dom)
    dy = space_cohomology(f.cod)
    for k in range(1, dx.K.dim + 1):
        if dx.betti[k] == 0:
            continue
        red = gf2.Reducer(dx.cob_reducer[k].rows.values())
        hits = 0
        for cls in dy.basis[k] if k <= dy.K.dim else []:
            if red.add(pullback_class(f, cls).bits):
                hits += 1
        if hits < dx.betti[k]:
            return False
    return True


def check_cuplength_under_map(f: ContMap, bits: int) -> dict:
    """With f* surjective in positive degrees, cuplength cannot grow along f."""
    if not pullback_surjective_positive(f):
        return {"status": "skipped", "reason": "pullback not surjective"}
    lhs = cuplength(f.dom, bits)
    rhs = cuplength(f.cod, f.image_of_set(bits))
    return {"status": "checked", "ok": lhs <= rhs, "lhs": lhs, "rhs": rhs}


# -- builtin complexes and JSON i/o ------------------------------------------

def builtin_complex_names():
    return ["rp2_6", "torus7"]


def builtin_complex(name: str) -> SimplicialComplex:
    from importlib.resources import files
    name = name.strip()
    if name not in builtin_complex_names():
        raise SpaceError(f"unknown builtin complex {name!r}")
    data = json.loads(files("lscat.data").joinpath(f"{name}.json").read_text())
    return complex_from_dict(data)


def complex_from_dict(data: dict) -> SimplicialComplex:
    if not isinstance(data, dict) or "maximal_faces" not in data:
        raise SpaceError("complex JSON needs a 'maximal_faces' field")
    faces = data["maximal_faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise SpaceError("field 'maximal_faces' must be a list of vertex lists")
    return SimplicialComplex.from_maximal_faces([tuple(f) for f in faces])


def load_complex(path: str) -> SimplicialComplex:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpaceError(f"malformed JSON in {path}: line {exc.lineno}, "
                             f"column {exc.colno}: {exc.msg}") from None
    return complex_from_dict(data)
