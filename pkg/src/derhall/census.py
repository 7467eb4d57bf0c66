"""Brute-force counting over Hom sets of D^b(rep_k Q).

Every count here enumerates homotopy classes (or, for the naive oracle, all
chain maps) and classifies cones by :meth:`DerivedCategory.standardize`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import ffla
from .complexes import (
    Maps,
    ProjComplex,
    add_maps,
    compose_maps,
    cone,
    cone_inclusion,
    cone_projection,
    direct_sum,
    identity_maps,
    is_acyclic,
    restrict_maps,
    shift_complex,
)
from .dcat import DerivedCategory, Triangle, shift_maps
from .objects import ZERO, DObject


def _memo(cat: DerivedCategory) -> dict:
    m = getattr(cat, "_census_memo", None)
    if m is None:
        m = cat._census_memo = {}
    return m


# -- restricted Hom sets -------------------------------------------------------


def cone_histogram(cat: DerivedCategory, X: DObject, L: DObject) -> Counter:
    """Counter {standardize(cone f): number of classes f in Hom(X, L)}."""
    memo = _memo(cat)
    key = ("hist", X, L)
    hit = memo.get(key)
    if hit is not None:
        return hit
    CX, CL = cat.std_complex(X), cat.std_complex(L)
    H = cat.hom_space(CX, CL)
    hist: Counter = Counter()
    for vec in H.all_reps():
        hist[cat.standardize(cone(CX, CL, H.to_maps(vec)))] += 1
    memo[key] = hist
    return hist


def restricted_hom_count(cat: DerivedCategory, X: DObject, L: DObject, Y: DObject) -> int:
    """|Hom(X, L)_Y|: classes f: X -> L with Cone(f) isomorphic to Y."""
    return cone_histogram(cat, X, L).get(Y, 0)


def restricted_hom_count_naive(cat: DerivedCategory, X: DObject, L: DObject, Y: DObject) -> int:
    """Same count from every chain map, divided by |null-homotopic maps|."""
    CX, CL = cat.std_complex(X), cat.std_complex(L)
    H = cat.hom_space(CX, CL)
    hits = 0
    for vec in H.all_chain_maps():
        if cat.matches(cone(CX, CL, H.to_maps(vec)), Y):
            hits += 1
    q, r = divmod(hits, cat.p**H.null_dim)
    if r:
        raise ArithmeticError("chain-map count is not a multiple of the homotopy count")
    return q


# -- endomorphisms and automorphisms -------------------------------------------


def end_order(cat: DerivedCategory, X: DObject) -> int:
    return cat.hom_order(X, X)


def _gl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


def aut_order(cat: DerivedCategory, X: DObject, method: str = "formula") -> int:
    """|Aut X|.

    ``enumerate`` counts the classes X -> X whose cone is acyclic (i.e. that
    act invertibly on homology).  ``formula`` uses that every indecomposable
    here has End = k: End X / rad End X is a product of matrix algebras
    M_m(k), one per distinct summand of multiplicity m, so
    |Aut X| = q^(dim End X - sum m^2) * prod |GL_m(q)|.
    """
    q = cat.p
    if method == "enumerate":
        C = cat.std_complex(X)
        H = cat.hom_space(C, C)
        return sum(1 for f in H.iter_maps() if is_acyclic(cone(C, C, f)))
    if method != "formula":
        raise ValueError(f"unknown method {method!r}")
    memo = _memo(cat)
    key = ("aut", X)
    if key in memo:
        return memo[key]
    mults = [m for _, _, m in X.summands]
    for ind, s, _ in X.summands:
        single = DObject.single(ind.a, ind.b, s)
        if cat.derived_hom_dim(single, single) != 1:
            return aut_order(cat, X, "enumerate")
    rad = cat.derived_hom_dim(X, X) - sum(m * m for m in mults)
    out = q**rad
    for m in mults:
        out *= _gl_order(m, q)
    memo[key] = out
    return out


def end_aut_ratio(cat: DerivedCategory, X: DObject) -> Fraction:
    return Fraction(end_order(cat, X), aut_order(cat, X))


# -- block components and the iso-part decomposition ---------------------------


def _block_complex(cat: DerivedCategory, label) -> ProjComplex:
    ind, s = label
    return cat.std_complex(DObject.single(ind.a, ind.b, s))


def embed_component(comp: Maps, src_block, tgt_block, CX: ProjComplex, CY: ProjComplex) -> Maps:
    """A chain map CX -> CY supported on one block component."""
    out = {}
    for k in CX.degrees:
        if k not in set(CY.degrees):
            continue
        m = ffla.zeros(len(CY.term(k)), len(CX.term(k)))
        rs, cs = tgt_block.span(k), src_block.span(k)
        if rs is not None and cs is not None and k in comp:
            m[rs[0] : rs[1], cs[0] : cs[1]] = comp[k]
        out[k] = m
    return out


def radical_test(cat: DerivedCategory, X: DObject, Y: DObject, h: Maps) -> bool:
    """For indecomposable X, Y: True iff h is not an isomorphism."""
    if X.weight != 1 or Y.weight != 1:
        raise ValueError("radical_test expects indecomposable source and target")
    if X != Y:
        return True
    C = cat.std_complex(X)
    return not is_acyclic(cone(C, C, h))


@dataclass
class IsoPartReport:
    """c o h o a = diag(iso part, radical part)."""

    X1: DObject
    X2: DObject
    Y1: DObject
    Y2: DObject
    conjugated: Maps
    a: Maps
    a_inv: Maps
    c: Maps
    c_inv: Maps
    pivots: list[tuple[int, int]] = field(default_factory=list)
    src_kept: list[int] = field(default_factory=list)
    tgt_kept: list[int] = field(default_factory=list)


def decompose_morphism(cat: DerivedCategory, X: DObject, Y: DObject, h: Maps) -> IsoPartReport:
    """Split h: X -> Y into an isomorphism X1 -> Y1 plus a radical map
    X2 -> Y2 by clearing rows and columns with elementary automorphisms."""
    p = cat.p
    CX, CY = cat.std_complex(X), cat.std_complex(Y)
    xb, yb = list(CX.blocks), list(CY.blocks)
    H = dict(h)
    a = a_inv = identity_maps(CX)
    c = c_inv = identity_maps(CY)
    src_active = list(range(len(xb)))
    tgt_active = list(range(len(yb)))
    pivots = []

    def comp(i, j):
        return restrict_maps(H, xb[i], yb[j])

    while True:
        found = None
        for i in src_active:
            for j in tgt_active:
                if xb[i].label != yb[j].label:
                    continue
                B = _block_complex(cat, xb[i].label)
                if is_acyclic(cone(B, B, comp(i, j))):
                    found = (i, j)
                    break
            if found:
                break
        if found is None:
            break
        i, j = found
        B = _block_complex(cat, xb[i].label)
        u = cat.left_inverse(comp(i, j), B, B)
        EY, EYi = identity_maps(CY), identity_maps(CY)
        for j2 in tgt_active:
            if j2 == j:
                continue
            off = compose_maps(comp(i, j2), u, p)  # Y_j -> Y_j2
            if not any(np.any(m) for m in off.values()):
                continue
            e = embed_component(off, yb[j], yb[j2], CY, CY)
            EY = add_maps(EY, e, p, -1)
            EYi = add_maps(EYi, e, p, 1)
        H = compose_maps(EY, H, p)
        c = compose_maps(EY, c, p)
        c_inv = compose_maps(c_inv, EYi, p)
        EX, EXi = identity_maps(CX), identity_maps(CX)
        for i2 in src_active:
            if i2 == i:
                continue
            off = compose_maps(u, comp(i2, j), p)  # X_i2 -> X_i
            if not any(np.any(m) for m in off.values()):
                continue
            e = embed_component(off, xb[i2], xb[i], CX, CX)
            EX = add_maps(EX, e, p, -1)
            EXi = add_maps(EXi, e, p, 1)
        H = compose_maps(H, EX, p)
        a = compose_maps(a, EX, p)
        a_inv = compose_maps(EXi, a_inv, p)
        pivots.append((i, j))
        src_active.remove(i)
        tgt_active.remove(j)

    X1 = DObject.from_summands(xb[i].label for i, _ in pivots)
    Y1 = DObject.from_summands(yb[j].label for _, j in pivots)
    return IsoPartReport(
        X1=X1,
        X2=X - X1,
        Y1=Y1,
        Y2=Y - Y1,
        conjugated=H,
        a=a,
        a_inv=a_inv,
        c=c,
        c_inv=c_inv,
        pivots=pivots,
        src_kept=src_active,
        tgt_kept=tgt_active,
    )


def select_blocks(f: Maps, CX: ProjComplex, CY: ProjComplex, src: list[int] | None, tgt: list[int] | None) -> Maps:
    """Submatrix of f on the chosen source/target blocks (None keeps all)."""
    out = {}
    for k, m in f.items():
        if src is None:
            cols = list(range(m.shape[1]))
        else:
            cols = [x for b in src if (sp := CX.blocks[b].span(k)) for x in range(*sp)]
        if tgt is None:
            rows = list(range(m.shape[0]))
        else:
            rows = [x for b in tgt if (sp := CY.blocks[b].span(k)) for x in range(*sp)]
        if rows and cols:
            out[k] = m[np.ix_(rows, cols)]
    return out


def split_contractible(cat: DerivedCategory, t: Triangle) -> tuple[Triangle, DObject]:
    """Split a triangle X -> L -> Y -> X[1] into a triangle with no
    isomorphism component in its second map plus 0 -> N -> N -> 0."""
    p = cat.p
    rep = decompose_morphism(cat, t.L, t.Y, t.g)
    f2 = compose_maps(rep.a_inv, t.f, p)
    h2 = compose_maps(t.h, rep.c_inv, p)
    CX, CL, CY = (cat.std_complex(o) for o in (t.X, t.L, t.Y))
    CX1 = cat.std_complex(t.X.shift(1))
    f_min = select_blocks(f2, CX, CL, None, rep.src_kept)
    g_min = select_blocks(rep.conjugated, CL, CY, rep.src_kept, rep.tgt_kept)
    h_min = select_blocks(h2, CY, CX1, rep.tgt_kept, None)
    minimal = Triangle(t.X, rep.X2, rep.Y2, f_min, g_min, h_min)
    return minimal, rep.X1


# -- composition images ---------------------------------------------------------


def image_size_left(cat: DerivedCategory, Z: DObject, L: DObject, n: Maps) -> int:
    """|{t o n : t in Hom(Z[1], L)}| inside End L, for n: L -> Z[1]."""
    Z1 = Z.shift(1)
    HT = cat.hom_classes(Z1, L)
    HE = cat.hom_classes(L, L)
    return len({HE.classify(compose_maps(t, n, cat.p)) for t in HT.iter_maps()})


def image_size_right(cat: DerivedCategory, Z: DObject, L: DObject, n: Maps) -> int:
    """|{n o s : s in Hom(Z[1], L)}| inside End Z[1], for n: L -> Z[1]."""
    Z1 = Z.shift(1)
    HS = cat.hom_classes(Z1, L)
    HE = cat.hom_classes(Z1, Z1)
    return len({HE.classify(compose_maps(n, s, cat.p)) for s in HS.iter_maps()})


# -- orbits ---------------------------------------------------------------------


def automorphisms(cat: DerivedCategory, X: DObject) -> list[Maps]:
    C = cat.std_complex(X)
    H = cat.hom_space(C, C)
    return [f for f in H.iter_maps() if is_acyclic(cone(C, C, f))]


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def classes(self) -> dict:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def restricted_orbits(cat: DerivedCategory, A: DObject, B: DObject, cone_iso: DObject, act: str):
    """Orbits of Hom(A, B)_{cone_iso} under Aut B (act="target", c o g) or
    Aut A (act="source", g o a).  Returns {representative index: [indices]}
    with indices into the lexicographic class enumeration, and the space."""
    CA, CB = cat.std_complex(A), cat.std_complex(B)
    H = cat.hom_space(CA, CB)
    members = {}
    for vec in H.all_reps():
        g = H.to_maps(vec)
        if cat.matches(cone(CA, CB, g), cone_iso):
            members[H.class_index(H.classify(vec))] = g
    uf = _UnionFind(sorted(members))
    group = automorphisms(cat, B if act == "target" else A)
    for idx, g in members.items():
        for c in group:
            moved = compose_maps(c, g, cat.p) if act == "target" else compose_maps(g, c, cat.p)
            uf.union(idx, H.class_index(H.classify(moved)))
    return uf.classes(), members, H


@dataclass
class OrbitReport:
    count: int
    entries: list[tuple[DObject, Fraction]]

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.entries), Fraction(0))


def v_orbit_report(cat: DerivedCategory, X: DObject, Y: DObject, L: DObject) -> OrbitReport:
    """Triangle orbits X -> L -> Y -> X[1], realized as Aut Y-orbits of
    g in Hom(L, Y)_{X[1]}.  Each orbit records the iso part X_1 of its third
    map and the weight |End X_1| / |Aut X_1|."""
    X1obj = X.shift(1)
    orbits, members, _ = restricted_orbits(cat, L, Y, X1obj, act="target")
    CL, CY = cat.std_complex(L), cat.std_complex(Y)
    entries = []
    for rep_idx in sorted(orbits):
        g = members[rep_idx]
        E = cone(CL, CY, g)
        Xs, _, psi = cat.standardize_equiv(E)
        if Xs != X1obj:
            raise ArithmeticError(f"cone standardizes to {Xs}, expected {X1obj}")
        h = compose_maps(psi, cone_inclusion(CL, CY), cat.p)  # Y -> X[1]
        rep = decompose_morphism(cat, Y, X1obj, h)
        X1 = rep.Y1.shift(-1)
        entries.append((X1, end_aut_ratio(cat, X1)))
    return OrbitReport(len(orbits), entries)


# -- refined Hom sets and the octahedral check ----------------------------------


def pair_complex(cat: DerivedCategory, M: DObject, X: DObject) -> ProjComplex:
    """std(M) (+) std(X) with top-level blocks labelled "M" and "X"."""
    return direct_sum([cat.std_complex(M), cat.std_complex(X)], labels=["M", "X"])


def _top_block(C: ProjComplex, label):
    return next(b for b in C.blocks if b.label == label)


def join_maps(D: ProjComplex, CL: ProjComplex, m: Maps, f: Maps) -> Maps:
    """(m, f): std M (+) std X -> L."""
    bm, bx = _top_block(D, "M"), _top_block(D, "X")
    out = {}
    for k in D.degrees:
        if k not in set(CL.degrees):
            continue
        mat = ffla.zeros(len(CL.term(k)), len(D.term(k)))
        for blk, part in ((bm, m), (bx, f)):
            sp = blk.span(k)
            if sp is not None and k in part:
                mat[:, sp[0] : sp[1]] = part[k]
        out[k] = mat
    return out


@dataclass
class _PairRecords:
    """Classes of a pair Hom space grouped by their two partial cones."""

    src: ProjComplex
    tgt: ProjComplex
    groups: dict
    full: dict = field(default_factory=dict)


def _target_records(cat: DerivedCategory, M: DObject, X: DObject, L: DObject):
    """Classes (m, f) in Hom(M (+) X, L) grouped by (Cone f, Cone m)."""
    memo = _memo(cat)
    key = ("tgt", M, X, L)
    if key in memo:
        return memo[key]
    D = pair_complex(cat, M, X)
    CL = cat.std_complex(L)
    CM, CX = cat.std_complex(M), cat.std_complex(X)
    bm, bx = _top_block(D, "M"), _top_block(D, "X")
    H = cat.hom_space(D, CL)
    groups: dict = {}
    for vec in H.all_reps():
        phi = H.to_maps(vec)
        m = restrict_maps(phi, bm, None)
        f = restrict_maps(phi, bx, None)
        groups.setdefault((cat.cone_class(CX, CL, f), cat.cone_class(CM, CL, m)), []).append(phi)
    out = memo[key] = _PairRecords(D, CL, groups)
    return out


def _source_records(cat: DerivedCategory, M: DObject, X: DObject, Lp: DObject):
    """Classes (f', -m') in Hom(L', M (+) X) grouped by (Cone f', Cone m')."""
    memo = _memo(cat)
    key = ("src", M, X, Lp)
    if key in memo:
        return memo[key]
    D = pair_complex(cat, M, X)
    CP = cat.std_complex(Lp)
    CM, CX = cat.std_complex(M), cat.std_complex(X)
    bm, bx = _top_block(D, "M"), _top_block(D, "X")
    H = cat.hom_space(CP, D)
    groups: dict = {}
    for vec in H.all_reps():
        psi = H.to_maps(vec)
        fp = restrict_maps(psi, None, bm)
        mp = {k: (-v) % cat.p for k, v in restrict_maps(psi, None, bx).items()}
        groups.setdefault((cat.cone_class(CP, CM, fp), cat.cone_class(CP, CX, mp)), []).append(psi)
    out = memo[key] = _PairRecords(CP, D, groups)
    return out


def _full_cones(cat: DerivedCategory, records: _PairRecords, cond) -> Counter:
    """Cone of the whole pair map for every class meeting the two partial
    cone conditions ``cond``; computed lazily, once per condition."""
    hit = records.full.get(cond)
    if hit is None:
        maps = records.groups.get(cond, ())
        hit = records.full[cond] = Counter(cat.standardize(cone(records.src, records.tgt, g)) for g in maps)
    return hit


def refined_hom_count(
    cat: DerivedCategory,
    M: DObject,
    X: DObject,
    L: DObject,
    Lp: DObject,
    Y: DObject,
    Z: DObject,
    side: str = "target",
) -> int:
    """|Hom(M (+) X, L)^{Y, Z[1]}_{L'[1]}| (side="target") or
    |Hom(L', M (+) X)^{Y, Z[1]}_{L}| (side="source")."""
    if side == "target":
        return refined_target_distribution(cat, M, X, L, Y, Z).get(Lp, 0)
    if side == "source":
        return refined_source_distribution(cat, M, X, Lp, Y, Z).get(L, 0)
    raise ValueError(f"side must be 'target' or 'source', got {side!r}")


def refined_target_distribution(cat, M, X, L, Y, Z) -> Counter:
    """{L': refined target count} over all L' that occur."""
    full = _full_cones(cat, _target_records(cat, M, X, L), (Y, Z.shift(1)))
    return Counter({c.shift(-1): n for c, n in full.items()})


def refined_source_distribution(cat, M, X, Lp, Y, Z) -> Counter:
    """{L: refined source count} over all L that occur."""
    return Counter(_full_cones(cat, _source_records(cat, M, X, Lp), (Y, Z.shift(1))))


def refined_conditions(cat, M, X, L, side: str = "target") -> list[tuple[DObject, DObject]]:
    """The (Y, Z) pairs that occur for some class, sorted."""
    rec = _target_records(cat, M, X, L) if side == "target" else _source_records(cat, M, X, L)
    return sorted((y, z1.shift(-1)) for y, z1 in rec.groups)


@dataclass
class OctahedralResult:
    in_L: bool
    in_Lprime: bool
    Lprime: DObject


def octahedral_membership_check(
    cat: DerivedCategory,
    M: DObject,
    X: DObject,
    L: DObject,
    m: Maps,
    f: Maps,
    Y: DObject,
    Z: DObject,
) -> OctahedralResult:
    """Test both membership conditions for the triangle
    L' -(f', -m')-> M (+) X -(m, f)-> L -> L'[1] built on the cone of (m, f)."""
    p = cat.p
    CM, CX, CL = cat.std_complex(M), cat.std_complex(X), cat.std_complex(L)
    Z1 = Z.shift(1)
    first = cat.matches(cone(CM, CL, m), Z1) and cat.matches(cone(CX, CL, f), Y)
    D = pair_complex(cat, M, X)
    phi = join_maps(D, CL, m, f)
    E = cone(D, CL, phi)
    P = shift_complex(E, -1)
    proj = shift_maps(cone_projection(D, CL), -1)  # P -> D
    fp = restrict_maps(proj, None, _top_block(D, "M"))
    mp = {k: (-v) % p for k, v in restrict_maps(proj, None, _top_block(D, "X")).items()}
    second = cat.matches(cone(P, CM, fp), Y) and cat.matches(cone(P, CX, mp), Z1)
    return OctahedralResult(first, second, cat.standardize(P))


def hom_pairs(cat: DerivedCategory, M: DObject, X: DObject, L: DObject):
    """Every class pair (m, f) in Hom(M, L) x Hom(X, L)."""
    HM = cat.hom_classes(M, L)
    HX = cat.hom_classes(X, L)
    for vm in HM.all_reps():
        m = HM.to_maps(vm)
        for vx in HX.all_reps():
            yield m, HX.to_maps(vx)


__all__ = [
    "IsoPartReport",
    "OctahedralResult",
    "OrbitReport",
    "aut_order",
    "automorphisms",
    "cone_histogram",
    "decompose_morphism",
    "end_aut_ratio",
    "end_order",
    "hom_pairs",
    "image_size_left",
    "image_size_right",
    "octahedral_membership_check",
    "radical_test",
    "refined_conditions",
    "refined_hom_count",
    "refined_source_distribution",
    "refined_target_distribution",
    "restricted_hom_count",
    "restricted_hom_count_naive",
    "restricted_orbits",
    "split_contractible",
    "v_orbit_report",
]
