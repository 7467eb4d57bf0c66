"""Type-A quivers and their representations over F_p.

Vertices are 1-based.  A quiver is of type A_n when its underlying graph is
the path 1 - 2 - ... - n (each consecutive pair joined by exactly one arrow,
in either direction).  Indecomposables are the interval modules I[a, b].
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple

import numpy as np

from . import ffla


class QuiverError(ValueError):
    """Base class for invalid quiver input."""


class NotTypeA(QuiverError):
    pass


class Cyclic(QuiverError):
    pass


class MultiEdge(QuiverError):
    pass


class InconsistentDecomposition(ArithmeticError):
    pass


class IndecId(NamedTuple):
    """Interval [a, b] identifying the indecomposable I[a, b]."""

    a: int
    b: int

    def __str__(self) -> str:
        return f"I[{self.a},{self.b}]"


@dataclass(frozen=True)
class Quiver:
    n: int
    arrows: tuple[tuple[int, int], ...]

    @cached_property
    def reach(self) -> tuple[frozenset[int], ...]:
        """``reach[v]``: vertices reachable from v along arrows (v included)."""
        out: dict[int, list[int]] = {v: [] for v in range(1, self.n + 1)}
        for s, t in self.arrows:
            out[s].append(t)
        res = [frozenset()]
        for v in range(1, self.n + 1):
            seen, stack = {v}, [v]
            while stack:
                for w in out[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            res.append(frozenset(seen))
        return tuple(res)

    def projective(self, v: int) -> IndecId:
        r = self.reach[v]
        return IndecId(min(r), max(r))

    def path_arrows(self, u: int, v: int) -> list[int]:
        """Arrow indices along the directed path u -> v (v reachable from u)."""
        if u == v:
            return []
        step = 1 if v > u else -1
        idx = []
        for x in range(u, v, step):
            idx.append(self.arrows.index((x, x + step)))
        return idx

    def to_json(self) -> dict:
        return {"vertices": self.n, "arrows": [list(a) for a in self.arrows]}


def validate_quiver(n: int, arrows: Iterable[Iterable[int]]) -> Quiver:
    """Build a Quiver, checking that it is of type A_n (any orientation)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise NotTypeA(f"vertex count must be a positive integer, got {n!r}")
    arr: list[tuple[int, int]] = []
    for a in arrows:
        a = tuple(a)
        if len(a) != 2 or not all(isinstance(x, int) and not isinstance(x, bool) for x in a):
            raise NotTypeA(f"arrow must be a pair of vertices, got {a!r}")
        s, t = a
        if not (1 <= s <= n and 1 <= t <= n):
            raise NotTypeA(f"arrow {a} has a vertex outside 1..{n}")
        arr.append((s, t))
    for s, t in arr:
        if s == t:
            raise Cyclic(f"loop at vertex {s}")
    pairs = [frozenset(a) for a in arr]
    if len(set(pairs)) != len(pairs):
        raise MultiEdge("two arrows join the same pair of vertices")
    _check_acyclic(n, arr)
    if len(arr) != n - 1 or any(abs(s - t) != 1 for s, t in arr):
        raise NotTypeA("underlying graph is not the path 1 - 2 - ... - n")
    return Quiver(n, tuple(sorted(arr, key=lambda a: (min(a), max(a)))))


def _check_acyclic(n: int, arrows: list[tuple[int, int]]) -> None:
    indeg = {v: 0 for v in range(1, n + 1)}
    for _, t in arrows:
        indeg[t] += 1
    ready = [v for v in indeg if indeg[v] == 0]
    done = 0
    while ready:
        v = ready.pop()
        done += 1
        for s, t in arrows:
            if s == v:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    if done != n:
        raise Cyclic("quiver has an oriented cycle")


def load_quiver(path: str | Path) -> Quiver:
    """Read the JSON quiver file ``{"vertices": n, "arrows": [[s, t], ...]}``."""
    try:
        raw = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise NotTypeA(f"quiver file is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict) or set(raw) != {"vertices", "arrows"}:
        raise NotTypeA('quiver file must be an object with exactly "vertices" and "arrows"')
    if not isinstance(raw["arrows"], list):
        raise NotTypeA('"arrows" must be a list')
    return validate_quiver(raw["vertices"], raw["arrows"])


def linear_quiver(n: int) -> Quiver:
    """A_n with arrows i -> i+1."""
    return validate_quiver(n, [(i, i + 1) for i in range(1, n)])


@dataclass(frozen=True, eq=False)
class Rep:
    """A representation: a space of dimension ``dims[v-1]`` at each vertex and
    one matrix (dim target x dim source) per arrow, ordered as ``quiver.arrows``."""

    quiver: Quiver
    p: int
    dims: tuple[int, ...]
    maps: tuple[np.ndarray, ...] = field(default=())

    def __post_init__(self):
        if len(self.dims) != self.quiver.n:
            raise ValueError("dimension vector has wrong length")
        if not self.maps:
            object.__setattr__(
                self,
                "maps",
                tuple(ffla.zeros(self.dim(t), self.dim(s)) for s, t in self.quiver.arrows),
            )
        for (s, t), m in zip(self.quiver.arrows, self.maps):
            if m.shape != (self.dim(t), self.dim(s)):
                raise ValueError(f"map for arrow {s}->{t} has shape {m.shape}")

    def dim(self, v: int) -> int:
        return self.dims[v - 1]

    @cached_property
    def key(self) -> tuple:
        return (self.dims, tuple(m.tobytes() for m in self.maps))

    def is_zero(self) -> bool:
        return not any(self.dims)

    def path_map(self, u: int, v: int) -> np.ndarray:
        """The composite along the directed path u -> v."""
        m = ffla.identity(self.dim(u))
        for i in self.quiver.path_arrows(u, v):
            m = (self.maps[i] @ m) % self.p
        return m


def interval_rep(Q: Quiver, p: int, ind: IndecId) -> Rep:
    dims = tuple(1 if ind.a <= v <= ind.b else 0 for v in range(1, Q.n + 1))
    maps = []
    for s, t in Q.arrows:
        m = ffla.zeros(dims[t - 1], dims[s - 1])
        if m.size:
            m[0, 0] = 1
        maps.append(m)
    return Rep(Q, p, dims, tuple(maps))


def direct_sum(reps: Iterable[Rep]) -> Rep:
    reps = list(reps)
    Q, p = reps[0].quiver, reps[0].p
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(Q.n))
    maps = []
    for k, (s, t) in enumerate(Q.arrows):
        m = ffla.zeros(dims[t - 1], dims[s - 1])
        ro = co = 0
        for r in reps:
            blk = r.maps[k]
            m[ro : ro + blk.shape[0], co : co + blk.shape[1]] = blk
            ro += blk.shape[0]
            co += blk.shape[1]
        maps.append(m)
    return Rep(Q, p, dims, tuple(maps))


def indecomposables(Q: Quiver, p: int) -> list[tuple[IndecId, Rep]]:
    """All n(n+1)/2 interval modules, ordered lexicographically by (a, b)."""
    return [
        (IndecId(a, b), interval_rep(Q, p, IndecId(a, b)))
        for a in range(1, Q.n + 1)
        for b in range(a, Q.n + 1)
    ]


def _hom_system(M: Rep, N: Rep) -> tuple[np.ndarray, list[tuple[int, int, int]]]:
    """Linear system whose kernel is Hom(M, N).

    Unknowns are the entries of phi_v (dim N_v x dim M_v), row-major, stacked
    over vertices.  Returns the equation matrix and per-vertex (v, offset, size).
    """
    Q, p = M.quiver, M.p
    layout, off = [], 0
    for v in range(1, Q.n + 1):
        size = N.dim(v) * M.dim(v)
        layout.append((v, off, size))
        off += size
    blocks = []
    for k, (s, t) in enumerate(Q.arrows):
        # phi_t M_a - N_a phi_s = 0, an (N_t x M_s) matrix equation
        rows = N.dim(t) * M.dim(s)
        if rows == 0:
            continue
        eq = ffla.zeros(rows, off)
        _, ot, st = layout[t - 1]
        _, os_, ss = layout[s - 1]
        if st:
            eq[:, ot : ot + st] = np.kron(ffla.identity(N.dim(t)), M.maps[k].T)
        if ss:
            eq[:, os_ : os_ + ss] = (eq[:, os_ : os_ + ss] - np.kron(N.maps[k], ffla.identity(M.dim(s)))) % p
        blocks.append(eq)
    eqs = np.vstack(blocks) % p if blocks else ffla.zeros(0, off)
    return eqs, layout


def hom_basis(M: Rep, N: Rep) -> list[tuple[np.ndarray, ...]]:
    """Basis of Hom(M, N); each element is a per-vertex tuple of matrices."""
    eqs, layout = _hom_system(M, N)
    ker = ffla.kernel_basis(eqs, M.p)
    out = []
    for vec in ker:
        out.append(
            tuple(vec[o : o + s].reshape(N.dim(v), M.dim(v)) for v, o, s in layout)
        )
    return out


def hom_dim(M: Rep, N: Rep) -> int:
    eqs, layout = _hom_system(M, N)
    total = sum(s for _, _, s in layout)
    return total - ffla.rank(eqs, M.p)


def euler_form(Q: Quiver, d: Iterable[int], e: Iterable[int]) -> int:
    d, e = list(d), list(e)
    val = sum(x * y for x, y in zip(d, e))
    for s, t in Q.arrows:
        val -= d[s - 1] * e[t - 1]
    return val


def ext1_dim(M: Rep, N: Rep) -> int:
    return hom_dim(M, N) - euler_form(M.quiver, M.dims, N.dims)


class _IntervalTable:
    """Hom-dimension matrix between intervals and its exact inverse."""

    def __init__(self, Q: Quiver, p: int):
        self.inds = indecomposables(Q, p)
        k = len(self.inds)
        H = [[hom_dim(r1, r2) for _, r2 in self.inds] for _, r1 in self.inds]
        self.inverse = _fraction_inverse(H)
        self.k = k


def _fraction_inverse(H: list[list[int]]) -> list[list[Fraction]]:
    k = len(H)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(H)]
    for c in range(k):
        piv = next(r for r in range(c, k) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(k):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[k:] for row in a]


_tables: dict[tuple[Quiver, int], _IntervalTable] = {}
_identify_cache: dict[tuple, tuple[tuple[IndecId, int], ...]] = {}


def _table(Q: Quiver, p: int) -> _IntervalTable:
    t = _tables.get((Q, p))
    if t is None:
        t = _tables[(Q, p)] = _IntervalTable(Q, p)
    return t


def identify(M: Rep) -> tuple[tuple[IndecId, int], ...]:
    """Decompose M into intervals: sorted ``((IndecId, multiplicity), ...)``.

    Multiplicities solve dim Hom(I', M) = sum_I m_I dim Hom(I', I).
    """
    if M.is_zero():
        return ()
    ck = (M.quiver, M.p, M.key)
    hit = _identify_cache.get(ck)
    if hit is not None:
        return hit
    tab = _table(M.quiver, M.p)
    h = [hom_dim(r, M) for _, r in tab.inds]
    out = []
    for i, (ind, _) in enumerate(tab.inds):
        m = sum(tab.inverse[i][j] * h[j] for j in range(tab.k))
        if m.denominator != 1 or m < 0:
            raise InconsistentDecomposition(f"non-integral multiplicity {m} for {ind}")
        if m:
            out.append((ind, int(m)))
    res = tuple(out)
    dims = [0] * M.quiver.n
    for ind, m in res:
        for v in range(ind.a, ind.b + 1):
            dims[v - 1] += m
    if tuple(dims) != M.dims:
        raise InconsistentDecomposition("decomposition does not reproduce the dimension vector")
    if len(_identify_cache) > 200_000:
        _identify_cache.clear()
    _identify_cache[ck] = res
    return res


@dataclass
class ProjectiveCover:
    """P_0 -> M: summand vertices, the epimorphism, and its kernel.

    ``vertices[i]`` is the vertex v of the i-th summand P_v of P_0.
    ``epi[v-1]`` is the matrix (P_0)_v -> M_v.  ``kernel_incl[v-1]`` has the
    kernel basis at v as rows, in (P_0)_v coordinates.
    """

    vertices: list[int]
    generators: list[np.ndarray]
    epi: list[np.ndarray]
    kernel: Rep
    kernel_incl: list[np.ndarray]

    @property
    def summands(self) -> list[IndecId]:
        return [self.kernel.quiver.projective(v) for v in self.vertices]


def proj_term_coords(Q: Quiver, vertices: list[int], x: int) -> list[int]:
    """Summand indices of (+)_i P_{vertices[i]} that are nonzero at vertex x."""
    return [i for i, v in enumerate(vertices) if x in Q.reach[v]]


def proj_rep(Q: Quiver, p: int, vertices: list[int]) -> Rep:
    """The representation (+)_i P_{vertices[i]} in its standard basis."""
    dims = tuple(len(proj_term_coords(Q, vertices, x)) for x in range(1, Q.n + 1))
    maps = []
    for s, t in Q.arrows:
        cs, ct = proj_term_coords(Q, vertices, s), proj_term_coords(Q, vertices, t)
        m = ffla.zeros(len(ct), len(cs))
        for j, i in enumerate(cs):
            if i in ct:
                m[ct.index(i), j] = 1
        maps.append(m)
    return Rep(Q, p, dims, tuple(maps))


def proj_cover(M: Rep) -> ProjectiveCover:
    """Minimal projective cover of M with its (projective) kernel."""
    Q, p = M.quiver, M.p
    vertices: list[int] = []
    gens: list[np.ndarray] = []
    for v in range(1, Q.n + 1):
        dv = M.dim(v)
        if dv == 0:
            continue
        imgs = [M.maps[k].T for k, (s, t) in enumerate(Q.arrows) if t == v and M.dim(s)]
        base = np.vstack(imgs) % p if imgs else ffla.zeros(0, dv)
        top = ffla.extend_basis(base, ffla.identity(dv), p)
        for g in top:
            vertices.append(v)
            gens.append(g)
    epi, kincl = [], []
    kdims = []
    for x in range(1, Q.n + 1):
        coords = proj_term_coords(Q, vertices, x)
        e = ffla.zeros(M.dim(x), len(coords))
        for j, i in enumerate(coords):
            e[:, j] = (M.path_map(vertices[i], x) @ gens[i]) % p
        epi.append(e)
        kb = ffla.kernel_basis(e, p)
        kincl.append(kb)
        kdims.append(kb.shape[0])
    P0 = proj_rep(Q, p, vertices)
    kmaps = []
    for k, (s, t) in enumerate(Q.arrows):
        img = (P0.maps[k] @ kincl[s - 1].T) % p  # columns: images in (P0)_t
        km = ffla.zeros(kdims[t - 1], kdims[s - 1])
        if km.size:
            piv, inv = ffla.coordinate_solver(kincl[t - 1], p)
            km = ((img.T[:, piv] @ inv) % p).T
        kmaps.append(km)
    K = Rep(Q, p, tuple(kdims), tuple(kmaps))
    return ProjectiveCover(vertices, gens, epi, K, kincl)


def projective_resolution(M: Rep) -> tuple[list[int], list[int], np.ndarray]:
    """Minimal resolution 0 -> P_1 -> P_0 -> M -> 0.

    Returns (P_1 vertices, P_0 vertices, d) where ``d[j, i]`` is the scalar
    of the path map P_{P1[i]} -> P_{P0[j]}.
    """
    Q, p = M.quiver, M.p
    cov = proj_cover(M)
    kcov = proj_cover(cov.kernel)
    if not kcov.kernel.is_zero():
        raise InconsistentDecomposition("kernel of a projective cover is not projective")
    d = ffla.zeros(len(cov.vertices), len(kcov.vertices))
    for i, y in enumerate(kcov.vertices):
        # generator of the i-th P_1 summand, as an element of (P_0)_y
        vec = (kcov.generators[i] @ cov.kernel_incl[y - 1]) % p
        for j, c in zip(proj_term_coords(Q, cov.vertices, y), vec):
            d[j, i] = c
    return kcov.vertices, cov.vertices, d
