"""Bounded complexes of projective representations of a type-A quiver.

For type A there is at most one path between two vertices, so a morphism
P_u -> P_v is a scalar multiple of the path map (nonzero only when u is
reachable from v) and composition is multiplication of scalars.  A complex
of projectives is therefore stored as, per degree, the list of vertices v of
its summands P_v, and per degree a scalar matrix for the differential.
Chain maps and homotopies are scalar matrices with the same sparsity rule.

Conventions: differentials raise degree; ``(C[n])^k = C^{k+n}`` with the
differential multiplied by ``(-1)^n``; ``cone(f)^k = C^{k+1} (+) D^k`` with
differential ``(x, y) -> (-d_C x, f x + d_D y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

import numpy as np

from . import ffla
from .quiver import Quiver, Rep, proj_term_coords

Maps = dict[int, np.ndarray]


@dataclass(frozen=True)
class Block:
    """A labelled summand of a complex: its coordinate span in each degree."""

    label: object
    spans: tuple[tuple[int, int, int], ...]  # (degree, start, stop)

    def span(self, k: int) -> tuple[int, int] | None:
        for d, a, b in self.spans:
            if d == k:
                return a, b
        return None


@dataclass(frozen=True, eq=False)
class ProjComplex:
    quiver: Quiver
    p: int
    terms: Mapping[int, tuple[int, ...]]
    diffs: Mapping[int, np.ndarray]  # d^k : C^k -> C^{k+1}, shape (|C^{k+1}|, |C^k|)
    blocks: tuple[Block, ...] = field(default=())

    @cached_property
    def degrees(self) -> list[int]:
        return sorted(k for k, t in self.terms.items() if t)

    def term(self, k: int) -> tuple[int, ...]:
        return self.terms.get(k, ())

    def d(self, k: int) -> np.ndarray:
        m = self.diffs.get(k)
        if m is None:
            return ffla.zeros(len(self.term(k + 1)), len(self.term(k)))
        return m

    @cached_property
    def key(self) -> tuple:
        return tuple(
            (k, self.term(k), self.d(k).tobytes()) for k in self.degrees
        )

    def is_zero(self) -> bool:
        return not self.degrees

    def check(self) -> None:
        """Raise if d o d != 0 or a differential violates the path pattern."""
        for k in self.degrees:
            dk = self.d(k)
            if dk.shape != (len(self.term(k + 1)), len(self.term(k))):
                raise ValueError(f"differential at degree {k} has shape {dk.shape}")
            if np.any(dk[~allowed_mask(self.quiver, self.term(k), self.term(k + 1))]):
                raise ValueError(f"differential at degree {k} is not a map of projectives")
            if np.any((self.d(k + 1) @ dk) % self.p):
                raise ValueError(f"d o d != 0 at degree {k}")

    def at_vertex(self, k: int, x: int) -> list[int]:
        return proj_term_coords(self.quiver, list(self.term(k)), x)

    def d_at(self, k: int, x: int) -> np.ndarray:
        rows = self.at_vertex(k + 1, x)
        cols = self.at_vertex(k, x)
        return self.d(k)[np.ix_(rows, cols)]


def allowed_mask(Q: Quiver, src: tuple[int, ...], tgt: tuple[int, ...]) -> np.ndarray:
    """``mask[j, i]``: Hom(P_src[i], P_tgt[j]) is nonzero."""
    m = np.zeros((len(tgt), len(src)), dtype=bool)
    for j, v in enumerate(tgt):
        r = Q.reach[v]
        for i, u in enumerate(src):
            m[j, i] = u in r
    return m


def zero_complex(Q: Quiver, p: int) -> ProjComplex:
    return ProjComplex(Q, p, {}, {})


def shift_complex(C: ProjComplex, n: int) -> ProjComplex:
    sign = -1 if n % 2 else 1
    terms = {k - n: t for k, t in C.terms.items() if t}
    diffs = {k - n: (sign * m) % C.p for k, m in C.diffs.items()}
    blocks = tuple(
        Block(b.label, tuple((d - n, a, e) for d, a, e in b.spans)) for b in C.blocks
    )
    return ProjComplex(C.quiver, C.p, terms, diffs, blocks)


def direct_sum(parts: list[ProjComplex], labels: list | None = None) -> ProjComplex:
    """Degreewise direct sum; each part becomes one Block (nested blocks are
    kept as well, relabelled ``(i, inner_label)``)."""
    Q, p = parts[0].quiver, parts[0].p
    degs = sorted({k for C in parts for k in C.degrees})
    terms: dict[int, tuple[int, ...]] = {}
    offsets: list[dict[int, int]] = [dict() for _ in parts]
    for k in degs:
        acc: list[int] = []
        for i, C in enumerate(parts):
            offsets[i][k] = len(acc)
            acc.extend(C.term(k))
        terms[k] = tuple(acc)
    diffs = {}
    for k in degs:
        if k + 1 not in terms:
            continue
        m = ffla.zeros(len(terms[k + 1]), len(terms[k]))
        for i, C in enumerate(parts):
            dk = C.d(k)
            if dk.size:
                r0, c0 = offsets[i].get(k + 1, 0), offsets[i][k]
                m[r0 : r0 + dk.shape[0], c0 : c0 + dk.shape[1]] = dk
        diffs[k] = m
    blocks = []
    for i, C in enumerate(parts):
        lab = labels[i] if labels is not None else i
        blocks.append(
            Block(lab, tuple((k, offsets[i][k], offsets[i][k] + len(C.term(k))) for k in C.degrees))
        )
        for b in C.blocks:
            blocks.append(
                Block((lab, b.label), tuple((d, offsets[i][d] + a, offsets[i][d] + e) for d, a, e in b.spans))
            )
    return ProjComplex(Q, p, terms, diffs, tuple(blocks))


def cone(C: ProjComplex, D: ProjComplex, f: Maps) -> ProjComplex:
    """Mapping cone of the chain map f: C -> D."""
    p = C.p
    degs = sorted({k - 1 for k in C.degrees} | set(D.degrees))
    terms = {k: C.term(k + 1) + D.term(k) for k in degs}
    diffs = {}
    for k in degs:
        if k + 1 not in terms:
            continue
        a1, b1 = len(C.term(k + 1)), len(D.term(k))
        a2, b2 = len(C.term(k + 2)), len(D.term(k + 1))
        m = ffla.zeros(a2 + b2, a1 + b1)
        if a2 and a1:
            m[:a2, :a1] = (-C.d(k + 1)) % p
        if b2 and a1 and (k + 1) in f:
            m[a2:, :a1] = f[k + 1]
        if b2 and b1:
            m[a2:, a1:] = D.d(k)
        diffs[k] = m
    return ProjComplex(C.quiver, p, terms, diffs)


def cone_inclusion(C: ProjComplex, D: ProjComplex) -> Maps:
    """The canonical chain map D -> cone(f) (independent of f)."""
    out = {}
    for k in D.degrees:
        a, b = len(C.term(k + 1)), len(D.term(k))
        m = ffla.zeros(a + b, b)
        m[a:, :] = ffla.identity(b)
        out[k] = m
    return out


def cone_projection(C: ProjComplex, D: ProjComplex) -> Maps:
    """The canonical chain map cone(f) -> C[1]."""
    out = {}
    for k in C.degrees:
        a, b = len(C.term(k)), len(D.term(k - 1))
        m = ffla.zeros(a, a + b)
        m[:, :a] = ffla.identity(a)
        out[k - 1] = m
    return out


def identity_maps(C: ProjComplex) -> Maps:
    return {k: ffla.identity(len(C.term(k))) for k in C.degrees}


def compose_maps(g: Maps, f: Maps, p: int) -> Maps:
    """g o f (apply f first)."""
    return {k: (g[k] @ f[k]) % p for k in f if k in g}


def add_maps(f: Maps, g: Maps, p: int, scale: int = 1) -> Maps:
    out = {k: v.copy() for k, v in f.items()}
    for k, v in g.items():
        out[k] = (out[k] + scale * v) % p if k in out else (scale * v) % p
    return out


def is_chain_map(C: ProjComplex, D: ProjComplex, f: Maps) -> bool:
    p = C.p
    for k in set(C.degrees) | set(D.degrees) | {k - 1 for k in C.degrees}:
        fk = f.get(k, ffla.zeros(len(D.term(k)), len(C.term(k))))
        fk1 = f.get(k + 1, ffla.zeros(len(D.term(k + 1)), len(C.term(k + 1))))
        if fk.size == 0 and fk1.size == 0:
            continue
        lhs = (D.d(k) @ fk) % p if fk.size or D.d(k).size else None
        rhs = (fk1 @ C.d(k)) % p
        if lhs is None:
            lhs = np.zeros_like(rhs)
        if lhs.shape != rhs.shape or np.any((lhs - rhs) % p):
            return False
    return True


def restrict_maps(f: Maps, src_block: Block | None, tgt_block: Block | None) -> Maps:
    """Component of f between two blocks (None means the whole complex)."""
    out = {}
    for k, m in f.items():
        rs = tgt_block.span(k) if tgt_block is not None else (0, m.shape[0])
        cs = src_block.span(k) if src_block is not None else (0, m.shape[1])
        if rs is None or cs is None:
            continue
        sub = m[rs[0] : rs[1], cs[0] : cs[1]]
        if sub.size:
            out[k] = sub.copy()
    return out


def homology_dims(C: ProjComplex) -> dict[int, tuple[int, ...]]:
    """Dimension vector of H^k at every degree with nonzero homology."""
    p, Q = C.p, C.quiver
    out = {}
    for k in C.degrees:
        dims = []
        for x in range(1, Q.n + 1):
            n = len(C.at_vertex(k, x))
            if n == 0:
                dims.append(0)
                continue
            z = n - ffla.rank(C.d_at(k, x), p)
            b = ffla.rank(C.d_at(k - 1, x), p)
            dims.append(z - b)
        if any(dims):
            out[k] = tuple(dims)
    return out


def is_acyclic(C: ProjComplex) -> bool:
    p, Q = C.p, C.quiver
    for k in C.degrees:
        for x in range(1, Q.n + 1):
            n = len(C.at_vertex(k, x))
            if n and n - ffla.rank(C.d_at(k, x), p) != ffla.rank(C.d_at(k - 1, x), p):
                return False
    return True


def _arrow_selection(C: ProjComplex, k: int, s: int, t: int) -> np.ndarray:
    cs, ct = C.at_vertex(k, s), C.at_vertex(k, t)
    m = ffla.zeros(len(ct), len(cs))
    pos = {i: j for j, i in enumerate(ct)}
    for j, i in enumerate(cs):
        m[pos[i], j] = 1
    return m


def homology_rep(C: ProjComplex, k: int) -> Rep:
    """H^k(C) = ker d^k / im d^{k-1} as an explicit representation."""
    p, Q = C.p, C.quiver
    Bs, Qs, solvers = {}, {}, {}
    for x in range(1, Q.n + 1):
        n = len(C.at_vertex(k, x))
        Z = ffla.kernel_basis(C.d_at(k, x), p) if n else ffla.zeros(0, 0)
        dprev = C.d_at(k - 1, x)
        B = ffla.row_basis(dprev.T, p) if n and dprev.size else ffla.zeros(0, n)
        Qx = ffla.extend_basis(B, Z, p) if n else ffla.zeros(0, 0)
        Bs[x], Qs[x] = B, Qx
        full = np.vstack([B, Qx]) if n else ffla.zeros(0, 0)
        solvers[x] = ffla.coordinate_solver(full, p) if full.shape[0] else ([], None)
    dims = tuple(Qs[x].shape[0] for x in range(1, Q.n + 1))
    maps = []
    for s, t in Q.arrows:
        ds, dt = dims[s - 1], dims[t - 1]
        m = ffla.zeros(dt, ds)
        if ds and dt:
            sel = _arrow_selection(C, k, s, t)
            img = (Qs[s] @ sel.T) % p  # rows: images in C^k_t coordinates
            piv, inv = solvers[t]
            coeff = (img[:, piv] @ inv) % p
            m = coeff[:, Bs[t].shape[0] :].T.copy()
        maps.append(m)
    return Rep(Q, p, dims, tuple(maps))


class HomSpace:
    """Chain maps C -> D, the null-homotopic subspace, and coset coordinates.

    A chain map is flattened to the vector of its allowed entries (degree by
    degree, row-major).  ``reps`` is a basis of a complement of the
    null-homotopic subspace N inside the chain maps Z; ``classify`` returns
    the coordinates of the class of a chain map in that basis.
    """

    def __init__(self, C: ProjComplex, D: ProjComplex):
        self.C, self.D = C, D
        p, Q = C.p, C.quiver
        self.p = p
        self.degrees = [k for k in C.degrees if k in set(D.degrees)]
        self.layout: list[tuple[int, np.ndarray, tuple[int, int]]] = []
        off = 0
        offsets = {}
        for k in self.degrees:
            mask = allowed_mask(Q, C.term(k), D.term(k))
            pos = np.flatnonzero(mask.ravel())
            self.layout.append((k, pos, mask.shape))
            offsets[k] = (off, pos)
            off += pos.size
        self.n = off
        self._offsets = offsets

        # chain condition: d_D^k f^k - f^{k+1} d_C^k = 0
        eq_blocks = []
        for k in sorted(set(self.degrees) | {k - 1 for k in self.degrees}):
            nrow = len(D.term(k + 1)) * len(C.term(k))
            if nrow == 0:
                continue
            E = ffla.zeros(nrow, self.n)
            if k in offsets:
                o, pos = offsets[k]
                E[:, o : o + pos.size] = np.kron(D.d(k), ffla.identity(len(C.term(k))))[:, pos]
            if k + 1 in offsets:
                o, pos = offsets[k + 1]
                E[:, o : o + pos.size] -= np.kron(ffla.identity(len(D.term(k + 1))), C.d(k).T)[:, pos]
            eq_blocks.append(E % p)
        E = np.vstack(eq_blocks) if eq_blocks else ffla.zeros(0, self.n)
        self.cycles = ffla.kernel_basis(E, p) if self.n else ffla.zeros(0, 0)

        # null-homotopies: f^k = d_D^{k-1} s^k + s^{k+1} d_C^k,  s^k: C^k -> D^{k-1}
        cols = []
        for k in C.degrees:
            if not D.term(k - 1):
                continue
            smask = allowed_mask(Q, C.term(k), D.term(k - 1))
            spos = np.flatnonzero(smask.ravel())
            if spos.size == 0:
                continue
            img = ffla.zeros(self.n, spos.size)
            if k in offsets:
                o, pos = offsets[k]
                img[o : o + pos.size] = np.kron(D.d(k - 1), ffla.identity(len(C.term(k))))[:, spos][pos]
            if k - 1 in offsets:
                o, pos = offsets[k - 1]
                img[o : o + pos.size] += np.kron(ffla.identity(len(D.term(k - 1))), C.d(k - 1).T)[:, spos][pos]
            cols.append(img % p)
        H = np.hstack(cols) if cols else ffla.zeros(self.n, 0)
        self.null = ffla.row_basis(H.T, p) if H.size else ffla.zeros(0, self.n)
        self.reps = ffla.extend_basis(self.null, self.cycles, p) if self.n else ffla.zeros(0, 0)
        if self.reps.shape[0] == 0:
            self.reps = ffla.zeros(0, self.n)
        full = np.vstack([self.null, self.reps])
        self._piv, self._inv = ffla.coordinate_solver(full, p) if full.shape[0] else ([], None)
        self.dim = self.reps.shape[0]
        self.null_dim = self.null.shape[0]

    @property
    def size(self) -> int:
        return self.p**self.dim

    def to_maps(self, vec: np.ndarray) -> Maps:
        out = {}
        for k, pos, shape in self.layout:
            o, _ = self._offsets[k]
            m = np.zeros(shape[0] * shape[1], dtype=np.int64)
            m[pos] = vec[o : o + pos.size]
            out[k] = m.reshape(shape)
        return out

    def flatten(self, f: Maps) -> np.ndarray:
        vec = np.zeros(self.n, dtype=np.int64)
        for k, pos, shape in self.layout:
            if k in f:
                o, _ = self._offsets[k]
                vec[o : o + pos.size] = f[k].ravel()[pos]
        return vec % self.p

    def classify(self, f: Maps | np.ndarray) -> tuple[int, ...]:
        """Coordinates of the homotopy class of a chain map."""
        vec = f if isinstance(f, np.ndarray) else self.flatten(f)
        if self.dim == 0:
            return ()
        c = (vec[self._piv] @ self._inv) % self.p
        return tuple(int(x) for x in c[self.null_dim :])

    def class_index(self, coords: tuple[int, ...]) -> int:
        """Position of a class in the lexicographic enumeration."""
        i = 0
        for c in coords:
            i = i * self.p + c
        return i

    def from_coords(self, coords) -> np.ndarray:
        if self.dim == 0:
            return np.zeros(self.n, dtype=np.int64)
        return (np.asarray(coords, dtype=np.int64) @ self.reps) % self.p

    def all_reps(self) -> np.ndarray:
        """Representatives of every class (rows), lexicographic order."""
        return ffla.span_array(self.reps, self.p, self.n)

    def iter_maps(self):
        for vec in self.all_reps():
            yield self.to_maps(vec)

    def all_chain_maps(self) -> np.ndarray:
        """Every chain map (not just class representatives)."""
        return ffla.span_array(self.cycles, self.p, self.n)
