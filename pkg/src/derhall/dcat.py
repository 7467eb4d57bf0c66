"""The bounded derived category D^b(rep_k Q) for Q of type A.

Objects are :class:`DObject` multisets.  Each is realized by its standard
complex: the direct sum of the minimal projective resolutions of its
summands.  Since kQ is hereditary, morphisms in D^b between complexes of
projectives are chain maps modulo null-homotopy, and every complex is
isomorphic to the sum of its shifted homologies; this is what makes
:meth:`DerivedCategory.standardize` correct.

Composition is written apply-after: ``compose(g, f)`` is g o f.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import ffla
from .complexes import (
    Block,
    HomSpace,
    Maps,
    ProjComplex,
    compose_maps,
    cone,
    cone_inclusion,
    cone_projection,
    homology_dims,
    homology_rep,
    identity_maps,
    is_acyclic,
    shift_complex,
    zero_complex,
)
from .objects import ZERO, DObject
from .quiver import IndecId, Quiver, identify, interval_rep, projective_resolution


class SearchExhausted(RuntimeError):
    """No quasi-isomorphism was found; indicates a bug, never expected."""


@dataclass(frozen=True, eq=False)
class HomClass:
    """A morphism in D^b: a representative chain map of a HomSpace."""

    space: HomSpace
    maps: Maps

    @property
    def coords(self) -> tuple[int, ...]:
        return self.space.classify(self.maps)

    def __eq__(self, other):
        return isinstance(other, HomClass) and self.space is other.space and self.coords == other.coords

    def __hash__(self):
        return hash((id(self.space), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass(frozen=True, eq=False)
class Triangle:
    """X --f--> L --g--> Y --h--> X[1] between standard complexes."""

    X: DObject
    L: DObject
    Y: DObject
    f: Maps
    g: Maps
    h: Maps


class DerivedCategory:
    """Computational model of D^b(rep_k Q) with caches for resolutions,
    standard complexes and Hom spaces.  Caches are only ever filled with
    deterministic values, so sharing an instance is safe."""

    def __init__(self, quiver: Quiver, p: int):
        ffla.FieldSpec(p)
        self.quiver = quiver
        self.p = p
        self._res: dict[IndecId, tuple[list[int], list[int], np.ndarray]] = {}
        self._std: dict[DObject, ProjComplex] = {}
        self._hom: dict[tuple, HomSpace] = {}
        self._homdim: dict[tuple[DObject, DObject], int] = {}
        self._cones: dict[tuple, DObject] = {}

    # -- objects and complexes ---------------------------------------------

    def resolution(self, ind: IndecId):
        r = self._res.get(ind)
        if r is None:
            r = self._res[ind] = projective_resolution(interval_rep(self.quiver, self.p, ind))
        return r

    def std_complex(self, X: DObject) -> ProjComplex:
        """Sum of minimal resolutions: for (I, s), P_1 in degree -s-1 and
        P_0 in degree -s, differential multiplied by (-1)^s.  With this sign
        choice ``std_complex(X)[n] == std_complex(X.shift(n))`` exactly."""
        C = self._std.get(X)
        if C is not None:
            return C
        p, Q = self.p, self.quiver
        degs: dict[int, list[int]] = {}
        spans = []
        pieces = []
        for ind, s in X.expanded():
            p1, p0, d = self.resolution(ind)
            sp = []
            for deg, verts in ((-s - 1, p1), (-s, p0)):
                if verts:
                    start = len(degs.setdefault(deg, []))
                    degs[deg].extend(verts)
                    sp.append((deg, start, start + len(verts)))
            spans.append(Block((ind, s), tuple(sp)))
            pieces.append((s, p1, p0, d, dict((dd, a) for dd, a, _ in sp)))
        terms = {k: tuple(v) for k, v in sorted(degs.items())}
        diffs = {}
        for k in terms:
            if k + 1 in terms:
                diffs[k] = ffla.zeros(len(terms[k + 1]), len(terms[k]))
        for s, p1, p0, d, starts in pieces:
            if p1:
                k = -s - 1
                r0, c0 = starts[k + 1], starts[k]
                sign = -1 if s % 2 else 1
                diffs[k][r0 : r0 + d.shape[0], c0 : c0 + d.shape[1]] = (sign * d) % p
        C = ProjComplex(Q, p, terms, diffs, tuple(spans))
        self._std[X] = C
        return C

    def zero(self) -> ProjComplex:
        return zero_complex(self.quiver, self.p)

    # -- homology and standardization --------------------------------------

    def homology(self, C: ProjComplex) -> dict[int, "Rep"]:  # noqa: F821
        return {k: homology_rep(C, k) for k in homology_dims(C)}

    def standardize(self, C: ProjComplex) -> DObject:
        items = []
        for k in homology_dims(C):
            for ind, m in identify(homology_rep(C, k)):
                items.extend([(ind, -k)] * m)
        return DObject.from_summands(items)

    def matches(self, C: ProjComplex, Y: DObject) -> bool:
        """Whether C is isomorphic to Y in D^b (cheap dimension test first)."""
        hd = homology_dims(C)
        if hd != self.homology_dims_of(Y):
            return False
        return self.standardize(C) == Y

    def homology_dims_of(self, Y: DObject) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for ind, s in Y.expanded():
            v = out.setdefault(-s, [0] * self.quiver.n)
            for x in range(ind.a, ind.b + 1):
                v[x - 1] += 1
        return {k: tuple(v) for k, v in out.items()}

    # -- Hom spaces ---------------------------------------------------------

    def hom_space(self, C: ProjComplex, D: ProjComplex) -> HomSpace:
        key = (C.key, D.key)
        H = self._hom.get(key)
        if H is None:
            if len(self._hom) > 50_000:
                self._hom.clear()
            H = self._hom[key] = HomSpace(C, D)
        return H

    def hom_classes(self, X: DObject, Y: DObject) -> HomSpace:
        """Hom_D(X, Y) realized on standard complexes."""
        return self.hom_space(self.std_complex(X), self.std_complex(Y))

    def derived_hom_dim(self, X: DObject, Y: DObject) -> int:
        key = (X, Y)
        d = self._homdim.get(key)
        if d is None:
            if X.is_zero() or Y.is_zero():
                d = 0
            else:
                d = self.hom_classes(X, Y).dim
            self._homdim[key] = d
        return d

    def hom_order(self, X: DObject, Y: DObject) -> int:
        return self.p ** self.derived_hom_dim(X, Y)

    def curly(self, X: DObject, Y: DObject) -> Fraction:
        """{X, Y} = prod_{i>0} |Hom(X[i], Y)|^((-1)^i)."""
        if X.is_zero() or Y.is_zero():
            return Fraction(1)
        lowY = min(self.std_complex(Y).degrees)
        exp = 0
        i = 1
        while True:
            Xi = X.shift(i)
            if max(self.std_complex(Xi).degrees) < lowY:
                break
            exp += (-1) ** i * self.derived_hom_dim(Xi, Y)
            i += 1
        return Fraction(self.p) ** exp

    # -- morphisms ----------------------------------------------------------

    def hom_class(self, X: DObject, Y: DObject, maps: Maps) -> HomClass:
        return HomClass(self.hom_classes(X, Y), maps)

    def identity(self, X: DObject) -> Maps:
        return identity_maps(self.std_complex(X))

    def compose(self, g: Maps, f: Maps) -> Maps:
        """g o f on representatives."""
        return compose_maps(g, f, self.p)

    def cone(self, C: ProjComplex, D: ProjComplex, f: Maps) -> ProjComplex:
        return cone(C, D, f)

    def cone_object(self, X: DObject, Y: DObject, f: Maps) -> DObject:
        return self.standardize(cone(self.std_complex(X), self.std_complex(Y), f))

    def cone_class(self, C: ProjComplex, D: ProjComplex, f: Maps) -> DObject:
        """standardize(cone(f)), memoized on the exact matrices of f.  Block
        restrictions of a map repeat many times during pair enumerations."""
        key = (C.key, D.key, tuple((k, np.asarray(m, dtype=np.int64).tobytes()) for k, m in sorted(f.items())))
        hit = self._cones.get(key)
        if hit is None:
            if len(self._cones) > 200_000:
                self._cones.clear()
            hit = self._cones[key] = self.standardize(cone(C, D, f))
        return hit

    def is_iso(self, C: ProjComplex, D: ProjComplex, f: Maps) -> bool:
        return is_acyclic(cone(C, D, f))

    def iter_classes(self, X: DObject, Y: DObject) -> Iterator[Maps]:
        H = self.hom_classes(X, Y)
        yield from H.iter_maps()

    def left_inverse(self, f: Maps, A: ProjComplex, B: ProjComplex) -> Maps:
        """A chain map u: B -> A with u o f homotopic to id_A, for an
        isomorphism f: A -> B in D^b.  Solved linearly over the chain maps."""
        p = self.p
        HBA = self.hom_space(B, A)
        HAA = self.hom_space(A, A)
        target = np.array(HAA.classify(identity_maps(A)), dtype=np.int64)
        if HAA.dim == 0:
            return HBA.to_maps(np.zeros(HBA.n, dtype=np.int64))
        cols = []
        for vec in HBA.reps:
            u = HBA.to_maps(vec)
            cols.append(HAA.classify(compose_maps(u, f, p)))
        M = np.array(cols, dtype=np.int64).T.reshape(HAA.dim, HBA.dim)
        x = ffla.solve(M, target, p)
        if x is None:
            raise SearchExhausted("map is not invertible in D^b")
        return HBA.to_maps(HBA.from_coords(x))

    def standardize_equiv(self, C: ProjComplex) -> tuple[DObject, Maps, Maps]:
        """(X, phi, psi): phi: std(X) -> C a quasi-isomorphism, psi its
        homotopy inverse.  phi is the first class (lexicographic) whose cone
        is acyclic."""
        X = self.standardize(C)
        S = self.std_complex(X)
        if S.key == C.key:
            idm = identity_maps(S)
            return X, idm, idm
        H = self.hom_space(S, C)
        for phi in H.iter_maps():
            if is_acyclic(cone(S, C, phi)):
                psi = self.left_inverse(phi, S, C)
                return X, phi, psi
        raise SearchExhausted("no quasi-isomorphism found")

    # -- triangles ----------------------------------------------------------

    def cone_triangle(self, X: DObject, L: DObject, f: Maps) -> Triangle:
        """The standard triangle X -> L -> Y -> X[1] on f, transported to
        the standard complex of Y = standardize(cone f)."""
        CX, CL = self.std_complex(X), self.std_complex(L)
        E = cone(CX, CL, f)
        Y, phi, psi = self.standardize_equiv(E)
        g = compose_maps(psi, cone_inclusion(CX, CL), self.p)
        h = compose_maps(cone_projection(CX, CL), phi, self.p)
        return Triangle(X, L, Y, f, g, h)

    def is_triangle_consistent(self, t: Triangle) -> bool:
        """Necessary conditions for (f, g, h) to be distinguished: the three
        cones are right and consecutive composites vanish in D^b."""
        sX, sL, sY = (self.std_complex(o) for o in (t.X, t.L, t.Y))
        sX1 = self.std_complex(t.X.shift(1))
        p = self.p
        if not self.matches(cone(sX, sL, t.f), t.Y):
            return False
        if not self.matches(cone(sL, sY, t.g), t.X.shift(1)):
            return False
        if not self.matches(cone(sY, sX1, t.h), t.L.shift(1)):
            return False
        if any(self.hom_space(sX, sY).classify(compose_maps(t.g, t.f, p))):
            return False
        if any(self.hom_space(sL, sX1).classify(compose_maps(t.h, t.g, p))):
            return False
        f1 = {k - 1: m for k, m in t.f.items()}
        sL1 = self.std_complex(t.L.shift(1))
        if any(self.hom_space(sY, sL1).classify(compose_maps(f1, t.h, p))):
            return False
        return True


def shift_maps(f: Maps, n: int) -> Maps:
    """f[n] : C[n] -> D[n]; (f[n])^k = f^{k+n}."""
    return {k - n: m for k, m in f.items()}


__all__ = [
    "DerivedCategory",
    "HomClass",
    "SearchExhausted",
    "Triangle",
    "ZERO",
    "shift_complex",
    "shift_maps",
]
