"""Verification suites: brute-force checks of the identities behind the
Hall product, run over a universe of objects.

Each suite has a fixed instance arity (a tuple of objects).  The instance
space is the universe raised to that arity; it is swept exhaustively when it
has at most :data:`EXHAUSTIVE_LIMIT` members and sampled otherwise, with a
seeded generator whose seed goes into the report.  An instance whose
enumeration hits the cap is recorded as skipped and does not fail the run.
"""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .census import (
    aut_order,
    hom_pairs,
    image_size_left,
    image_size_right,
    octahedral_membership_check,
    refined_conditions,
    refined_hom_count,
    refined_source_distribution,
    refined_target_distribution,
    restricted_hom_count,
    restricted_orbits,
    v_orbit_report,
)
from .complexes import cone
from .dcat import DerivedCategory
from .ffla import CapExceeded, enum_cap
from .hall import assoc_check, support_candidates
from .objects import DObject

EXHAUSTIVE_LIMIT = 1000

SUITES = ("lemma24", "prop25", "prop26", "prop32", "prop34", "prop35", "assoc")


@dataclass
class Failure:
    instance: tuple[DObject, ...]
    detail: str


@dataclass
class SuiteReport:
    suite: str
    instances: int = 0
    checks: int = 0
    skipped: int = 0
    sampled: bool = False
    seed: int | None = None
    seconds: float = 0.0
    failures: list[Failure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self, command: Callable[[str, tuple[DObject, ...]], str] | None = None) -> dict:
        out = {
            "suite": self.suite,
            "passed": self.passed,
            "instances": self.instances,
            "checks": self.checks,
            "skipped_cap": self.skipped,
            "sampled": self.sampled,
            "seed": self.seed,
            "failures": [],
        }
        for f in self.failures:
            rec = {"instance": [str(o) for o in f.instance], "detail": f.detail}
            if command is not None:
                rec["command"] = command(self.suite, f.instance)
            out["failures"].append(rec)
        return out


# Each check takes (cat, *instance) and returns (number of checks, list of
# failure details).  A check enumerates everything attached to its instance.


def check_image_sizes(cat: DerivedCategory, Z: DObject, L: DObject):
    """Every n: L -> Z[1] with M = Cone(n)[-1]: both image sizes equal their
    curly-bracket ratios."""
    CL, CZ1 = cat.std_complex(L), cat.std_complex(Z.shift(1))
    H = cat.hom_space(CL, CZ1)
    n_checks, bad = 0, []
    for n in H.iter_maps():
        M = cat.standardize(cone(CL, CZ1, n)).shift(-1)
        left = image_size_left(cat, Z, L, n)
        right = image_size_right(cat, Z, L, n)
        want_l = cat.curly(M, L) / (cat.curly(Z, L) * cat.curly(L, L))
        want_r = cat.curly(Z, M) / (cat.curly(Z, L) * cat.curly(Z, Z))
        n_checks += 1
        if left != want_l or right != want_r:
            bad.append(f"M={M}: left {left} vs {want_l}, right {right} vs {want_r}")
    return n_checks, bad


def check_triangle_counts(cat: DerivedCategory, Z: DObject, L: DObject):
    """For each M in the support of u_Z * u_L: the two counting formulas
    and the orbit sum agree."""
    n_checks, bad = 0, []
    for M in support_candidates(cat, Z, L):
        a = (
            Fraction(restricted_hom_count(cat, M, L, Z.shift(1)), aut_order(cat, L))
            * cat.curly(M, L)
            / (cat.curly(Z, L) * cat.curly(L, L))
        )
        b = v_orbit_report(cat, Z, L, M).total_weight
        c = (
            Fraction(restricted_hom_count(cat, Z, M, L), aut_order(cat, Z))
            * cat.curly(Z, M)
            / (cat.curly(Z, L) * cat.curly(Z, Z))
        )
        n_checks += 1
        if not a == b == c:
            bad.append(f"M={M}: target form {a}, orbit sum {b}, source form {c}")
    return n_checks, bad


def check_orbit_bijection(cat: DerivedCategory, X: DObject, Y: DObject):
    """For each L in the support: Aut Y-orbits on Hom(L, Y)_{X[1]} and Aut
    X-orbits on Hom(X, L)_Y are equinumerous."""
    n_checks, bad = 0, []
    for L in support_candidates(cat, X, Y):
        by_g, _, _ = restricted_orbits(cat, L, Y, X.shift(1), act="target")
        by_f, _, _ = restricted_orbits(cat, X, L, Y, act="source")
        n_checks += 1
        if len(by_g) != len(by_f):
            bad.append(f"L={L}: {len(by_g)} orbits of g, {len(by_f)} orbits of f")
    return n_checks, bad


def check_octahedral(cat: DerivedCategory, M: DObject, X: DObject, L: DObject):
    """Every pair (m, f): M (+) X -> L satisfies the two cone conditions on
    the L side exactly when it satisfies them on the L' side.

    Taking (Y, Z) to be the cones of f and m makes the L-side condition true,
    so equal answers mean the cones of f' and m' are those of f and m; that
    in turn gives equal answers for every other choice of (Y, Z)."""
    n_checks, bad = 0, []
    for m, f in hom_pairs(cat, M, X, L):
        Y = cat.cone_object(X, L, f)
        Z = cat.cone_object(M, L, m).shift(-1)
        r = octahedral_membership_check(cat, M, X, L, m, f, Y, Z)
        n_checks += 1
        if not (r.in_L and r.in_Lprime):
            bad.append(f"Y={Y}, Z={Z}, L'={r.Lprime}: L side {r.in_L}, L' side {r.in_Lprime}")
    return n_checks, bad


def _refined_tuples(cat, M, X, L):
    for Y, Z in refined_conditions(cat, M, X, L, side="target"):
        for Lp in sorted(refined_target_distribution(cat, M, X, L, Y, Z)):
            yield Y, Z, Lp


def check_refined_counts(cat: DerivedCategory, M: DObject, X: DObject, L: DObject):
    """Every six-tuple (M, X, L, L', Y, Z) reachable from the instance: the
    target-side and source-side normalized counts agree."""
    MX = M + X
    n_checks, bad = 0, []
    for Y, Z, Lp in _refined_tuples(cat, M, X, L):
        t = refined_hom_count(cat, M, X, L, Lp, Y, Z, side="target")
        s = refined_hom_count(cat, M, X, L, Lp, Y, Z, side="source")
        lhs = Fraction(t, aut_order(cat, L)) * cat.curly(MX, L) / (cat.curly(Lp, L) * cat.curly(L, L))
        rhs = Fraction(s, aut_order(cat, Lp)) * cat.curly(Lp, MX) / (cat.curly(Lp, L) * cat.curly(Lp, Lp))
        n_checks += 1
        if lhs != rhs:
            bad.append(f"L'={Lp}, Y={Y}, Z={Z}: target side {lhs}, source side {rhs}")
    return n_checks, bad


def check_refined_sums(cat: DerivedCategory, M: DObject, X: DObject, L: DObject):
    """Summing refined counts over the free vertex recovers the product of
    the two restricted counts, on both sides."""
    n_checks, bad = 0, []
    seen_src = set()
    for Y, Z in refined_conditions(cat, M, X, L, side="target"):
        Z1 = Z.shift(1)
        dist = refined_target_distribution(cat, M, X, L, Y, Z)
        got = sum(dist.values())
        want = restricted_hom_count(cat, X, L, Y) * restricted_hom_count(cat, M, L, Z1)
        n_checks += 1
        if got != want:
            bad.append(f"target Y={Y}, Z={Z}: sum {got} vs product {want}")
        for Lp in sorted(dist):
            if (Lp, Y, Z) in seen_src:
                continue
            seen_src.add((Lp, Y, Z))
            got = sum(refined_source_distribution(cat, M, X, Lp, Y, Z).values())
            want = restricted_hom_count(cat, Lp, X, Z1) * restricted_hom_count(cat, Lp, M, Y)
            n_checks += 1
            if got != want:
                bad.append(f"source L'={Lp}, Y={Y}, Z={Z}: sum {got} vs product {want}")
    return n_checks, bad


def check_assoc(cat: DerivedCategory, X: DObject, Y: DObject, Z: DObject):
    """u_Z * (u_X * u_Y) == (u_Z * u_X) * u_Y."""
    left, right, ok = assoc_check(cat, X, Y, Z)
    return 1, ([] if ok else [f"left {left} != right {right}"])


CHECKS: dict[str, tuple[int, Callable]] = {
    "lemma24": (2, check_image_sizes),
    "prop25": (2, check_triangle_counts),
    "prop26": (2, check_orbit_bijection),
    "prop32": (3, check_octahedral),
    "prop34": (3, check_refined_counts),
    "prop35": (3, check_refined_sums),
    "assoc": (3, check_assoc),
}


def instance_space(universe: Sequence[DObject], arity: int, samples: int, seed: int):
    """(instances, sampled?) from universe^arity, exhaustive when small."""
    total = len(universe) ** arity
    if total <= max(EXHAUSTIVE_LIMIT, samples):
        return list(itertools.product(universe, repeat=arity)), False
    rng = random.Random(seed)
    picks = rng.sample(range(total), samples)
    out = []
    for idx in picks:
        tup = []
        for _ in range(arity):
            idx, r = divmod(idx, len(universe))
            tup.append(universe[r])
        out.append(tuple(tup))
    return out, True


def run_instances(cat: DerivedCategory, suite: str, instances, cap: int | None = None) -> SuiteReport:
    arity, check = CHECKS[suite]
    rep = SuiteReport(suite)
    t0 = time.perf_counter()
    for inst in instances:
        if len(inst) != arity:
            raise ValueError(f"suite {suite} takes {arity} objects, got {len(inst)}")
        try:
            if cap is None:
                n, bad = check(cat, *inst)
            else:
                with enum_cap(cap):
                    n, bad = check(cat, *inst)
        except CapExceeded:
            rep.skipped += 1
            continue
        rep.instances += 1
        rep.checks += n
        rep.failures.extend(Failure(tuple(inst), d) for d in bad)
    rep.seconds = time.perf_counter() - t0
    return rep


def run_suite(
    cat: DerivedCategory,
    suite: str,
    universe: Sequence[DObject],
    samples: int = 300,
    seed: int = 0,
    cap: int | None = None,
) -> SuiteReport:
    arity, _ = CHECKS[suite]
    instances, sampled = instance_space(list(universe), arity, samples, seed)
    rep = run_instances(cat, suite, instances, cap)
    rep.sampled = sampled
    rep.seed = seed if sampled else None
    return rep


def summarize(reports: Sequence[SuiteReport]) -> Counter:
    c: Counter = Counter()
    for r in reports:
        c["instances"] += r.instances
        c["checks"] += r.checks
        c["skipped"] += r.skipped
        c["failures"] += len(r.failures)
    return c


__all__ = [
    "CHECKS",
    "EXHAUSTIVE_LIMIT",
    "SUITES",
    "SuiteReport",
    "instance_space",
    "run_instances",
    "run_suite",
]
