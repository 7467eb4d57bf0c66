"""Acceptance gate.  Each test prints one PASS/FAIL line with its measured
time against its budget; every comparison is exact equality."""

import itertools
import random
import time
from fractions import Fraction

from derhall.census import aut_order, restricted_hom_count, restricted_hom_count_naive
from derhall.dcat import DerivedCategory
from derhall.ffla import CapExceeded, enum_cap
from derhall.hall import assoc_check, hall_number, hall_number_all, support_candidates
from derhall.objects import ZERO, DObject, universe
from derhall.quiver import linear_quiver
from derhall.verify import check_image_sizes, check_octahedral, check_refined_counts, check_refined_sums

S = DObject.single(1, 1)


def _report(capsys, tag, ok, detail, secs, budget):
    ok = ok and (budget is None or secs < budget)
    limit = "no time budget" if budget is None else f"budget {budget}s"
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {tag}: {detail} ({secs:.2f}s, {limit})")
    return ok


def _fresh(n, q=2):
    Q = linear_quiver(n)
    return DerivedCategory(Q, q), universe(Q, 1, 2)


def test_ac1_closed_form_values(capsys):
    t0 = time.perf_counter()
    bad = []
    for q, want_ss, want_zero in [(2, 3, 1), (3, 4, Fraction(1, 2)), (5, 6, Fraction(1, 4))]:
        cat = DerivedCategory(linear_quiver(1), q)
        if hall_number(cat, S, S, S + S) != want_ss:
            bad.append(f"F(S,S;S+S) at q={q}")
        if hall_number(cat, S, S.shift(1), ZERO) != want_zero:
            bad.append(f"F(S,S[1];0) at q={q}")
    cat, U = _fresh(1)
    rnd = random.Random(2024)
    sample = [rnd.choice(U) for _ in range(20)]
    bad += [str(X) for X in sample if hall_number(cat, X, ZERO, X) != 1]
    secs = time.perf_counter() - t0
    assert _report(capsys, "AC1 closed forms", not bad, f"q in (2,3,5), 20 unit checks, mismatches={bad}", secs, 1)


def test_ac2_method_agreement(capsys):
    t0 = time.perf_counter()
    cat, U = _fresh(1)
    n, bad = 0, []
    for X, Y in itertools.product(U, repeat=2):
        for L in support_candidates(cat, X, Y):
            vals = hall_number_all(cat, X, Y, L)
            n += 1
            if len(set(vals.values())) != 1:
                bad.append((X, Y, L, vals))
    secs = time.perf_counter() - t0
    ok = n >= 100 and not bad
    assert _report(capsys, "AC2 via_f = via_g = via_orbits", ok, f"{n} instances, {len(bad)} disagreements", secs, 60)


def test_ac3_image_sizes(capsys):
    t0 = time.perf_counter()
    n, bad = 0, []
    for dim, limit in ((1, None), (2, 60)):
        cat, U = _fresh(dim)
        pairs = list(itertools.product(U, repeat=2))
        if limit is not None:
            pairs = random.Random(3).sample(pairs, limit)
        for Z, L in pairs:
            k, b = check_image_sizes(cat, Z, L)
            n += k
            bad += b
    secs = time.perf_counter() - t0
    ok = n >= 50 and not bad
    assert _report(capsys, "AC3 image sizes = curly ratios", ok, f"{n} triangles on A_1 and A_2, {len(bad)} failures", secs, 120)


def test_ac4_octahedral_memberships(capsys):
    t0 = time.perf_counter()
    cat, U = _fresh(1)
    n1, bad = 0, []
    for M, X, L in itertools.product(U, repeat=3):
        k, b = check_octahedral(cat, M, X, L)
        n1 += k
        bad += b
    cat, U = _fresh(2)
    rnd = random.Random(4)
    n2 = 0
    while n2 < 500:
        k, b = check_octahedral(cat, rnd.choice(U), rnd.choice(U), rnd.choice(U))
        n2 += k
        bad += b
    secs = time.perf_counter() - t0
    ok = not bad and n2 >= 500
    detail = f"A_1 exhaustive {n1} pairs, A_2 sampled {n2} pairs, {len(bad)} unequal"
    assert _report(capsys, "AC4 octahedral memberships agree", ok, detail, secs, 300)


def test_ac5_refined_count_identities(capsys):
    t0 = time.perf_counter()
    six, sums, skipped, bad = 0, 0, 0, []
    for dim in (1, 2):
        cat, U = _fresh(dim)
        rnd = random.Random(50 + dim)
        for _ in range(30):
            M, X, L = rnd.choice(U), rnd.choice(U), rnd.choice(U)
            try:
                with enum_cap(2**12):
                    k, b = check_refined_counts(cat, M, X, L)
                    k2, b2 = check_refined_sums(cat, M, X, L)
            except CapExceeded:
                skipped += 1
                continue
            six += k
            sums += k2
            bad += b + b2
    secs = time.perf_counter() - t0
    ok = six >= 50 and not bad
    detail = f"{six} six-tuples, {sums} sum identities, {skipped} capped triples skipped, {len(bad)} failures"
    assert _report(capsys, "AC5 refined count identities", ok, detail, secs, 300)


def test_ac6_associativity(capsys):
    t0 = time.perf_counter()
    cat, U = _fresh(1)
    bad = []
    triples1 = list(itertools.product(U, repeat=3))
    bad += [t for t in triples1 if not assoc_check(cat, *t)[2]]
    cat, U = _fresh(2)
    rnd = random.Random(6)
    triples2 = [(rnd.choice(U), rnd.choice(U), rnd.choice(U)) for _ in range(100)]
    bad += [t for t in triples2 if not assoc_check(cat, *t)[2]]
    secs = time.perf_counter() - t0
    ok = len(triples1) >= 200 and not bad
    detail = f"A_1 {len(triples1)} triples, A_2 {len(triples2)} triples, {len(bad)} non-associative"
    assert _report(capsys, "AC6 associativity", ok, detail, secs, 600)


def test_ac7_coset_count_matches_naive(capsys):
    t0 = time.perf_counter()
    cat, U = _fresh(2)
    rnd = random.Random(7)
    n, bad = 0, []
    while n < 30:
        X, L = rnd.choice(U), rnd.choice(U)
        H = cat.hom_classes(X, L)
        if H.dim + H.null_dim > 10 or H.dim == 0:
            continue
        Y = cat.cone_object(X, L, H.to_maps(H.all_reps()[rnd.randrange(H.size)]))
        fast = restricted_hom_count(DerivedCategory(cat.quiver, 2), X, L, Y)
        slow = restricted_hom_count_naive(DerivedCategory(cat.quiver, 2), X, L, Y)
        n += 1
        if fast != slow:
            bad.append((X, L, Y, fast, slow))
    secs = time.perf_counter() - t0
    assert _report(capsys, "AC7 coset count = naive count", not bad, f"{n} instances, {len(bad)} mismatches", secs, 60)


def test_ac8_infrastructure(capsys):
    t0 = time.perf_counter()
    bad = []
    n_objs = 0
    for dim in (1, 2, 3):
        cat, U = _fresh(dim)
        n_objs += len(U)
        bad += [f"round trip {X}" for X in U if cat.standardize(cat.std_complex(X)) != X]
    cat, U = _fresh(2)
    rnd = random.Random(8)
    for _ in range(30):
        X, Y, Z = rnd.choice(U), rnd.choice(U), rnd.choice(U)
        if cat.hom_order(X + Y, Z) != cat.hom_order(X, Z) * cat.hom_order(Y, Z):
            bad.append(f"multiplicativity {X}, {Y}, {Z}")
    gl2 = sum(
        1
        for a, b, c, d in itertools.product(range(2), repeat=4)
        if (a * d - b * c) % 2
    )
    cat1 = DerivedCategory(linear_quiver(1), 2)
    if not aut_order(cat1, S + S) == aut_order(cat1, S + S, "enumerate") == gl2 == 6:
        bad.append("aut(S+S)")
    secs = time.perf_counter() - t0
    detail = f"{n_objs} round trips, 30 sum pairs, |GL_2(F_2)| = {gl2}, failures={bad}"
    assert _report(capsys, "AC8 infrastructure invariants", not bad, detail, secs, None)
