"""Acceptance criteria 1-8.

Each criterion is computed by a ``criterion_N`` function returning
``(passed, detail)``; the pytest wrappers record the outcome so that
``conftest.py`` can print one PASS/FAIL line per criterion at the end of
the run.  ``python tests/test_acceptance.py`` prints the same lines.
"""
from __future__ import annotations

import time
from itertools import combinations

import pytest

from nlie.algebra import abelian, direct_sum, filippov_check, quotient
from nlie.catalog import catalog_list, heisenberg, label, make
from nlie.classify import classify, decompose_dim1_derived, fingerprint
from nlie.iso import find_isomorphism, random_basis_change, verify_isomorphism
from nlie.linalg import Subspace
from nlie.scalars import GF, Q
from nlie.selftest import FINGERPRINTS_N3_D6, catalog_algebras, catalog_labels
from nlie.series import center, derived_subalgebra

RESULTS: dict[int, tuple[bool, str]] = {}
NS = (2, 3, 4)


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    total = 0
    for F in (Q, GF(2), GF(3), GF(5)):
        for name, A in catalog_algebras(F, NS):
            total += 1
            if not filippov_check(A).ok:
                bad.append(f"{name} over {F}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 5
    return ok, f"{total} algebras, {len(bad)} failures, {dt:.1f}s (limit 5s)" + (f": {bad[:5]}" if bad else "")


def criterion_2():
    checks = []
    for n in NS:
        got = [len(catalog_list(n, d)) for d in (n, n + 1, n + 2)]
        checks.append((f"n={n} d=n..n+2", got, [1, 2, 3]))
    for n in (3, 4):
        checks.append((f"n={n} d=n+3", len(catalog_list(n, n + 3)), 8))
    checks.append(("n=2 d=5", len(catalog_list(2, 5)), 9))
    for n in NS:
        checks.append((f"n={n} d=n+3 class 2", len(catalog_list(n, n + 3, 2)), 3))
    for n in NS:
        checks.append((f"n={n} d=n+4 class 2", len(catalog_list(n, n + 4, 2)), 6 if n == 2 else 5))
    bad = [f"{what}: got {got}, want {want}" for what, got, want in checks if got != want]
    return not bad, f"{len(checks) - len(bad)}/{len(checks)} counts match" + ("; " + "; ".join(bad) if bad else "")


def criterion_3():
    got = {name: tuple(fingerprint(make(label(name, 3)))) for name in FINGERPRINTS_N3_D6}
    problems = [f"{k}: {got[k]} != {v}" for k, v in FINGERPRINTS_N3_D6.items() if got[k] != v]
    for a, b in combinations(sorted(got), 2):
        if got[a] == got[b]:
            problems.append(f"{a} and {b} collide")
    a6, a7 = got["A_n+3_6"], got["A_n+3_7"]
    if a6[:5] != a7[:5] or (a6[5], a7[5]) != (4, 3):
        problems.append(f"A_n+3_6/7 should differ only in centralizer 4 vs 3: {a6} {a7}")
    return not problems, "8 fingerprints match the hand-checked table, pairwise distinct" if not problems else "; ".join(problems)


def criterion_4(seeds: int = 50):
    t0 = time.perf_counter()
    labs = catalog_labels(NS)
    bad = []
    for F in (Q, GF(5)):
        for lab in labs:
            A = make(lab, F)
            for s in range(seeds):
                v = classify(random_basis_change(A, s)[0], validate=False)
                if v.label != lab:
                    bad.append(f"{lab} n={lab.n} over {F} seed {s}: {v}")
    dt = time.perf_counter() - t0
    ok = not bad and dt < 60
    return ok, f"{len(labs)} labels x 2 fields x {seeds} seeds, {len(bad)} misses, {dt:.1f}s (limit 60s)" + (
        f": {bad[:3]}" if bad else "")


def criterion_5():
    F = GF(2)
    t0 = time.perf_counter()
    groups = [
        [make(label(f"A_n+3_{i}", 3), F) for i in range(1, 9)],
        [make(lab, F) for lab in catalog_list(3, 7, 2)],
    ]
    bad, slowest, npairs = [], 0.0, 0
    for algs in groups:
        for A, B in combinations(algs, 2):
            npairs += 1
            t = time.perf_counter()
            res = find_isomorphism(A, B)
            slowest = max(slowest, time.perf_counter() - t)
            if not res.exhaustive_none:
                bad.append(f"{res.outcome}")
    dt = time.perf_counter() - t0
    ok = not bad and slowest < 300 and npairs == 28 + 10
    return ok, f"{npairs} pairs, {len(bad)} not NoneExhaustive, slowest pair {slowest:.2f}s, total {dt:.1f}s"


def criterion_6(seeds: int = 5):
    labs = catalog_labels((3,))
    bad = []
    for F in (GF(2), GF(3)):
        for lab in labs:
            A = make(lab, F)
            for s in range(seeds):
                B, _ = random_basis_change(A, s)
                res = find_isomorphism(A, B)
                if not (res.found and verify_isomorphism(A, B, res.matrix)):
                    bad.append(f"{lab} over {F} seed {s}: {res.outcome}")
    return not bad, f"{len(labs)} labels x 2 fields x {seeds} seeds, {len(bad)} failures" + (f": {bad[:3]}" if bad else "")


def criterion_7():
    F = GF(2)
    bad, count = [], 0
    for name, A in catalog_algebras(F, NS):
        if fingerprint(A).dim_derived != 1:
            continue
        count += 1
        m, k = decompose_dim1_derived(A)
        if A.d != m * A.n + 1 + k:
            bad.append(f"{name}: (m,k)=({m},{k})")
            continue
        S, _ = random_basis_change(A, count)
        res = find_isomorphism(S, direct_sum(heisenberg(A.n, m, F), abelian(A.n, k, F)))
        if not res.found:
            bad.append(f"{name}: {res.outcome}")
    return not bad and count > 0, f"{count} members with dim A^2 = 1, {len(bad)} failures" + (f": {bad}" if bad else "")


def criterion_8():
    n = 3
    case1 = label("HplusF", n, m=1, k=1)
    case2 = label("A_n+2_3", n)
    d_n2 = set(catalog_list(n, n + 2))
    bad, tried = [], 0
    for i in range(3, 9):
        A = make(label(f"A_n+3_{i}", n), Q)
        W = center(A) & derived_subalgebra(A)
        lines = list(W.basis) + [tuple(sum(c) for c in zip(*W.basis))]
        want = case1 if i <= 5 else case2
        for v in lines:
            tried += 1
            Qa, _ = quotient(A, Subspace.span(Q, A.d, [v]))
            got = classify(Qa).label
            if got != want or got not in d_n2:
                bad.append(f"A_n+3_{i} / <{v}>: {got}")
    return not bad, f"{tried} central lines in A^2 over i=3..8, {len(bad)} mismatches" + (f": {bad}" if bad else "")


CRITERIA = {
    1: ("Filippov validity of the catalog", criterion_1),
    2: ("class counts", criterion_2),
    3: ("fingerprint separation at n=3, d=6", criterion_3),
    4: ("round-trip recognition, 50 seeds", criterion_4),
    5: ("oracle non-isomorphism over GF(2)", criterion_5),
    6: ("oracle positive control over GF(2), GF(3)", criterion_6),
    7: ("one-dimensional derived algebras are H(n,m) + F(k)", criterion_7),
    8: ("quotient by a central line of A^2", criterion_8),
}


def summary_lines():
    out = []
    for num, (title, _) in CRITERIA.items():
        if num in RESULTS:
            ok, detail = RESULTS[num]
            out.append(f"criterion {num} {'PASS' if ok else 'FAIL'} ({title}): {detail}")
    return out


@pytest.mark.parametrize("num", sorted(CRITERIA))
def test_criterion(num):
    title, fn = CRITERIA[num]
    ok, detail = fn()
    RESULTS[num] = (ok, detail)
    print(f"criterion {num} {'PASS' if ok else 'FAIL'} ({title}): {detail}")
    assert ok, detail


if __name__ == "__main__":
    for num, (title, fn) in CRITERIA.items():
        RESULTS[num] = fn()
        print(summary_lines()[-1], flush=True)
