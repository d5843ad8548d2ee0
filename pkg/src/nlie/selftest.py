"""Quick built-in property checks behind ``nlie selftest``."""
from __future__ import annotations

from .algebra import filippov_check
from .catalog import a_nk, catalog_list, heisenberg, l6_22, label, make
from .classify import classify, fingerprint
from .iso import random_basis_change
from .scalars import GF, Q

__all__ = ["FINGERPRINTS_N3_D6", "catalog_algebras", "run_selftest"]

# hand-checked invariants (n, d, dim A^2, class, dim Z, dim centralizer(A^2))
FINGERPRINTS_N3_D6 = {
    "A_n+3_1": (3, 6, 0, 1, 6, 6),
    "A_n+3_2": (3, 6, 1, 2, 3, 6),
    "A_n+3_3": (3, 6, 2, 3, 1, 4),
    "A_n+3_4": (3, 6, 2, 3, 2, 4),
    "A_n+3_5": (3, 6, 2, 2, 2, 6),
    "A_n+3_6": (3, 6, 3, 4, 1, 4),
    "A_n+3_7": (3, 6, 3, 4, 1, 3),
    "A_n+3_8": (3, 6, 3, 3, 2, 3),
}


def catalog_labels(ns=(2, 3, 4)):
    """Every catalog label with d <= n+3, plus the class-2 labels at d = n+4."""
    out = []
    for n in ns:
        for d in range(n, n + 4):
            out += catalog_list(n, d)
        out += catalog_list(n, n + 4, 2)
    return out


def catalog_algebras(field, ns=(2, 3, 4)):
    """(name, algebra) for every catalog constructor at the given arities."""
    out = [(str(lab) + f" n={lab.n}", make(lab, field)) for lab in catalog_labels(ns)]
    for n in ns:
        m = 1
        while m * n + 1 <= 9:
            out.append((f"H n={n} m={m}", heisenberg(n, m, field)))
            m += 1
        for k in range(3, n + 2):
            out.append((f"A_nk n={n} k={k}", a_nk(n, k, field)))
    for eps in (0, 1, 2):
        out.append((f"L6_22 eps={eps}", l6_22(eps, field)))
    return out


def run_selftest(out: list[str], seeds: int = 10) -> bool:
    ok = True

    def report(name, passed, detail=""):
        nonlocal ok
        ok &= passed
        out.append(f"{'PASS' if passed else 'FAIL'} {name}{': ' + detail if detail else ''}")

    for F in (Q, GF(2), GF(3), GF(5)):
        bad = [name for name, A in catalog_algebras(F) if not filippov_check(A).ok]
        report(f"Filippov identity on catalog over {F}", not bad, ", ".join(bad))

    bad = []
    for name, want in FINGERPRINTS_N3_D6.items():
        got = tuple(fingerprint(make(label(name, 3))))
        if got != want:
            bad.append(f"{name} {got} != {want}")
    report("fingerprint table at n=3, d=6", not bad, "; ".join(bad))

    for F in (Q, GF(5)):
        bad = []
        for lab in catalog_labels():
            A = make(lab, F)
            for s in range(seeds):
                B, _ = random_basis_change(A, s)
                v = classify(B, validate=False)
                if v.label != lab:
                    bad.append(f"{lab} n={lab.n} seed {s}: {v}")
                    break
        report(f"round-trip classification over {F} ({seeds} seeds)", not bad, "; ".join(bad[:5]))
    return ok
