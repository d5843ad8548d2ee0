"""Small independent oracles shared by the tests."""
from __future__ import annotations

from itertools import combinations

from nlie.algebra import bracket_eval
from nlie.linalg import unit_vector


def brute_filippov_ok(A) -> bool:
    """Check the Filippov identity on all basis tuples using only bracket_eval."""
    F, d, n = A.field, A.d, A.n
    e = [unit_vector(F, d, j) for j in range(d)]
    for x in combinations(range(d), n):
        xs = [e[i] for i in x]
        for y in combinations(range(d), n - 1):
            ys = [e[i] for i in y]
            lhs = bracket_eval(A, bracket_eval(A, *xs), *ys)
            rhs = [F.zero] * d
            for i in range(n):
                args = list(xs)
                args[i] = bracket_eval(A, xs[i], *ys)
                rhs = [F.add(a, b) for a, b in zip(rhs, bracket_eval(A, *args))]
            if tuple(rhs) != tuple(lhs):
                return False
    return True


def vec_add(F, u, v):
    return tuple(F.add(a, b) for a, b in zip(u, v))


def vec_scale(F, c, u):
    return tuple(F.mul(c, a) for a in u)
