"""Brute-force isomorphism search over small prime fields, and basis scrambling.

The search assigns images to a generating set of ``A`` one generator at a
time.  After each assignment the subalgebra generated so far is closed up on
both sides, so every bracket relation that holds in ``A`` among the assigned
generators is checked in ``B`` as soon as it is determined.  Characteristic
subspaces (central series terms, centralizers, their sums) give cheap
necessary conditions that are applied to all candidate images at once.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass
from itertools import combinations, product

import numpy as np

from .algebra import NLieAlgebra, bracket_eval, change_basis
from .errors import ArityMismatch, FieldMismatch, FieldNotFinite
from .linalg import Matrix, Subspace, _rref_rows, unit_vector
from .scalars import FieldSpec
from .series import (
    center,
    centralizer,
    derived_subalgebra,
    lower_central_series,
    upper_central_series,
)

__all__ = [
    "IsoSearchBudget",
    "IsoResult",
    "find_isomorphism",
    "verify_isomorphism",
    "random_invertible",
    "random_basis_change",
]


@dataclass(frozen=True)
class IsoSearchBudget:
    max_nodes: int = 10**8
    time_limit: float = 300.0


@dataclass(frozen=True)
class IsoResult:
    outcome: str  # "found" | "none-exhaustive" | "budget-exceeded"
    matrix: Matrix | None = None
    nodes: int = 0
    reason: str | None = None

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    @property
    def exhaustive_none(self) -> bool:
        return self.outcome == "none-exhaustive"

    def __str__(self):
        if self.found:
            return "isomorphic"
        if self.exhaustive_none:
            return "not isomorphic (exhaustive)"
        return "undecided (budget exceeded)"


def verify_isomorphism(A: NLieAlgebra, B: NLieAlgebra, T: Matrix) -> bool:
    """True iff T is invertible and T [x_1..x_n]_A = [T x_1, .., T x_n]_B on basis tuples."""
    if T.shape != (A.d, B.d) or not T.is_invertible():
        return False
    return change_basis(B, T) == A


def _invariant_profile(A: NLieAlgebra):
    lcs = lower_central_series(A)
    ucs = upper_central_series(A)
    return (
        tuple(lcs.dims),
        tuple(ucs.dims),
        center(A).dim,
        centralizer(A, derived_subalgebra(A)).dim,
    )


def _characteristic_subspaces(A: NLieAlgebra) -> list[Subspace]:
    """Subspaces fixed by every automorphism, in a canonical order."""
    lcs = list(lower_central_series(A).terms[1:])
    ucs = list(upper_central_series(A).terms[1:])
    subs = [derived_subalgebra(A)] + lcs + ucs
    subs += [centralizer(A, s) for s in lcs if s.dim]
    subs += [z + s for z in ucs for s in lcs]
    return subs


def _batched_rank(M: np.ndarray, p: int) -> np.ndarray:
    """Ranks mod p of a stack of matrices ``M`` of shape (N, r, c)."""
    M = M % p
    N, r, c = M.shape
    rank = np.zeros(N, dtype=np.int64)
    if N == 0 or r == 0:
        return rank
    used = np.zeros((N, r), dtype=bool)
    inv = np.array([0] + [pow(x, -1, p) for x in range(1, p)], dtype=np.int64)
    ar = np.arange(N)
    for col in range(c):
        cand = (M[:, :, col] != 0) & ~used
        has = cand.any(axis=1)
        if not has.any():
            continue
        idx = ar[has]
        piv = cand[idx].argmax(axis=1)
        prow = M[idx, piv, :] * inv[M[idx, piv, col]][:, None] % p
        fac = M[idx, :, col]
        M[idx] = (M[idx] - fac[:, :, None] * prow[:, None, :]) % p
        M[idx, piv, :] = prow
        used[idx, piv] = True
        rank[idx] += 1
    return rank


class _Closure:
    """Plan for closing up the subalgebra generated by a growing prefix of generators.

    ``steps[j]`` lists, for generator j, the brackets of element tuples to
    evaluate: ``("new", idx)`` appends a new element, ``("rel", idx, coeffs)``
    records that the bracket equals a combination of existing elements.
    """

    def __init__(self, A: NLieAlgebra, gens: list[tuple]):
        F, n = A.field, A.n
        self.elements: list[tuple] = []
        self.steps: list[list] = []
        # echelon with coefficient tracking: rows are (vector, combination over elements)
        ech_rows: list[list] = []
        ech_comb: list[list] = []
        ech_piv: list[int] = []
        p = F.p

        def express(v):
            r = list(v)
            comb = [0] * len(self.elements)
            for row, cmb, c in zip(ech_rows, ech_comb, ech_piv):
                f = r[c]
                if f:
                    r = [(a - f * b) % p for a, b in zip(r, row)]
                    for t, x in enumerate(cmb):
                        if x:
                            comb[t] = (comb[t] - f * x) % p
            return r, comb

        def add(v):
            r, comb = express(v)
            lead = next((j for j, x in enumerate(r) if x), None)
            if lead is None:
                # comb expresses -v; negate to get v as a combination
                return False, [(-x) % p for x in comb]
            idx = len(self.elements)
            self.elements.append(tuple(v))
            comb = comb + [1]
            inv = pow(r[lead], -1, p)
            r = [x * inv % p for x in r]
            comb = [x * inv % p for x in comb]
            for row, cmb in zip(ech_rows, ech_comb):
                cmb.append(0)
            ech_rows.append(r)
            ech_comb.append(comb)
            ech_piv.append(lead)
            return True, idx

        processed = set()
        for g in gens:
            start = len(self.elements)
            ok, _ = add(g)
            steps = [("gen",)] if ok else [("dependent",)]
            while True:
                todo = [
                    c
                    for c in combinations(range(len(self.elements)), n)
                    if c not in processed and c[-1] >= start
                ]
                if not todo:
                    break
                for c in todo:
                    processed.add(c)
                    w = bracket_eval(A, *(self.elements[i] for i in c))
                    new, info = add(w)
                    if new:
                        steps.append(("new", c))
                    else:
                        # trailing zeros for elements not yet present
                        steps.append(("rel", c, tuple(info)))
            self.steps.append(steps)


def _form_ranks(C: np.ndarray, p: int, prefix, V: np.ndarray, restrict=None, outmod=None, flat=False):
    """Ranks of the maps ``x -> [prefix, v, x_1, .., x_m]`` for each row v of V.

    ``C`` is the dense (d,)*n + (d,) structure tensor.  ``restrict`` (an
    (r, d) basis) confines the first free slot to a subspace; ``outmod``
    (RREF rows, pivots) reduces outputs modulo a subspace; ``flat`` returns
    the rank of the matrix whose rows are indexed by the first free slot
    instead of the dimension of the span of all values.
    """
    d = C.shape[-1]
    t = C
    for w in prefix:
        t = np.tensordot(w, t, axes=(0, 0)) % p
    m = t.ndim - 2  # free input slots after v
    if restrict is not None:
        t = np.moveaxis(np.tensordot(restrict, t, axes=(1, 1)), 0, 1)
        lead, rest = restrict.shape[0], m - 1
    elif flat:
        lead, rest = d, m - 1
    else:
        lead, rest = 1, m
    combos = [sum(i * d ** (rest - 1 - s) for s, i in enumerate(K)) for K in combinations(range(d), rest)]
    t = t.reshape(d, lead, d**rest, d)[:, :, combos, :] % p
    if outmod is not None:
        R, piv = outmod
        t = (t - t[..., piv] @ R) % p
    M = np.tensordot(V, t, axes=(1, 0)) % p  # (N, lead, combos, d)
    N = len(V)
    if flat:
        M = M.reshape(N, lead, -1).transpose(0, 2, 1)
    else:
        M = M.reshape(N, -1, d)
    return _batched_rank(M, p)


def _dense_tensor(A: NLieAlgebra) -> np.ndarray:
    from itertools import permutations

    from .algebra import perm_sign

    d, n, p = A.d, A.n, A.field.p
    C = np.zeros((d,) * n + (d,), dtype=np.int64)
    for key, vec in A.table.items():
        k0 = tuple(i - 1 for i in key)
        v = np.array(vec, dtype=np.int64)
        for perm in permutations(range(n)):
            C[tuple(k0[i] for i in perm)] = (perm_sign(perm) * v) % p
    return C


def _rref_np(F: FieldSpec, vectors, d):
    rows, piv = _rref_rows(F, [tuple(int(x) for x in v) for v in vectors], d)
    return np.array(rows, dtype=np.int64).reshape(-1, d), list(piv)


class _Search:
    # dense structure tensors up to this many entries enable the rank filters
    TENSOR_LIMIT = 2_000_000

    def __init__(self, A, B, budget, prune, invariants=True):
        self.A, self.B, self.prune = A, B, prune
        self.F: FieldSpec = A.field
        self.p, self.d, self.n = A.field.p, A.d, A.n
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()
        self.exceeded = False
        self.mismatch = False
        d = self.d

        self.pairs = []
        if prune:
            seen = set()
            if invariants:
                chars = zip(_characteristic_subspaces(A), _characteristic_subspaces(B))
            else:
                chars = [(derived_subalgebra(A), derived_subalgebra(B))]
            for sa, sb in chars:
                if sa.dim != sb.dim:
                    self.mismatch = True
                key = (sa.basis, sb.basis)
                if key in seen or sa.dim in (0, d):
                    continue
                seen.add(key)
                self.pairs.append((sa, sb))
        self._cands = None
        self._base = None
        self._tensor = _dense_tensor(B) if d ** (self.n + 1) <= self.TENSOR_LIMIT else None
        self._ranks = prune and invariants and self._tensor is not None and not self.mismatch
        if self._ranks:
            self._prepare_rank_data()
        self.gens = self._choose_generators()
        self.plan = _Closure(A, self.gens)
        self.k = len(self.gens)
        self.Einv = Matrix.from_columns(self.F, self.plan.elements, d).inverse()
        # expected membership of u_j in span(u_0..u_{j-1}) + C_A for every pair
        self.expect = [
            [Subspace.span(self.F, d, list(sa.basis) + self.gens[:j]).contains(self.gens[j]) for sa, _ in self.pairs]
            for j in range(self.k)
        ]
        if self._ranks:
            self._build_specs()

    def _prepare_rank_data(self):
        F, d, n, p = self.F, self.d, self.n, self.p
        self._TA = _dense_tensor(self.A)
        self.restrictA = [np.array(sa.basis, dtype=np.int64).reshape(-1, d) for sa, _ in self.pairs]
        self.restrictB = [np.array(sb.basis, dtype=np.int64).reshape(-1, d) for _, sb in self.pairs]
        self.outA = [_rref_np(F, sa.basis, d) for sa, _ in self.pairs]
        self.outB = [_rref_np(F, sb.basis, d) for _, sb in self.pairs]
        kinds = [(None, None, False)]
        if n >= 3:
            kinds.append((None, None, True))
        kinds += [(c, None, False) for c in range(len(self.pairs))]
        kinds += [(None, c, False) for c in range(len(self.pairs))]
        self.kinds = kinds
        self._single = {}
        self._place = p ** np.arange(d - 1, -1, -1, dtype=np.int64)

    def _ranks_A(self, prefix, g, kind):
        r, o, flat = kind
        return int(_form_ranks(self._TA, self.p, prefix, g[None, :],
                               None if r is None else self.restrictA[r],
                               None if o is None else self.outA[o], flat)[0])

    def _ranks_B(self, prefix, X, kind):
        r, o, flat = kind
        return _form_ranks(self._tensor, self.p, prefix, X,
                           None if r is None else self.restrictB[r],
                           None if o is None else self.outB[o], flat)

    def _single_B(self, kind):
        if kind not in self._single:
            self._single[kind] = self._ranks_B([], self.candidates(), kind)
        return self._single[kind]

    def _build_specs(self):
        """Aut-invariant ranks of bracket maps through the generators.

        For a subset S of earlier generators and the current one, compare
        ranks of [u_S, u_j, x, ..] with the first free slot optionally
        confined to a characteristic subspace, or with values taken modulo
        one.  Values for S empty are tabulated once over all candidates.
        """
        n = self.n
        G = [np.array(g, dtype=np.int64) for g in self.gens]
        self.specs = []  # per level: list of (S, kind, expected)
        for j, g in enumerate(G):
            checks = []
            for size in range(0, n - 1):
                for S in combinations(range(j), size):
                    for kind in self.kinds:
                        if kind[2] and n - size - 1 < 2:
                            continue
                        checks.append((S, kind, self._ranks_A([G[i] for i in S], g, kind)))
            self.specs.append(checks)

    def _single_matches(self, u) -> int:
        """Number of candidate images agreeing with ``u`` on all one-element invariants."""
        X = self._reduced_candidates()
        pos = X @ self._place
        g = np.array(u, dtype=np.int64)
        keep = np.ones(len(X), dtype=bool)
        for sa, sb in self.pairs:
            R, piv = _rref_np(self.F, sb.basis, self.d)
            keep &= ~np.any((X - X[:, piv] @ R) % self.p, axis=1) == sa.contains(u)
        for kind in self.kinds:
            keep &= self._single_B(kind)[pos] == self._ranks_A([], g, kind)
        return int(keep.sum())

    def _choose_generators(self):
        A, F, d = self.A, self.F, self.d
        piv = set(derived_subalgebra(A).pivots)
        gens = [unit_vector(F, d, j) for j in range(d) if j not in piv]
        if self._ranks:
            # fail first: generators whose invariants match the fewest candidates
            gens.sort(key=self._single_matches)
        else:
            gens.sort(key=lambda u: sum(sa.contains(u) for sa, _ in self.pairs))
        # a non-nilpotent algebra need not be generated by a complement of A^2
        while True:
            span = Subspace.span(F, d, _Closure(A, gens).elements)
            if span.dim == d:
                return gens
            gens.append(next(unit_vector(F, d, j) for j in range(d) if not span.contains(unit_vector(F, d, j))))

    def _bracket_B(self, vecs):
        p = self.p
        if self._tensor is not None:
            t = self._tensor
            for v in vecs:
                t = np.tensordot(v, t, axes=(0, 0)) % p
            return t
        out = bracket_eval(self.B, *(tuple(int(x) for x in v) for v in vecs))
        return np.array(out, dtype=np.int64)

    def candidates(self):
        if self._cands is None:
            self._cands = np.array(list(product(range(self.p), repeat=self.d)), dtype=np.int64).reshape(-1, self.d)
        return self._cands

    def _reduced_candidates(self):
        """One representative per coset of Z(B) & B^2, namely the reduced one.

        Shifting a generator image by an element of Z(B) & B^2 leaves all
        brackets unchanged and keeps the map bijective, so nothing is lost.
        """
        if self._base is None:
            X = self.candidates()
            K = center(self.B) & derived_subalgebra(self.B)
            if K.dim:
                X = X[~np.any(X[:, list(K.pivots)], axis=1)]
            self._base = X
        return self._base

    def _filter(self, j, images):
        if not self.prune:
            return self.candidates()
        X = self._filter_subspaces(j, images, self._reduced_candidates())
        if not self._ranks:
            return X
        for S, kind, want in self.specs[j]:
            if not len(X):
                break
            if S:
                X = X[self._ranks_B([images[i] for i in S], X, kind) == want]
            else:
                X = X[self._single_B(kind)[X @ self._place] == want]
        return X

    def _filter_subspaces(self, j, images, X):
        p, d = self.p, self.d
        keep = np.ones(len(X), dtype=bool)
        for (_, sb), want in zip(self.pairs, self.expect[j]):
            R, piv = _rref_np(self.F, list(sb.basis) + list(images), d)
            inside = ~np.any((X - X[:, piv] @ R) % p, axis=1) if len(R) else ~np.any(X, axis=1)
            keep &= inside == want
        return X[keep]

    def _close(self, j, F_list, ech):
        """Extend the images through step j; False on any inconsistency."""
        p = self.p
        for step in self.plan.steps[j][1:]:
            b = self._bracket_B([F_list[i] for i in step[1]])
            if step[0] == "new":
                if not ech.add(b):
                    return False
                F_list.append(b)
            else:
                acc = np.zeros(self.d, dtype=np.int64)
                for t, x in enumerate(step[2]):
                    if x:
                        acc = (acc + x * F_list[t]) % p
                if not np.array_equal(acc, b):
                    return False
        return True

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            self.exceeded = True
        elif self.nodes % 64 == 0 and time.monotonic() - self.t0 > self.budget.time_limit:
            self.exceeded = True
        return self.exceeded

    def _leaf(self, F_list):
        Fm = Matrix.from_columns(self.F, [tuple(int(x) for x in v) for v in F_list], self.d)
        T = Fm @ self.Einv
        return T if verify_isomorphism(self.A, self.B, T) else None

    def run(self):
        if self.d == 0:
            return Matrix(self.F, (), 0)
        if self.prune:
            return self._dfs(0, [], _Echelon(self.p, self.d))
        return self._dfs_unpruned(0, [])

    def _dfs(self, j, gen_images, ech):
        if j == self.k:
            return self._leaf(ech.images)
        for v in self._filter(j, gen_images):
            if self._tick():
                return None
            e2 = ech.copy()
            if self.plan.steps[j][0][0] == "gen":
                if not e2.add(v):
                    continue
                e2.images.append(v)
            if not self._close(j, e2.images, e2):
                continue
            found = self._dfs(j + 1, gen_images + [v], e2)
            if found is not None or self.exceeded:
                return found
        return None

    def _dfs_unpruned(self, j, gen_images):
        if j == self.k:
            ech = _Echelon(self.p, self.d)
            for jj, v in enumerate(gen_images):
                if self.plan.steps[jj][0][0] == "gen":
                    ech.add(v)
                    ech.images.append(v)
                if not self._close(jj, ech.images, _Echelon(self.p, self.d, track=False)):
                    return None
            if len(ech.images) != self.d:
                return None
            return self._leaf(ech.images)
        for v in self.candidates():
            if self._tick():
                return None
            found = self._dfs_unpruned(j + 1, gen_images + [v])
            if found is not None or self.exceeded:
                return found
        return None


class _Echelon:
    """Incremental independence test mod p, carrying the image list along."""

    def __init__(self, p, d, track=True):
        self.p, self.d, self.track = p, d, track
        self.rows: list[np.ndarray] = []
        self.piv: list[int] = []
        self.images: list[np.ndarray] = []

    def copy(self):
        e = _Echelon(self.p, self.d, self.track)
        e.rows, e.piv, e.images = list(self.rows), list(self.piv), list(self.images)
        return e

    def add(self, v) -> bool:
        if not self.track:
            return True
        p = self.p
        r = np.asarray(v, dtype=np.int64) % p
        for row, c in zip(self.rows, self.piv):
            if r[c]:
                r = (r - r[c] * row) % p
        nz = np.flatnonzero(r)
        if not len(nz):
            return False
        lead = int(nz[0])
        r = r * pow(int(r[lead]), -1, p) % p
        self.rows.append(r)
        self.piv.append(lead)
        return True


def find_isomorphism(A: NLieAlgebra, B: NLieAlgebra, budget: IsoSearchBudget | None = None,
                     *, prune: bool = True, invariants: bool = True) -> IsoResult:
    """Search for an isomorphism T: A -> B over a prime field.

    ``invariants=False`` drops the invariant comparison and the invariant
    filters, keeping only independence modulo B^2 and bracket consistency,
    so the outcome does not lean on the fingerprint.  ``prune=False``
    enumerates every generator image and checks only at the leaves; it is
    meant for cross-checking on tiny instances.
    """
    if A.n != B.n:
        raise ArityMismatch(f"arity {A.n} vs {B.n}")
    if not A.field.is_finite or not B.field.is_finite:
        raise FieldNotFinite("isomorphism search needs a finite prime field; reduce mod p first")
    if A.field != B.field:
        raise FieldMismatch(f"{A.field} vs {B.field}")
    budget = budget or IsoSearchBudget()
    if A.d != B.d:
        return IsoResult("none-exhaustive", reason="dimension mismatch")
    if prune and invariants and _invariant_profile(A) != _invariant_profile(B):
        return IsoResult("none-exhaustive", reason="invariant mismatch")
    search = _Search(A, B, budget, prune, invariants)
    if search.mismatch:
        return IsoResult("none-exhaustive", reason="invariant mismatch")
    T = search.run()
    if T is not None:
        return IsoResult("found", T, search.nodes)
    if search.exceeded:
        return IsoResult("budget-exceeded", nodes=search.nodes)
    return IsoResult("none-exhaustive", nodes=search.nodes, reason="search exhausted")


def random_invertible(field: FieldSpec, d: int, seed: int) -> Matrix:
    """Product of random elementary matrices, reproducible from ``seed``.

    Over Q the factors are permutations, sign changes and row additions with
    multipliers in {-2, -1, 1, 2}, so T has determinant +-1 and small
    integer entries.
    """
    rng = random.Random(seed)
    F = field
    rows = [list(unit_vector(F, d, i)) for i in range(d)]
    if d == 0:
        return Matrix(F, (), 0)
    perm = list(range(d))
    rng.shuffle(perm)
    rows = [rows[i] for i in perm]
    for r in rows:
        s = rng.randrange(1, F.p) if F.is_finite else rng.choice((1, -1))
        r[:] = [F.mul(F(s), x) for x in r]
    n_add = d * d if F.is_finite else 2 * d
    for _ in range(n_add if d > 1 else 0):
        i, j = rng.sample(range(d), 2)
        c = F(rng.randrange(1, F.p)) if F.is_finite else F(rng.choice((-2, -1, 1, 2)))
        rows[i] = [F.add(a, F.mul(c, b)) for a, b in zip(rows[i], rows[j])]
    return Matrix(F, tuple(tuple(r) for r in rows), d)


def random_basis_change(A: NLieAlgebra, seed: int) -> tuple[NLieAlgebra, Matrix]:
    """``(change_basis(A, T), T)`` for a reproducible random invertible T."""
    T = random_invertible(A.field, A.d, seed)
    return change_basis(A, T), T
