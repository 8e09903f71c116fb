"""Brute-force baselines for tiny instances.

Everything here enumerates module elements outright, so it shares no code
path with the Howell-form machinery it is used to check.  Budgets are hard
limits: an instance over budget raises :class:`BudgetExceeded` rather than
being sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .cartan import Submodule
from .errors import BudgetExceeded
from .gf2m import BinaryField
from .liealg.algebra import AlgebraSpec, StructureConstants, killing_gram
from .liealg.linalg import howell_form


@dataclass(frozen=True)
class SearchBudget:
    max_module_elements: int = 2**16
    max_subalgebra_candidates: int = 20000

    def __post_init__(self):
        if self.max_module_elements < 1 or self.max_subalgebra_candidates < 1:
            raise ValueError("budgets must be positive")


def _module_size(A: AlgebraSpec) -> int:
    return A.ring.size ** A.rank


def _check_budget(A: AlgebraSpec, budget: SearchBudget) -> None:
    size = _module_size(A)
    if size > budget.max_module_elements:
        raise BudgetExceeded(f"{A} has {size} elements, budget is {budget.max_module_elements}")


def _all_elements(A: AlgebraSpec) -> np.ndarray:
    """Every coordinate vector, row ``i`` being the base-|R| digits of ``i``."""
    q, r = A.ring.size, A.rank
    idx = np.arange(q**r, dtype=np.int64)
    return (idx[:, None] // q ** np.arange(r, dtype=np.int64)) % q


def _encode(V: np.ndarray, q: int) -> np.ndarray:
    return (np.asarray(V, dtype=np.int64) * q ** np.arange(V.shape[-1], dtype=np.int64)).sum(axis=-1)


def _span_codes(G: np.ndarray, A: AlgebraSpec) -> np.ndarray:
    """Codes of every R-combination of the rows of ``G``, by closure."""
    R = A.ring
    elems = R.elements()
    S = np.zeros((1, A.rank), dtype=np.int64)
    for g in G:
        multiples = R.mul(elems[:, None], g[None, :])
        S = R.add(S[:, None, :], multiples[None, :, :]).reshape(-1, A.rank)
        S = np.unique(S, axis=0)
    return np.unique(_encode(S, R.size))


def brute_normalizer(H: Submodule, sc: StructureConstants | None = None,
                     budget: SearchBudget = SearchBudget()) -> Submodule:
    """``{x : [x, g] ∈ H for all generators g}`` by enumerating the ambient module."""
    A = H.ambient
    _check_budget(A, budget)
    sc = sc if sc is not None else A.structure_constants
    R = A.ring
    X = _all_elements(A)
    H_codes = _span_codes(H.generators, A)
    keep = np.ones(len(X), dtype=bool)
    for g in H.generators:
        br = sc.bracket(X, np.broadcast_to(g, X.shape))
        keep &= np.isin(_encode(br, R.size), H_codes)
    N = X[keep]
    return Submodule(A, howell_form(N, R))


def submodule_codes(H: Submodule) -> np.ndarray:
    """Sorted codes of every element of ``H``; two submodules are equal iff these agree."""
    return _span_codes(H.generators, H.ambient)


# -- exhaustive ODAC search ----------------------------------------------------------

def _submodule_lattice(A: AlgebraSpec, budget: SearchBudget) -> list[frozenset]:
    """Every submodule of the ambient module as a set of element codes."""
    R = A.ring
    X = _all_elements(A)
    q = R.size
    elems = R.elements()
    cyclic = {}
    for code, x in enumerate(X):
        c = frozenset(int(t) for t in _encode(R.mul(elems[:, None], x[None, :]), q))
        cyclic.setdefault(c, code)
    cyclic_sets = list(cyclic)

    def join(S: frozenset, T: frozenset) -> frozenset:
        s = X[np.fromiter(S, dtype=np.int64)]
        t = X[np.fromiter(T, dtype=np.int64)]
        sums = R.add(s[:, None, :], t[None, :, :]).reshape(-1, A.rank)
        return frozenset(int(v) for v in np.unique(_encode(sums, q)))

    seen = {frozenset([0])}
    frontier = [frozenset([0])]
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic_sets:
                if C <= S:
                    continue
                T = join(S, C)
                if T not in seen:
                    seen.add(T)
                    nxt.append(T)
                    if len(seen) > budget.max_subalgebra_candidates:
                        raise BudgetExceeded(f"more than {budget.max_subalgebra_candidates} submodules")
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), sorted(S)))


def _abelian_cartans(A: AlgebraSpec, sc: StructureConstants, budget: SearchBudget) -> list[np.ndarray]:
    """Sorted code arrays of the abelian self-normalizing submodules."""
    R = A.ring
    q = R.size
    X = _all_elements(A)
    n = len(X)
    br = sc.bracket(X[:, None, :], X[None, :, :])  # (n, n, r)
    br_codes = _encode(br, q)
    out = []
    for S in _submodule_lattice(A, budget):
        if len(S) == 1:
            continue
        idx = np.fromiter(sorted(S), dtype=np.int64)
        if np.any(br_codes[np.ix_(idx, idx)] != 0):
            continue
        inside = np.zeros(n, dtype=bool)
        inside[idx] = True
        # x normalizes S iff [x, s] ∈ S for every s ∈ S
        norm = np.all(inside[br_codes[:, idx]], axis=1)
        if np.array_equal(norm, inside):
            out.append(idx)
    return out


def brute_odac_search(spec: AlgebraSpec, budget: SearchBudget = SearchBudget()) -> bool:
    """Whether ``spec`` is a direct sum of pairwise Killing-orthogonal abelian
    Cartan submodules, by exhausting all families."""
    _check_budget(spec, budget)
    sc = spec.structure_constants
    R = spec.ring
    q = R.size
    X = _all_elements(spec)
    n = len(X)
    cands = _abelian_cartans(spec, sc, budget)
    if not cands:
        return False
    gram = killing_gram(X, X, sc)
    k = len(cands)
    orth = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(i, k):
            orth[i, j] = orth[j, i] = not np.any(gram[np.ix_(cands[i], cands[j])])

    def add_sets(S: np.ndarray, T: np.ndarray) -> np.ndarray:
        sums = R.add(X[S][:, None, :], X[T][None, :, :]).reshape(-1, spec.rank)
        return np.unique(_encode(sums, q))

    def extend(start: int, chosen: list[int], S: np.ndarray) -> bool:
        if len(S) == n:
            return True
        for c in range(start, k):
            if not all(orth[c, d] for d in chosen):
                continue
            T = add_sets(S, cands[c])
            # direct iff no collapse: |S + C| = |S| |C|
            if len(T) != len(S) * len(cands[c]):
                continue
            if extend(c + 1, chosen + [c], T):
                return True
        return False

    return extend(0, [], np.array([0], dtype=np.int64))


# -- |Q| by direct evaluation -----------------------------------------------------------

def brute_count_Q(m: int) -> int:
    """Number of ``(alpha, beta)`` with ``q = 1``, coordinates read off a
    trace-dual basis found by exhaustive search."""
    if m < 0 or m > 6:
        raise ValueError("brute_count_Q supports 0 <= m <= 6")
    F = BinaryField(m)
    d = F.degree
    e = [1 << i for i in range(d)]
    tr = [F.trace(x) for x in range(F.order)]
    f = []
    for j in range(d):
        f.append(next(y for y in range(F.order)
                      if all(tr[F.mul(e[i], y)] == (i == j) for i in range(d))))
    count = 0
    for alpha, beta in product(range(F.order), repeat=2):
        a = [tr[F.mul(alpha, fi)] for fi in f]
        b = [tr[F.mul(beta, ei)] for ei in e]
        count += (sum(x * y for x, y in zip(a, b)) + a[0] + b[0]) % 2
    return count
