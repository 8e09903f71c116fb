"""Exact linear algebra over finite rings via the Howell normal form.

Vectors are rows.  Over a local ring (``Z_{p^a}`` or a finite field) the
Howell form is computed directly; over any other ring the problem is split
with :func:`~orthodec.finring.decompose_local`, solved per factor and the
answers lifted back.
"""

from __future__ import annotations

import numpy as np

from ..errors import NoSolution
from ..finring import RingSpec, decompose_local


def _as_matrix(M, ncols: int | None = None) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    if M.ndim == 1:
        M = M.reshape(1, -1) if M.size or ncols is None else M.reshape(0, ncols)
    return M


def _howell_local(M: np.ndarray, ring: RingSpec) -> np.ndarray:
    H = np.array(M, dtype=np.int64, copy=True)
    nrows, ncols = H.shape
    a = ring.length
    r = 0
    for col in range(ncols):
        if r >= H.shape[0]:
            break
        vals = ring.valuation(H[r:, col])
        i = int(np.argmin(vals))
        v = int(vals[i])
        if v >= a:
            continue
        i += r
        if i != r:
            H[[r, i]] = H[[i, r]]
        H[r] = ring.mul(H[r], ring.unit_part_inverse(H[r, col], v))
        pivot_row = H[r]
        if H.shape[0] > r + 1:
            f = ring.exact_quotient(H[r + 1:, col], v)
            H[r + 1:] = ring.sub(H[r + 1:], ring.mul(f[:, None], pivot_row[None, :]))
        if r > 0:
            f = ring.exact_quotient(H[:r, col], v)
            H[:r] = ring.sub(H[:r], ring.mul(f[:, None], pivot_row[None, :]))
        if v > 0:
            ann = ring.mul(ring.pi_power(a - v), pivot_row)
            if np.any(ann):
                H = np.vstack([H, ann[None, :]])
        r += 1
    return H[:r]


def _lift_rows(fac, i: int, rows: np.ndarray) -> np.ndarray:
    return fac.embed(i, rows)


def howell_form(M, ring: RingSpec) -> np.ndarray:
    """Canonical generating rows of the row space of ``M``.

    Over a local ring this is the Howell normal form (reduced row echelon
    form over a field).  Over a non-local ring the per-factor Howell forms
    are embedded back through the factor idempotents and stacked.
    """
    M = _as_matrix(M)
    if ring.is_local:
        return _howell_local(M, ring)
    fac = decompose_local(ring)
    blocks = [
        _lift_rows(fac, i, _howell_local(part, f))
        for i, (f, part) in enumerate(zip(fac.factors, fac.to_product(M)))
    ]
    return np.vstack(blocks) if blocks else M[:0]


def pivot_columns(H: np.ndarray) -> list[int]:
    return [int(np.flatnonzero(row)[0]) for row in H if np.any(row)]


def _left_kernel_local(M: np.ndarray, ring: RingSpec) -> np.ndarray:
    n, k = M.shape
    aug = np.hstack([M, np.broadcast_to(np.eye(n, dtype=np.int64) * ring.one, (n, n))])
    H = _howell_local(aug, ring)
    keep = ~np.any(H[:, :k], axis=1)
    return H[keep, k:]


def kernel(M, ring: RingSpec) -> np.ndarray:
    """Generators (as rows) of the left kernel ``{x : x M = 0}``."""
    M = _as_matrix(M)
    if M.shape[0] == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if ring.is_local:
        return _left_kernel_local(M, ring)
    fac = decompose_local(ring)
    blocks = [
        _lift_rows(fac, i, _left_kernel_local(part, f))
        for i, (f, part) in enumerate(zip(fac.factors, fac.to_product(M)))
    ]
    return np.vstack(blocks)


def _reduce_local(H: np.ndarray, v: np.ndarray, ring: RingSpec, ncols: int):
    """Reduce ``v`` by the rows of ``H`` with pivot among the first ``ncols``.

    Returns ``(remainder, coefficients)`` with ``v = coefficients @ H + remainder``.
    """
    v = v.copy()
    coeffs = np.zeros(H.shape[0], dtype=np.int64)
    for idx, row in enumerate(H):
        nz = np.flatnonzero(row)
        if nz.size == 0:
            continue
        col = int(nz[0])
        if col >= ncols:
            break
        pv = int(ring.valuation(row[col]))
        x = v[col]
        if x == 0 or int(ring.valuation(x)) < pv:
            continue
        # row[col] is exactly pi^pv, so the quotient is exact
        f = ring.exact_quotient(x, pv)
        v = ring.sub(v, ring.mul(f, row))
        coeffs[idx] = f
    return v, coeffs


def _solve_local(G: np.ndarray, b: np.ndarray, ring: RingSpec) -> np.ndarray | None:
    g, k = G.shape
    aug = np.hstack([G, np.eye(g, dtype=np.int64) * ring.one])
    H = _howell_local(aug, ring)
    target = np.concatenate([b, np.zeros(g, dtype=np.int64)])
    rem, _ = _reduce_local(H, target, ring, k)
    if np.any(rem[:k]):
        return None
    return ring.neg(rem[k:])


def solve(G, b, ring: RingSpec) -> np.ndarray:
    """Some ``x`` with ``x G = b``; raises :class:`NoSolution` if none exists."""
    b = np.asarray(b, dtype=np.int64)
    G = _as_matrix(G, ncols=b.shape[-1])
    if G.shape[0] == 0:
        if np.any(b):
            raise NoSolution("nonzero target, empty generator set")
        return np.zeros(0, dtype=np.int64)
    if ring.is_local:
        x = _solve_local(G, b, ring)
        if x is None:
            raise NoSolution("target not in the row space")
        return x
    fac = decompose_local(ring)
    parts = []
    for f, Gi, bi in zip(fac.factors, fac.to_product(G), fac.to_product(b)):
        x = _solve_local(Gi, bi, f)
        if x is None:
            raise NoSolution(f"target not in the row space over factor {f}")
        parts.append(x)
    return fac.from_product(parts)


def in_row_space(v, G, ring: RingSpec) -> bool:
    try:
        solve(G, v, ring)
    except NoSolution:
        return False
    return True


class RowSpace:
    """Row space of a generator matrix with a cached Howell form per factor.

    Membership reduces against the cached forms, which is much cheaper than
    repeated calls to :func:`solve` when many vectors are tested.
    """

    def __init__(self, G, ring: RingSpec, ncols: int):
        self.ring = ring
        self.ncols = ncols
        G = _as_matrix(G, ncols=ncols)
        self.fac = decompose_local(ring)
        self.forms = [
            _howell_local(part, f) for f, part in zip(self.fac.factors, self.fac.to_product(G))
        ]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        for f, H, part in zip(self.fac.factors, self.forms, self.fac.to_product(v)):
            rem, _ = _reduce_local(H, part, f, self.ncols)
            if np.any(rem):
                return False
        return True

    def contains_all(self, V) -> bool:
        return all(self.contains(v) for v in _as_matrix(V, ncols=self.ncols))

    def first_missing(self, V):
        for i, v in enumerate(_as_matrix(V, ncols=self.ncols)):
            if not self.contains(v):
                return i
        return None

    def is_free(self) -> bool:
        """True when every Howell pivot is a unit, i.e. the module is free."""
        for f, H in zip(self.fac.factors, self.forms):
            for row in H:
                nz = np.flatnonzero(row)
                if nz.size and int(f.valuation(row[nz[0]])) != 0:
                    return False
        return True

    def ranks(self) -> list[int]:
        """Number of Howell rows with a unit pivot, per local factor."""
        out = []
        for f, H in zip(self.fac.factors, self.forms):
            out.append(sum(1 for row in H if np.any(row) and int(f.valuation(row[np.flatnonzero(row)[0]])) == 0))
        return out


def membership(v, G, ring: RingSpec) -> bool:
    return RowSpace(G, ring, len(np.asarray(v))).contains(v)


def spans_equal(G1, G2, ring: RingSpec, ncols: int) -> bool:
    return RowSpace(G1, ring, ncols).contains_all(G2) and RowSpace(G2, ring, ncols).contains_all(G1)
