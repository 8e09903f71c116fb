"""Matrix Lie algebras gl, sl, sp, so over a finite ring.

Algebra elements are coordinate vectors over :meth:`AlgebraSpec.basis`;
matrices are reconstructed on demand.  All arrays hold ring codes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import EvenCharacteristic, NotClosed, NotInAlgebra, UnsupportedFamily
from ..finring import RingSpec, decompose_local
from ..gf2m import SympBasis, SympVector, build_symp_basis, enumerate_Q

FAMILIES = ("gl", "sl", "sp", "so")


@dataclass(frozen=True, eq=False)
class Matrix:
    """Dense matrix over a ring (row-major codes)."""

    ring: RingSpec
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "data", np.asarray(self.data, dtype=np.int64))

    @classmethod
    def from_ints(cls, ring: RingSpec, rows) -> "Matrix":
        return cls(ring, ring.from_int(np.asarray(rows, dtype=np.int64)))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Matrix":
        return cls(ring, np.eye(n, dtype=np.int64) * ring.one)

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, self.ring.matmul(self.data, other.data))

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, self.ring.add(self.data, other.data))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(self.ring, self.ring.sub(self.data, other.data))

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.ring.neg(self.data))

    def scale(self, c) -> "Matrix":
        return Matrix(self.ring, self.ring.mul(c, self.data))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.ring, self.data.T)

    def trace(self) -> int:
        return self.ring.trace(self.data)

    def is_zero(self) -> bool:
        return not np.any(self.data)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.ring == other.ring
            and self.data.shape == other.data.shape
            and bool(np.all(self.data == other.data))
        )

    def __repr__(self) -> str:
        rows = [" ".join(self.ring.format_elem(x) for x in row) for row in self.data]
        return f"Matrix({self.ring}, [{' | '.join(rows)}])"


def bracket(A: Matrix, B: Matrix) -> Matrix:
    return A @ B - B @ A


def _require_odd(ring: RingSpec, what: str) -> None:
    if ring.char % 2 == 0:
        raise EvenCharacteristic(f"{what} needs odd characteristic, {ring} has char {ring.char}")


def _power_of_two_exponent(n: int) -> int | None:
    """``m`` with ``n = 2^{m+1}``, or None."""
    if n >= 2 and n & (n - 1) == 0:
        return n.bit_length() - 2
    return None


# -- generalized Pauli matrices ---------------------------------------------

_D = np.array([[1, 0], [0, -1]])
_P = np.array([[0, 1], [1, 0]])


def jw_int(a, b) -> np.ndarray:
    """Integer matrix of ``J_(a1,b1) ⊗ ... ⊗ J_(a_{m+1},b_{m+1})``, ``J_(a,b) = D^a P^b``."""
    out = np.ones((1, 1), dtype=np.int64)
    for ai, bi in zip(a, b):
        J = np.linalg.matrix_power(_D, ai) @ np.linalg.matrix_power(_P, bi)
        out = np.kron(out, J)
    return out


def jw_matrix(w: SympVector, basis: SympBasis, ring: RingSpec) -> Matrix:
    _require_odd(ring, "J_w over a ring")
    a, b = basis.coords(w)
    return Matrix.from_ints(ring, jw_int(a, b))


def sp_form(k: int) -> np.ndarray:
    """Integer ``K = [[0, I_k], [-I_k, 0]]``."""
    K = np.zeros((2 * k, 2 * k), dtype=np.int64)
    K[:k, k:] = np.eye(k, dtype=np.int64)
    K[k:, :k] = -np.eye(k, dtype=np.int64)
    return K


def in_sp(X: Matrix, k: int) -> bool:
    """Whether ``X K + K X^T = 0``."""
    if X.shape != (2 * k, 2 * k):
        raise ValueError(f"expected a {2 * k}x{2 * k} matrix")
    K = Matrix.from_ints(X.ring, sp_form(k))
    return (X @ K + K @ X.T).is_zero()


@dataclass(frozen=True)
class StructureConstants:
    """``table[i, j, k]``: coefficient of ``v_k`` in ``[v_i, v_j]``."""

    ring: RingSpec
    table: np.ndarray

    @property
    def rank(self) -> int:
        return self.table.shape[0]

    def bracket(self, x, y) -> np.ndarray:
        """Bracket of coordinate vectors (broadcasts over leading axes of ``x``)."""
        R = self.ring
        r = self.rank
        xy = R.matmul(np.asarray(x)[..., None], np.asarray(y)[..., None, :])  # outer
        return R.matmul(xy.reshape(*xy.shape[:-2], r * r), self.table.reshape(r * r, r))


def ad_matrix(x, sc: StructureConstants) -> np.ndarray:
    """Matrix of ``[x, .]`` on coordinates: column ``j`` is ``[x, v_j]``.

    ``x`` may carry leading batch axes.
    """
    r = sc.rank
    x = np.asarray(x, dtype=np.int64)
    rows = sc.ring.matmul(x, sc.table.reshape(r, r * r)).reshape(*x.shape[:-1], r, r)
    return np.swapaxes(rows, -1, -2)


def killing(x, y, sc: StructureConstants) -> int:
    """``Tr(ad x · ad y)``."""
    R = sc.ring
    return R.trace(R.matmul(ad_matrix(x, sc), ad_matrix(y, sc)))


def killing_gram(X, Y, sc: StructureConstants) -> np.ndarray:
    """Killing values of every row of ``X`` against every row of ``Y``."""
    R = sc.ring
    r = sc.rank
    adX = ad_matrix(np.atleast_2d(X), sc).reshape(-1, r * r)
    adYt = np.swapaxes(ad_matrix(np.atleast_2d(Y), sc), -1, -2).reshape(-1, r * r)
    return R.matmul(adX, adYt.T)


def killing_coefficient(family: str, size: int) -> int:
    """Integer ``c`` with ``K(A, B) = c·tr(AB)`` on the given matrix algebra.

    so_N: ``N - 2`` (i.e. ``2n - 2`` on so_{2n}, ``2n - 3`` on so_{2n-1});
    sp_N: ``N + 2``.
    """
    if family == "so":
        return size - 2
    if family == "sp":
        return size + 2
    raise UnsupportedFamily(f"no closed-form Killing coefficient for {family}")


def killing_closed(family: str, size: int, A: Matrix, B: Matrix) -> int:
    c = killing_coefficient(family, size)
    return int(A.ring.mul(A.ring.from_int(c), (A @ B).trace()))


@dataclass(frozen=True)
class AlgebraSpec:
    """One of gl_n, sl_n, sp_n (n even), so_n over ``ring``.

    sp of size ``2^{m+1}`` uses the basis ``{J_w : w ∈ Q}``; other sp sizes
    use the block basis ``[[A, B], [C, -A^T]]`` with ``B, C`` symmetric.
    """

    family: str
    n: int
    ring: RingSpec

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedFamily(f"unknown family {self.family!r}")
        if self.n < 1:
            raise ValueError("matrix size must be positive")
        if self.family == "sp" and self.n % 2:
            raise ValueError("sp needs an even matrix size")
        if self.family == "so" and self.n < 2:
            raise ValueError("so needs size >= 2")
        if self.family in ("sp", "so"):
            _require_odd(self.ring, f"{self.family}_{self.n}")

    def __str__(self) -> str:
        return f"{self.family}_{self.n}({self.ring})"

    def over(self, ring: RingSpec) -> "AlgebraSpec":
        return AlgebraSpec(self.family, self.n, ring)

    @property
    def rank(self) -> int:
        n = self.n
        return {
            "gl": n * n,
            "sl": n * n - 1,
            "sp": (n // 2) * (n + 1),
            "so": n * (n - 1) // 2,
        }[self.family]

    @cached_property
    def uses_pauli_basis(self) -> bool:
        return self.family == "sp" and _power_of_two_exponent(self.n) is not None

    @cached_property
    def pauli_labels(self) -> list[SympVector]:
        """Q in enumeration order (indexes the sp basis of size 2^{m+1})."""
        m = _power_of_two_exponent(self.n)
        return enumerate_Q(m, build_symp_basis(m, allow_large=True))

    @cached_property
    def _basis_and_dual(self) -> tuple[np.ndarray, np.ndarray]:
        n, R = self.n, self.ring
        N2 = n * n
        mats, duals = [], []

        def unit(i, j):
            E = np.zeros((n, n), dtype=np.int64)
            E[i, j] = 1
            return E

        def dual_at(*pairs):
            d = np.zeros(N2, dtype=np.int64)
            for (i, j), c in pairs:
                d[i * n + j] = c
            return d

        fam = self.family
        if fam == "gl":
            for i in range(n):
                for j in range(n):
                    mats.append(unit(i, j))
                    duals.append(dual_at(((i, j), 1)))
        elif fam == "sl":
            for i in range(n):
                for j in range(n):
                    if i != j:
                        mats.append(unit(i, j))
                        duals.append(dual_at(((i, j), 1)))
            for i in range(n - 1):
                mats.append(unit(i, i) - unit(i + 1, i + 1))
                # coefficient of h_i is d_0 + ... + d_i
                duals.append(dual_at(*(((l, l), 1) for l in range(i + 1))))
        elif fam == "so":
            for i in range(n):
                for j in range(i + 1, n):
                    mats.append(unit(i, j) - unit(j, i))
                    duals.append(dual_at(((i, j), 1)))
        elif self.uses_pauli_basis:
            m = _power_of_two_exponent(n)
            sb = build_symp_basis(m, allow_large=True)
            inv_n = int(R.inv(R.from_int(n)))
            for w in self.pauli_labels:
                a, b = sb.coords(w)
                J = jw_int(a, b)
                mats.append(J)
                # J^T J = I, so <J_w, X> / n recovers the coefficient
                duals.append(R.mul(inv_n, R.from_int(J.reshape(-1))))
        else:
            k = n // 2
            for i in range(k):
                for j in range(k):
                    mats.append(unit(i, j) - unit(k + j, k + i))
                    duals.append(dual_at(((i, j), 1)))
            for i in range(k):
                for j in range(i, k):
                    S = unit(i, k + j) + (unit(j, k + i) if i != j else 0)
                    mats.append(S)
                    duals.append(dual_at(((i, k + j), 1)))
            for i in range(k):
                for j in range(i, k):
                    S = unit(k + i, j) + (unit(k + j, i) if i != j else 0)
                    mats.append(S)
                    duals.append(dual_at(((k + i, j), 1)))
        basis = R.from_int(np.array(mats, dtype=np.int64))
        dual = R.from_int(np.array(duals, dtype=np.int64)).T.copy()
        assert basis.shape[0] == self.rank
        return basis, dual

    @property
    def basis(self) -> np.ndarray:
        """Basis matrices as an array of shape ``(rank, n, n)``."""
        return self._basis_and_dual[0]

    def standard_basis(self) -> list[Matrix]:
        return [Matrix(self.ring, B) for B in self.basis]

    def to_matrix(self, coords) -> np.ndarray:
        """Matrix (or batch of matrices) of coordinate vector(s)."""
        R = self.ring
        c = np.asarray(coords, dtype=np.int64)
        flat = R.matmul(c, self.basis.reshape(self.rank, -1))
        return flat.reshape(*c.shape[:-1], self.n, self.n)

    def coords(self, X) -> np.ndarray:
        """Coordinates of matrix (or batch) ``X``; raises NotInAlgebra off the algebra."""
        R = self.ring
        if isinstance(X, Matrix):
            X = X.data
        X = np.asarray(X, dtype=np.int64)
        flat = X.reshape(*X.shape[:-2], self.n * self.n)
        c = R.matmul(flat, self._basis_and_dual[1])
        if np.any(self.to_matrix(c) != X):
            raise NotInAlgebra(f"matrix is not in {self}")
        return c

    @cached_property
    def structure_constants(self) -> StructureConstants:
        R = self.ring
        B = self.basis
        r = self.rank
        table = np.zeros((r, r, r), dtype=np.int64)
        chunk = max(1, 4096 // r)
        for start in range(0, r, chunk):
            Bi = B[start:start + chunk, None]
            prod1 = R.matmul(Bi, B[None])
            prod2 = R.matmul(B[None], Bi)
            br = R.sub(prod1, prod2)
            try:
                table[start:start + chunk] = self.coords(br)
            except NotInAlgebra as exc:
                raise NotClosed(f"basis of {self} not closed under bracket") from exc
        return StructureConstants(R, table)


def standard_basis(spec: AlgebraSpec) -> list[Matrix]:
    return spec.standard_basis()


def structure_constants(spec: AlgebraSpec) -> StructureConstants:
    return spec.structure_constants


# -- the product isomorphism -------------------------------------------------

def phi_decompose(A: Matrix) -> tuple[Matrix, ...]:
    """Entrywise image of ``A`` under ``R -> R_1 x ... x R_t``."""
    fac = decompose_local(A.ring)
    return tuple(Matrix(f, part) for f, part in zip(fac.factors, fac.to_product(A.data)))


def phi_compose(parts, ring: RingSpec) -> Matrix:
    fac = decompose_local(ring)
    if tuple(p.ring for p in parts) != fac.factors:
        raise ValueError("parts do not match the local factors of the ring")
    return Matrix(ring, fac.from_product([p.data for p in parts]))
