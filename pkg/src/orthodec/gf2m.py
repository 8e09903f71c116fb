"""The field F_{2^{m+1}} and the symplectic space W = F ⊕ F over F_2.

Field elements are ints whose bit ``i`` is the coefficient of ``x^i``.
Vectors of ``W`` are :class:`SympVector` pairs ``(alpha; beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Union

from .finring import default_modulus

# index of the line W_inf; serialised as "inf"
INFINITY = "inf"

DEFAULT_MAX_M = 6


class SympVector(NamedTuple):
    alpha: int
    beta: int

    def __add__(self, other):
        return SympVector(self.alpha ^ other.alpha, self.beta ^ other.beta)

    def text(self, n_bits: int) -> str:
        """``(<alpha-bits>;<beta-bits>)``, bits little-endian."""
        a = "".join(str((self.alpha >> i) & 1) for i in range(n_bits))
        b = "".join(str((self.beta >> i) & 1) for i in range(n_bits))
        return f"({a};{b})"


Alpha = Union[int, str]


@dataclass(frozen=True)
class BinaryField:
    """F_{2^{m+1}} in the polynomial basis of the default modulus."""

    m: int

    @property
    def degree(self) -> int:
        return self.m + 1

    @property
    def order(self) -> int:
        return 1 << self.degree

    @cached_property
    def modulus(self) -> int:
        coeffs = default_modulus(2, self.degree)
        return sum(c << i for i, c in enumerate(coeffs))

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        out = 0
        while b:
            if b & 1:
                out ^= a
            b >>= 1
            a <<= 1
            if a >> self.degree:
                a ^= self.modulus
        return out

    def trace(self, a: int) -> int:
        """Sum of the Galois conjugates ``a + a^2 + ... + a^(2^m)``, as a bit."""
        acc, cur = 0, a
        for _ in range(self.degree):
            acc ^= cur
            cur = self.mul(cur, cur)
        if acc not in (0, 1):
            raise AssertionError("trace left the prime field")
        return acc


def trace(field: BinaryField, a: int) -> int:
    return field.trace(a)


def symp_form(field: BinaryField, w: SympVector, w2: SympVector) -> int:
    """``Tr(alpha beta' + alpha' beta)``; minus is plus in characteristic 2."""
    return field.trace(field.mul(w.alpha, w2.beta) ^ field.mul(w2.alpha, w.beta))


def _gf2_inverse(rows: list[int], n: int) -> list[int]:
    # Gauss-Jordan on bit rows; row i of the result as a bitmask
    aug = [(r, 1 << i) for i, r in enumerate(rows)]
    for col in range(n):
        piv = next(i for i in range(col, n) if (aug[i][0] >> col) & 1)
        aug[col], aug[piv] = aug[piv], aug[col]
        for i in range(n):
            if i != col and (aug[i][0] >> col) & 1:
                aug[i] = (aug[i][0] ^ aug[col][0], aug[i][1] ^ aug[col][1])
    return [inv for _, inv in aug]


@dataclass(frozen=True)
class SympBasis:
    """Symplectic basis ``e_i = (x^{i-1}; 0)``, ``f_j = (0; f_j)`` of W.

    ``f`` is the trace-dual of the polynomial basis: ``Tr(e_i f_j) = δ_ij``.
    """

    field: BinaryField
    e: tuple[int, ...]
    f: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.field.m

    def coords(self, w: SympVector) -> tuple[tuple[int, ...], tuple[int, ...]]:
        F = self.field
        a = tuple(F.trace(F.mul(w.alpha, fi)) for fi in self.f)
        b = tuple(F.trace(F.mul(w.beta, ei)) for ei in self.e)
        return a, b

    def from_coords(self, a, b) -> SympVector:
        alpha = beta = 0
        for ai, bi, ei, fi in zip(a, b, self.e, self.f):
            if ai:
                alpha ^= ei
            if bi:
                beta ^= fi
        return SympVector(alpha, beta)

    def coord_form(self, w: SympVector, w2: SympVector) -> int:
        a, b = self.coords(w)
        a2, b2 = self.coords(w2)
        return sum(x * y2 + x2 * y for x, y, x2, y2 in zip(a, b, a2, b2)) % 2

    def vectors(self) -> list[SympVector]:
        """All of W, lexicographic on the coordinate string a_1..a_{m+1} b_1..b_{m+1}."""
        n = self.field.degree
        out = []
        for bits in range(1 << (2 * n)):
            coord = [(bits >> (2 * n - 1 - t)) & 1 for t in range(2 * n)]
            out.append(self.from_coords(coord[:n], coord[n:]))
        return out

    def order_key(self, w: SympVector) -> tuple[int, ...]:
        a, b = self.coords(w)
        return a + b


def _check_m(m: int, allow_large: bool) -> None:
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    if m > DEFAULT_MAX_M and not allow_large:
        raise ValueError(f"m = {m} exceeds the default cap {DEFAULT_MAX_M}; pass allow_large=True")


@lru_cache(maxsize=None)
def build_symp_basis(m: int, allow_large: bool = False) -> SympBasis:
    _check_m(m, allow_large)
    F = BinaryField(m)
    n = F.degree
    e = tuple(1 << i for i in range(n))
    # trace Gram matrix Tr(x^{i+j}), as bit rows
    gram = []
    for i in range(n):
        row = 0
        for j in range(n):
            if F.trace(F.mul(e[i], e[j])):
                row |= 1 << j
        gram.append(row)
    inv = _gf2_inverse(gram, n)
    # f_j = sum_l inv[j][l] x^l
    f = tuple(inv[j] for j in range(n))
    return SympBasis(F, e, f)


def coords(w: SympVector, basis: SympBasis):
    return basis.coords(w)


def qform(w: SympVector, basis: SympBasis) -> int:
    """``sum a_i b_i + (a_1 + b_1)`` over F_2."""
    a, b = basis.coords(w)
    return (sum(x * y for x, y in zip(a, b)) + a[0] + b[0]) % 2


@lru_cache(maxsize=None)
def _q_cached(m: int) -> tuple[SympVector, ...]:
    basis = build_symp_basis(m, allow_large=True)
    return tuple(w for w in basis.vectors() if qform(w, basis) == 1)


def enumerate_Q(m: int, basis: SympBasis | None = None) -> list[SympVector]:
    """All ``w`` with ``q(w) = 1`` in coordinate-lexicographic order."""
    if basis is None:
        basis = build_symp_basis(m)
    elif basis.m != m:
        raise ValueError("basis built for a different m")
    return list(_q_cached(m))


def field_alphas(m: int) -> list[Alpha]:
    """Line indices: field elements in ascending code order, then ``INFINITY``."""
    return list(range(1 << (m + 1))) + [INFINITY]


def line_W_alpha(field: BinaryField, alpha: Alpha) -> list[SympVector]:
    """``W_alpha = {(λ; αλ) : λ ≠ 0}``, ``W_inf = {(0; λ)}``; excludes zero."""
    if alpha == INFINITY:
        return [SympVector(0, lam) for lam in range(1, field.order)]
    return [SympVector(lam, field.mul(alpha, lam)) for lam in range(1, field.order)]


def Q_alpha(basis: SympBasis, alpha: Alpha) -> list[SympVector]:
    """``W_alpha ∩ Q`` in coordinate-lexicographic order."""
    pts = [w for w in line_W_alpha(basis.field, alpha) if qform(w, basis) == 1]
    return sorted(pts, key=basis.order_key)


def f2_span(vectors) -> set[SympVector]:
    span = {SympVector(0, 0)}
    for v in vectors:
        span |= {s + v for s in span}
    return span


def omega_index(w: SympVector, basis: SympBasis) -> int:
    """Block of the partition of Q containing ``w``.

    0 when ``a_1 = 0``; 1 when ``a_1 = 1`` and ``a_2 = ... = a_{m+1} = 0``;
    otherwise the position ``j >= 2`` of the first nonzero among ``a_2, ...``.
    """
    a, _ = basis.coords(w)
    if a[0] == 0:
        return 0
    for j in range(1, len(a)):
        if a[j]:
            return j + 1
    return 1


def omega_partition(m: int, basis: SympBasis | None = None) -> list[list[SympVector]]:
    if basis is None:
        basis = build_symp_basis(m)
    blocks: list[list[SympVector]] = [[] for _ in range(m + 2)]
    for w in enumerate_Q(m, basis):
        blocks[omega_index(w, basis)].append(w)
    return blocks


def omega_sizes_expected(m: int) -> list[int]:
    sizes = [2 ** (2 * m), 2 ** (m + 1)]
    sizes += [2 ** (2 * m - j + 1) for j in range(2, m + 2)]
    return sizes
