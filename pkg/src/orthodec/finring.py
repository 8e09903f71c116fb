"""Finite commutative rings: Z_m, GF(p^k) and finite products of these.

Elements are stored as non-negative integer codes in ``[0, ring.size)`` so
that vectors and matrices over a ring are plain ``int64`` numpy arrays:

* ``Zm(m)``: the residue itself.
* ``GF(p, k)``: the coefficient vector ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
  (little-endian in powers of the generator).
* ``Product``: mixed radix over the factor codes, first factor least
  significant.

All arithmetic methods accept scalars or arrays and broadcast like numpy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Callable, Sequence

import numpy as np

from .errors import NonUnit, RingSpecError

# valuation reported for the zero element
INF_VALUATION = 1 << 30

_MAX_MODULUS = 1 << 20


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization by trial division, as ``[(p, e), ...]`` ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        f = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - f * c) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p of a polynomial given little-endian."""
    k = len(poly) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    for d in range(1, k // 2 + 1):
        for low in range(p**d):
            g = [(low // p**i) % p for i in range(d)] + [1]
            if not _poly_rem(list(poly), g, p):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic irreducible of degree ``k`` over F_p.

    Candidates are ordered by the integer ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
    of their lower coefficients, i.e. lexicographically from the top
    coefficient down.
    """
    for low in range(p**k):
        poly = tuple((low // p**i) % p for i in range(k)) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise RingSpecError(f"no irreducible polynomial of degree {k} over F_{p}")


class RingSpec:
    """Common interface of the supported rings."""

    size: int
    char: int

    @property
    def is_local(self) -> bool:
        raise NotImplementedError

    @property
    def is_field(self) -> bool:
        return False

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def matmul(self, a, b):
        raise NotImplementedError

    def sum(self, a, axis=None):
        raise NotImplementedError

    def is_unit(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n):
        """Image of the integer ``n`` (scalar or array) under Z -> R."""
        raise NotImplementedError

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return int(self.from_int(1))

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def trace(self, a) -> int:
        """Matrix trace of a square array over the ring."""
        a = np.asarray(a, dtype=np.int64)
        return int(self.sum(np.diagonal(a)))

    def elem(self, value) -> "RingElem":
        if isinstance(value, (tuple, list)):
            return RingElem(self, self.from_repr(value))
        return RingElem(self, int(self.from_int(value)) if isinstance(self, Zm) else int(value))

    # -- encodings --------------------------------------------------------
    def to_repr(self, code: int):
        raise NotImplementedError

    def from_repr(self, rep) -> int:
        raise NotImplementedError

    def format_elem(self, code: int) -> str:
        raise NotImplementedError

    def parse_elem(self, text: str) -> int:
        raise NotImplementedError

    def descriptor(self) -> str:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.descriptor()


def _arr(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


# float64 represents every integer below 2^53 exactly
_FLOAT_EXACT = 1 << 52

# fields up to this size get full addition/multiplication tables
_TABLE_LIMIT = 1024


def _modmatmul(a, b, modulus: int) -> np.ndarray:
    """``a @ b mod modulus`` for reduced inputs; BLAS when the sums stay exact."""
    a, b = _arr(a), _arr(b)
    inner = a.shape[-1] if a.ndim else 1
    if inner * (modulus - 1) ** 2 < _FLOAT_EXACT:
        prod = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.rint(prod).astype(np.int64) % modulus
    return (a @ b) % modulus


@dataclass(frozen=True)
class Zm(RingSpec):
    """Integers modulo ``modulus``."""

    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, (int, np.integer)) or self.modulus < 2:
            raise RingSpecError(f"Z_m needs modulus >= 2, got {self.modulus!r}")
        if self.modulus > _MAX_MODULUS:
            raise RingSpecError(f"modulus {self.modulus} too large (limit {_MAX_MODULUS})")

    @property
    def size(self) -> int:
        return self.modulus

    @property
    def char(self) -> int:
        return self.modulus

    @cached_property
    def _factors(self):
        return factorize(self.modulus)

    @property
    def is_local(self) -> bool:
        return len(self._factors) == 1

    @property
    def is_field(self) -> bool:
        return is_prime(self.modulus)

    @property
    def prime(self) -> int:
        if not self.is_local:
            raise RingSpecError(f"{self} is not local")
        return self._factors[0][0]

    @property
    def length(self) -> int:
        """Nilpotency index of the maximal ideal (``a`` for Z_{p^a})."""
        if not self.is_local:
            raise RingSpecError(f"{self} is not local")
        return self._factors[0][1]

    def add(self, a, b):
        return (_arr(a) + _arr(b)) % self.modulus

    def sub(self, a, b):
        return (_arr(a) - _arr(b)) % self.modulus

    def neg(self, a):
        return (-_arr(a)) % self.modulus

    def mul(self, a, b):
        return (_arr(a) * _arr(b)) % self.modulus

    def matmul(self, a, b):
        return _modmatmul(a, b, self.modulus)

    def sum(self, a, axis=None):
        return _arr(a).sum(axis=axis) % self.modulus

    def is_unit(self, a):
        return np.gcd(_arr(a), self.modulus) == 1

    @cached_property
    def _inverse_table(self) -> np.ndarray:
        table = np.zeros(self.modulus, dtype=np.int64)
        for x in range(self.modulus):
            if math.gcd(x, self.modulus) == 1:
                table[x] = pow(x, -1, self.modulus)
        return table

    def inv(self, a):
        a = _arr(a) % self.modulus
        if not np.all(self.is_unit(a)):
            raise NonUnit(f"non-unit in {self}: {a}")
        return self._inverse_table[a]

    def from_int(self, n):
        return _arr(n) % self.modulus

    # local-ring helpers used by the Howell form
    def valuation(self, a):
        a = _arr(a)
        p = self.prime
        v = np.where(a == 0, INF_VALUATION, 0)
        for t in range(1, self.length):
            v = np.where((a != 0) & (a % p**t == 0), t, v)
        return v

    def pi_power(self, v: int) -> int:
        return self.prime**v % self.modulus

    def exact_quotient(self, a, v: int):
        return _arr(a) // self.prime**v

    def unit_part_inverse(self, x: int, v: int) -> int:
        return pow(int(x) // self.prime**v, -1, self.modulus)

    def to_repr(self, code: int) -> int:
        return int(code)

    def from_repr(self, rep) -> int:
        return int(rep) % self.modulus

    def format_elem(self, code: int) -> str:
        return str(int(code))

    def parse_elem(self, text: str) -> int:
        text = text.strip()
        if not re.fullmatch(r"\d+", text) or int(text) >= self.modulus:
            raise RingSpecError(f"bad element {text!r} for {self}")
        return int(text)

    def descriptor(self) -> str:
        return f"Z{self.modulus}"


@dataclass(frozen=True)
class GF(RingSpec):
    """The finite field F_p[x]/(modulus) with ``p^k`` elements."""

    p: int
    k: int
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not is_prime(self.p):
            raise RingSpecError(f"GF needs a prime characteristic, got {self.p}")
        if self.k < 1:
            raise RingSpecError(f"GF needs degree >= 1, got {self.k}")
        if self.p**self.k > _MAX_MODULUS:
            raise RingSpecError(f"GF({self.p}^{self.k}) too large")
        if self.modulus is None:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.k))
        poly = tuple(int(c) % self.p for c in self.modulus)
        if len(poly) != self.k + 1 or poly[-1] != 1:
            raise RingSpecError(f"modulus must be monic of degree {self.k}: {self.modulus}")
        if not is_irreducible(poly, self.p):
            raise RingSpecError(f"modulus {poly} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", poly)

    @property
    def size(self) -> int:
        return self.p**self.k

    @property
    def char(self) -> int:
        return self.p

    @property
    def is_local(self) -> bool:
        return True

    @property
    def is_field(self) -> bool:
        return True

    @property
    def prime(self) -> int:
        return self.p

    @property
    def length(self) -> int:
        return 1

    @cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.k, dtype=np.int64)

    def digits(self, a) -> np.ndarray:
        return (_arr(a)[..., None] // self._powers) % self.p

    def undigits(self, d) -> np.ndarray:
        return (_arr(d) * self._powers).sum(axis=-1)

    @cached_property
    def _mul_tensor(self) -> np.ndarray:
        # T[x, y, :] = coefficients of X^(x+y) reduced mod the modulus
        k, p = self.k, self.p
        reduced = []
        cur = [1] + [0] * (k - 1)
        for _ in range(2 * k - 1):
            reduced.append(cur)
            nxt = [0] + cur[:-1]
            top = cur[-1]
            nxt = [(c - top * m) % p for c, m in zip(nxt, self.modulus[:k])]
            cur = nxt
        T = np.zeros((k, k, k), dtype=np.int64)
        for x in range(k):
            for y in range(k):
                T[x, y] = reduced[x + y]
        return T

    @cached_property
    def _tables(self):
        """``(add, mul)`` tables, or None for large fields."""
        if self.size > _TABLE_LIMIT:
            return None
        e = np.arange(self.size, dtype=np.int64)
        add = self._add_digits(e[:, None], e[None, :])
        mul = self._mul_digits(e[:, None], e[None, :])
        return add, mul

    def _add_digits(self, a, b):
        return self.undigits((self.digits(a) + self.digits(b)) % self.p)

    def _mul_digits(self, a, b):
        da, db = self.digits(a), self.digits(b)
        d = np.einsum("...x,...y,xyz->...z", da, db, self._mul_tensor)
        return self.undigits(d % self.p)

    @cached_property
    def _neg_table(self) -> np.ndarray:
        return self.undigits((-self.digits(np.arange(self.size))) % self.p)

    def add(self, a, b):
        if self.k == 1:
            return (_arr(a) + _arr(b)) % self.p
        if self._tables is not None:
            return self._tables[0][_arr(a), _arr(b)]
        return self._add_digits(a, b)

    def neg(self, a):
        if self.k == 1:
            return (-_arr(a)) % self.p
        return self._neg_table[_arr(a)]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.k == 1:
            return (_arr(a) * _arr(b)) % self.p
        if self._tables is not None:
            return self._tables[1][_arr(a), _arr(b)]
        return self._mul_digits(a, b)

    def matmul(self, a, b):
        if self.k == 1:
            return _modmatmul(a, b, self.p)
        da, db = self.digits(a), self.digits(b)
        T = self._mul_tensor
        # coefficient products summed per (x, y) before reducing by the modulus
        out = None
        for x in range(self.k):
            for y in range(self.k):
                prod = _modmatmul(da[..., x], db[..., y], self.p)
                term = prod[..., None] * T[x, y]
                out = term if out is None else out + term
        return self.undigits(out % self.p)

    def sum(self, a, axis=None):
        d = self.digits(a)
        if axis is None:
            d = d.reshape(-1, self.k).sum(axis=0)
        else:
            axis = axis if axis >= 0 else axis + np.ndim(a)
            d = d.sum(axis=axis)
        return self.undigits(d % self.p)

    def is_unit(self, a):
        return _arr(a) != 0

    @cached_property
    def _inverse_table(self) -> np.ndarray:
        elems = self.elements()
        result = np.ones_like(elems)
        base = elems.copy()
        e = self.size - 2
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        result[0] = 0
        return result

    def inv(self, a):
        a = _arr(a)
        if np.any(a == 0):
            raise NonUnit(f"zero has no inverse in {self}")
        return self._inverse_table[a]

    def from_int(self, n):
        return _arr(n) % self.p

    def valuation(self, a):
        return np.where(_arr(a) == 0, INF_VALUATION, 0)

    def pi_power(self, v: int) -> int:
        return 1 if v == 0 else 0

    def exact_quotient(self, a, v: int):
        return _arr(a)

    def unit_part_inverse(self, x: int, v: int) -> int:
        return int(self.inv(x))

    def to_repr(self, code: int) -> tuple[int, ...]:
        return tuple(int(c) for c in self.digits(int(code)))

    def from_repr(self, rep) -> int:
        rep = [int(c) % self.p for c in rep]
        if len(rep) != self.k:
            raise RingSpecError(f"GF({self.p}^{self.k}) element needs {self.k} coefficients")
        return int(self.undigits(np.array(rep)))

    def format_elem(self, code: int) -> str:
        return ",".join(str(c) for c in self.to_repr(code))

    def parse_elem(self, text: str) -> int:
        parts = text.strip().split(",")
        if not all(re.fullmatch(r"\d+", s.strip()) for s in parts):
            raise RingSpecError(f"bad element {text!r} for {self}")
        vals = [int(s) for s in parts]
        if len(vals) != self.k or any(v >= self.p for v in vals):
            raise RingSpecError(f"bad element {text!r} for {self}")
        return self.from_repr(vals)

    def descriptor(self) -> str:
        base = f"GF({self.p}^{self.k})"
        if self.modulus != default_modulus(self.p, self.k):
            base += ";poly=" + ",".join(str(c) for c in self.modulus)
        return base


@dataclass(frozen=True)
class Product(RingSpec):
    """Direct product of non-product rings, with componentwise operations."""

    factors: tuple[RingSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise RingSpecError("a product needs at least two factors")
        if any(isinstance(f, Product) for f in self.factors):
            raise RingSpecError("product factors must not themselves be products")
        if self.size > _MAX_MODULUS:
            raise RingSpecError("product ring too large")

    @property
    def size(self) -> int:
        return math.prod(f.size for f in self.factors)

    @property
    def char(self) -> int:
        return reduce(math.lcm, (f.char for f in self.factors))

    @property
    def is_local(self) -> bool:
        return False

    @cached_property
    def _radices(self) -> list[int]:
        out, r = [], 1
        for f in self.factors:
            out.append(r)
            r *= f.size
        return out

    def split(self, a) -> list[np.ndarray]:
        a = _arr(a)
        return [(a // r) % f.size for r, f in zip(self._radices, self.factors)]

    def merge(self, parts) -> np.ndarray:
        return sum(_arr(x) * r for x, r in zip(parts, self._radices))

    def _map2(self, name, a, b):
        return self.merge(
            [getattr(f, name)(x, y) for f, x, y in zip(self.factors, self.split(a), self.split(b))]
        )

    def add(self, a, b):
        return self._map2("add", a, b)

    def sub(self, a, b):
        return self._map2("sub", a, b)

    def mul(self, a, b):
        return self._map2("mul", a, b)

    def matmul(self, a, b):
        return self._map2("matmul", a, b)

    def neg(self, a):
        return self.merge([f.neg(x) for f, x in zip(self.factors, self.split(a))])

    def sum(self, a, axis=None):
        return self.merge([f.sum(x, axis=axis) for f, x in zip(self.factors, self.split(a))])

    def is_unit(self, a):
        parts = [f.is_unit(x) for f, x in zip(self.factors, self.split(a))]
        return np.logical_and.reduce(parts)

    def inv(self, a):
        return self.merge([f.inv(x) for f, x in zip(self.factors, self.split(a))])

    def from_int(self, n):
        return self.merge([f.from_int(n) for f in self.factors])

    def to_repr(self, code: int) -> tuple:
        return tuple(f.to_repr(int(x)) for f, x in zip(self.factors, self.split(int(code))))

    def from_repr(self, rep) -> int:
        if len(rep) != len(self.factors):
            raise RingSpecError(f"product element needs {len(self.factors)} components")
        return int(self.merge([f.from_repr(r) for f, r in zip(self.factors, rep)]))

    def format_elem(self, code: int) -> str:
        parts = self.split(int(code))
        return "[" + ";".join(f.format_elem(int(x)) for f, x in zip(self.factors, parts)) + "]"

    def parse_elem(self, text: str) -> int:
        text = text.strip()
        if not (text.startswith("[") and text.endswith("]")):
            raise RingSpecError(f"bad product element {text!r}")
        parts = text[1:-1].split(";")
        if len(parts) != len(self.factors):
            raise RingSpecError(f"bad product element {text!r}")
        return int(self.merge([f.parse_elem(s) for f, s in zip(self.factors, parts)]))

    def descriptor(self) -> str:
        return " x ".join(f.descriptor() for f in self.factors)


@dataclass(frozen=True)
class RingElem:
    """A single ring element; a thin operator-friendly wrapper over a code."""

    ring: RingSpec
    value: int

    def _check(self, other: "RingElem") -> int:
        if isinstance(other, int):
            return int(self.ring.from_int(other))
        if other.ring != self.ring:
            raise RingSpecError(f"mixed rings {self.ring} and {other.ring}")
        return other.value

    def __add__(self, other):
        return RingElem(self.ring, int(self.ring.add(self.value, self._check(other))))

    def __sub__(self, other):
        return RingElem(self.ring, int(self.ring.sub(self.value, self._check(other))))

    def __mul__(self, other):
        return RingElem(self.ring, int(self.ring.mul(self.value, self._check(other))))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ring, int(self.ring.neg(self.value)))

    def is_unit(self) -> bool:
        return bool(self.ring.is_unit(self.value))

    def inv(self) -> "RingElem":
        return RingElem(self.ring, int(self.ring.inv(self.value)))

    @property
    def repr(self):
        """Canonical representative (int, coefficient tuple, or tuple of these)."""
        return self.ring.to_repr(self.value)

    def __str__(self) -> str:
        return self.ring.format_elem(self.value)


def ring_char(spec: RingSpec) -> int:
    """Additive order of 1."""
    return spec.char


_ZM_RE = re.compile(r"Z(\d+)")
_GF_RE = re.compile(r"GF\((\d+)\^(\d+)\)(?:;poly=([\d,\s]+))?")


def parse_ring(text: str) -> RingSpec:
    """Parse ``Z9``, ``GF(3^2)``, ``GF(3^2);poly=1,0,1`` or ``Z4 x GF(3^1)``."""
    parts = [s.strip() for s in re.split(r"\s+x\s+", text.strip())]
    factors = []
    for part in parts:
        if m := _ZM_RE.fullmatch(part):
            factors.append(Zm(int(m.group(1))))
        elif m := _GF_RE.fullmatch(part):
            poly = None
            if m.group(3):
                poly = tuple(int(c) for c in m.group(3).split(","))
            factors.append(GF(int(m.group(1)), int(m.group(2)), poly))
        else:
            raise RingSpecError(f"cannot parse ring descriptor {part!r}")
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(factors))


@dataclass(frozen=True)
class LocalFactorization:
    """``ring`` as a product of local rings, with the element isomorphisms.

    ``to_product`` sends a code (or array of codes) of ``ring`` to the list of
    factor codes; ``from_product`` is its inverse.
    """

    ring: RingSpec
    factors: tuple[RingSpec, ...]
    to_product: Callable
    from_product: Callable

    def embed(self, i: int, x) -> np.ndarray:
        """Lift ``x`` over factor ``i`` to the ring, zero in the other factors."""
        x = _arr(x)
        parts = [np.zeros_like(x) for _ in self.factors]
        parts[i] = x
        return self.from_product(parts)


def _factor_key(f: RingSpec):
    return (f.prime, f.char, f.size)


def decompose_local(spec: RingSpec) -> LocalFactorization:
    """Split ``spec`` into local factors ordered by (prime, characteristic, size)."""
    if spec.is_local:
        return LocalFactorization(spec, (spec,), lambda a: [_arr(a)], lambda parts: _arr(parts[0]))
    if isinstance(spec, Zm):
        moduli = [p**e for p, e in spec._factors]
        factors = tuple(Zm(q) for q in moduli)
        m = spec.modulus
        coeffs = [(m // q) * pow(m // q, -1, q) % m for q in moduli]

        def to_product(a):
            a = _arr(a)
            return [a % q for q in moduli]

        def from_product(parts):
            return sum(_arr(x) * c for x, c in zip(parts, coeffs)) % m

        return LocalFactorization(spec, factors, to_product, from_product)

    subs = [decompose_local(f) for f in spec.factors]
    flat = [(i, j, g) for i, sub in enumerate(subs) for j, g in enumerate(sub.factors)]
    order = sorted(range(len(flat)), key=lambda t: _factor_key(flat[t][2]))
    factors = tuple(flat[t][2] for t in order)

    def to_product(a):
        pieces = []
        for sub, part in zip(subs, spec.split(a)):
            pieces.extend(sub.to_product(part))
        return [pieces[t] for t in order]

    def from_product(parts):
        pieces = [None] * len(flat)
        for pos, t in enumerate(order):
            pieces[t] = _arr(parts[pos])
        out, start = [], 0
        for sub in subs:
            n = len(sub.factors)
            out.append(sub.from_product(pieces[start:start + n]))
            start += n
        return spec.merge(out)

    return LocalFactorization(spec, factors, to_product, from_product)
