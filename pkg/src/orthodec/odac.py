"""Constructions of orthogonal decompositions into abelian Cartan subalgebras.

* :func:`construct_sl_pauli` and :func:`construct_sp_restricted` use the
  generalized Pauli matrices ``J_w`` indexed by lines of W.
* :func:`construct_so_even` and :func:`construct_so_odd` group the matrices
  ``X_(i,j) = e_ij - e_ji`` along a round-robin 1-factorization of K_{2n}.
* :func:`lift_product` / :func:`project_decomposition` move decompositions
  between a ring and its local factors.
* :func:`necessary_check_sl` is the gcd obstruction for sl_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cartan import Submodule
from .errors import EvenCharacteristic, FactorMismatch, OddSize, UnsupportedSize
from .finring import RingSpec, decompose_local
from .gf2m import INFINITY, build_symp_basis, field_alphas, line_W_alpha, qform
from .liealg.algebra import AlgebraSpec, Matrix, jw_int


@dataclass
class Decomposition:
    algebra: AlgebraSpec
    components: list[Submodule]
    provenance: dict = field(default_factory=dict)
    names: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.names:
            self.names = [f"H_{i}" for i in range(len(self.components))]

    @property
    def ring(self) -> RingSpec:
        return self.algebra.ring

    @property
    def ranks(self) -> list[int]:
        return [len(c) for c in self.components]


def _require_odd(R: RingSpec) -> None:
    if R.char % 2 == 0:
        raise EvenCharacteristic(f"construction needs odd characteristic; {R} has char {R.char}")


# -- the sl_n necessary condition -------------------------------------------------

@dataclass
class SlCheck:
    """Outcome of the gcd test; on failure carries the central witness.

    ``passed`` only means the necessary condition holds; it does not
    imply that a decomposition exists.
    """

    n: int
    ring: RingSpec
    passed: bool
    factor_index: int | None = None
    factor: RingSpec | None = None
    scalar: int | None = None
    witness: Matrix | None = None

    def describe(self) -> str:
        if self.passed:
            return f"sl_{self.n}({self.ring}): necessary condition satisfied (existence not implied)"
        scalar = "" if self.scalar == 1 else f"{self.scalar}*"
        return (
            f"sl_{self.n}({self.ring}): necessary condition fails; gcd(char {self.ring.char}, {self.n}) != 1; "
            f"witness {scalar}I_{self.n} in sl_{self.n}({self.factor}) (local factor {self.factor_index})"
        )


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def necessary_check_sl(n: int, R: RingSpec) -> SlCheck:
    """Pass iff ``gcd(char R, n) = 1``.

    On failure the witness is a nonzero traceless scalar matrix in the first
    local factor of characteristic ``p^a`` with ``p | n``: ``I_n`` when
    ``p^a | n``, else ``p^{a-b} I_n`` with ``b = v_p(n)``.
    """
    if math.gcd(R.char, n) == 1:
        return SlCheck(n, R, True)
    fac = decompose_local(R)
    for idx, f in enumerate(fac.factors):
        p = f.prime
        if n % p:
            continue
        a = _valuation(f.char, p)
        b = _valuation(n, p)
        scalar = 1 if b >= a else p ** (a - b)
        W = Matrix(f, np.eye(n, dtype=np.int64) * int(f.from_int(scalar)))
        return SlCheck(n, R, False, idx, f, scalar, W)
    raise AssertionError("gcd > 1 but no local factor shares a prime with n")


# -- sl_{2^{m+1}} and sp_{2^{m+1}} --------------------------------------------------

def _alpha_name(alpha) -> str:
    return "H_inf" if alpha == INFINITY else f"H_{alpha}"


def construct_sl_pauli(m: int, R: RingSpec) -> Decomposition:
    """``sl_{2^{m+1}}(R) = H_inf ⊕ (⊕_α H_α)``, ``H_α`` spanned over R by ``J_w``, ``w ∈ W_α``."""
    _require_odd(R)
    basis = build_symp_basis(m)
    n = 2 ** (m + 1)
    algebra = AlgebraSpec("sl", n, R)
    components, names = [], []
    for alpha in field_alphas(m):
        pts = sorted(line_W_alpha(basis.field, alpha), key=basis.order_key)
        mats = np.array([jw_int(*basis.coords(w)) for w in pts])
        components.append(Submodule(algebra, algebra.coords(R.from_int(mats))))
        names.append(_alpha_name(alpha))
    prov = {"tag": "sl-pauli", "m": m, "alpha_order": "ascending-then-inf"}
    return Decomposition(algebra, components, prov, names)


def construct_sp_restricted(m: int, R: RingSpec) -> Decomposition:
    """``H'_α`` spanned by ``J_w`` for ``w ∈ Q_α``; components are unit vectors
    in the ``{J_w : w ∈ Q}`` basis of sp."""
    _require_odd(R)
    if m < 1:
        raise UnsupportedSize("sp restriction needs m >= 1")
    basis = build_symp_basis(m)
    algebra = AlgebraSpec("sp", 2 ** (m + 1), R)
    index = {w: i for i, w in enumerate(algebra.pauli_labels)}
    components, names = [], []
    for alpha in field_alphas(m):
        pts = [w for w in line_W_alpha(basis.field, alpha) if qform(w, basis) == 1]
        pts.sort(key=basis.order_key)
        gens = np.zeros((len(pts), algebra.rank), dtype=np.int64)
        for row, w in enumerate(pts):
            gens[row, index[w]] = R.one
        components.append(Submodule(algebra, gens))
        names.append(_alpha_name(alpha))
    prov = {"tag": "sp-restricted", "m": m, "alpha_order": "ascending-then-inf"}
    return Decomposition(algebra, components, prov, names)


# -- so_n ----------------------------------------------------------------------------

@dataclass(frozen=True)
class OneFactorization:
    """Perfect matchings ``M_1 .. M_{2n-1}`` of K_{2n} on vertices ``1..2n``."""

    n: int
    classes: tuple[tuple[tuple[int, int], ...], ...]


def one_factorization(two_n: int) -> OneFactorization:
    """Round robin: vertex ``2n`` fixed, ``M_k = {k, 2n} ∪ {{k+i, k-i}}`` cyclically on ``1..2n-1``."""
    if two_n % 2:
        raise OddSize(f"1-factorization needs an even vertex count, got {two_n}")
    if two_n < 2:
        raise OddSize("need at least two vertices")
    n = two_n // 2
    mod = two_n - 1

    def wrap(x: int) -> int:
        return (x - 1) % mod + 1

    classes = []
    for k in range(1, two_n):
        pairs = [(k, two_n)]
        for i in range(1, n):
            pairs.append((wrap(k + i), wrap(k - i)))
        classes.append(tuple(pairs))
    return OneFactorization(n, tuple(classes))


def _so_index(n: int) -> dict[tuple[int, int], int]:
    idx, out = 0, {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out[(i, j)] = idx
            idx += 1
    return out


def _so_components(algebra: AlgebraSpec, classes) -> list[Submodule]:
    R = algebra.ring
    index = _so_index(algebra.n)
    out = []
    for pairs in classes:
        gens = np.zeros((len(pairs), algebra.rank), dtype=np.int64)
        for row, (i, j) in enumerate(sorted(tuple(sorted(p)) for p in pairs)):
            gens[row, index[(i, j)]] = R.one
        out.append(Submodule(algebra, gens))
    return out


def construct_so_even(n: int, R: RingSpec) -> Decomposition:
    """``so_{2n} = H_1 ⊕ ... ⊕ H_{2n-1}``, ``H_k`` spanned by ``X_(i,j)``, ``{i,j} ∈ M_k``."""
    _require_odd(R)
    if n < 1:
        raise UnsupportedSize("so_{2n} needs n >= 1")
    algebra = AlgebraSpec("so", 2 * n, R)
    F = one_factorization(2 * n)
    comps = _so_components(algebra, F.classes)
    prov = {"tag": "so-even", "n": n, "factorization": "round-robin"}
    return Decomposition(algebra, comps, prov, [f"H_{k}" for k in range(1, 2 * n)])


def construct_so_odd(n: int, R: RingSpec) -> Decomposition:
    """``so_{2n-1}`` from the classes ``M_k \\ {k, 2n}``."""
    _require_odd(R)
    if n < 2:
        raise UnsupportedSize("so_{2n-1} needs n >= 2")
    algebra = AlgebraSpec("so", 2 * n - 1, R)
    F = one_factorization(2 * n)
    classes = [tuple(p for p in M if p != (k, 2 * n)) for k, M in enumerate(F.classes, start=1)]
    comps = _so_components(algebra, classes)
    prov = {"tag": "so-odd", "n": n, "factorization": "round-robin"}
    return Decomposition(algebra, comps, prov, [f"H_{k}" for k in range(1, 2 * n)])


# -- product rings ---------------------------------------------------------------------

def lift_product(per_factor: list[Decomposition], R: RingSpec) -> Decomposition:
    """Combine decompositions over the local factors of ``R``.

    Component ``j`` is the preimage of the tuple of ``j``-th factor
    components; a factor with fewer components contributes zero.  Generator
    ``l`` of a lifted component is the preimage of the tuple of ``l``-th
    factor generators, so the idempotents of ``R`` recover every factor
    generator from it.
    """
    fac = decompose_local(R)
    if len(per_factor) != len(fac.factors):
        raise FactorMismatch(f"{R} has {len(fac.factors)} local factors, got {len(per_factor)} decompositions")
    first = per_factor[0].algebra
    for d, f in zip(per_factor, fac.factors):
        if d.ring != f:
            raise FactorMismatch(f"expected a decomposition over {f}, got one over {d.ring}")
        if (d.algebra.family, d.algebra.n) != (first.family, first.n):
            raise FactorMismatch("factor decompositions are over different algebras")
    if len(per_factor) == 1:
        return per_factor[0]
    algebra = AlgebraSpec(first.family, first.n, R)
    r = algebra.rank
    k = max(len(d.components) for d in per_factor)
    components = []
    for j in range(k):
        gens = [d.components[j].generators if j < len(d.components) else np.zeros((0, r), dtype=np.int64)
                for d in per_factor]
        count = max(len(g) for g in gens)
        padded = [np.vstack([g, np.zeros((count - len(g), r), dtype=np.int64)]) for g in gens]
        components.append(Submodule(algebra, fac.from_product(padded)))
    longest = max(per_factor, key=lambda d: len(d.components))
    prov = {
        "tag": "product-lift",
        "factors": [f.descriptor() for f in fac.factors],
        "parts": [d.provenance for d in per_factor],
    }
    return Decomposition(algebra, components, prov, list(longest.names))


def project_decomposition(D: Decomposition, i: int) -> Decomposition:
    """The ``i``-th local factor projection of every component."""
    fac = decompose_local(D.ring)
    f = fac.factors[i]
    algebra = D.algebra.over(f)
    comps = []
    for c in D.components:
        gens = fac.to_product(c.generators)[i]
        gens = gens[np.any(gens != 0, axis=1)] if len(gens) else gens
        comps.append(Submodule(algebra, gens))
    prov = {"tag": "projection", "factor": i, "source": D.provenance}
    return Decomposition(algebra, comps, prov, list(D.names))


def construct(family: str, size: int, R: RingSpec) -> Decomposition:
    """Dispatch on ``(family, size)``; raises UnsupportedSize when no construction applies."""
    if family in ("sl", "sp"):
        if size < 2 or size & (size - 1):
            raise UnsupportedSize(f"{family}_{size}: size must be a power of two")
        m = size.bit_length() - 2
        if family == "sl":
            return construct_sl_pauli(m, R)
        if m < 1:
            raise UnsupportedSize("sp_2 has no construction here; sizes start at 4")
        return construct_sp_restricted(m, R)
    if family == "so":
        if size < 3:
            raise UnsupportedSize("so sizes start at 3")
        if size % 2 == 0:
            return construct_so_even(size // 2, R)
        return construct_so_odd((size + 1) // 2, R)
    raise UnsupportedSize(f"no construction for family {family!r}")
