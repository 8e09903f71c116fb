"""Subalgebra predicates and the ODAC verifier.

A :class:`Submodule` is the row span of coordinate vectors over the ambient
algebra's basis.  Everything here is exact; failures of :func:`verify_odac`
are returned as findings carrying a concrete witness, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NotClosed
from .liealg.algebra import AlgebraSpec, StructureConstants, killing_closed, killing_gram, Matrix
from .liealg.linalg import RowSpace, kernel


@dataclass(frozen=True, eq=False)
class Submodule:
    ambient: AlgebraSpec
    generators: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=np.int64).reshape(-1, self.ambient.rank)
        object.__setattr__(self, "generators", g)

    @classmethod
    def zero(cls, ambient: AlgebraSpec) -> "Submodule":
        return cls(ambient, np.zeros((0, ambient.rank), dtype=np.int64))

    @classmethod
    def full(cls, ambient: AlgebraSpec) -> "Submodule":
        return cls(ambient, np.eye(ambient.rank, dtype=np.int64) * ambient.ring.one)

    @property
    def ring(self):
        return self.ambient.ring

    def __len__(self) -> int:
        return self.generators.shape[0]

    def row_space(self) -> RowSpace:
        return RowSpace(self.generators, self.ring, self.ambient.rank)

    def contains(self, v) -> bool:
        return self.row_space().contains(v)

    def matrices(self) -> list[Matrix]:
        return [Matrix(self.ring, X) for X in self.ambient.to_matrix(self.generators)]


def submodule_equal(A: Submodule, B: Submodule) -> bool:
    return A.row_space().contains_all(B.generators) and B.row_space().contains_all(A.generators)


# -- findings -----------------------------------------------------------------

def _fmt_vec(v, ring) -> str:
    return "(" + ", ".join(ring.format_elem(int(x)) for x in v) + ")"


@dataclass(frozen=True)
class NotAbelian:
    component: int
    generators: tuple[int, int]

    def describe(self, ring) -> str:
        i, j = self.generators
        return f"NotAbelian(component={self.component}, generators=({i}, {j}))"


@dataclass(frozen=True, eq=False)
class NotSelfNormalizing:
    component: int
    witness: np.ndarray

    def describe(self, ring) -> str:
        return f"NotSelfNormalizing(component={self.component}, witness={_fmt_vec(self.witness, ring)})"


@dataclass(frozen=True)
class NotOrthogonal:
    component: int
    other: int
    generators: tuple[int, int]
    value: int

    def describe(self, ring) -> str:
        i, j = self.generators
        return (
            f"NotOrthogonal(components=({self.component}, {self.other}), "
            f"generators=({i}, {j}), killing={ring.format_elem(self.value)})"
        )


@dataclass(frozen=True, eq=False)
class SumNotDirect:
    component: int
    witness: np.ndarray

    def describe(self, ring) -> str:
        return f"SumNotDirect(component={self.component}, witness={_fmt_vec(self.witness, ring)})"


@dataclass(frozen=True, eq=False)
class SumNotSpanning:
    witness: np.ndarray

    def describe(self, ring) -> str:
        return f"SumNotSpanning(witness={_fmt_vec(self.witness, ring)})"


@dataclass(frozen=True)
class NotInAlgebraFinding:
    component: int
    generator: int

    def describe(self, ring) -> str:
        return f"NotInAlgebra(component={self.component}, generator={self.generator})"


@dataclass
class OdacReport:
    failures: list = field(default_factory=list)

    @property
    def is_odac(self) -> bool:
        return not self.failures

    def lines(self, ring) -> list[str]:
        return [f.describe(ring) for f in self.failures]


# -- predicates -----------------------------------------------------------------

def _sc(H: Submodule, sc: StructureConstants | None) -> StructureConstants:
    return sc if sc is not None else H.ambient.structure_constants


def _brackets(G1: np.ndarray, G2: np.ndarray, sc: StructureConstants) -> np.ndarray:
    """``out[i, j] = [G1_i, G2_j]``."""
    if len(G1) == 0 or len(G2) == 0:
        return np.zeros((len(G1), len(G2), sc.rank), dtype=np.int64)
    return sc.bracket(G1[:, None, :], G2[None, :, :])


def abelian_witness(H: Submodule, sc: StructureConstants | None = None):
    """A generator pair with nonzero bracket, or None."""
    br = _brackets(H.generators, H.generators, _sc(H, sc))
    nz = np.argwhere(np.any(br != 0, axis=-1))
    if len(nz):
        i, j = nz[0]
        return int(i), int(j)
    return None


def is_abelian(H: Submodule, sc: StructureConstants | None = None) -> bool:
    return abelian_witness(H, sc) is None


def normalizer(H: Submodule, sc: StructureConstants | None = None) -> Submodule:
    """``{x : [x, g] ∈ H for every generator g}`` by one left-kernel solve.

    Unknowns are ``x`` and, per generator ``g_i``, the coefficients ``y_i``
    expressing ``[x, g_i] = y_i G``.
    """
    sc = _sc(H, sc)
    A = H.ambient
    R, r = A.ring, A.rank
    G = H.generators
    h = len(G)
    if h == 0:
        return Submodule.full(A)
    # ad_right[i][a, :] = [v_a, g_i]
    eye = np.eye(r, dtype=np.int64) * R.one
    blocks = _brackets(eye, G, sc)  # (r, h, r)
    top = blocks.reshape(r, h * r)
    lower = np.zeros((h * h, h * r), dtype=np.int64)
    negG = R.neg(G)
    for i in range(h):
        lower[i * h:(i + 1) * h, i * r:(i + 1) * r] = negG
    system = np.vstack([top, lower])
    ker = kernel(system, R)
    return Submodule(A, ker[:, :r] if len(ker) else np.zeros((0, r), dtype=np.int64))


def _span_of_brackets(G1, G2, sc) -> np.ndarray:
    br = _brackets(G1, G2, sc).reshape(-1, sc.rank)
    return br[np.any(br != 0, axis=1)]


def is_nilpotent(H: Submodule, sc: StructureConstants | None = None) -> bool:
    """Whether the lower central series of ``H`` reaches zero.

    Raises :class:`NotClosed` when ``H`` is not a subalgebra.
    """
    sc = _sc(H, sc)
    G = H.generators
    space = H.row_space()
    if not space.contains_all(_span_of_brackets(G, G, sc)):
        raise NotClosed("submodule is not closed under the bracket")
    current = G
    # a strictly shrinking chain in a module of |R|^rank elements
    bound = H.ambient.rank * max(1, int(np.ceil(np.log2(H.ring.size))))
    for _ in range(bound + 1):
        nxt = _span_of_brackets(G, current, sc)
        if len(nxt) == 0:
            return True
        if RowSpace(nxt, H.ring, sc.rank).contains_all(current):
            return False
        current = nxt
    return False


def is_cartan(H: Submodule, sc: StructureConstants | None = None) -> bool:
    return is_nilpotent(H, sc) and submodule_equal(normalizer(H, sc), H)


def normalizer_witness(H: Submodule, sc: StructureConstants | None = None):
    """An element of the normalizer outside ``H``, or None."""
    N = normalizer(H, sc)
    space = H.row_space()
    for v in N.generators:
        if not space.contains(v):
            return v
    return None


# -- the verifier -------------------------------------------------------------------

def _direct_sum_witness(components: Sequence[Submodule], i: int):
    R = components[i].ring
    Gi = components[i].generators
    rest = [c.generators for j, c in enumerate(components) if j != i]
    r = components[i].ambient.rank
    Grest = np.vstack(rest) if rest else np.zeros((0, r), dtype=np.int64)
    if len(Gi) == 0 or len(Grest) == 0:
        return None
    ker = kernel(np.vstack([Gi, Grest]), R)
    if len(ker) == 0:
        return None
    inter = R.matmul(ker[:, :len(Gi)], Gi)
    nz = np.flatnonzero(np.any(inter != 0, axis=1))
    return inter[nz[0]] if nz.size else None


def verify_odac(
    components: Sequence[Submodule],
    sc: StructureConstants | None = None,
    killing: str = "generic",
) -> OdacReport:
    """Check that ``components`` form an orthogonal decomposition into
    abelian Cartan subalgebras of their common ambient algebra.

    ``killing`` is ``"generic"`` (trace of ad products) or ``"closed"``
    (closed-form coefficient times ``tr(AB)``; sp and so only).
    """
    report = OdacReport()
    if not components:
        raise ValueError("no components")
    A = components[0].ambient
    if any(c.ambient != A for c in components):
        raise ValueError("components live in different algebras")
    sc = sc if sc is not None else A.structure_constants
    R = A.ring

    for idx, H in enumerate(components):
        pair = abelian_witness(H, sc)
        if pair is not None:
            report.failures.append(NotAbelian(idx, pair))
        wit = normalizer_witness(H, sc)
        if wit is not None:
            report.failures.append(NotSelfNormalizing(idx, wit))

    if killing == "closed":
        mats = [A.to_matrix(c.generators) for c in components]
    for i in range(len(components)):
        for j in range(i + 1, len(components)):
            Gi, Gj = components[i].generators, components[j].generators
            if len(Gi) == 0 or len(Gj) == 0:
                continue
            if killing == "closed":
                gram = np.array(
                    [
                        [killing_closed(A.family, A.n, Matrix(R, X), Matrix(R, Y)) for Y in mats[j]]
                        for X in mats[i]
                    ],
                    dtype=np.int64,
                )
            elif killing == "generic":
                gram = killing_gram(Gi, Gj, sc)
            else:
                raise ValueError(f"unknown Killing mode {killing!r}")
            nz = np.argwhere(gram != 0)
            if len(nz):
                a, b = (int(t) for t in nz[0])
                report.failures.append(NotOrthogonal(i, j, (a, b), int(gram[a, b])))

    for idx in range(len(components)):
        wit = _direct_sum_witness(components, idx)
        if wit is not None:
            report.failures.append(SumNotDirect(idx, wit))

    allgens = np.vstack([c.generators for c in components])
    space = RowSpace(allgens, R, A.rank)
    eye = np.eye(A.rank, dtype=np.int64) * R.one
    missing = space.first_missing(eye)
    if missing is not None:
        report.failures.append(SumNotSpanning(eye[missing]))
    return report
