import numpy as np
import pytest

from orthodec.cartan import (NotAbelian, NotOrthogonal, NotSelfNormalizing, SumNotDirect, SumNotSpanning,
                             Submodule, is_abelian, is_cartan, is_nilpotent, normalizer, submodule_equal,
                             verify_odac)
from orthodec.errors import NotClosed
from orthodec.finring import GF, Zm
from orthodec.liealg import AlgebraSpec, killing
from orthodec.odac import construct_sl_pauli, construct_so_even, construct_sp_restricted


def sub_from_matrices(A, mats):
    return Submodule(A, A.coords(A.ring.from_int(np.array(mats))))


def unit(n, i, j):
    E = np.zeros((n, n), dtype=np.int64)
    E[i, j] = 1
    return E


def test_is_abelian_examples():
    A = AlgebraSpec("sl", 3, Zm(5))
    diag = sub_from_matrices(A, [unit(3, 0, 0) - unit(3, 1, 1), unit(3, 1, 1) - unit(3, 2, 2)])
    assert is_abelian(diag)
    assert not is_abelian(Submodule.full(AlgebraSpec("sl", 2, Zm(5))))
    for H in construct_so_even(3, Zm(5)).components:
        assert is_abelian(H)


def test_normalizer_examples():
    A = AlgebraSpec("sl", 2, Zm(3))
    assert submodule_equal(normalizer(Submodule.zero(A)), Submodule.full(A))
    assert submodule_equal(normalizer(Submodule.full(A)), Submodule.full(A))
    D = construct_sp_restricted(1, Zm(3))
    for H in D.components:
        assert submodule_equal(normalizer(H), H)


def test_normalizer_contains_H():
    rng = np.random.default_rng(0)
    for R in [Zm(9), Zm(6), GF(3, 2)]:
        A = AlgebraSpec("sl", 3, R)
        for _ in range(5):
            # one generator always spans a subalgebra
            H = Submodule(A, rng.integers(0, R.size, (1, A.rank)))
            assert normalizer(H).row_space().contains_all(H.generators)


def test_is_nilpotent_examples():
    A = AlgebraSpec("sl", 3, Zm(5))
    upper = sub_from_matrices(A, [unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)])
    assert is_nilpotent(upper)
    assert is_nilpotent(Submodule(A, A.coords(A.ring.from_int(unit(3, 0, 1)[None]))))
    assert not is_nilpotent(Submodule.full(AlgebraSpec("sl", 2, Zm(5))))
    with pytest.raises(NotClosed):
        is_nilpotent(sub_from_matrices(A, [unit(3, 0, 1), unit(3, 1, 0)]))


def test_is_nilpotent_over_Z9():
    # upper triangular with entries divisible by 3 in the corner still nilpotent
    A = AlgebraSpec("sl", 3, Zm(9))
    H = sub_from_matrices(A, [3 * unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)])
    assert is_nilpotent(H)


def test_is_cartan_examples():
    D = construct_sl_pauli(1, Zm(3))
    assert is_cartan(D.components[-1])
    A = AlgebraSpec("sl", 2, Zm(3))
    assert not is_cartan(Submodule.zero(A))
    e = sub_from_matrices(A, [unit(2, 0, 1)])
    assert not is_cartan(e)  # h normalizes <e>


def test_verify_so8():
    D = construct_so_even(4, Zm(3))
    report = verify_odac(D.components)
    assert report.is_odac and report.failures == []


def test_verify_moved_generator():
    D = construct_so_even(4, Zm(3))
    comps = [c.generators.copy() for c in D.components]
    g = comps[0][0]
    comps[0] = comps[0][1:]
    comps[1] = np.vstack([comps[1], g])
    report = verify_odac([Submodule(D.algebra, c) for c in comps])
    assert not report.is_odac
    kinds = {type(f) for f in report.failures}
    assert kinds & {SumNotDirect, NotSelfNormalizing, NotAbelian}
    for f in report.failures:
        if isinstance(f, NotSelfNormalizing):
            assert not Submodule(D.algebra, comps[f.component]).contains(f.witness)


def test_verify_single_full_component():
    A = AlgebraSpec("sl", 2, Zm(5))
    report = verify_odac([Submodule.full(A)])
    assert any(isinstance(f, NotAbelian) for f in report.failures)


def test_verify_zeroed_generator():
    D = construct_sp_restricted(1, Zm(5))
    comps = [c.generators.copy() for c in D.components]
    comps[2][1] = 0
    report = verify_odac([Submodule(D.algebra, c) for c in comps])
    spanning = [f for f in report.failures if isinstance(f, SumNotSpanning)]
    assert spanning
    allgens = np.vstack(comps)
    assert not Submodule(D.algebra, allgens).contains(spanning[0].witness)


def test_verify_duplicate_component_not_direct():
    D = construct_so_even(2, Zm(3))
    comps = list(D.components) + [D.components[0]]
    report = verify_odac(comps)
    direct = [f for f in report.failures if isinstance(f, SumNotDirect)]
    assert direct
    # H_0 against its copy: K(X, X) = (N-2) tr(X^2) is nonzero
    assert any(isinstance(f, NotOrthogonal) for f in report.failures)


def test_verify_scaled_by_zero_divisor():
    D = construct_so_even(3, Zm(9))
    comps = [c.generators.copy() for c in D.components]
    comps[0][0] = D.ring.mul(comps[0][0], 3)
    report = verify_odac([Submodule(D.algebra, c) for c in comps])
    assert not report.is_odac


def test_permutation_invariance():
    D = construct_sl_pauli(1, Zm(5))
    rng = np.random.default_rng(4)
    for _ in range(3):
        perm = rng.permutation(len(D.components))
        assert verify_odac([D.components[i] for i in perm]).is_odac


def test_generator_orthogonality_extends_to_components():
    D = construct_sp_restricted(1, Zm(9))
    A = D.algebra
    sc = A.structure_constants
    rng = np.random.default_rng(1)
    for _ in range(30):
        i, j = rng.choice(len(D.components), 2, replace=False)
        Gi, Gj = D.components[i].generators, D.components[j].generators
        x = A.ring.matmul(rng.integers(0, 9, len(Gi)), Gi)
        y = A.ring.matmul(rng.integers(0, 9, len(Gj)), Gj)
        assert killing(x, y, sc) == 0


def test_closed_killing_mode():
    D = construct_so_even(3, Zm(5))
    assert verify_odac(D.components, killing="closed").is_odac
    with pytest.raises(ValueError):
        verify_odac(D.components, killing="nope")


def test_describe_lines():
    D = construct_so_even(2, Zm(3))
    comps = [c.generators.copy() for c in D.components]
    comps[0][0] = 0
    report = verify_odac([Submodule(D.algebra, c) for c in comps])
    lines = report.lines(D.ring)
    assert lines and all(isinstance(s, str) for s in lines)
    assert any(s.startswith("SumNotSpanning(witness=(") for s in lines)
