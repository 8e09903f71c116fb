import numpy as np
import pytest

from orthodec.cartan import Submodule, normalizer
from orthodec.errors import BudgetExceeded
from orthodec.finring import GF, Zm
from orthodec.gf2m import enumerate_Q
from orthodec.liealg import AlgebraSpec
from orthodec.odac import necessary_check_sl
from orthodec.oracle import (SearchBudget, brute_count_Q, brute_normalizer, brute_odac_search,
                             submodule_codes)


def same(H1, H2):
    return np.array_equal(submodule_codes(H1), submodule_codes(H2))


def test_brute_normalizer_basis_vectors_sl2_Z3():
    A = AlgebraSpec("sl", 2, Zm(3))
    for i in range(A.rank):
        H = Submodule(A, np.eye(A.rank, dtype=np.int64)[i:i + 1])
        assert same(normalizer(H), brute_normalizer(H))


def test_brute_normalizer_trivial_cases():
    A = AlgebraSpec("sl", 2, Zm(5))
    assert same(brute_normalizer(Submodule.full(A)), Submodule.full(A))
    assert same(brute_normalizer(Submodule.zero(A)), Submodule.full(A))


@pytest.mark.parametrize("family,n,R", [("sl", 2, Zm(4)), ("sl", 2, Zm(9)), ("so", 3, Zm(15)), ("sl", 3, Zm(2)),
                                        ("gl", 2, Zm(8)), ("so", 4, Zm(5)), ("sl", 2, GF(3, 2))])
def test_brute_normalizer_random(family, n, R):
    A = AlgebraSpec(family, n, R)
    rng = np.random.default_rng(n + R.size)
    for _ in range(6):
        g = rng.integers(1, 3)
        G = rng.integers(0, R.size, (g, A.rank))
        H = Submodule(A, G)
        assert same(normalizer(H), brute_normalizer(H))


def test_budget():
    A = AlgebraSpec("sl", 3, Zm(5))
    with pytest.raises(BudgetExceeded):
        brute_normalizer(Submodule.zero(A))
    with pytest.raises(BudgetExceeded):
        brute_odac_search(AlgebraSpec("sl", 2, Zm(4)), SearchBudget(max_module_elements=10))
    with pytest.raises(BudgetExceeded):
        brute_odac_search(AlgebraSpec("sl", 2, Zm(4)), SearchBudget(max_subalgebra_candidates=5))


@pytest.mark.parametrize("R,expected", [(Zm(2), False), (Zm(3), True), (Zm(4), False), (GF(2, 2), False)], ids=str)
def test_brute_odac_search_sl2(R, expected):
    A = AlgebraSpec("sl", 2, R)
    found = brute_odac_search(A)
    assert found == expected
    if not necessary_check_sl(2, R).passed:
        assert not found


@pytest.mark.parametrize("m,count", [(0, 3), (1, 10), (2, 36), (3, 136), (4, 528)])
def test_brute_count_Q(m, count):
    assert brute_count_Q(m) == count == len(enumerate_Q(m))
