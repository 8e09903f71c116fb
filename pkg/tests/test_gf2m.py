from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from orthodec.gf2m import (DEFAULT_MAX_M, INFINITY, BinaryField, Q_alpha, SympVector, build_symp_basis,
                           enumerate_Q, f2_span, field_alphas, line_W_alpha, omega_partition,
                           omega_sizes_expected, qform, symp_form, trace)


def all_vectors(m):
    n = 1 << (m + 1)
    return [SympVector(a, b) for a, b in product(range(n), repeat=2)]


def test_trace_examples():
    F = BinaryField(1)
    assert F.modulus == 0b111
    assert [trace(F, a) for a in range(4)] == [0, 0, 1, 1]
    x = 0b10
    assert F.mul(x, x) == 0b11


def test_symp_form_examples():
    F = BinaryField(1)
    x = 0b10
    assert symp_form(F, SympVector(1, 0), SympVector(0, 1)) == 0
    assert symp_form(F, SympVector(x, 0), SympVector(0, x)) == 1
    for w in all_vectors(1):
        assert symp_form(F, w, w) == 0


@pytest.mark.parametrize("m", range(5))
def test_trace_dual_basis(m):
    B = build_symp_basis(m)
    F = B.field
    for i, e in enumerate(B.e):
        for j, f in enumerate(B.f):
            assert F.trace(F.mul(e, f)) == (i == j)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_coords_exhaustive(m):
    B = build_symp_basis(m)
    F = B.field
    d = m + 1
    assert B.coords(SympVector(0, 0)) == ((0,) * d, (0,) * d)
    assert B.coords(SympVector(B.e[0], 0)) == ((1,) + (0,) * m, (0,) * d)
    if m >= 1:
        assert B.coords(SympVector(0, B.f[1])) == ((0,) * d, (0, 1) + (0,) * (m - 1))
    vecs = all_vectors(m)
    for w in vecs:
        assert B.from_coords(*B.coords(w)) == w
    for w in vecs:
        for w2 in vecs:
            assert B.coord_form(w, w2) == symp_form(F, w, w2)
            assert qform(w, B) ^ qform(w2, B) ^ qform(w + w2, B) == symp_form(F, w, w2)


@settings(max_examples=200)
@given(st.integers(3, 4), st.data())
def test_polar_identity_random(m, data):
    B = build_symp_basis(m)
    n = 1 << (m + 1)
    w, w2 = (SympVector(data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))) for _ in range(2))
    assert qform(w, B) ^ qform(w2, B) ^ qform(w + w2, B) == symp_form(B.field, w, w2)
    assert B.coord_form(w, w2) == symp_form(B.field, w, w2)


@pytest.mark.parametrize("m", [0, 1, 2])
def test_form_nondegenerate_and_bilinear(m):
    B = build_symp_basis(m)
    F = B.field
    vecs = all_vectors(m)
    for w in vecs[1:]:
        assert any(symp_form(F, w, v) for v in vecs)
    for u, v, w in product(vecs[:16], repeat=3):
        assert symp_form(F, u + v, w) == symp_form(F, u, w) ^ symp_form(F, v, w)


def test_qform_examples():
    B = build_symp_basis(1)
    assert qform(SympVector(0, 0), B) == 0
    assert qform(SympVector(B.e[0], 0), B) == 1


@pytest.mark.parametrize("m,size", [(0, 3), (1, 10), (2, 36), (3, 136)])
def test_Q_count(m, size):
    Q = enumerate_Q(m)
    assert len(Q) == size == 2**m * (2 ** (m + 1) + 1)
    B = build_symp_basis(m)
    keys = [B.order_key(w) for w in Q]
    assert keys == sorted(keys)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_lines(m):
    B = build_symp_basis(m)
    F = B.field
    Q = set(enumerate_Q(m))
    dotted = []
    for alpha in field_alphas(m):
        W = line_W_alpha(F, alpha)
        assert len(W) == 2 ** (m + 1) - 1
        Qa = Q_alpha(B, alpha)
        assert len(Qa) == 2**m
        assert set(Qa) == set(W) & Q
        span = f2_span(Qa)
        assert span == set(W) | {SympVector(0, 0)}
        dotted.append(span)
        # the non-Q part with zero is totally isotropic for q
        iso = [w for w in span if w not in Q]
        assert len(iso) <= 2**m
        for u in iso:
            for v in iso:
                assert qform(u + v, B) == 0
    assert field_alphas(m)[-1] == INFINITY
    union = set().union(*dotted)
    assert union == set(all_vectors(m))
    for i, a in enumerate(dotted):
        for b in dotted[i + 1:]:
            assert a & b == {SympVector(0, 0)}


@pytest.mark.parametrize("m", [1, 2, 3])
def test_omega_partition(m):
    blocks = omega_partition(m)
    assert [len(b) for b in blocks] == omega_sizes_expected(m)
    flat = [w for b in blocks for w in b]
    assert len(flat) == len(set(flat))
    assert set(flat) == set(enumerate_Q(m))


def test_omega_examples():
    assert omega_sizes_expected(1) == [4, 4, 2]
    assert omega_sizes_expected(2) == [16, 8, 8, 4]


def test_symp_vector_text():
    assert SympVector(0b01, 0b11).text(2) == "(10;11)"


def test_cap():
    with pytest.raises(ValueError):
        build_symp_basis(DEFAULT_MAX_M + 1)
    assert build_symp_basis(DEFAULT_MAX_M + 1, allow_large=True).m == DEFAULT_MAX_M + 1


def _max_singular_dim(m):
    """Largest dimension of a subspace of W on which q vanishes, by exhaustive search."""
    B = build_symp_basis(m)
    singular = [w for w in all_vectors(m) if w != SympVector(0, 0) and qform(w, B) == 0]
    best = 0

    def grow(span, dim, start):
        nonlocal best
        best = max(best, dim)
        if best == m + 1:
            return
        for i in range(start, len(singular)):
            v = singular[i]
            if v in span or any(qform(u + v, B) for u in span):
                continue
            grow(span | {u + v for u in span}, dim + 1, i + 1)

    grow({SympVector(0, 0)}, 0, 0)
    return best


@pytest.mark.parametrize("m", [1, 2])
def test_totally_singular_bound(m):
    # maximal q-singular subspaces have 2^m elements
    assert _max_singular_dim(m) == m
