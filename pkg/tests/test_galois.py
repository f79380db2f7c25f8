"""Galois ring oracle tests: construction, Frobenius, trace, duals, phi."""

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eaqring.errors import HPolyInvalid, ParameterTooLarge
from eaqring.galois import (
    GeneratingCharacter,
    char_exponent,
    dual_basis,
    frobenius,
    gen_trace,
    make_ring,
    phi_contract,
    phi_expand,
    ring_add,
    ring_mul,
    ring_neg,
    teichmuller_decompose,
    _trace_by_frobenius,
)


def all_elements(ring):
    N = ring.modulus
    for coeffs in itertools.product(range(N), repeat=ring.m):
        yield ring.element(coeffs)


@pytest.fixture(scope="module")
def gr42():
    return make_ring(2, 2, 2)


@pytest.fixture(scope="module")
def gr92():
    return make_ring(3, 2, 2)


def test_make_ring_canonical_polynomials(gr42):
    assert gr42.h_coeffs == (1, 1, 1)  # x^2 + x + 1 over Z_4
    z4 = make_ring(2, 2, 1)
    assert z4.h_coeffs == (3, 1)  # x - 1 is the only degree-1 divisor of x - 1
    f4 = make_ring(2, 1, 2)
    assert (f4.p, f4.b, f4.m) == (2, 1, 2)
    assert f4.h_coeffs == (1, 1, 1)
    z9 = make_ring(3, 2, 1)
    assert z9.h_coeffs == (1, 1)  # x - 8: Teichmuller lift of the root 2


def test_make_ring_errors():
    with pytest.raises(ParameterTooLarge):
        make_ring(2, 16, 2)
    with pytest.raises(ValueError):
        make_ring(4, 1, 1)
    with pytest.raises(HPolyInvalid):
        make_ring(2, 2, 2, h_coeffs=[1, 0, 1])  # x^2+1 = (x+1)^2 mod 2
    with pytest.raises(HPolyInvalid):
        make_ring(2, 2, 2, h_coeffs=[3, 1, 1])  # primitive mod 2, wrong lift
    # the canonical h round-trips through explicit validation
    ring = make_ring(2, 2, 2, h_coeffs=[1, 1, 1])
    assert ring == make_ring(2, 2, 2)


def test_teichmuller_set(gr42, gr92):
    for ring in (gr42, gr92, make_ring(2, 2, 1), make_ring(3, 2, 1)):
        T = ring.teichmuller
        order = ring.p ** ring.m - 1
        assert len(T) == ring.p ** ring.m
        assert T[0] == ring.zero and T[1] == ring.one
        for t in T[1:]:
            assert t ** order == ring.one
        if order > 1:
            beta = T[2]
            assert all(beta ** d != ring.one for d in range(1, order))


def test_ring_mul_examples(gr42):
    th = gr42.theta
    assert (th * th).coeffs == (3, 3)  # theta^2 = -theta - 1 over Z_4
    for a in list(all_elements(gr42))[:8]:
        assert ring_mul(a, gr42.one) == a
        assert ring_mul(a, gr42.zero) == gr42.zero
        assert ring_add(a, ring_neg(a)) == gr42.zero


def test_teichmuller_decompose_examples(gr42):
    assert teichmuller_decompose(gr42.zero) == (gr42.zero, gr42.zero)
    assert teichmuller_decompose(gr42.scalar(2)) == (gr42.zero, gr42.one)
    th = gr42.theta
    assert teichmuller_decompose(th) == (th, gr42.zero)


def test_teichmuller_decompose_roundtrip(gr42, gr92):
    for ring in (gr42, gr92):
        p = ring.p
        for z in all_elements(ring):
            digits = teichmuller_decompose(z)
            assert len(digits) == ring.b
            assert all(d in ring.teichmuller for d in digits)
            acc = ring.zero
            for t, d in enumerate(digits):
                acc = acc + d.scale(p ** t)
            assert acc == z


def test_frobenius_examples(gr42):
    th = gr42.theta
    assert frobenius(gr42.one) == gr42.one
    assert frobenius(th) == th * th
    assert frobenius(th).coeffs == (3, 3)


@pytest.mark.parametrize("ringname", ["gr42", "gr92"])
def test_frobenius_is_automorphism(ringname, request):
    ring = request.getfixturevalue(ringname)
    elems = list(all_elements(ring))
    images = {frobenius(z).coeffs for z in elems}
    assert len(images) == len(elems)
    for u, v in itertools.product(elems[: len(elems)], repeat=2) if len(elems) <= 16 \
            else random.Random(3).sample(list(itertools.product(elems, repeat=2)), 400):
        assert frobenius(u * v) == frobenius(u) * frobenius(v)
        assert frobenius(u + v) == frobenius(u) + frobenius(v)
    for z in elems:
        cur = z
        for _ in range(ring.m):
            cur = frobenius(cur)
        assert cur == z
        # Frobenius fixes the Z_{p^b} subring
    for c in range(ring.modulus):
        assert frobenius(ring.scalar(c)) == ring.scalar(c)


def test_gen_trace_examples(gr42):
    assert gen_trace(gr42.one) == 2
    assert gen_trace(gr42.theta) == 3
    assert gen_trace(gr42.zero) == 0
    z4 = make_ring(2, 2, 1)
    for c in range(4):
        assert gen_trace(z4.scalar(c)) == c


@pytest.mark.parametrize("ringname", ["gr42", "gr92"])
def test_gen_trace_properties(ringname, request):
    ring = request.getfixturevalue(ringname)
    N = ring.modulus
    elems = list(all_elements(ring))
    # cache agrees with the Frobenius-sum definition
    for z in elems:
        assert gen_trace(z) == _trace_by_frobenius(z)
    # Z_{p^b}-linearity
    rng = random.Random(5)
    for _ in range(100):
        u, v = rng.choice(elems), rng.choice(elems)
        e = rng.randrange(N)
        assert gen_trace(u + v) == (gen_trace(u) + gen_trace(v)) % N
        assert gen_trace(u.scale(e)) == (e * gen_trace(u)) % N
    # surjectivity
    assert {gen_trace(z) for z in elems} == set(range(N))
    # nondegeneracy of the generating character
    for r in elems:
        if r:
            assert any(gen_trace(r * s) != 0 for s in elems)


def test_generating_character(gr42):
    chi = GeneratingCharacter(gr42)
    elems = list(all_elements(gr42))
    N = gr42.modulus
    for u in elems:
        assert chi.exponent(u) == char_exponent(u) == gen_trace(u)
        # H_t membership: chi(z) in <zeta^{p^{b-t}}> iff Tr(z) = 0 mod p^{b-t}
        for t in range(gr42.b + 1):
            assert chi.in_subgroup(u, t) == (gen_trace(u) % 2 ** (2 - t) == 0)
    for u, v in random.Random(1).sample(list(itertools.product(elems, repeat=2)), 60):
        assert chi.exponent(u + v) == (chi.exponent(u) + chi.exponent(v)) % N


def test_dual_basis_example(gr42):
    g = dual_basis(gr42)
    assert g[0].coeffs == (3, 1)
    assert g[1].coeffs == (1, 2)


@pytest.mark.parametrize("spec", [(2, 2, 1), (2, 2, 2), (3, 2, 2), (2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 3, 2)])
def test_dual_basis_defining_property(spec):
    ring = make_ring(*spec)
    g = dual_basis(ring)
    pw = ring.one
    for i in range(ring.m):
        for j in range(ring.m):
            assert gen_trace(pw * g[j]) == (1 if i == j else 0)
        pw = pw * ring.theta


def symplectic_exponent(ring, u, v):
    """Trace of <u|v>_s = sum(b_i a'_i - b'_i a_i), computed ring-side."""
    n = len(u) // 2
    acc = ring.zero
    for i in range(n):
        acc = acc + u[n + i] * v[i] - v[n + i] * u[i]
    return gen_trace(acc)


@pytest.mark.parametrize("spec", [(2, 2, 1), (2, 2, 2), (3, 2, 2), (2, 1, 2), (2, 1, 3)])
def test_phi_pairing_preservation(spec):
    ring = make_ring(*spec)
    N = ring.modulus
    elems = list(all_elements(ring))
    rng = random.Random(9)
    for _ in range(150):
        n = rng.choice([1, 2])
        u = [rng.choice(elems) for _ in range(2 * n)]
        v = [rng.choice(elems) for _ in range(2 * n)]
        fu, fv = phi_expand(ring, u), phi_expand(ring, v)
        assert len(fu) == 2 * n * ring.m
        nm = n * ring.m
        flat = sum(fu[nm + i] * fv[i] - fv[nm + i] * fu[i] for i in range(nm)) % N
        assert flat == symplectic_exponent(ring, u, v)


@pytest.mark.parametrize("spec", [(2, 2, 1), (2, 2, 2), (3, 2, 2)])
def test_phi_roundtrip(spec):
    ring = make_ring(*spec)
    elems = list(all_elements(ring))
    rng = random.Random(11)
    for _ in range(50):
        v = [rng.choice(elems) for _ in range(4)]
        assert list(phi_contract(ring, phi_expand(ring, v))) == v


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(2, 2, 2), (3, 2, 2), (2, 3, 2), (5, 1, 2), (2, 1, 4)]), st.data())
def test_ring_axioms(spec, data):
    ring = make_ring(*spec)
    N = ring.modulus
    draw = lambda: ring.element([data.draw(st.integers(0, N - 1)) for _ in range(ring.m)])
    a, b, c = draw(), draw(), draw()
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (b + c) == (a + b) + c
