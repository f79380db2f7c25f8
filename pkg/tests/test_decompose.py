"""Hyperbolic decomposition tests: worked instances plus randomized
invariant checks over several chain rings."""

import itertools
import random

import pytest

from eaqring.codes import (
    AdditiveCode,
    SymplecticVector,
    cardinality,
    chi_dual_level,
    code_intersection,
    code_rank,
    same_module,
    symplectic_product,
)
from eaqring.decompose import hyperbolic_decompose, rho_profile, verify_prop_count
from eaqring.galois import char_exponent, make_ring
from eaqring.zpblinalg import quotient_rank


def random_code(ring, n, k, rng):
    N = ring.modulus
    gens = []
    for _ in range(k):
        comps = [ring.element([rng.randrange(N) for _ in range(ring.m)]) for _ in range(2 * n)]
        gens.append(SymplecticVector.from_components(ring, comps))
    return AdditiveCode(ring, n, tuple(gens))


RINGS = [
    (make_ring(2, 2, 1), 1, 2),
    (make_ring(2, 2, 1), 2, 3),
    (make_ring(2, 3, 1), 1, 2),
    (make_ring(3, 2, 1), 1, 2),
    (make_ring(2, 2, 2), 1, 2),
    (make_ring(2, 1, 1), 2, 3),
]


@pytest.fixture(scope="module")
def z4():
    return make_ring(2, 2, 1)


def test_isotropic_only(z4):
    C = AdditiveCode.from_int_rows(z4, [[2, 0]])
    d = hyperbolic_decompose(C)
    assert d.c == 0 and not d.pairs
    assert same_module(AdditiveCode(z4, 1, d.isotropic), C)


def test_full_space(z4):
    C = AdditiveCode.from_int_rows(z4, [[1, 0], [0, 1]])
    d = hyperbolic_decompose(C)
    assert d.c == 1
    assert not d.isotropic
    assert char_exponent(d.grams[0]) != 0


def test_worked_instance(z4):
    C = AdditiveCode.from_int_rows(z4, [[1, 0], [0, 2]])
    d = hyperbolic_decompose(C)
    assert d.c == 1
    assert char_exponent(d.grams[0]) == 2
    # the pair already generates C minimally, so no isotropic completion;
    # C cap C-dual = {(0,0),(2,0)} sits inside the pair span
    assert d.isotropic == ()
    span = AdditiveCode(z4, 1, tuple(d.all_generators()))
    assert span.contains(SymplecticVector.from_ints(z4, [2, 0]))


def test_rho_profile_examples(z4):
    C = AdditiveCode.from_int_rows(z4, [[1, 0], [0, 2]])
    assert rho_profile(C) == (2,)
    full = AdditiveCode.from_int_rows(z4, [[1, 0], [0, 1]])
    assert rho_profile(full) == (0,)
    f4 = make_ring(2, 1, 2)
    C1 = AdditiveCode(f4, 1, (SymplecticVector(f4, (f4.one,), (f4.zero,)),))
    assert rho_profile(C1) == ()


def test_verify_prop_count_worked(z4):
    C = AdditiveCode.from_int_rows(z4, [[1, 0], [0, 2]])
    d = hyperbolic_decompose(C)
    for t in range(3):
        assert verify_prop_count(d, C, t)
    # t=1 specifics: both pair members in the level-1 dual
    dual1 = chi_dual_level(C, 1)
    assert sum(1 for p in d.pairs for mem in p if dual1.contains(mem)) == 2


@pytest.mark.parametrize("ring,n,kmax", RINGS)
def test_randomized_invariants(ring, n, kmax):
    rng = random.Random(hash((ring.p, ring.b, ring.m, n)) & 0xFFFF)
    for _ in range(8):
        C = random_code(ring, n, rng.randint(1, kmax), rng)
        d = hyperbolic_decompose(C)
        # span preservation
        assert same_module(AdditiveCode(ring, n, tuple(d.all_generators())), C)
        # pair count formula
        D = code_intersection(C, chi_dual_level(C, 0))
        assert 2 * d.c == quotient_rank(C.expanded_howell, D.expanded_howell)
        # lower bound from ranks
        assert 2 * d.c >= code_rank(C) - code_rank(D)
        # character pairing structure
        gens = d.all_generators()
        k = len(d.isotropic)
        for i, g in enumerate(gens):
            for j, h in enumerate(gens):
                ell = char_exponent(symplectic_product(g, h))
                partners = i >= k and j >= k and i != j and (i - k) // 2 == (j - k) // 2
                assert (ell != 0) == partners or (not partners and ell == 0)
        # prop:count at every level
        for t in range(ring.b + 1):
            assert verify_prop_count(d, C, t)
        # idempotence of the pair count
        d2 = hyperbolic_decompose(AdditiveCode(ring, n, tuple(gens)))
        assert d2.c == d.c
        # rho profile sanity
        rho = rho_profile(C)
        assert len(rho) == ring.b - 1
        assert all(r >= 0 and r % 2 == 0 for r in rho)
        assert sum(rho) <= 2 * d.c
