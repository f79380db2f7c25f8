"""Brute-force Pauli verifier: explicit q^n x q^n matrices for X(a)Z(b),
stabilizer-group assembly through an effective character xi, projector
dimension, and exhaustive undetectable-error search.

The phase scale is omega = exp(2*pi*i/N) with N = p^b for odd p and 2p^b
for p = 2; the additive character zeta = exp(2*pi*i/p^b) embeds via the
exponent factor N/p^b.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import math

import numpy as np

from .codes import AdditiveCode, SymplecticVector, chi_dual_level, iterate_codewords
from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    InternalInvariantViolation,
    NonProjector,
    RingMismatch,
    SearchLimitExceeded,
)
from .extension import SelfOrthogonalExtension
from .galois import GaloisRingSpec, RingElement, gen_trace, phi_contract
from .zpblinalg import smith_form, solve_congruence

DEFAULT_MATRIX_DIM = 1024


def omega_modulus(ring: GaloisRingSpec) -> int:
    """N: the order of the phase root of unity omega."""
    return ring.modulus * (2 if ring.p == 2 else 1)


@dataclass(frozen=True)
class PauliOperator:
    """omega^phase_exp * X(a) Z(b) acting on n qudits of dimension q."""

    ring: GaloisRingSpec
    n: int
    phase_exp: int
    a: Tuple[RingElement, ...]
    b: Tuple[RingElement, ...]

    def __post_init__(self):
        if len(self.a) != self.n or len(self.b) != self.n:
            raise DimensionMismatch("support length does not match n")
        if any(e.ring != self.ring for e in self.a + self.b):
            raise RingMismatch("component from a different ring")

    @property
    def weight(self) -> int:
        return sum(1 for x, z in zip(self.a, self.b) if x or z)

    def is_scalar(self) -> bool:
        return not any(self.a) and not any(self.b)

    def key(self) -> tuple:
        return (self.phase_exp,
                tuple(e.coeffs for e in self.a), tuple(e.coeffs for e in self.b))


def identity_operator(ring: GaloisRingSpec, n: int) -> PauliOperator:
    z = tuple([ring.zero] * n)
    return PauliOperator(ring, n, 0, z, z)


def from_vector(v: SymplecticVector, phase_exp: int = 0) -> PauliOperator:
    return PauliOperator(v.ring, v.n, phase_exp % omega_modulus(v.ring), v.x, v.y)


def psi_map(P: PauliOperator) -> SymplecticVector:
    """Drop the phase: omega^l X(a)Z(b) -> (a, b)."""
    return SymplecticVector(P.ring, P.a, P.b)


def compose(P: PauliOperator, Q: PauliOperator) -> PauliOperator:
    """P*Q = omega^{phases} chi(b.a') X(a+a') Z(b+b')."""
    if P.ring != Q.ring or P.n != Q.n:
        raise DimensionMismatch("operands act on different spaces")
    ring = P.ring
    N = omega_modulus(ring)
    cross = ring.zero
    for i in range(P.n):
        cross = cross + P.b[i] * Q.a[i]
    phase = (P.phase_exp + Q.phase_exp + (N // ring.modulus) * gen_trace(cross)) % N
    return PauliOperator(ring, P.n, phase,
                         tuple(x + y for x, y in zip(P.a, Q.a)),
                         tuple(x + y for x, y in zip(P.b, Q.b)))


def inverse(P: PauliOperator) -> PauliOperator:
    Q = PauliOperator(P.ring, P.n, 0, tuple(-x for x in P.a), tuple(-x for x in P.b))
    R = compose(P, Q)
    if not R.is_scalar():
        raise InternalInvariantViolation("inverse support mismatch")
    # R carries P's phase plus the cross term, so negating it cancels both
    return PauliOperator(P.ring, P.n, (-R.phase_exp) % omega_modulus(P.ring), Q.a, Q.b)


def operator_power(P: PauliOperator, e: int) -> PauliOperator:
    out = identity_operator(P.ring, P.n)
    for _ in range(e):
        out = compose(out, P)
    return out


def _element_index(z: RingElement) -> int:
    N = z.ring.modulus
    idx = 0
    for c in reversed(z.coeffs):
        idx = idx * N + c
    return idx


def _all_elements(ring: GaloisRingSpec) -> List[RingElement]:
    """All ring elements, ordered by their state index."""
    import itertools
    out = [None] * ring.cardinality
    N = ring.modulus
    for coeffs in itertools.product(range(N), repeat=ring.m):
        el = ring.element(coeffs)
        out[_element_index(el)] = el
    return out


def _state_index(vec: Sequence[RingElement], q: int) -> int:
    idx = 0
    for el in vec:
        idx = idx * q + _element_index(el)
    return idx


def pauli_matrix(P: PauliOperator, max_dim: int = DEFAULT_MATRIX_DIM) -> np.ndarray:
    """Dense unitary: entry omega^l zeta^{Tr(b.x)} at (x+a, x)."""
    ring = P.ring
    q = ring.cardinality
    dim = q ** P.n
    if dim > max_dim:
        raise DimensionTooLarge(f"q^n = {dim} exceeds the matrix cap {max_dim}")
    N = omega_modulus(ring)
    omega = np.exp(2j * np.pi / N)
    chi_scale = N // ring.modulus
    elems = _all_elements(ring)
    import itertools
    M = np.zeros((dim, dim), dtype=np.complex128)
    base = omega ** P.phase_exp
    for x in itertools.product(elems, repeat=P.n):
        col = _state_index(x, q)
        row = _state_index([xi + ai for xi, ai in zip(x, P.a)], q)
        dot = ring.zero
        for bi, xi in zip(P.b, x):
            dot = dot + bi * xi
        M[row, col] = base * omega ** (chi_scale * gen_trace(dot))
    return M


@dataclass(frozen=True)
class StabilizerGroup:
    """One operator per codeword of a chi-self-orthogonal code."""

    ring: GaloisRingSpec
    n: int
    elements: Tuple[PauliOperator, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


def build_stabilizer(ext: SelfOrthogonalExtension,
                     max_dim: int = DEFAULT_MATRIX_DIM) -> StabilizerGroup:
    """Assemble A = { xi((X(v)Z(w))^{-1}) X(v)Z(w) : (v,w) in C' }.

    The group generated by omega*I and phase-free lifts of a Smith minimal
    generating set of C' has the diagonal relation lattice o_i g_i = phi_i
    (scalars found by symbolic composition), so the character extension
    with xi(omega*I) = omega reduces to one congruence o_i t_i = phi_i per
    generator.
    """
    ring = ext.extended.ring
    ntot = ext.extended.n
    q = ring.cardinality
    if q ** ntot > max_dim:
        raise DimensionTooLarge(f"q^(n+c) = {q ** ntot} exceeds the matrix cap {max_dim}")
    N = omega_modulus(ring)
    sd = smith_form(ext.extended.expanded_matrix)
    p, b = ring.p, ring.b
    gens: List[PauliOperator] = []
    orders: List[int] = []
    tees: List[int] = []
    for i, e in enumerate(sd.diag_exponents):
        row = tuple((p ** e * x) % ring.modulus for x in sd.right.row(i))
        vec = SymplecticVector.from_components(ring, phi_contract(ring, row))
        g = from_vector(vec)
        o = p ** (b - e)
        pw = operator_power(g, o)
        if not pw.is_scalar():
            raise InternalInvariantViolation("generator order does not annihilate support")
        gens.append(g)
        orders.append(o)
        tees.append(solve_congruence(o, pw.phase_exp, N))
    elements = []
    k = len(gens)
    counter = [0] * k
    while True:
        prod = identity_operator(ring, ntot)
        for i in range(k):
            for _ in range(counter[i]):
                prod = compose(prod, gens[i])
        xi_exp = (-prod.phase_exp + sum(c * t for c, t in zip(counter, tees))) % N
        elements.append(PauliOperator(ring, ntot, (-xi_exp) % N, prod.a, prod.b))
        i = k - 1
        while i >= 0:
            counter[i] += 1
            if counter[i] < orders[i]:
                break
            counter[i] = 0
            i -= 1
        if i < 0:
            break
    group = StabilizerGroup(ring, ntot, tuple(elements))
    _check_stabilizer(group, ext)
    return group


def _check_stabilizer(group: StabilizerGroup, ext: SelfOrthogonalExtension) -> None:
    from .galois import char_exponent
    from .codes import symplectic_product

    for el in group.elements:
        if el.is_scalar() and el.phase_exp != 0:
            raise InternalInvariantViolation("nontrivial scalar in the stabilizer")
    # abelianness on the elements' supports
    for i, eli in enumerate(group.elements):
        for elj in group.elements[i + 1:]:
            if char_exponent(symplectic_product(psi_map(eli), psi_map(elj))) != 0:
                raise InternalInvariantViolation("stabilizer is not abelian")
    # closure at small sizes
    if group.size <= 64:
        keys: Dict[tuple, int] = {el.key(): 1 for el in group.elements}
        for eli in group.elements:
            for elj in group.elements:
                if compose(eli, elj).key() not in keys:
                    raise InternalInvariantViolation("stabilizer is not closed")


def stabilizer_projector(group: StabilizerGroup,
                         max_dim: int = DEFAULT_MATRIX_DIM) -> np.ndarray:
    q = group.ring.cardinality
    dim = q ** group.n
    if dim > max_dim:
        raise DimensionTooLarge(f"q^n = {dim} exceeds the matrix cap {max_dim}")
    P = np.zeros((dim, dim), dtype=np.complex128)
    for el in group.elements:
        P += pauli_matrix(el, max_dim)
    P /= group.size
    return P


def projector_dimension(group: StabilizerGroup,
                        max_dim: int = DEFAULT_MATRIX_DIM) -> int:
    """Trace of the averaged stabilizer sum, asserted idempotent."""
    P = stabilizer_projector(group, max_dim)
    if np.max(np.abs(P @ P - P)) > 1e-9:
        raise NonProjector("averaged stabilizer sum is not idempotent")
    tr = np.trace(P)
    k = round(tr.real)
    if abs(tr - k) > 1e-6:
        raise NonProjector(f"projector trace {tr} is not an integer")
    return int(k)


@dataclass(frozen=True)
class ErrorSearchResult:
    dimension: int
    undetectable: Tuple[Tuple[int, ...], ...]  # phi-expanded (a,b) over R^{2n}
    min_weight: float
    set_matches_dual_minus_code: bool
    dim1_distance: object  # min weight with nonzero amplitude, when K = 1


def undetectable_error_search(C: AdditiveCode, ext: SelfOrthogonalExtension,
                              group: StabilizerGroup,
                              limit: int = 1 << 22,
                              max_dim: int = DEFAULT_MATRIX_DIM) -> ErrorSearchResult:
    """Classify every error X(a,0)Z(b,0), (a,b) in R^{2n}, by the matrix
    criterion on an orthonormal basis of the code space, and cross-check
    the undetectable set against C^{chi-dual} minus C."""
    ring = C.ring
    n, ntot = C.n, ext.extended.n
    q = ring.cardinality
    if q ** (2 * n) > limit:
        raise SearchLimitExceeded(q ** (2 * n))
    P = stabilizer_projector(group, max_dim)
    if np.max(np.abs(P @ P - P)) > 1e-9:
        raise NonProjector("averaged stabilizer sum is not idempotent")
    vals, vecs = np.linalg.eigh(P)
    U = vecs[:, vals > 0.5]
    K = U.shape[1]
    zeros = [ring.zero] * (ntot - n)
    elems = _all_elements(ring)
    import itertools
    undet: List[Tuple[int, ...]] = []
    best = math.inf
    dim1_best = math.inf
    for ab in itertools.product(elems, repeat=2 * n):
        a, b = ab[:n], ab[n:]
        if not any(a) and not any(b):
            continue
        vec = SymplecticVector(ring, a, b)
        E = pauli_matrix(PauliOperator(ring, ntot, 0,
                                       tuple(a) + tuple(zeros),
                                       tuple(b) + tuple(zeros)), max_dim)
        M = U.conj().T @ E @ U
        lam = M[0, 0]
        w = sum(1 for x, z in zip(a, b) if x or z)
        if np.max(np.abs(M - lam * np.eye(K))) > 1e-8:
            from .galois import phi_expand
            undet.append(tuple(phi_expand(ring, vec.components)))
            best = min(best, w)
        if K == 1 and abs(lam) > 1e-8:
            dim1_best = min(dim1_best, w)
    dual = chi_dual_level(C, 0)
    want = {flat for flat in iterate_codewords(dual, limit)
            if any(flat) and not C.contains(
                SymplecticVector.from_components(ring, phi_contract(ring, flat)))}
    matches = set(undet) == want
    return ErrorSearchResult(
        dimension=K,
        undetectable=tuple(sorted(undet)),
        min_weight=best,
        set_matches_dual_minus_code=matches,
        dim1_distance=(dim1_best if K == 1 else None),
    )
