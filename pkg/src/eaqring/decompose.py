"""Symplectic Gram-Schmidt over Z_{p^b}: rewrite a code's generating set as
isotropic generators plus hyperbolic pairs, and compute the rho profile
tracking how pair pivots degrade across the chi-dual levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

from .codes import (
    AdditiveCode,
    SymplecticVector,
    chi_dual_level,
    code_intersection,
    symplectic_product,
)
from .errors import InternalInvariantViolation, NoSolution
from .galois import RingElement, char_exponent, phi_contract
from .zpblinalg import howell_form, howell_member, quotient_rank, solve_congruence


@dataclass(frozen=True)
class HyperbolicDecomposition:
    """Generators of C split into isotropic vectors and hyperbolic pairs.

    Each pair ((v_i,w_i),(x_i,y_i)) has character-nontrivial gram
    gamma_i = <(v_i,w_i)|(x_i,y_i)>_s, and every other pairing among the
    listed generators is character-trivial.
    """

    code: AdditiveCode
    isotropic: Tuple[SymplecticVector, ...]
    pairs: Tuple[Tuple[SymplecticVector, SymplecticVector], ...]
    grams: Tuple[RingElement, ...]

    @property
    def c(self) -> int:
        return len(self.pairs)

    def all_generators(self) -> List[SymplecticVector]:
        out = list(self.isotropic)
        for a, b in self.pairs:
            out.extend((a, b))
        return out


def _expanded_pairing(u, v, nm, N):
    """Integer symplectic form on phi-expanded rows: equals Tr(<u|v>_s)."""
    return sum(u[nm + i] * v[i] - v[nm + i] * u[i] for i in range(nm)) % N


def _lift_quotient_basis(C: AdditiveCode, D: AdditiveCode) -> List[Tuple[int, ...]]:
    """Codewords projecting to a minimal generating set of C/D.

    Greedy over the Smith minimal generators of C: keep a candidate iff it
    falls outside span(pC + D + already chosen); by Nakayama the chosen
    images generate the quotient minimally.
    """
    p, b = C.ring.p, C.ring.b
    N = p ** b
    target = quotient_rank(C.expanded_howell, D.expanded_howell)
    base_rows = [[(p * x) % N for x in r] for r in C.expanded_matrix.to_rows()]
    base_rows += D.expanded_matrix.to_rows()
    chosen: List[Tuple[int, ...]] = []
    from .zpblinalg import ZpbMatrix, minimal_generators

    def spanning():
        rows = base_rows + [list(r) for r in chosen]
        m = ZpbMatrix.from_rows(p, b, rows, cols=C.ambient_cols) if rows \
            else ZpbMatrix(p, b, 0, C.ambient_cols, ())
        return howell_form(m)

    H = spanning()
    for cand in minimal_generators(C.expanded_matrix):
        if len(chosen) == target:
            break
        if not howell_member(H, cand):
            chosen.append(cand)
            H = spanning()
    if len(chosen) != target:
        raise InternalInvariantViolation("quotient basis lift fell short")
    return chosen


def _complete_generating_set(C: AdditiveCode, D: AdditiveCode,
                             lifted: List[Tuple[int, ...]]) -> List[List[int]]:
    """Isotropic completion: extend the lifted quotient generators to a
    minimal generating set of C with candidates from D's minimal
    generators (C = span(lifted) + D, so candidates suffice).

    Keeping the full list minimal means it is a basis whenever C is free,
    which the extension's free-module cardinality equality relies on.
    """
    from .zpblinalg import ZpbMatrix, minimal_generators

    p, b = C.ring.p, C.ring.b
    N = p ** b
    base = [[(p * x) % N for x in r] for r in C.expanded_matrix.to_rows()]
    base += [list(r) for r in lifted]
    chosen: List[List[int]] = []

    def span_howell():
        rows = base + chosen
        m = ZpbMatrix.from_rows(p, b, rows, cols=C.ambient_cols) if rows \
            else ZpbMatrix(p, b, 0, C.ambient_cols, ())
        return howell_form(m)

    H = span_howell()
    for cand in minimal_generators(D.expanded_matrix):
        if not howell_member(H, cand):
            chosen.append(list(cand))
            H = span_howell()
    return chosen


def hyperbolic_decompose(C: AdditiveCode) -> HyperbolicDecomposition:
    """Split C into isotropic generators and hyperbolic pairs.

    Pivot pairs are chosen by minimal gcd of the pairing exponent with p^b
    (ties: lowest index pair), the rest eliminated through the two solvable
    congruences; leftover generators with all-trivial pairings join the
    isotropic set alongside an isotropic completion drawn from C's
    intersection with its chi-dual.
    """
    ring = C.ring
    p, b = ring.p, ring.b
    N = p ** b
    nm = C.n * ring.m
    D = code_intersection(C, chi_dual_level(C, 0))
    work = [list(r) for r in _lift_quotient_basis(C, D)]
    lifted = [tuple(r) for r in work]
    pairs: List[Tuple[SymplecticVector, SymplecticVector]] = []

    def pairing(i, j):
        return _expanded_pairing(work[i], work[j], nm, N)

    while True:
        best = None
        best_g = N + 1
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                ell = pairing(i, j)
                if ell:
                    g = math.gcd(ell, N)
                    if g < best_g:
                        best, best_g = (i, j), g
        if best is None:
            break
        i, j = best
        g1 = work.pop(j)
        g0 = work.pop(i)
        ell12 = _expanded_pairing(g0, g1, nm, N)
        new_work = []
        for gk in work:
            try:
                u = solve_congruence(ell12, _expanded_pairing(g1, gk, nm, N), N)
                v = solve_congruence(ell12, -_expanded_pairing(g0, gk, nm, N), N)
            except NoSolution:
                raise InternalInvariantViolation(
                    "elimination congruence unsolvable despite minimal-gcd pivot")
            new_work.append([(gk[t] + u * g0[t] + v * g1[t]) % N for t in range(2 * nm)])
        work = new_work
        pairs.append((
            SymplecticVector.from_components(ring, phi_contract(ring, g0)),
            SymplecticVector.from_components(ring, phi_contract(ring, g1)),
        ))

    iso_rows = _complete_generating_set(C, D, lifted)
    isotropic = tuple(
        SymplecticVector.from_components(ring, phi_contract(ring, r))
        for r in iso_rows + work)
    grams = tuple(symplectic_product(a, bb) for a, bb in pairs)

    d = HyperbolicDecomposition(code=C, isotropic=isotropic, pairs=tuple(pairs), grams=grams)
    _check_decomposition(d)
    return d


def _check_decomposition(d: HyperbolicDecomposition) -> None:
    C = d.code
    gens = d.all_generators()
    k = len(d.isotropic)
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            ell = char_exponent(symplectic_product(g, h))
            in_pair = (i >= k and j >= k and i != j and (i - k) // 2 == (j - k) // 2)
            if in_pair:
                if ell == 0:
                    raise InternalInvariantViolation("hyperbolic pair with trivial character gram")
            elif ell != 0:
                raise InternalInvariantViolation("non-partner generators pair nontrivially")
    rebuilt = AdditiveCode(C.ring, C.n, tuple(gens))
    if rebuilt.expanded_howell.matrix != C.expanded_howell.matrix:
        raise InternalInvariantViolation("decomposition does not span the code")
    D = code_intersection(C, chi_dual_level(C, 0))
    if 2 * d.c != quotient_rank(C.expanded_howell, D.expanded_howell):
        raise InternalInvariantViolation("pair count does not match rank(C/(C cap C-dual))")


def rho_profile(C: AdditiveCode) -> Tuple[int, ...]:
    """(rho_1, ..., rho_{b-1}) with rho_t the drop in rank(C/(C cap
    C^{chi-dual,t})) from level t-1 to t; each entry is even and >= 0."""
    b = C.ring.b
    ranks = []
    for t in range(b):
        It = code_intersection(C, chi_dual_level(C, t))
        ranks.append(quotient_rank(C.expanded_howell, It.expanded_howell))
    out = []
    for t in range(1, b):
        rho = ranks[t - 1] - ranks[t]
        if rho < 0 or rho % 2:
            raise InternalInvariantViolation(f"rho_{t} = {rho} is not even and non-negative")
        out.append(rho)
    return tuple(out)


def verify_prop_count(d: HyperbolicDecomposition, C: AdditiveCode, t: int) -> bool:
    """Number of pair members inside C^{chi-dual,t} equals the rank drop
    from level 0 to level t."""
    dual_t = chi_dual_level(C, t)
    count = sum(1 for pair in d.pairs for member in pair if dual_t.contains(member))
    D0 = code_intersection(C, chi_dual_level(C, 0))
    Dt = code_intersection(C, dual_t)
    diff = quotient_rank(C.expanded_howell, D0.expanded_howell) \
        - quotient_rank(C.expanded_howell, Dt.expanded_howell)
    return count == diff
