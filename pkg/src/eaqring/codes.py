"""Additive codes C over GR(p^b,m)^{2n}: symplectic products and weights,
chi-duals at every level, exact symplectic duals, cardinalities, membership,
puncturing, and exhaustive minimum symplectic distance.

Internally every code is its phi-expanded row module over Z_{p^b}^{2nm};
ring-level generators are reconstructed on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Sequence, Tuple

from .errors import DimensionMismatch, LimitExceeded, RingMismatch, SearchLimitExceeded
from .galois import GaloisRingSpec, RingElement, char_exponent, phi_contract, phi_expand
from .zpblinalg import (
    HowellBasis,
    ZpbMatrix,
    enumerate_module,
    howell_form,
    howell_member,
    intersect,
    kernel,
    minimal_generators,
    module_cardinality,
    smith_form,
)

DEFAULT_ENUM_LIMIT = 1 << 22


@dataclass(frozen=True)
class SymplecticVector:
    """A tuple (x, y) in R^n x R^n."""

    ring: GaloisRingSpec
    x: Tuple[RingElement, ...]
    y: Tuple[RingElement, ...]

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise DimensionMismatch("x and y halves differ in length")
        if any(e.ring != self.ring for e in self.x + self.y):
            raise RingMismatch("component from a different ring")

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def components(self) -> Tuple[RingElement, ...]:
        return self.x + self.y

    @classmethod
    def from_components(cls, ring: GaloisRingSpec, comps: Sequence[RingElement]) -> "SymplecticVector":
        n = len(comps) // 2
        return cls(ring, tuple(comps[:n]), tuple(comps[n:]))

    @classmethod
    def from_ints(cls, ring: GaloisRingSpec, flat: Sequence[int]) -> "SymplecticVector":
        """m=1 convenience: plain residues."""
        return cls.from_components(ring, [ring.scalar(c) for c in flat])

    def __add__(self, other: "SymplecticVector") -> "SymplecticVector":
        return SymplecticVector(self.ring,
                                tuple(a + b for a, b in zip(self.x, other.x)),
                                tuple(a + b for a, b in zip(self.y, other.y)))

    def scale(self, c: int) -> "SymplecticVector":
        return SymplecticVector(self.ring,
                                tuple(a.scale(c) for a in self.x),
                                tuple(a.scale(c) for a in self.y))

    def __bool__(self) -> bool:
        return any(self.x) or any(self.y)


def symplectic_product(u: SymplecticVector, v: SymplecticVector) -> RingElement:
    """<(a,b)|(a',b')>_s = b.a' - b'.a"""
    if u.ring != v.ring:
        raise RingMismatch("operands from different rings")
    if u.n != v.n:
        raise DimensionMismatch("operands of different length")
    acc = u.ring.zero
    for i in range(u.n):
        acc = acc + u.y[i] * v.x[i] - v.y[i] * u.x[i]
    return acc


def symplectic_weight(v: SymplecticVector) -> int:
    return sum(1 for a, b in zip(v.x, v.y) if a or b)


def _expanded_weight(flat: Sequence[int], n: int, m: int) -> int:
    """Symplectic weight read off the phi expansion: coordinate i is nonzero
    iff any of its m x-block or m y-block residues is (both halves are
    expanded in bases, so zero blocks mean zero ring components)."""
    nm = n * m
    w = 0
    for i in range(n):
        if any(flat[i * m:(i + 1) * m]) or any(flat[nm + i * m:nm + (i + 1) * m]):
            w += 1
    return w


@dataclass(frozen=True)
class AdditiveCode:
    """Z_{p^b}-submodule of GR(p^b,m)^{2n}."""

    ring: GaloisRingSpec
    n: int
    generators: Tuple[SymplecticVector, ...]

    def __post_init__(self):
        if any(g.ring != self.ring or g.n != self.n for g in self.generators):
            raise RingMismatch("generator does not match the code's ring or length")

    @property
    def ambient_cols(self) -> int:
        return 2 * self.n * self.ring.m

    @cached_property
    def expanded_matrix(self) -> ZpbMatrix:
        rows = [phi_expand(self.ring, g.components) for g in self.generators]
        if not rows:
            return ZpbMatrix(self.ring.p, self.ring.b, 0, self.ambient_cols, ())
        return ZpbMatrix.from_rows(self.ring.p, self.ring.b, rows, cols=self.ambient_cols)

    @cached_property
    def expanded_howell(self) -> HowellBasis:
        return howell_form(self.expanded_matrix)

    @classmethod
    def from_expanded(cls, ring: GaloisRingSpec, n: int, rows: Sequence[Sequence[int]]) -> "AdditiveCode":
        gens = tuple(SymplecticVector.from_components(ring, phi_contract(ring, r)) for r in rows)
        return cls(ring, n, gens)

    @classmethod
    def from_int_rows(cls, ring: GaloisRingSpec, rows: Sequence[Sequence[int]]) -> "AdditiveCode":
        """m=1 convenience: each row is 2n residues."""
        if not rows:
            raise ValueError("need at least one row to infer n; use AdditiveCode directly")
        n = len(rows[0]) // 2
        return cls(ring, n, tuple(SymplecticVector.from_ints(ring, r) for r in rows))

    def contains(self, v: SymplecticVector) -> bool:
        return howell_member(self.expanded_howell, phi_expand(self.ring, v.components))

    def minimal_generating_vectors(self) -> List[SymplecticVector]:
        rows = minimal_generators(self.expanded_matrix)
        return [SymplecticVector.from_components(self.ring, phi_contract(self.ring, r)) for r in rows]


def cardinality(C: AdditiveCode) -> int:
    return module_cardinality(C.expanded_matrix)


def same_module(C1: AdditiveCode, C2: AdditiveCode) -> bool:
    return C1.expanded_howell.matrix == C2.expanded_howell.matrix


def _pairing_columns(C: AdditiveCode, scale: int) -> ZpbMatrix:
    """Matrix whose columns are scale * (-B_c, A_c) over the generator rows
    c; a vector v is chi-orthogonal (at the given scale) to all generators
    iff phi(v) lies in the kernel."""
    p, b = C.ring.p, C.ring.b
    N = p ** b
    dim = C.ambient_cols
    nm = C.n * C.ring.m
    cols = []
    for i in range(C.expanded_matrix.rows):
        row = C.expanded_matrix.row(i)
        A_c, B_c = row[:nm], row[nm:]
        cols.append([(scale * (-x)) % N for x in B_c] + [(scale * x) % N for x in A_c])
    if not cols:
        return ZpbMatrix(p, b, dim, 0, ())
    flat = tuple(cols[j][i] for i in range(dim) for j in range(len(cols)))
    return ZpbMatrix(p, b, dim, len(cols), flat)


def chi_dual_level(C: AdditiveCode, t: int) -> AdditiveCode:
    """C^{chi-dual, t}: vectors v with Tr(<v|c>_s) = 0 mod p^{b-t} for all
    c in C.  t = 0 is the plain chi-dual; t = b is the full ambient space."""
    if not 0 <= t <= C.ring.b:
        raise ValueError("level t out of range")
    K = kernel(_pairing_columns(C, C.ring.p ** t))
    return AdditiveCode.from_expanded(C.ring, C.n, K.matrix.to_rows())


def symplectic_dual(C: AdditiveCode) -> AdditiveCode:
    """Exact dual: <c|v>_s = 0 in the ring, for all c in C.

    A ring element r is zero iff Tr(r * theta^j) = 0 for all j < m, so the
    exact dual is the chi-dual of C enlarged by the theta^j-multiples of its
    generators.
    """
    ring = C.ring
    scaled_gens: List[SymplecticVector] = []
    for g in C.generators:
        pw = ring.one
        for _ in range(ring.m):
            scaled_gens.append(SymplecticVector(
                ring, tuple(pw * e for e in g.x), tuple(pw * e for e in g.y)))
            pw = pw * ring.theta
    enlarged = AdditiveCode(ring, C.n, tuple(scaled_gens))
    K = kernel(_pairing_columns(enlarged, 1))
    return AdditiveCode.from_expanded(ring, C.n, K.matrix.to_rows())


def code_intersection(C1: AdditiveCode, C2: AdditiveCode) -> AdditiveCode:
    if C1.ring != C2.ring or C1.n != C2.n:
        raise DimensionMismatch("codes live in different ambient spaces")
    H = intersect(C1.expanded_howell, C2.expanded_howell)
    return AdditiveCode.from_expanded(C1.ring, C1.n, H.matrix.to_rows())


def is_chi_self_orthogonal(C: AdditiveCode) -> bool:
    gens = C.generators
    return all(char_exponent(symplectic_product(g, h)) == 0
               for i, g in enumerate(gens) for h in gens[i:])


def iterate_codewords(C: AdditiveCode, limit: int = DEFAULT_ENUM_LIMIT) -> Iterator[Tuple[int, ...]]:
    """Every phi-expanded codeword exactly once; raises SearchLimitExceeded."""
    try:
        yield from enumerate_module(C.expanded_howell, limit)
    except LimitExceeded as e:
        raise SearchLimitExceeded(e.cardinality) from None


def min_symplectic_distance(C: AdditiveCode, mode: str = "code",
                            limit: int = DEFAULT_ENUM_LIMIT) -> float:
    """Exhaustive minimum symplectic weight over the chosen set.

    mode 'code': C itself; 'dual': the chi-dual at level 0; 'dual_minus_code':
    the chi-dual with members of C skipped.  Returns math.inf when the set
    minus {0} is empty.
    """
    if mode not in ("code", "dual", "dual_minus_code"):
        raise ValueError(f"unknown mode {mode!r}")
    n, m = C.n, C.ring.m
    target = C if mode == "code" else chi_dual_level(C, 0)
    skip = C.expanded_howell if mode == "dual_minus_code" else None
    best = math.inf
    for flat in iterate_codewords(target, limit):
        if not any(flat):
            continue
        if skip is not None and howell_member(skip, flat):
            continue
        w = _expanded_weight(flat, n, m)
        if w < best:
            best = w
            if best == 1:
                break
    return best


def puncture(C: AdditiveCode, keep_n: int) -> AdditiveCode:
    """Drop the last n - keep_n coordinates of each half."""
    if not 0 <= keep_n <= C.n:
        raise DimensionMismatch(f"keep_n = {keep_n} out of range for n = {C.n}")
    gens = tuple(SymplecticVector(C.ring, g.x[:keep_n], g.y[:keep_n]) for g in C.generators)
    return AdditiveCode(C.ring, keep_n, gens)


def code_rank(C: AdditiveCode) -> int:
    return len(smith_form(C.expanded_matrix).diag_exponents)


def is_free(C: AdditiveCode) -> bool:
    return all(e == 0 for e in smith_form(C.expanded_matrix).diag_exponents)
