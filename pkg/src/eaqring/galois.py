"""Galois ring arithmetic: GR(p^b, m) = Z_{p^b}[x]/<h(x)>.

Covers ring construction with a canonical defining polynomial, Teichmuller
digits, the generalized Frobenius and trace, dual bases, the generating
additive character, and the coordinate expansion phi down to Z_{p^b}^m.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import List, Sequence, Tuple

from .errors import (
    HPolyInvalid,
    InternalInvariantViolation,
    ParameterTooLarge,
    RingMismatch,
    SingularTraceForm,
)
from .zpblinalg import _is_prime


def _prime_factors(n: int) -> List[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_mul_mod(a: Sequence[int], c: Sequence[int], h: Sequence[int], N: int) -> Tuple[int, ...]:
    """Product of polynomials a*c reduced mod the monic h and mod N."""
    m = len(h) - 1
    prod = [0] * (len(a) + len(c) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, cj in enumerate(c):
                prod[i + j] = (prod[i + j] + ai * cj) % N
    for d in range(len(prod) - 1, m - 1, -1):
        coef = prod[d]
        if coef:
            prod[d] = 0
            for k in range(m):
                prod[d - m + k] = (prod[d - m + k] - coef * h[k]) % N
    return tuple(prod[:m]) if m else ()


def _poly_pow_mod(a: Sequence[int], e: int, h: Sequence[int], N: int) -> Tuple[int, ...]:
    m = len(h) - 1
    result = tuple([1] + [0] * (m - 1))
    base = tuple(x % N for x in a)
    while e:
        if e & 1:
            result = _poly_mul_mod(result, base, h, N)
        base = _poly_mul_mod(base, base, h, N)
        e >>= 1
    return result


def _is_primitive_mod_p(hbar: Sequence[int], p: int, m: int) -> bool:
    """x generates the full cyclic group of order p^m - 1 mod (hbar, p)."""
    if hbar[0] % p == 0:
        return False
    order = p ** m - 1
    x = tuple([0, 1] + [0] * (m - 2)) if m >= 2 else (hbar[0],)
    one = tuple([1] + [0] * (m - 1))
    if _poly_pow_mod(x, order, hbar, p) != one:
        return False
    for ell in _prime_factors(order):
        if _poly_pow_mod(x, order // ell, hbar, p) == one:
            return False
    return True


@dataclass(frozen=True)
class GaloisRingSpec:
    """Immutable description of GR(p^b, m) with arithmetic caches."""

    p: int
    b: int
    m: int
    h_coeffs: Tuple[int, ...]  # m+1 residues mod p^b, low-to-high, monic

    @property
    def modulus(self) -> int:
        return self.p ** self.b

    @property
    def cardinality(self) -> int:
        return self.p ** (self.b * self.m)

    def element(self, coeffs: Sequence[int]) -> "RingElement":
        N = self.modulus
        return RingElement(self, tuple(c % N for c in coeffs))

    def scalar(self, c: int) -> "RingElement":
        return self.element([c] + [0] * (self.m - 1))

    @property
    def zero(self) -> "RingElement":
        return self.scalar(0)

    @property
    def one(self) -> "RingElement":
        return self.scalar(1)

    @property
    def theta(self) -> "RingElement":
        """Canonical root of h: the power-basis generator x (a unit of order p^m - 1)."""
        if self.m == 1:
            return self.scalar(-self.h_coeffs[0])
        return self.element([0, 1] + [0] * (self.m - 2))

    @cached_property
    def teichmuller(self) -> Tuple["RingElement", ...]:
        """T = (0, 1, beta, beta^2, ..., beta^{p^m-2}) with beta = theta."""
        out = [self.zero, self.one]
        beta = self.theta
        cur = beta
        for _ in range(self.p ** self.m - 2):
            out.append(cur)
            cur = cur * beta
        if cur != self.one or len({e.coeffs for e in out}) != self.p ** self.m:
            raise InternalInvariantViolation("Teichmuller set is not p^m distinct roots of unity")
        return tuple(out)

    @cached_property
    def _teich_mod_p(self) -> dict:
        return {tuple(c % self.p for c in t.coeffs): t for t in self.teichmuller}

    @cached_property
    def tr_powers(self) -> Tuple[int, ...]:
        """Tr(theta^j) for j < m; makes gen_trace a dot product."""
        out = []
        pw = self.one
        for _ in range(self.m):
            out.append(_trace_by_frobenius(pw))
            pw = pw * self.theta
        return tuple(out)

    @cached_property
    def dual(self) -> Tuple["RingElement", ...]:
        """The unique dual basis of {1, theta, ..., theta^{m-1}}."""
        m, N = self.m, self.modulus
        # gram[i][k] = Tr(theta^{i+k}); trace is Z_{p^b}-linear, so precompute
        # traces of powers up to 2m-2
        tr_high = []
        pw = self.one
        for _ in range(2 * m - 1):
            tr_high.append(gen_trace(pw))
            pw = pw * self.theta
        aug = [[tr_high[i + k] for k in range(m)] + [1 if i == j else 0 for j in range(m)]
               for i in range(m)]
        for col in range(m):
            piv = next((r for r in range(col, m) if aug[r][col] % self.p != 0), None)
            if piv is None:
                raise SingularTraceForm("trace form has no unit pivot")
            aug[col], aug[piv] = aug[piv], aug[col]
            inv = pow(aug[col][col], -1, N)
            aug[col] = [(inv * x) % N for x in aug[col]]
            for r in range(m):
                if r != col and aug[r][col]:
                    c = aug[r][col]
                    aug[r] = [(aug[r][j] - c * aug[col][j]) % N for j in range(2 * m)]
        # column j of the inverse gram gives the theta-coordinates of gamma_j
        return tuple(self.element([aug[i][m + j] for i in range(m)]) for j in range(m))


@dataclass(frozen=True)
class RingElement:
    """Element of GR(p^b, m) in power-basis coordinates (1, theta, ...)."""

    ring: GaloisRingSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ring.m:
            raise RingMismatch("coefficient count does not match the ring degree")

    def _check(self, other: "RingElement"):
        if self.ring != other.ring:
            raise RingMismatch("elements belong to different rings")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        N = self.ring.modulus
        return RingElement(self.ring, tuple((a + c) % N for a, c in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        N = self.ring.modulus
        return RingElement(self.ring, tuple((a - c) % N for a, c in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "RingElement":
        N = self.ring.modulus
        return RingElement(self.ring, tuple((-a) % N for a in self.coeffs))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        return RingElement(self.ring, _poly_mul_mod(self.coeffs, other.coeffs,
                                                    self.ring.h_coeffs, self.ring.modulus))

    def scale(self, c: int) -> "RingElement":
        N = self.ring.modulus
        return RingElement(self.ring, tuple((c * a) % N for a in self.coeffs))

    def __pow__(self, e: int) -> "RingElement":
        return RingElement(self.ring, _poly_pow_mod(self.coeffs, e,
                                                    self.ring.h_coeffs, self.ring.modulus))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_scalar(self) -> bool:
        return not any(self.coeffs[1:])


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def teichmuller_decompose(z: RingElement) -> Tuple[RingElement, ...]:
    """p-adic digits (z_0, ..., z_{b-1}) of z, each from the Teichmuller set."""
    ring = z.ring
    p, b, N = ring.p, ring.b, ring.modulus
    lookup = ring._teich_mod_p
    digits = []
    cur = list(z.coeffs)
    for t in range(b):
        d = lookup[tuple(c % p for c in cur)]
        digits.append(d)
        # the tail after t digits only lives mod p^{b-t}
        Nt = p ** (b - t)
        cur = [((c - dc) % Nt) // p for c, dc in zip(cur, d.coeffs)]
    if any(cur):
        raise InternalInvariantViolation("Teichmuller decomposition did not terminate")
    acc = ring.zero
    for t in range(b - 1, -1, -1):
        acc = acc.scale(p) + digits[t]
    if acc != z:
        raise InternalInvariantViolation("Teichmuller recomposition mismatch")
    return tuple(digits)


def frobenius(z: RingElement) -> RingElement:
    """Generalized Frobenius: p-th power on each Teichmuller digit."""
    ring = z.ring
    out = ring.zero
    for t, d in enumerate(teichmuller_decompose(z)):
        out = out + (d ** ring.p).scale(ring.p ** t)
    return out


def _trace_by_frobenius(z: RingElement) -> int:
    s = z
    cur = z
    for _ in range(z.ring.m - 1):
        cur = frobenius(cur)
        s = s + cur
    if not s.is_scalar():
        raise InternalInvariantViolation("trace is not scalar; ring construction bug")
    return s.coeffs[0]


def gen_trace(z: RingElement) -> int:
    """Generalized trace Tr(z) = z + f(z) + ... + f^{m-1}(z), as a residue."""
    N = z.ring.modulus
    return sum(c * t for c, t in zip(z.coeffs, z.ring.tr_powers)) % N


def char_exponent(z: RingElement) -> int:
    """Exponent k with chi(z) = zeta^k for the generating character chi."""
    return gen_trace(z)


def dual_basis(ring: GaloisRingSpec) -> Tuple[RingElement, ...]:
    return ring.dual


@dataclass(frozen=True)
class GeneratingCharacter:
    """chi(r) = zeta^{Tr(r)} with zeta = exp(2*pi*i/p^b)."""

    ring: GaloisRingSpec

    def exponent(self, z: RingElement) -> int:
        return gen_trace(z)

    def in_subgroup(self, z: RingElement, t: int) -> bool:
        """Whether chi(z) lies in H_t, iff Tr(z) = 0 mod p^{b-t}."""
        return gen_trace(z) % self.ring.p ** (self.ring.b - t) == 0


def _dual_coords(z: RingElement) -> Tuple[int, ...]:
    """Coordinates of z in the dual basis: j-th is Tr(z * theta^j)."""
    out = []
    pw = z
    for _ in range(z.ring.m):
        out.append(gen_trace(pw))
        pw = pw * z.ring.theta
    return tuple(out)


def phi_expand(ring: GaloisRingSpec, vec: Sequence[RingElement]) -> Tuple[int, ...]:
    """Expand a length-2n vector over the ring into 2nm residues.

    The first half is expanded in power-basis coordinates and the second
    half in dual-basis coordinates; this is the unique mixed convention
    under which Tr(<u|v>_s) = <phi(u)|phi(v)>_s holds identically.
    """
    if len(vec) % 2:
        raise RingMismatch("vector length must be even")
    n = len(vec) // 2
    out: List[int] = []
    for r in vec[:n]:
        out.extend(r.coeffs)
    for r in vec[n:]:
        out.extend(_dual_coords(r))
    return tuple(out)


def phi_contract(ring: GaloisRingSpec, flat: Sequence[int]) -> Tuple[RingElement, ...]:
    """Inverse of phi_expand."""
    m = ring.m
    if len(flat) % (2 * m):
        raise RingMismatch("flat length must be a multiple of 2m")
    n = len(flat) // (2 * m)
    out: List[RingElement] = []
    for i in range(n):
        out.append(ring.element(flat[i * m:(i + 1) * m]))
    for i in range(n, 2 * n):
        coords = flat[i * m:(i + 1) * m]
        acc = ring.zero
        for c, g in zip(coords, ring.dual):
            acc = acc + g.scale(c)
        out.append(acc)
    return tuple(out)


def _teichmuller_lift_residue(a: int, p: int, N: int) -> int:
    """Fixed point of z -> z^p starting from a, mod N (m = 1 case)."""
    z = a % N
    for _ in range(64):
        z2 = pow(z, p, N)
        if z2 == z:
            return z
        z = z2
    raise InternalInvariantViolation("Teichmuller iteration did not converge")


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in factors):
            return g
    raise InternalInvariantViolation("no primitive root found")


def _check_h_divides(h: Sequence[int], p: int, b: int, m: int) -> None:
    """Verify h | x^{p^m - 1} - 1 over Z_{p^b} by polynomial division."""
    N = p ** b
    order = p ** m - 1
    rem = [0] * (order + 1)
    rem[0] = (rem[0] - 1) % N
    rem[order] = 1
    for d in range(order, m - 1, -1):
        coef = rem[d]
        if coef:
            rem[d] = 0
            for k in range(m):
                rem[d - m + k] = (rem[d - m + k] - coef * h[k]) % N
    if any(rem):
        raise HPolyInvalid("h does not divide x^{p^m-1} - 1 over Z_{p^b}")


def make_ring(p: int, b: int, m: int, h_coeffs: Sequence[int] | None = None) -> GaloisRingSpec:
    """Construct GR(p^b, m) with a canonical defining polynomial.

    Picks the lexicographically smallest primitive polynomial hbar over F_p
    (most significant: constant term), then replaces it by the product of
    (x - theta^{p^i}) over the Teichmuller conjugates, which is the unique
    lift dividing x^{p^m-1} - 1 over Z_{p^b}.  A caller-supplied h is
    validated against the same invariants instead.
    """
    if not _is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if b < 1 or m < 1:
        raise ValueError("b and m must be positive")
    if p ** (b * m) > 2 ** 31:
        raise ParameterTooLarge(f"p^(b*m) = {p ** (b * m)} exceeds 2^31")
    N = p ** b

    if h_coeffs is not None:
        h = tuple(c % N for c in h_coeffs)
        if len(h) != m + 1 or h[m] != 1:
            raise HPolyInvalid("h must be monic of degree m")
        hbar = tuple(c % p for c in h)
        if not _is_primitive_mod_p(hbar, p, m):
            raise HPolyInvalid("h mod p is not primitive over F_p")
        _check_h_divides(h, p, b, m)
        return GaloisRingSpec(p, b, m, h)

    if m == 1:
        theta = _teichmuller_lift_residue(_smallest_primitive_root(p), p, N)
        h = ((-theta) % N, 1)
        _check_h_divides(h, p, b, m)
        return GaloisRingSpec(p, b, m, h)

    hbar = None
    for tail in itertools.product(range(p), repeat=m):
        cand = tuple(tail) + (1,)
        if _is_primitive_mod_p(cand, p, m):
            hbar = cand
            break
    if hbar is None:
        raise InternalInvariantViolation("no primitive polynomial found")

    # provisional ring on the naive lift; Teichmuller-iterate x to a root of
    # unity, then rebuild h from its Frobenius conjugates
    h0 = hbar
    x = tuple([0, 1] + [0] * (m - 2))
    z = x
    for _ in range(b + 2):
        z2 = _poly_pow_mod(z, p ** m, h0, N)
        if z2 == z:
            break
        z = z2
    else:
        raise InternalInvariantViolation("Teichmuller iteration did not converge")

    conjugates = [z]
    for _ in range(m - 1):
        conjugates.append(_poly_pow_mod(conjugates[-1], p, h0, N))
    # expand prod (X - conj_i); coefficients live in the provisional ring
    poly = [tuple([1] + [0] * (m - 1))]  # coefficients of X^k, low-to-high
    for c in conjugates:
        neg_c = tuple((-t) % N for t in c)
        new = [tuple([0] * m) for _ in range(len(poly) + 1)]
        for k, coef in enumerate(poly):
            new[k + 1] = tuple((a + t) % N for a, t in zip(new[k + 1], coef))
            prod = _poly_mul_mod(coef, neg_c, h0, N)
            new[k] = tuple((a + t) % N for a, t in zip(new[k], prod))
        poly = new
    h = []
    for coef in poly:
        if any(coef[1:]):
            raise InternalInvariantViolation("lifted polynomial has non-scalar coefficients")
        h.append(coef[0])
    h = tuple(h)
    if tuple(c % p for c in h) != hbar:
        raise InternalInvariantViolation("lifted polynomial does not reduce to hbar")
    _check_h_divides(h, p, b, m)
    return GaloisRingSpec(p, b, m, h)
