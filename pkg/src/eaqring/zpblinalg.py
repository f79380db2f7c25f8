"""Exact linear algebra over Z_{p^b}: Howell form, Smith form, kernels,
intersections, quotient ranks, congruence solving and module enumeration.

Everything here works on plain integer residues in [0, p^b).  Pivoting is
always on entries of minimal p-valuation (every element of Z_{p^b} is
unit * p^v), with lowest-index tie-breaks, so all outputs are reproducible
bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, List, Sequence, Tuple

from .errors import DimensionMismatch, LimitExceeded, NoSolution, NotContained, ParameterTooLarge


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class ZpbMatrix:
    """Dense matrix over Z_{p^b}, entries stored row-major in [0, p^b)."""

    p: int
    b: int
    rows: int
    cols: int
    entries: Tuple[int, ...]

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.b < 1:
            raise ValueError("b must be positive")
        if self.p ** self.b > 2 ** 31:
            raise ParameterTooLarge(f"p^b = {self.p ** self.b} exceeds 2^31")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        N = self.p ** self.b
        if any(e < 0 or e >= N for e in self.entries):
            raise ValueError("entries must be reduced into [0, p^b)")

    @property
    def modulus(self) -> int:
        return self.p ** self.b

    @classmethod
    def from_rows(cls, p: int, b: int, rows: Sequence[Sequence[int]], cols: int | None = None) -> "ZpbMatrix":
        N = p ** b
        row_list = [tuple(x % N for x in r) for r in rows]
        if cols is None:
            if not row_list:
                raise ValueError("cols must be given for an empty matrix")
            cols = len(row_list[0])
        if any(len(r) != cols for r in row_list):
            raise ValueError("ragged rows")
        flat = tuple(x for r in row_list for x in r)
        return cls(p, b, len(row_list), cols, flat)

    @classmethod
    def identity(cls, p: int, b: int, n: int) -> "ZpbMatrix":
        return cls.from_rows(p, b, [[1 if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    def row(self, i: int) -> Tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> List[List[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def mat_mul(self, other: "ZpbMatrix") -> "ZpbMatrix":
        if (self.p, self.b) != (other.p, other.b) or self.cols != other.rows:
            raise DimensionMismatch("incompatible shapes for multiplication")
        N = self.modulus
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(r[k] * other.entries[k * other.cols + j] for k in range(self.cols)) % N
                        for j in range(other.cols)])
        return ZpbMatrix.from_rows(self.p, self.b, out, cols=other.cols)


def _val(x: int, p: int, b: int) -> int:
    """p-adic valuation of the residue x, with val(0) = b."""
    if x == 0:
        return b
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class HowellBasis:
    """Howell canonical form of a row module over Z_{p^b}.

    The Howell form is the unique canonical basis of a row module over a
    residue ring: pivots are powers of p, columns below a pivot are zero,
    entries above a pivot are reduced modulo the pivot, and annihilator
    multiples of every row are again spanned by later rows.
    """

    matrix: ZpbMatrix
    pivots: Tuple[int, ...]

    @property
    def rows(self) -> int:
        return self.matrix.rows

    @property
    def cols(self) -> int:
        return self.matrix.cols


def howell_form(gens: ZpbMatrix) -> HowellBasis:
    """Canonical Howell form of the row module spanned by ``gens``.

    Sweeps columns left to right, pivoting on the entry of minimal
    p-valuation (lowest row index on ties), normalizes the pivot to p^v,
    eliminates below, and appends the annihilator multiple (p^{b-v} times
    the pivot row) to the worklist so that leading-zero-stripped spans are
    preserved.  A final upward pass reduces entries above each pivot into
    [0, p^v).  Zero rows are dropped.
    """
    p, b = gens.p, gens.b
    N = p ** b
    work = [list(r) for r in gens.to_rows() if any(r)]
    pivots: List[Tuple[int, int, int]] = []  # (row, col, valuation)
    r = 0
    for col in range(gens.cols):
        best = -1
        best_v = b + 1
        for i in range(r, len(work)):
            e = work[i][col]
            if e:
                v = _val(e, p, b)
                if v < best_v:
                    best, best_v = i, v
        if best < 0:
            continue
        work[r], work[best] = work[best], work[r]
        v = best_v
        pv = p ** v
        u = work[r][col] // pv
        uinv = pow(u, -1, N)
        work[r] = [(uinv * x) % N for x in work[r]]
        for i in range(r + 1, len(work)):
            e = work[i][col]
            if e:
                coef = e // pv  # exact: val(e) >= v by pivot minimality
                work[i] = [(work[i][j] - coef * work[r][j]) % N for j in range(gens.cols)]
        if v > 0:
            ann = [((N // pv) * x) % N for x in work[r]]
            if any(ann):
                work.append(ann)
        pivots.append((r, col, v))
        r += 1
    work = work[:r]
    # ascending column order: a reduction only touches columns right of its
    # pivot, which later steps then clean up in turn
    for r_i, col, v in pivots:
        pv = p ** v
        for i in range(r_i):
            coef = work[i][col] // pv  # reduce the entry into [0, p^v)
            if coef:
                work[i] = [(work[i][j] - coef * work[r_i][j]) % N for j in range(gens.cols)]
    matrix = ZpbMatrix.from_rows(p, b, work, cols=gens.cols)
    return HowellBasis(matrix=matrix, pivots=tuple(col for _, col, _ in pivots))


def howell_member(H: HowellBasis, vec: Sequence[int]) -> bool:
    """Membership test against a Howell basis by pivot-wise reduction."""
    p, b = H.matrix.p, H.matrix.b
    N = p ** b
    if len(vec) != H.cols:
        raise DimensionMismatch("vector length does not match ambient dimension")
    x = [e % N for e in vec]
    for i, col in enumerate(H.pivots):
        e = x[col]
        if e == 0:
            continue
        row = H.matrix.row(i)
        pv = row[col]  # pivot is p^v by construction
        if e % pv:
            return False
        coef = e // pv
        x = [(x[j] - coef * row[j]) % N for j in range(H.cols)]
    return not any(x)


@dataclass(frozen=True)
class SmithDecomposition:
    """Smith form over Z_{p^b}: left * diag(p^{e_i}) * right = input."""

    diag_exponents: Tuple[int, ...]
    left: ZpbMatrix
    right: ZpbMatrix
    left_inv: ZpbMatrix
    right_inv: ZpbMatrix

    @property
    def cardinality(self) -> int:
        """Number of elements in the row module of the input matrix."""
        p, b = self.left.p, self.left.b
        card = 1
        for e in self.diag_exponents:
            card *= p ** (b - e)
        return card

    def diag_matrix(self, rows: int, cols: int) -> ZpbMatrix:
        p, b = self.left.p, self.left.b
        out = [[0] * cols for _ in range(rows)]
        for i, e in enumerate(self.diag_exponents):
            out[i][i] = p ** e
        return ZpbMatrix.from_rows(p, b, out, cols=cols)


def smith_form(A: ZpbMatrix) -> SmithDecomposition:
    """Smith normal form by minimal-p-valuation pivoting.

    Diagonal entries come out as p^{e_i} with e_i non-decreasing; the
    accumulated transforms satisfy left * D * right = A mod p^b.
    """
    p, b = A.p, A.b
    N = p ** b
    nr, nc = A.rows, A.cols
    D = A.to_rows()
    U = ZpbMatrix.identity(p, b, nr).to_rows()
    Uinv = ZpbMatrix.identity(p, b, nr).to_rows()
    V = ZpbMatrix.identity(p, b, nc).to_rows()
    Vinv = ZpbMatrix.identity(p, b, nc).to_rows()
    exps: List[int] = []
    for k in range(min(nr, nc)):
        best = None
        best_v = b + 1
        for i in range(k, nr):
            for j in range(k, nc):
                e = D[i][j]
                if e:
                    v = _val(e, p, b)
                    if v < best_v:
                        best, best_v = (i, j), v
        if best is None:
            break
        bi, bj = best
        if bi != k:
            D[k], D[bi] = D[bi], D[k]
            U[k], U[bi] = U[bi], U[k]
            for row in Uinv:
                row[k], row[bi] = row[bi], row[k]
        if bj != k:
            for row in D:
                row[k], row[bj] = row[bj], row[k]
            for row in V:
                row[k], row[bj] = row[bj], row[k]
            Vinv[k], Vinv[bj] = Vinv[bj], Vinv[k]
        v = best_v
        pv = p ** v
        u = D[k][k] // pv
        uinv = pow(u, -1, N)
        D[k] = [(uinv * x) % N for x in D[k]]
        U[k] = [(uinv * x) % N for x in U[k]]
        for row in Uinv:
            row[k] = (row[k] * u) % N
        for i in range(k + 1, nr):
            e = D[i][k]
            if e:
                coef = e // pv
                D[i] = [(D[i][j] - coef * D[k][j]) % N for j in range(nc)]
                U[i] = [(U[i][j] - coef * U[k][j]) % N for j in range(nr)]
                for row in Uinv:
                    row[k] = (row[k] + coef * row[i]) % N
        for j in range(k + 1, nc):
            e = D[k][j]
            if e:
                coef = e // pv
                for row in D:
                    row[j] = (row[j] - coef * row[k]) % N
                for row in V:
                    row[j] = (row[j] - coef * row[k]) % N
                Vinv[k] = [(Vinv[k][t] + coef * Vinv[j][t]) % N for t in range(nc)]
        exps.append(v)
    return SmithDecomposition(
        diag_exponents=tuple(exps),
        left=ZpbMatrix.from_rows(p, b, Uinv, cols=nr) if nr else ZpbMatrix(p, b, 0, 0, ()),
        right=ZpbMatrix.from_rows(p, b, Vinv, cols=nc) if nc else ZpbMatrix(p, b, 0, 0, ()),
        left_inv=ZpbMatrix.from_rows(p, b, U, cols=nr) if nr else ZpbMatrix(p, b, 0, 0, ()),
        right_inv=ZpbMatrix.from_rows(p, b, V, cols=nc) if nc else ZpbMatrix(p, b, 0, 0, ()),
    )


def module_rank(gens: ZpbMatrix) -> int:
    """Size of a minimal generating set (Nakayama: dim over F_p of M/pM)."""
    return len(smith_form(gens).diag_exponents)


def module_cardinality(gens: ZpbMatrix) -> int:
    return smith_form(gens).cardinality


def is_free_module(gens: ZpbMatrix) -> bool:
    return all(e == 0 for e in smith_form(gens).diag_exponents)


def minimal_generators(gens: ZpbMatrix) -> List[Tuple[int, ...]]:
    """A minimal generating set of the row module (rows p^{e_i} * R_i)."""
    p, b = gens.p, gens.b
    N = p ** b
    sd = smith_form(gens)
    out = []
    for i, e in enumerate(sd.diag_exponents):
        row = sd.right.row(i)
        out.append(tuple((p ** e * x) % N for x in row))
    return out


def kernel(A: ZpbMatrix) -> HowellBasis:
    """All row vectors x with x*A = 0 mod p^b, as a Howell basis."""
    p, b = A.p, A.b
    N = p ** b
    nr = A.rows
    if nr == 0:
        return howell_form(ZpbMatrix(p, b, 0, 0, ()))
    if A.cols == 0:
        return howell_form(ZpbMatrix.identity(p, b, nr))
    sd = smith_form(A)
    nd = len(sd.diag_exponents)
    ybasis: List[List[int]] = []
    for i, e in enumerate(sd.diag_exponents):
        if e > 0:
            y = [0] * nr
            y[i] = p ** (b - e)
            ybasis.append(y)
    for i in range(nd, nr):
        y = [0] * nr
        y[i] = 1
        ybasis.append(y)
    # x = y * left_inv pulls the kernel back from Smith coordinates.
    U = sd.left_inv
    xrows = []
    for y in ybasis:
        xrows.append([sum(y[k] * U.entries[k * nr + j] for k in range(nr)) % N for j in range(nr)])
    return howell_form(ZpbMatrix.from_rows(p, b, xrows, cols=nr) if xrows else ZpbMatrix(p, b, 0, nr, ()))


def intersect(M1: HowellBasis, M2: HowellBasis) -> HowellBasis:
    """Howell basis of the intersection of two row modules."""
    A1, A2 = M1.matrix, M2.matrix
    if A1.cols != A2.cols or (A1.p, A1.b) != (A2.p, A2.b):
        raise DimensionMismatch("ambient dimensions differ")
    p, b = A1.p, A1.b
    N = p ** b
    cols = A1.cols
    if A1.rows == 0 or A2.rows == 0:
        return howell_form(ZpbMatrix(p, b, 0, cols, ()))
    stacked = ZpbMatrix.from_rows(p, b, A1.to_rows() + A2.to_rows(), cols=cols)
    K = kernel(stacked)
    r1 = A1.rows
    out = []
    for i in range(K.rows):
        k = K.matrix.row(i)
        vec = [sum(k[t] * A1.entries[t * cols + j] for t in range(r1)) % N for j in range(cols)]
        out.append(vec)
    return howell_form(ZpbMatrix.from_rows(p, b, out, cols=cols) if out else ZpbMatrix(p, b, 0, cols, ()))


def quotient_rank(M: HowellBasis, S: HowellBasis) -> int:
    """Rank of M/S as a Z_{p^b}-module, via log_p(|M| / |pM + S|)."""
    A, B = M.matrix, S.matrix
    if A.cols != B.cols or (A.p, A.b) != (B.p, B.b):
        raise DimensionMismatch("ambient dimensions differ")
    for i in range(B.rows):
        if not howell_member(M, B.row(i)):
            raise NotContained("S is not a submodule of M")
    p, b = A.p, A.b
    N = p ** b
    card_m = module_cardinality(A)
    prows = [[(p * x) % N for x in r] for r in A.to_rows()]
    sub = ZpbMatrix.from_rows(p, b, prows + B.to_rows(), cols=A.cols) if (prows or B.rows) \
        else ZpbMatrix(p, b, 0, A.cols, ())
    card_sub = module_cardinality(sub)
    ratio, rem = divmod(card_m, card_sub)
    assert rem == 0, "pM + S must sit inside M"
    rank = 0
    while ratio > 1:
        ratio, rem = divmod(ratio, p)
        assert rem == 0, "quotient size must be a power of p"
        rank += 1
    return rank


def solve_congruence(lhs: int, rhs: int, modulus: int) -> int:
    """Smallest non-negative u with lhs*u = rhs (mod modulus)."""
    a = lhs % modulus
    r = rhs % modulus
    g = math.gcd(a, modulus)
    if r % g:
        raise NoSolution(f"{lhs}*u = {rhs} (mod {modulus}) has no solution")
    if a == 0:
        return 0
    n2 = modulus // g
    return (r // g) * pow(a // g, -1, n2) % n2


def enumerate_module(M: HowellBasis, limit: int) -> Iterator[Tuple[int, ...]]:
    """Yield every element of the row module exactly once, in a fixed order.

    Iterates mixed-radix coefficients over the Smith factors (last index
    fastest).  Raises LimitExceeded with the exact cardinality when the
    module is too large.
    """
    A = M.matrix
    p, b = A.p, A.b
    N = p ** b
    sd = smith_form(A)
    card = sd.cardinality
    if card > limit:
        raise LimitExceeded(card)
    base = []
    radix = []
    for i, e in enumerate(sd.diag_exponents):
        base.append(tuple((p ** e * x) % N for x in sd.right.row(i)))
        radix.append(p ** (b - e))
    k = len(base)
    if k == 0:
        yield tuple([0] * A.cols)
        return
    counter = [0] * k
    while True:
        vec = [0] * A.cols
        for i in range(k):
            c = counter[i]
            if c:
                row = base[i]
                for j in range(A.cols):
                    vec[j] = (vec[j] + c * row[j]) % N
        yield tuple(vec)
        i = k - 1
        while i >= 0:
            counter[i] += 1
            if counter[i] < radix[i]:
                break
            counter[i] = 0
            i -= 1
        if i < 0:
            return
