"""Exact linear algebra over Q and F_p.

Matrices are python-flint ``fmpq_mat`` (rationals) or ``nmod_mat`` (prime
fields).  Vectors are always rows; a family of vectors is a matrix whose rows
are the vectors.  Everything here is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import flint


class FieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """Exact scalar field: the rationals (``modulus=None``) or F_p."""

    def __init__(self, modulus: int | None = None):
        if modulus is not None:
            modulus = int(modulus)
            if not _is_prime(modulus):
                raise FieldError(f"field modulus {modulus} is not prime")
            if modulus >= 2**63:
                raise FieldError("field modulus too large")
        self.modulus = modulus

    @property
    def characteristic(self) -> int:
        return 0 if self.modulus is None else self.modulus

    @property
    def name(self) -> str:
        return "Q" if self.modulus is None else f"F{self.modulus}"

    def header(self) -> str:
        return "field Q" if self.modulus is None else f"field F {self.modulus}"

    def __eq__(self, other):
        return isinstance(other, Field) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("Field", self.modulus))

    def __repr__(self):
        return f"Field({self.name})"

    # scalars
    def scalar(self, value):
        if isinstance(value, str):
            value = Fraction(value)
        if self.modulus is None:
            if isinstance(value, flint.fmpq):
                return value
            if isinstance(value, Fraction):
                return flint.fmpq(value.numerator, value.denominator)
            return flint.fmpq(int(value))
        p = self.modulus
        if isinstance(value, flint.nmod):
            return value
        if isinstance(value, (Fraction, flint.fmpq)):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise FieldError(f"denominator {den} vanishes in F{p}")
            return flint.nmod(num, p) / flint.nmod(den, p)
        return flint.nmod(int(value), p)

    def zero(self):
        return self.scalar(0)

    def one(self):
        return self.scalar(1)

    def fmt(self, x) -> str:
        """Canonical text of a scalar: lowest terms, sign on the numerator."""
        if self.modulus is None:
            x = self.scalar(x)
            if x.q == 1:
                return str(x.p)
            return f"{x.p}/{x.q}"
        return str(int(self.scalar(x)))

    def to_python(self, x):
        if self.modulus is None:
            x = self.scalar(x)
            return int(x.p) if x.q == 1 else Fraction(int(x.p), int(x.q))
        return int(x)

    # matrices
    def zeros(self, m: int, n: int):
        if self.modulus is None:
            return flint.fmpq_mat(m, n)
        return flint.nmod_mat(m, n, self.modulus)

    def eye(self, n: int):
        M = self.zeros(n, n)
        one = self.one()
        for i in range(n):
            M[i, i] = one
        return M

    def matrix(self, rows: Sequence[Sequence], m: int | None = None, n: int | None = None):
        rows = [list(r) for r in rows]
        if m is None:
            m = len(rows)
        if n is None:
            n = len(rows[0]) if rows else 0
        flat = [self.scalar(v) for r in rows for v in r]
        if len(flat) != m * n:
            raise ValueError("matrix shape mismatch")
        if m == 0 or n == 0:
            return self.zeros(m, n)
        if self.modulus is None:
            return flint.fmpq_mat(m, n, flat)
        return flint.nmod_mat(m, n, [int(v) for v in flat], self.modulus)

    def sparse(self, m: int, n: int, entries: Iterable):
        """Matrix from (i, j, value) triples; repeated positions accumulate."""
        M = self.zeros(m, n)
        for i, j, v in entries:
            M[i, j] += v
        return M

    def random_scalar(self, rng):
        if self.modulus is None:
            return self.scalar(rng.randint(-3, 3))
        return self.scalar(rng.randrange(self.modulus))


def shape(M):
    return M.nrows(), M.ncols()


def is_zero(M) -> bool:
    m, n = shape(M)
    return m == 0 or n == 0 or M == _zeros_like(M, m, n)


def rref(M):
    """Reduced row echelon form and pivot columns."""
    m, n = shape(M)
    if m == 0 or n == 0:
        return M, []
    R, r = M.rref()
    pivots = []
    j = 0
    for i in range(r):
        while R[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    return R, pivots


def rank(M) -> int:
    if M.nrows() == 0 or M.ncols() == 0:
        return 0
    if isinstance(M, flint.fmpq_mat):
        # fraction-free integer rank; the systems here are very sparse and
        # this beats dense modular elimination by a wide margin
        return M.numer_denom()[0].rank()
    return M.rank()


def row_basis(M):
    """Rows of the RREF spanning the row space of M."""
    R, piv = rref(M)
    return submatrix(R, range(len(piv)), range(M.ncols()))


def nullspace(M, field: Field):
    """Rows form a basis of {x : M x^T = 0} (column kernel of M)."""
    m, n = shape(M)
    if m == 0:
        return field.eye(n)
    R, piv = rref(M)
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    K = field.zeros(len(free), n)
    one = field.one()
    for k, f in enumerate(free):
        K[k, f] = one
        for i, p in enumerate(piv):
            v = R[i, f]
            if v != 0:
                K[k, p] = -v
    return K


def left_nullspace(M, field: Field):
    """Rows v with v M = 0."""
    return nullspace(M.transpose(), field)


def submatrix(M, rows, cols):
    rows = list(rows)
    cols = list(cols)
    out = _zeros_like(M, len(rows), len(cols))
    for a, i in enumerate(rows):
        for b, j in enumerate(cols):
            v = M[i, j]
            if v != 0:
                out[a, b] = v
    return out


def _zeros_like(M, m, n):
    if isinstance(M, flint.nmod_mat):
        return flint.nmod_mat(m, n, M.modulus())
    return flint.fmpq_mat(m, n)


def vstack(mats, ncols: int, field: Field):
    mats = [A for A in mats if A.nrows()]
    m = sum(A.nrows() for A in mats)
    out = field.zeros(m, ncols)
    r = 0
    for A in mats:
        _paste(out, A, r, 0)
        r += A.nrows()
    return out


def hstack(mats, nrows: int, field: Field):
    mats = [A for A in mats if A.ncols()]
    n = sum(A.ncols() for A in mats)
    out = field.zeros(nrows, n)
    c = 0
    for A in mats:
        _paste(out, A, 0, c)
        c += A.ncols()
    return out


def block_diag(mats, field: Field):
    m = sum(A.nrows() for A in mats)
    n = sum(A.ncols() for A in mats)
    out = field.zeros(m, n)
    r = c = 0
    for A in mats:
        _paste(out, A, r, c)
        r += A.nrows()
        c += A.ncols()
    return out


def _paste(out, A, r0, c0):
    m, n = shape(A)
    if m == 0 or n == 0:
        return
    for i, row in enumerate(A.tolist()):
        for j, v in enumerate(row):
            if v != 0:
                out[r0 + i, c0 + j] = v


def from_blocks(m: int, n: int, placed, field: Field):
    """m x n matrix from non-overlapping (row, col, block) placements."""
    out = field.zeros(m, n)
    for r0, c0, B in placed:
        _paste(out, B, r0, c0)
    return out


def paste(out, A, r0: int, c0: int):
    _paste(out, A, r0, c0)


def inverse(M):
    if M.nrows() == 0:
        return M
    return M.inv()


def complement_rows(U, n: int, field: Field):
    """Standard basis rows spanning a complement of rowspace(U) in k^n."""
    _, piv = rref(U) if U.nrows() else (U, [])
    pivset = set(piv)
    free = [j for j in range(n) if j not in pivset]
    C = field.zeros(len(free), n)
    one = field.one()
    for k, j in enumerate(free):
        C[k, j] = one
    return C


def coords(B, V, field: Field, check: bool = True):
    """X with X B = V, for B of full row rank and rows of V in rowspace(B)."""
    k, n = shape(B)
    if k == 0:
        if check and not is_zero(V):
            raise ArithmeticError("vector outside row space")
        return field.zeros(V.nrows(), 0)
    _, piv = rref(B)
    if len(piv) != k:
        raise ArithmeticError("coords: basis rows are dependent")
    Bp = submatrix(B, range(k), piv)
    Vp = submatrix(V, range(V.nrows()), piv)
    X = Vp * Bp.inv()
    if check and X * B != V:
        raise ArithmeticError("vector outside row space")
    return X


class RowSpace:
    """A subspace of k^n with fast membership and coordinate queries."""

    def __init__(self, B, field: Field):
        self.field = field
        self.n = B.ncols()
        self.basis = row_basis(B) if B.nrows() else B
        self.dim = self.basis.nrows()
        if self.dim:
            _, self.piv = rref(self.basis)
        else:
            self.piv = []

    def contains(self, V) -> bool:
        if V.nrows() == 0:
            return True
        if self.dim == 0:
            return is_zero(V)
        Vp = submatrix(V, range(V.nrows()), self.piv)
        # basis is in rref so the pivot block is the identity
        return Vp * self.basis == V

    def coords(self, V):
        if self.dim == 0:
            return self.field.zeros(V.nrows(), 0)
        return submatrix(V, range(V.nrows()), self.piv)


def intersect_rows(U, V, field: Field):
    """Basis rows of rowspace(U) ∩ rowspace(V)."""
    n = U.ncols()
    if U.nrows() == 0 or V.nrows() == 0:
        return field.zeros(0, n)
    W = vstack([U, V], n, field)
    K = left_nullspace(W, field)
    if K.nrows() == 0:
        return field.zeros(0, n)
    A = submatrix(K, range(K.nrows()), range(U.nrows()))
    return row_basis(A * U)


def is_invertible(M) -> bool:
    m, n = shape(M)
    if m != n:
        return False
    return m == 0 or rank(M) == m


def matpow(M, e: int, field: Field):
    R = field.eye(M.nrows())
    B = M
    while e:
        if e & 1:
            R = R * B
        B = B * B
        e >>= 1
    return R


def poly_eval(coeffs, M, field: Field):
    """Evaluate a polynomial (low-to-high coefficient list) at a square matrix."""
    n = M.nrows()
    R = field.zeros(n, n)
    for c in reversed(list(coeffs)):
        R = R * M
        if c != 0:
            c = field.scalar(c if not isinstance(c, flint.fmpz) else int(c))
            for i in range(n):
                R[i, i] += c
    return R


def entries_nonzero(M):
    """Yield (i, j, v) for nonzero entries."""
    m, n = shape(M)
    if m == 0 or n == 0:
        return
    rows = M.tolist()
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v != 0:
                yield i, j, v


def solve_left(C, V, field: Field):
    """Some X with X C = V, or None when no solution exists."""
    m, n = shape(C)
    if V.nrows() == 0:
        return field.zeros(0, m)
    if m == 0 or n == 0:
        return field.zeros(V.nrows(), m) if is_zero(V) else None
    # independent rows of C are the pivot columns of C^T
    _, piv = rref(C.transpose())
    B = submatrix(C, piv, range(n))
    try:
        Y = coords(B, V, field)
    except ArithmeticError:
        return None
    X = field.zeros(V.nrows(), m)
    for i in range(V.nrows()):
        for k, r in enumerate(piv):
            v = Y[i, k]
            if v != 0:
                X[i, r] = v
    return X
