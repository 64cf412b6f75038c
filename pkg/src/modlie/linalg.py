"""Exact linear algebra over prime fields GF(p).

Everything in this module is exact residue arithmetic: matrices are numpy
int64 arrays with entries reduced into {0, ..., p-1}, row reduction is
deterministic (leftmost pivot column, lowest row index), and no floating
point ever enters a result.  Subspaces are kept as reduced row-echelon
bases so that equality, membership and coordinates are cheap and canonical.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

MAX_PRIME = 251


class FpError(Exception):
    """Base class for errors raised by exact GF(p) computations."""


class DimensionMismatch(FpError):
    pass


class ContainmentError(FpError):
    pass


class FpZeroDivision(FpError, ZeroDivisionError):
    pass


def check_prime(p: int) -> int:
    """Validate the modulus: a prime with 2 <= p <= MAX_PRIME."""
    if not isinstance(p, (int, np.integer)) or p < 2 or p > MAX_PRIME:
        raise FpError(f"modulus must be a prime in [2, {MAX_PRIME}], got {p!r}")
    for d in range(2, int(p**0.5) + 1):
        if p % d == 0:
            raise FpError(f"modulus {p} is not prime")
    return int(p)


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p.  Raises on a == 0 mod p."""
    a = int(a) % p
    if a == 0:
        raise FpZeroDivision("inversion of zero in GF(p)")
    return pow(a, p - 2, p)


def field_arith(a: int, b: int, op: str, p: int) -> int:
    """Scalar arithmetic in GF(p); op is one of add/sub/mul/inv.

    For op == "inv" the second argument is ignored.
    """
    a = int(a) % p
    b = int(b) % p
    if op == "add":
        return (a + b) % p
    if op == "sub":
        return (a - b) % p
    if op == "mul":
        return (a * b) % p
    if op == "inv":
        return inv_mod(a, p)
    raise FpError(f"unknown field operation {op!r}")


def lucas_binom(a, b, p: int) -> int:
    """Binomial coefficient C(a, b) mod p by base-p digit products.

    Accepts nonnegative integers or equal-length sequences of them (the
    result is then the componentwise product).  C(a, b) = 0 whenever
    b > a in some component; negative arguments also give 0.
    """
    if isinstance(a, (tuple, list, np.ndarray)):
        r = 1
        for ai, bi in zip(a, b, strict=True):
            r = (r * lucas_binom(int(ai), int(bi), p)) % p
            if r == 0:
                return 0
        return r
    a = int(a)
    b = int(b)
    if b < 0 or a < 0 or b > a:
        return 0
    r = 1
    while b > 0:
        ad, a = a % p, a // p
        bd, b = b % p, b // p
        if bd > ad:
            return 0
        num = 1
        den = 1
        for t in range(bd):
            num = (num * (ad - t)) % p
            den = (den * (t + 1)) % p
        r = (r * num * inv_mod(den, p)) % p
    return r


def asarray_mod(data, p: int) -> np.ndarray:
    return np.asarray(data, dtype=np.int64) % p


def matmul_mod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Exact (A @ B) mod p.

    Routes through float64 BLAS when the inner dimension keeps products
    below 2**53 (always true for p <= 251 and inner dim <= 10**8), which
    is much faster than numpy's integer matmul for the sizes we meet.
    """
    inner = A.shape[-1]
    if inner == 0:
        shape = A.shape[:-1] + B.shape[1:]
        return np.zeros(shape, dtype=np.int64)
    if inner * (p - 1) ** 2 < 2**52:
        C = np.dot(A.astype(np.float64), B.astype(np.float64))
        return np.asarray(np.rint(C), dtype=np.int64) % p
    return np.dot(A, B) % p


def rref_array(M, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row-echelon form over GF(p).

    Deterministic pivoting: leftmost column first, lowest row index as the
    tie-break.  Returns (R, pivot_cols) where R holds only the nonzero rows.
    """
    A = asarray_mod(M, p).copy()
    if A.ndim != 2:
        raise DimensionMismatch("rref expects a 2-D array")
    m, n = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv_mod(int(A[r, c]), p)) % p
        fac = A[:, c].copy()
        fac[r] = 0
        rows = np.nonzero(fac)[0]
        if rows.size:
            A[rows] = (A[rows] - np.outer(fac[rows], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def nullspace_array(M, p: int) -> np.ndarray:
    """Canonical RREF basis (rows) of the right nullspace of M over GF(p)."""
    A = asarray_mod(M, p)
    n = A.shape[1]
    R, pivots = rref_array(A, p)
    return nullspace_from_rref(R, pivots, n, p)


def nullspace_from_rref(R: np.ndarray, pivots: Sequence[int], ncols: int,
                        p: int) -> np.ndarray:
    piv = list(pivots)
    free = [c for c in range(ncols) if c not in set(piv)]
    B = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        B[t, f] = 1
        if piv:
            B[t, piv] = (-R[: len(piv), f]) % p
    B, _ = rref_array(B, p)
    return B


def inv_matrix(A, p: int) -> np.ndarray:
    """Gauss-Jordan inverse over GF(p).  Raises FpError if singular."""
    A = asarray_mod(A, p)
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionMismatch("inverse needs a square matrix")
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref_array(aug, p)
    if piv[:n] != list(range(n)):
        raise FpError("matrix is singular over GF(p)")
    return R[:, n:]


class FpMatrix:
    """Dense matrix of residues mod p; dimensions immutable.

    All matrices realized in this artifact (adjoints, derivation maps,
    subspace bases) stay well under the 512-column dense threshold; the
    genuinely huge linear systems are handled by StreamingEchelon and by
    the derivation engine without ever being materialized.
    """

    __slots__ = ("p", "A")

    def __init__(self, data, p: int):
        self.p = check_prime(p)
        A = asarray_mod(data, p)
        if A.ndim != 2:
            raise DimensionMismatch("FpMatrix is 2-D")
        A.setflags(write=False)
        self.A = A

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def from_triples(cls, rows: int, cols: int,
                     triples: Iterable[tuple[int, int, int]], p: int) -> "FpMatrix":
        A = np.zeros((rows, cols), dtype=np.int64)
        for i, j, c in triples:
            A[i, j] = (A[i, j] + c) % p
        return cls(A, p)

    @property
    def rows(self) -> int:
        return self.A.shape[0]

    @property
    def cols(self) -> int:
        return self.A.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.A.shape

    def _coerce(self, other) -> "FpMatrix":
        if not isinstance(other, FpMatrix) or other.p != self.p:
            raise FpError("operands must be FpMatrix with equal modulus")
        return other

    def __add__(self, other) -> "FpMatrix":
        other = self._coerce(other)
        return FpMatrix((self.A + other.A) % self.p, self.p)

    def __sub__(self, other) -> "FpMatrix":
        other = self._coerce(other)
        return FpMatrix((self.A - other.A) % self.p, self.p)

    def __neg__(self) -> "FpMatrix":
        return FpMatrix((-self.A) % self.p, self.p)

    def __rmul__(self, scalar: int) -> "FpMatrix":
        return FpMatrix((int(scalar) * self.A) % self.p, self.p)

    def __matmul__(self, other):
        if isinstance(other, FpMatrix):
            if self.cols != other.rows:
                raise DimensionMismatch("matmul shape mismatch")
            return FpMatrix(matmul_mod(self.A, other.A, self.p), self.p)
        v = asarray_mod(other, self.p)
        return matmul_mod(self.A, v, self.p)

    def commutator(self, other: "FpMatrix") -> "FpMatrix":
        other = self._coerce(other)
        return FpMatrix(
            (matmul_mod(self.A, other.A, self.p)
             - matmul_mod(other.A, self.A, self.p)) % self.p,
            self.p,
        )

    def __eq__(self, other) -> bool:
        return (isinstance(other, FpMatrix) and other.p == self.p
                and self.shape == other.shape
                and bool(np.array_equal(self.A, other.A)))

    def __hash__(self):
        return hash((self.p, self.shape, self.A.tobytes()))

    def is_zero(self) -> bool:
        return not self.A.any()

    def nnz(self) -> int:
        return int(np.count_nonzero(self.A))

    def flatten(self) -> np.ndarray:
        return self.A.reshape(-1).copy()

    def __repr__(self):
        return f"FpMatrix({self.rows}x{self.cols} mod {self.p}, nnz={self.nnz()})"


class Subspace:
    """Subspace of GF(p)^n held as a reduced row-echelon basis.

    The basis is canonical: two Subspace objects are equal iff they are
    the same subspace.  Rows are nonzero, pivots are 1, and each pivot
    column is zero elsewhere.
    """

    __slots__ = ("p", "ambient_dim", "basis", "pivot_cols")

    def __init__(self, basis: np.ndarray, pivot_cols: Sequence[int],
                 ambient_dim: int, p: int):
        self.p = p
        self.ambient_dim = ambient_dim
        basis = np.asarray(basis, dtype=np.int64)
        basis.setflags(write=False)
        self.basis = basis
        self.pivot_cols = tuple(int(c) for c in pivot_cols)

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        vectors = asarray_mod(vectors, p).reshape(-1, ambient_dim)
        R, piv = rref_array(vectors, p)
        return cls(R, piv, ambient_dim, p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(np.zeros((0, ambient_dim), dtype=np.int64), (), ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(np.eye(ambient_dim, dtype=np.int64),
                   range(ambient_dim), ambient_dim, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def _check_ambient(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim or other.p != self.p:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def reduce(self, v) -> np.ndarray:
        """Residual of v after subtracting its projection onto the basis."""
        v = asarray_mod(v, self.p)
        if v.shape[-1] != self.ambient_dim:
            raise DimensionMismatch("vector has wrong ambient dimension")
        if self.dim == 0:
            return v.copy()
        coeff = v[..., list(self.pivot_cols)]
        return (v - matmul_mod(coeff, self.basis, self.p)) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of v in the echelon basis; raises if v is outside."""
        v = asarray_mod(v, self.p)
        if not self.contains(v):
            raise ContainmentError("vector not in subspace")
        return v[..., list(self.pivot_cols)].copy()

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        stacked = np.concatenate([self.basis, other.basis], axis=0)
        return Subspace.span(stacked, self.ambient_dim, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the nullspace of the stacked coefficient system."""
        self._check_ambient(other)
        r1, r2 = self.dim, other.dim
        if r1 == 0 or r2 == 0:
            return Subspace.zero(self.ambient_dim, self.p)
        # alpha @ self.basis - beta @ other.basis = 0
        A = np.concatenate([self.basis.T, (-other.basis.T) % self.p], axis=1)
        null = nullspace_array(A, self.p)
        vecs = matmul_mod(null[:, :r1], self.basis, self.p)
        return Subspace.span(vecs, self.ambient_dim, self.p)

    def is_subspace_of(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return not other.reduce(self.basis).any() if self.dim else True

    def complement_in(self, other: "Subspace") -> "Subspace":
        """Deterministic complement W with self (+) W = other.

        W is spanned by the rows of other reduced modulo self and
        re-echelonized, so W's pivot coordinates avoid self's pivots.
        """
        self._check_ambient(other)
        if not self.is_subspace_of(other):
            raise ContainmentError("complement_in requires self to lie in other")
        reduced = self.reduce(other.basis)
        W = Subspace.span(reduced, self.ambient_dim, self.p)
        assert W.dim == other.dim - self.dim
        return W

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and other.p == self.p
                and other.ambient_dim == self.ambient_dim
                and other.pivot_cols == self.pivot_cols
                and bool(np.array_equal(other.basis, self.basis)))

    def __hash__(self):
        return hash((self.p, self.ambient_dim, self.pivot_cols,
                     self.basis.tobytes()))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.p})"


def rref(M, p: int | None = None) -> tuple[Subspace, int]:
    """Row space of M as a Subspace, plus the rank."""
    if isinstance(M, FpMatrix):
        A, p = M.A, M.p
    else:
        if p is None:
            raise FpError("modulus required for raw arrays")
        A = asarray_mod(M, p)
    R, piv = rref_array(A, p)
    sub = Subspace(R, piv, A.shape[1], p)
    return sub, sub.dim


def nullspace(M, p: int | None = None) -> Subspace:
    """Right nullspace of M as a canonical Subspace."""
    if isinstance(M, FpMatrix):
        A, p = M.A, M.p
    else:
        if p is None:
            raise FpError("modulus required for raw arrays")
        A = asarray_mod(M, p)
    basis = nullspace_array(A, p)
    piv = [int(np.nonzero(row)[0][0]) for row in basis]
    return Subspace(basis, piv, A.shape[1], p)


class StreamingEchelon:
    """Incrementally maintained RREF of a stream of equation rows.

    Rows are folded in block by block and discarded; memory stays
    O(ncols x current rank).  The final echelon (and hence the nullspace
    computed from it) is independent of the block schedule.
    """

    def __init__(self, ncols: int, p: int):
        self.p = check_prime(p)
        self.ncols = ncols
        self._rows: list[np.ndarray] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def _reduce_block(self, B: np.ndarray) -> np.ndarray:
        if self.rank == 0 or B.shape[0] == 0:
            return B
        E = np.asarray(self._rows)
        coeff = B[:, self._pivots]
        return (B - matmul_mod(coeff, E, self.p)) % self.p

    def _insert(self, row: np.ndarray):
        c = int(np.nonzero(row)[0][0])
        row = (row * inv_mod(int(row[c]), self.p)) % self.p
        # clear the new pivot column in existing rows
        for t, old in enumerate(self._rows):
            f = int(old[c])
            if f:
                self._rows[t] = (old - f * row) % self.p
        pos = int(np.searchsorted(self._pivots, c))
        self._rows.insert(pos, row)
        self._pivots.insert(pos, c)

    def add_block(self, block) -> int:
        """Fold a block of rows into the echelon; returns the rank gained."""
        B = asarray_mod(block, self.p).reshape(-1, self.ncols)
        gained = 0
        while B.shape[0]:
            B = self._reduce_block(B)
            nz = np.nonzero(B.any(axis=1))[0]
            if nz.size == 0:
                break
            self._insert(B[int(nz[0])].copy())
            gained += 1
            B = B[nz[1:]] if nz.size > 1 else B[:0]
        return gained

    def add_row(self, row) -> bool:
        return self.add_block(np.asarray(row).reshape(1, -1)) == 1

    def echelon(self) -> tuple[np.ndarray, list[int]]:
        if not self._rows:
            return np.zeros((0, self.ncols), dtype=np.int64), []
        return np.asarray(self._rows), list(self._pivots)

    def row_space(self) -> Subspace:
        R, piv = self.echelon()
        return Subspace(R, piv, self.ncols, self.p)

    def nullspace(self) -> Subspace:
        R, piv = self.echelon()
        basis = nullspace_from_rref(R, piv, self.ncols, self.p)
        bpiv = [int(np.nonzero(row)[0][0]) for row in basis]
        return Subspace(basis, bpiv, self.ncols, self.p)


def nullspace_streaming(blocks: Iterable, ncols: int, p: int) -> Subspace:
    """Nullspace of a tall system consumed block-wise, never materialized."""
    ech = StreamingEchelon(ncols, p)
    for B in blocks:
        ech.add_block(B)
    return ech.nullspace()
