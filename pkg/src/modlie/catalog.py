"""Reference algebras: sl_n / psl_n, Brown's Br_8, and small model algebras.

The model algebras encode the expected structure of the outer derivation
algebras of the Hamiltonian families; analyses are compared against them
constructively (via explicit generators) rather than by isomorphism
testing.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import FpError, check_prime
from .liealg import LieAlgebraFp


def _sl_basis(n: int):
    """(i, j) pairs for the elementary-matrix basis of sl_n.

    Off-diagonal E_ij in row-major order, then the Cartan elements
    H_i = E_ii - E_{i+1,i+1} for i = 1..n-1.
    """
    off = [(i, j) for i in range(n) for j in range(n) if i != j]
    return off


def _sl_coords(M: np.ndarray, n: int, p: int) -> np.ndarray:
    """Coordinates of a traceless matrix in the sl_n basis."""
    off = [M[i, j] for i in range(n) for j in range(n) if i != j]
    d = np.diag(M)
    # M = sum h_i (E_ii - E_{i+1,i+1})  =>  h_i = d_1 + ... + d_i
    h = np.cumsum(d)[: n - 1]
    return np.concatenate([np.asarray(off, dtype=np.int64), h]) % p


def sl_algebra(n: int, p: int) -> LieAlgebraFp:
    """sl_n over GF(p) as trace-zero matrices, dim n^2 - 1."""
    p = check_prime(p)
    if n < 2:
        raise FpError("sl_n needs n >= 2")
    off = _sl_basis(n)
    mats = []
    for i, j in off:
        E = np.zeros((n, n), dtype=np.int64)
        E[i, j] = 1
        mats.append(E)
    for i in range(n - 1):
        H = np.zeros((n, n), dtype=np.int64)
        H[i, i] = 1
        H[i + 1, i + 1] = p - 1
        mats.append(H)
    dim = len(mats)
    table = {}
    for t1 in range(dim):
        for t2 in range(t1 + 1, dim):
            C = (mats[t1] @ mats[t2] - mats[t2] @ mats[t1]) % p
            v = _sl_coords(C, n, p)
            terms = [(int(k), int(c)) for k, c in enumerate(v) if c]
            if terms:
                table[(t1, t2)] = terms
    labels = [f"E{i + 1}{j + 1}" for i, j in off] + \
             [f"H{i + 1}" for i in range(n - 1)]
    return LieAlgebraFp(p, labels, table, name=f"sl_{n}@p={p}")


def quotient_by_center(L: LieAlgebraFp, labels=None) -> LieAlgebraFp:
    """L / Z(L) with structure constants induced on a complement.

    Well defined because brackets with central elements vanish.  A
    zero-dimensional quotient (L abelian) raises DegenerateQuotient.
    """
    z = L.center()
    if z.dim == 0:
        return L
    return L.quotient(z, labels=labels)


def sl_psl(n: int, p: int, projective: bool = False) -> LieAlgebraFp:
    """sl_n, or psl_n = sl_n / center when projective is requested.

    The center of sl_n is nonzero exactly when p divides n; asking for
    psl_n otherwise returns sl_n with a warning.
    """
    L = sl_algebra(n, p)
    if not projective:
        return L
    if n % p != 0:
        warnings.warn(f"sl_{n} is centerless at p={p}; psl = sl", stacklevel=2)
        return L
    Q = quotient_by_center(L)
    Q.name = f"psl_{n}@p={p}"
    return Q


_BR8_TABLE = {
    (1, 2): [(7, 1)], (1, 4): [(6, 2)], (1, 5): [(3, 1)], (1, 7): [(1, 1)],
    (2, 3): [(5, 1)], (2, 5): [(8, 1)], (2, 6): [(4, 2)], (2, 7): [(2, 2)],
    (2, 8): [(6, 2)], (3, 4): [(7, 2)], (3, 6): [(1, 1)], (3, 7): [(3, 2)],
    (4, 5): [(2, 2)], (4, 7): [(4, 1)], (5, 6): [(7, 1)], (5, 7): [(5, 1)],
    (5, 8): [(1, 1)], (6, 7): [(6, 2)],
}


def brown8() -> LieAlgebraFp:
    """Brown's 8-dimensional simple Lie algebra Br_8 over GF(3).

    Bracket table on the basis (K12, K21, K13, K31, K23, K32, H, K);
    unlisted pairs are zero.
    """
    table = {(i - 1, j - 1): [(k - 1, c) for k, c in terms]
             for (i, j), terms in _BR8_TABLE.items()}
    labels = ["K12", "K21", "K13", "K31", "K23", "K32", "H", "K"]
    return LieAlgebraFp(3, labels, table, name="Br_8@p=3")


def _parse_diag(D, size: int, p: int) -> tuple[int, ...]:
    if isinstance(D, str):
        if D == "id":
            return tuple(1 for _ in range(size))
        if D.startswith("diag(") and D.endswith(")"):
            parts = [int(t) for t in D[5:-1].split(",")]
            if len(parts) == size:
                return tuple(c % p for c in parts)
        raise FpError(f"invalid diagonal spec {D!r}")
    parts = tuple(int(t) % p for t in D)
    if len(parts) != size:
        raise FpError(f"diagonal has length {len(parts)}, expected {size}")
    return parts


def model_out_algebra(kind: str, k: int = 0, r: int = 1, D="id",
                      p: int = 3) -> LieAlgebraFp:
    """Small model Lie algebras for expected outer derivation algebras.

    kind = "sl2_semi_v2": sl2 acting on its natural 2-dim module, plus k
    central summands; basis (e1,..,e5) with [e1,e2]=e3, [e1,e3]=e1,
    [e2,e3]=2e2, [e1,e5]=e4, [e2,e4]=e5, [e3,e4]=e4, [e3,e5]=2e5.

    kind = "h3_rtimes_line": Heisenberg h3 extended by a line acting by
    D = diag(1,1,-1), plus k central summands.

    kind = "almost_abelian": F^{2r+1} extended by a line acting by the
    diagonal D, plus k central summands.
    """
    p = check_prime(p)
    if k < 0 or r < 0:
        raise FpError("k and r must be nonnegative")
    if kind == "sl2_semi_v2":
        core = 5
        table = {(0, 1): [(2, 1)], (0, 2): [(0, 1)], (1, 2): [(1, p - 1)],
                 (0, 4): [(3, 1)], (1, 3): [(4, 1)], (2, 3): [(3, 1)],
                 (2, 4): [(4, 2 % p)]}
    elif kind == "h3_rtimes_line":
        core = 4
        diag = _parse_diag(D if D != "id" else "diag(1,1,-1)", 3, p)
        table = {(0, 1): [(2, 1)]}
        for i in range(3):
            if diag[i] % p:
                table[(i, 3)] = [(i, diag[i] % p)]
    elif kind == "almost_abelian":
        core = 2 * r + 2
        diag = _parse_diag(D, 2 * r + 1, p)
        table = {}
        for i in range(2 * r + 1):
            if diag[i] % p:
                table[(i, 2 * r + 1)] = [(i, diag[i] % p)]
    else:
        raise FpError(f"unknown model kind {kind!r}")
    labels = [f"e{i + 1}" for i in range(core)] + \
             [f"z{i + 1}" for i in range(k)]
    return LieAlgebraFp(p, labels, table,
                        name=f"model:{kind}(k={k})@p={p}")


@dataclass(frozen=True)
class InvariantProfile:
    """Cheap isomorphism invariants used for sanity comparisons."""

    dim: int
    derived_dims: tuple[int, ...]
    lower_central_dims: tuple[int, ...]
    center_dim: int
    der_dim: int | None = None
    out_dim: int | None = None


def invariant_profile(L: LieAlgebraFp, der_dim: int | None = None,
                      out_dim: int | None = None) -> InvariantProfile:
    _, dd = L.derived_series()
    lc = L.lower_central_series()
    return InvariantProfile(L.dim, tuple(dd), tuple(lc), L.center().dim,
                            der_dim, out_dim)


def compare(P1: InvariantProfile, P2: InvariantProfile):
    """Field-by-field comparison; (True, None) or (False, first mismatch)."""
    for field in ("dim", "derived_dims", "lower_central_dims", "center_dim",
                  "der_dim", "out_dim"):
        a, b = getattr(P1, field), getattr(P2, field)
        if a is None or b is None:
            continue
        if a != b:
            return False, field
    return True, None
