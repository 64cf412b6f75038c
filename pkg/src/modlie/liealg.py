"""Structure-constant Lie algebras over GF(p).

A LieAlgebraFp stores a named basis and a sparse bracket table for the
pairs i < j; antisymmetry is synthesized by the accessors, so it cannot
be violated by construction.  On top of that sit the generic tools:
Jacobi validation, adjoint matrices, derived / lower central series,
ideal closure ("spinning"), a Monte-Carlo simplicity probe, quotients,
and a versioned text serialization.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .linalg import (
    FpError,
    DimensionMismatch,
    FpMatrix,
    Subspace,
    asarray_mod,
    check_prime,
    inv_matrix,
    matmul_mod,
)

BracketTable = Mapping[tuple[int, int], Sequence[tuple[int, int]]]


class LieAlgebraError(FpError):
    pass


class DegenerateQuotient(LieAlgebraError):
    pass


class LieAlgebraFp:
    """Lie algebra over GF(p) given by structure constants.

    table maps (i, j) with i < j to a tuple of (k, c) meaning
    [e_i, e_j] = sum c * e_k.  An optional integer grading (degrees per
    basis element, respected by every stored bracket) is carried along;
    the derivation engine exploits it when present.
    """

    def __init__(self, p: int, labels: Sequence[str], table: BracketTable,
                 degrees: Sequence[int] | None = None, name: str = ""):
        self.p = check_prime(p)
        self.labels = tuple(str(s) for s in labels)
        self.name = name
        if len(self.labels) == 0:
            raise LieAlgebraError("zero-dimensional algebras are rejected")
        if len(set(self.labels)) != len(self.labels):
            raise LieAlgebraError("basis labels must be unique")
        n = len(self.labels)
        clean: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
        for (i, j), terms in table.items():
            if not (0 <= i < j < n):
                raise LieAlgebraError(f"bad bracket pair ({i}, {j})")
            acc: dict[int, int] = {}
            for k, c in terms:
                if not 0 <= k < n:
                    raise LieAlgebraError(f"bad target index {k}")
                acc[k] = (acc.get(k, 0) + int(c)) % self.p
            kept = tuple(sorted((k, c) for k, c in acc.items() if c))
            if kept:
                clean[(i, j)] = kept
        self.table = clean
        self.degrees = None if degrees is None else tuple(int(d) for d in degrees)
        if self.degrees is not None:
            if len(self.degrees) != n:
                raise LieAlgebraError("degrees length mismatch")
            for (i, j), terms in clean.items():
                d = self.degrees[i] + self.degrees[j]
                for k, _ in terms:
                    if self.degrees[k] != d:
                        raise LieAlgebraError(
                            f"grading violated by bracket ({i},{j})->{k}")
        self._ad_sparse: list[sp.csr_matrix] | None = None

    @property
    def dim(self) -> int:
        return len(self.labels)

    # -- bracket accessors -------------------------------------------------

    def bracket_terms(self, i: int, j: int) -> tuple[tuple[int, int], ...]:
        """[e_i, e_j] as ((k, c), ...), for any i, j (antisymmetry applied)."""
        if i == j:
            return ()
        if i < j:
            return self.table.get((i, j), ())
        return tuple((k, (-c) % self.p) for k, c in self.table.get((j, i), ()))

    def bracket_basis(self, i: int, j: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for k, c in self.bracket_terms(i, j):
            v[k] = c
        return v

    def ad_sparse(self) -> list[sp.csr_matrix]:
        """Cached sparse adjoint matrices ad(e_i): column j holds [e_i, e_j]."""
        if self._ad_sparse is None:
            n = self.dim
            rows = [[] for _ in range(n)]
            cols = [[] for _ in range(n)]
            data = [[] for _ in range(n)]
            for (i, j), terms in self.table.items():
                for k, c in terms:
                    rows[i].append(k); cols[i].append(j); data[i].append(c)
                    rows[j].append(k); cols[j].append(i); data[j].append(self.p - c)
            self._ad_sparse = [
                sp.csr_matrix((np.array(data[i], dtype=np.int64),
                               (rows[i], cols[i])), shape=(n, n))
                for i in range(n)
            ]
        return self._ad_sparse

    def bracket(self, x, y) -> np.ndarray:
        """Bilinear bracket of coefficient vectors."""
        x = asarray_mod(x, self.p)
        y = asarray_mod(y, self.p)
        if x.shape != (self.dim,) or y.shape != (self.dim,):
            raise DimensionMismatch("vectors must have length dim")
        ads = self.ad_sparse()
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.nonzero(x)[0]:
            out += int(x[i]) * (ads[int(i)] @ y)
        return out % self.p

    def adjoint_matrix(self, x) -> FpMatrix:
        """Matrix of y -> [x, y]; column k is [x, e_k]."""
        x = asarray_mod(x, self.p)
        if x.shape != (self.dim,):
            raise DimensionMismatch("vector must have length dim")
        ads = self.ad_sparse()
        M = sp.csr_matrix((self.dim, self.dim), dtype=np.int64)
        for i in np.nonzero(x)[0]:
            M = M + int(x[i]) * ads[int(i)]
        return FpMatrix(M.toarray() % self.p, self.p)

    def adjoint_vec_sparse(self, x) -> sp.csr_matrix:
        x = asarray_mod(x, self.p)
        ads = self.ad_sparse()
        M = sp.csr_matrix((self.dim, self.dim), dtype=np.int64)
        for i in np.nonzero(x)[0]:
            M = M + int(x[i]) * ads[int(i)]
        M.data %= self.p
        M.eliminate_zeros()
        return M

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    # -- validation --------------------------------------------------------

    def validate(self, max_violations: int = 16) -> list[tuple[int, int, int, np.ndarray]]:
        """Exhaustive Jacobi check over all basis triples.

        Uses the equivalent pair form ad([e_i,e_j]) = [ad e_i, ad e_j],
        which covers every triple (i, j, k).  Returns violating triples
        (i, j, k, residual-vector); an empty list means the table is a
        Lie algebra.
        """
        ads = self.ad_sparse()
        p = self.p
        out: list[tuple[int, int, int, np.ndarray]] = []
        for (i, j) in self._all_pairs():
            lhs = sp.csr_matrix((self.dim, self.dim), dtype=np.int64)
            for k, c in self.bracket_terms(i, j):
                lhs = lhs + c * ads[k]
            rhs = ads[i] @ ads[j] - ads[j] @ ads[i]
            diff = (lhs - rhs).toarray() % p
            if diff.any():
                for k in np.nonzero(diff.any(axis=0))[0]:
                    out.append((i, j, int(k), diff[:, k].copy()))
                    if len(out) >= max_violations:
                        return out
        return out

    def _all_pairs(self):
        # pairs with a chance of a nonzero residual: those appearing in the
        # table, plus all pairs when the table is small enough to just scan
        n = self.dim
        return ((i, j) for i in range(n) for j in range(i + 1, n))

    # -- series and ideals -------------------------------------------------

    def _bracket_span(self, U: Subspace, V: Subspace) -> Subspace:
        """Span of [u, v] over basis vectors of U and V."""
        vecs = []
        for u in U.basis:
            ad_u = self.adjoint_vec_sparse(u)
            for v in V.basis:
                w = (ad_u @ v) % self.p
                if w.any():
                    vecs.append(w)
        if not vecs:
            return Subspace.zero(self.dim, self.p)
        return Subspace.span(np.asarray(vecs), self.dim, self.p)

    def derived_series(self) -> tuple[list[Subspace], list[int]]:
        """Derived series with dims; a stationary series repeats its head once.

        dims ends in 0 exactly when the algebra is solvable.
        """
        full = Subspace.full(self.dim, self.p)
        series = [full]
        dims = [self.dim]
        while True:
            nxt = self._bracket_span(series[-1], series[-1])
            dims.append(nxt.dim)
            series.append(nxt)
            if nxt.dim == 0 or nxt.dim == series[-2].dim:
                break
        return series, dims

    def is_solvable(self) -> tuple[bool, int | None]:
        _, dims = self.derived_series()
        if dims[-1] == 0:
            return True, len(dims) - 1
        return False, None

    def lower_central_series(self) -> list[int]:
        full = Subspace.full(self.dim, self.p)
        term = full
        dims = [self.dim]
        while True:
            nxt = self._bracket_span(full, term)
            dims.append(nxt.dim)
            if nxt.dim == 0 or nxt.dim == term.dim:
                break
            term = nxt
        return dims

    def center(self) -> Subspace:
        """Nullspace of the stacked adjoint matrices."""
        stacked = sp.vstack(self.ad_sparse()).toarray() % self.p
        from .linalg import nullspace as _ns
        return _ns(stacked, self.p)

    def ideal_closure(self, S: Subspace) -> Subspace:
        """Smallest ideal containing S (iterative spin-up to a fixpoint)."""
        if S.ambient_dim != self.dim:
            raise DimensionMismatch("subspace has wrong ambient dimension")
        cur = Subspace.span(S.basis, self.dim, self.p) if S.dim else S
        ads = self.ad_sparse()
        while True:
            vecs = [cur.basis]
            for ad in ads:
                vecs.append((ad @ cur.basis.T).T % self.p)
            nxt = Subspace.span(np.concatenate(vecs, axis=0), self.dim, self.p)
            if nxt.dim == cur.dim:
                return nxt
            cur = nxt

    def is_abelian(self) -> bool:
        return not self.table

    def simplicity_probe(self, trials: int = 32, seed: int = 0):
        """One-sided randomized simplicity check over GF(p).

        Returns ("abelian", None), ("not_simple", witness Subspace) with a
        certain proper nonzero ideal, or ("probably_simple", None) after
        spinning every basis vector and `trials` seeded random vectors.
        """
        if self.is_abelian():
            return ("abelian", None)
        derived = self._bracket_span(Subspace.full(self.dim, self.p),
                                     Subspace.full(self.dim, self.p))
        if derived.dim < self.dim:
            return ("not_simple", derived)
        z = self.center()
        if z.dim > 0:
            return ("not_simple", z)
        for i in range(self.dim):
            ideal = self.ideal_closure(
                Subspace.span(self.basis_vector(i)[None, :], self.dim, self.p))
            if ideal.dim < self.dim:
                return ("not_simple", ideal)
        rng = np.random.default_rng(seed)
        for _ in range(trials):
            v = rng.integers(0, self.p, size=self.dim)
            if not v.any():
                continue
            ideal = self.ideal_closure(Subspace.span(v[None, :], self.dim, self.p))
            if 0 < ideal.dim < self.dim:
                return ("not_simple", ideal)
        return ("probably_simple", None)

    # -- constructions -----------------------------------------------------

    def permuted(self, perm: Sequence[int]) -> "LieAlgebraFp":
        """Same algebra with basis e'_t = e_{perm[t]}."""
        perm = list(perm)
        inv = {old: new for new, old in enumerate(perm)}
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                terms = self.bracket_terms(perm[a], perm[b])
                if terms:
                    table[(a, b)] = [(inv[k], c) for k, c in terms]
        degrees = None
        if self.degrees is not None:
            degrees = [self.degrees[perm[t]] for t in range(self.dim)]
        labels = [self.labels[perm[t]] for t in range(self.dim)]
        return LieAlgebraFp(self.p, labels, table, degrees=degrees,
                            name=self.name)

    def change_basis(self, T) -> "LieAlgebraFp":
        """Algebra in the basis f_a = sum T[a, i] e_i (T invertible rows)."""
        T = asarray_mod(T, self.p)
        Tinv = inv_matrix(T, self.p)
        n = self.dim
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for a in range(n):
            for b in range(a + 1, n):
                w = self.bracket(T[a], T[b])
                coords = matmul_mod(w, Tinv, self.p)
                terms = [(int(k), int(coords[k])) for k in np.nonzero(coords)[0]]
                if terms:
                    table[(a, b)] = terms
        labels = [f"f{a}" for a in range(n)]
        return LieAlgebraFp(self.p, labels, table, name=self.name)

    def quotient(self, ideal: Subspace,
                 labels: Sequence[str] | None = None) -> "LieAlgebraFp":
        """Quotient algebra on the deterministic pivot-free complement.

        The complement basis rows become the new basis; brackets are
        computed, reduced modulo the ideal and expressed in complement
        coordinates.
        """
        if ideal.ambient_dim != self.dim:
            raise DimensionMismatch("ideal has wrong ambient dimension")
        closed = self.ideal_closure(ideal)
        if closed.dim != ideal.dim:
            raise LieAlgebraError("subspace is not an ideal")
        comp = ideal.complement_in(Subspace.full(self.dim, self.p))
        if comp.dim == 0:
            raise DegenerateQuotient("quotient is zero-dimensional")
        B = np.concatenate([ideal.basis, comp.basis], axis=0)
        Binv = inv_matrix(B.T, self.p)  # coords = Binv @ v
        q = comp.dim
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for a in range(q):
            for b in range(a + 1, q):
                w = self.bracket(comp.basis[a], comp.basis[b])
                coords = matmul_mod(Binv, w, self.p)[ideal.dim:]
                terms = [(int(k), int(coords[k])) for k in np.nonzero(coords)[0]]
                if terms:
                    table[(a, b)] = terms
        if labels is None:
            labels = [f"q{a}" for a in range(q)]
        return LieAlgebraFp(self.p, labels, table,
                            name=(self.name + "/ideal") if self.name else "")

    # -- serialization -----------------------------------------------------

    FORMAT_VERSION = 1

    def serialize(self) -> str:
        """Versioned text format; round-trips bit-exactly."""
        lines = [f"modlie-liealg v{self.FORMAT_VERSION}",
                 f"p {self.p}",
                 f"dim {self.dim}"]
        if self.name:
            lines.append(f"name {self.name}")
        for i, lab in enumerate(self.labels):
            lines.append(f"label {i} {lab}")
        if self.degrees is not None:
            lines.append("degrees " + " ".join(str(d) for d in self.degrees))
        for (i, j) in sorted(self.table):
            terms = ", ".join(f"{k} {c}" for k, c in self.table[(i, j)])
            lines.append(f"{i} {j} : {terms}")
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text: str) -> "LieAlgebraFp":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        m = re.fullmatch(r"modlie-liealg v(\d+)", lines[0].strip())
        if not m or int(m.group(1)) != cls.FORMAT_VERSION:
            raise LieAlgebraError("unknown serialization header")
        p = None
        dim = None
        name = ""
        labels: dict[int, str] = {}
        degrees = None
        table: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for ln in lines[1:]:
            ln = ln.rstrip()
            if ln == "end":
                break
            if ln.startswith("p "):
                p = int(ln.split()[1])
            elif ln.startswith("dim "):
                dim = int(ln.split()[1])
            elif ln.startswith("name "):
                name = ln[5:]
            elif ln.startswith("label "):
                _, idx, lab = ln.split(" ", 2)
                labels[int(idx)] = lab
            elif ln.startswith("degrees "):
                degrees = [int(t) for t in ln.split()[1:]]
            else:
                head, terms = ln.split(":", 1)
                i, j = (int(t) for t in head.split())
                parsed = []
                for chunk in terms.split(","):
                    k, c = chunk.split()
                    parsed.append((int(k), int(c)))
                table[(i, j)] = parsed
        if p is None or dim is None:
            raise LieAlgebraError("missing p/dim header")
        lab_list = [labels[i] for i in range(dim)]
        return cls(p, lab_list, table, degrees=degrees, name=name)

    def __repr__(self):
        tag = self.name or "LieAlgebraFp"
        return f"<{tag}: dim={self.dim}, p={self.p}>"


def abelian_algebra(k: int, p: int) -> LieAlgebraFp:
    return LieAlgebraFp(p, [f"a{i}" for i in range(k)], {}, name=f"abelian{k}")


def heisenberg(p: int) -> LieAlgebraFp:
    return LieAlgebraFp(p, ["e1", "e2", "e3"], {(0, 1): [(2, 1)]}, name="h3")
