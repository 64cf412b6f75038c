"""Derivations, inner derivations, and the outer derivation algebra.

The solver does not materialize the full Leibniz system (dim^2 unknowns,
~dim^3/2 equations).  Instead it uses two exact reductions:

1. A derivation is determined by its values on any generating set G, and
   the Leibniz rule holds everywhere as soon as it holds for all pairs
   (g, y) with g in G: the set of x satisfying Leibniz against every y
   is a subalgebra (a consequence of the Jacobi identity).
2. For a graded algebra, Der(g) splits as the direct sum of its graded
   components Der_d, each solvable independently with few unknowns.

Values on generators are propagated along a bracket spanning tree, so
each degree-d system has only sum_i dim g_{deg(g_i)+d} unknowns; for the
241-dimensional Hamiltonian case this replaces a ~192 GB dense nullspace
with a family of systems of a few dozen columns each.
"""

from __future__ import annotations

import os
import re
import resource
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .linalg import (FpError, FpMatrix, StreamingEchelon, Subspace,
                     inv_matrix, matmul_mod, rref_array)
from .liealg import LieAlgebraFp

CODE_VERSION = "1"


class ResourceExceeded(FpError):
    """A configured memory or time ceiling was exceeded."""


class ResourceGuard:
    """Wall-clock and peak-RSS ceilings, polled at stage boundaries."""

    def __init__(self, mem_limit: int = 8 << 30, time_limit: float = 1800.0):
        self.mem_limit = int(mem_limit)
        self.time_limit = float(time_limit)
        self.t0 = time.monotonic()

    @staticmethod
    def peak_bytes() -> int:
        # ru_maxrss is kilobytes on Linux
        return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024

    def elapsed(self) -> float:
        return time.monotonic() - self.t0

    def check(self, stage: str = ""):
        if self.elapsed() > self.time_limit:
            raise ResourceExceeded(f"time ceiling exceeded during {stage}")
        if self.peak_bytes() > self.mem_limit:
            raise ResourceExceeded(f"memory ceiling exceeded during {stage}")

    def telemetry(self) -> dict:
        return {"seconds": round(self.elapsed(), 3),
                "peak_bytes": self.peak_bytes()}


def is_derivation(L: LieAlgebraFp, M) -> tuple[bool, tuple[int, int] | None]:
    """Leibniz check on all basis pairs; returns (ok, witness pair)."""
    A = M.A if isinstance(M, FpMatrix) else np.asarray(M, dtype=np.int64) % L.p
    if A.shape != (L.dim, L.dim):
        raise FpError(f"map must be {L.dim}x{L.dim}")
    p = L.p
    ads = L.ad_sparse()
    for i in range(L.dim):
        # vectorized over j: D[e_i, .] vs [D e_i, .] + [e_i, D .]
        lhs = (A @ (ads[i].toarray() % p)) % p
        rhs = (L.adjoint_matrix(A[:, i]).A + ads[i] @ A) % p
        bad = np.nonzero((lhs - rhs) % p)
        if bad[0].size:
            return False, (i, int(bad[1][0]))
    return True, None


# -- generating set and bracket spanning tree ------------------------------

class _SpinTree:
    __slots__ = ("gens", "gen_nodes", "vecs", "parents", "degrees")

    def __init__(self, gens, gen_nodes, vecs, parents, degrees):
        self.gens = gens            # basis indices chosen as generators
        self.gen_nodes = gen_nodes  # node index of each generator
        self.vecs = vecs            # (dim, dim) array, row t = node vector
        self.parents = parents      # None for generators, else (a, b)
        self.degrees = degrees      # degree of each node


def _spin_tree(L: LieAlgebraFp) -> _SpinTree:
    """Greedy generators plus brackets spanning all of L.

    Nodes stay homogeneous when L is graded, because generators are basis
    elements and brackets of homogeneous elements are homogeneous.
    """
    dim, p = L.dim, L.p
    deg = L.degrees if L.degrees is not None else (0,) * dim
    gens: list[int] = []
    gen_nodes: list[int] = []
    vecs: list[np.ndarray] = []
    parents: list[tuple[int, int] | None] = []
    ndeg: list[int] = []
    span = Subspace.zero(dim, p)
    for j in range(dim):
        v = L.basis_vector(j)
        if span.contains(v):
            continue
        gens.append(j)
        gen_nodes.append(len(vecs))
        vecs.append(v)
        parents.append(None)
        ndeg.append(deg[j])
        span = span.sum(Subspace.span([v], dim, p))
        # close under brackets with everything already present
        frontier = [len(vecs) - 1]
        while frontier and span.dim < dim:
            t = frontier.pop(0)
            for u in range(len(vecs)):
                if span.dim == dim:
                    break
                w = L.bracket(vecs[u], vecs[t])
                if not w.any() or span.contains(w):
                    continue
                vecs.append(w)
                parents.append((u, t))
                ndeg.append(ndeg[u] + ndeg[t])
                span = span.sum(Subspace.span([w], dim, p))
                frontier.append(len(vecs) - 1)
        if span.dim == dim:
            break
    return _SpinTree(gens, gen_nodes, np.array(vecs, dtype=np.int64),
                     parents, ndeg)


# -- the per-degree solver -------------------------------------------------

class _Engine:
    """Shared immutable state for all per-degree solves."""

    def __init__(self, L: LieAlgebraFp, guard: ResourceGuard | None = None):
        self.L = L
        self.p = L.p
        self.dim = L.dim
        self.guard = guard
        self.deg = L.degrees if L.degrees is not None else (0,) * L.dim
        self.tree = _spin_tree(L)
        self.ads = L.ad_sparse()
        # rows grouped by j: block j of (vstack @ M) is ad(e_j) @ M
        self.vstack_ads = sp.vstack(self.ads, format="csr")
        self.ad_nodes = [L.adjoint_vec_sparse(v) for v in self.tree.vecs]
        Vmat = self.tree.vecs.T % self.p          # columns = node vectors
        self.coords = inv_matrix(Vmat, self.p)    # column j = e_j in nodes
        degset = sorted(set(self.deg))
        gdeg = sorted({self.tree.degrees[t] for t in self.tree.gen_nodes})
        self.shifts = sorted({dt - dg for dg in gdeg for dt in degset})

    def solve_degree(self, d: int) -> np.ndarray:
        """Flattened basis (k, dim*dim) of the degree-d derivations."""
        p, dim = self.p, self.dim
        tr = self.tree
        nn = len(tr.vecs)
        targets = []
        for node in tr.gen_nodes:
            want = tr.degrees[node] + d
            targets.append([t for t in range(dim) if self.deg[t] == want])
        P = sum(len(t) for t in targets)
        if P == 0:
            return np.zeros((0, dim * dim), dtype=np.int64)

        M: list[np.ndarray | None] = [None] * nn
        col = 0
        for node, T in zip(tr.gen_nodes, targets):
            B = np.zeros((dim, P), dtype=np.int64)
            for k, t in enumerate(T):
                B[t, col + k] = 1
            M[node] = B
            col += len(T)
        for t in range(nn):
            if M[t] is not None:
                continue
            a, b = tr.parents[t]
            M[t] = (self.ad_nodes[a] @ M[b] - self.ad_nodes[b] @ M[a]) % p
        Mstack = np.stack(M)                                   # (nn, dim, P)
        # N[j] = value of D on e_j, as a (dim, P) matrix of the parameters
        N = matmul_mod(self.coords.T, Mstack.reshape(nn, dim * P), p)
        N3 = N.reshape(dim, dim, P)

        ech = StreamingEchelon(P, p)
        for gi, node in zip(tr.gens, tr.gen_nodes):
            ad_g = self.ads[gi]
            # D([g, e_j]) for all j at once
            lhs = (ad_g.T @ N).reshape(dim, dim, P) % p
            # [D g, e_j] = -ad(e_j) @ D(g)
            t2 = (self.vstack_ads @ M[node]).reshape(dim, dim, P) % p
            # [g, D e_j] = ad(g) @ N[j]
            ntr = np.ascontiguousarray(N3.transpose(1, 0, 2)).reshape(dim, dim * P)
            t3 = (ad_g @ ntr).reshape(dim, dim, P).transpose(1, 0, 2) % p
            R = (lhs + t2 - t3) % p
            rows = R.reshape(dim * dim, P)
            rows = rows[np.any(rows, axis=1)]
            if rows.size:
                ech.add_block(rows)
            if ech.rank == P:
                break
            if self.guard is not None:
                self.guard.check(f"degree {d} constraints")
        sols = ech.nullspace()
        if sols.dim == 0:
            return np.zeros((0, dim * dim), dtype=np.int64)
        # one derivation per solution; N3 is indexed (j, a, param)
        flats = []
        NP = N3.reshape(dim * dim, P)
        cols = matmul_mod(NP, sols.basis.T, p)       # (dim*dim, nsol)
        for s in range(sols.dim):
            Dj_a = cols[:, s].reshape(dim, dim)      # row j = D(e_j)
            flats.append((Dj_a.T).reshape(dim * dim))
        return np.array(flats, dtype=np.int64)


class DerivationAlgebra:
    """Der(g) in a canonical echelonized basis of flattened matrices."""

    def __init__(self, base: LieAlgebraFp, basis_flat: np.ndarray,
                 pivot_cols: list[int]):
        self.base = base
        self.basis_flat = basis_flat      # (nder, dim*dim), RREF rows
        self.pivot_cols = list(pivot_cols)
        self._inn: Subspace | None = None
        self._as_lie: LieAlgebraFp | None = None

    @property
    def dim(self) -> int:
        return self.basis_flat.shape[0]

    def maps(self) -> list[FpMatrix]:
        n = self.base.dim
        return [FpMatrix(row.reshape(n, n), self.base.p)
                for row in self.basis_flat]

    def coordinates(self, M) -> np.ndarray:
        """Coordinates of a derivation matrix in the echelon basis."""
        flat = (M.flatten() if isinstance(M, FpMatrix)
                else np.asarray(M, dtype=np.int64).reshape(-1)) % self.base.p
        coords = flat[self.pivot_cols]
        back = matmul_mod(coords[None, :], self.basis_flat, self.base.p)[0]
        if not np.array_equal(back, flat):
            raise FpError("matrix is not in the span of Der(g)")
        return coords

    @property
    def inn(self) -> Subspace:
        """Span of the ad(e_i), in Der coordinates."""
        if self._inn is None:
            p, n = self.base.p, self.base.dim
            rows = [self.coordinates(ad.toarray() % p)
                    for ad in self.base.ad_sparse()]
            self._inn = Subspace.span(np.array(rows, dtype=np.int64)
                                      if rows else [], self.dim, p)
        return self._inn

    def as_lie(self) -> LieAlgebraFp:
        """Der(g) as an abstract Lie algebra (commutator brackets).

        Quadratic in dim Der; intended for the small catalog cases.
        """
        if self._as_lie is None:
            p = self.base.p
            ms = self.maps()
            table = {}
            for i in range(len(ms)):
                for j in range(i + 1, len(ms)):
                    c = ms[i].commutator(ms[j])
                    v = self.coordinates(c)
                    terms = [(int(k), int(x)) for k, x in enumerate(v) if x]
                    if terms:
                        table[(i, j)] = terms
            labels = [f"D{i + 1}" for i in range(len(ms))]
            self._as_lie = LieAlgebraFp(p, labels, table,
                                        name=f"Der({self.base.name})")
        return self._as_lie


def derivation_algebra(L: LieAlgebraFp, threads: int = 1,
                       guard: ResourceGuard | None = None) -> DerivationAlgebra:
    """Compute Der(g) via the graded generator-parametrized solver."""
    eng = _Engine(L, guard)
    if guard is not None:
        guard.check("setup")
    if threads > 1 and len(eng.shifts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(eng.solve_degree, eng.shifts))
    else:
        parts = [eng.solve_degree(d) for d in eng.shifts]
    stacked = np.vstack([b for b in parts if b.shape[0]]
                        or [np.zeros((0, L.dim * L.dim), dtype=np.int64)])
    if guard is not None:
        guard.check("merge")
    R, pivots = rref_array(stacked, L.p)
    return DerivationAlgebra(L, R, pivots)


def inner_derivations(L: LieAlgebraFp,
                      D: DerivationAlgebra | None = None) -> Subspace:
    """ad(e_1..e_dim) as a subspace of Der coordinates."""
    if D is None:
        D = derivation_algebra(L)
    return D.inn


class OutAlgebra:
    """Out(g) = Der(g)/Inn(g) on a deterministic complement of Inn."""

    def __init__(self, der: DerivationAlgebra):
        self.der = der
        p = der.base.p
        self.inn = der.inn
        full = Subspace.full(der.dim, p)
        self.comp = self.inn.complement_in(full)
        B = np.vstack([self.inn.basis, self.comp.basis]) if der.dim else \
            np.zeros((0, 0), dtype=np.int64)
        self._binv = inv_matrix(B.T, p) if der.dim else B
        self.p = p
        self._as_lie: LieAlgebraFp | None = None

    @property
    def dim(self) -> int:
        return self.comp.dim

    def project_coords(self, v) -> np.ndarray:
        """Out coordinates of a vector given in Der coordinates."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return matmul_mod(self._binv, v[:, None], self.p)[self.inn.dim:, 0]

    def project(self, M) -> np.ndarray:
        """Out coordinates of a derivation matrix."""
        return self.project_coords(self.der.coordinates(M))

    def representatives(self) -> list[FpMatrix]:
        n = self.der.base.dim
        flats = matmul_mod(self.comp.basis, self.der.basis_flat, self.p)
        return [FpMatrix(f.reshape(n, n), self.p) for f in flats]

    def as_lie(self) -> LieAlgebraFp | None:
        """The induced bracket on the complement; None when dim Out = 0."""
        if self.dim == 0:
            return None
        if self._as_lie is None:
            reps = self.representatives()
            table = {}
            for i in range(len(reps)):
                for j in range(i + 1, len(reps)):
                    c = reps[i].commutator(reps[j])
                    v = self.project(c)
                    terms = [(int(k), int(x)) for k, x in enumerate(v) if x]
                    if terms:
                        table[(i, j)] = terms
            labels = [f"o{i + 1}" for i in range(self.dim)]
            self._as_lie = LieAlgebraFp(self.p, labels, table,
                                        name=f"Out({self.der.base.name})")
        return self._as_lie


def outer_algebra(D: DerivationAlgebra) -> OutAlgebra:
    return OutAlgebra(D)


# -- reports ---------------------------------------------------------------

@dataclass
class OutReport:
    family: str
    params: dict
    dims: dict                       # {"g": .., "der": .., "out": ..}
    out_derived_series: list
    solvable: bool
    derived_length: int | None
    simplicity: str                  # not_simple | probably_simple | abelian | skipped
    generator_checks: list = field(default_factory=list)
    telemetry: dict = field(default_factory=dict)
    seed: int = 0
    code_version: str = CODE_VERSION
    schema_version: int = 1
    complete: bool = True
    error: str | None = None


def zassenhaus_report(L: LieAlgebraFp, family: str = "", params: dict | None = None,
                      threads: int = 1, mem_limit: int = 8 << 30,
                      time_limit: float = 1800.0, seed: int = 0,
                      probe_simplicity: bool = True,
                      check_generators=None,
                      cache_dir: str | None = None) -> OutReport:
    """Full Der/Inn/Out analysis of L with resource ceilings.

    check_generators, when given, is called as check_generators(L, der, out)
    and must return a list of (name, passed) pairs.
    """
    guard = ResourceGuard(mem_limit, time_limit)
    params = dict(params or {})
    params.setdefault("p", L.p)
    report = OutReport(family=family, params=params,
                       dims={"g": L.dim, "der": None, "out": None},
                       out_derived_series=[], solvable=False,
                       derived_length=None, simplicity="skipped", seed=seed)
    try:
        der = None
        if cache_dir and family:
            der = load_der_cache(cache_dir, family, params, L)
        if der is None:
            der = derivation_algebra(L, threads=threads, guard=guard)
            if cache_dir and family:
                save_der_cache(cache_dir, family, params, der)
        out = outer_algebra(der)
        guard.check("out")
        report.dims["der"] = der.dim
        report.dims["out"] = out.dim
        if out.dim == 0:
            report.out_derived_series = [0]
            report.solvable = True
            report.derived_length = 0
            report.simplicity = "abelian"
        else:
            ol = out.as_lie()
            _, dims = ol.derived_series()
            report.out_derived_series = dims
            solvable, length = ol.is_solvable()
            report.solvable = solvable
            report.derived_length = length
            if ol.is_abelian():
                report.simplicity = "abelian"
            elif probe_simplicity:
                verdict, _ = ol.simplicity_probe(seed=seed)
                report.simplicity = verdict
        if check_generators is not None:
            report.generator_checks = list(check_generators(L, der, out))
    except ResourceExceeded as e:
        report.complete = False
        report.error = str(e)
    report.telemetry = guard.telemetry()
    return report


# -- derivation cache ------------------------------------------------------

_CACHE_MAGIC = "modlie-der v1"


def _cache_key(family: str, params: dict) -> str:
    bits = [family]
    for k in sorted(params):
        v = params[k]
        if isinstance(v, (tuple, list)):
            v = "x".join(str(x) for x in v)
        bits.append(f"{k}{v}")
    return re.sub(r"[^A-Za-z0-9_x.-]", "_", "_".join(bits))


def save_der_cache(cache_dir: str, family: str, params: dict,
                   D: DerivationAlgebra):
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, _cache_key(family, params) + ".der")
    header = "\n".join([
        _CACHE_MAGIC,
        f"code_version {CODE_VERSION}",
        f"p {D.base.p}",
        f"dim {D.base.dim}",
        f"nder {D.dim}",
        "pivots " + " ".join(str(c) for c in D.pivot_cols),
        "end\n",
    ])
    body = np.ascontiguousarray(D.basis_flat, dtype="<i8").tobytes()
    tmp = path + ".tmp"
    with open(tmp, "wb") as f:
        f.write(header.encode())
        f.write(body)
    os.replace(tmp, path)


def load_der_cache(cache_dir: str, family: str, params: dict,
                   L: LieAlgebraFp) -> DerivationAlgebra | None:
    path = os.path.join(cache_dir, _cache_key(family, params) + ".der")
    if not os.path.exists(path):
        return None
    with open(path, "rb") as f:
        raw = f.read()
    head, _, body = raw.partition(b"end\n")
    lines = head.decode().splitlines()
    if not lines or lines[0] != _CACHE_MAGIC:
        return None
    meta = dict(line.split(" ", 1) for line in lines[1:] if " " in line)
    if meta.get("code_version") != CODE_VERSION:
        return None
    if int(meta["p"]) != L.p or int(meta["dim"]) != L.dim:
        return None
    nder = int(meta["nder"])
    pivots = [int(t) for t in meta.get("pivots", "").split()] if nder else []
    flat = np.frombuffer(body, dtype="<i8").astype(np.int64)
    basis = flat.reshape(nder, L.dim * L.dim) if nder else \
        np.zeros((0, L.dim * L.dim), dtype=np.int64)
    return DerivationAlgebra(L, basis, pivots)
