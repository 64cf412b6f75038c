"""Family registry: build catalog algebras by name + parameters.

Also hosts the named-derivation verification hooks used by analysis
reports on the Hamiltonian families.
"""

from __future__ import annotations

import numpy as np

from .linalg import FpError, FpMatrix, Subspace
from .liealg import LieAlgebraFp
from .divpow import witt_algebra
from .hamiltonian import (HamiltonianBasis, d2_power_maps, general_out_family,
                          hamiltonian_algebra, sl2_triple, translation_pair)
from .catalog import brown8, model_out_algebra, sl_psl

FAMILY_NAMES = ("W", "H2", "sl", "psl", "br8", "model")


def build_family(family: str, p: int = 3, n=None, r: int | None = None,
                 kind: str | None = None, k: int = 0, D="id",
                 method: str = "oracle") -> tuple[LieAlgebraFp, dict]:
    """Construct a named algebra; returns (algebra, canonical params)."""
    if family == "W":
        if not n:
            raise FpError("W needs n (comma list), e.g. n=1,1")
        n = tuple(int(x) for x in n)
        return witt_algebra(len(n), n, p), {"m": len(n), "n": n, "p": p}
    if family == "H2":
        if not n:
            raise FpError("H2 needs n (comma list of length 2r)")
        n = tuple(int(x) for x in n)
        rr = r if r is not None else len(n) // 2
        if len(n) != 2 * rr:
            raise FpError(f"H2 needs len(n) == 2r, got n={n}, r={rr}")
        return (hamiltonian_algebra(rr, n, p, method=method),
                {"r": rr, "n": n, "p": p})
    if family in ("sl", "psl"):
        if n is None:
            raise FpError(f"{family} needs n (matrix size)")
        size = int(n[0]) if isinstance(n, (tuple, list)) else int(n)
        L = sl_psl(size, p, projective=(family == "psl"))
        return L, {"n": size, "p": p}
    if family == "br8":
        return brown8(), {"p": 3}
    if family == "model":
        if kind is None:
            raise FpError("model needs kind "
                          "(sl2_semi_v2 | h3_rtimes_line | almost_abelian)")
        rr = r if r is not None else 1
        L = model_out_algebra(kind, k=k, r=rr, D=D, p=p)
        params = {"kind": kind, "k": k, "p": p}
        if kind == "almost_abelian":
            params["r"] = rr
        return L, params
    raise FpError(f"unknown family {family!r}; choose from {FAMILY_NAMES}")


# -- named-generator verification for Hamiltonian families -----------------

def _span_coords(der, mats) -> Subspace | None:
    rows = []
    for M in mats:
        try:
            rows.append(der.coordinates(M))
        except FpError:
            return None
    return Subspace.span(np.array(rows, dtype=np.int64), der.dim, der.base.p)


def hamiltonian_generator_checks(r: int, n, p: int):
    """Returns a hook for zassenhaus_report verifying the named derivations.

    For H(2;(1,n2)) at p=3 this checks the sl2-triple (E,F,H), the module
    pair (V,W) and the d2-power maps; for the solvable cases it checks
    the A_i/B/C/D family's bracket relations modulo inner derivations.
    """
    n = tuple(int(x) for x in n)

    def hook(L, der, out):
        from .derout import is_derivation
        checks: list[tuple[str, bool]] = []
        if p != 3:
            return checks
        if r == 1 and n[0] == 1:
            nn = n[1]
            E, F, H = sl2_triple(nn)
            for name, M in (("E", E), ("F", F), ("H", H)):
                checks.append((f"{name} is a derivation",
                               is_derivation(L, M)[0]))
            checks.append(("[E,F] = H", (E.commutator(F) - H).is_zero()))
            checks.append(("[E,H] = E", (E.commutator(H) - E).is_zero()))
            checks.append(("[F,H] = -F", (F.commutator(H) + F).is_zero()))
            span = _span_coords(der, (E, F, H))
            checks.append(("span(E,F,H) meets Inn trivially",
                           span is not None
                           and span.dim == 3
                           and span.intersect(der.inn).dim == 0))
            if nn > 1:
                V, W = translation_pair(nn)
                for name, M in (("V", V), ("W", W)):
                    checks.append((f"{name} is a derivation",
                                   is_derivation(L, M)[0]))
                checks.append(("[E,W] = V", (E.commutator(W) - V).is_zero()))
                checks.append(("[F,V] = W", (F.commutator(V) - W).is_zero()))
                checks.append(("[H,V] = V", (H.commutator(V) - V).is_zero()))
                checks.append(("[H,W] = 2W",
                               (H.commutator(W) - W.__rmul__(2)).is_zero()))
                hb = HamiltonianBasis(1, (1, nn), 3)
                def inner(c):
                    terms = []
                    for col, a in enumerate(hb.indices):
                        for kk, cc in hb.bracket_oracle(c, a):
                            terms.append((kk, col, cc))
                    return FpMatrix.from_triples(hb.dim, hb.dim, terms, 3)
                for i, Pw in enumerate(d2_power_maps(nn), 1):
                    ok = ((Pw.commutator(V)
                           + inner((0, 3 ** nn - 3 ** i))).is_zero()
                          and (Pw.commutator(W)
                               + inner((2, 3 ** nn - 3 ** i - 1))).is_zero()
                          and Pw.commutator(E).is_zero()
                          and Pw.commutator(F).is_zero()
                          and Pw.commutator(H).is_zero())
                    checks.append((f"d2^(3^{i}) central modulo Inn", ok))
        elif r > 1 or (r == 1 and 1 < n[0] <= n[1]):
            A, B, C, Dm = general_out_family(r, n)
            named = [(f"A{i + 1}", M) for i, M in enumerate(A)]
            named += [("B", B), ("C", C)]
            named += [(f"D{i},{j}", M) for (i, j), M in sorted(Dm.items())]
            for name, M in named:
                checks.append((f"{name} is a derivation",
                               is_derivation(L, M)[0]))
            for i, Ai in enumerate(A):
                checks.append((f"[A{i + 1},C] = -A{i + 1}",
                               (Ai.commutator(C) + Ai).is_zero()))
            checks.append((f"[B,C] = {2 * r - 1}B",
                           (B.commutator(C)
                            - B.__rmul__((2 * r - 1) % 3)).is_zero()))
            if r == 1:
                checks.append(("[A1,A2] = B",
                               (A[0].commutator(A[1]) - B).is_zero()))
            else:
                for i in range(2 * r):
                    ip = i + r if i < r else i - r
                    lhs = A[i].commutator(A[ip])
                    checks.append((f"[A{i + 1},A{ip + 1}] is inner",
                                   der.inn.contains(der.coordinates(lhs))))
            for (i, j), Dij in sorted(Dm.items()):
                for name, M in ((f"[A{i},D{i},{j}]",
                                 A[i - 1].commutator(Dij)),
                                (f"[B,D{i},{j}]", B.commutator(Dij))):
                    checks.append((f"{name} is inner",
                                   der.inn.contains(der.coordinates(M))))
        return checks

    return hook
