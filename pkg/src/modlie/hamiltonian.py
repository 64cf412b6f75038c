"""Hamiltonian Lie algebras H(2r;n)^(2) and their named outer derivations.

The algebra is spanned by D_H(x^(a)) for the admissible indices
0 < a < tau(n) (a is neither the zero index nor tau itself).  Structure
constants come either from the vector-field oracle -- evaluate
D_H(x^(a)) on x^(b) inside the divided power algebra and push the result
back through D_H -- or, for r = 1, from the closed-form coefficient
f(a, b, c, d).  Both routes must agree entry for entry; tests enforce it.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

from .linalg import FpError, FpMatrix, check_prime, lucas_binom
from .liealg import LieAlgebraFp
from .divpow import MultiIndex, WittElement, monomial_label, tau_bounds


class HamiltonianError(FpError):
    pass


class RestrictionError(HamiltonianError):
    """A map claimed to restrict to the algebra leaves its span."""


def sigma(i: int, r: int) -> int:
    """+1 for the first r directions, -1 for the last r (0-based i)."""
    return 1 if i < r else -1

def paired(i: int, r: int) -> int:
    """The conjugate direction i': i + r resp. i - r (0-based)."""
    return i + r if i < r else i - r


def d_h(a, r: int, n: Sequence[int], p: int) -> WittElement:
    """The vector field D_H(x^(a)) = sum sigma(i) (partial_i x^(a)) d_{i'}."""
    n = tuple(n)
    w = WittElement(n, p)
    bounds = w.bounds
    if not isinstance(a, MultiIndex):
        a = MultiIndex(tuple(a), bounds)
    for i in range(2 * r):
        da = a.shifted(i, -1)
        if da is None:
            continue
        w.add_term(da, paired(i, r), sigma(i, r) % p)
    return w


def f_coeff(a: int, b: int, c: int, d: int, p: int) -> int:
    """Closed-form bracket coefficient for r = 1 (two variables).

    [D_H(x1^a x2^b), D_H(x1^c x2^d)] = f * D_H(x1^{a+c-1} x2^{b+d-1}).
    """
    f = 0
    if a > 0 and d > 0:
        f += lucas_binom(a + c - 1, a - 1, p) * lucas_binom(b + d - 1, d - 1, p)
    if b > 0 and c > 0:
        f -= lucas_binom(a + c - 1, c - 1, p) * lucas_binom(b + d - 1, b - 1, p)
    return f % p


class HamiltonianBasis:
    """Index bookkeeping for H(2r;n)^(2) over GF(p).

    Basis order: reversed-index lexicographic on the exponent tuple, which
    for two variables is ascending x2-exponent, then ascending x1-exponent.
    """

    def __init__(self, r: int, n: Sequence[int], p: int):
        self.p = check_prime(p)
        self.r = int(r)
        self.n = tuple(int(x) for x in n)
        if self.r < 1 or len(self.n) != 2 * self.r or any(x < 1 for x in self.n):
            raise HamiltonianError(f"invalid parameters r={r}, n={n}")
        self.tau = tau_bounds(self.n, p)
        from itertools import product as iproduct
        idx = [tuple(reversed(rev))
               for rev in iproduct(*[range(t + 1) for t in reversed(self.tau)])]
        idx.sort(key=lambda a: tuple(reversed(a)))
        zero = tuple(0 for _ in self.tau)
        self.indices = [a for a in idx if a != zero and a != self.tau]
        self.pos = {a: t for t, a in enumerate(self.indices)}

    @property
    def dim(self) -> int:
        return len(self.indices)

    def label(self, a: tuple[int, ...]) -> str:
        return f"D_H({monomial_label(a)})"

    def admissible(self, a: tuple[int, ...]) -> bool:
        return a in self.pos

    def in_box(self, a: tuple[int, ...]) -> bool:
        return all(0 <= x <= t for x, t in zip(a, self.tau))

    # -- brackets ----------------------------------------------------------

    def poisson_monomials(self, a: tuple[int, ...], b: tuple[int, ...],
                          box: tuple[int, ...] | None = None) -> dict[tuple[int, ...], int]:
        """D_H(x^(a))(x^(b)) expanded in the divided power algebra.

        box defaults to tau; indices leaving it are zero by convention.
        """
        p = self.p
        box = self.tau if box is None else box
        acc: dict[tuple[int, ...], int] = {}
        for i in range(2 * self.r):
            if a[i] == 0:
                continue
            ip = paired(i, self.r)
            if b[ip] == 0:
                continue
            s = tuple(x + y for x, y in zip(a, b))
            t = list(s)
            t[i] -= 1
            t[ip] -= 1
            t = tuple(t)
            if any(x > u for x, u in zip(t, box)):
                continue
            bb = list(b)
            bb[ip] -= 1
            c = lucas_binom(t, tuple(bb), p)
            if c == 0:
                continue
            v = (acc.get(t, 0) + sigma(i, self.r) * c) % p
            if v:
                acc[t] = v
            else:
                acc.pop(t, None)
        return acc

    def bracket_oracle(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[tuple[int, int]]:
        """Structure terms of [D_H(x^(a)), D_H(x^(b))] via the oracle."""
        zero = tuple(0 for _ in self.tau)
        out = []
        for t, c in self.poisson_monomials(a, b).items():
            if t == zero:
                continue
            if t == self.tau:
                # closure of the span: the top-index coefficient must cancel
                if c % self.p:
                    raise HamiltonianError(
                        f"bracket [{a},{b}] hits the top index with coeff {c}")
                continue
            out.append((self.pos[t], c))
        return sorted(out)

    def bracket_closed_form(self, a: tuple[int, ...], b: tuple[int, ...]) -> list[tuple[int, int]]:
        """Structure terms via f(a, b, c, d); only valid for r = 1."""
        if self.r != 1:
            raise HamiltonianError("closed form is only available for r = 1")
        f = f_coeff(a[0], a[1], b[0], b[1], self.p)
        if f == 0:
            return []
        t = (a[0] + b[0] - 1, a[1] + b[1] - 1)
        if not self.in_box(t) or not self.admissible(t):
            return []
        return [(self.pos[t], f)]

    def algebra(self, method: str = "oracle") -> LieAlgebraFp:
        if method == "oracle":
            bracket = self.bracket_oracle
        elif method == "closed_form":
            bracket = self.bracket_closed_form
        else:
            raise HamiltonianError(f"unknown method {method!r}")
        table = {}
        for t1, a in enumerate(self.indices):
            for t2 in range(t1 + 1, self.dim):
                terms = bracket(a, self.indices[t2])
                if terms:
                    table[(t1, t2)] = terms
        labels = [self.label(a) for a in self.indices]
        degrees = [sum(a) - 2 for a in self.indices]
        return LieAlgebraFp(self.p, labels, table, degrees=degrees,
                            name=f"H({2 * self.r};{self.n})^(2)@p={self.p}")

    # -- linear maps given by an index rule --------------------------------

    def map_from_rule(self, rule: Callable[[tuple[int, ...]], tuple[int, tuple[int, ...]] | None]) -> FpMatrix:
        """Endomorphism matrix from a per-basis-index rule.

        rule(a) returns (coeff, target-index) or None; targets outside the
        box or excluded (zero / tau) give the zero vector, per the span
        convention.
        """
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for col, a in enumerate(self.indices):
            res = rule(a)
            if res is None:
                continue
            c, t = res
            c %= self.p
            if c == 0 or not self.in_box(t) or not self.admissible(t):
                continue
            M[self.pos[t], col] = c
        return FpMatrix(M, self.p)


def hamiltonian_algebra(r: int, n: Sequence[int], p: int,
                        method: str = "oracle") -> LieAlgebraFp:
    """H(2r;n)^(2) over GF(p), dim = p^{|n|} - 2."""
    return HamiltonianBasis(r, n, p).algebra(method)


def hamiltonian_witt_basis(r: int, n: Sequence[int], p: int) -> list[WittElement]:
    """The ordered basis realized as vector fields inside W(2r;n)."""
    hb = HamiltonianBasis(r, n, p)
    return [d_h(a, r, hb.n, p) for a in hb.indices]


# -- named derivations of H(2;(1,n))^(2), characteristic 3 -----------------

def _h2_basis(n: int, p: int = 3) -> HamiltonianBasis:
    if p != 3:
        raise HamiltonianError("the named derivations are specific to p = 3")
    return HamiltonianBasis(1, (1, n), 3)


def sl2_triple(n: int, p: int = 3) -> tuple[FpMatrix, FpMatrix, FpMatrix]:
    """The derivations E, F, H on H(2;(1,n))^(2), p = 3.

    They satisfy [E,F] = H, [E,H] = E, [F,H] = -F and span a copy of
    sl_2 inside Der that meets the inner derivations trivially.
    """
    hb = _h2_basis(n, p)
    E = hb.map_from_rule(lambda a: (1, (0, a[1] + 1)) if a[0] == 2 else None)
    F = hb.map_from_rule(lambda a: (1, (2, a[1] - 1)) if a[0] == 0 else None)
    H = hb.map_from_rule(lambda a: (1 - a[0], a))
    return E, F, H


def translation_pair(n: int, p: int = 3) -> tuple[FpMatrix, FpMatrix]:
    """The derivations V, W on H(2;(1,n))^(2), p = 3, n > 1.

    With E, F, H they generate a copy of sl2 acting on its natural
    two-dimensional module: [E,W] = V, [F,V] = W, [H,V] = V, [H,W] = 2W.
    """
    if n < 2:
        raise HamiltonianError("the translation pair needs n > 1")
    hb = _h2_basis(n, p)
    top = 3 ** n
    V = hb.map_from_rule(
        lambda a: (1, (a[0] - 1, top - 1)) if a[1] == 0 else None)
    W = hb.map_from_rule(
        lambda a: ((-1) ** (a[0] + 1), (a[0] + 1, a[1] + top - 2))
        if a[0] + a[1] == 1 else None)
    return V, W


def d2_power_maps(n: int, p: int = 3) -> list[FpMatrix]:
    """The iterated-shift derivations (powers 3^i of d2), i = 1..n-1."""
    hb = _h2_basis(n, p)
    out = []
    for i in range(1, n):
        shift = 3 ** i
        out.append(hb.map_from_rule(lambda a, s=shift: (1, (a[0], a[1] - s))))
    return out


def general_out_family(r: int, n: Sequence[int], p: int = 3):
    """Outer-derivation representatives A_1..A_2r, B, C, D_{i,j} on H(2r;n)^(2).

    Valid in the solvable-Out cases: r > 1, or r = 1 with 1 < n_1 <= n_2.
    Returns (A_list, B, C, D_dict) with D_dict keyed by (i, j), 1-based i
    and 0 < j < n_i.
    """
    n = tuple(int(x) for x in n)
    if p != 3:
        raise HamiltonianError("the A/B/C/D family is specific to p = 3")
    if not (r > 1 or (r == 1 and 1 < n[0] <= n[1])):
        raise HamiltonianError(
            f"parameters r={r}, n={n} outside the almost-abelian cases")
    hb = HamiltonianBasis(r, n, p)
    tau = hb.tau
    m = 2 * r

    def a_rule(i):
        def rule(a):
            if a[i] != 0:
                return None
            t = list(a)
            t[i] = tau[i]
            t[paired(i, r)] -= 1
            return (sigma(i, r), tuple(t))
        return rule

    A = [hb.map_from_rule(a_rule(i)) for i in range(m)]

    def b_rule(a):
        if sum(a) != 1:
            return None
        j = next(t for t in range(m) if a[t])
        k = paired(j, r)
        t = list(tau)
        t[k] -= 1
        return (sigma(k, r), tuple(t))

    B = hb.map_from_rule(b_rule)
    C = hb.map_from_rule(lambda a: (sum(a) - 2, a))

    D: dict[tuple[int, int], FpMatrix] = {}
    for i in range(m):
        for j in range(1, n[i]):
            shift = p ** j
            def d_rule(a, i=i, s=shift):
                t = list(a)
                t[i] -= s
                return (1, tuple(t))
            D[(i + 1, j)] = hb.map_from_rule(d_rule)
    return A, B, C, D


# -- independent oracle: restriction of adjoints from a larger truncation ---

def ad_restriction_from_extension(r: int, n: Sequence[int], p: int,
                                  c: Sequence[int]) -> FpMatrix:
    """ad(D_H(x^(c))) computed in the enlarged truncation n+1, restricted.

    c may exceed tau(n) componentwise (e.g. a pure power p^{n_i}) as long
    as it fits in tau(n + 1).  The restriction must map the embedded
    algebra to itself; a leak outside its span raises RestrictionError.
    """
    n = tuple(int(x) for x in n)
    hb = HamiltonianBasis(r, n, p)
    big_n = tuple(x + 1 for x in n)
    big = HamiltonianBasis(r, big_n, p)
    c = tuple(int(x) for x in c)
    if not big.in_box(c):
        raise HamiltonianError(f"index {c} outside the enlarged truncation")
    zero = tuple(0 for _ in n)
    M = np.zeros((hb.dim, hb.dim), dtype=np.int64)
    for col, a in enumerate(hb.indices):
        for t, coeff in big.poisson_monomials(c, a, box=big.tau).items():
            if t == zero:
                continue
            if hb.admissible(t):
                M[hb.pos[t], col] = (M[hb.pos[t], col] + coeff) % p
            elif coeff % p:
                raise RestrictionError(
                    f"ad(D_H(x^{c})) leaks {a} -> {t} with coeff {coeff}")
    return FpMatrix(M, p)
