"""Divided power algebras O(m;n) and generalized Jacobson-Witt algebras.

Monomials x^(a) are indexed by multi-indices a with componentwise bounds
tau_i = p^{n_i} - 1; any operation leaving the bounded box yields the
distinguished zero result rather than an error.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .linalg import FpError, check_prime, lucas_binom
from .liealg import LieAlgebraFp


class BoundsMismatch(FpError):
    pass


@dataclass(frozen=True)
class MultiIndex:
    """Exponent tuple with its truncation bounds tau = (p^{n_i} - 1)."""

    exponents: tuple[int, ...]
    bounds: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.bounds):
            raise BoundsMismatch("exponents/bounds length mismatch")
        if any(a < 0 or a > t for a, t in zip(self.exponents, self.bounds)):
            raise BoundsMismatch(f"index {self.exponents} outside bounds {self.bounds}")

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def is_zero(self) -> bool:
        return not any(self.exponents)

    def is_top(self) -> bool:
        return self.exponents == self.bounds

    def shifted(self, i: int, delta: int) -> "MultiIndex | None":
        """Index with component i shifted by delta, or None if out of bounds."""
        a = list(self.exponents)
        a[i] += delta
        if a[i] < 0 or a[i] > self.bounds[i]:
            return None
        return MultiIndex(tuple(a), self.bounds)


def _require_same_bounds(a: MultiIndex, b: MultiIndex):
    if a.bounds != b.bounds:
        raise BoundsMismatch("operands come from different truncations")


def tau_bounds(n: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple(p ** ni - 1 for ni in n)


def dp_multiply(a: MultiIndex, b: MultiIndex, p: int) -> tuple[int, MultiIndex] | None:
    """x^(a) * x^(b) = C(a+b, b) x^(a+b); None encodes the zero result."""
    _require_same_bounds(a, b)
    s = tuple(x + y for x, y in zip(a.exponents, b.exponents))
    if any(x > t for x, t in zip(s, a.bounds)):
        return None
    c = lucas_binom(s, b.exponents, p)
    if c == 0:
        return None
    return c, MultiIndex(s, a.bounds)


def dp_partial(i: int, a: MultiIndex) -> MultiIndex | None:
    """partial_i x^(a) = x^(a - eps_i), or None when a_i = 0."""
    return a.shifted(i, -1)


def iter_indices(n: tuple[int, ...], p: int) -> Iterator[MultiIndex]:
    """All indices of O(m;n) in reversed-index lexicographic order."""
    tau = tau_bounds(n, p)
    for rev in product(*[range(t + 1) for t in reversed(tau)]):
        yield MultiIndex(tuple(reversed(rev)), tau)


class WittElement:
    """Element of W(m;n): a sparse sum of terms c * x^(a) d_i."""

    __slots__ = ("n", "p", "bounds", "terms")

    def __init__(self, n: tuple[int, ...], p: int, terms=None):
        self.n = tuple(n)
        self.p = p
        self.bounds = tau_bounds(self.n, p)
        self.terms: dict[tuple[tuple[int, ...], int], int] = {}
        if terms:
            for (a, i), c in dict(terms).items():
                self.add_term(MultiIndex(tuple(a), self.bounds), i, c)

    def add_term(self, a: MultiIndex, i: int, c: int):
        if a.bounds != self.bounds:
            raise BoundsMismatch("term from a different truncation")
        key = (a.exponents, i)
        v = (self.terms.get(key, 0) + int(c)) % self.p
        if v:
            self.terms[key] = v
        else:
            self.terms.pop(key, None)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (isinstance(other, WittElement) and other.n == self.n
                and other.p == self.p and other.terms == self.terms)

    def __hash__(self):
        return hash((self.n, self.p, tuple(sorted(self.terms.items()))))

    def scaled(self, c: int) -> "WittElement":
        out = WittElement(self.n, self.p)
        for (a, i), v in self.terms.items():
            out.add_term(MultiIndex(a, self.bounds), i, v * c)
        return out

    def __add__(self, other: "WittElement") -> "WittElement":
        out = WittElement(self.n, self.p, self.terms)
        for (a, i), v in other.terms.items():
            out.add_term(MultiIndex(a, self.bounds), i, v)
        return out

    def __sub__(self, other: "WittElement") -> "WittElement":
        return self + other.scaled(self.p - 1)

    def apply(self, f: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
        """Act on an element of O(m;n) given as {exponents: coeff}."""
        out: dict[tuple[int, ...], int] = {}
        for (a, i), c in self.terms.items():
            ai = MultiIndex(a, self.bounds)
            for b, cb in f.items():
                db = MultiIndex(b, self.bounds).shifted(i, -1)
                if db is None:
                    continue
                prod = dp_multiply(ai, db, self.p)
                if prod is None:
                    continue
                cc, idx = prod
                key = idx.exponents
                v = (out.get(key, 0) + c * cb * cc) % self.p
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def bracket(self, other: "WittElement") -> "WittElement":
        """Commutator of vector fields via the explicit Witt bracket."""
        out = WittElement(self.n, self.p)
        for (a, i), ca in self.terms.items():
            ai = MultiIndex(a, self.bounds)
            for (b, j), cb in other.terms.items():
                bj = MultiIndex(b, self.bounds)
                c = (ca * cb) % self.p
                da = bj.shifted(i, -1)
                if da is not None:
                    prod = dp_multiply(ai, da, self.p)
                    if prod is not None:
                        out.add_term(prod[1], j, c * prod[0])
                db = ai.shifted(j, -1)
                if db is not None:
                    prod = dp_multiply(bj, db, self.p)
                    if prod is not None:
                        out.add_term(prod[1], i, (-c) % self.p * prod[0])
        return out

    def __repr__(self):
        if not self.terms:
            return "WittElement(0)"
        bits = []
        for (a, i), c in sorted(self.terms.items()):
            mono = monomial_label(a)
            bits.append(f"{c}*{mono}d{i + 1}" if mono else f"{c}*d{i + 1}")
        return "WittElement(" + " + ".join(bits) + ")"


def monomial_label(a: tuple[int, ...]) -> str:
    parts = []
    for i, e in enumerate(a):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}^{e}")
    return " ".join(parts)


def witt_basis_order(n: tuple[int, ...], p: int) -> list[tuple[tuple[int, ...], int]]:
    """Basis (a, direction): graded-first, then reversed-index lex, then direction."""
    tau = tau_bounds(n, p)
    idx = [tuple(reversed(rev))
           for rev in product(*[range(t + 1) for t in reversed(tau)])]
    idx.sort(key=lambda a: (sum(a), tuple(reversed(a))))
    m = len(n)
    return [(a, i) for a in idx for i in range(m)]


def witt_algebra(m: int, n: tuple[int, ...], p: int) -> LieAlgebraFp:
    """The Lie algebra W(m;n) on the basis x^(a) d_i, dim = m * p^{|n|}."""
    p = check_prime(p)
    n = tuple(int(x) for x in n)
    if m < 1 or len(n) != m or any(x < 1 for x in n):
        raise FpError(f"invalid Witt parameters m={m}, n={n}")
    tau = tau_bounds(n, p)
    basis = witt_basis_order(n, p)
    pos = {ai: t for t, ai in enumerate(basis)}
    eps = [tuple(1 if t == i else 0 for t in range(m)) for i in range(m)]

    def bracket(a, i, b, j):
        # [x^a d_i, x^b d_j] = C(a+b-e_i, a) x^(a+b-e_i) d_j
        #                    - C(a+b-e_j, b) x^(a+b-e_j) d_i
        out: dict[int, int] = {}
        s1 = tuple(x + y - e for x, y, e in zip(a, b, eps[i]))
        if all(0 <= x <= t for x, t in zip(s1, tau)):
            c = lucas_binom(s1, a, p)
            if c:
                k = pos[(s1, j)]
                out[k] = (out.get(k, 0) + c) % p
        s2 = tuple(x + y - e for x, y, e in zip(a, b, eps[j]))
        if all(0 <= x <= t for x, t in zip(s2, tau)):
            c = lucas_binom(s2, b, p)
            if c:
                k = pos[(s2, i)]
                out[k] = (out.get(k, 0) - c) % p
        return [(k, c) for k, c in sorted(out.items()) if c]

    table = {}
    for t1 in range(len(basis)):
        a, i = basis[t1]
        for t2 in range(t1 + 1, len(basis)):
            b, j = basis[t2]
            terms = bracket(a, i, b, j)
            if terms:
                table[(t1, t2)] = terms

    labels = []
    for a, i in basis:
        mono = monomial_label(a)
        labels.append(f"{mono} d{i + 1}" if mono else f"d{i + 1}")
    degrees = [sum(a) - 1 for a, _ in basis]
    return LieAlgebraFp(p, labels, table, degrees=degrees,
                        name=f"W({m};{n})@p={p}")


def witt_basis_elements(m: int, n: tuple[int, ...], p: int) -> list[WittElement]:
    """The ordered basis of witt_algebra as actual WittElements."""
    out = []
    for a, i in witt_basis_order(tuple(n), p):
        w = WittElement(tuple(n), p)
        w.add_term(MultiIndex(a, w.bounds), i, 1)
        out.append(w)
    return out
