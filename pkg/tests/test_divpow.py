import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modlie.divpow import (BoundsMismatch, MultiIndex, WittElement,
                           dp_multiply, dp_partial, iter_indices, tau_bounds,
                           witt_algebra, witt_basis_elements, witt_basis_order)


def test_multi_index_bounds():
    a = MultiIndex((2, 1), (2, 2))
    assert a.degree == 3 and a.m == 2
    assert not a.is_zero() and not a.is_top()
    assert MultiIndex((2, 2), (2, 2)).is_top()
    with pytest.raises(BoundsMismatch):
        MultiIndex((3, 0), (2, 2))
    assert a.shifted(0, 1) is None  # leaves the box
    assert a.shifted(1, -1).exponents == (2, 0)


def test_tau_bounds():
    assert tau_bounds((1, 2), 3) == (2, 8)
    assert tau_bounds((1,), 5) == (4,)


def test_dp_multiply_cases():
    tau = tau_bounds((1, 1), 3)
    x = MultiIndex((1, 0), tau)
    assert dp_multiply(x, x, 3) == (2, MultiIndex((2, 0), tau))
    x2 = MultiIndex((2, 0), tau)
    assert dp_multiply(x, x2, 3) is None  # C(3,1) = 0 mod 3
    top = MultiIndex(tau, tau)
    assert dp_multiply(top, x, 3) is None  # out of the box


@st.composite
def _indices(draw):
    tau = tau_bounds((1, 1), 3)
    e = (draw(st.integers(0, 2)), draw(st.integers(0, 2)))
    return MultiIndex(e, tau)


@given(_indices(), _indices())
@settings(max_examples=80, deadline=None)
def test_dp_multiply_commutative_and_exact(a, b):
    ab = dp_multiply(a, b, 3)
    ba = dp_multiply(b, a, 3)
    assert ab == ba
    if ab is not None:
        c, s = ab
        want = 1
        for x, y in zip(s.exponents, b.exponents):
            want = want * math.comb(x, y) % 3
        assert c == want


def test_dp_partial():
    tau = tau_bounds((1, 1), 3)
    a = MultiIndex((2, 1), tau)
    assert dp_partial(0, a).exponents == (1, 1)
    assert dp_partial(1, MultiIndex((2, 0), tau)) is None


def test_iter_indices_order():
    got = [a.exponents for a in iter_indices((1, 1), 3)]
    assert got[:4] == [(0, 0), (1, 0), (2, 0), (0, 1)]
    assert len(got) == 9


def test_witt_element_bracket_antisymmetric():
    w1 = WittElement((1, 1), 3, {((1, 0), 0): 1})
    w2 = WittElement((1, 1), 3, {((0, 1), 1): 1, ((2, 0), 0): 2})
    b = w1.bracket(w2)
    assert (b + w2.bracket(w1)).is_zero()
    assert w1.bracket(w1).is_zero()


def test_witt_dims_and_validation():
    for (m, n, p) in [(1, (1,), 3), (1, (2,), 3), (2, (1, 1), 3),
                      (1, (1,), 5)]:
        W = witt_algebra(m, n, p)
        assert W.dim == m * p ** sum(n)
        assert W.validate() == []


def test_witt_basis_order_graded():
    order = witt_basis_order((1, 1), 3)
    degs = [sum(a) for a, _ in order]
    assert degs == sorted(degs)
    W = witt_algebra(2, (1, 1), 3)
    assert W.degrees[0] == -1  # d_1 has degree |a| - 1 = -1


def test_witt_table_matches_element_oracle():
    # structure constants agree with explicit vector-field brackets
    W = witt_algebra(2, (1, 1), 3)
    elems = witt_basis_elements(2, (1, 1), 3)
    order = witt_basis_order((1, 1), 3)
    for i in range(W.dim):
        for j in range(i + 1, W.dim):
            expect = elems[i].bracket(elems[j])
            acc = WittElement((1, 1), 3)
            for k, c in W.bracket_terms(i, j):
                a, d = order[k]
                acc = acc + WittElement((1, 1), 3, {(a, d): c})
            assert acc == expect


def test_witt_derivation_dimension_formula():
    # dim Der = m(p^|n|-1)+|n| for the Jacobson-Witt algebras
    from modlie.derout import derivation_algebra
    for (m, n, p, want) in [(1, (1,), 3, 3), (2, (1, 1), 3, 18),
                            (1, (2,), 3, 10)]:
        W = witt_algebra(m, n, p)
        assert derivation_algebra(W).dim == want
