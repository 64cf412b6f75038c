import numpy as np
import pytest

from modlie.liealg import (DegenerateQuotient, LieAlgebraError, LieAlgebraFp,
                           abelian_algebra, heisenberg)
from modlie.linalg import Subspace


def sl2(p=5):
    # e, f, h with [e,f]=h, [h,e]=2e, [h,f]=-2f
    table = {(0, 1): [(2, 1)], (0, 2): [(0, p - 2)], (1, 2): [(1, 2)]}
    return LieAlgebraFp(p, ["e", "f", "h"], table, name="sl2")


def test_construction_rejects_bad_tables():
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp(3, [], {})
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp(3, ["a", "a"], {})
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp(3, ["a", "b"], {(1, 0): [(0, 1)]})
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp(3, ["a", "b"], {(0, 1): [(5, 1)]})
    # grading violations are caught at construction
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp(3, ["a", "b", "c"], {(0, 1): [(2, 1)]},
                     degrees=[0, 0, 1])


def test_bracket_antisymmetry_and_linearity():
    L = sl2()
    assert np.array_equal(L.bracket_basis(1, 0), (-L.bracket_basis(0, 1)) % 5)
    x, y = [1, 2, 0], [0, 1, 3]
    xy = L.bracket(x, y)
    yx = L.bracket(y, x)
    assert np.array_equal((xy + yx) % 5, np.zeros(3, dtype=np.int64))


def test_validate_flags_jacobi_violation():
    # [e1,e2]=e3, [e1,e3]=e1 violates Jacobi on (1,2,3)
    bad = LieAlgebraFp(5, ["a", "b", "c"],
                       {(0, 1): [(2, 1)], (0, 2): [(0, 1)]})
    violations = bad.validate()
    assert violations and violations[0][:3] == (0, 1, 2)
    assert sl2().validate() == []
    assert heisenberg(3).validate() == []


def test_adjoint_matrix():
    L = sl2()
    ad_e = L.adjoint_matrix(L.basis_vector(0))
    # column f holds [e, f] = h
    assert ad_e.A[2, 1] == 1
    ok_col = L.bracket(L.basis_vector(0), L.basis_vector(2))
    assert np.array_equal(ad_e.A[:, 2], ok_col)


def test_series_and_solvability():
    h = heisenberg(3)
    _, dims = h.derived_series()
    assert dims == [3, 1, 0]
    assert h.is_solvable() == (True, 2)
    assert h.lower_central_series() == [3, 1, 0]
    L = sl2()
    _, dims = L.derived_series()
    assert dims == [3, 3]  # repeating head marks a stationary series
    assert L.is_solvable() == (False, None)


def test_center_and_simplicity():
    h = heisenberg(3)
    assert h.center().dim == 1
    assert h.simplicity_probe()[0] == "not_simple"
    assert abelian_algebra(2, 3).simplicity_probe()[0] == "abelian"
    assert sl2().simplicity_probe()[0] == "probably_simple"


def test_ideal_closure():
    h = heisenberg(3)
    S = Subspace.span([[1, 0, 0]], 3, 3)
    closed = h.ideal_closure(S)
    assert closed.dim == 2  # picks up the center


def test_permuted_isomorphism_invariants():
    L = sl2()
    M = L.permuted([2, 0, 1])
    assert M.validate() == []
    assert M.derived_series()[1] == L.derived_series()[1]
    assert M.center().dim == L.center().dim


def test_quotient():
    h = heisenberg(3)
    q = h.quotient(h.center())
    assert q.dim == 2 and q.is_abelian()
    with pytest.raises(DegenerateQuotient):
        a = abelian_algebra(2, 3)
        a.quotient(Subspace.full(2, 3))
    with pytest.raises(LieAlgebraError):
        # not an ideal: span(e) in sl2
        sl2().quotient(Subspace.span([[1, 0, 0]], 3, 5))


def test_serialize_roundtrip():
    for L in (sl2(), heisenberg(3)):
        text = L.serialize()
        M = LieAlgebraFp.deserialize(text)
        assert M.p == L.p and M.labels == L.labels and M.table == L.table
        assert M.serialize() == text
    # degrees survive the round trip
    g = LieAlgebraFp(3, ["x", "y"], {}, degrees=[1, -1])
    assert LieAlgebraFp.deserialize(g.serialize()).degrees == (1, -1)


def test_deserialize_rejects_garbage():
    with pytest.raises(LieAlgebraError):
        LieAlgebraFp.deserialize("not a liealg file")
