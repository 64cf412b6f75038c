import numpy as np
import pytest

from modlie.catalog import brown8, sl_psl
from modlie.derout import (DerivationAlgebra, ResourceExceeded, ResourceGuard,
                           derivation_algebra, inner_derivations,
                           is_derivation, load_der_cache, outer_algebra,
                           save_der_cache, zassenhaus_report)
from modlie.divpow import witt_algebra
from modlie.hamiltonian import hamiltonian_algebra, sl2_triple
from modlie.liealg import LieAlgebraFp, abelian_algebra, heisenberg
from modlie.linalg import FpError, FpMatrix


def test_is_derivation_basics():
    L = sl_psl(3, 3, projective=True)
    zero = FpMatrix.zeros(7, 7, 3)
    assert is_derivation(L, zero) == (True, None)
    for i in range(L.dim):
        ad = L.adjoint_matrix(L.basis_vector(i))
        assert is_derivation(L, ad)[0]
    bad = FpMatrix.identity(7, 3)
    ok, witness = is_derivation(L, bad)
    assert not ok and witness is not None
    with pytest.raises(FpError):
        is_derivation(L, FpMatrix.zeros(3, 3, 3))


def test_is_derivation_named_map():
    L = hamiltonian_algebra(1, (1, 2), 3)
    E, F, H = sl2_triple(2)
    assert is_derivation(L, E) == (True, None)


def test_derivation_algebra_known_dims():
    cases = [
        (abelian_algebra(3, 3), 9),          # gl_3
        (heisenberg(3), 6),
        (witt_algebra(1, (1,), 3), 3),
        (sl_psl(3, 3, projective=True), 14),
        (brown8(), 10),
        (hamiltonian_algebra(1, (1, 1), 5), 27),
    ]
    for L, want in cases:
        D = derivation_algebra(L)
        assert D.dim == want, L.name
        for M in D.maps():
            assert is_derivation(L, M)[0]


def test_graded_and_ungraded_engines_agree():
    for L in (witt_algebra(1, (1,), 3), witt_algebra(2, (1, 1), 3),
              hamiltonian_algebra(1, (1, 2), 3)):
        ungraded = LieAlgebraFp(L.p, L.labels, L.table, degrees=None,
                                name=L.name)
        D1 = derivation_algebra(L)
        D2 = derivation_algebra(ungraded)
        # canonical echelon bases must be identical
        assert np.array_equal(D1.basis_flat, D2.basis_flat)
        assert D1.pivot_cols == D2.pivot_cols


def test_inner_derivations():
    L = sl_psl(3, 3, projective=True)
    D = derivation_algebra(L)
    inn = inner_derivations(L, D)
    assert inn.dim == L.dim - L.center().dim == 7
    h = heisenberg(3)
    Dh = derivation_algebra(h)
    assert inner_derivations(h, Dh).dim == 2
    assert inner_derivations(abelian_algebra(2, 3)).dim == 0


def test_inn_is_ideal_of_der():
    # [D, ad x] = ad(Dx) for every derivation basis map
    for L in (sl_psl(3, 3, projective=True), brown8()):
        D = derivation_algebra(L)
        for M in D.maps():
            for i in range(L.dim):
                ad = L.adjoint_matrix(L.basis_vector(i))
                c = M.commutator(ad)
                expect = L.adjoint_matrix(M.A[:, i])
                assert (c - expect).is_zero()
                assert D.inn.contains(D.coordinates(c))


def test_outer_algebra_psl3():
    L = sl_psl(3, 3, projective=True)
    O = outer_algebra(derivation_algebra(L))
    assert O.dim == 7
    ol = O.as_lie()
    assert ol.derived_series()[1] == [7, 7]
    assert ol.simplicity_probe()[0] == "probably_simple"
    # projection kills inner derivations
    assert not O.project(L.adjoint_matrix(L.basis_vector(0))).any()


def test_out_zero_dimensional():
    W = witt_algebra(1, (1,), 3)
    O = outer_algebra(derivation_algebra(W))
    assert O.dim == 0 and O.as_lie() is None


def test_der_coordinates_roundtrip():
    L = brown8()
    D = derivation_algebra(L)
    M = D.maps()[3]
    v = D.coordinates(M)
    back = (v[:, None] * D.basis_flat).sum(axis=0) % 3
    assert np.array_equal(back, M.flatten())
    with pytest.raises(FpError):
        D.coordinates(FpMatrix.identity(8, 3))


def test_out_series_invariant_under_shuffle():
    rng = np.random.default_rng(11)
    for L in (sl_psl(3, 3, projective=True), brown8(),
              hamiltonian_algebra(1, (1, 2), 3)):
        base = outer_algebra(derivation_algebra(L))
        series = base.as_lie().derived_series()[1]
        perm = rng.permutation(L.dim).tolist()
        shuffled = L.permuted(perm)
        O = outer_algebra(derivation_algebra(shuffled))
        assert O.as_lie().derived_series()[1] == series


def test_threads_deterministic():
    L = hamiltonian_algebra(1, (2, 2), 3)
    D1 = derivation_algebra(L, threads=1)
    D3 = derivation_algebra(L, threads=3)
    assert np.array_equal(D1.basis_flat, D3.basis_flat)
    assert D1.pivot_cols == D3.pivot_cols


def test_resource_guard_partial_report():
    L = hamiltonian_algebra(1, (1, 2), 3)
    rep = zassenhaus_report(L, family="H2", params={"r": 1, "n": (1, 2)},
                            time_limit=0.0)
    assert not rep.complete
    assert rep.error and "ceiling" in rep.error
    guard = ResourceGuard(mem_limit=1)
    with pytest.raises(ResourceExceeded):
        guard.check("anything")


def test_zassenhaus_report_contents():
    L = hamiltonian_algebra(2, (1, 1, 1, 1), 3)
    rep = zassenhaus_report(L, family="H2",
                            params={"r": 2, "n": (1, 1, 1, 1)})
    assert rep.dims == {"g": 79, "der": 85, "out": 6}
    assert rep.out_derived_series == [6, 4, 0]
    assert rep.solvable and rep.derived_length == 2
    assert rep.complete
    assert rep.telemetry["seconds"] >= 0


def test_der_cache_bit_identical(tmp_path):
    L = hamiltonian_algebra(1, (1, 2), 3)
    params = {"r": 1, "n": (1, 2), "p": 3}
    D = derivation_algebra(L)
    save_der_cache(str(tmp_path), "H2", params, D)
    loaded = load_der_cache(str(tmp_path), "H2", params, L)
    assert loaded is not None
    assert np.array_equal(loaded.basis_flat, D.basis_flat)
    assert loaded.pivot_cols == D.pivot_cols
    # saving the loaded copy reproduces the file byte for byte
    import os
    fname = os.listdir(tmp_path)[0]
    raw1 = (tmp_path / fname).read_bytes()
    save_der_cache(str(tmp_path), "H2", params, loaded)
    assert (tmp_path / fname).read_bytes() == raw1
    # wrong algebra -> cache miss
    other = hamiltonian_algebra(1, (1, 1), 3)
    assert load_der_cache(str(tmp_path), "H2", params, other) is None


def test_report_uses_cache(tmp_path):
    L = hamiltonian_algebra(1, (1, 1), 3)
    params = {"r": 1, "n": (1, 1), "p": 3}
    r1 = zassenhaus_report(L, family="H2", params=params,
                           cache_dir=str(tmp_path))
    r2 = zassenhaus_report(L, family="H2", params=params,
                           cache_dir=str(tmp_path))
    assert r1.dims == r2.dims
    assert r1.out_derived_series == r2.out_derived_series
