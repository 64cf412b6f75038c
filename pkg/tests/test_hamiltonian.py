import math

import numpy as np
import pytest

from modlie.divpow import WittElement
from modlie.hamiltonian import (HamiltonianBasis, HamiltonianError,
                                ad_restriction_from_extension, d2_power_maps,
                                d_h, f_coeff, general_out_family,
                                hamiltonian_algebra, hamiltonian_witt_basis,
                                paired, sigma, sl2_triple, translation_pair)
from modlie.derout import is_derivation


def test_sigma_paired():
    assert [sigma(i, 2) for i in range(4)] == [1, 1, -1, -1]
    assert [paired(i, 2) for i in range(4)] == [2, 3, 0, 1]


def test_d_h_small():
    # D_H(x1 x2) = x2 d2 - x1 d1  (0-based directions)
    w = d_h((1, 1), 1, (1, 1), 3)
    assert w.terms == {((0, 1), 1): 1, ((1, 0), 0): 2}
    assert d_h((0, 0), 1, (1, 1), 3).is_zero()


def test_f_coeff_formula():
    # f = C(a+c-1,a-1) C(b+d-1,d-1) - C(a+c-1,c-1) C(b+d-1,b-1) mod p
    for (a, b, c, d, p) in [(1, 0, 0, 1, 3), (2, 1, 1, 2, 3), (1, 2, 2, 0, 5)]:
        want = 0
        if a > 0 and d > 0:
            want += math.comb(a + c - 1, a - 1) * math.comb(b + d - 1, d - 1)
        if b > 0 and c > 0:
            want -= math.comb(a + c - 1, c - 1) * math.comb(b + d - 1, b - 1)
        assert f_coeff(a, b, c, d, p) == want % p


def test_dimension_and_basis_order():
    for (r, n, p) in [(1, (1, 1), 3), (1, (1, 2), 3), (2, (1, 1, 1, 1), 3),
                      (1, (1, 1), 5)]:
        hb = HamiltonianBasis(r, n, p)
        assert hb.dim == p ** sum(n) - 2
        assert hamiltonian_algebra(r, n, p).dim == hb.dim
    hb = HamiltonianBasis(1, (1, 1), 3)
    # reversed-index lexicographic: x1, x1^2, x2, x1 x2, ...
    assert hb.indices[:4] == [(1, 0), (2, 0), (0, 1), (1, 1)]
    assert hb.label((2, 1)) == "D_H(x1^2 x2)"


def test_invalid_parameters():
    with pytest.raises(HamiltonianError):
        HamiltonianBasis(1, (1, 1, 1), 3)
    with pytest.raises(HamiltonianError):
        HamiltonianBasis(0, (), 3)
    with pytest.raises(HamiltonianError):
        hamiltonian_algebra(1, (1, 1), 3, method="magic")
    with pytest.raises(HamiltonianError):
        HamiltonianBasis(2, (1, 1, 1, 1), 3).bracket_closed_form(
            (1, 0, 0, 0), (0, 1, 0, 0))


def test_jacobi_validates():
    for (r, n, p) in [(1, (1, 1), 3), (1, (2, 2), 3), (2, (1, 1, 1, 1), 3),
                      (1, (1, 1), 5)]:
        assert hamiltonian_algebra(r, n, p).validate() == []


def test_oracle_equals_closed_form():
    for n in [(1, 1), (1, 2), (2, 2)]:
        hb = HamiltonianBasis(1, n, 3)
        for i, a in enumerate(hb.indices):
            for b in hb.indices[i + 1:]:
                assert hb.bracket_oracle(a, b) == hb.bracket_closed_form(a, b)


def test_bracket_matches_witt_embedding():
    # [D_H(x^a), D_H(x^b)] computed abstractly equals the vector-field
    # commutator inside W(2;n)
    hb = HamiltonianBasis(1, (1, 1), 3)
    wb = hamiltonian_witt_basis(1, (1, 1), 3)
    for i in range(hb.dim):
        for j in range(i + 1, hb.dim):
            direct = wb[i].bracket(wb[j])
            acc = WittElement((1, 1), 3)
            for k, c in hb.bracket_oracle(hb.indices[i], hb.indices[j]):
                acc = acc + wb[k].scaled(c)
            assert acc == direct


def test_sl2_triple_relations():
    for n in (1, 2, 3):
        L = hamiltonian_algebra(1, (1, n), 3)
        E, F, H = sl2_triple(n)
        for M in (E, F, H):
            assert is_derivation(L, M)[0]
        assert (E.commutator(F) - H).is_zero()
        assert (E.commutator(H) - E).is_zero()
        assert (F.commutator(H) + F).is_zero()
    with pytest.raises(HamiltonianError):
        sl2_triple(1, p=5)


def test_translation_pair_relations():
    for n in (2, 3):
        L = hamiltonian_algebra(1, (1, n), 3)
        E, F, H = sl2_triple(n)
        V, W = translation_pair(n)
        for M in (V, W):
            assert is_derivation(L, M)[0]
        assert (E.commutator(W) - V).is_zero()
        assert (F.commutator(V) - W).is_zero()
        assert (H.commutator(V) - V).is_zero()
        assert (H.commutator(W) - 2 * W).is_zero()
    with pytest.raises(HamiltonianError):
        translation_pair(1)


def _restricted_ad(r, n, c):
    return ad_restriction_from_extension(r, n, 3, c)


def _small_ad(hb, c):
    from modlie.linalg import FpMatrix
    terms = []
    for col, a in enumerate(hb.indices):
        for k, cc in hb.bracket_oracle(c, a):
            terms.append((k, col, cc))
    return FpMatrix.from_triples(hb.dim, hb.dim, terms, hb.p)


def test_named_maps_are_restricted_inner_derivations():
    # F, V, W all arise by restricting inner derivations of the enlarged
    # truncation (V and W up to an overall sign fixed by the sl2-module
    # normalization [E,W]=V, [F,V]=W)
    for n in (2, 3):
        E, F, H = sl2_triple(n)
        V, W = translation_pair(n)
        assert (F - _restricted_ad(1, (1, n), (3, 0))).is_zero()
        assert (V + _restricted_ad(1, (1, n), (0, 3 ** n))).is_zero()
        assert (W + _restricted_ad(1, (1, n), (2, 3 ** n - 1))).is_zero()


def test_d2_powers_bracket_to_inner():
    for n in (2, 3):
        L = hamiltonian_algebra(1, (1, n), 3)
        E, F, H = sl2_triple(n)
        V, W = translation_pair(n)
        hb = HamiltonianBasis(1, (1, n), 3)
        for i, P in enumerate(d2_power_maps(n), 1):
            assert is_derivation(L, P)[0]
            assert P.commutator(E).is_zero()
            assert P.commutator(F).is_zero()
            assert P.commutator(H).is_zero()
            assert (P.commutator(V)
                    + _small_ad(hb, (0, 3 ** n - 3 ** i))).is_zero()
            assert (P.commutator(W)
                    + _small_ad(hb, (2, 3 ** n - 3 ** i - 1))).is_zero()


def test_general_out_family_relations():
    for (r, n) in [(1, (2, 2)), (2, (1, 1, 1, 1)), (1, (2, 3))]:
        L = hamiltonian_algebra(r, n, 3)
        hb = HamiltonianBasis(r, n, 3)
        A, B, C, D = general_out_family(r, n)
        for M in (*A, B, C, *D.values()):
            assert is_derivation(L, M)[0]
        for Ai in A:
            assert (Ai.commutator(C) + Ai).is_zero()
        assert (B.commutator(C) - ((2 * r - 1) % 3) * B).is_zero()
        if r == 1:
            assert (A[0].commutator(A[1]) - B).is_zero()
        else:
            for i in range(r):
                ip = paired(i, r)
                c = [0] * 2 * r
                c[i], c[ip] = hb.tau[i], hb.tau[ip]
                assert (A[i].commutator(A[ip])
                        - _small_ad(hb, tuple(c))).is_zero()
        for (i, j), Dij in D.items():
            c1 = [0] * len(n)
            c1[i - 1] = hb.tau[i - 1] - 3 ** j + 1
            assert (A[i - 1].commutator(Dij)
                    + _small_ad(hb, tuple(c1))).is_zero()
            c2 = list(hb.tau)
            c2[i - 1] -= 3 ** j
            assert (B.commutator(Dij) + _small_ad(hb, tuple(c2))).is_zero()
        # A_i is the restriction of ad D_H(x_i^(p^{n_i})) from the
        # enlarged truncation
        for i in range(2 * r):
            c = [0] * 2 * r
            c[i] = 3 ** n[i]
            assert (A[i] - _restricted_ad(r, n, tuple(c))).is_zero()


def test_general_out_family_rejects_out_of_scope():
    with pytest.raises(HamiltonianError):
        general_out_family(1, (1, 2))
    with pytest.raises(HamiltonianError):
        general_out_family(1, (2, 2), p=5)


def test_grading():
    L = hamiltonian_algebra(1, (1, 2), 3)
    hb = HamiltonianBasis(1, (1, 2), 3)
    assert L.degrees == tuple(sum(a) - 2 for a in hb.indices)
    assert min(L.degrees) == -1
