"""Exhibit explicit outer derivations of H(2;(1,n))^(2) at p = 3.

The point of naming them: Out(H(2;(1,n))^(2)) is generated by an sl2
triple (E, F, H), a 2-dimensional module (V, W), and the images of the
divided powers of d2 -- so Out is visibly *not* solvable here, while
the general family (A_i, B, C, D_ij) for larger n spans a solvable Out.

Run as: python3 demos/named_generators.py
"""

import numpy as np

from modlie.derout import derivation_algebra, is_derivation, outer_algebra
from modlie.hamiltonian import (d2_power_maps, general_out_family,
                                hamiltonian_algebra, sl2_triple,
                                translation_pair)
from modlie.linalg import Subspace


def main():
    n = 2
    L = hamiltonian_algebra(1, (1, n), 3)
    D = derivation_algebra(L)
    O = outer_algebra(D)
    print(f"{L.name}: dim Der = {D.dim} = 3^{n + 1} + {n} + 2, "
          f"dim Out = {O.dim} = {n} + 4")

    E, F, H = sl2_triple(n)
    V, W = translation_pair(n)
    powers = d2_power_maps(n)
    named = {"E": E, "F": F, "H": H, "V": V, "W": W}
    for i, P in enumerate(powers, 1):
        named[f"d2^(3^{i})"] = P

    for label, M in named.items():
        ok, _ = is_derivation(L, M)
        inner = D.inn.contains(D.coordinates(M))
        print(f"  {label}: derivation={ok}, inner={inner}")

    print("  sl2 relations: [E,F]=H, [E,H]=E, [F,H]=-F:",
          (E.commutator(F) - H).is_zero(),
          (E.commutator(H) - E).is_zero(),
          (F.commutator(H) + F).is_zero())
    print("  module relations: [E,W]=V, [F,V]=W:",
          (E.commutator(W) - V).is_zero(),
          (F.commutator(V) - W).is_zero())

    imgs = np.array([O.project(M) for M in named.values()])
    rank = Subspace.span(imgs, O.dim, 3).dim
    print(f"  images span Out: rank {rank} of {O.dim}")
    print()

    # The solvable side: H(4;(1,1,1,1))^(2) with the general family.
    r, nn = 2, (1, 1, 1, 1)
    L2 = hamiltonian_algebra(r, nn, 3)
    O2 = outer_algebra(derivation_algebra(L2))
    A, B, C, _ = general_out_family(r, nn)
    print(f"{L2.name}: dim Out = {O2.dim} = |n| + 2")
    print("  [A_i,C] = -A_i for all i:",
          all((Ai.commutator(C) + Ai).is_zero() for Ai in A))
    print("  [B,C] = (2r-1) B:",
          (B.commutator(C) - ((2 * r - 1) % 3) * B).is_zero())
    solvable, length = O2.as_lie().is_solvable()
    print(f"  Out solvable: {solvable}, derived length {length}")


if __name__ == "__main__":
    main()
