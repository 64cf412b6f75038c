"""Build the algebra families in the catalog and look at their basics.

Run as: python3 demos/build_algebras.py
"""

from modlie.catalog import brown8, sl_psl
from modlie.divpow import witt_algebra
from modlie.hamiltonian import hamiltonian_algebra


def describe(L):
    ds, dims = L.derived_series()
    kind, _ = L.simplicity_probe(seed=7)
    print(f"{L.name}: dim {L.dim} over GF({L.p})")
    print(f"  derived series dims: {dims}")
    print(f"  center dim: {L.center().dim}, probe: {kind}")
    if L.degrees is not None:
        print(f"  graded, degrees {min(L.degrees)} .. {max(L.degrees)}")
    print()


def main():
    # Jacobson-Witt algebras W(m;n): derivations of a divided-power
    # truncated polynomial ring.  Simple for p > 3 or m > 1.
    describe(witt_algebra(1, (1,), 3))
    describe(witt_algebra(2, (1, 1), 3))

    # Hamiltonian algebras H(2r;n)^(2): the vector fields preserving a
    # symplectic form, second derived subalgebra.  dim = p^|n| - 2.
    describe(hamiltonian_algebra(1, (1, 1), 3))
    describe(hamiltonian_algebra(1, (2, 2), 3))

    # Classical quotient psl_3 over GF(3); isomorphic invariants to
    # H(2;(1,1))^(2) above.
    describe(sl_psl(3, 3, projective=True))

    # The 8-dimensional Brown algebra, entered from its bracket table.
    B = brown8()
    describe(B)

    # Every algebra serializes to a line-oriented text format.
    print("serialized Brown algebra:")
    print(B.serialize())


if __name__ == "__main__":
    main()
