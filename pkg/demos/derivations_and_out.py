"""Compute Der(g), Inn(g) and Out(g) = Der(g)/Inn(g) exactly.

The headline phenomenon: simple modular Lie algebras whose outer
derivation algebra is *solvable*, which cannot happen in
characteristic zero.

Run as: python3 demos/derivations_and_out.py
"""

from modlie.catalog import brown8, sl_psl
from modlie.derout import derivation_algebra, outer_algebra, zassenhaus_report
from modlie.hamiltonian import hamiltonian_algebra


def analyze(L):
    D = derivation_algebra(L)
    O = outer_algebra(D)
    print(f"{L.name}: dim g = {L.dim}, dim Der = {D.dim}, "
          f"dim Inn = {D.inn.dim}, dim Out = {O.dim}")
    ol = O.as_lie()
    if ol is None:
        print("  all derivations are inner")
    else:
        _, dims = ol.derived_series()
        solvable, length = ol.is_solvable()
        print(f"  Out derived series {dims}, solvable: {solvable}"
              + (f" (length {length})" if solvable else ""))
    print()
    return D, O


def main():
    # For psl_3 the outer derivations form another simple algebra.
    analyze(sl_psl(3, 3, projective=True))

    # For the Brown algebra, Out is a 2-dimensional torus.
    analyze(brown8())

    # The Hamiltonian series at p = 3: as n grows, Out(H(2;n)^(2))
    # switches from simple-ish to solvable.
    analyze(hamiltonian_algebra(1, (1, 2), 3))
    analyze(hamiltonian_algebra(1, (2, 2), 3))
    analyze(hamiltonian_algebra(2, (1, 1, 1, 1), 3))

    # zassenhaus_report bundles the whole pipeline into one record with
    # telemetry, suitable for JSON output (see the command line tool).
    rep = zassenhaus_report(hamiltonian_algebra(1, (2, 2), 3),
                            family="H2", params={"r": 1, "n": (2, 2)})
    print("report:", rep.dims, rep.out_derived_series,
          "solvable" if rep.solvable else "not solvable",
          f"in {rep.telemetry['seconds']:.2f}s")


if __name__ == "__main__":
    main()
