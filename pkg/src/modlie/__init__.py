"""modlie: exact computations with simple modular Lie algebras over GF(p).

Construct Witt and Hamiltonian algebras of Cartan type, sl/psl, Brown's
Br_8; compute derivation algebras, inner derivations, and the outer
derivation algebra Out(g) = Der(g)/Inn(g) with exact GF(p) arithmetic.
"""

from .linalg import (FpError, DimensionMismatch, ContainmentError, FpMatrix,
                     Subspace, StreamingEchelon, field_arith, lucas_binom,
                     matmul_mod, nullspace, nullspace_streaming, rref)
from .liealg import (DegenerateQuotient, LieAlgebraError, LieAlgebraFp,
                     abelian_algebra, heisenberg)
from .divpow import MultiIndex, WittElement, witt_algebra
from .hamiltonian import (HamiltonianBasis, d_h, f_coeff, hamiltonian_algebra,
                          sl2_triple, translation_pair, d2_power_maps,
                          general_out_family)
from .catalog import (InvariantProfile, brown8, compare, invariant_profile,
                      model_out_algebra, quotient_by_center, sl_algebra,
                      sl_psl)
from .derout import (DerivationAlgebra, OutAlgebra, OutReport, ResourceGuard,
                     ResourceExceeded, derivation_algebra, inner_derivations,
                     is_derivation, outer_algebra, zassenhaus_report)
from .families import build_family

__version__ = "0.1.0"
