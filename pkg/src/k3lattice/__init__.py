"""Exact integer-lattice tools for finite-order isometries of K3-type lattices.

Everything is computed with Python integers and fractions; nothing here
rounds. The submodules are usable on their own, and the names most callers
need are re-exported below.
"""

from .cusps import (NONE_WITHIN_BOUND, CuspReport, IsotropicSublattice, classify_cusp,
                    find_isotropic_vector, scan_cusps)
from .discriminant import discriminant_form, two_elementary_fingerprint
from .isometry import (Isometry, IsometryError, commutes_with, eigenlattice_decomposition,
                       fixed_lattice, hermitian_module, hermitian_signature,
                       order_feasible_for_k3, signature_condition_check, verify_isometry)
from .lattice import (DegenerateLatticeError, Lattice, LatticeError, Sublattice, build_standard,
                      determinant, direct_sum, orthogonal_complement, quotient_lattice, rescale,
                      saturate, signature)
from .monodromy import (KulikovData, MonodromyError, kulikov_counts, kulikov_type,
                        monodromy_exp_log, monodromy_lattice_J, picard_lefschetz_N)
from .roots import (divisibility, enumerate_norm_vectors, is_root, reflect,
                    root_orbit_invariant)
from .semifan import (GroupData, SemifanBallCase, SemifanError, SemifanTypeIVCase,
                      check_invariance_ball, check_invariance_fan, compatibility_along,
                      pullback_semifan)

__version__ = "0.1.0"

__all__ = [
    "NONE_WITHIN_BOUND", "CuspReport", "IsotropicSublattice", "classify_cusp",
    "find_isotropic_vector", "scan_cusps",
    "discriminant_form", "two_elementary_fingerprint",
    "Isometry", "IsometryError", "commutes_with", "eigenlattice_decomposition", "fixed_lattice",
    "hermitian_module", "hermitian_signature", "order_feasible_for_k3",
    "signature_condition_check", "verify_isometry",
    "DegenerateLatticeError", "Lattice", "LatticeError", "Sublattice", "build_standard",
    "determinant", "direct_sum", "orthogonal_complement", "quotient_lattice", "rescale",
    "saturate", "signature",
    "KulikovData", "MonodromyError", "kulikov_counts", "kulikov_type", "monodromy_exp_log",
    "monodromy_lattice_J", "picard_lefschetz_N",
    "divisibility", "enumerate_norm_vectors", "is_root", "reflect", "root_orbit_invariant",
    "GroupData", "SemifanBallCase", "SemifanError", "SemifanTypeIVCase",
    "check_invariance_ball", "check_invariance_fan", "compatibility_along", "pullback_semifan",
]
