"""Exact enhanced Bruhat decomposition, Barannikov pairs and Bruhat numbers.

Works over the rationals and prime fields (and over the integers for the
torsion checks), with a move calculus for one-parameter families of
filtered complexes.
"""
from .complex import (
    BData,
    FilteredComplex,
    GradedUnitriangular,
    HomologyEnhancement,
    barannikov_basis,
    bdata,
    change_basis,
    homology_enhancement,
    induced_map_rook,
    poincare_dual,
    rel_dims,
    slice_bdata,
    slice_complex,
    upside_down,
    validate,
)
from .enhanced_linear import (
    Enhancement,
    RookMatrix,
    UnitriangularPair,
    cell_membership,
    height_and_coeff,
    induced_enhancement,
    rook_reduce,
)
from .integral import (
    check_pair_torsion_formula,
    check_pm1_equivalence,
    short_pair_check,
    smith_normal_form,
    torsion_order,
)
from .linalg import Matrix
from .paths import (
    Birth,
    Death,
    Negate,
    Slide,
    Swap,
    apply_move,
    classify_swap,
    realize,
    simulate,
    verify_akh,
)
from .scalars import GF, QQ, ZZ, Fp, SubgroupSpec, canonicalize, parse_field, subgroup_member
from .torsion import bdata_equal_mod_subgroup, milnor_torsion, perm_sigma, tau, tau_prime

__version__ = "0.1.0"
