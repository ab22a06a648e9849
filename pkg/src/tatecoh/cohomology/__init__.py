"""Group cohomology of finite groups on finitely generated modules.

bar      normalized bar-resolution cochains, cup products, transfer
tate     Tate groups in degrees >= -2 and the comparison maps
fpgroup  group extensions by a cocycle and presentation-level H^1
"""

from .bar import (
    BarComplex,
    BilinearPairing,
    CohomologyGroup,
    TwoCocycle,
    cohomology,
    corestrict_cochain,
    cup_product,
    group_tuples,
    inflate_cochain,
    restrict_cochain,
)
from .fpgroup import (
    ExtensionGroup,
    FormationTwist,
    FpCohomologyGroup,
    SubExtension,
    WModelFrobenius,
    cor_hom_level,
    frobenius_endo_on_h1,
    h1_fp_group,
    transfer,
)
from .tate import (
    ClassFormationReport,
    DimensionShiftMaps,
    FormationCell,
    TateCohomology,
    aug_ideal_module,
    corestriction_class,
    descend_module,
    dimension_shift_maps,
    inflation_class,
    nakayama_delta,
    restriction_class,
    tate_cohomology,
    transgression,
    verify_class_formation,
)

__all__ = [
    "BarComplex",
    "BilinearPairing",
    "ClassFormationReport",
    "CohomologyGroup",
    "DimensionShiftMaps",
    "ExtensionGroup",
    "FormationCell",
    "FormationTwist",
    "FpCohomologyGroup",
    "SubExtension",
    "TateCohomology",
    "TwoCocycle",
    "WModelFrobenius",
    "aug_ideal_module",
    "cohomology",
    "cor_hom_level",
    "corestrict_cochain",
    "corestriction_class",
    "cup_product",
    "descend_module",
    "dimension_shift_maps",
    "frobenius_endo_on_h1",
    "group_tuples",
    "h1_fp_group",
    "inflate_cochain",
    "inflation_class",
    "nakayama_delta",
    "restrict_cochain",
    "restriction_class",
    "tate_cohomology",
    "transfer",
    "transgression",
    "verify_class_formation",
]
