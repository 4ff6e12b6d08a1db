"""Exact characters and K-multiplicities of quantizations from torus fixed-point data."""

from .charring import FormalCharacter, decompose_into_k, exact_divide, freudenthal_multiplicities, weyl_character
from .errors import InconsistencyError, InputError, WeylQuantError
from .fixedpoint import FixedPoint, FixedPointSet, coadjoint_fixture, ingest
from .multiplicity import (
    gp_diff_table,
    guillemin_prato_variant,
    kostant_branching,
    multiplicity_spectrum,
    multiplicity_theorem,
    partition_count,
)
from .quantize import gkrs_multiplet, lie_algebra_form, localization_character, main_formula_character
from .rootsys import RootSystem, SubgroupPair, build_root_system, make_pair

__version__ = "0.1.0"

__all__ = [
    "FixedPoint",
    "FixedPointSet",
    "FormalCharacter",
    "InconsistencyError",
    "InputError",
    "RootSystem",
    "SubgroupPair",
    "WeylQuantError",
    "build_root_system",
    "coadjoint_fixture",
    "decompose_into_k",
    "exact_divide",
    "freudenthal_multiplicities",
    "gkrs_multiplet",
    "gp_diff_table",
    "guillemin_prato_variant",
    "ingest",
    "kostant_branching",
    "lie_algebra_form",
    "localization_character",
    "main_formula_character",
    "make_pair",
    "multiplicity_spectrum",
    "multiplicity_theorem",
    "partition_count",
    "weyl_character",
]
