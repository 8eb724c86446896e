"""Exact (list-)coloring of graphs that are a few vertices away from a simple class."""
from .errors import InvalidInputError, ModColorError, ResourceLimitError
from .graph import ClassTag, Graph, Modulator, is_member, verify_modulator
from .nocert import build_certificate_set, solve_nocert
from .oracle import ListAssignment, brute_force_list_color, chromatic_number_ie
from .reductions import CnfFormula, join_paths, reduce_3sat, reduce_ssat
from .treedepth import exact_treedepth, mark_no_certificate
from .vc import solve_vc

__version__ = "0.1.0"

__all__ = [
    "ClassTag", "CnfFormula", "Graph", "InvalidInputError", "ListAssignment", "ModColorError",
    "Modulator", "ResourceLimitError", "brute_force_list_color", "build_certificate_set",
    "chromatic_number_ie", "exact_treedepth", "is_member", "join_paths", "mark_no_certificate",
    "reduce_3sat", "reduce_ssat", "solve_nocert", "solve_vc", "verify_modulator",
]
