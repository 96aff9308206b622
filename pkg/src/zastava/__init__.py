"""Exact characters of twisted zastava spaces and q-Whittaker functions."""
from .charalg import (
    SlotCoefficient,
    WeightedPresentation,
    assign_weight,
    graded_hilbert_function,
    hypersurface_series,
    load_fixture,
)
from .demazure import (
    build_affine,
    demazure_character,
    global_weyl_character,
    normalize_character,
    translation_word,
    weyl_character_finite,
)
from .exactalg import LaurentPoly, RationalCharacter, rc_equal, series_expand
from .jfun import check_theorem_main, compute_J, q_pochhammer
from .rootdata import FoldingDatum, a_map, build_folding
from .toda import eigencheck, lattice_apply, load_operator, parse_operator, solve_whittaker

__version__ = "0.1.0"

__all__ = [
    "FoldingDatum",
    "LaurentPoly",
    "RationalCharacter",
    "SlotCoefficient",
    "WeightedPresentation",
    "a_map",
    "assign_weight",
    "build_affine",
    "build_folding",
    "check_theorem_main",
    "compute_J",
    "demazure_character",
    "eigencheck",
    "global_weyl_character",
    "graded_hilbert_function",
    "hypersurface_series",
    "lattice_apply",
    "load_fixture",
    "load_operator",
    "normalize_character",
    "parse_operator",
    "q_pochhammer",
    "rc_equal",
    "series_expand",
    "solve_whittaker",
    "translation_word",
    "weyl_character_finite",
]
