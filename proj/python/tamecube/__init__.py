"""Smash functions, tame maps and admissible replacement on cubes."""

from ._tamecube import (
    SCHEMA_VERSION,
    CubicalComplex,
    DimensionError,
    DomainError,
    Homotopy,
    NumericalError,
    ParseError,
    PreconditionError,
    SmoothMap,
    UnknownSuite,
    admissible_replace,
    approx_retraction,
    check_admissible,
    check_tame,
    concat_homotopy,
    concat_maps,
    deformation_retraction,
    extend_tame,
    extend_to_jdelta,
    flat_exp,
    parse_map,
    run_suite,
    serialize_map,
    smash,
    smash_profile,
    smooth_step,
    smooth_step_integral,
    suite_names,
    tame_replace,
)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
