"""Numerical analytic continuation of holomorphic germs along paths in the
punctured plane, with an exact logarithmic-lift oracle, a conformal model of
a staircase domain carrying a lacunary natural boundary, and end-to-end
verification harnesses for the resulting covering-surface phenomena."""

from .confmap import (
    ConformalMap,
    FRefresh,
    build_map,
    f_germ_at_base,
    psi_eval,
    quality_report,
)
from .engine import (
    BASE_POINT,
    ContinuationChain,
    CrosscheckReport,
    EngineOptions,
    OracleVerdict,
    continuable_exact,
    continue_along,
    crosscheck,
    lift_at,
    overlap_disagreement,
)
from .errors import (
    BadTruncation,
    CenterMismatch,
    CompositionOutOfRange,
    DegenerateBoundary,
    EmptyPath,
    LogstairError,
    NotOnSlit,
    OutsideDisc,
    OutsideDomain,
    RoutingFailure,
    SegmentThroughOrigin,
    StepTooLarge,
    TooFewCoefficients,
    WrongBasePoint,
    ZeroCenter,
)
from .monodromy import (
    ClassificationReport,
    ExpExpReport,
    TruthTable,
    classify,
    expexp_demo,
    reach_path,
    truth_table,
)
from .paths import LogLift, PathPolyline, lift_log, validate_path, winding_number
from .series import (
    DEFAULT_ORDER,
    Germ,
    compose,
    estimate_radius,
    eval_h,
    h_germ,
    log_germ,
    recenter,
)
from .staircase import (
    Truncation,
    boundary_distance,
    choose_lift_target,
    in_interior,
    slit_contains,
)

__version__ = "0.1.0"

__all__ = [
    "BASE_POINT",
    "BadTruncation",
    "CenterMismatch",
    "ClassificationReport",
    "CompositionOutOfRange",
    "ConformalMap",
    "ContinuationChain",
    "CrosscheckReport",
    "DEFAULT_ORDER",
    "DegenerateBoundary",
    "EmptyPath",
    "EngineOptions",
    "ExpExpReport",
    "FRefresh",
    "Germ",
    "LogLift",
    "LogstairError",
    "NotOnSlit",
    "OracleVerdict",
    "OutsideDisc",
    "OutsideDomain",
    "PathPolyline",
    "RoutingFailure",
    "SegmentThroughOrigin",
    "StepTooLarge",
    "TooFewCoefficients",
    "TruthTable",
    "Truncation",
    "WrongBasePoint",
    "ZeroCenter",
    "boundary_distance",
    "build_map",
    "choose_lift_target",
    "classify",
    "compose",
    "continuable_exact",
    "continue_along",
    "crosscheck",
    "estimate_radius",
    "eval_h",
    "expexp_demo",
    "f_germ_at_base",
    "h_germ",
    "in_interior",
    "lift_at",
    "lift_log",
    "log_germ",
    "overlap_disagreement",
    "psi_eval",
    "quality_report",
    "reach_path",
    "recenter",
    "slit_contains",
    "truth_table",
    "validate_path",
    "winding_number",
]
