"""Exact solvers and an executable checker for Persuasion and its reduction from Exact Cover."""
from .core import (
    Event,
    Observation,
    ObservationProfile,
    PersuasionInstance,
    ProbabilitySpace,
    Rational,
    Violation,
    WorldSet,
    event_mass,
    intersect,
    is_solution,
    make_space,
    posterior,
    rational,
    validate_space,
)
from .errors import (
    AssumptionViolated,
    CapExceeded,
    InvalidECI,
    InvalidInstance,
    InvalidRational,
    NotStrongInstance,
    ParseError,
    PersuasionError,
    UndefinedPosterior,
)
from .reduction import (
    ReductionArtifact,
    VerificationReport,
    WorldRole,
    back_map,
    forward_map,
    profile,
    reduce,
    verify_reduction,
)
from .solvers import (
    CoverVerdict,
    ExactCoverInstance,
    PersuasionVerdict,
    brute_force_persuasion,
    exact_cover_brute,
    exact_cover_dlx,
    intersection_within_goal,
    strong_persuasion_general,
    strong_persuasion_standard,
    verify_cover,
)

__version__ = "0.1.0"
