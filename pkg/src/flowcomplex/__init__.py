"""Symbolic flow complexes on compact surfaces.

Represents continuous surface flows as finite complexes of singular sets,
orbit classes, families and accumulation schemas; computes extended orbits
as closure fixpoints over saddles (and generalized ones over isolated
saddle sets); and decides the property hierarchy extended R-closed =>
extended pointwise almost periodic => extended recurrent => non-wandering,
together with a verification harness for the structural facts relating
them.
"""

from .model import (
    AccumulationSchema,
    Family,
    FamilyKind,
    FlowComplex,
    FlowComplexError,
    LimitRef,
    OrbitClass,
    OrbitKind,
    Partition,
    PointKind,
    PreconditionError,
    RefKind,
    SaddleSetDecl,
    SchemaKind,
    Shape,
    SingularSet,
    SurfaceInfo,
    UnknownIdError,
    ValidationReport,
    Violation,
    closure_of,
    partition_orbits,
    validate,
)
from .orbits import (
    CycleSide,
    Direction,
    ExtendedOrbitSet,
    InvalidSaddleSetError,
    LimitCycle,
    extended_limit_cycles,
    extended_orbit,
    generalized_extended_orbit,
    generalized_saddle_sets,
    is_extended_periodic,
    is_isolated,
    is_saddle_set,
    orbit_set_closure,
    orbit_set_is_closed,
    stable_set,
    unstable_set,
    validate_isolated_saddle_set,
)
from .classify import (
    ClassificationReport,
    Classifier,
    DichotomyCase,
    Verdict,
    Witness,
    classification_report,
    dichotomy_check,
    is_extended_center,
    is_extended_negatively_recurrent,
    is_extended_pap,
    is_extended_positively_recurrent,
    is_extended_r_closed,
    is_extended_recurrent,
    is_generalized_recurrent,
    is_negatively_recurrent,
    is_nonwandering,
    is_positively_recurrent,
    is_recurrent,
    is_regular,
)
from .theorems import (
    THEOREM_NAMES,
    TheoremResult,
    TheoremStatus,
    has_finitely_many_singularities,
    is_non_identical,
    verify_theorems,
)
from .gallery import GALLERY, GalleryEntry, GalleryError, build, gallery_names
from .randomgen import SizeParams, random_complex
from .textio import ParseError, ParseErrors, emit, parse
from .dot import export_dot

__version__ = "0.1.0"

__all__ = [
    "AccumulationSchema",
    "ClassificationReport",
    "Classifier",
    "CycleSide",
    "DichotomyCase",
    "Direction",
    "ExtendedOrbitSet",
    "Family",
    "FamilyKind",
    "FlowComplex",
    "FlowComplexError",
    "GALLERY",
    "GalleryEntry",
    "GalleryError",
    "InvalidSaddleSetError",
    "LimitCycle",
    "LimitRef",
    "OrbitClass",
    "OrbitKind",
    "ParseError",
    "ParseErrors",
    "Partition",
    "PointKind",
    "PreconditionError",
    "RefKind",
    "SaddleSetDecl",
    "SchemaKind",
    "Shape",
    "SingularSet",
    "SizeParams",
    "SurfaceInfo",
    "THEOREM_NAMES",
    "TheoremResult",
    "TheoremStatus",
    "UnknownIdError",
    "ValidationReport",
    "Verdict",
    "Violation",
    "Witness",
    "build",
    "classification_report",
    "closure_of",
    "dichotomy_check",
    "emit",
    "export_dot",
    "extended_limit_cycles",
    "extended_orbit",
    "gallery_names",
    "generalized_extended_orbit",
    "generalized_saddle_sets",
    "has_finitely_many_singularities",
    "is_extended_center",
    "is_extended_negatively_recurrent",
    "is_extended_pap",
    "is_extended_periodic",
    "is_extended_positively_recurrent",
    "is_extended_r_closed",
    "is_extended_recurrent",
    "is_generalized_recurrent",
    "is_isolated",
    "is_negatively_recurrent",
    "is_non_identical",
    "is_nonwandering",
    "is_positively_recurrent",
    "is_recurrent",
    "is_regular",
    "is_saddle_set",
    "orbit_set_closure",
    "orbit_set_is_closed",
    "parse",
    "partition_orbits",
    "random_complex",
    "stable_set",
    "unstable_set",
    "validate",
    "validate_isolated_saddle_set",
    "verify_theorems",
]
