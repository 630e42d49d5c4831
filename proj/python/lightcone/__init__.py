"""Light-cone model of conformal geometry: Weingarten families and Guichard nets."""

from ._core import (
    BonnetReport,
    DomainError,
    Error,
    ExcludedCaseError,
    InfinityBoundaryError,
    PrincipalCurvatures,
    SingularNetError,
    SurfaceKind,
    SynthesizedNet,
    TorusType,
    UsageError,
    WeingartenFamily,
    branch_cross_ratio,
    case_invariant,
    classify,
    distance,
    family_coeffs,
    geodesic_point,
    origin_point,
    principal_curvatures_at,
    synthesize_net,
    torus_type,
)

__all__ = [name for name in dir() if not name.startswith("_")]
