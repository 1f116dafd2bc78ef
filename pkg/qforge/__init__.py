"""
qforge Package

Exact computations with quadratic algebras:
- Hilbert series, quadratic duals and degree-2 centers
- Clifford maps and the Clifford deformations E(theta)
- Z2-graded semisimplicity and the isolated-singularity verdict
- trivial extensions, double branched covers and periodicity witnesses

All arithmetic is exact over Q or Q(i).
"""

from .exactlinear import (
    FieldDescriptor,
    Tensor,
    Subspace,
    echelonize,
    annihilator,
    intersect,
    parse_scalar,
    format_scalar,
)

from .quadalg import (
    QuadraticPresentation,
    degree_component,
    hilbert_series,
    quadratic_dual,
    central_degree2,
    regular_upto,
    koszul_numeric_check,
)

from .clifford import (
    CliffordMap,
    HypersurfaceInput,
    overlap_space,
    clifford_condition,
    clifford_map_space,
    theta_from_central,
    center_correspondence_check,
)

from .algebra import (
    FiniteGradedAlgebra,
    check_algebra_map,
    quotient_algebra,
)

from .deform import (
    build_deformation,
    pbw_check,
    z2_components,
    frobenius_form,
    strong_grading_check,
)

from .structure import (
    jacobson_radical,
    graded_semisimple,
    even_part_algebra,
    singularity_verdict,
    hypersurface_dual_data,
    localization_corner_crosscheck,
)

from .extensions import (
    trivial_extension,
    extend_clifford_map,
    group_algebra_Z2,
    twisted_tensor,
    upsilon_iso_check,
    tilde_iso_check,
    double_branched_cover_dual,
    knorrer_corner_witness,
    knorrer_semisimple_transfer,
)

from .parsers import (
    parse_presentation,
    format_presentation,
    load_presentation,
    list_corpus,
)

from .report import (
    Report,
    emit_report,
)

from .errors import (
    QForgeError,
    InputError,
    MathematicalFailure,
)

__version__ = "1.0.0"
__author__ = "qforge"

__all__ = [
    # Linear algebra
    "FieldDescriptor",
    "Tensor",
    "Subspace",
    "echelonize",
    "annihilator",
    "intersect",
    "parse_scalar",
    "format_scalar",
    # Quadratic algebras
    "QuadraticPresentation",
    "degree_component",
    "hilbert_series",
    "quadratic_dual",
    "central_degree2",
    "regular_upto",
    "koszul_numeric_check",
    # Clifford maps
    "CliffordMap",
    "HypersurfaceInput",
    "overlap_space",
    "clifford_condition",
    "clifford_map_space",
    "theta_from_central",
    "center_correspondence_check",
    # Algebras and deformations
    "FiniteGradedAlgebra",
    "check_algebra_map",
    "quotient_algebra",
    "build_deformation",
    "pbw_check",
    "z2_components",
    "frobenius_form",
    "strong_grading_check",
    # Structure
    "jacobson_radical",
    "graded_semisimple",
    "even_part_algebra",
    "singularity_verdict",
    "hypersurface_dual_data",
    "localization_corner_crosscheck",
    # Extensions
    "trivial_extension",
    "extend_clifford_map",
    "group_algebra_Z2",
    "twisted_tensor",
    "upsilon_iso_check",
    "tilde_iso_check",
    "double_branched_cover_dual",
    "knorrer_corner_witness",
    "knorrer_semisimple_transfer",
    # Files and reports
    "parse_presentation",
    "format_presentation",
    "load_presentation",
    "list_corpus",
    "Report",
    "emit_report",
    # Errors
    "QForgeError",
    "InputError",
    "MathematicalFailure",
]
