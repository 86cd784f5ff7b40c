"""Geometric-algebra paraxial ray optics with Poisson bracket diagnostics."""

from .brackets import (
    BracketReport,
    anticommutator_numeric,
    commutator_numeric,
    distance_height_brackets,
    height_angle_brackets,
)
from .cliffor import E1, E2, E3, I, Cliffor, Vector3, cross, dagger, dot, geometric_product, grade, hodge_dual, wedge
from .complex_phase import ComplexVector, GradeParts, phase_area_and_angle, product_parts, product_parts_dagger
from .errors import (
    DeterminantViolation,
    DslSyntaxError,
    GradeOutOfRange,
    ImageAtInfinity,
    RayBracketError,
    StencilNearSingularity,
)
from .imaging import (
    BoxMatrix,
    ImagingSolution,
    MagnificationPartials,
    elements_from_box,
    image_distance,
    image_height,
    magnification_partials,
    solve_imaging,
)
from .paraxial import HeightAngleRay, SystemMatrix, apply, compose, differentials, make_propagation, make_system
from .quads import (
    PhaseQuad,
    QuadReport,
    image_quad_distance_height,
    image_quad_height_angle,
    object_rect_distance_height,
    object_rect_height_angle,
    quad_report_distance_height,
    quad_report_height_angle,
)

__version__ = "0.1.0"
