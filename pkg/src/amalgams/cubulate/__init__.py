from .systems import (
    CurveSystem,
    SystemReport,
    curve_system_from_json,
    curve_system_to_json,
    pullback_double_cover,
    validate_curve_system,
)
from .complexes import (
    GlueReport,
    SpecialnessReport,
    SquareComplex,
    barycentric_subdivide,
    check_link_condition,
    check_special,
    complex_specialness,
    double_complex,
    dual_square_complex,
    glue_complexes,
    hyperplane_classes,
    subdivided_curve_path,
)
from .isomorphism import canonical_form, curve_systems_isomorphic, square_complexes_isomorphic
from . import fixtures
