"""Commensurability, covers, cubulations and tilings for surface amalgams."""

from .core import (
    Amalgam,
    CurveSpec,
    Surface,
    amalgam,
    amalgam_from_json,
    amalgam_to_json,
    cut_along,
    euler_characteristic,
    euler_of_amalgam,
    topological_type,
    validate,
)
from .classify import (
    CoxeterParams,
    SubclassLabel,
    commensurable,
    commensurable_types,
    cover_index,
    coxeter_params,
    cp_commensurable,
    curve_specs,
    enumerate_amalgams,
    maximal_elements,
    normalize,
    quadruple,
    subclass,
    theta_graph_params,
)
from .covers import (
    GraphCover,
    boundary_components,
    boundary_word,
    build_odd_cover,
    common_cover,
    equal_euler_covers,
    first_return,
    verify_cover,
    word_action,
)

__version__ = "0.1.0"
