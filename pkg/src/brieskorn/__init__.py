"""Cylindrical contact homology of Brieskorn 3-manifolds of hyperbolic type.

The package splits into an exact combinatorial pipeline (validated
exponents -> Seifert invariants -> graded orbit complexes -> rational
homology -> closed-form cross-check) and a numerical laboratory that
verifies the hyperbolic-geometric and dynamical inputs behind it
(invariant contact form and frame, polygon reflection groups and their
lifted relations, linearized return-map rotation).
"""

from .closedform import (
    ClosedFormAnswer,
    ComparisonReport,
    chain_homology,
    closed_form_answer,
    closed_form_homology,
    compare_graded,
    required_classes,
)
from .errors import (
    BrieskornError,
    DegenerateInput,
    IncompleteWindow,
    InconsistentComplex,
    InvalidExponent,
    NondegeneracyFailure,
    NotHyperbolic,
    RelationFailure,
)
from .dynamics import (
    CallablePerturbation,
    LinearizedReturn,
    LocalModel,
    hamiltonian_field,
    integrate_monodromy,
    linearized_return_map,
)
from .halfplane import (
    LiftedIsometry,
    MobiusElement,
    UpperHalfPoint,
    automorphic_modulus,
    contact_invariance_residual,
    frame_at,
    frame_invariance_residual,
    mobius_apply,
)
from .homology import (
    GradedDims,
    PoincareSeries,
    RationalMatrix,
    euler_characteristic,
    graded_homology,
    poincare_series,
)
from .invariants import BrieskornParams, SeifertData, seifert_data, validate_params
from .orbits import (
    GradedComplex,
    MorseModel,
    OrbitGenerator,
    build_complex,
    build_morse_model,
    conley_zehnder,
    enumerate_generators,
    fredholm_index,
    orbit_type,
)
from .polygon import (
    PolygonGroup,
    build_polygon_group,
    check_relations,
    expected_area,
    measured_area,
    measured_interior_angles,
)

__version__ = "0.1.0"

__all__ = [
    "BrieskornError",
    "BrieskornParams",
    "CallablePerturbation",
    "ClosedFormAnswer",
    "ComparisonReport",
    "DegenerateInput",
    "GradedComplex",
    "GradedDims",
    "IncompleteWindow",
    "InconsistentComplex",
    "InvalidExponent",
    "LiftedIsometry",
    "LinearizedReturn",
    "LocalModel",
    "MobiusElement",
    "MorseModel",
    "NondegeneracyFailure",
    "NotHyperbolic",
    "OrbitGenerator",
    "PoincareSeries",
    "PolygonGroup",
    "RationalMatrix",
    "RelationFailure",
    "SeifertData",
    "UpperHalfPoint",
    "automorphic_modulus",
    "build_complex",
    "build_morse_model",
    "build_polygon_group",
    "chain_homology",
    "check_relations",
    "closed_form_answer",
    "closed_form_homology",
    "compare_graded",
    "conley_zehnder",
    "contact_invariance_residual",
    "enumerate_generators",
    "euler_characteristic",
    "expected_area",
    "frame_at",
    "frame_invariance_residual",
    "fredholm_index",
    "graded_homology",
    "hamiltonian_field",
    "integrate_monodromy",
    "linearized_return_map",
    "measured_area",
    "measured_interior_angles",
    "mobius_apply",
    "orbit_type",
    "poincare_series",
    "required_classes",
    "seifert_data",
    "validate_params",
]
