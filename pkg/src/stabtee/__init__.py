"""Exact entanglement and boundary analysis for 2D translation-invariant stabilizer codes."""

from .boundary import (
    BGOReport,
    BoundaryError,
    HalfPlaneContext,
    bgo_report,
    bulk_stabilizer_basis,
    classify_bgo,
    half_plane_group_generators,
    is_boundary_gauge,
    secondary_bgo_dimension,
    solve_trivial_anyon,
    verify_height_bound,
)
from .codes import (
    CodeSpec,
    CodeValidationError,
    builtin_names,
    get_code,
    load_code,
    packaged_code_names,
    resolve_code,
    save_code,
    validate,
)
from .entropy import (
    BufferPolicy,
    ConvergenceError,
    EntropyValue,
    cylinder_entropy,
    entropy_region,
    levin_wen_gamma,
    log_group_size,
    scan_cylinder,
    stee,
    torus_logical_dimension,
)
from .groebner import (
    GroebnerBasis,
    TermOrder,
    TermOrderError,
    buchberger,
    check_degree_bound,
    membership,
    module_degree_bound,
    reduce_vector,
)
from .lattice import Geometry, Partition, Region, concave_partition, rectangular_partition
from .laurent import LaurentPoly, Monomial, parse_poly
from .pauli import PauliVector, SyndromeVector, compose, pairing_poly, syndrome

__version__ = "0.1.0"

__all__ = [
    "BGOReport",
    "BoundaryError",
    "BufferPolicy",
    "CodeSpec",
    "CodeValidationError",
    "ConvergenceError",
    "EntropyValue",
    "Geometry",
    "GroebnerBasis",
    "HalfPlaneContext",
    "LaurentPoly",
    "Monomial",
    "Partition",
    "PauliVector",
    "Region",
    "SyndromeVector",
    "TermOrder",
    "TermOrderError",
    "bgo_report",
    "buchberger",
    "builtin_names",
    "bulk_stabilizer_basis",
    "classify_bgo",
    "compose",
    "concave_partition",
    "cylinder_entropy",
    "entropy_region",
    "get_code",
    "half_plane_group_generators",
    "is_boundary_gauge",
    "levin_wen_gamma",
    "check_degree_bound",
    "load_code",
    "log_group_size",
    "membership",
    "module_degree_bound",
    "packaged_code_names",
    "reduce_vector",
    "pairing_poly",
    "parse_poly",
    "rectangular_partition",
    "resolve_code",
    "save_code",
    "scan_cylinder",
    "secondary_bgo_dimension",
    "solve_trivial_anyon",
    "stee",
    "syndrome",
    "torus_logical_dimension",
    "validate",
    "verify_height_bound",
]
