"""Exact computational tools for branching laws, Littelmann path crystals,
and spherical Hecke algebra structure constants, with a verification harness
for the identities tying them together."""

from .errors import ConfigurationError, DomainError, FeasibilityError
from .rootdata import (
    RootDatum,
    SubsystemView,
    dual_star,
    k_phi,
    leq_dominance,
    levi_view,
    pairing,
    parse_coweight,
    rho_height,
    root_datum,
    weyl_dim,
    weyl_orbit,
)
from .characters import (
    branch_decompose,
    branch_multiplicity,
    dominant_weights,
    module_dimension,
    tensor_decompose,
    tensor_multiplicity,
    weight_table,
)
from .parabolic import (
    geq_parabolic,
    hull_conditions,
    hull_vertices,
    minimal_offset,
    nilradical_roots,
    offset_pair,
)
from .littelmann import (
    count_branch_paths,
    count_tensor_paths,
    e_op,
    endpoint_weight,
    f_op,
    generate_crystal,
    is_hecke_path,
    straight_path,
)
from .hecke import (
    LaurentPoly,
    constant_term,
    hall_littlewood,
    hecke_product,
    orbit_size,
    product_identity_sides,
    satake_expand,
    satake_f,
    verify_product_identity,
)
from .harness import CHECK_NAMES, SweepConfig, enumerate_instances, run_sweep

__version__ = "0.1.0"

__all__ = [
    "CHECK_NAMES",
    "ConfigurationError",
    "DomainError",
    "FeasibilityError",
    "LaurentPoly",
    "RootDatum",
    "SubsystemView",
    "SweepConfig",
    "branch_decompose",
    "branch_multiplicity",
    "constant_term",
    "count_branch_paths",
    "count_tensor_paths",
    "dominant_weights",
    "dual_star",
    "e_op",
    "endpoint_weight",
    "enumerate_instances",
    "f_op",
    "generate_crystal",
    "geq_parabolic",
    "hall_littlewood",
    "hecke_product",
    "hull_conditions",
    "hull_vertices",
    "is_hecke_path",
    "k_phi",
    "leq_dominance",
    "levi_view",
    "minimal_offset",
    "module_dimension",
    "nilradical_roots",
    "offset_pair",
    "orbit_size",
    "pairing",
    "parse_coweight",
    "product_identity_sides",
    "rho_height",
    "root_datum",
    "run_sweep",
    "satake_expand",
    "satake_f",
    "straight_path",
    "tensor_decompose",
    "tensor_multiplicity",
    "verify_product_identity",
    "weight_table",
    "weyl_dim",
    "weyl_orbit",
]
