"""Three-dimensional one-orbit cyclic subspace codes over finite field towers."""

from .census import CensusReport, census
from .classify import (
    EquivWitness,
    FamilyLabel,
    class_key,
    classify3,
    equivalent,
    equivalent_famIV_fast,
    equivalent_poly_fast,
    find_poly_basis,
)
from .errors import (
    CapExceededError,
    MixedTowerError,
    NonPrimeError,
    NotPrimitiveError,
    OrbcodesError,
    OrbitError,
    PreconditionError,
    ValidationError,
)
from .gf import FieldAut, FieldTower, Felt, build_tower, element_arith
from .orbit import (
    OrbitCode,
    canonical_orbit_rep,
    distance_distribution,
    min_distance,
    orbit_size,
)
from .subspace import (
    InvariantProfile,
    Subspace,
    aut_image,
    contains,
    delta_t,
    distance,
    hyperplane_scalar,
    is_sidon,
    lattice,
    linearity_field,
    profile,
    scale,
    span,
    square_span,
    w_t,
)
from .vform import (
    CpszWitness,
    QPoly,
    TraceClass,
    USpace,
    VForm,
    VKind,
    XqClass,
    build_v,
    classify_v,
    cpsz_equivalent,
    decompose,
    find_complement_line,
    interpolate_qpoly,
    sidon_v,
    weight_spectrum,
)

__version__ = "0.1.0"
