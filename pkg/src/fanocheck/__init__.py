"""Exact verification toolkit: Frobenius splitting verdicts, Witt carries,
Groebner smoothness certificates, integer intersection numbers and del Pezzo
lattice counts."""

from .poly import (
    AlgebraError,
    ExponentOverflowError,
    NonHomogeneousError,
    ParseError,
    Polynomial,
    Prime,
    VariableSet,
    ZeroPolynomialError,
    delta1,
    parse_poly,
    poly_mul,
    poly_pow,
    pow_mod_frobenius,
    weighted_degree,
)
from .ideals import (
    GroebnerBasis,
    MonomialIdeal,
    PolyIdeal,
    buchberger,
    frobenius_power,
    ideal_membership,
    ideal_quotient,
    is_unit_ideal,
    localized_is_unit,
    monomial_ideal_contains,
    normal_form,
)
from .splitting import (
    FedderReport,
    HypersurfaceRing,
    SplitStatus,
    SplitVerdict,
    delta1_probe,
    fedder_fsplit,
    fedder_report,
    fedder_residue,
)
from .geometry import (
    AmbientFactor,
    AmbientSpace,
    HypersurfaceVariety,
    SingularStratum,
    SmoothnessStatus,
    UnsupportedStratumError,
    ambient_singular_strata,
    cone_smoothness,
    parse_ambient,
    smoothness_verdict,
)
from .chow import (
    DimensionMismatchError,
    DivClass,
    IntersectionRing,
    NonP1FactorError,
    ProductBase,
    SplitBundleSpec,
    canonical_class,
    chern_top_degree,
    hypersurface_degree,
    intersect,
    omega_twist_factors,
    section_class,
    verify_linear_identity,
)
from .delpezzo import (
    LatticeClass,
    PicLattice,
    PointConfig,
    count_compatible_exceptionals,
    enumerate_classes,
    fano_lines,
    is_full_plane_config,
    langer_neg2_classes,
    pgl_orbit_canonical,
)
from .corpus import Report, CorpusFormatError, load_corpus, run_corpus

__version__ = "0.1.0"
