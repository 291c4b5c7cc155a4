"""Spectral bounds and Seidel-matrix machinery for two-distance sets."""

from .bounds import (
    BoundResult,
    GammaParam,
    LrsCheck,
    Table,
    TableSpec,
    bound_euclidean,
    bound_spherical_neg,
    bound_spherical_pos,
    default_table_spec,
    equality_spectrum,
    gamma_from_delta_sq,
    gamma_from_inner_products,
    lrs_check,
    ls_max_bound,
    make_table,
    table_to_csv,
    table_to_markdown,
)
from .configurations import (
    NotTwoDistanceError,
    PointConfiguration,
    RealizationResult,
    TwoDistanceCertificate,
    centered_unit_gram,
    certify_two_distance,
    cross_polytope,
    distance_sq_matrix,
    gram,
    gram_two_values,
    lisonek_realizable,
    realize_gram,
    regular_simplex,
    simplex_midpoints,
    unit_square,
)
from .correspondence import (
    EquiangularSystem,
    FamilyParam,
    equiangular_to_spherical,
    family_param,
    seidel_to_lines,
    spherical_to_equiangular,
)
from .etf import (
    EtfCatalog,
    EtfRecord,
    EtfTestResult,
    bundled_catalog,
    catalog_load,
    catalog_query,
    etf_signature_test,
    refine_euclidean,
    refine_spherical,
)
from .linalg import (
    DEFAULT_TOL,
    PsdReport,
    Spectrum,
    SymMatrix,
    WeylReport,
    as_fraction,
    eig_sym,
    format_rational,
    group_spectrum,
    integer_spectrum_exact,
    offdiag_values,
    psd_rank,
    rank_exact,
    spectrum_of,
    verify_weyl,
)
from .seidel import (
    EuclideanSeidelParams,
    SeidelMatrix,
    SphericalSeidelParams,
    StructureReport,
    build_D,
    cayley_menger,
    check_structure_euclidean,
    check_structure_spherical,
    clebsch_seidel,
    paley_conference_seidel,
    seidel_euclidean,
    seidel_spherical,
    spectrum_D_closed_form,
    triangular_graph_seidel,
)

__version__ = "0.1.0"
