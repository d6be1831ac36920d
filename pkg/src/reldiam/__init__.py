"""Maximum relative diameter for k-partitions and k-subdivisions of planar
convex bodies with rotational symmetry."""

from .body import (
    BodyError,
    BodyMetrics,
    ConvexBody,
    SymmetryError,
    make_circle_kgon_intersection,
    make_disc,
    make_polygon_body,
    make_regular_kgon,
    make_reuleaux,
    metrics,
    verify_symmetry,
)
from .bounds import (
    BoundReport,
    bound_hexagonal_lower,
    bound_isodiametric,
    bound_report,
    bound_standard,
    lp_packing_constant,
    m_table,
)
from .constructions import (
    HexLattice,
    circle8_counterexample,
    d_M_standard_formula,
    heptagon_counterexample,
    hex_subdivision,
    optimal_body,
    perturb_partition,
    quotient,
    search_heptagon,
    standard_partition,
)
from .geometry import Arc, ConvexPolygon, GeometryError, Point, Polyline, Segment, Tolerance
from .optimizer import SearchConfig, SearchResult, optimize_partition, optimize_subdivision
from .subdivision import DiameterWitness, KPartition, KSubdivision, d_M, regions_of_partition, validate

__version__ = "0.1.0"
