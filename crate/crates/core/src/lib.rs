//! Hilbert geometry on bounded convex planar domains.
//!
//! The crate computes the Hilbert metric, parametrizes straight-chord geodesics
//! by Hilbert arc length, samples distance profiles between geodesic pairs,
//! certifies (non-)convexity of those profiles and builds a C² convex domain
//! with a single flat point whose asymptotic profile is not eventually convex.

// `!(x < y)` is used on purpose so NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod closed_form;
pub mod counterexample;
pub mod domain;
mod error;
mod hp;
pub mod metric;
pub mod projective;
mod roots;

pub use asymptotic::{
    convexity_report, distance_profile, limit_estimate, synchronize, synchronize_with_support,
    vertex_lower_bound_check, AsymptoticPair, ConvexityReport, DistanceProfile, LimitEstimate,
    NegativeWindow, PencilFrame,
};
pub use closed_form::{
    closed_form_example, closed_form_setup, normalized_gap, phi_convexity_onset, phi_second,
    phi_value, edge_point_polygon, ClosedFormKind, PhiParams,
};
pub use counterexample::{
    build_counterexample_domain, c2_interpolant, d2_at_contact, d_profile_derivatives,
    feasibility_check, flat_segment_endpoint, reference_cubic_report, segment_bridge_data,
    sufficient_bounds, verify_nonconvexity, C2Arc, ContactSign, CounterexampleDomain,
    CounterexampleParams, Feasibility, InterpolationData, LevelInfo, NonconvexityReport, Probe,
    ProbeWindow, ProfileDerivatives, SufficientBounds, FLAT_ENDPOINT_RATIO,
};
pub use domain::{
    ArcModel, BoundaryLocation, BoundaryPoint, ConvexDomain, Curve, DomainSpec, GraphArc, Piece,
    PolygonDomain, Violation,
};
pub use error::HilbertError;
pub use metric::{geodesic_through, hilbert_distance, GeodesicLine};
pub use projective::{
    cross_ratio, intersect, join, map_from_correspondence, CollinearQuad, HomLine, Point,
    ProjectiveMap,
};

pub type Result<T, E = HilbertError> = std::result::Result<T, E>;
