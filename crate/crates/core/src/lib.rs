//! Optimal constants for the BV trace inequality at conical boundary points.
//!
//! For a cone `𝒞 ⊂ ℝⁿ` over a convex base `G`, the best constant in
//!
//! ```text
//! ∫_{∂𝒞} Tr 𝟙_E dHⁿ⁻¹ ≤ α(𝒞) · P(E; 𝒞)
//! ```
//!
//! equals `√(1+R²)/R` when every facet of `G` touches the inscribed sphere of
//! radius `R` (centred on the cone axis), and is bounded by that value when
//! facets only touch or miss it. This crate computes the constant
//! ([`constant`]), finds the inscribed ball ([`ball`]), evaluates the ratio
//! `β(E)` exactly on polyhedral sets ([`functional`]), maximizes it over
//! parametric families ([`search`]), and reports per-corner constants of
//! planar polygons ([`domain2d`]).

pub mod ball;
pub mod constant;
pub mod domain2d;
pub mod error;
pub mod functional;
pub mod geometry;
pub mod io;
mod lp;
pub mod search;

pub use ball::{chebyshev_ball, classify, Ball, TangencyClass, TangencyKind};
pub use constant::{alpha_formula, constant_for, corner_q_2d, ConstantKind, ConstantResult};
pub use domain2d::{analyze_polygon, CornerReport, CornerStatus, Polygon2D, PolygonReport};
pub use error::{Error, Result};
pub use functional::{
    book_cone, book_cone_prism, evaluate_beta, halfspace_cut, perturbed_cut, scale_set,
    strip_prism, BetaReport, FacetClass, PolyhedralSet,
};
pub use geometry::{Cone, HalfPlaneConstraint, PolyhedralBase, VecN, DEFAULT_TOL};
pub use search::{search, verify_maximizer, MaximizerCheck, SearchFamily, SearchReport};
