//! Exact stable norms on the first homology of closed surfaces.
//!
//! Surfaces are polygons glued along labeled, positively weighted edges. The
//! weighted 1-skeleton plays the role of the metric: the norm of a real
//! homology class is the least weighted mass of a real cycle representing
//! it. Everything is computed in exact rational arithmetic.

pub mod chain;
pub mod circuits;
pub mod corpus;
pub mod cover;
pub mod error;
pub mod homology;
pub mod hull;
pub mod linalg;
pub mod pairing;
pub mod polyconstruct;
pub mod rational;
pub mod ratlp;
pub mod snf;
pub mod stablenorm;
pub mod surface;
pub mod svg;

pub use chain::{ChainVector, Token};
pub use cover::{classify_curve, orientation_cover, CurveClassification, DoubleCover};
pub use error::{Error, Result};
pub use homology::{homology_h1, HomologyBasis};
pub use hull::Polytope;
pub use pairing::{int_number, intersection_form, IntersectionForm};
pub use polyconstruct::{
    max_disjoint_systems, normalize_lengths, penalize_outside, verify_prescription, Certificate, PrescriptionProblem,
};
pub use rational::Rational;
pub use stablenorm::{minimizing_cycles, stable_norm, unit_ball, Flat, NormBall, NormContext};
pub use surface::{is_simple_on_surface, parse_surface, Dart, End, SurfaceComplex};
