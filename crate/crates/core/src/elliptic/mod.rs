//! Frey curves, isogenies, reduction, point counting and Tate's algorithm.

mod conductor;
mod count;
mod curve;
mod frey;
mod isogeny;
mod tate;

pub use conductor::{
    conductor_profile, expected_exponents, twist2_conductor_at_2, twist2_exponent_at_2, ConductorProfile, MultiplicativePrime,
    Twist2Conductor,
};
pub use count::{count_points, reduce_and_count, PointCount, DEFAULT_ENUMERATION_BOUND};
pub use curve::{Transform, WeierstrassCurve};
pub use frey::{conjugate_frey_curve, discriminant_check, frey_curve, frey_twist, frey_twist2};
pub use isogeny::{frey_isogenies, verify_isogeny, IsogenyMap};
pub use tate::{tate_local, Kodaira, ReductionData, ReductionKind};
