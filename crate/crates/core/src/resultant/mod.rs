//! Macaulay resultants over a field and over `K[x]`, and their
//! coefficient gradients.

pub mod gradient;
pub mod identities;
pub mod interpolate;
pub mod macaulay;

pub use gradient::{recover_unique_zero, resultant_gradient, DualScalar, SlotGradient, ZeroRecovery};
pub use identities::{descent_check, poisson_check};
pub use interpolate::resultant_poly;
pub use macaulay::{
    random_unimodular, resultant_scalar, DegreeVector, MacaulayPlan, MacaulayResultant,
};
