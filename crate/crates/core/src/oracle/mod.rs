//! Brute-force and classical oracles, written independently of the
//! resultant and flex code so that agreement means something.

pub mod classical;
pub mod cone;
pub mod enumeration;
pub mod fp2;

pub use classical::{hessian_flex_oracle, sylvester_resultant};
pub use cone::brute_force_cone;
pub use enumeration::EnumerationDomain;
pub use fp2::Fp2;
