//! Flex points, flex lines and the flex polynomial of a hypersurface.

pub mod contact;
pub mod degrees;
pub mod point;
pub mod rho;
pub mod sample;

pub use contact::{contact_order, osculation_bound_check, zero_cone_system, ContactOrder, OsculationVerdict};
pub use degrees::{degree_report, DegreeReport};
pub use point::{certify, flex_line, is_flex, is_flex_by_rho, FlexCertificate, UniqueLine};
pub use rho::{default_ell, flex_polynomial, flex_polynomial_with, r_poly, FlexPolynomial};
pub use sample::{jacobian_rank, sample_flex_points, SliceReport};
