//! Flex loci of projective hypersurfaces via multivariate resultants.

pub mod acceptance;
pub mod error;
pub mod field;
pub mod flex;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod resultant;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals};
pub use poly::{Hypersurface, Monomial, MultiPoly, UniPoly};
