//! Exact sparse polynomial arithmetic.

pub mod hypersurface;
pub mod monomial;
pub mod multi;
pub mod parse;
pub mod reduce;
pub mod squarefree;
pub mod taylor;
pub mod univariate;

pub use hypersurface::Hypersurface;
pub use monomial::{monomials_of_degree, Monomial};
pub use multi::{MonomialIndex, MultiPoly, VarNames};
pub use parse::{parse_point, parse_poly};
pub use taylor::taylor_system;
pub use univariate::UniPoly;
