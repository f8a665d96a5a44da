use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Closed-form degrees attached to a hypersurface of degree `d` in `P^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub n: usize,
    pub d: u32,
    pub deg_rho: u64,
    pub deg_flex_locus: u64,
    /// Degree of the surface swept by flex lines; only for `d = n`.
    pub deg_line_locus: Option<u64>,
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `sum_{k=1}^n n!/k`.
pub fn harmonic_factorial(n: usize) -> u64 {
    let nf = factorial(n);
    (1..=n as u64).map(|k| nf / k).sum()
}

/// `deg R_{V,g} = e (d sum n!/k - n n!)` for `g` of degree `e`.
pub fn r_degree(n: usize, d: u32, e: u32) -> u64 {
    let d = d as u64;
    let sum: u64 = (1..=n as u64).map(|k| (d - k) * (factorial(n) / k)).sum();
    e as u64 * sum
}

pub fn rho_degree(n: usize, d: u32) -> u64 {
    d as u64 * harmonic_factorial(n) - factorial(n + 1)
}

pub fn degree_report(n: usize, d: u32) -> Result<DegreeReport> {
    if n < 2 {
        return Err(Error::Usage("the degree formulas need n >= 2".into()));
    }
    if (d as usize) < n {
        return Err(Error::DegreeBelowDimension { n, d });
    }
    let deg_rho = rho_degree(n, d);
    let deg_line_locus = if d as usize == n {
        // n^3 (n-1)! sum_{k=2}^{n-1} 1/k
        let sum = (2..n).fold(BigRational::zero(), |acc, k| {
            acc + BigRational::new(BigInt::one(), BigInt::from(k))
        });
        let value = sum * BigRational::from_integer(BigInt::from(n.pow(3) as u64 * factorial(n - 1)));
        if !value.is_integer() {
            return Err(Error::Internal(format!("line locus degree {value} is not an integer")));
        }
        Some(value.to_integer().to_u64().expect("fits in u64"))
    } else {
        None
    };
    Ok(DegreeReport {
        n,
        d,
        deg_rho,
        deg_flex_locus: d as u64 * deg_rho,
        deg_line_locus,
    })
}
