//! Two classical resultant identities, as executable checks.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{kernel, Matrix};
use crate::poly::multi::MultiPoly;
use crate::resultant::macaulay::{resultant_scalar, DegreeVector};

/// Checks `Res(g0, l_1..l_n) * g0'(eta) = Res(g0', l_1..l_n) * g0(eta)`
/// where `eta` is the common zero of the independent linear forms `l_i`.
/// `g0` and `g0'` must have the same degree.
pub fn poisson_check<F: Field, R: Rng + ?Sized>(
    g0: &MultiPoly<F>,
    g0_prime: &MultiPoly<F>,
    lines: &[MultiPoly<F>],
    rng: &mut R,
) -> Result<bool> {
    let field = g0.field().clone();
    let nv = g0.nvars();
    if lines.len() + 1 != nv || g0_prime.nvars() != nv {
        return Err(Error::Usage(format!(
            "need {} linear forms in {nv} variables",
            nv.saturating_sub(1)
        )));
    }
    let e = match (g0.homogeneous_degree(), g0_prime.homogeneous_degree()) {
        (Some(a), Some(b)) if a == b && a > 0 => a,
        (Some(a), None) | (None, Some(a)) if a > 0 => a,
        _ => {
            return Err(Error::Usage(
                "g0 and g0' must be homogeneous of one positive degree".into(),
            ))
        }
    };
    let rows: Vec<Vec<F::Elem>> = lines
        .iter()
        .map(|l| {
            if l.homogeneous_degree().is_some_and(|d| d != 1) || l.nvars() != nv {
                return Err(Error::Usage("expected linear forms".into()));
            }
            Ok((0..nv)
                .map(|i| l.coeff(&crate::poly::Monomial::var(nv, i)))
                .collect())
        })
        .collect::<Result<_>>()?;
    let null = kernel(&field, &Matrix::from_rows(rows));
    if null.len() != 1 {
        return Err(Error::Precondition(
            "the linear forms are dependent; their common zero is not a point".into(),
        ));
    }
    let eta = &null[0];
    let mut degrees = vec![e];
    degrees.extend(std::iter::repeat_n(1, lines.len()));
    let dv = DegreeVector::new(degrees)?;
    let system = |g: &MultiPoly<F>| {
        let mut s = vec![g.clone()];
        s.extend(lines.iter().cloned());
        s
    };
    let lhs = field.mul(&resultant_scalar(&system(g0), &dv, rng)?, &g0_prime.evaluate(eta));
    let rhs = field.mul(&resultant_scalar(&system(g0_prime), &dv, rng)?, &g0.evaluate(eta));
    Ok(lhs == rhs)
}

/// Checks `Res(F_0, ..., F_{n-1}, y_n^{d_n}) = Res(F_0|_{y_n=0}, ...)^{d_n}`.
/// `degrees[i]` is the degree of `F_i` (needed when `F_i = 0`).
pub fn descent_check<F: Field, R: Rng + ?Sized>(
    polys: &[MultiPoly<F>],
    degrees: &[u32],
    d_n: u32,
    rng: &mut R,
) -> Result<bool> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::Usage("empty system".into()))?;
    let nv = polys.len() + 1;
    if degrees.len() != polys.len() || d_n == 0 {
        return Err(Error::Usage("one positive degree per polynomial required".into()));
    }
    let mut full = polys.to_vec();
    full.push(MultiPoly::from_terms(
        &field,
        nv,
        [(crate::poly::Monomial::var_pow(nv, nv - 1, d_n as u16), field.one())],
    ));
    let mut all_degrees = degrees.to_vec();
    all_degrees.push(d_n);
    let lhs = resultant_scalar(&full, &DegreeVector::new(all_degrees)?, rng)?;
    let restricted: Vec<MultiPoly<F>> = polys
        .iter()
        .map(|p| p.specialize(nv - 1, &[field.zero()]))
        .collect();
    let base = resultant_scalar(&restricted, &DegreeVector::new(degrees.to_vec())?, rng)?;
    Ok(lhs == field.pow(&base, d_n as u64))
}
