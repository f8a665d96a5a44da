//! Rational points of the flex locus over a prime field, found by slicing
//! `{f = rho = 0}` with random linear spaces down to finitely many points.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::flex::rho::FlexPolynomial;
use crate::linalg::{rank, Matrix};
use crate::poly::univariate::interpolate;
use crate::poly::{Hypersurface, MultiPoly};
use crate::resultant::{resultant_scalar, DegreeVector};

/// What one slice produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    /// Degree of the eliminant; `None` when it vanished identically (the
    /// slice met the flex locus in a curve).
    pub eliminant_degree: Option<usize>,
    /// `d * deg rho`, the expected number of points over the closure.
    pub expected: u64,
    /// Whether the eliminant is squarefree (all slice points simple).
    pub squarefree: bool,
    /// Rational flex points recovered from this slice.
    pub points: Vec<Vec<u64>>,
}

impl SliceReport {
    /// Finite and within the degree bound.
    pub fn within_bound(&self) -> bool {
        self.eliminant_degree.is_some_and(|k| k as u64 <= self.expected)
    }
}

/// Slices tried by [`sample_flex_points`] before giving up.
pub const MAX_SLICES: usize = 200;

/// Up to `count` distinct smooth rational flex points of `V`, each with
/// `f = rho = 0` checked directly. Fails if `MAX_SLICES` slices do not
/// produce enough points. For plane curves the flex locus is already
/// finite and a single slice finds every rational flex.
pub fn sample_flex_points<R: Rng + ?Sized>(
    v: &Hypersurface<PrimeField>,
    fp: &FlexPolynomial<PrimeField>,
    count: usize,
    rng: &mut R,
) -> Result<(Vec<Vec<u64>>, Vec<SliceReport>)> {
    if fp.rho.is_zero() {
        return Err(Error::Precondition(
            "rho vanishes modulo f: every point is a flex".into(),
        ));
    }
    let mut found: Vec<Vec<u64>> = Vec::new();
    let mut reports = Vec::new();
    let slices = if v.dim() == 2 { 1 } else { MAX_SLICES };
    for _ in 0..slices {
        if found.len() >= count {
            break;
        }
        let report = slice(v, fp, rng)?;
        for p in &report.points {
            if found.len() < count && !found.contains(p) {
                found.push(p.clone());
            }
        }
        reports.push(report);
    }
    if found.len() < count {
        return Err(Error::Internal(format!(
            "only {} rational flex points after {} slices",
            found.len(),
            reports.len()
        )));
    }
    Ok((found, reports))
}

/// One random slice. The plane `x = B u` (`u` in `P^2`) is swept by the
/// pencil of lines `u_1 = w u_0`; the eliminant `E(w)` is the resultant in
/// `(s, z)` of `f` and `rho` restricted to `u = (s, w s, z)`.
pub fn slice<R: Rng + ?Sized>(
    v: &Hypersurface<PrimeField>,
    fp: &FlexPolynomial<PrimeField>,
    rng: &mut R,
) -> Result<SliceReport> {
    let field = *v.field();
    let nv = v.dim() + 1;
    let basis = loop {
        let b: Vec<Vec<u64>> = (0..nv).map(|_| (0..3).map(|_| field.random(rng)).collect()).collect();
        if rank(&field, &Matrix::from_rows(b.clone())) == 3 {
            break b;
        }
    };
    let images: Vec<MultiPoly<PrimeField>> = basis.iter().map(|row| MultiPoly::linear_form(&field, row)).collect();
    let f_plane = v.poly().compose(&images);
    let g_plane = fp.rho.compose(&images);
    let d = v.degree();
    let e = fp.degree as u32;
    let expected = d as u64 * e as u64;
    let degrees = DegreeVector::new(vec![d, e])?;

    let nodes = field.distinct_elements(expected as usize + 1, rng)?;
    let values: Vec<u64> = nodes
        .iter()
        .map(|&w| {
            let pencil = [
                MultiPoly::var(&field, 2, 0),
                MultiPoly::var(&field, 2, 0).scale(&w),
                MultiPoly::var(&field, 2, 1),
            ];
            let pair = [f_plane.compose(&pencil), g_plane.compose(&pencil)];
            resultant_scalar(&pair, &degrees, rng)
        })
        .collect::<Result<_>>()?;
    let eliminant = interpolate(&field, &nodes, &values);
    let mut report = SliceReport {
        eliminant_degree: eliminant.degree(),
        expected,
        squarefree: eliminant.is_squarefree(),
        points: Vec::new(),
    };
    if eliminant.is_zero() {
        return Ok(report);
    }
    for w in eliminant.roots(rng) {
        let base = [1, w, 0];
        let up = [0, 0, 1];
        let a = f_plane.substitute_line(&base, &up);
        let b = g_plane.substitute_line(&base, &up);
        for z in a.gcd(&b).roots(rng) {
            let x: Vec<u64> = basis
                .iter()
                .map(|row| field.add(&field.add(&row[0], &field.mul(&row[1], &w)), &field.mul(&row[2], &z)))
                .collect();
            if v.contains(&x) && field.is_zero(&fp.rho.evaluate(&x)) && !v.is_singular_at(&x) {
                let x = normalize(&field, &x);
                if !report.points.contains(&x) {
                    report.points.push(x);
                }
            }
        }
    }
    Ok(report)
}

fn normalize(field: &PrimeField, x: &[u64]) -> Vec<u64> {
    let lead = x.iter().find(|&&c| c != 0).expect("nonzero point");
    let inv = field.inv(lead).unwrap();
    x.iter().map(|c| field.mul(c, &inv)).collect()
}

/// Rank of the Jacobian matrix of `(f, rho)` at `p`; rank 2 means `p` is
/// a smooth point of the flex scheme.
pub fn jacobian_rank<F: Field>(v: &Hypersurface<F>, fp: &FlexPolynomial<F>, p: &[F::Elem]) -> usize {
    let rows: Vec<Vec<F::Elem>> = [v.poly(), &fp.rho]
        .iter()
        .map(|g| g.gradient().iter().map(|dg| dg.evaluate(p)).collect())
        .collect();
    rank(v.field(), &Matrix::from_rows(rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flex::point::is_flex;
    use crate::flex::rho::{flex_polynomial, random_form};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plane_quartic_flexes_are_sampled() {
        let p = PrimeField::new(10007).unwrap();
        let mut sampled = 0;
        for seed in 0..10 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = Hypersurface::new(random_form(&p, 3, 4, &mut rng), &mut rng).unwrap();
            let fp = flex_polynomial(&v, 3).unwrap();
            let report = slice(&v, &fp, &mut rng).unwrap();
            assert_eq!(report.eliminant_degree, Some(24));
            assert!(report.squarefree);
            for pt in &report.points {
                assert!(is_flex(&v, pt, &mut rng).unwrap());
                assert_eq!(jacobian_rank(&v, &fp, pt), 2);
                sampled += 1;
            }
        }
        assert!(sampled > 0);
    }
}
