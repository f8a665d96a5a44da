//! Resultants over the coefficient ring `K[x]`, by evaluation at points
//! of `x` and interpolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::monomial::Monomial;
use crate::poly::multi::MultiPoly;
use crate::poly::univariate::interpolate;
use crate::resultant::macaulay::{DegreeVector, MacaulayResultant};

/// Random points at which the interpolated polynomial is re-checked.
pub const CONSISTENCY_POINTS: usize = 10;

/// Random lines used to find the power of `x_0` dividing the result.
const VALUATION_PROBES: usize = 4;

/// `Res^y(polys)` as a polynomial in `x`.
///
/// Each input lives in `nx + ny` variables, `x` first, and must be
/// homogeneous of degree `degrees[i]` in `y`. The result is homogeneous in
/// `x` of degree at most `bound`.
///
/// The values on the chart `x_0 = 1` are sampled on a tensor grid of
/// `(bound + 1)^(nx - 1)` points and interpolated one axis at a time; the
/// power of `x_0` dividing the answer is read off along random lines
/// through the hyperplane `x_0 = 0`. The homogenized result is compared
/// with direct evaluations at fresh random points; any mismatch means the
/// bound was wrong or the field too small and is reported as an internal
/// error.
pub fn resultant_poly<F: Field>(
    polys: &[MultiPoly<F>],
    nx: usize,
    degrees: &DegreeVector,
    bound: u32,
    seed: u64,
) -> Result<MultiPoly<F>> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::Usage("empty system".into()))?;
    if nx == 0 {
        return Err(Error::Usage("no x variables".into()));
    }
    let ny = degrees.nvars();
    for (i, p) in polys.iter().enumerate() {
        if p.nvars() != nx + ny {
            return Err(Error::Usage(format!(
                "polynomial {i} has {} variables, expected {}",
                p.nvars(),
                nx + ny
            )));
        }
        let want = degrees.degrees()[i];
        if p.terms().any(|(m, _)| m.exps()[nx..].iter().map(|&e| e as u32).sum::<u32>() != want) {
            return Err(Error::Usage(format!(
                "polynomial {i} is not homogeneous of degree {want} in y"
            )));
        }
    }
    let evaluator = Evaluator {
        res: MacaulayResultant::new(&field, degrees.clone()),
        polys,
        nx,
        seed,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = bound as usize + 1;
    let nodes = field.distinct_elements(width, &mut rng)?;

    // dehomogenized values on the grid, axis 0 varying fastest
    let axes = nx - 1;
    let total = width.pow(axes as u32);
    let mut values: Vec<F::Elem> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut point = Vec::with_capacity(nx);
            point.push(field.one());
            let mut rest = flat;
            for _ in 0..axes {
                point.push(nodes[rest % width].clone());
                rest /= width;
            }
            evaluator.eval(&point, flat as u64)
        })
        .collect();

    let mut stride = 1;
    for _ in 0..axes {
        interpolate_axis(&field, &nodes, &mut values, stride, width);
        stride *= width;
    }

    let valuation = evaluator.x0_valuation(&nodes, &mut rng)?;
    let mut terms = Vec::new();
    for (flat, c) in values.into_iter().enumerate() {
        if field.is_zero(&c) {
            continue;
        }
        let mut exps = vec![0u16; nx];
        let mut rest = flat;
        for e in exps.iter_mut().skip(1) {
            *e = (rest % width) as u16;
            rest /= width;
        }
        terms.push((exps, c));
    }
    let chart_degree = terms
        .iter()
        .map(|(e, _)| e.iter().map(|&v| v as u32).sum::<u32>())
        .max();
    let result = match chart_degree {
        None => MultiPoly::zero(&field, nx),
        Some(cd) => {
            let degree = cd + valuation;
            if degree > bound {
                return Err(Error::Internal(format!(
                    "interpolated resultant has degree {degree}, above the bound {bound}"
                )));
            }
            let homogenized = terms.into_iter().map(|(mut exps, c)| {
                let partial: u32 = exps.iter().map(|&v| v as u32).sum();
                exps[0] = (degree - partial) as u16;
                (Monomial::new(exps), c)
            });
            MultiPoly::from_terms(&field, nx, homogenized)
        }
    };

    for k in 0..CONSISTENCY_POINTS {
        let point: Vec<F::Elem> = (0..nx).map(|_| field.random(&mut rng)).collect();
        let direct = evaluator.eval(&point, u64::MAX - k as u64);
        if direct != result.evaluate(&point) {
            return Err(Error::Internal(
                "interpolated resultant disagrees with a direct evaluation".into(),
            ));
        }
    }
    Ok(result)
}

struct Evaluator<'a, F: Field> {
    res: MacaulayResultant<F>,
    polys: &'a [MultiPoly<F>],
    nx: usize,
    seed: u64,
}

impl<F: Field> Evaluator<'_, F> {
    /// Resultant of the system specialized at `x`; `tag` derives the
    /// random stream used by the coordinate-change fallback, so results
    /// do not depend on evaluation order.
    fn eval(&self, x: &[F::Elem], tag: u64) -> F::Elem {
        let specialized: Vec<MultiPoly<F>> =
            self.polys.iter().map(|p| p.specialize(0, x)).collect();
        let coeffs = self
            .res
            .plan()
            .dense(&specialized)
            .expect("y-degrees were validated");
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        self.res.eval_dense(&coeffs, &mut rng)
    }

    /// Largest `v` with `x_0^v` dividing the result, estimated as the
    /// smallest `t`-adic valuation of `R(t, a)` over random `a`.
    fn x0_valuation<R: Rng + ?Sized>(&self, nodes: &[F::Elem], rng: &mut R) -> Result<u32> {
        let field = self.res.field();
        let mut best: Option<usize> = None;
        for probe in 0..VALUATION_PROBES {
            let tail: Vec<F::Elem> = (1..self.nx).map(|_| field.random(rng)).collect();
            let samples: Vec<F::Elem> = nodes
                .iter()
                .enumerate()
                .map(|(k, t)| {
                    let mut point = vec![t.clone()];
                    point.extend(tail.iter().cloned());
                    self.eval(&point, ((probe as u64) << 32) | k as u64 | (1 << 63))
                })
                .collect();
            if let Some(v) = interpolate(field, nodes, &samples).valuation() {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
            if best == Some(0) {
                break;
            }
        }
        Ok(best.unwrap_or(0) as u32)
    }
}

/// Replaces the values along one axis by the coefficients of their
/// interpolating polynomial in that axis variable.
fn interpolate_axis<F: Field>(
    field: &F,
    nodes: &[F::Elem],
    values: &mut [F::Elem],
    stride: usize,
    width: usize,
) {
    let block = stride * width;
    for start in (0..values.len()).step_by(block) {
        for offset in 0..stride {
            let base = start + offset;
            let fiber: Vec<F::Elem> = (0..width).map(|k| values[base + k * stride].clone()).collect();
            let poly = interpolate(field, nodes, &fiber);
            for k in 0..width {
                values[base + k * stride] = poly.coeff(k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::parse_poly;
    use crate::resultant::macaulay::resultant_scalar;

    #[test]
    fn two_by_two_determinant() {
        let q = Rationals;
        let polys = vec![
            parse_poly(&q, "y0*x0 + y1*x1", Some(2)).unwrap(),
            parse_poly(&q, "y0*x1 - y1*x0", Some(2)).unwrap(),
        ];
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        let r = resultant_poly(&polys, 2, &dv, 2, 3).unwrap();
        // det [[x0, x1], [x1, -x0]] = -(x0^2 + x1^2)
        assert_eq!(r, parse_poly(&q, "-x0^2 - x1^2", Some(2)).unwrap());
    }

    #[test]
    fn zero_slot_gives_zero() {
        let p = PrimeField::new(101).unwrap();
        let polys = vec![
            parse_poly(&p, "y0*x0 + y1*x1", Some(2)).unwrap(),
            MultiPoly::zero(&p, 4),
        ];
        let dv = DegreeVector::new(vec![1, 2]).unwrap();
        assert!(resultant_poly(&polys, 2, &dv, 4, 0).unwrap().is_zero());
    }

    #[test]
    fn detects_power_of_x0() {
        // Res(x0^2*y0, x1*x2*y1) = x0^2*x1*x2
        let p = PrimeField::new(101).unwrap();
        let f0 = MultiPoly::from_terms(&p, 5, [(Monomial::new(vec![2, 0, 0, 1, 0]), 1)]);
        let f1 = MultiPoly::from_terms(&p, 5, [(Monomial::new(vec![0, 1, 1, 0, 1]), 1)]);
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        let r = resultant_poly(&[f0, f1], 3, &dv, 4, 9).unwrap();
        let want = MultiPoly::from_terms(&p, 3, [(Monomial::new(vec![2, 1, 1]), 1)]);
        assert_eq!(r, want);
    }

    #[test]
    fn too_small_bound_is_internal_error() {
        let q = Rationals;
        let polys = vec![
            parse_poly(&q, "y0*x0 + y1*x1", Some(2)).unwrap(),
            parse_poly(&q, "y0*x1 - y1*x0", Some(2)).unwrap(),
        ];
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        assert!(matches!(
            resultant_poly(&polys, 2, &dv, 1, 3),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn agrees_with_scalar_specializations() {
        let p = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // random system in x0..x2 (degree 1) and y0..y2 with degrees (1, 2, 1)
        let dv = DegreeVector::new(vec![1, 2, 1]).unwrap();
        let polys: Vec<MultiPoly<PrimeField>> = dv
            .degrees()
            .iter()
            .map(|&dy| {
                let mut acc = MultiPoly::zero(&p, 6);
                for mx in crate::poly::monomials_of_degree(3, 1) {
                    for my in crate::poly::monomials_of_degree(3, dy) {
                        let exps: Vec<u16> = mx.exps().iter().chain(my.exps()).copied().collect();
                        acc.add_term(Monomial::new(exps), &p.random(&mut rng));
                    }
                }
                acc
            })
            .collect();
        // degree in x: 1 * (2*1) + 1 * (1*1) + 1 * (1*2) = 5
        let r = resultant_poly(&polys, 3, &dv, 5, 4).unwrap();
        assert_eq!(r.homogeneous_degree(), Some(5));
        for _ in 0..50 {
            let x: Vec<u64> = (0..3).map(|_| p.random(&mut rng)).collect();
            let spec: Vec<_> = polys.iter().map(|f| f.specialize(0, &x)).collect();
            assert_eq!(r.evaluate(&x), resultant_scalar(&spec, &dv, &mut rng).unwrap());
        }
    }
}
