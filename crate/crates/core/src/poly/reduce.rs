//! Normal forms modulo a single polynomial under grevlex.
//!
//! `{f}` is a Groebner basis of the principal ideal `(f)`, so plain
//! division by `f` yields a canonical remainder.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::monomial::{monomials_of_degree, Monomial};
use crate::poly::multi::{MonomialIndex, MultiPoly};

/// `g = q f + r` with no term of `r` divisible by the leading monomial of
/// `f`.
pub fn divide<F: Field>(g: &MultiPoly<F>, f: &MultiPoly<F>) -> Result<(MultiPoly<F>, MultiPoly<F>)> {
    let field = g.field();
    let (lm, lc) = f
        .leading_term()
        .ok_or_else(|| Error::Usage("division by the zero polynomial".into()))?;
    let (lm, inv_lc) = (lm.clone(), field.inv(lc).unwrap());
    let mut work = g.clone();
    let mut quot = MultiPoly::zero(field, g.nvars());
    let mut rem = MultiPoly::zero(field, g.nvars());
    while let Some((m, c)) = work.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
        match lm.quotient_of(&m) {
            Some(shift) => {
                let factor = field.mul(&c, &inv_lc);
                quot.add_term(shift.clone(), &factor);
                work = &work - &f.mul_term(&shift, &factor);
            }
            None => {
                rem.add_term(m.clone(), &c);
                work.add_term(m, &field.neg(&c));
            }
        }
    }
    Ok((quot, rem))
}

pub fn normal_form<F: Field>(g: &MultiPoly<F>, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    divide(g, f).map(|(_, r)| r)
}

/// Exact quotient `g / f`; errors when the division leaves a remainder.
pub fn exact_quotient<F: Field>(g: &MultiPoly<F>, f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    let (q, r) = divide(g, f)?;
    if !r.is_zero() {
        return Err(Error::Internal("division left a nonzero remainder".into()));
    }
    Ok(q)
}

/// Reduction modulo homogeneous `f` on the space of degree-`deg`
/// homogeneous polynomials, represented as dense vectors indexed by the
/// degree-`deg` monomials in decreasing grevlex order.
///
/// Reducing a dense vector costs one pass with a precomputed shift table,
/// which beats sparse division when many polynomials of the same degree
/// must be reduced.
pub struct DenseReducer<F: Field> {
    field: F,
    index: MonomialIndex,
    /// For each reducible monomial: `(position of m/LM * t_j, coeff of t_j / lc)`.
    shifts: Vec<Option<Vec<(usize, F::Elem)>>>,
    standard: Vec<usize>,
}

impl<F: Field> DenseReducer<F> {
    pub fn new(f: &MultiPoly<F>, deg: u32) -> Result<Self> {
        let field = f.field().clone();
        let nvars = f.nvars();
        let (lm, lc) = f
            .leading_term()
            .ok_or_else(|| Error::Usage("reduction modulo zero".into()))?;
        if f.homogeneous_degree().is_none() {
            return Err(Error::NotHomogeneous);
        }
        let inv_lc = field.inv(lc).unwrap();
        let index = MonomialIndex::new(monomials_of_degree(nvars, deg));
        let mut shifts = Vec::with_capacity(index.len());
        let mut standard = Vec::new();
        for (pos, m) in index.monomials().iter().enumerate() {
            match lm.quotient_of(m) {
                Some(shift) => {
                    let row = f
                        .terms()
                        .map(|(t, c)| {
                            let p = index.position(&t.mul(&shift)).expect("same degree");
                            (p, field.mul(c, &inv_lc))
                        })
                        .collect();
                    shifts.push(Some(row));
                }
                None => {
                    standard.push(pos);
                    shifts.push(None);
                }
            }
        }
        Ok(Self {
            field,
            index,
            shifts,
            standard,
        })
    }

    pub fn index(&self) -> &MonomialIndex {
        &self.index
    }

    /// Positions of the standard (irreducible) monomials.
    pub fn standard_positions(&self) -> &[usize] {
        &self.standard
    }

    pub fn standard_monomials(&self) -> Vec<Monomial> {
        self.standard
            .iter()
            .map(|&p| self.index.monomials()[p].clone())
            .collect()
    }

    /// Reduces in place; afterwards only standard positions can be nonzero.
    pub fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for i in 0..v.len() {
            if f.is_zero(&v[i]) {
                continue;
            }
            if let Some(row) = &self.shifts[i] {
                let c = v[i].clone();
                for (p, a) in row {
                    v[*p] = f.sub(&v[*p], &f.mul(&c, a));
                }
                debug_assert!(f.is_zero(&v[i]));
            }
        }
    }

    /// Normal form of a homogeneous polynomial of this degree, as its
    /// coefficients on the standard monomials.
    pub fn reduce_poly(&self, g: &MultiPoly<F>) -> Result<Vec<F::Elem>> {
        let mut v = g
            .dense_coefficients(&self.index)
            .ok_or_else(|| Error::Usage("polynomial has the wrong degree".into()))?;
        self.reduce(&mut v);
        Ok(self.standard.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn from_standard(&self, coeffs: &[F::Elem]) -> MultiPoly<F> {
        MultiPoly::from_terms(
            &self.field,
            self.index.monomials()[0].nvars(),
            self.standard
                .iter()
                .zip(coeffs)
                .map(|(&p, c)| (self.index.monomials()[p].clone(), c.clone())),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::parse_poly;

    #[test]
    fn division_identity_and_standard_remainder() {
        let q = Rationals;
        let f = parse_poly(&q, "x0^3 + x1^3 + x2^3 - 2*x0*x1*x2", None).unwrap();
        let g = parse_poly(&q, "x0^5 + 3*x0^2*x1^2*x2 - x2^5 + x0^4*x1", None).unwrap();
        let (quot, rem) = divide(&g, &f).unwrap();
        assert_eq!(&(&quot * &f) + &rem, g);
        let (lm, _) = f.leading_term().unwrap();
        assert!(rem.terms().all(|(m, _)| !lm.divides(m)));
    }

    #[test]
    fn dense_matches_sparse() {
        let p = PrimeField::new(10007).unwrap();
        let f = parse_poly(&p, "x0^3 + 5*x1^3 + x2^3 - 2*x0*x1*x2 + x0*x1^2", None).unwrap();
        let g = parse_poly(
            &p,
            "x0^5 + 3*x0^2*x1^2*x2 - x2^5 + x0^4*x1 + 9*x1^5 + x0*x1*x2^3",
            None,
        )
        .unwrap();
        let red = DenseReducer::new(&f, 5).unwrap();
        let dense = red.from_standard(&red.reduce_poly(&g).unwrap());
        assert_eq!(dense, normal_form(&g, &f).unwrap());
    }

    #[test]
    fn exact_quotient_detects_remainder() {
        let q = Rationals;
        let f = parse_poly(&q, "x0 + x1", None).unwrap();
        let g = &f * &parse_poly(&q, "x0^2 - x1^2", None).unwrap();
        assert_eq!(
            exact_quotient(&g, &f).unwrap(),
            parse_poly(&q, "x0^2 - x1^2", None).unwrap()
        );
        assert!(exact_quotient(&parse_poly(&q, "x0^2", Some(2)).unwrap(), &f).is_err());
    }
}
