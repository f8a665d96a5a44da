use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MultiPoly};

/// Resultant of two binary forms of degrees `m` and `n` as the
/// determinant of their Sylvester matrix, normalized so that
/// `Res(y0^m, y1^n) = 1`.
pub fn sylvester_resultant<F: Field>(u: &MultiPoly<F>, m: u32, v: &MultiPoly<F>, n: u32) -> Result<F::Elem> {
    let field = u.field().clone();
    if u.nvars() != 2 || v.nvars() != 2 {
        return Err(Error::Usage("binary forms have two variables".into()));
    }
    if m == 0 || n == 0 {
        return Err(Error::Usage("degrees must be positive".into()));
    }
    for (g, deg) in [(u, m), (v, n)] {
        if g.terms().any(|(mono, _)| mono.degree() != deg) {
            return Err(Error::Usage(format!("form is not homogeneous of degree {deg}")));
        }
    }
    // a_i is the coefficient of y0^{m-i} y1^i
    let coeffs = |g: &MultiPoly<F>, deg: u32| -> Vec<F::Elem> {
        (0..=deg as u16)
            .map(|i| g.coeff(&Monomial::new(vec![deg as u16 - i, i])))
            .collect()
    };
    let (a, b) = (coeffs(u, m), coeffs(v, n));
    let size = (m + n) as usize;
    let mut rows = vec![vec![field.zero(); size]; size];
    for r in 0..n as usize {
        for (i, c) in a.iter().enumerate() {
            rows[r][r + i] = c.clone();
        }
    }
    for s in 0..m as usize {
        for (j, c) in b.iter().enumerate() {
            rows[n as usize + s][s + j] = c.clone();
        }
    }
    Ok(gauss_determinant(&field, rows))
}

/// Plain Gaussian elimination with division, kept separate from the main
/// linear algebra on purpose.
fn gauss_determinant<F: Field>(field: &F, mut rows: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = rows.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !field.is_zero(&rows[r][col])) else {
            return field.zero();
        };
        if piv != col {
            rows.swap(piv, col);
            det = field.neg(&det);
        }
        let inv = field.inv(&rows[col][col]).unwrap();
        det = field.mul(&det, &rows[col][col]);
        for r in col + 1..n {
            if field.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = field.mul(&rows[r][col], &inv);
            for c in col..n {
                let v = field.sub(&rows[r][c], &field.mul(&factor, &rows[col][c]));
                rows[r][c] = v;
            }
        }
    }
    det
}

/// `det H(f)` for a ternary form `f`, by cofactor expansion of the matrix
/// of second partial derivatives.
pub fn hessian_flex_oracle<F: Field>(f: &MultiPoly<F>) -> Result<MultiPoly<F>> {
    if f.nvars() != 3 {
        return Err(Error::Usage("the Hessian oracle handles plane curves only".into()));
    }
    if !f.homogeneous_degree().is_some_and(|d| d >= 2) {
        return Err(Error::Usage("need a homogeneous form of degree at least 2".into()));
    }
    let h: Vec<Vec<MultiPoly<F>>> = (0..3)
        .map(|i| (0..3).map(|j| f.partial_derivative(i).partial_derivative(j)).collect())
        .collect();
    let minor = |r: usize, c: usize| -> MultiPoly<F> {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        &(&h[rs[0]][cs[0]] * &h[rs[1]][cs[1]]) - &(&h[rs[0]][cs[1]] * &h[rs[1]][cs[0]])
    };
    let mut det = MultiPoly::zero(f.field(), 3);
    for c in 0..3 {
        let term = &h[0][c] * &minor(0, c);
        det = if c % 2 == 0 { &det + &term } else { &det - &term };
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::parse_poly;

    #[test]
    fn sylvester_small_cases() {
        let q = Rationals;
        let y0 = parse_poly(&q, "x0", Some(2)).unwrap();
        let y1 = parse_poly(&q, "x1", Some(2)).unwrap();
        assert_eq!(sylvester_resultant(&y0, 1, &y1, 1).unwrap(), q.one());
        let u = parse_poly(&q, "x0^2 - x1^2", Some(2)).unwrap();
        let v = parse_poly(&q, "x0 - x1", Some(2)).unwrap();
        assert_eq!(sylvester_resultant(&u, 2, &v, 1).unwrap(), q.zero());
        let p3 = parse_poly(&q, "x0^3", Some(2)).unwrap();
        let p2 = parse_poly(&q, "x1^2", Some(2)).unwrap();
        assert_eq!(sylvester_resultant(&p3, 3, &p2, 2).unwrap(), q.one());
    }

    #[test]
    fn fermat_hessian() {
        let q = Rationals;
        let f = parse_poly(&q, "x0^3 + x1^3 + x2^3", None).unwrap();
        assert_eq!(
            hessian_flex_oracle(&f).unwrap(),
            parse_poly(&q, "216*x0*x1*x2", None).unwrap()
        );
    }

    #[test]
    fn conic_hessian_is_constant() {
        let p = PrimeField::new(101).unwrap();
        let f = parse_poly(&p, "x0*x2 - x1^2", None).unwrap();
        let h = hessian_flex_oracle(&f).unwrap();
        assert_eq!(h.homogeneous_degree(), Some(0));
        assert!(!h.is_zero());
    }
}
