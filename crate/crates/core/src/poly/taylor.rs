use crate::field::Field;
use crate::poly::multi::MultiPoly;

/// The Taylor system `[f_1, ..., f_d]` of a homogeneous `f` of degree `d`
/// in `n + 1` variables, defined by
/// `f(x + t y) = sum_k f_k(x, y) t^k / k!`.
///
/// Each `f_k` lives in `2(n + 1)` variables `(x, y)` and is bihomogeneous
/// of bidegree `(d - k, k)`. It is computed as `D^k f` for the polarization
/// operator `D = sum_i y_i d/dx_i`, which needs no division and so is valid
/// in every characteristic.
pub fn taylor_system<F: Field>(f: &MultiPoly<F>) -> Vec<MultiPoly<F>> {
    let nx = f.nvars();
    let d = f.degree().unwrap_or(0);
    let mut current = f.embed(2 * nx, 0);
    let ys: Vec<MultiPoly<F>> = (0..nx)
        .map(|i| MultiPoly::var(f.field(), 2 * nx, nx + i))
        .collect();
    let mut out = Vec::with_capacity(d as usize);
    for _ in 0..d {
        let mut next = MultiPoly::zero(f.field(), 2 * nx);
        for (i, y) in ys.iter().enumerate() {
            let di = current.partial_derivative(i);
            if !di.is_zero() {
                next = &next + &(&di * y);
            }
        }
        out.push(next.clone());
        current = next;
    }
    out
}

/// `f_k(x, y)` evaluated at `x = point`, as a polynomial in `y` alone.
pub fn specialize_first_block<F: Field>(fk: &MultiPoly<F>, point: &[F::Elem]) -> MultiPoly<F> {
    fk.specialize(0, point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField, Rationals};
    use crate::poly::monomial::Monomial;
    use crate::poly::parse::parse_poly;

    #[test]
    fn square_of_single_variable() {
        let q = Rationals;
        let f = parse_poly(&q, "x0^2", None).unwrap();
        let t = taylor_system(&f);
        assert_eq!(t.len(), 2);
        assert_eq!(t[0], parse_poly(&q, "2*x0*y0", None).unwrap());
        assert_eq!(t[1], parse_poly(&q, "2*y0^2", None).unwrap());
    }

    #[test]
    fn bidegrees() {
        let q = Rationals;
        let f = parse_poly(&q, "x0^3 + 2*x0*x1*x2 - x2^3 + x1^2*x0", None).unwrap();
        for (k, fk) in taylor_system(&f).iter().enumerate() {
            let k = k as u32 + 1;
            assert_eq!(fk.bidegree(3), Some((3 - k, k)));
        }
    }

    /// Independent route: expand f(x + t y) with t as an extra variable and
    /// read off the top t-coefficient.
    #[test]
    fn top_taylor_term_is_d_factorial_times_f_of_y() {
        let p = PrimeField::new(10007).unwrap();
        let f = parse_poly(&p, "3*x0^4 + x0*x1^2*x2 - 5*x2^4 + x1^3*x0 + 7*x0^2*x1*x2", None).unwrap();
        let nx = 3;
        let total = 2 * nx + 1;
        let t = MultiPoly::var(&p, total, 2 * nx);
        let images: Vec<_> = (0..nx)
            .map(|i| {
                &MultiPoly::var(&p, total, i) + &(&t * &MultiPoly::var(&p, total, nx + i))
            })
            .collect();
        let expanded = f.compose(&images);
        let d = 4u16;
        let top = MultiPoly::from_terms(
            &p,
            2 * nx,
            expanded
                .terms()
                .filter(|(m, _)| m.exp(2 * nx) == d)
                .map(|(m, c)| (Monomial::new(m.exps()[..2 * nx].iter().copied()), c.clone())),
        );
        let fd = taylor_system(&f).pop().unwrap();
        assert_eq!(fd, top.scale(&p.factorial(d as u64)));
        assert_eq!(fd, f.embed(2 * nx, nx).scale(&p.factorial(4)));
    }
}
