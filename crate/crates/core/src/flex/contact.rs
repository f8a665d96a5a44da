use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Hypersurface, MultiPoly};

/// Order of contact of a line with a hypersurface at a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContactOrder {
    Finite(u32),
    /// The line lies on the hypersurface.
    Infinite,
}

impl ContactOrder {
    pub fn at_least(self, k: u32) -> bool {
        match self {
            ContactOrder::Finite(v) => v >= k,
            ContactOrder::Infinite => true,
        }
    }
}

impl fmt::Display for ContactOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContactOrder::Finite(v) => write!(f, "{v}"),
            ContactOrder::Infinite => f.write_str("infinity"),
        }
    }
}

pub(crate) fn proportional<F: Field>(field: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    (0..p.len()).all(|i| {
        (i + 1..p.len()).all(|j| field.mul(&p[i], &q[j]) == field.mul(&p[j], &q[i]))
    })
}

pub(crate) fn check_point<F: Field>(v: &Hypersurface<F>, p: &[F::Elem]) -> Result<()> {
    if p.len() != v.dim() + 1 {
        return Err(Error::Usage(format!(
            "point has {} coordinates, expected {}",
            p.len(),
            v.dim() + 1
        )));
    }
    if p.iter().all(|c| v.field().is_zero(c)) {
        return Err(Error::Usage("the zero vector is not a projective point".into()));
    }
    Ok(())
}

/// `val_t f(p + t q)`, the order of contact at `p` of the line through
/// `p` and `q`.
pub fn contact_order<F: Field>(v: &Hypersurface<F>, p: &[F::Elem], q: &[F::Elem]) -> Result<ContactOrder> {
    check_point(v, p)?;
    check_point(v, q)?;
    if !v.contains(p) {
        return Err(Error::NotOnHypersurface);
    }
    if proportional(v.field(), p, q) {
        return Err(Error::Precondition("the direction is proportional to the point".into()));
    }
    Ok(match v.poly().substitute_line(p, q).valuation() {
        Some(k) => ContactOrder::Finite(k as u32),
        None => ContactOrder::Infinite,
    })
}

/// `f_1(p, y), ..., f_k(p, y)`: their common zeros form the cone of
/// directions with contact order above `k`.
pub fn zero_cone_system<F: Field>(v: &Hypersurface<F>, p: &[F::Elem], k: usize) -> Result<Vec<MultiPoly<F>>> {
    check_point(v, p)?;
    if k == 0 || k > v.degree() as usize {
        return Err(Error::Usage(format!("cone order must lie in 1..={}", v.degree())));
    }
    Ok(v.cone_equations(p, k))
}

/// Outcome of [`osculation_bound_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum OsculationVerdict<E> {
    /// A line through the point lies on the hypersurface.
    LineFound(Vec<E>),
    /// Every examined direction had finite contact order at most `max_order`.
    Bounded { max_order: u32, directions: usize },
}

/// Directions examined when exhaustive enumeration is too large.
pub const OSCULATION_SAMPLES: usize = 4000;

/// Sweeps lines through `p`: every direction of `P^n(F_p)` when that set
/// has at most [`OSCULATION_SAMPLES`] points, random directions otherwise
/// (half of them in the tangent hyperplane, where contact is at least 2),
/// led by the flex line direction at smooth flex points.
/// Contact above `d` forces the line into the hypersurface, which is
/// reported separately.
pub fn osculation_bound_check<F: Field, R: Rng + ?Sized>(
    v: &Hypersurface<F>,
    p: &[F::Elem],
    rng: &mut R,
) -> Result<OsculationVerdict<F::Elem>> {
    check_point(v, p)?;
    if !v.contains(p) {
        return Err(Error::NotOnHypersurface);
    }
    let field = v.field();
    let nv = v.dim() + 1;
    let directions: Vec<Vec<F::Elem>> = match small_projective_space(field, nv) {
        Some(all) => all,
        None => {
            // the flex line, when there is one, is a needle in the haystack
            let mut seeded = Vec::new();
            if v.degree() as usize >= v.dim() && !v.is_singular_at(p) {
                if let Some(eta) = crate::flex::point::certify(v, p, rng)?.line_direction {
                    seeded.push(eta);
                }
            }
            let tangent = v.cone_equations(p, 1).remove(0);
            seeded.into_iter().chain((0..OSCULATION_SAMPLES)
                .map(|i| {
                    let mut q: Vec<F::Elem> = (0..nv).map(|_| field.random(rng)).collect();
                    if i % 2 == 1 && !tangent.is_zero() {
                        project_to_hyperplane(&tangent, &mut q);
                    }
                    q
                }))
                .collect()
        }
    };
    let mut max_order = 0;
    let mut count = 0;
    for q in directions {
        if q.iter().all(|c| field.is_zero(c)) || proportional(field, p, &q) {
            continue;
        }
        count += 1;
        match contact_order(v, p, &q)? {
            ContactOrder::Infinite => return Ok(OsculationVerdict::LineFound(q)),
            ContactOrder::Finite(k) => {
                if k > v.degree() {
                    return Err(Error::Internal("finite contact above the degree".into()));
                }
                max_order = max_order.max(k);
            }
        }
    }
    Ok(OsculationVerdict::Bounded {
        max_order,
        directions: count,
    })
}

/// Moves `q` into the hyperplane `sum c_i y_i = 0` along a coordinate with
/// nonzero coefficient.
fn project_to_hyperplane<F: Field>(linear: &MultiPoly<F>, q: &mut [F::Elem]) {
    let field = linear.field();
    let nv = q.len();
    let coeffs: Vec<F::Elem> = (0..nv)
        .map(|i| linear.coeff(&crate::poly::Monomial::var(nv, i)))
        .collect();
    let j = coeffs.iter().position(|c| !field.is_zero(c)).expect("nonzero form");
    let mut rest = field.zero();
    for i in (0..nv).filter(|&i| i != j) {
        rest = field.add(&rest, &field.mul(&coeffs[i], &q[i]));
    }
    q[j] = field.neg(&field.div(&rest, &coeffs[j]).unwrap());
}

/// All of `P^{nv-1}(F_p)` with the first nonzero coordinate 1, if small.
fn small_projective_space<F: Field>(field: &F, nv: usize) -> Option<Vec<Vec<F::Elem>>> {
    let p = field.characteristic();
    if p == 0 {
        return None;
    }
    let size = (0..nv as u32).try_fold(0u64, |acc, k| acc.checked_add(p.checked_pow(k)?))?;
    if size > OSCULATION_SAMPLES as u64 {
        return None;
    }
    let mut out = Vec::with_capacity(size as usize);
    for lead in 0..nv {
        let free = nv - lead - 1;
        for mut code in 0..p.pow(free as u32) {
            let mut q = vec![field.zero(); nv];
            q[lead] = field.one();
            for slot in q.iter_mut().skip(lead + 1) {
                *slot = field.from_u64(code % p);
                code /= p;
            }
            out.push(q);
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::{parse_point, parse_poly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn surface<F: Field>(field: &F, s: &str) -> Hypersurface<F> {
        Hypersurface::with_seed(parse_poly(field, s, None).unwrap(), 1).unwrap()
    }

    #[test]
    fn line_in_quadric_and_tangent_to_conic() {
        let q = Rationals;
        let quadric = surface(&q, "x0*x3 - x1*x2");
        let p = parse_point(&q, "1,0,0,0").unwrap();
        let d = parse_point(&q, "0,0,1,0").unwrap();
        assert_eq!(contact_order(&quadric, &p, &d).unwrap(), ContactOrder::Infinite);

        let conic = surface(&q, "x0*x2 - x1^2");
        let p = parse_point(&q, "1,0,0").unwrap();
        let d = parse_point(&q, "0,1,0").unwrap();
        assert_eq!(contact_order(&conic, &p, &d).unwrap(), ContactOrder::Finite(2));
        let d = parse_point(&q, "0,3,1").unwrap();
        assert_eq!(contact_order(&conic, &p, &d).unwrap(), ContactOrder::Finite(1));
    }

    #[test]
    fn guards() {
        let q = Rationals;
        let conic = surface(&q, "x0*x2 - x1^2");
        let off = parse_point(&q, "1,1,0").unwrap();
        let p = parse_point(&q, "1,0,0").unwrap();
        assert_eq!(contact_order(&conic, &off, &p), Err(Error::NotOnHypersurface));
        let twice = parse_point(&q, "2,0,0").unwrap();
        assert!(matches!(contact_order(&conic, &p, &twice), Err(Error::Precondition(_))));
    }

    #[test]
    fn cone_contains_point_and_vanishes_at_singularity() {
        let f = PrimeField::new(101).unwrap();
        let cubic = surface(&f, "x1^2*x2 - x0^3 - x0^2*x2");
        let node = parse_point(&f, "0,0,1").unwrap();
        assert!(zero_cone_system(&cubic, &node, 1).unwrap()[0].is_zero());
        let p = parse_point(&f, "0,1,0").unwrap();
        assert!(cubic.contains(&p));
        for g in zero_cone_system(&cubic, &p, 3).unwrap() {
            assert_eq!(g.evaluate(&p), 0);
        }
    }

    #[test]
    fn osculation_on_fermat_surface_line() {
        let f = PrimeField::new(11).unwrap();
        let fermat = surface(&f, "x0^3 + x1^3 + x2^3 + x3^3");
        let p = parse_point(&f, "1,-1,2,-2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            osculation_bound_check(&fermat, &p, &mut rng).unwrap(),
            OsculationVerdict::LineFound(_)
        ));
    }
}
