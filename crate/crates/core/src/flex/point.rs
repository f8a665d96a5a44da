use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::flex::contact::{check_point, contact_order, ContactOrder};
use crate::flex::rho::FlexPolynomial;
use crate::poly::{Hypersurface, MultiPoly};
use crate::resultant::{recover_unique_zero, resultant_scalar, DegreeVector, ZeroRecovery};

/// Whether the flex line through a point is known to be unique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UniqueLine {
    /// A resultant partial is nonzero, so the cone of high-contact
    /// directions is a single line.
    Yes,
    /// No line was looked for: the point is not a flex, or it is singular.
    NoEvidence,
    /// Every resultant partial vanishes.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlexCertificate<E> {
    pub point: Vec<E>,
    pub on_hypersurface: bool,
    pub is_flex: bool,
    /// A second point `eta` of the flex line, on the hyperplane `ell = 0`.
    pub line_direction: Option<Vec<E>>,
    pub unique_line: UniqueLine,
    /// Contact order along the returned line.
    pub contact_order: Option<ContactOrder>,
}

/// Index of the first nonzero coordinate; `y_j` is then a linear form
/// not vanishing at `p`.
fn pivot<F: Field>(field: &F, p: &[F::Elem]) -> usize {
    p.iter().position(|c| !field.is_zero(c)).expect("nonzero point")
}

/// `f_1(p, y), ..., f_n(p, y), y_j` with `p_j != 0`.
fn cone_with_hyperplane<F: Field>(v: &Hypersurface<F>, p: &[F::Elem]) -> (Vec<MultiPoly<F>>, DegreeVector) {
    let nv = v.dim() + 1;
    let mut system = v.cone_equations(p, v.dim());
    system.push(MultiPoly::var(v.field(), nv, pivot(v.field(), p)));
    let mut degrees: Vec<u32> = (1..=v.dim() as u32).collect();
    degrees.push(1);
    (system, DegreeVector::new(degrees).expect("positive degrees"))
}

/// Flex test at a point of `V`: singular points are flexes outright;
/// otherwise `p` is a flex iff the cone `f_1(p, .) = ... = f_n(p, .) = 0`
/// meets a hyperplane avoiding `p`, i.e. iff the resultant vanishes.
pub fn is_flex<F: Field, R: Rng + ?Sized>(v: &Hypersurface<F>, p: &[F::Elem], rng: &mut R) -> Result<bool> {
    check_point(v, p)?;
    if !v.contains(p) {
        return Err(Error::NotOnHypersurface);
    }
    if (v.degree() as usize) < v.dim() {
        return Err(Error::DegreeBelowDimension {
            n: v.dim(),
            d: v.degree(),
        });
    }
    if v.is_singular_at(p) {
        return Ok(true);
    }
    let (system, dv) = cone_with_hyperplane(v, p);
    Ok(v.field().is_zero(&resultant_scalar(&system, &dv, rng)?))
}

/// Flex test by evaluating a precomputed `rho` at `p`.
pub fn is_flex_by_rho<F: Field>(v: &Hypersurface<F>, fp: &FlexPolynomial<F>, p: &[F::Elem]) -> Result<bool> {
    check_point(v, p)?;
    if !v.contains(p) {
        return Err(Error::NotOnHypersurface);
    }
    Ok(v.field().is_zero(&fp.rho.evaluate(p)))
}

/// Full verdict for a point of `V`. A flex line is looked for only at
/// smooth flex points.
pub fn certify<F: Field, R: Rng + ?Sized>(
    v: &Hypersurface<F>,
    p: &[F::Elem],
    rng: &mut R,
) -> Result<FlexCertificate<F::Elem>> {
    let flex = is_flex(v, p, rng)?;
    let mut cert = FlexCertificate {
        point: p.to_vec(),
        on_hypersurface: true,
        is_flex: flex,
        line_direction: None,
        unique_line: UniqueLine::NoEvidence,
        contact_order: None,
    };
    if !flex || v.is_singular_at(p) {
        return Ok(cert);
    }
    let (system, dv) = cone_with_hyperplane(v, p);
    match recover_unique_zero(&system, &dv, rng)? {
        ZeroRecovery::Unique(eta) => {
            let order = contact_order(v, p, &eta)?;
            if !order.at_least(v.dim() as u32 + 1) {
                return Err(Error::Internal(format!(
                    "recovered line has contact order {order}, below n + 1"
                )));
            }
            cert.line_direction = Some(eta);
            cert.unique_line = UniqueLine::Yes;
            cert.contact_order = Some(order);
        }
        ZeroRecovery::Inconclusive => cert.unique_line = UniqueLine::Inconclusive,
    }
    Ok(cert)
}

/// [`certify`] restricted to flex points.
pub fn flex_line<F: Field, R: Rng + ?Sized>(
    v: &Hypersurface<F>,
    p: &[F::Elem],
    rng: &mut R,
) -> Result<FlexCertificate<F::Elem>> {
    let cert = certify(v, p, rng)?;
    if !cert.is_flex {
        return Err(Error::Precondition("the point is not a flex point".into()));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::{parse_point, parse_poly};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fermat_cubic_curve_flexes() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = Hypersurface::with_seed(parse_poly(&q, "x0^3 + x1^3 + x2^3", None).unwrap(), 0).unwrap();
        let p = parse_point(&q, "1,-1,0").unwrap();
        assert!(is_flex(&v, &p, &mut rng).unwrap());
        let cert = flex_line(&v, &p, &mut rng).unwrap();
        assert_eq!(cert.unique_line, UniqueLine::Yes);
        assert!(cert.contact_order.unwrap().at_least(3));
    }

    #[test]
    fn node_is_a_flex_without_line_evidence() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let v = Hypersurface::with_seed(parse_poly(&q, "x1^2*x2 - x0^3 - x0^2*x2", None).unwrap(), 0).unwrap();
        let node = parse_point(&q, "0,0,1").unwrap();
        let cert = certify(&v, &node, &mut rng).unwrap();
        assert!(cert.is_flex);
        assert_eq!(cert.unique_line, UniqueLine::NoEvidence);
    }

    #[test]
    fn smooth_non_flex_and_off_curve() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // Hessian is a multiple of x0*x1*x2, nonzero at (1 : 1 : 1)
        let v = Hypersurface::with_seed(parse_poly(&f, "x0^3 + x1^3 - 2*x2^3", None).unwrap(), 0).unwrap();
        let off = parse_point(&f, "1,0,0").unwrap();
        assert_eq!(is_flex(&v, &off, &mut rng), Err(Error::NotOnHypersurface));
        let p = parse_point(&f, "1,1,1").unwrap();
        assert!(!is_flex(&v, &p, &mut rng).unwrap());
        let cert = certify(&v, &p, &mut rng).unwrap();
        assert_eq!(cert.unique_line, UniqueLine::NoEvidence);
        assert!(matches!(flex_line(&v, &p, &mut rng), Err(Error::Precondition(_))));
    }
}
