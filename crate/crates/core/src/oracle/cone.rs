use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::oracle::enumeration::EnumerationDomain;
use crate::poly::Hypersurface;

/// Every point `q != p` of the domain at which `f(p + t q)` has no terms of
/// degree `1..=k` in `t`, i.e. the finite points of the cone `Z_p^k`.
/// Uses only the line restriction of `f`, never its Taylor system.
pub fn brute_force_cone(
    v: &Hypersurface<PrimeField>,
    p: &[(u64, u64)],
    k: usize,
    domain: &EnumerationDomain,
) -> Result<Vec<Vec<(u64, u64)>>> {
    if domain.prime() != v.field().modulus() {
        return Err(Error::Usage("domain and hypersurface use different primes".into()));
    }
    if p.len() != v.dim() + 1 {
        return Err(Error::Usage("point has the wrong number of coordinates".into()));
    }
    if k == 0 || k > v.degree() as usize {
        return Err(Error::Usage(format!("cone order must lie in 1..={}", v.degree())));
    }
    let k2 = *domain.field();
    let f = v.poly().map_field(&k2, |c| (*c, 0));
    Ok(domain.filter(|q| {
        if proportional(&k2, p, q) {
            return false;
        }
        let line = f.substitute_line(p, q);
        (1..=k).all(|j| k2.is_zero(&line.coeff(j)))
    }))
}

fn proportional<F: Field>(field: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    (0..p.len()).all(|i| (0..i).all(|j| field.mul(&p[i], &q[j]) == field.mul(&p[j], &q[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn embed(p: &[u64]) -> Vec<(u64, u64)> {
        p.iter().map(|&c| (c, 0)).collect()
    }

    #[test]
    fn tangent_line_count_at_smooth_point() {
        let f = PrimeField::new(7).unwrap();
        let v = Hypersurface::with_seed(parse_poly(&f, "x0^3 + x1^3 + 3*x2^3", None).unwrap(), 0).unwrap();
        let p = embed(&[1, 6, 0]);
        let dom = EnumerationDomain::new(7, 1, 2).unwrap();
        // the tangent line has 8 points over F_7, one of them p
        assert_eq!(brute_force_cone(&v, &p, 1, &dom).unwrap().len(), 7);
        // (1 : -1 : 0) is a flex of this curve
        assert!(!brute_force_cone(&v, &p, 2, &dom).unwrap().is_empty());
    }

    #[test]
    fn non_flex_point_has_empty_cone_over_extension() {
        let f = PrimeField::new(7).unwrap();
        let v = Hypersurface::with_seed(parse_poly(&f, "x0^3 + x1^3 - 2*x2^3", None).unwrap(), 0).unwrap();
        let p = embed(&[1, 1, 1]);
        let dom = EnumerationDomain::new(7, 2, 2).unwrap();
        assert!(brute_force_cone(&v, &p, 2, &dom).unwrap().is_empty());
    }
}
