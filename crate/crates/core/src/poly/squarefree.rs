use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::multi::MultiPoly;

/// Number of full-degree line restrictions examined before declaring a
/// polynomial non-squarefree.
pub const SQUAREFREE_LINES: usize = 20;

/// Probabilistic squarefreeness test for a nonzero homogeneous polynomial.
///
/// A repeated factor `g^2 | f` survives on every line along which `f` keeps
/// its degree, so one squarefree restriction `u(t) = f(p + t q)` (checked
/// with `gcd(u, u')`) proves `f` squarefree. Conversely a squarefree `f`
/// has squarefree restrictions on all lines off its dual variety, so
/// `SQUAREFREE_LINES` failures make "not squarefree" overwhelmingly likely.
pub fn is_squarefree<F: Field, R: Rng + ?Sized>(f: &MultiPoly<F>, rng: &mut R) -> Result<bool> {
    let field = f.field();
    let d = f
        .homogeneous_degree()
        .ok_or(Error::NotHomogeneous)?;
    if d == 0 {
        return Ok(true);
    }
    let p = field.characteristic();
    if p != 0 && p <= d as u64 {
        return Err(Error::CharacteristicTooSmall { p, d });
    }
    let n = f.nvars();
    let mut full_degree_lines = 0;
    let mut attempts = 0;
    while full_degree_lines < SQUAREFREE_LINES {
        attempts += 1;
        if attempts > 50 * SQUAREFREE_LINES {
            return Err(Error::Internal(
                "could not find lines meeting the hypersurface properly".into(),
            ));
        }
        let base: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        let dir: Vec<F::Elem> = (0..n).map(|_| field.random(rng)).collect();
        let u = f.substitute_line(&base, &dir);
        if u.degree() != Some(d as usize) {
            continue;
        }
        full_degree_lines += 1;
        if u.is_squarefree() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn visible_square_and_distinct_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = Rationals;
        let sq = parse_poly(&q, "x0^2*x1", Some(3)).unwrap();
        assert!(!is_squarefree(&sq, &mut rng).unwrap());
        let lines = parse_poly(&q, "x0*x1*x2", None).unwrap();
        assert!(is_squarefree(&lines, &mut rng).unwrap());
    }

    #[test]
    fn hidden_square_over_prime_field() {
        let p = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g = parse_poly(&p, "x0^2 + 3*x1*x2 - x2^2", None).unwrap();
        let h = parse_poly(&p, "x0 + 2*x1 + 5*x2", None).unwrap();
        let f = &(&g * &g) * &h;
        assert!(!is_squarefree(&f, &mut rng).unwrap());
        assert!(is_squarefree(&(&g * &h), &mut rng).unwrap());
    }

    #[test]
    fn refuses_small_characteristic() {
        let p = PrimeField::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = parse_poly(&p, "x0^3 + x1^3 + x2^3", None).unwrap();
        assert!(matches!(
            is_squarefree(&f, &mut rng),
            Err(Error::CharacteristicTooSmall { p: 3, d: 3 })
        ));
    }
}
