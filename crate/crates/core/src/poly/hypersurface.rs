use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::multi::MultiPoly;
use crate::poly::squarefree::is_squarefree;
use crate::poly::taylor::taylor_system;

/// A validated hypersurface `V = Z(f)` in `P^n`: `f` squarefree and
/// homogeneous of degree `d >= 1` in `n + 1` variables, with its Taylor
/// system cached.
#[derive(Clone, Debug)]
pub struct Hypersurface<F: Field> {
    f: MultiPoly<F>,
    n: usize,
    d: u32,
    taylor: Vec<MultiPoly<F>>,
}

impl<F: Field> Hypersurface<F> {
    pub fn new<R: Rng + ?Sized>(f: MultiPoly<F>, rng: &mut R) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Usage("the zero polynomial defines no hypersurface".into()));
        }
        let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if d == 0 {
            return Err(Error::Usage("a nonzero constant defines the empty set".into()));
        }
        if f.nvars() < 2 {
            return Err(Error::Usage("need at least two homogeneous coordinates".into()));
        }
        if !is_squarefree(&f, rng)? {
            return Err(Error::NotSquarefree);
        }
        let taylor = taylor_system(&f);
        let hs = Self {
            n: f.nvars() - 1,
            d,
            f,
            taylor,
        };
        hs.spot_check_taylor(rng)?;
        Ok(hs)
    }

    /// [`Self::new`] with a private deterministic random source.
    pub fn with_seed(f: MultiPoly<F>, seed: u64) -> Result<Self> {
        Self::new(f, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Checks `f(p + t q) = f(p) + sum_k f_k(p, q) t^k / k!` at a few
    /// random points.
    fn spot_check_taylor<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<()> {
        let field = self.f.field();
        for _ in 0..3 {
            let p: Vec<F::Elem> = (0..=self.n).map(|_| field.random(rng)).collect();
            let q: Vec<F::Elem> = (0..=self.n).map(|_| field.random(rng)).collect();
            let line = self.f.substitute_line(&p, &q);
            if line.coeff(0) != self.f.evaluate(&p) {
                return Err(Error::Internal("line restriction disagrees with f(p)".into()));
            }
            let pq: Vec<F::Elem> = p.iter().chain(&q).cloned().collect();
            for (k, fk) in self.taylor.iter().enumerate() {
                let k = k as u64 + 1;
                let lhs = field.mul(&line.coeff(k as usize), &field.factorial(k));
                if lhs != fk.evaluate(&pq) {
                    return Err(Error::Internal(format!("Taylor identity fails at order {k}")));
                }
            }
        }
        Ok(())
    }

    pub fn poly(&self) -> &MultiPoly<F> {
        &self.f
    }

    pub fn field(&self) -> &F {
        self.f.field()
    }

    /// Dimension of the ambient projective space.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// `[f_1, ..., f_d]`, each in `2(n + 1)` variables.
    pub fn taylor(&self) -> &[MultiPoly<F>] {
        &self.taylor
    }

    pub fn contains(&self, p: &[F::Elem]) -> bool {
        self.field().is_zero(&self.f.evaluate(p))
    }

    /// `f_k(p, y)` for `k = 1..=count`, as polynomials in `y`.
    pub fn cone_equations(&self, p: &[F::Elem], count: usize) -> Vec<MultiPoly<F>> {
        self.taylor[..count]
            .iter()
            .map(|fk| fk.specialize(0, p))
            .collect()
    }

    /// True when every first partial derivative vanishes at `p`.
    pub fn is_singular_at(&self, p: &[F::Elem]) -> bool {
        self.cone_equations(p, 1)[0].is_zero()
    }
}
