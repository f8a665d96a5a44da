use rand::Rng;

use crate::field::{Field, PrimeField};

/// Dense univariate polynomial, coefficients from the constant term up.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug)]
pub struct UniPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> PartialEq for UniPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: Field> UniPoly<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = Self {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// `c * t^k`
    pub fn monomial(field: &F, k: usize, c: F::Elem) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F::Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `t`-adic valuation; `None` for the zero polynomial (infinite).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f.add(&self.coeff(k), &other.coeff(k)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| f.sub(&self.coeff(k), &other.coeff(k)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut coeffs = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.mul_add(a, b, &coeffs[i + j]);
            }
        }
        Self::new(f, coeffs)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(
            &self.field,
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn derivative(&self) -> Self {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| f.mul(c, &f.from_u64(k as u64)))
            .collect();
        Self::new(f, coeffs)
    }

    pub fn evaluate(&self, t: &F::Elem) -> F::Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.mul_add(&acc, t, c))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = &self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(divisor.leading_coeff().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(&rem[k], &inv_lead);
            if f.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, b));
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&self.field.inv(c).unwrap()),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// True when the polynomial has no repeated factor. Only meaningful when
    /// the characteristic exceeds the degree.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

/// Lagrange interpolation through `(xs[i], ys[i])`; the abscissae must be
/// pairwise distinct.
pub fn interpolate<F: Field>(field: &F, xs: &[F::Elem], ys: &[F::Elem]) -> UniPoly<F> {
    assert_eq!(xs.len(), ys.len());
    // Newton divided differences, then expand the Newton form.
    let n = xs.len();
    let mut dd: Vec<F::Elem> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = field.sub(&dd[i], &dd[i - 1]);
            let den = field.sub(&xs[i], &xs[i - level]);
            dd[i] = field.div(&num, &den).expect("interpolation nodes must be distinct");
        }
    }
    let mut acc = UniPoly::zero(field);
    for i in (0..n).rev() {
        // acc = acc * (t - xs[i]) + dd[i]
        let lin = UniPoly::new(field, vec![field.neg(&xs[i]), field.one()]);
        acc = acc.mul(&lin).add(&UniPoly::constant(field, dd[i].clone()));
    }
    acc
}

impl UniPoly<PrimeField> {
    /// Distinct roots in `F_p`, sorted. Uses the `gcd(u, t^p - t)` filter
    /// followed by randomized equal-degree splitting.
    pub fn roots<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let f = *self.field();
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = f.modulus();
        let t = UniPoly::new(&f, vec![0, 1]);
        let tp = t.pow_mod(p as u128, self);
        let g = self.gcd(&tp.sub(&t));
        let mut roots = Vec::new();
        split_linear_factors(&g, rng, &mut roots);
        roots.sort_unstable();
        roots.dedup();
        roots
    }
}

fn split_linear_factors<R: Rng + ?Sized>(
    g: &UniPoly<PrimeField>,
    rng: &mut R,
    roots: &mut Vec<u64>,
) {
    let f = *g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            let g = g.monic();
            roots.push(f.neg(&g.coeffs()[0]));
            return;
        }
        _ => {}
    }
    let p = f.modulus();
    loop {
        let a = f.random(rng);
        let shift = UniPoly::new(&f, vec![a, 1]);
        let h = shift.pow_mod(((p - 1) / 2) as u128, g).sub(&UniPoly::one(&f));
        let d = g.gcd(&h);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < g.degree().unwrap() {
            let (other, _) = g.div_rem(&d);
            split_linear_factors(&d, rng, roots);
            split_linear_factors(&other, rng, roots);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gcd_detects_repeated_roots() {
        let q = Rationals;
        let lin = |a: i64| UniPoly::new(&q, vec![q.from_i64(-a), q.one()]);
        let u = lin(1).mul(&lin(1)).mul(&lin(2));
        assert!(!u.is_squarefree());
        assert!(lin(1).mul(&lin(2)).is_squarefree());
        assert_eq!(u.gcd(&u.derivative()), lin(1));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = PrimeField::new(101).unwrap();
        let u = UniPoly::new(&f, vec![3, 0, 7, 100, 1]);
        let xs: Vec<u64> = (10..15).collect();
        let ys: Vec<u64> = xs.iter().map(|x| u.evaluate(x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), u);
    }

    #[test]
    fn prime_field_roots() {
        let f = PrimeField::new(10007).unwrap();
        let mut u = UniPoly::one(&f);
        for r in [5u64, 17, 9000] {
            u = u.mul(&UniPoly::new(&f, vec![f.neg(&r), 1]));
        }
        // irreducible quadratic factor t^2 - 5 (5 is a non-residue mod 10007?)
        let nonres = (2..).find(|&a| !f.is_square(a)).unwrap();
        u = u.mul(&UniPoly::new(&f, vec![f.neg(&nonres), 0, 1]));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(u.roots(&mut rng), vec![5, 17, 9000]);
    }

    #[test]
    fn division_identity() {
        let f = PrimeField::new(31).unwrap();
        let a = UniPoly::new(&f, vec![1, 2, 3, 4, 5, 6]);
        let b = UniPoly::new(&f, vec![7, 0, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }
}
