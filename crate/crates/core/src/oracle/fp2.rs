use std::collections::HashSet;

use num_rational::BigRational;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};

/// `F_{p^2} = F_p[t] / (t^2 - r)` for the smallest quadratic non-residue
/// `r`. Elements are pairs `(a, b)` meaning `a + b t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    base: PrimeField,
    r: u64,
}

impl Fp2 {
    pub fn new(base: PrimeField) -> Self {
        let r = (2..base.modulus())
            .find(|&a| !base.is_square(a))
            .expect("odd primes have non-residues");
        Self { base, r }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    /// The constant `r` with `t^2 = r`.
    pub fn non_residue(&self) -> u64 {
        self.r
    }

    pub fn embed(&self, a: u64) -> (u64, u64) {
        (a, 0)
    }

    /// `Some(a)` when the element lies in the prime field.
    pub fn as_base(&self, x: &(u64, u64)) -> Option<u64> {
        (x.1 == 0).then_some(x.0)
    }
}

impl Field for Fp2 {
    type Elem = (u64, u64);

    fn zero(&self) -> (u64, u64) {
        (0, 0)
    }
    fn one(&self) -> (u64, u64) {
        (1, 0)
    }
    fn from_i64(&self, v: i64) -> (u64, u64) {
        (self.base.from_i64(v), 0)
    }
    fn from_rational(&self, r: &BigRational) -> Option<(u64, u64)> {
        self.base.from_rational(r).map(|a| (a, 0))
    }
    fn add(&self, x: &(u64, u64), y: &(u64, u64)) -> (u64, u64) {
        (self.base.add(&x.0, &y.0), self.base.add(&x.1, &y.1))
    }
    fn sub(&self, x: &(u64, u64), y: &(u64, u64)) -> (u64, u64) {
        (self.base.sub(&x.0, &y.0), self.base.sub(&x.1, &y.1))
    }
    fn mul(&self, x: &(u64, u64), y: &(u64, u64)) -> (u64, u64) {
        let k = &self.base;
        let re = k.add(&k.mul(&x.0, &y.0), &k.mul(&self.r, &k.mul(&x.1, &y.1)));
        let im = k.add(&k.mul(&x.0, &y.1), &k.mul(&x.1, &y.0));
        (re, im)
    }
    fn neg(&self, x: &(u64, u64)) -> (u64, u64) {
        (self.base.neg(&x.0), self.base.neg(&x.1))
    }
    fn inv(&self, x: &(u64, u64)) -> Option<(u64, u64)> {
        let k = &self.base;
        // (a + b t)(a - b t) = a^2 - r b^2, nonzero since r is not a square
        let norm = k.sub(&k.mul(&x.0, &x.0), &k.mul(&self.r, &k.mul(&x.1, &x.1)));
        let inv = k.inv(&norm)?;
        Some((k.mul(&x.0, &inv), k.neg(&k.mul(&x.1, &inv))))
    }
    fn is_zero(&self, x: &(u64, u64)) -> bool {
        *x == (0, 0)
    }
    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> (u64, u64) {
        (self.base.random(rng), self.base.random(rng))
    }
    fn distinct_elements<R: Rng + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<(u64, u64)>> {
        let p = self.base.modulus() as u128;
        if count as u128 > p * p {
            return Err(Error::FieldTooSmall {
                needed: count as u128,
                available: p * p,
            });
        }
        let mut seen = HashSet::with_capacity(count);
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let x = self.random(rng);
            if seen.insert(x) {
                out.push(x);
            }
        }
        Ok(out)
    }
    fn format(&self, x: &(u64, u64)) -> String {
        match x {
            (a, 0) => a.to_string(),
            (0, b) => format!("{b}*t"),
            (a, b) => format!("{a}+{b}*t"),
        }
    }
    fn name(&self) -> String {
        format!("F_{}^2", self.base.modulus())
    }
}
