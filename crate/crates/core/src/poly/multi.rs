use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::monomial::Monomial;
use crate::poly::univariate::UniPoly;

/// Sparse multivariate polynomial over an exact field.
///
/// Terms are kept in a map ordered by grevlex; zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly<F: Field> {
    field: F,
    nvars: usize,
    terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> PartialEq for MultiPoly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.field == other.field && self.terms == other.terms
    }
}

impl<F: Field> Eq for MultiPoly<F> {}

impl<F: Field> MultiPoly<F> {
    pub fn zero(field: &F, nvars: usize) -> Self {
        Self {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &F, nvars: usize, c: F::Elem) -> Self {
        Self::from_terms(field, nvars, [(Monomial::one(nvars), c)])
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        Self::from_terms(field, nvars, [(Monomial::var(nvars, i), field.one())])
    }

    /// Linear form `sum c_i x_i`.
    pub fn linear_form(field: &F, coeffs: &[F::Elem]) -> Self {
        let n = coeffs.len();
        Self::from_terms(
            field,
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    /// Sums repeated monomials and drops zeros.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, &c);
        }
        p
    }

    /// Like [`Self::from_terms`] but insists on a homogeneous result of the
    /// given degree.
    pub fn homogeneous(
        field: &F,
        nvars: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Monomial, F::Elem)>,
    ) -> Result<Self> {
        let p = Self::from_terms(field, nvars, terms);
        if p.terms.keys().any(|m| m.degree() != degree) {
            return Err(Error::NotHomogeneous);
        }
        Ok(p)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F::Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F::Elem)> {
        self.terms.into_iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> F::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &F::Elem)> {
        self.terms.last_key_value()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &F::Elem) {
        if self.field.is_zero(c) {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common degree of all terms, if the polynomial is nonzero and
    /// homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Bidegree with respect to the split `x = vars[..split]`,
    /// `y = vars[split..]`, if every term shares it.
    pub fn bidegree(&self, split: usize) -> Option<(u32, u32)> {
        let key = |m: &Monomial| {
            (
                m.partial_degree(0..split),
                m.partial_degree(split..self.nvars),
            )
        };
        let mut it = self.terms.keys();
        let first = key(it.next()?);
        it.all(|m| key(m) == first).then_some(first)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Usage(format!(
                "variable count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::Usage("field context mismatch".into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &self.field.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), self.field.mul(a, c)))
                .collect(),
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &F::Elem) -> Self {
        if self.field.is_zero(c) {
            return Self::zero(&self.field, self.nvars);
        }
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), self.field.mul(a, c)))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps: Vec<u16> = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(
                Monomial::new(exps),
                &self.field.mul(c, &self.field.from_u64(e as u64)),
            );
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|i| self.partial_derivative(i)).collect()
    }

    /// Exact value at a point.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.nvars, "point has wrong length");
        let f = &self.field;
        let max_exp: Vec<u16> = (0..self.nvars)
            .map(|i| self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0))
            .collect();
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .zip(&max_exp)
            .map(|(v, &e)| power_table(f, v, e))
            .collect();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Evaluates the variables `start..start + values.len()` and removes
    /// them, leaving a polynomial in the remaining variables.
    pub fn specialize(&self, start: usize, values: &[F::Elem]) -> Self {
        let end = start + values.len();
        assert!(end <= self.nvars);
        let f = &self.field;
        let powers: Vec<Vec<F::Elem>> = values
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let e = self.terms.keys().map(|m| m.exp(start + k)).max().unwrap_or(0);
                power_table(f, v, e)
            })
            .collect();
        let new_nvars = self.nvars - values.len();
        let mut out = Self::zero(f, new_nvars);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for k in 0..values.len() {
                let e = m.exp(start + k);
                if e > 0 {
                    t = f.mul(&t, &powers[k][e as usize]);
                }
            }
            let exps = m.exps()[..start].iter().chain(&m.exps()[end..]).copied();
            out.add_term(Monomial::new(exps), &t);
        }
        out
    }

    /// Substitutes polynomial `images[i]` for variable `i`. All images must
    /// share a variable count, which becomes the result's.
    pub fn compose(&self, images: &[MultiPoly<F>]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map_or(0, |p| p.nvars);
        let f = &self.field;
        let mut power_cache: Vec<Vec<MultiPoly<F>>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(f, p.nvars), p.clone()])
            .collect();
        let mut out = Self::zero(f, target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(f, target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while power_cache[i].len() <= e as usize {
                    let next = &power_cache[i][power_cache[i].len() - 1] * &images[i];
                    power_cache[i].push(next);
                }
                t = &t * &power_cache[i][e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, &cc);
            }
        }
        out
    }

    /// Linear change of variables `x_i -> sum_j a[i][j] y_j`.
    pub fn linear_substitute(&self, a: &[Vec<F::Elem>]) -> Self {
        let images: Vec<_> = a
            .iter()
            .map(|row| MultiPoly::linear_form(&self.field, row))
            .collect();
        self.compose(&images)
    }

    /// Restriction `t -> self(p + t q)` to a parametrized line, as an exact
    /// univariate polynomial of degree at most `deg self`.
    pub fn substitute_line(&self, p: &[F::Elem], q: &[F::Elem]) -> UniPoly<F> {
        assert_eq!(p.len(), self.nvars);
        assert_eq!(q.len(), self.nvars);
        let f = &self.field;
        let lines: Vec<UniPoly<F>> = p
            .iter()
            .zip(q)
            .map(|(a, b)| UniPoly::new(f, vec![a.clone(), b.clone()]))
            .collect();
        let mut cache: Vec<Vec<UniPoly<F>>> = lines
            .iter()
            .map(|l| vec![UniPoly::one(f), l.clone()])
            .collect();
        let mut acc = UniPoly::zero(f);
        for (m, c) in &self.terms {
            let mut t = UniPoly::constant(f, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = cache[i].last().unwrap().mul(&lines[i]);
                    cache[i].push(next);
                }
                t = t.mul(&cache[i][e as usize]);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Re-embeds into `total` variables, placing variable `i` at
    /// `offset + i`.
    pub fn embed(&self, total: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= total);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = vec![0u16; total];
            exps[offset..offset + self.nvars].copy_from_slice(m.exps());
            (Monomial::new(exps), c.clone())
        });
        Self::from_terms(&self.field, total, terms)
    }

    /// Coefficient-wise image in another field.
    pub fn map_field<G: Field>(
        &self,
        target: &G,
        mut map: impl FnMut(&F::Elem) -> G::Elem,
    ) -> MultiPoly<G> {
        MultiPoly::from_terms(
            target,
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), map(c))),
        )
    }

    /// Dense coefficient vector against a fixed monomial list; monomials
    /// not in the list are an error.
    pub fn dense_coefficients(&self, index: &MonomialIndex) -> Option<Vec<F::Elem>> {
        let mut out = vec![self.field.zero(); index.len()];
        for (m, c) in &self.terms {
            out[index.position(m)?] = c.clone();
        }
        Some(out)
    }

    /// Makes the leading coefficient one (no-op on zero).
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// True if `self = c * other` for some nonzero scalar `c`.
    pub fn is_proportional_to(&self, other: &Self) -> bool {
        match (self.leading_term(), other.leading_term()) {
            (None, None) => true,
            (Some((ma, ca)), Some((mb, cb))) if ma == mb => {
                let ratio = self.field.div(ca, cb).expect("nonzero");
                *self == other.scale(&ratio)
            }
            _ => false,
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a VarNames) -> PolyDisplay<'a, F> {
        PolyDisplay { poly: self, names }
    }
}

fn power_table<F: Field>(f: &F, v: &F::Elem, max: u16) -> Vec<F::Elem> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(f.one());
    for k in 1..=max as usize {
        let next = f.mul(&out[k - 1], v);
        out.push(next);
    }
    out
}

/// Position lookup for a fixed list of monomials.
#[derive(Clone, Debug)]
pub struct MonomialIndex {
    monomials: Vec<Monomial>,
    positions: std::collections::HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            monomials,
            positions,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }
}

/// How variables are printed: `x0..` followed optionally by `y0..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarNames {
    /// Number of leading variables named `x*`; the rest are `y*`.
    pub x_count: usize,
}

impl VarNames {
    pub fn plain() -> Self {
        Self { x_count: usize::MAX }
    }

    pub fn bihomogeneous(x_count: usize) -> Self {
        Self { x_count }
    }

    pub fn name(&self, i: usize) -> String {
        if i < self.x_count {
            format!("x{i}")
        } else {
            format!("y{}", i - self.x_count)
        }
    }
}

pub struct PolyDisplay<'a, F: Field> {
    poly: &'a MultiPoly<F>,
    names: &'a VarNames,
}

impl<F: Field> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = &self.poly.field;
        if self.poly.is_zero() {
            return write!(out, "0");
        }
        for (k, (m, c)) in self.poly.terms().enumerate() {
            let text = field.format(c);
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, negative) {
                (0, true) => write!(out, "-")?,
                (0, false) => {}
                (_, true) => write!(out, " - ")?,
                (_, false) => write!(out, " + ")?,
            }
            let vars: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.names.name(i)
                    } else {
                        format!("{}^{}", self.names.name(i), e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(out, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(out, "{}", vars.join("*"))?;
            } else {
                write!(out, "{magnitude}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<F: Field> fmt::Display for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&VarNames::plain()))
    }
}

impl<F: Field> fmt::Debug for MultiPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.field.name(), self)
    }
}

// Operator forms panic on mismatched operands; use the `checked_*` methods
// when the operands come from user input.

impl<F: Field> Add for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn add(self, rhs: Self) -> MultiPoly<F> {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Sub for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn sub(self, rhs: Self) -> MultiPoly<F> {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Mul for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn mul(self, rhs: Self) -> MultiPoly<F> {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl<F: Field> Neg for &MultiPoly<F> {
    type Output = MultiPoly<F>;
    fn neg(self) -> MultiPoly<F> {
        self.scale(&self.field.neg(&self.field.one()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn x(i: usize) -> MultiPoly<Rationals> {
        MultiPoly::var(&Rationals, 3, i)
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        let rhs = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.to_string(), "x0^2 - x1^2");
    }

    #[test]
    fn multiplication_by_zero_is_empty() {
        let z = MultiPoly::zero(&Rationals, 3);
        let p = &(&x(0) + &x(2)) * &z;
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn binomial_cube_matches_repeated_multiplication() {
        let s = &x(0) + &x(1);
        let cube = s.pow(3);
        let repeated = &(&s * &s) * &s;
        assert_eq!(cube, repeated);
        let q = Rationals;
        let coeffs: Vec<String> = cube.terms().map(|(_, c)| q.format(c)).collect();
        assert_eq!(coeffs, ["1", "3", "3", "1"]);
    }

    #[test]
    fn derivative_rules() {
        let cube = x(0).pow(3);
        assert_eq!(cube.partial_derivative(0), x(0).pow(2).scale(&Rationals.from_i64(3)));
        assert!((&x(0) * &x(1)).partial_derivative(2).is_zero());
    }

    #[test]
    fn evaluation() {
        let q = Rationals;
        let p = &x(0).pow(2) + &x(1);
        let v = p.evaluate(&[q.from_i64(2), q.from_i64(3), q.from_i64(9)]);
        assert_eq!(v, q.from_i64(7));
        let fermat = &(&x(0).pow(3) + &x(1).pow(3)) + &x(2).pow(3);
        assert!(q.is_zero(&fermat.evaluate(&[q.from_i64(1), q.from_i64(-1), q.zero()])));
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let a = MultiPoly::var(&Rationals, 2, 0);
        let b = MultiPoly::var(&Rationals, 3, 0);
        assert!(matches!(a.checked_add(&b), Err(Error::Usage(_))));
        let f7 = PrimeField::new(7).unwrap();
        let f11 = PrimeField::new(11).unwrap();
        let c = MultiPoly::var(&f7, 2, 0);
        let d = MultiPoly::var(&f11, 2, 0);
        assert!(c.checked_mul(&d).is_err());
    }

    #[test]
    fn line_restriction_of_conic() {
        let q = Rationals;
        let conic = &(&x(0) * &x(2)) - &x(1).pow(2);
        let u = conic.substitute_line(
            &[q.one(), q.zero(), q.zero()],
            &[q.zero(), q.one(), q.zero()],
        );
        assert_eq!(u.coeffs(), &[q.zero(), q.zero(), q.from_i64(-1)]);
        // degenerate direction gives the constant f(p)
        let p = [q.from_i64(2), q.from_i64(1), q.from_i64(5)];
        let u0 = conic.substitute_line(&p, &[q.zero(), q.zero(), q.zero()]);
        assert_eq!(u0.coeffs(), &[conic.evaluate(&p)]);
    }

    #[test]
    fn specialization_and_embedding() {
        let q = Rationals;
        // p(x0, x1, y0) = x0*y0 + x1^2
        let p = MultiPoly::from_terms(
            &q,
            3,
            [
                (Monomial::new([1, 0, 1]), q.one()),
                (Monomial::new([0, 2, 0]), q.one()),
            ],
        );
        let s = p.specialize(0, &[q.from_i64(2), q.from_i64(3)]);
        assert_eq!(s.nvars(), 1);
        assert_eq!(s.to_string(), "2*x0 + 9");
        let e = s.embed(3, 2);
        assert_eq!(e.to_string(), "2*x2 + 9");
    }
}
