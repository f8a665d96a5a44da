use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 8]>;

/// A monomial `x^a`, stored as its exponent vector. Ordered by graded
/// reverse lexicographic order with `x0 > x1 > ... > xn`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u16>) -> Self {
        Self {
            exps: exps.into_iter().collect(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m
    }

    /// `x_i^e`
    pub fn var_pow(nvars: usize, i: usize, e: u16) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = e;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Degree in the variables `range` only.
    pub fn partial_degree(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        Self {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| Self {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        })
    }

    /// Extend with zero exponents for `extra` new trailing variables.
    pub fn extended(&self, extra: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat_n(0, extra));
        Self { exps }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.exps.as_slice())
    }
}

/// All monomials of total degree `deg` in `nvars` variables, in decreasing
/// grevlex order.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(binomial(deg as usize + nvars - 1, nvars - 1));
    let mut current = vec![0u16; nvars];
    fill(&mut current, 0, deg, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

fn fill(current: &mut [u16], idx: usize, remaining: u32, out: &mut Vec<Monomial>) {
    if idx + 1 == current.len() {
        current[idx] = remaining as u16;
        out.push(Monomial::new(current.iter().copied()));
        return;
    }
    for e in 0..=remaining {
        current[idx] = e as u16;
        fill(current, idx + 1, remaining - e, out);
    }
    current[idx] = 0;
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_small_cases() {
        let m = |e: &[u16]| Monomial::new(e.iter().copied());
        // degree first
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
        // x0^2 > x0x1 > x1^2 > x0x2 > x1x2 > x2^2
        let order = monomials_of_degree(3, 2);
        let expected = [
            m(&[2, 0, 0]),
            m(&[1, 1, 0]),
            m(&[0, 2, 0]),
            m(&[1, 0, 1]),
            m(&[0, 1, 1]),
            m(&[0, 0, 2]),
        ];
        assert_eq!(order, expected);
    }

    #[test]
    fn monomial_counts_match_binomials() {
        for nvars in 1..5 {
            for deg in 0..7 {
                assert_eq!(
                    monomials_of_degree(nvars, deg).len(),
                    binomial(deg as usize + nvars - 1, nvars - 1)
                );
            }
        }
    }

    #[test]
    fn division() {
        let a = Monomial::new([1, 2, 0]);
        let b = Monomial::new([2, 3, 1]);
        assert_eq!(a.quotient_of(&b), Some(Monomial::new([1, 1, 1])));
        assert_eq!(b.quotient_of(&a), None);
    }
}
