use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::oracle::fp2::Fp2;

/// Largest number of points an enumeration may visit.
pub const MAX_POINTS: u64 = 10_000_000;

/// The points of `P^n(F_q)`, `q = p^e` with `e` in `{1, 2}`, each listed
/// once with its first nonzero coordinate equal to 1. Coordinates are
/// elements of [`Fp2`]; for `e = 1` they all lie in the prime field.
#[derive(Clone, Debug)]
pub struct EnumerationDomain {
    field: Fp2,
    extension: u32,
    nvars: usize,
}

impl EnumerationDomain {
    pub fn new(p: u64, extension: u32, n: usize) -> Result<Self> {
        if !(1..=2).contains(&extension) {
            return Err(Error::Usage("extension degree must be 1 or 2".into()));
        }
        let base = PrimeField::new(p)?;
        let domain = Self {
            field: Fp2::new(base),
            extension,
            nvars: n + 1,
        };
        match domain.count() {
            Some(c) if c <= MAX_POINTS => Ok(domain),
            _ => Err(Error::Usage(format!(
                "P^{n}(F_{p}^{extension}) has more than {MAX_POINTS} points"
            ))),
        }
    }

    pub fn field(&self) -> &Fp2 {
        &self.field
    }

    pub fn prime(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn extension(&self) -> u32 {
        self.extension
    }

    /// `q = p^e`.
    pub fn order(&self) -> u64 {
        self.prime().pow(self.extension)
    }

    /// `(q^{n+1} - 1) / (q - 1)`, or `None` on overflow.
    pub fn count(&self) -> Option<u64> {
        let q = self.order();
        (0..self.nvars as u32).try_fold(0u64, |acc, k| acc.checked_add(q.checked_pow(k)?))
    }

    fn element(&self, code: u64) -> (u64, u64) {
        let p = self.prime();
        if self.extension == 1 {
            (code, 0)
        } else {
            (code % p, code / p)
        }
    }

    /// Points whose leading 1 sits at `lead`, as a parallel shard.
    fn shard(&self, lead: usize) -> impl ParallelIterator<Item = Vec<(u64, u64)>> + '_ {
        let q = self.order();
        let free = self.nvars - lead - 1;
        (0..q.pow(free as u32)).into_par_iter().map(move |mut code| {
            let mut pt = vec![(0, 0); self.nvars];
            pt[lead] = (1, 0);
            for slot in pt.iter_mut().skip(lead + 1) {
                *slot = self.element(code % q);
                code /= q;
            }
            pt
        })
    }

    /// Every point satisfying `keep`, in canonical order.
    pub fn filter<P>(&self, keep: P) -> Vec<Vec<(u64, u64)>>
    where
        P: Fn(&[(u64, u64)]) -> bool + Sync,
    {
        let mut out: Vec<Vec<(u64, u64)>> = (0..self.nvars)
            .flat_map(|lead| self.shard(lead).filter(|pt| keep(pt)).collect::<Vec<_>>())
            .collect();
        out.sort();
        out
    }

    pub fn points(&self) -> Vec<Vec<(u64, u64)>> {
        self.filter(|_| true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn point_counts() {
        for (p, e, n) in [(3, 1, 2), (5, 1, 3), (3, 2, 2), (7, 2, 1)] {
            let dom = EnumerationDomain::new(p, e, n).unwrap();
            let pts = dom.points();
            let q = p.pow(e);
            let expected = (q.pow(n as u32 + 1) - 1) / (q - 1);
            assert_eq!(pts.len() as u64, expected);
            assert_eq!(dom.count(), Some(expected));
            let distinct: HashSet<_> = pts.iter().collect();
            assert_eq!(distinct.len(), pts.len());
        }
    }

    #[test]
    fn refuses_huge_domains() {
        assert!(EnumerationDomain::new(101, 2, 3).is_err());
    }
}
