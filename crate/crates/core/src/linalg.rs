//! Dense exact linear algebra over a [`Field`].

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::univariate::UniPoly;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Self {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn map<G>(&self, f: impl FnMut(&E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
///
/// Every intermediate entry is a minor of the input, so over `Q` with
/// integral entries no fractions ever appear.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return field.one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev_inv = field.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !field.is_zero(a.get(i, k))) else {
            return field.zero();
        };
        if piv != k {
            a.swap_rows(piv, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        let pivot = a.get(k, k).clone();
        let pivot_row: Vec<F::Elem> = a.row(k).to_vec();
        let cols = a.cols;
        // (row * pivot - lead * pivot_row) / prev, split so that zero
        // entries of sparse matrices cost nothing
        let scale = field.mul(&pivot, &prev_inv);
        let unit_scale = field.is_one(&scale);
        for i in k + 1..n {
            let lead = a.get(i, k).clone();
            let row = &mut a.data[i * cols..(i + 1) * cols];
            if field.is_zero(&lead) {
                if !unit_scale {
                    for x in &mut row[k + 1..n] {
                        if !field.is_zero(x) {
                            *x = field.mul(x, &scale);
                        }
                    }
                }
                continue;
            }
            let lead = field.mul(&lead, &prev_inv);
            for j in k + 1..n {
                if !unit_scale && !field.is_zero(&row[j]) {
                    row[j] = field.mul(&row[j], &scale);
                }
                if !field.is_zero(&pivot_row[j]) {
                    row[j] = field.sub(&row[j], &field.mul(&lead, &pivot_row[j]));
                }
            }
            row[k] = field.zero();
        }
        prev_inv = field.inv(&pivot).expect("nonzero pivot");
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        field.neg(&d)
    } else {
        d
    }
}

/// Characteristic polynomial `det(t I - A)` via reduction to Hessenberg
/// form.
pub fn charpoly<F: Field>(field: &F, m: &Matrix<F::Elem>) -> UniPoly<F> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut h = m.clone();
    for col in 1..n.saturating_sub(1) {
        let Some(i) = (col..n).find(|&i| !field.is_zero(h.get(i, col - 1))) else {
            continue;
        };
        if i != col {
            h.swap_rows(i, col);
            for r in 0..n {
                h.data.swap(r * n + i, r * n + col);
            }
        }
        let inv_t = field.inv(h.get(col, col - 1)).unwrap();
        for i in col + 1..n {
            let u = field.mul(h.get(i, col - 1), &inv_t);
            if field.is_zero(&u) {
                continue;
            }
            for j in 0..n {
                let v = field.sub(h.get(i, j), &field.mul(&u, h.get(col, j)));
                h.set(i, j, v);
            }
            for j in 0..n {
                let v = field.add(h.get(j, col), &field.mul(&u, h.get(j, i)));
                h.set(j, col, v);
            }
        }
    }
    let mut polys: Vec<UniPoly<F>> = vec![UniPoly::one(field)];
    for k in 1..=n {
        let lin = UniPoly::new(field, vec![field.neg(h.get(k - 1, k - 1)), field.one()]);
        let mut pk = lin.mul(&polys[k - 1]);
        let mut t = field.one();
        for i in 1..k {
            t = field.mul(&t, h.get(k - i, k - i - 1));
            let c = field.mul(&t, h.get(k - i - 1, k - 1));
            pk = pk.sub(&polys[k - i - 1].scale(&c));
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

/// Row echelon reduction of an augmented system; returns the pivot columns.
fn eliminate<F: Field>(field: &F, a: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        a.swap_rows(piv, r);
        let inv = field.inv(a.get(r, c)).unwrap();
        let pivot_row: Vec<F::Elem> = a.row(r).iter().map(|v| field.mul(v, &inv)).collect();
        a.data[r * cols..(r + 1) * cols].clone_from_slice(&pivot_row);
        a.data
            .par_chunks_mut(cols)
            .enumerate()
            .filter(|(i, _)| *i != r)
            .for_each(|(_, row)| {
                let lead = row[c].clone();
                if field.is_zero(&lead) {
                    return;
                }
                for j in c..cols {
                    row[j] = field.sub(&row[j], &field.mul(&lead, &pivot_row[j]));
                }
            });
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    eliminate(field, &mut a).len()
}

/// Unique solution of `A x = b` (`A` may have more rows than columns).
/// Fails if the system is inconsistent or underdetermined.
pub fn solve<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let n = a.cols;
    let mut aug = Matrix::filled(a.rows, n + 1, field.zero());
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, n, b[i].clone());
    }
    let pivots = eliminate(field, &mut aug);
    if pivots.last() == Some(&n) {
        return Err(Error::Internal("inconsistent linear system".into()));
    }
    if pivots.len() < n {
        return Err(Error::Internal("underdetermined linear system".into()));
    }
    Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
}

/// A basis of the right kernel of `A`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = eliminate(field, &mut a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![field.zero(); a.cols];
            v[fc] = field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn leibniz<F: Field>(field: &F, m: &Matrix<F::Elem>) -> F::Elem {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], false)];
            }
            let mut out = Vec::new();
            for (p, odd) in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push((q, odd ^ ((p.len() - pos) % 2 == 1)));
                }
            }
            out
        }
        let n = m.rows();
        let mut acc = field.zero();
        for (p, odd) in perms(n) {
            let mut t = field.one();
            for (i, &j) in p.iter().enumerate() {
                t = field.mul(&t, m.get(i, j));
            }
            acc = if odd { field.sub(&acc, &t) } else { field.add(&acc, &t) };
        }
        acc
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let f = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..6 {
            for trial in 0..20 {
                let mut m = Matrix::filled(n, n, 0u64);
                for i in 0..n {
                    for j in 0..n {
                        // sprinkle zeros to exercise pivoting
                        if (i + j + trial) % 3 != 0 {
                            m.set(i, j, f.random(&mut rng));
                        }
                    }
                }
                assert_eq!(determinant(&f, &m), leibniz(&f, &m));
            }
        }
    }

    #[test]
    fn bareiss_over_rationals() {
        let q = Rationals;
        let m = Matrix::from_rows(vec![
            vec![q.from_i64(0), q.from_i64(2), q.from_i64(3)],
            vec![q.from_i64(4), q.from_i64(5), q.from_i64(6)],
            vec![q.from_i64(7), q.from_i64(8), q.from_i64(10)],
        ]);
        assert_eq!(determinant(&q, &m), leibniz(&q, &m));
    }

    #[test]
    fn charpoly_matches_pointwise_determinants() {
        let f = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 1..7 {
            let mut m = Matrix::filled(n, n, 0u64);
            for i in 0..n {
                for j in 0..n {
                    if (i * 7 + j) % 4 != 1 {
                        m.set(i, j, f.random(&mut rng));
                    }
                }
            }
            let cp = charpoly(&f, &m);
            assert_eq!(cp.degree(), Some(n));
            for t in [0u64, 1, 5, 77] {
                let mut shifted = m.map(|v| f.neg(v));
                for i in 0..n {
                    shifted.set(i, i, f.add(shifted.get(i, i), &t));
                }
                assert_eq!(cp.evaluate(&t), determinant(&f, &shifted));
            }
        }
    }

    #[test]
    fn solve_and_kernel() {
        let q = Rationals;
        let a = Matrix::from_rows(vec![
            vec![q.from_i64(1), q.from_i64(2)],
            vec![q.from_i64(3), q.from_i64(4)],
            vec![q.from_i64(5), q.from_i64(6)],
        ]);
        let x = solve(&q, &a, &[q.from_i64(5), q.from_i64(11), q.from_i64(17)]).unwrap();
        assert_eq!(x, vec![q.from_i64(1), q.from_i64(2)]);
        assert!(solve(&q, &a, &[q.from_i64(5), q.from_i64(11), q.from_i64(18)]).is_err());
        let sing = Matrix::from_rows(vec![
            vec![q.from_i64(1), q.from_i64(2), q.from_i64(3)],
            vec![q.from_i64(2), q.from_i64(4), q.from_i64(6)],
        ]);
        let ker = kernel(&q, &sing);
        assert_eq!(ker.len(), 2);
        assert_eq!(rank(&q, &sing), 1);
    }
}
