use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{charpoly, determinant, Matrix};
use crate::poly::monomial::{monomials_of_degree, Monomial};
use crate::poly::multi::{MonomialIndex, MultiPoly};

/// Random changes of coordinates tried before the perturbation fallback.
pub const COORDINATE_RETRIES: usize = 5;

/// Degrees `(d_0, ..., d_n)` of a square homogeneous system in `n + 1`
/// variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DegreeVector {
    degrees: Vec<u32>,
    critical: u32,
}

impl DegreeVector {
    pub fn new(degrees: Vec<u32>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::Usage("empty degree vector".into()));
        }
        if degrees.contains(&0) {
            return Err(Error::Usage("resultant degrees must be positive".into()));
        }
        let critical = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
        Ok(Self { degrees, critical })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of variables, `n + 1`.
    pub fn nvars(&self) -> usize {
        self.degrees.len()
    }

    /// `sum (d_i - 1) + 1`, the degree of the Macaulay matrix columns.
    pub fn critical_degree(&self) -> u32 {
        self.critical
    }

    /// `prod_{j != i} d_j`: the degree of the resultant in the
    /// coefficients of slot `i`.
    pub fn coefficient_degree(&self, slot: usize) -> u64 {
        self.degrees
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != slot)
            .map(|(_, &d)| d as u64)
            .product()
    }
}

/// Index scaffolding of the Macaulay matrix for one degree vector.
///
/// Rows and columns are both indexed by the monomials of the critical
/// degree. The row of monomial `m` is `(m / y_i^{d_i}) * F_i` for the
/// smallest `i` with `y_i^{d_i} | m`; `M'` is the principal submatrix on
/// the monomials divisible by at least two of the `y_i^{d_i}`. With these
/// conventions `M = I` for the system `(y_0^{d_0}, ..., y_n^{d_n})`.
#[derive(Debug)]
pub struct MacaulayPlan {
    degrees: DegreeVector,
    columns: MonomialIndex,
    slot_monomials: Vec<MonomialIndex>,
    row_slot: Vec<usize>,
    /// `row_targets[r][k]`: column of `multiplier_r * slot_monomials[i][k]`.
    row_targets: Vec<Vec<usize>>,
    minor: Vec<usize>,
}

impl MacaulayPlan {
    pub fn new(degrees: DegreeVector) -> Self {
        let nv = degrees.nvars();
        let columns = MonomialIndex::new(monomials_of_degree(nv, degrees.critical_degree()));
        let slot_monomials: Vec<MonomialIndex> = degrees
            .degrees()
            .iter()
            .map(|&d| MonomialIndex::new(monomials_of_degree(nv, d)))
            .collect();
        let mut row_slot = Vec::with_capacity(columns.len());
        let mut row_targets = Vec::with_capacity(columns.len());
        let mut minor = Vec::new();
        for (r, m) in columns.monomials().iter().enumerate() {
            let divisible: Vec<usize> = (0..nv)
                .filter(|&i| m.exp(i) as u32 >= degrees.degrees()[i])
                .collect();
            let slot = divisible[0];
            if divisible.len() >= 2 {
                minor.push(r);
            }
            let pure = Monomial::var_pow(nv, slot, degrees.degrees()[slot] as u16);
            let multiplier = pure.quotient_of(m).expect("divisible");
            let targets = slot_monomials[slot]
                .monomials()
                .iter()
                .map(|a| columns.position(&a.mul(&multiplier)).expect("critical degree"))
                .collect();
            row_slot.push(slot);
            row_targets.push(targets);
        }
        Self {
            degrees,
            columns,
            slot_monomials,
            row_slot,
            row_targets,
            minor,
        }
    }

    pub fn degrees(&self) -> &DegreeVector {
        &self.degrees
    }

    /// Side length of `M`.
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// Side length of `M'`.
    pub fn minor_size(&self) -> usize {
        self.minor.len()
    }

    /// Monomials of degree `d_slot`, in the order used for dense slot
    /// coefficient vectors.
    pub fn slot_monomials(&self, slot: usize) -> &MonomialIndex {
        &self.slot_monomials[slot]
    }

    pub fn minor_indices(&self) -> &[usize] {
        &self.minor
    }

    /// Builds `M` from dense slot coefficient vectors.
    pub fn matrix<E: Clone>(&self, coeffs: &[Vec<E>], zero: E) -> Matrix<E> {
        let n = self.size();
        let mut m = Matrix::filled(n, n, zero);
        for r in 0..n {
            let slot = self.row_slot[r];
            for (k, &c) in self.row_targets[r].iter().enumerate() {
                m.set(r, c, coeffs[slot][k].clone());
            }
        }
        m
    }

    /// Dense coefficient vectors of a polynomial system, checking each
    /// nonzero polynomial has the declared degree.
    pub fn dense<F: Field>(&self, polys: &[MultiPoly<F>]) -> Result<Vec<Vec<F::Elem>>> {
        if polys.len() != self.degrees.nvars() {
            return Err(Error::Usage(format!(
                "expected {} polynomials, got {}",
                self.degrees.nvars(),
                polys.len()
            )));
        }
        polys
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if p.nvars() != self.degrees.nvars() {
                    return Err(Error::Usage(format!(
                        "polynomial {i} has {} variables, expected {}",
                        p.nvars(),
                        self.degrees.nvars()
                    )));
                }
                p.dense_coefficients(&self.slot_monomials[i]).ok_or_else(|| {
                    Error::Usage(format!(
                        "polynomial {i} is not homogeneous of degree {}",
                        self.degrees.degrees()[i]
                    ))
                })
            })
            .collect()
    }

    pub fn to_polys<F: Field>(&self, field: &F, coeffs: &[Vec<F::Elem>]) -> Vec<MultiPoly<F>> {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                MultiPoly::from_terms(
                    field,
                    self.degrees.nvars(),
                    self.slot_monomials[i].monomials().iter().cloned().zip(c.iter().cloned()),
                )
            })
            .collect()
    }
}

/// Macaulay resultant for a fixed degree vector over a fixed field.
///
/// The resultant is normalized by `Res(y_0^{d_0}, ..., y_n^{d_n}) = 1` and
/// computed as `det M / det M'`. When `det M' = 0` the system is moved by
/// random unimodular changes of coordinates (which leave the resultant
/// unchanged); if that keeps failing, the generic perturbation
/// `F_i + s y_i^{d_i}` is used, whose Macaulay matrices are `M + sI` and
/// `M' + sI`.
#[derive(Clone, Debug)]
pub struct MacaulayResultant<F: Field> {
    field: F,
    plan: Arc<MacaulayPlan>,
}

impl<F: Field> MacaulayResultant<F> {
    pub fn new(field: &F, degrees: DegreeVector) -> Self {
        Self {
            field: field.clone(),
            plan: Arc::new(MacaulayPlan::new(degrees)),
        }
    }

    pub fn plan(&self) -> &MacaulayPlan {
        &self.plan
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degrees(&self) -> &DegreeVector {
        self.plan.degrees()
    }

    pub fn eval<R: Rng + ?Sized>(&self, polys: &[MultiPoly<F>], rng: &mut R) -> Result<F::Elem> {
        let dense = self.plan.dense(polys)?;
        Ok(self.eval_dense(&dense, rng))
    }

    /// Resultant of a system given as dense slot coefficient vectors.
    pub fn eval_dense<R: Rng + ?Sized>(&self, coeffs: &[Vec<F::Elem>], rng: &mut R) -> F::Elem {
        let f = &self.field;
        if coeffs.iter().any(|c| c.iter().all(|v| f.is_zero(v))) {
            return f.zero();
        }
        if let Some(r) = self.quotient(coeffs) {
            return r;
        }
        for _ in 0..COORDINATE_RETRIES {
            let a = random_unimodular(f, self.degrees().nvars(), rng);
            let moved = self.transform(coeffs, &a);
            if let Some(r) = self.quotient(&moved) {
                return r;
            }
        }
        self.perturbed(coeffs)
    }

    /// `det M / det M'`, or `None` if `det M' = 0`.
    pub fn quotient(&self, coeffs: &[Vec<F::Elem>]) -> Option<F::Elem> {
        let f = &self.field;
        let m = self.plan.matrix(coeffs, f.zero());
        let minor = m.select(self.plan.minor_indices(), self.plan.minor_indices());
        let dm = determinant(f, &minor);
        if f.is_zero(&dm) {
            return None;
        }
        f.div(&determinant(f, &m), &dm)
    }

    /// System after the substitution `y -> A y`.
    pub fn transform(&self, coeffs: &[Vec<F::Elem>], a: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        let polys = self.plan.to_polys(&self.field, coeffs);
        let moved: Vec<MultiPoly<F>> = polys.iter().map(|p| p.linear_substitute(a)).collect();
        self.plan.dense(&moved).expect("degrees are preserved")
    }

    /// Trailing-coefficient extraction from `det(M + sI) / det(M' + sI)`.
    fn perturbed(&self, coeffs: &[Vec<F::Elem>]) -> F::Elem {
        let f = &self.field;
        let m = self.plan.matrix(coeffs, f.zero());
        let minor = m.select(self.plan.minor_indices(), self.plan.minor_indices());
        let full = charpoly(f, &m.map(|v| f.neg(v)));
        let part = charpoly(f, &minor.map(|v| f.neg(v)));
        let k = part.valuation().expect("characteristic polynomials are monic");
        f.div(&full.coeff(k), &part.coeff(k)).expect("nonzero trailing coefficient")
    }
}

/// `L U` with random unit-triangular factors, so the determinant is 1.
pub fn random_unimodular<F: Field, R: Rng + ?Sized>(
    field: &F,
    n: usize,
    rng: &mut R,
) -> Vec<Vec<F::Elem>> {
    let mut l = vec![vec![field.zero(); n]; n];
    let mut u = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        l[i][i] = field.one();
        u[i][i] = field.one();
        for j in 0..i {
            l[i][j] = field.random(rng);
            u[j][i] = field.random(rng);
        }
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(field.zero(), |acc, k| field.mul_add(&l[i][k], &u[k][j], &acc))
                })
                .collect()
        })
        .collect()
}

/// Resultant of `n + 1` homogeneous polynomials in `n + 1` variables with
/// the declared degrees. Zero polynomials are allowed and give 0.
pub fn resultant_scalar<F: Field, R: Rng + ?Sized>(
    polys: &[MultiPoly<F>],
    degrees: &DegreeVector,
    rng: &mut R,
) -> Result<F::Elem> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::Usage("empty system".into()))?;
    MacaulayResultant::new(&field, degrees.clone()).eval(polys, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::linalg::determinant;
    use crate::poly::parse::parse_poly;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn critical_degree_and_sizes() {
        let dv = DegreeVector::new(vec![1, 2, 1]).unwrap();
        assert_eq!(dv.critical_degree(), 2);
        let plan = MacaulayPlan::new(dv);
        assert_eq!(plan.size(), 6);
        // only y0*y2 is divisible by two of y0, y1^2, y2
        assert_eq!(plan.minor_size(), 1);
        assert!(DegreeVector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn pure_powers_give_one() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let dv = DegreeVector::new(vec![2, 3, 1]).unwrap();
        let polys = vec![
            parse_poly(&q, "x0^2", Some(3)).unwrap(),
            parse_poly(&q, "x1^3", Some(3)).unwrap(),
            parse_poly(&q, "x2", Some(3)).unwrap(),
        ];
        assert_eq!(resultant_scalar(&polys, &dv, &mut rng).unwrap(), q.one());
    }

    #[test]
    fn linear_forms_give_determinant() {
        let p = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let rows: Vec<Vec<u64>> = (0..3)
                .map(|_| (0..3).map(|_| p.random(&mut rng)).collect())
                .collect();
            let polys: Vec<_> = rows.iter().map(|r| MultiPoly::linear_form(&p, r)).collect();
            let dv = DegreeVector::new(vec![1, 1, 1]).unwrap();
            let res = resultant_scalar(&polys, &dv, &mut rng).unwrap();
            assert_eq!(res, determinant(&p, &Matrix::from_rows(rows)));
        }
    }

    #[test]
    fn zero_slot_short_circuits() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let dv = DegreeVector::new(vec![1, 2]).unwrap();
        let polys = vec![
            MultiPoly::zero(&q, 2),
            parse_poly(&q, "x0^2 + x1^2", None).unwrap(),
        ];
        assert_eq!(resultant_scalar(&polys, &dv, &mut rng).unwrap(), q.zero());
    }

    #[test]
    fn wrong_degree_is_a_usage_error() {
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let dv = DegreeVector::new(vec![1, 1]).unwrap();
        let polys = vec![
            parse_poly(&q, "x0^2", Some(2)).unwrap(),
            parse_poly(&q, "x1", Some(2)).unwrap(),
        ];
        assert!(matches!(
            resultant_scalar(&polys, &dv, &mut rng),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn fallbacks_agree_with_direct_quotient() {
        let p = PrimeField::new(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let dv = DegreeVector::new(vec![2, 2, 2]).unwrap();
        let res = MacaulayResultant::new(&p, dv);
        for _ in 0..10 {
            let coeffs: Vec<Vec<u64>> = (0..3)
                .map(|i| {
                    (0..res.plan().slot_monomials(i).len())
                        .map(|_| p.random(&mut rng))
                        .collect()
                })
                .collect();
            let direct = res.quotient(&coeffs).unwrap();
            assert_eq!(res.perturbed(&coeffs), direct);
            let a = random_unimodular(&p, 3, &mut rng);
            assert_eq!(res.quotient(&res.transform(&coeffs, &a)).unwrap(), direct);
        }
    }

    #[test]
    fn degenerate_minor_is_handled() {
        // det M' is the y0-coefficient of the linear form: zero here, but
        // the system is far from degenerate.
        let q = Rationals;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dv = DegreeVector::new(vec![1, 2, 1]).unwrap();
        let polys = vec![
            parse_poly(&q, "x1 + x2", Some(3)).unwrap(),
            parse_poly(&q, "x0^2 + x1^2 + 3*x2^2 + x0*x1", Some(3)).unwrap(),
            parse_poly(&q, "x0 - x1", Some(3)).unwrap(),
        ];
        let res = MacaulayResultant::new(&q, dv);
        assert!(res.quotient(&res.plan().dense(&polys).unwrap()).is_none());
        // common zero of the two lines is (1 : 1 : -1); Q there is 1+1+3+1 = 6
        assert_eq!(res.eval(&polys, &mut rng).unwrap(), q.from_i64(6));
    }
}
