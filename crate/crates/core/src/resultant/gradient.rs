//! Coefficient-space gradients of the resultant and recovery of a unique
//! common zero from them.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::multi::MultiPoly;
use crate::poly::univariate::interpolate;
use crate::resultant::macaulay::{random_unimodular, DegreeVector, MacaulayResultant, COORDINATE_RETRIES};

/// First-order jet `re + eps * ε` with `ε^2 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualScalar<E> {
    pub re: E,
    pub eps: E,
}

impl<E: Clone> DualScalar<E> {
    pub fn new(re: E, eps: E) -> Self {
        Self { re, eps }
    }
}

/// Arithmetic in `K[ε]/(ε^2)` for a base field `K`.
struct Jets<'a, F: Field>(&'a F);

impl<F: Field> Jets<'_, F> {
    fn zero(&self) -> DualScalar<F::Elem> {
        DualScalar::new(self.0.zero(), self.0.zero())
    }

    fn sub(&self, a: &DualScalar<F::Elem>, b: &DualScalar<F::Elem>) -> DualScalar<F::Elem> {
        DualScalar::new(self.0.sub(&a.re, &b.re), self.0.sub(&a.eps, &b.eps))
    }

    fn mul(&self, a: &DualScalar<F::Elem>, b: &DualScalar<F::Elem>) -> DualScalar<F::Elem> {
        let f = self.0;
        DualScalar::new(
            f.mul(&a.re, &b.re),
            f.add(&f.mul(&a.re, &b.eps), &f.mul(&a.eps, &b.re)),
        )
    }

    fn neg(&self, a: &DualScalar<F::Elem>) -> DualScalar<F::Elem> {
        DualScalar::new(self.0.neg(&a.re), self.0.neg(&a.eps))
    }

    /// Inverse of a unit (`re != 0`).
    fn inv(&self, a: &DualScalar<F::Elem>) -> Option<DualScalar<F::Elem>> {
        let f = self.0;
        let ir = f.inv(&a.re)?;
        Some(DualScalar::new(
            ir.clone(),
            f.neg(&f.mul(&a.eps, &f.mul(&ir, &ir))),
        ))
    }

    fn is_zero(&self, a: &DualScalar<F::Elem>) -> bool {
        self.0.is_zero(&a.re) && self.0.is_zero(&a.eps)
    }

    fn scalar(&self, a: F::Elem) -> DualScalar<F::Elem> {
        DualScalar::new(a, self.0.zero())
    }

    /// Determinant over the local ring `K[ε]/(ε^2)`.
    ///
    /// Gaussian elimination still works there: pivot on a unit when the
    /// column has one; otherwise every entry is a multiple of `ε` and the
    /// one with a nonzero `ε` part divides all the others.
    fn det(&self, m: &Matrix<DualScalar<F::Elem>>) -> DualScalar<F::Elem> {
        let f = self.0;
        let n = m.rows();
        let mut a = m.clone();
        let mut negate = false;
        for k in 0..n {
            let unit = (k..n).find(|&i| !f.is_zero(&a.get(i, k).re));
            let piv = match unit.or_else(|| (k..n).find(|&i| !f.is_zero(&a.get(i, k).eps))) {
                Some(p) => p,
                None => return self.zero(),
            };
            if piv != k {
                a.swap_rows(piv, k);
                negate = !negate;
            }
            let pivot = a.get(k, k).clone();
            let pivot_row: Vec<_> = a.row(k).to_vec();
            for i in k + 1..n {
                let lead = a.get(i, k).clone();
                if self.is_zero(&lead) {
                    continue;
                }
                let factor = match self.inv(&pivot) {
                    Some(ip) => self.mul(&lead, &ip),
                    // both are pure ε multiples; the ratio is a scalar
                    None => self.scalar(f.div(&lead.eps, &pivot.eps).unwrap()),
                };
                for j in k..n {
                    let v = self.sub(a.get(i, j), &self.mul(&factor, &pivot_row[j]));
                    a.set(i, j, v);
                }
            }
        }
        let mut d = DualScalar::new(f.one(), f.zero());
        for k in 0..n {
            d = self.mul(&d, a.get(k, k));
        }
        if negate {
            self.neg(&d)
        } else {
            d
        }
    }
}

impl<F: Field> MacaulayResultant<F> {
    /// `Res` and its derivative along the direction `dir` (a dense
    /// coefficient perturbation of the whole system), via one dual-number
    /// Macaulay quotient. `None` when `det M'` vanishes at `coeffs`.
    pub fn directional_jet(
        &self,
        coeffs: &[Vec<F::Elem>],
        dir: &[Vec<F::Elem>],
    ) -> Option<DualScalar<F::Elem>> {
        let jets = Jets(self.field());
        let dual: Vec<Vec<DualScalar<F::Elem>>> = coeffs
            .iter()
            .zip(dir)
            .map(|(c, e)| {
                c.iter()
                    .zip(e)
                    .map(|(a, b)| DualScalar::new(a.clone(), b.clone()))
                    .collect()
            })
            .collect();
        let m = self.plan().matrix(&dual, jets.zero());
        let idx = self.plan().minor_indices();
        let minor = m.select(idx, idx);
        let dm = jets.det(&minor);
        let inv = jets.inv(&dm)?;
        Some(jets.mul(&jets.det(&m), &inv))
    }
}

/// Gradient of the resultant with respect to the coefficients of one slot.
#[derive(Clone, Debug, PartialEq)]
pub struct SlotGradient<F: Field> {
    pub slot: usize,
    /// Partial derivatives indexed like
    /// [`crate::resultant::MacaulayPlan::slot_monomials`].
    pub values: Vec<F::Elem>,
}

impl<F: Field> SlotGradient<F> {
    pub fn is_zero(&self, field: &F) -> bool {
        self.values.iter().all(|v| field.is_zero(v))
    }
}

/// `(dRes/dc_{slot,a})(g)` for every monomial `a` of degree `d_slot`.
///
/// Requires `Res(g) = 0`. Each partial is the `ε`-part of the resultant of
/// `g + ε y^a`, evaluated through the Macaulay quotient over dual numbers.
/// When `det M'` vanishes at `g`, the system is first moved by a
/// unimodular change of coordinates `y -> A y` (the perturbation moves
/// along, as `(A y)^a`); as a last resort the partial is read off an
/// interpolation of `s -> Res(g + s y^a)`.
pub fn resultant_gradient<F: Field, R: Rng + ?Sized>(
    polys: &[MultiPoly<F>],
    degrees: &DegreeVector,
    slot: usize,
    rng: &mut R,
) -> Result<SlotGradient<F>> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::Usage("empty system".into()))?;
    let res = MacaulayResultant::new(&field, degrees.clone());
    let coeffs = res.plan().dense(polys)?;
    gradient_dense(&res, &coeffs, slot, rng)
}

pub(crate) fn gradient_dense<F: Field, R: Rng + ?Sized>(
    res: &MacaulayResultant<F>,
    coeffs: &[Vec<F::Elem>],
    slot: usize,
    rng: &mut R,
) -> Result<SlotGradient<F>> {
    let field = res.field();
    let nv = res.degrees().nvars();
    if slot >= nv {
        return Err(Error::Usage(format!("slot {slot} out of range")));
    }
    if !field.is_zero(&res.eval_dense(coeffs, rng)) {
        return Err(Error::Precondition(
            "the resultant gradient is only meaningful on degenerate systems (Res = 0)".into(),
        ));
    }
    let plan = res.plan();
    let width = plan.slot_monomials(slot).len();
    let unit_direction = |k: usize| -> Vec<Vec<F::Elem>> {
        (0..nv)
            .map(|i| {
                let mut v = vec![field.zero(); plan.slot_monomials(i).len()];
                if i == slot {
                    v[k] = field.one();
                }
                v
            })
            .collect()
    };

    let mut transform: Option<Vec<Vec<F::Elem>>> = None;
    let mut base = coeffs.to_vec();
    let mut attempts = 0;
    while res.quotient(&base).is_none() {
        if attempts == COORDINATE_RETRIES {
            return interpolated_gradient(res, coeffs, slot, rng);
        }
        attempts += 1;
        let a = random_unimodular(field, nv, rng);
        base = res.transform(coeffs, &a);
        transform = Some(a);
    }

    let mut values = Vec::with_capacity(width);
    for k in 0..width {
        let mut dir = unit_direction(k);
        if let Some(a) = &transform {
            dir = res.transform(&dir, a);
        }
        let jet = res
            .directional_jet(&base, &dir)
            .ok_or_else(|| Error::Internal("dual Macaulay minor lost invertibility".into()))?;
        values.push(jet.eps);
    }
    Ok(SlotGradient { slot, values })
}

fn interpolated_gradient<F: Field, R: Rng + ?Sized>(
    res: &MacaulayResultant<F>,
    coeffs: &[Vec<F::Elem>],
    slot: usize,
    rng: &mut R,
) -> Result<SlotGradient<F>> {
    let field = res.field();
    let deg = res.degrees().coefficient_degree(slot) as usize;
    let nodes = field.distinct_elements(deg + 1, rng)?;
    let width = res.plan().slot_monomials(slot).len();
    let mut values = Vec::with_capacity(width);
    for k in 0..width {
        let samples: Vec<F::Elem> = nodes
            .iter()
            .map(|s| {
                let mut moved = coeffs.to_vec();
                moved[slot][k] = field.add(&moved[slot][k], s);
                res.eval_dense(&moved, rng)
            })
            .collect();
        values.push(interpolate(field, &nodes, &samples).coeff(1));
    }
    Ok(SlotGradient { slot, values })
}

/// Outcome of the unique-zero test on a degenerate system.
#[derive(Clone, Debug, PartialEq)]
pub enum ZeroRecovery<E> {
    /// The system has exactly one projective zero.
    Unique(Vec<E>),
    /// Every coefficient partial vanishes: the zero may be non-unique or
    /// non-reduced.
    Inconclusive,
}

/// If some partial of the resultant is nonzero, the system has a single
/// zero `η` and the slot gradient is the Veronese image `(η^a)_a`; this
/// reads `η` back off the first slot with a nonzero gradient, trying
/// linear slots first.
pub fn recover_unique_zero<F: Field, R: Rng + ?Sized>(
    polys: &[MultiPoly<F>],
    degrees: &DegreeVector,
    rng: &mut R,
) -> Result<ZeroRecovery<F::Elem>> {
    let field = polys
        .first()
        .map(|p| p.field().clone())
        .ok_or_else(|| Error::Usage("empty system".into()))?;
    let res = MacaulayResultant::new(&field, degrees.clone());
    let coeffs = res.plan().dense(polys)?;
    let mut order: Vec<usize> = (0..degrees.nvars()).collect();
    order.sort_by_key(|&i| degrees.degrees()[i]);
    for slot in order {
        let grad = gradient_dense(&res, &coeffs, slot, rng)?;
        if !grad.is_zero(&field) {
            return Ok(ZeroRecovery::Unique(point_from_veronese(&res, &grad)));
        }
    }
    Ok(ZeroRecovery::Inconclusive)
}

/// Inverts the Veronese map on a gradient vector `(η^a)_{|a| = d}`.
fn point_from_veronese<F: Field>(res: &MacaulayResultant<F>, grad: &SlotGradient<F>) -> Vec<F::Elem> {
    let field = res.field();
    let d = res.degrees().degrees()[grad.slot] as u16;
    let nv = res.degrees().nvars();
    let mons = res.plan().slot_monomials(grad.slot);
    let value = |m: &crate::poly::Monomial| grad.values[mons.position(m).unwrap()].clone();
    // Some pure power η_j^d is nonzero because η is.
    let j = (0..nv)
        .find(|&j| {
            !field.is_zero(&value(&crate::poly::Monomial::var_pow(nv, j, d)))
        })
        .expect("a nonzero Veronese vector has a nonzero pure power");
    let pure = value(&crate::poly::Monomial::var_pow(nv, j, d));
    (0..nv)
        .map(|k| {
            let mut exps = vec![0u16; nv];
            exps[j] = d - 1;
            exps[k] += 1;
            field
                .div(&value(&crate::poly::Monomial::new(exps)), &pure)
                .unwrap()
        })
        .collect()
}
