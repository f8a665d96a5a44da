use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::flex::degrees::{factorial, r_degree, rho_degree};
use crate::linalg::{solve, Matrix};
use crate::poly::monomial::Monomial;
use crate::poly::reduce::{exact_quotient, normal_form, DenseReducer};
use crate::poly::{Hypersurface, MultiPoly};
use crate::resultant::{resultant_poly, DegreeVector};

/// Random linear forms tried for `ell` when every coordinate divides `f`.
const ELL_RETRIES: usize = 8;

/// `R_{V,g}(x) = Res^y(f_1(x, y), ..., f_n(x, y), g(y))`.
pub fn r_poly<F: Field>(v: &Hypersurface<F>, g: &MultiPoly<F>, seed: u64) -> Result<MultiPoly<F>> {
    let nv = v.dim() + 1;
    if g.nvars() != nv {
        return Err(Error::Usage(format!("g must have {nv} variables")));
    }
    let e = match g.homogeneous_degree() {
        Some(e) if e >= 1 => e,
        _ => return Err(Error::Usage("g must be homogeneous of positive degree".into())),
    };
    if (v.degree() as usize) < v.dim() {
        return Err(Error::DegreeBelowDimension {
            n: v.dim(),
            d: v.degree(),
        });
    }
    let mut system: Vec<MultiPoly<F>> = v.taylor()[..v.dim()].to_vec();
    system.push(g.embed(2 * nv, nv));
    let mut degrees: Vec<u32> = (1..=v.dim() as u32).collect();
    degrees.push(e);
    let bound = r_degree(v.dim(), v.degree(), e);
    let bound = u32::try_from(bound).map_err(|_| Error::Usage("degree bound overflows".into()))?;
    resultant_poly(&system, nv, &DegreeVector::new(degrees)?, bound, seed)
}

/// The flex polynomial together with its certificate of extraction:
/// `r = ell^{n!} rho + f sigma` holds exactly.
#[derive(Clone, Debug)]
pub struct FlexPolynomial<F: Field> {
    /// Normal form modulo `f` under grevlex.
    pub rho: MultiPoly<F>,
    pub ell: MultiPoly<F>,
    /// `R_{V,ell}`.
    pub r: MultiPoly<F>,
    pub sigma: MultiPoly<F>,
    /// Degree of `rho` as a form (its normal form may have fewer terms but
    /// is homogeneous of this degree unless zero).
    pub degree: u64,
}

impl<F: Field> FlexPolynomial<F> {
    /// Re-checks `r = ell^{n!} rho + f sigma`.
    pub fn verify(&self, v: &Hypersurface<F>) -> bool {
        let m = factorial(v.dim()) as u32;
        let rhs = &(&self.ell.pow(m) * &self.rho) + &(v.poly() * &self.sigma);
        rhs == self.r
    }

    /// Equations `(f, rho)` of the flex scheme.
    pub fn scheme_equations<'a>(&'a self, v: &'a Hypersurface<F>) -> [&'a MultiPoly<F>; 2] {
        [v.poly(), &self.rho]
    }

    pub fn is_normal_form(&self, v: &Hypersurface<F>) -> bool {
        normal_form(&self.rho, v.poly()).is_ok_and(|r| r == self.rho)
    }
}

/// First coordinate `x_j` not dividing `f`, i.e. with `f|_{x_j = 0} != 0`.
pub fn default_ell<F: Field>(v: &Hypersurface<F>) -> Option<MultiPoly<F>> {
    let nv = v.dim() + 1;
    (0..nv)
        .find(|&j| !v.poly().specialize(j, &[v.field().zero()]).is_zero())
        .map(|j| MultiPoly::var(v.field(), nv, j))
}

/// `rho_V` with deterministic internal randomness derived from `seed`.
pub fn flex_polynomial<F: Field>(v: &Hypersurface<F>, seed: u64) -> Result<FlexPolynomial<F>> {
    if (v.degree() as usize) < v.dim() {
        return Err(Error::DegreeBelowDimension {
            n: v.dim(),
            d: v.degree(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(ell) = default_ell(v) {
        return flex_polynomial_with(v, &ell, seed);
    }
    let nv = v.dim() + 1;
    let mut last = None;
    for k in 0..ELL_RETRIES {
        let coeffs: Vec<F::Elem> = (0..nv).map(|_| v.field().random(&mut rng)).collect();
        let ell = MultiPoly::linear_form(v.field(), &coeffs);
        if ell.is_zero() {
            continue;
        }
        match flex_polynomial_with(v, &ell, seed.wrapping_add(k as u64 + 1)) {
            Ok(fp) => return Ok(fp),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or_else(|| Error::Internal("no usable linear form found".into())))
}

/// `rho_V` for a caller-chosen linear form `ell`, which must not divide
/// `f`.
pub fn flex_polynomial_with<F: Field>(
    v: &Hypersurface<F>,
    ell: &MultiPoly<F>,
    seed: u64,
) -> Result<FlexPolynomial<F>> {
    if ell.homogeneous_degree() != Some(1) || ell.nvars() != v.dim() + 1 {
        return Err(Error::Usage("ell must be a linear form in the hypersurface variables".into()));
    }
    let field = v.field();
    let n = v.dim();
    let m = factorial(n) as u32;
    let r = r_poly(v, ell, seed)?;
    let deg_r = r_degree(n, v.degree(), 1) as u32;
    let degree = rho_degree(n, v.degree());
    let deg_rho = degree as u32;

    let target = DenseReducer::new(v.poly(), deg_r)?;
    let source = DenseReducer::new(v.poly(), deg_rho)?;
    let basis = source.standard_monomials();
    let ell_power = ell.pow(m);
    let columns: Vec<Vec<F::Elem>> = basis
        .par_iter()
        .map(|s| target.reduce_poly(&ell_power.mul_term(s, &field.one())))
        .collect::<Result<_>>()?;
    let rows = target.standard_positions().len();
    let mut a = Matrix::filled(rows, basis.len(), field.zero());
    for (j, col) in columns.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            a.set(i, j, c.clone());
        }
    }
    let rhs = if r.is_zero() {
        vec![field.zero(); rows]
    } else {
        target.reduce_poly(&r)?
    };
    let coeffs = solve(field, &a, &rhs).map_err(|_| {
        Error::Internal("R_{V,ell} is not congruent to ell^{n!} times a form of the expected degree".into())
    })?;
    let rho = MultiPoly::from_terms(field, n + 1, basis.into_iter().zip(coeffs));
    let sigma = exact_quotient(&(&r - &(&ell_power * &rho)), v.poly())?;
    let out = FlexPolynomial {
        rho,
        ell: ell.clone(),
        r,
        sigma,
        degree,
    };
    debug_assert!(out.verify(v));
    Ok(out)
}

/// Whether `rho` vanishes at `p`.
pub fn rho_vanishes<F: Field>(fp: &FlexPolynomial<F>, p: &[F::Elem]) -> bool {
    fp.rho.field().is_zero(&fp.rho.evaluate(p))
}

/// Random forms of degree `deg` in `nv` variables, dense in all monomials.
pub fn random_form<F: Field, R: Rng + ?Sized>(field: &F, nv: usize, deg: u32, rng: &mut R) -> MultiPoly<F> {
    MultiPoly::from_terms(
        field,
        nv,
        crate::poly::monomials_of_degree(nv, deg)
            .into_iter()
            .map(|m: Monomial| (m, field.random(rng))),
    )
}
