//! p-curvature of operators over F_q(t): the matrix of left multiplication
//! by `d^p` on `D_L`, its characteristic polynomial and Frobenius invariants.
//!
//! Polynomials "over F_q(s)" are `YPoly`s whose coefficients are read as
//! functions of `s = t^p`.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldkit::{PolyRing, RatField, RatFunc};
use crate::linalg::{char_poly, invariant_factors, Matrix};
use crate::ore::{OrePoly, OreRing};
use crate::yfactor::YPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCurvData {
    /// Matrix in the basis `1, d, ..., d^(r-1)` of `D_L`, over F_q(t).
    pub matrix: Matrix<RatFunc>,
    /// Over F_q(s).
    pub charpoly: YPoly,
    /// `P_1 | ... | P_m` over F_q(s).
    pub invariants: Vec<YPoly>,
    /// `Q_i` over F_q(t) with `Q_i^p(Y) = P_i(Y^p)`.
    pub invariant_roots: Vec<YPoly>,
}

/// Columns hold the coordinates of `d^(p+j) mod L`, `j < r`.
pub fn pcurvature_matrix(ring: &OreRing<RatField>, l: &OrePoly<RatFunc>) -> Result<Matrix<RatFunc>> {
    let k = &ring.field;
    let r = match l.ord() {
        Some(r) if r >= 1 => r,
        _ => return Err(Error::ZeroOrder),
    };
    let l = ring.monic(l);
    let p = k.p() as usize;
    let mut cur = ring.one();
    let mut cols = Vec::with_capacity(r);
    for e in 1..p + r {
        cur = ring.rem_right(&ring.mul_d(&cur), &l)?;
        if e >= p {
            let mut c = cur.coeffs.clone();
            c.resize(r, k.zero());
            cols.push(c);
        }
    }
    Ok(crate::linalg::from_columns(&cols))
}

/// Reads a polynomial with coefficients in F_q(t^p) as one over F_q(s).
fn contract_poly(k: &RatField, f: &[RatFunc]) -> Result<YPoly> {
    f.iter().map(|c| k.contract(c)).collect()
}

pub fn pcurv_charpoly(ring: &OreRing<RatField>, l: &OrePoly<RatFunc>) -> Result<YPoly> {
    let m = pcurvature_matrix(ring, l)?;
    contract_poly(&ring.field, &char_poly(&ring.field, &m)?)
}

pub fn frobenius_invariants(ring: &OreRing<RatField>, l: &OrePoly<RatFunc>) -> Result<Vec<YPoly>> {
    Ok(pcurvature(ring, l)?.invariants)
}

/// `Q` with `Q^p(Y) = P(Y^p)`: coefficients of `P` evaluated at `s = t^p`
/// and then p-th roots taken.
pub fn invariants_pth_root(k: &RatField, p: &[RatFunc]) -> Result<YPoly> {
    p.iter().map(|c| k.pth_root(&k.expand(c))).collect()
}

/// Everything at once; the matrix is built only once.
pub fn pcurvature(ring: &OreRing<RatField>, l: &OrePoly<RatFunc>) -> Result<PCurvData> {
    let k = &ring.field;
    let matrix = pcurvature_matrix(ring, l)?;
    let charpoly = contract_poly(k, &char_poly(k, &matrix)?)?;
    let invariants = invariant_factors(k, &matrix)?
        .iter()
        .map(|f| contract_poly(k, f))
        .collect::<Result<Vec<_>>>()?;
    let invariant_roots = invariants.iter().map(|f| invariants_pth_root(k, f)).collect::<Result<Vec<_>>>()?;
    Ok(PCurvData { matrix, charpoly, invariants, invariant_roots })
}

/// Equivalence of `D_L1` and `D_L2`, for operators whose χ has only
/// separable irreducible factors.
pub fn operators_equivalent(
    ring: &OreRing<RatField>,
    l1: &OrePoly<RatFunc>,
    l2: &OrePoly<RatFunc>,
) -> Result<bool> {
    let a = invariants_or_trivial(ring, l1)?;
    let b = invariants_or_trivial(ring, l2)?;
    Ok(a == b)
}

fn invariants_or_trivial(ring: &OreRing<RatField>, l: &OrePoly<RatFunc>) -> Result<Vec<YPoly>> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if l.ord() == Some(0) {
        return Ok(vec![]);
    }
    crate::decomp::check_hypothesis(ring, l)?;
    frobenius_invariants(ring, l)
}

/// `N(d)` for a polynomial `N` in Y over F_q(t).
pub fn poly_at_d(ring: &OreRing<RatField>, n: &[RatFunc]) -> OrePoly<RatFunc> {
    ring.from_coeffs(n.to_vec())
}

/// `N(d^p)` for `N` over F_q(s): coefficient of `Y^k` becomes the
/// coefficient of `d^(pk)`, evaluated at `s = t^p`.
pub fn central_from_s(ring: &OreRing<RatField>, n: &[RatFunc]) -> OrePoly<RatFunc> {
    let k = &ring.field;
    let p = k.p() as usize;
    let mut c = vec![k.zero(); n.len().saturating_sub(1) * p + 1];
    for (i, x) in n.iter().enumerate() {
        c[i * p] = k.expand(x);
    }
    ring.from_coeffs(c)
}

/// `N_*^e(d)`, the commutative power placed on powers of `d`.
pub fn n_star_power_at_d(ring: &OreRing<RatField>, n_star: &[RatFunc], e: u64) -> OrePoly<RatFunc> {
    let polys = PolyRing::new(ring.field.clone());
    poly_at_d(ring, &polys.pow(n_star, e))
}
