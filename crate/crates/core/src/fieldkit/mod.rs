//! Exact arithmetic for F_q, F_q[t] and F_q(t).

pub mod ffactor;
pub mod fq;
pub mod ratfunc;
pub mod residue;
pub mod upoly;

use rand::RngCore;

pub use fq::{Fq, FqElem};
pub use ratfunc::{FqPoly, RatField, RatFunc};
pub use residue::ResidueField;
pub use upoly::{Poly, PolyRing};

use crate::error::Result;
use crate::field::DifferentialField;

/// Builds GF(p^n), picking the default modulus when none is given.
pub fn fq_make(p: u32, n: usize, modulus: Option<&[u32]>) -> Result<Fq> {
    Fq::new(p, n, modulus)
}

pub fn fq_inv(field: &Fq, a: FqElem) -> Result<FqElem> {
    field.try_inv(a)
}

pub fn fq_frobenius_inverse(field: &Fq, a: FqElem) -> FqElem {
    field.frobenius_inverse(a)
}

/// Monic irreducible factors of `f` over F_q with multiplicities.
pub fn poly_factor_fq(field: &Fq, f: &[FqElem], rng: &mut dyn RngCore) -> Result<Vec<(FqPoly, usize)>> {
    ffactor::factor(&PolyRing::new(field.clone()), f, rng)
}

pub fn ratfunc_derivative(k: &RatField, f: &RatFunc) -> RatFunc {
    k.derivative(f)
}

pub fn ratfunc_pth_root(k: &RatField, f: &RatFunc) -> Result<RatFunc> {
    k.pth_root(f)
}
