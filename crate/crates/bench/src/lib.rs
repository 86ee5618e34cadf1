//! Fixed workloads shared by the benchmarks.

use lclm_core::fieldkit::{Fq, RatField, RatFunc};
use lclm_core::ore::{OrePoly, OreRing};
use lclm_core::Field;

pub type Op = OrePoly<RatFunc>;

pub fn ring(p: u32) -> OreRing<RatField> {
    OreRing::new(RatField::new(Fq::prime(p).expect("prime")))
}

/// Polynomial in t from its coefficients, lowest degree first.
pub fn tpoly(k: &RatField, c: &[i64]) -> RatFunc {
    k.from_poly(c.iter().map(|&x| k.fq.from_int(x)).collect())
}

/// `lclm(D, D - c/t)` with `c = (p-1)/2`, a direct sum of two
/// non-isomorphic first-order pieces.
pub fn two_pieces(r: &OreRing<RatField>) -> Op {
    let k = &r.field;
    let c = k.div(&k.from_int((k.p() as i64 - 1) / 2), &k.t());
    let lin = r.from_coeffs(vec![k.neg(&c), k.one()]);
    r.lclm(&[r.d(), lin]).expect("nonzero operators")
}

/// `D^n + t^n`.
pub fn binomial(r: &OreRing<RatField>, n: usize) -> Op {
    let k = &r.field;
    let mut c = vec![k.zero(); n + 1];
    c[0] = k.pow(&k.t(), n as u64);
    c[n] = k.one();
    r.from_coeffs(c)
}

/// `D^4 + D^3 + t^2 D^2 + t D + t^4 + 1`, indecomposable with a large
/// isomorphism witness.
pub fn dense_order4(r: &OreRing<RatField>) -> Op {
    let k = &r.field;
    r.from_coeffs(vec![
        tpoly(k, &[1, 0, 0, 0, 1]),
        tpoly(k, &[0, 1]),
        tpoly(k, &[0, 0, 1]),
        k.one(),
        k.one(),
    ])
}
