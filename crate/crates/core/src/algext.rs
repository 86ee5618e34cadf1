//! Separable algebraic extensions `K_N = F_q(t)[Y]/(N_*(Y))` as
//! differential fields.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{DifferentialField, Field};
use crate::fieldkit::{PolyRing, RatField, RatFunc};
use crate::yfactor::{factor_monic_in_y, is_separable_irreducible, YPoly};

/// Coordinates in the basis `1, a, ..., a^(deg-1)`; always length `deg`.
pub type ExtElem = Vec<RatFunc>;

#[derive(Debug)]
struct ExtInner {
    base: RatField,
    ring: PolyRing<RatField>,
    n_star: YPoly,
    a_prime: ExtElem,
    a_pow_p: ExtElem,
}

/// The extension field, shared cheaply by cloning.
#[derive(Clone, Debug)]
pub struct ExtField(Arc<ExtInner>);

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.0.n_star == other.0.n_star && self.0.base == other.0.base
    }
}

impl Eq for ExtField {}

/// Builds `K_N`, checking that `n_star` is monic, separable and irreducible.
pub fn make_extension(k: &RatField, n_star: &[RatFunc]) -> Result<ExtField> {
    let ext = make_extension_unchecked(k, n_star)?;
    let factors = factor_monic_in_y(k, n_star)?;
    if factors.len() != 1 || factors[0].1 != 1 {
        return Err(Error::NotIrreducible);
    }
    Ok(ext)
}

/// As [`make_extension`] but trusts the caller on irreducibility.
pub fn make_extension_unchecked(k: &RatField, n_star: &[RatFunc]) -> Result<ExtField> {
    let ring = PolyRing::new(k.clone());
    let n_star = ring.normalize(n_star.to_vec());
    if n_star.len() < 2 {
        return Err(Error::ZeroOrder);
    }
    if !ring.is_monic(&n_star) {
        return Err(Error::NotMonic);
    }
    if !is_separable_irreducible(k, &n_star) {
        return Err(Error::Inseparable);
    }
    let deg = n_star.len() - 1;
    let mut inner = ExtInner {
        base: k.clone(),
        ring,
        n_star,
        a_prime: vec![k.zero(); deg],
        a_pow_p: vec![k.zero(); deg],
    };
    // Arithmetic does not depend on a' or a^p, so a provisional field works.
    let ext = ExtField(Arc::new(ExtInner {
        base: inner.base.clone(),
        ring: inner.ring.clone(),
        n_star: inner.n_star.clone(),
        a_prime: vec![],
        a_pow_p: vec![],
    }));
    // a' = -N_t(a) / N_Y(a)
    let n_t: YPoly = inner.n_star.iter().map(|c| k.derivative(c)).collect();
    let n_y = inner.ring.derivative(&inner.n_star);
    let num = ext.from_poly(&n_t);
    let den = ext.from_poly(&n_y);
    let den_inv = ext.inv(&den).ok_or(Error::NotIrreducible)?;
    inner.a_prime = ext.neg(&ext.mul(&num, &den_inv));
    inner.a_pow_p = ext.pow(&ext.generator(), k.p() as u64);
    Ok(ExtField(Arc::new(inner)))
}

impl ExtField {
    pub fn base(&self) -> &RatField {
        &self.0.base
    }

    pub fn n_star(&self) -> &YPoly {
        &self.0.n_star
    }

    pub fn degree(&self) -> usize {
        self.0.n_star.len() - 1
    }

    pub fn a_prime(&self) -> &ExtElem {
        &self.0.a_prime
    }

    /// `y_N = a^p`.
    pub fn a_pow_p(&self) -> &ExtElem {
        &self.0.a_pow_p
    }

    /// The class `a` of Y.
    pub fn generator(&self) -> ExtElem {
        let k = &self.0.base;
        self.from_poly(&[k.zero(), k.one()])
    }

    /// Reduces a polynomial in Y modulo `N_*`.
    pub fn from_poly(&self, f: &[RatFunc]) -> ExtElem {
        let ring = &self.0.ring;
        let mut r = ring.rem(&ring.normalize(f.to_vec()), &self.0.n_star);
        r.resize(self.degree(), self.0.base.zero());
        r
    }

    pub fn to_poly(&self, u: &ExtElem) -> YPoly {
        self.0.ring.normalize(u.clone())
    }

    pub fn embed(&self, c: &RatFunc) -> ExtElem {
        self.from_poly(std::slice::from_ref(c))
    }

    /// `Some(c)` when `u` lies in F_q(t).
    pub fn as_base(&self, u: &ExtElem) -> Option<RatFunc> {
        let k = &self.0.base;
        if u.iter().skip(1).all(|c| k.is_zero(c)) {
            Some(u[0].clone())
        } else {
            None
        }
    }

    /// `u^p`, using Frobenius on coordinates and the stored `a^p`.
    pub fn pth_power(&self, u: &ExtElem) -> ExtElem {
        let k = &self.0.base;
        let mut acc = self.zero();
        for c in u.iter().rev() {
            acc = self.mul(&acc, &self.0.a_pow_p);
            acc[0] = k.add(&acc[0], &k.frobenius(c));
        }
        acc
    }

    pub fn try_div(&self, u: &ExtElem, v: &ExtElem) -> Result<ExtElem> {
        let inv = self.inv(v).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(u, &inv))
    }
}

impl Field for ExtField {
    type Elem = ExtElem;

    fn zero(&self) -> ExtElem {
        vec![self.0.base.zero(); self.degree()]
    }

    fn one(&self) -> ExtElem {
        self.embed(&self.0.base.one())
    }

    fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| self.0.base.add(x, y)).collect()
    }

    fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(x, y)| self.0.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &ExtElem) -> ExtElem {
        a.iter().map(|x| self.0.base.neg(x)).collect()
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        if self.degree() == 1 {
            return vec![self.0.base.mul(&a[0], &b[0])];
        }
        let ring = &self.0.ring;
        self.from_poly(&ring.mul(&self.to_poly(a), &self.to_poly(b)))
    }

    fn inv(&self, a: &ExtElem) -> Option<ExtElem> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return self.0.base.inv(&a[0]).map(|x| vec![x]);
        }
        let (g, s, _) = self.0.ring.xgcd(&self.to_poly(a), &self.0.n_star);
        if g.len() != 1 {
            return None;
        }
        Some(self.from_poly(&s))
    }

    fn from_int(&self, n: i64) -> ExtElem {
        self.embed(&self.0.base.from_int(n))
    }

    fn characteristic(&self) -> u32 {
        self.0.base.p()
    }

    fn weight(&self, a: &ExtElem) -> usize {
        a.iter().map(|c| self.0.base.weight(c)).sum()
    }
}

impl DifferentialField for ExtField {
    /// Coordinatewise d/dt plus `(du/dY)(a) * a'`.
    fn derivative(&self, u: &ExtElem) -> ExtElem {
        let k = &self.0.base;
        let coord: ExtElem = u.iter().map(|c| k.derivative(c)).collect();
        if self.degree() == 1 {
            return coord;
        }
        let du = self.from_poly(&self.0.ring.derivative(&self.to_poly(u)));
        self.add(&coord, &self.mul(&du, &self.0.a_prime))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::fieldkit::Fq;
    use crate::linalg::{char_poly, Matrix};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn tpoly(k: &RatField, c: &[i64]) -> RatFunc {
        k.from_poly(c.iter().map(|&x| k.fq.from_int(x)).collect())
    }

    fn sqrt_t(p: u32) -> (RatField, ExtField) {
        let k = RatField::new(Fq::prime(p).unwrap());
        let n = vec![tpoly(&k, &[0, -1]), k.zero(), k.one()];
        let e = make_extension(&k, &n).unwrap();
        (k, e)
    }

    #[test]
    fn construction_examples() {
        let k = RatField::new(Fq::prime(3).unwrap());
        let lin = make_extension(&k, &[tpoly(&k, &[0, -1]), k.one()]).unwrap();
        assert_eq!(lin.generator(), vec![k.t()]);
        assert_eq!(lin.a_prime(), &vec![k.one()]);
        let (k, e) = sqrt_t(3);
        // a' = 2a / t
        let two_over_t = k.frac(vec![k.fq.from_int(2)], vec![k.fq.zero(), k.fq.one()]).unwrap();
        assert_eq!(e.a_prime(), &vec![k.zero(), two_over_t]);
        let ins = vec![tpoly(&k, &[0, -1]), k.zero(), k.zero(), k.one()];
        assert_eq!(make_extension(&k, &ins).unwrap_err(), Error::Inseparable);
        let red = vec![tpoly(&k, &[0, 0, -1]), k.zero(), k.one()];
        assert_eq!(make_extension(&k, &red).unwrap_err(), Error::NotIrreducible);
    }

    #[test]
    fn arithmetic_examples() {
        let (k, e) = sqrt_t(3);
        let a = e.generator();
        assert_eq!(e.mul(&a, &a), e.embed(&k.t()));
        let one_plus = e.add(&e.one(), &a);
        let one_minus = e.sub(&e.one(), &a);
        assert_eq!(e.mul(&one_plus, &one_minus), e.embed(&tpoly(&k, &[1, -1])));
        assert_eq!(e.derivative(&e.mul(&a, &a)), e.one());
        assert!(e.is_zero(&e.derivative(&e.from_int(2))));
        assert_eq!(e.pth_power(&a), e.mul(&e.embed(&k.t()), &a));
        assert_eq!(e.try_div(&a, &e.zero()), Err(Error::DivisionByZero));
    }

    fn random_elem(e: &ExtField, rng: &mut ChaCha8Rng) -> ExtElem {
        let k = e.base();
        (0..e.degree())
            .map(|_| {
                let num = (0..rng.gen_range(0..=3)).map(|_| k.fq.random(rng)).collect();
                let den = vec![k.fq.random(rng), k.fq.one()];
                k.frac(num, den).unwrap()
            })
            .collect()
    }

    fn random_extension(p: u32, rng: &mut ChaCha8Rng) -> ExtField {
        let k = RatField::new(Fq::prime(p).unwrap());
        loop {
            let deg = rng.gen_range(1..=3);
            let mut n: Vec<RatFunc> = (0..deg)
                .map(|_| k.from_poly((0..rng.gen_range(0..=3)).map(|_| k.fq.random(rng)).collect()))
                .collect();
            n.push(k.one());
            if let Ok(e) = make_extension(&k, &n) {
                return e;
            }
        }
    }

    #[test]
    fn derivation_and_frobenius_laws() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for i in 0..200 {
            let e = random_extension([2, 3, 5][i % 3], &mut rng);
            let u = random_elem(&e, &mut rng);
            let v = random_elem(&e, &mut rng);
            assert!(e.is_zero(&e.from_poly(e.n_star())));
            assert_eq!(e.derivative(&e.add(&u, &v)), e.add(&e.derivative(&u), &e.derivative(&v)));
            let lhs = e.derivative(&e.mul(&u, &v));
            let rhs = e.add(&e.mul(&e.derivative(&u), &v), &e.mul(&u, &e.derivative(&v)));
            assert_eq!(lhs, rhs);
            assert!(e.is_zero(&e.derivative(&e.pth_power(&u))));
            assert_eq!(e.pth_power(&u), e.pow(&u, e.characteristic() as u64));
            assert_eq!(e.pth_power(&e.add(&u, &v)), e.add(&e.pth_power(&u), &e.pth_power(&v)));
            if !e.is_zero(&u) {
                assert_eq!(e.try_div(&u, &u).unwrap(), e.one());
            }
        }
    }

    #[test]
    fn minimal_polynomial_of_y() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for i in 0..20 {
            let e = random_extension([2, 3, 5][i % 3], &mut rng);
            let k = e.base();
            let d = e.degree();
            // Matrix of multiplication by a^p in the basis of powers of a.
            let mut cols = Vec::new();
            let mut b = e.one();
            for _ in 0..d {
                cols.push(e.mul(&b, e.a_pow_p()));
                b = e.mul(&b, &e.generator());
            }
            let m = crate::linalg::from_columns(&cols);
            let m = Matrix::new(d, d, m.data);
            let chi = char_poly(k, &m).unwrap();
            let n: Vec<RatFunc> = e.n_star().iter().map(|c| k.frobenius(c)).collect();
            assert_eq!(chi, n);
        }
    }
}
