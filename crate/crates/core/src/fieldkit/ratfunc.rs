//! The rational function field F_q(t) with its derivation d/dt.

use crate::error::{Error, Result};
use crate::field::{DifferentialField, Field};
use crate::fieldkit::fq::{Fq, FqElem};
use crate::fieldkit::upoly::{Poly, PolyRing};

pub type FqPoly = Poly<FqElem>;

/// A reduced fraction `num / den` with `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc {
    pub num: FqPoly,
    pub den: FqPoly,
}

impl RatFunc {
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }
}

/// F_q(t), also used for the constant field F_q(s) with s = t^p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatField {
    pub fq: Fq,
    pub polys: PolyRing<Fq>,
}

impl RatField {
    pub fn new(fq: Fq) -> Self {
        RatField { polys: PolyRing::new(fq.clone()), fq }
    }

    pub fn p(&self) -> u32 {
        self.fq.p()
    }

    /// Builds a reduced fraction; `den` must be nonzero.
    pub fn frac(&self, num: FqPoly, den: FqPoly) -> Result<RatFunc> {
        let ring = &self.polys;
        let num = ring.normalize(num);
        let den = ring.normalize(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.reduce(num, den))
    }

    fn reduce(&self, num: FqPoly, den: FqPoly) -> RatFunc {
        let ring = &self.polys;
        if num.is_empty() {
            return RatFunc { num, den: ring.one() };
        }
        let g = ring.gcd(&num, &den);
        let (num, den) = if g.len() > 1 {
            (ring.div_exact(&num, &g).unwrap(), ring.div_exact(&den, &g).unwrap())
        } else {
            (num, den)
        };
        self.make_den_monic(num, den)
    }

    fn make_den_monic(&self, num: FqPoly, den: FqPoly) -> RatFunc {
        let lc = *den.last().unwrap();
        if self.fq.is_one(&lc) {
            return RatFunc { num, den };
        }
        let inv = self.fq.inv(&lc).unwrap();
        RatFunc { num: self.polys.scale(&num, &inv), den: self.polys.scale(&den, &inv) }
    }

    pub fn from_poly(&self, num: FqPoly) -> RatFunc {
        RatFunc { num: self.polys.normalize(num), den: self.polys.one() }
    }

    pub fn constant(&self, c: FqElem) -> RatFunc {
        self.from_poly(vec![c])
    }

    /// The variable t.
    pub fn t(&self) -> RatFunc {
        self.from_poly(self.polys.x())
    }

    /// `c * t^k` for integer k (negative powers allowed).
    pub fn monomial(&self, c: FqElem, k: i64) -> RatFunc {
        if k >= 0 {
            self.from_poly(self.polys.monomial(c, k as usize))
        } else {
            self.reduce(vec![c], self.polys.monomial(self.fq.one(), (-k) as usize))
        }
    }

    pub fn is_constant(&self, a: &RatFunc) -> bool {
        a.num.len() <= 1 && a.den.len() == 1
    }

    /// `f^p`: exponents scale by p and coefficients go through Frobenius.
    pub fn frobenius(&self, a: &RatFunc) -> RatFunc {
        let p = self.p() as usize;
        let map = |v: &FqPoly| -> FqPoly {
            if v.is_empty() {
                return vec![];
            }
            let mut out = vec![self.fq.zero(); (v.len() - 1) * p + 1];
            for (i, c) in v.iter().enumerate() {
                out[i * p] = self.fq.frobenius(*c);
            }
            out
        };
        RatFunc { num: map(&a.num), den: map(&a.den) }
    }

    fn exponents_divisible(&self, v: &FqPoly) -> bool {
        let p = self.p() as usize;
        v.iter().enumerate().all(|(i, c)| i % p == 0 || self.fq.is_zero(c))
    }

    /// True iff `a` lies in F_q(t^p).
    pub fn is_pth_power(&self, a: &RatFunc) -> bool {
        self.exponents_divisible(&a.num) && self.exponents_divisible(&a.den)
    }

    /// The p-th root in F_q(t), or `NotAPthPower`.
    pub fn pth_root(&self, a: &RatFunc) -> Result<RatFunc> {
        if !self.is_pth_power(a) {
            return Err(Error::NotAPthPower);
        }
        let p = self.p() as usize;
        let map = |v: &FqPoly| -> FqPoly {
            v.iter().step_by(p).map(|c| self.fq.frobenius_inverse(*c)).collect()
        };
        Ok(RatFunc { num: map(&a.num), den: map(&a.den) })
    }

    /// For `a = g(t^p)` returns `g` (as a function of s); no coefficient map.
    pub fn contract(&self, a: &RatFunc) -> Result<RatFunc> {
        if !self.is_pth_power(a) {
            return Err(Error::ConstantFieldViolation(format!("{a:?}")));
        }
        let p = self.p() as usize;
        let map = |v: &FqPoly| -> FqPoly { v.iter().step_by(p).copied().collect() };
        Ok(RatFunc { num: map(&a.num), den: map(&a.den) })
    }

    /// `g(s) -> g(t^p)`.
    pub fn expand(&self, g: &RatFunc) -> RatFunc {
        let p = self.p() as usize;
        let map = |v: &FqPoly| -> FqPoly {
            if v.is_empty() {
                return vec![];
            }
            let mut out = vec![self.fq.zero(); (v.len() - 1) * p + 1];
            for (i, c) in v.iter().enumerate() {
                out[i * p] = *c;
            }
            out
        };
        RatFunc { num: map(&g.num), den: map(&g.den) }
    }

    /// Splits `a` as `sum_{u<p} c_u(t^p) t^u` and returns the `c_u` as
    /// functions of s.
    pub fn split_by_residue(&self, a: &RatFunc) -> Vec<RatFunc> {
        let p = self.p() as usize;
        if a.is_zero() {
            return vec![self.zero(); p];
        }
        // a = num den^(p-1) / den^p with den^p in F_q[t^p].
        let ring = &self.polys;
        let den_pow = ring.pow(&a.den, (p - 1) as u64);
        let num = ring.mul(&a.num, &den_pow);
        let den_p = self.frobenius(&RatFunc { num: a.den.clone(), den: ring.one() }).num;
        let den_s: FqPoly = den_p.iter().step_by(p).copied().collect();
        (0..p)
            .map(|u| {
                let part: FqPoly = num.iter().skip(u).step_by(p).copied().collect();
                self.reduce(ring.normalize(part), den_s.clone())
            })
            .collect()
    }

    /// Degree of the numerator and denominator.
    pub fn degrees(&self, a: &RatFunc) -> (usize, usize) {
        (a.num.len().saturating_sub(1), a.den.len() - 1)
    }

    pub fn eval(&self, a: &RatFunc, x: FqElem) -> Option<FqElem> {
        let d = self.polys.eval(&a.den, &x);
        let n = self.polys.eval(&a.num, &x);
        self.fq.inv(&d).map(|di| self.fq.mul(&n, &di))
    }
}

impl Field for RatField {
    type Elem = RatFunc;

    fn zero(&self) -> RatFunc {
        RatFunc { num: vec![], den: self.polys.one() }
    }

    fn one(&self) -> RatFunc {
        RatFunc { num: self.polys.one(), den: self.polys.one() }
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_empty()
    }

    fn is_one(&self, a: &RatFunc) -> bool {
        a.den.len() == 1 && a.num.len() == 1 && self.fq.is_one(&a.num[0])
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let ring = &self.polys;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den.len() == 1 && b.den.len() == 1 {
            return RatFunc { num: ring.add(&a.num, &b.num), den: ring.one() };
        }
        if a.den == b.den {
            return self.reduce(ring.add(&a.num, &b.num), a.den.clone());
        }
        let g = ring.gcd(&a.den, &b.den);
        let bd = ring.div_exact(&b.den, &g).unwrap();
        let ad = ring.div_exact(&a.den, &g).unwrap();
        let num = ring.add(&ring.mul(&a.num, &bd), &ring.mul(&b.num, &ad));
        let den = ring.mul(&a.den, &bd);
        if num.is_empty() {
            return self.zero();
        }
        if g.len() == 1 {
            return RatFunc { num, den };
        }
        let h = ring.gcd(&num, &g);
        if h.len() == 1 {
            RatFunc { num, den }
        } else {
            RatFunc { num: ring.div_exact(&num, &h).unwrap(), den: ring.div_exact(&den, &h).unwrap() }
        }
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc { num: self.polys.neg(&a.num), den: a.den.clone() }
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let ring = &self.polys;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.len() == 1 && b.den.len() == 1 {
            return RatFunc { num: ring.mul(&a.num, &b.num), den: ring.one() };
        }
        let g1 = ring.gcd(&a.num, &b.den);
        let g2 = ring.gcd(&b.num, &a.den);
        let an = ring.div_exact(&a.num, &g1).unwrap();
        let bd = ring.div_exact(&b.den, &g1).unwrap();
        let bn = ring.div_exact(&b.num, &g2).unwrap();
        let ad = ring.div_exact(&a.den, &g2).unwrap();
        let num = ring.mul(&an, &bn);
        let den = ring.mul(&ad, &bd);
        self.make_den_monic(num, den)
    }

    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        if a.is_zero() {
            return None;
        }
        Some(self.make_den_monic(a.den.clone(), a.num.clone()))
    }

    fn from_int(&self, n: i64) -> RatFunc {
        self.constant(self.fq.from_int(n))
    }

    fn characteristic(&self) -> u32 {
        self.p()
    }

    fn weight(&self, a: &RatFunc) -> usize {
        a.num.len() + a.den.len()
    }
}

impl DifferentialField for RatField {
    fn derivative(&self, a: &RatFunc) -> RatFunc {
        let ring = &self.polys;
        if a.den.len() == 1 {
            return self.from_poly(ring.derivative(&a.num));
        }
        // (n/d)' = (n' d - n d') / d^2; the gcd with d^2 divides d.
        let num = ring.sub(&ring.mul(&ring.derivative(&a.num), &a.den), &ring.mul(&a.num, &ring.derivative(&a.den)));
        if num.is_empty() {
            return self.zero();
        }
        let den = ring.mul(&a.den, &a.den);
        self.reduce(num, den)
    }
}
