//! Finite fields GF(p^n) with table-driven arithmetic.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, RngCore};

use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};

/// Largest field size we build log tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of GF(p^n), stored as the base-p integer whose digits are its
/// coordinates in the power basis `1, g, ..., g^(n-1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub fn index(self) -> u32 {
        self.0
    }
}

struct FqInner {
    p: u32,
    n: usize,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Descriptor of the finite field F_q, q = p^n.
#[derive(Clone)]
pub struct Fq(Arc<FqInner>);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p(), self.n(), self.modulus())
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.p() == other.p() && self.modulus() == other.modulus())
    }
}

impl Eq for Fq {}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

// Dense polynomials over GF(p) as residue vectors, constant term first.
// Only used while building a field descriptor.
mod gfp {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lc_inv = inv(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let c = a[da] as u64 * lc_inv as u64 % p as u64;
            for (i, &mi) in m.iter().enumerate() {
                let idx = da - dm + i;
                a[idx] = ((a[idx] as u64 + (p as u64 - c) * mi as u64) % p as u64) as u32;
            }
            a = trim(a);
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    /// Rabin-style test: `f` of degree n is irreducible iff it has no common
    /// factor with `x^(p^k) - x` for k <= n/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let x = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=n / 2 {
            xp = powmod(&xp, p as u64, f, p);
            let g = gcd(f, &sub(&xp, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Fq {
    /// Builds GF(p^n). Without an explicit modulus the lexicographically
    /// smallest monic irreducible (comparing coefficient lists constant
    /// term first) is used.
    pub fn new(p: u32, n: usize, modulus: Option<&[u32]>) -> Result<Fq> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if n == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let q = (p as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        if q > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                let m = gfp::trim(m);
                if m.len() != n + 1 {
                    return Err(Error::DegreeMismatch { expected: n, found: m.len().saturating_sub(1) });
                }
                if m[n] != 1 {
                    return Err(Error::NotMonic);
                }
                if !gfp::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None if n == 1 => vec![0, 1],
            None => smallest_irreducible(p, n),
        };
        Ok(Self::build(p, n, modulus))
    }

    pub fn prime(p: u32) -> Result<Fq> {
        Self::new(p, 1, None)
    }

    fn build(p: u32, n: usize, modulus: Vec<u32>) -> Fq {
        let q = p.pow(n as u32);
        let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
        let decode = |mut v: u32| -> Vec<u32> {
            let mut c = Vec::with_capacity(n);
            for _ in 0..n {
                c.push(v % p);
                v /= p;
            }
            gfp::trim(c)
        };
        let order = (q - 1) as u64;
        let factors = prime_factors(order);
        let mut primitive = None;
        for cand in 1..q {
            let c = decode(cand);
            let ok = factors.iter().all(|&r| {
                let e = gfp::powmod(&c, order / r, &modulus, p);
                e != vec![1]
            });
            if ok {
                primitive = Some(c);
                break;
            }
        }
        // q = 2 has order 1 with no prime factors; 1 is then primitive.
        let primitive = primitive.unwrap_or_else(|| vec![1]);
        let mut exp = vec![0u32; q as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = vec![1u32];
        for k in 0..(q - 1) {
            let idx = encode(&cur);
            exp[k as usize] = idx;
            log[idx as usize] = k;
            cur = gfp::rem(&gfp::mul(&cur, &primitive, p), &modulus, p);
        }
        Fq(Arc::new(FqInner { p, n, q, modulus, exp, log }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus over GF(p), constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// The prime subfield GF(p).
    pub fn prime_subfield(&self) -> Fq {
        if self.n() == 1 {
            self.clone()
        } else {
            Fq::prime(self.p()).expect("characteristic is prime")
        }
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.n())
            .map(|_| {
                let d = v % self.p();
                v /= self.p();
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> FqElem {
        let p = self.p();
        let mut coords: Vec<u32> = c.iter().map(|&x| x % p).collect();
        coords.resize(self.n().max(coords.len()), 0);
        // Coordinates beyond n are reduced by the modulus.
        if coords.len() > self.n() {
            let r = gfp::rem(&coords, self.modulus(), p);
            coords = r;
            coords.resize(self.n(), 0);
        }
        FqElem(coords.iter().rev().fold(0u32, |acc, &d| acc * p + d))
    }

    /// The class of the modulus variable.
    pub fn generator(&self) -> FqElem {
        if self.n() == 1 {
            // Root of the placeholder modulus Y - 0.
            FqElem(0)
        } else {
            FqElem(self.p())
        }
    }

    pub fn elem(&self, index: u32) -> FqElem {
        debug_assert!(index < self.q());
        FqElem(index)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q()).map(FqElem)
    }

    /// `a^(q/p)`, the inverse of the Frobenius `x -> x^p`.
    pub fn frobenius_inverse(&self, a: FqElem) -> FqElem {
        if self.n() == 1 || a.0 == 0 {
            return a;
        }
        self.pow(&a, (self.q() / self.p()) as u64)
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        if self.n() == 1 {
            return a;
        }
        self.pow(&a, self.p() as u64)
    }

    /// Checked inverse.
    pub fn try_inv(&self, a: FqElem) -> Result<FqElem> {
        self.inv(&a).ok_or(Error::DivisionByZero)
    }

    /// Value of an element of GF(p) as residue.
    pub fn residue(&self, a: FqElem) -> Option<u32> {
        if a.0 < self.p() {
            Some(a.0)
        } else {
            None
        }
    }

    fn add_digits(&self, a: u32, b: u32, sign: bool) -> u32 {
        let p = self.p();
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.n() {
            let x = a % p;
            let y = b % p;
            let d = if sign { (x + y) % p } else { (x + p - y) % p };
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }
}

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    // Enumerate coefficient lists [c0, ..., c_{n-1}, 1] in lexicographic
    // order with c0 most significant.
    let total = (p as u64).pow(n as u32);
    for k in 0..total {
        let mut coeffs = vec![0u32; n + 1];
        let mut v = k;
        for i in (0..n).rev() {
            coeffs[i] = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[n] = 1;
        if gfp::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field for Fq {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        FqElem(0)
    }

    fn one(&self) -> FqElem {
        FqElem(1)
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.0 == 0
    }

    fn is_one(&self, a: &FqElem) -> bool {
        a.0 == 1
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.n() == 1 {
            let s = a.0 + b.0;
            FqElem(if s >= self.p() { s - self.p() } else { s })
        } else {
            FqElem(self.add_digits(a.0, b.0, true))
        }
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if self.n() == 1 {
            FqElem(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + self.p() - b.0 })
        } else {
            FqElem(self.add_digits(a.0, b.0, false))
        }
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        self.sub(&FqElem(0), a)
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        if self.n() == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.p() as u64) as u32);
        }
        let inner = &self.0;
        let k = (inner.log[a.0 as usize] + inner.log[b.0 as usize]) % (inner.q - 1);
        FqElem(inner.exp[k as usize])
    }

    fn inv(&self, a: &FqElem) -> Option<FqElem> {
        if a.0 == 0 {
            return None;
        }
        let inner = &self.0;
        let order = inner.q - 1;
        let k = (order - inner.log[a.0 as usize] % order) % order;
        Some(FqElem(inner.exp[k as usize]))
    }

    fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u32)
    }

    fn characteristic(&self) -> u32 {
        self.p()
    }

    fn pow(&self, a: &FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem(1);
        }
        if a.0 == 0 {
            return FqElem(0);
        }
        let inner = &self.0;
        let order = (inner.q - 1) as u64;
        let k = (inner.log[a.0 as usize] as u64 * (e % order)) % order;
        FqElem(inner.exp[k as usize])
    }
}

impl FiniteField for Fq {
    fn order(&self) -> u64 {
        self.q() as u64
    }

    fn random(&self, rng: &mut dyn RngCore) -> FqElem {
        FqElem(rng.gen_range(0..self.q()))
    }

    fn pth_root(&self, a: &FqElem) -> FqElem {
        self.frobenius_inverse(*a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_defaults() {
        let f = Fq::new(5, 1, None).unwrap();
        assert_eq!(f.q(), 5);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(Fq::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn default_quadratic_modulus_over_f3() {
        // Exhaustive oracle: the monic quadratics without a root in GF(3),
        // smallest in lexicographic order of [c0, c1, 1].
        let mut irreducible = vec![];
        for c0 in 0..3u32 {
            for c1 in 0..3u32 {
                let has_root = (0..3u32).any(|x| (x * x + c1 * x + c0) % 3 == 0);
                if !has_root {
                    irreducible.push(vec![c0, c1, 1]);
                }
            }
        }
        irreducible.sort();
        let f = Fq::new(3, 2, None).unwrap();
        assert_eq!(f.modulus(), irreducible[0].as_slice());
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(Fq::new(3, 2, Some(&[2, 0, 1])).unwrap_err(), Error::ReducibleModulus(3));
        assert!(matches!(Fq::new(3, 2, Some(&[1, 1])), Err(Error::DegreeMismatch { .. })));
        assert!(Fq::new(3, 2, Some(&[2, 1, 1])).is_ok());
    }

    #[test]
    fn inverses_examples() {
        let f5 = Fq::prime(5).unwrap();
        assert_eq!(f5.inv(&FqElem(2)), Some(FqElem(3)));
        assert_eq!(f5.inv(&FqElem(1)), Some(FqElem(1)));
        assert_eq!(f5.try_inv(FqElem(0)), Err(Error::DivisionByZero));
        let f9 = Fq::new(3, 2, None).unwrap();
        let g = f9.generator();
        assert_eq!(f9.inv(&g), Some(f9.pow(&g, 7)));
        assert_eq!(f9.frobenius_inverse(g), f9.pow(&g, 3));
    }

    #[test]
    fn frobenius_inverse_exhaustive_small_fields() {
        for &(p, n) in &[(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 1)] {
            let f = Fq::new(p, n, None).unwrap();
            for a in f.elements() {
                let r = f.frobenius_inverse(a);
                assert_eq!(f.pow(&r, p as u64), a);
            }
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &p in &[2u32, 3, 5, 7] {
            for n in 1..=3 {
                let f = Fq::new(p, n, None).unwrap();
                for _ in 0..500 {
                    let a = f.random(&mut rng);
                    let b = f.random(&mut rng);
                    let c = f.random(&mut rng);
                    assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
                    assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
                    assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
                    assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
                    if !f.is_zero(&a) {
                        assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
                    }
                }
            }
        }
    }

    #[test]
    fn coordinates_roundtrip() {
        let f = Fq::new(3, 3, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.from_coords(&f.coords(a)), a);
        }
        // g^n reduces by the modulus.
        let g = f.generator();
        let g3 = f.pow(&g, 3);
        let m = f.modulus();
        let expected: Vec<u32> = m[..3].iter().map(|&c| (3 - c) % 3).collect();
        assert_eq!(f.coords(g3), expected);
    }
}
