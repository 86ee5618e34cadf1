//! Dense univariate polynomials over an arbitrary field.
//!
//! Polynomials are plain coefficient vectors, constant term first, with no
//! trailing zeros; the zero polynomial is the empty vector.

use crate::field::Field;

pub type Poly<E> = Vec<E>;

/// Polynomial ring `F[x]` as a ring object over the field `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    pub field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn normalize(&self, mut a: Poly<F::Elem>) -> Poly<F::Elem> {
        while a.last().is_some_and(|c| self.field.is_zero(c)) {
            a.pop();
        }
        a
    }

    pub fn zero(&self) -> Poly<F::Elem> {
        Vec::new()
    }

    pub fn one(&self) -> Poly<F::Elem> {
        vec![self.field.one()]
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.normalize(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> Poly<F::Elem> {
        if self.field.is_zero(&c) {
            return vec![];
        }
        let mut v = vec![self.field.zero(); k + 1];
        v[k] = c;
        v
    }

    pub fn x(&self) -> Poly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    /// Degree, `None` for zero.
    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    pub fn lc<'a>(&self, a: &'a [F::Elem]) -> Option<&'a F::Elem> {
        a.last()
    }

    pub fn is_monic(&self, a: &[F::Elem]) -> bool {
        a.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, s) in out.iter_mut().zip(short) {
            *o = self.field.add(o, s);
        }
        self.normalize(out)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let len = a.len().max(b.len());
        let f = &self.field;
        let out = (0..len)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.sub(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => f.neg(y),
                (None, None) => unreachable!(),
            })
            .collect();
        self.normalize(out)
    }

    pub fn neg(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        a.iter().map(|c| self.field.neg(c)).collect()
    }

    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return vec![];
        }
        self.normalize(a.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let f = &self.field;
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = f.mul(x, y);
                out[i + j] = f.add(&out[i + j], &t);
            }
        }
        self.normalize(out)
    }

    pub fn pow(&self, a: &[F::Elem], mut e: u64) -> Poly<F::Elem> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Shift by `x^k`.
    pub fn shl(&self, a: &[F::Elem], k: usize) -> Poly<F::Elem> {
        if a.is_empty() {
            return vec![];
        }
        let mut v = vec![self.field.zero(); k];
        v.extend_from_slice(a);
        v
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>) {
        assert!(!b.is_empty(), "polynomial division by zero");
        let f = &self.field;
        if a.len() < b.len() {
            return (vec![], a.to_vec());
        }
        let db = b.len() - 1;
        let lc_inv = f.inv(&b[db]).expect("nonzero leading coefficient");
        let monic_divisor = f.is_one(&b[db]);
        let mut r = a.to_vec();
        let mut q = vec![f.zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let top = &r[k + db];
            if f.is_zero(top) {
                continue;
            }
            let c = if monic_divisor { top.clone() } else { f.mul(top, &lc_inv) };
            for (i, bi) in b.iter().enumerate() {
                let t = f.mul(&c, bi);
                r[k + i] = f.sub(&r[k + i], &t);
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.normalize(q), self.normalize(r))
    }

    pub fn rem(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Exact quotient, `None` when `b` does not divide `a`.
    pub fn div_exact(&self, a: &[F::Elem], b: &[F::Elem]) -> Option<Poly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        if r.is_empty() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        match a.last() {
            None => vec![],
            Some(lc) if self.field.is_one(lc) => a.to_vec(),
            Some(lc) => {
                let inv = self.field.inv(lc).expect("nonzero");
                self.scale(a, &inv)
            }
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(&self, a: &[F::Elem], b: &[F::Elem]) -> (Poly<F::Elem>, Poly<F::Elem>, Poly<F::Elem>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.field.inv(&lc).expect("nonzero");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    pub fn lcm(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let g = self.gcd(a, b);
        let q = self.div_exact(a, &g).expect("gcd divides");
        self.monic(&self.mul(&q, b))
    }

    pub fn derivative(&self, a: &[F::Elem]) -> Poly<F::Elem> {
        if a.len() <= 1 {
            return vec![];
        }
        let f = &self.field;
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.mul(&f.from_int(i as i64), c))
            .collect();
        self.normalize(out)
    }

    pub fn eval(&self, a: &[F::Elem], x: &F::Elem) -> F::Elem {
        let f = &self.field;
        a.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// Composition `a(b)`.
    pub fn compose(&self, a: &[F::Elem], b: &[F::Elem]) -> Poly<F::Elem> {
        a.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, b), &self.constant(c.clone())))
    }

    pub fn powmod(&self, a: &[F::Elem], mut e: u64, m: &[F::Elem]) -> Poly<F::Elem> {
        let mut base = self.rem(a, m);
        let mut acc = self.rem(&self.one(), m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
            e >>= 1;
            if e > 0 {
                base = self.rem(&self.mul(&base, &base), m);
            }
        }
        acc
    }

    /// Multiplicity of the irreducible `factor` in `a` (nonzero).
    pub fn valuation(&self, a: &[F::Elem], factor: &[F::Elem]) -> usize {
        let mut a = a.to_vec();
        let mut v = 0;
        while !a.is_empty() {
            match self.div_exact(&a, factor) {
                Some(q) => {
                    a = q;
                    v += 1;
                }
                None => break,
            }
        }
        v
    }

    /// Resultant via the Euclidean remainder sequence.
    pub fn resultant(&self, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        if a.is_empty() || b.is_empty() {
            return f.zero();
        }
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        let mut acc = f.one();
        loop {
            let da = a.len() - 1;
            let db = b.len() - 1;
            if db == 0 {
                return f.mul(&acc, &f.pow(&b[0], da as u64));
            }
            let r = self.rem(&a, &b);
            if r.is_empty() {
                return f.zero();
            }
            let dr = r.len() - 1;
            // res(a, b) = (-1)^(da db) lc(b)^(da - dr) res(b, r)
            if (da * db) % 2 == 1 {
                acc = f.neg(&acc);
            }
            acc = f.mul(&acc, &f.pow(&b[db], (da - dr) as u64));
            a = b;
            b = r;
        }
    }
}
