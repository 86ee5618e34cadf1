//! The Ore algebra `F<d>` of differential operators over a differential
//! field, with `d f = f d + f'`.

use crate::error::{Error, Result};
use crate::field::DifferentialField;
use crate::fieldkit::{RatField, RatFunc};
use crate::linalg::{from_columns, kernel_basis};

/// `sum coeffs[i] d^i`, no trailing zeros; the zero operator is empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrePoly<E> {
    pub coeffs: Vec<E>,
}

impl<E> OrePoly<E> {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order, `None` for the zero operator.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreRing<F: DifferentialField> {
    pub field: F,
}

impl<F: DifferentialField> OreRing<F> {
    pub fn new(field: F) -> Self {
        OreRing { field }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> OrePoly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        OrePoly { coeffs }
    }

    pub fn zero(&self) -> OrePoly<F::Elem> {
        OrePoly { coeffs: vec![] }
    }

    pub fn one(&self) -> OrePoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> OrePoly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c d^k`.
    pub fn monomial(&self, c: F::Elem, k: usize) -> OrePoly<F::Elem> {
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    /// The derivation `d`.
    pub fn d(&self) -> OrePoly<F::Elem> {
        self.monomial(self.field.one(), 1)
    }

    pub fn add(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        let f = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let v = (0..n)
            .map(|i| match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        OrePoly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    /// Left multiplication by a field element.
    pub fn scale(&self, c: &F::Elem, a: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        if self.field.is_zero(c) {
            return self.zero();
        }
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(c, x)).collect())
    }

    /// `d * a`.
    pub fn mul_d(&self, a: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        let f = &self.field;
        if a.is_zero() {
            return self.zero();
        }
        let mut v = vec![f.zero(); a.coeffs.len() + 1];
        for (i, c) in a.coeffs.iter().enumerate() {
            v[i + 1] = f.add(&v[i + 1], c);
            v[i] = f.add(&v[i], &f.derivative(c));
        }
        self.from_coeffs(v)
    }

    pub fn mul(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        let f = &self.field;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut acc = vec![f.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        let mut dib = b.clone();
        for (i, c) in a.coeffs.iter().enumerate() {
            if i > 0 {
                dib = self.mul_d(&dib);
            }
            if f.is_zero(c) {
                continue;
            }
            for (j, x) in dib.coeffs.iter().enumerate() {
                acc[j] = f.add(&acc[j], &f.mul(c, x));
            }
        }
        self.from_coeffs(acc)
    }

    pub fn pow(&self, a: &OrePoly<F::Elem>, mut k: u64) -> OrePoly<F::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn monic(&self, a: &OrePoly<F::Elem>) -> OrePoly<F::Elem> {
        match a.lc() {
            None => self.zero(),
            Some(lc) if self.field.is_one(lc) => a.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).unwrap(), a),
        }
    }

    /// Right division: `a = q b + r` with `ord r < ord b`.
    pub fn divrem_right(
        &self,
        a: &OrePoly<F::Elem>,
        b: &OrePoly<F::Elem>,
    ) -> Result<(OrePoly<F::Elem>, OrePoly<F::Elem>)> {
        let f = &self.field;
        let Some(ob) = b.ord() else {
            return Err(Error::DivisionByZero);
        };
        let Some(oa) = a.ord() else {
            return Ok((self.zero(), self.zero()));
        };
        if oa < ob {
            return Ok((self.zero(), a.clone()));
        }
        let mut shifted = vec![b.clone()];
        for _ in ob..oa {
            let next = self.mul_d(shifted.last().unwrap());
            shifted.push(next);
        }
        let lc_inv = f.inv(b.lc().unwrap()).unwrap();
        let mut q = vec![f.zero(); oa - ob + 1];
        let mut r = a.coeffs.clone();
        for k in (0..=oa - ob).rev() {
            let top = &r[k + ob];
            if f.is_zero(top) {
                continue;
            }
            let c = f.mul(top, &lc_inv);
            for (j, x) in shifted[k].coeffs.iter().enumerate() {
                r[j] = f.sub(&r[j], &f.mul(&c, x));
            }
            q[k] = c;
        }
        r.truncate(ob);
        Ok((self.from_coeffs(q), self.from_coeffs(r)))
    }

    pub fn rem_right(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> Result<OrePoly<F::Elem>> {
        Ok(self.divrem_right(a, b)?.1)
    }

    /// Monic greatest common right divisor.
    pub fn gcrd(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> Result<OrePoly<F::Elem>> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem_right(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.monic(&x))
    }

    /// Monic least common left multiple of two nonzero operators.
    pub fn lclm2(&self, a: &OrePoly<F::Elem>, b: &OrePoly<F::Elem>) -> Result<OrePoly<F::Elem>> {
        let f = &self.field;
        if a.is_zero() || b.is_zero() {
            return Err(Error::ZeroOperator);
        }
        let ob = b.ord().unwrap();
        // Columns rem(d^i a, b); the first dependency gives U a = V b.
        let pad = |r: OrePoly<F::Elem>| -> Vec<F::Elem> {
            let mut v = r.coeffs;
            v.resize(ob, f.zero());
            v
        };
        let mut cols = Vec::new();
        let mut cur = self.rem_right(a, b)?;
        loop {
            cols.push(pad(cur.clone()));
            let ker = kernel_basis(f, &from_columns(&cols));
            if let Some(v) = ker.first() {
                let k = cols.len() - 1;
                let lead_inv = f.inv(&v[k]).expect("first dependency involves the newest column");
                let mut acc = self.zero();
                let mut dia = a.clone();
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        dia = self.mul_d(&dia);
                    }
                    acc = self.add(&acc, &self.scale(&f.mul(c, &lead_inv), &dia));
                }
                return Ok(self.monic(&acc));
            }
            cur = self.rem_right(&self.mul_d(&cur), b)?;
        }
    }

    /// Monic LCLM of a list of nonzero operators (1 for the empty list).
    pub fn lclm(&self, ops: &[OrePoly<F::Elem>]) -> Result<OrePoly<F::Elem>> {
        let mut acc = self.one();
        for op in ops {
            acc = self.lclm2(&acc, op)?;
        }
        Ok(acc)
    }

    /// Image under `d -> d + g`.
    pub fn shift(&self, a: &OrePoly<F::Elem>, g: &F::Elem) -> OrePoly<F::Elem> {
        let step = self.from_coeffs(vec![g.clone(), self.field.one()]);
        let mut pw = self.one();
        let mut acc = self.zero();
        for (i, c) in a.coeffs.iter().enumerate() {
            if i > 0 {
                pw = self.mul(&pw, &step);
            }
            acc = self.add(&acc, &self.scale(c, &pw));
        }
        acc
    }

    /// `sum coeffs[i] f^(i)`.
    pub fn apply(&self, a: &OrePoly<F::Elem>, x: &F::Elem) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        let mut der = x.clone();
        for (i, c) in a.coeffs.iter().enumerate() {
            if i > 0 {
                der = f.derivative(&der);
            }
            acc = f.add(&acc, &f.mul(c, &der));
        }
        acc
    }

    pub fn map_coeffs<G: DifferentialField>(
        &self,
        target: &OreRing<G>,
        a: &OrePoly<F::Elem>,
        map: impl Fn(&F::Elem) -> G::Elem,
    ) -> OrePoly<G::Elem> {
        target.from_coeffs(a.coeffs.iter().map(map).collect())
    }
}

/// Smallest `d` such that `a = D^-1 (sum p_i d^i)` with all `deg p_i`
/// and `deg D` at most `d`.
pub fn operator_degree(k: &RatField, a: &OrePoly<RatFunc>) -> usize {
    let den = a.coeffs.iter().fold(k.polys.one(), |acc, c| k.polys.lcm(&acc, &c.den));
    let mut d = den.len() - 1;
    for c in &a.coeffs {
        if c.is_zero() {
            continue;
        }
        let scaled = k.polys.mul(&c.num, &k.polys.div_exact(&den, &c.den).unwrap());
        d = d.max(scaled.len() - 1);
    }
    d
}

/// True iff `c` lies in `F_q(t^p)[d^p]`.
pub fn is_central(k: &RatField, c: &OrePoly<RatFunc>) -> bool {
    let p = k.p() as usize;
    c.coeffs.iter().enumerate().all(|(i, x)| x.is_zero() || (i % p == 0 && k.is_pth_power(x)))
}

/// `q` with `l = q c` for a central `c`.
pub fn exact_right_quotient_central(
    ring: &OreRing<RatField>,
    l: &OrePoly<RatFunc>,
    c: &OrePoly<RatFunc>,
) -> Result<OrePoly<RatFunc>> {
    if c.is_zero() || !is_central(&ring.field, c) {
        return Err(Error::NotCentral);
    }
    let (q, r) = ring.divrem_right(l, c)?;
    if !r.is_zero() {
        return Err(Error::NotDivisible);
    }
    Ok(q)
}
