//! Factorization of univariate polynomials over finite fields:
//! squarefree decomposition (with p-th root descent), distinct-degree and
//! equal-degree splitting.

use rand::RngCore;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::fieldkit::upoly::{Poly, PolyRing};

fn pth_root_poly<F: FiniteField>(ring: &PolyRing<F>, f: &[F::Elem]) -> Poly<F::Elem> {
    let p = ring.field.characteristic() as usize;
    let out = f.iter().step_by(p).map(|c| ring.field.pth_root(c)).collect();
    ring.normalize(out)
}

/// Squarefree decomposition of a monic polynomial over a finite field.
/// Returns pairwise coprime squarefree monic parts with multiplicities.
pub fn squarefree<F: FiniteField>(ring: &PolyRing<F>, f: &[F::Elem]) -> Vec<(Poly<F::Elem>, usize)> {
    let p = ring.field.characteristic() as usize;
    let mut out = Vec::new();
    if f.len() <= 1 {
        return out;
    }
    let f = ring.monic(f);
    let df = ring.derivative(&f);
    if df.is_empty() {
        for (h, m) in squarefree(ring, &pth_root_poly(ring, &f)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = ring.gcd(&f, &df);
    let mut w = ring.div_exact(&f, &c).unwrap();
    let mut i = 1;
    while w.len() > 1 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).unwrap();
        if z.len() > 1 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = ring.div_exact(&c, &w).unwrap();
    }
    if c.len() > 1 {
        for (h, m) in squarefree(ring, &pth_root_poly(ring, &c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// `x^(q^k) mod f` for k = 1.., via repeated q-th powering.
fn frobenius_step<F: FiniteField>(ring: &PolyRing<F>, h: &[F::Elem], f: &[F::Elem]) -> Poly<F::Elem> {
    ring.powmod(h, ring.field.order(), f)
}

/// Distinct-degree factorization of a squarefree monic polynomial.
pub fn distinct_degree<F: FiniteField>(ring: &PolyRing<F>, f: &[F::Elem]) -> Vec<(Poly<F::Elem>, usize)> {
    let mut out = Vec::new();
    let mut f = ring.monic(f);
    let x = ring.x();
    let mut h = ring.rem(&x, &f);
    let mut d = 0;
    while f.len() > 1 {
        d += 1;
        if 2 * d > f.len() - 1 {
            let deg = f.len() - 1;
            out.push((f, deg));
            break;
        }
        h = frobenius_step(ring, &h, &f);
        let g = ring.gcd(&f, &ring.sub(&h, &x));
        if g.len() > 1 {
            f = ring.div_exact(&f, &g).unwrap();
            h = ring.rem(&h, &f);
            out.push((g, d));
        }
    }
    out
}

fn random_poly<F: FiniteField>(ring: &PolyRing<F>, deg_bound: usize, rng: &mut dyn RngCore) -> Poly<F::Elem> {
    ring.normalize((0..deg_bound).map(|_| ring.field.random(rng)).collect())
}

/// Splits a squarefree monic product of irreducibles of degree `d`.
pub fn equal_degree<F: FiniteField>(
    ring: &PolyRing<F>,
    f: &[F::Elem],
    d: usize,
    rng: &mut dyn RngCore,
) -> Vec<Poly<F::Elem>> {
    let n = f.len() - 1;
    if n == d {
        return vec![ring.monic(f)];
    }
    let q = ring.field.order();
    let p = ring.field.characteristic() as u64;
    loop {
        let a = random_poly(ring, n, rng);
        if a.len() <= 1 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace to GF(2): sum of a^(2^i), i < log2(q) * d.
            let e = 63 - q.leading_zeros() as usize;
            let mut term = ring.rem(&a, f);
            let mut acc = term.clone();
            for _ in 1..e * d {
                term = ring.rem(&ring.mul(&term, &term), f);
                acc = ring.add(&acc, &term);
            }
            acc
        } else {
            let u = ring.powmod(&a, (q - 1) / 2, f);
            let mut v = u.clone();
            let mut acc = u;
            for _ in 1..d {
                v = ring.powmod(&v, q, f);
                acc = ring.rem(&ring.mul(&acc, &v), f);
            }
            ring.sub(&acc, &ring.one())
        };
        let g = ring.gcd(f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let h = ring.div_exact(f, &g).unwrap();
            let mut out = equal_degree(ring, &g, d, rng);
            out.extend(equal_degree(ring, &h, d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree then coefficients. The leading unit is dropped.
pub fn factor<F: FiniteField>(
    ring: &PolyRing<F>,
    f: &[F::Elem],
    rng: &mut dyn RngCore,
) -> Result<Vec<(Poly<F::Elem>, usize)>> {
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in squarefree(ring, f) {
        for (block, d) in distinct_degree(ring, &part) {
            for irr in equal_degree(ring, &block, d, rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Irreducibility test for a polynomial over a finite field.
pub fn is_irreducible<F: FiniteField>(ring: &PolyRing<F>, f: &[F::Elem]) -> bool {
    let n = match f.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    let f = ring.monic(f);
    let x = ring.x();
    let mut h = ring.rem(&x, &f);
    for _ in 1..=n / 2 {
        h = frobenius_step(ring, &h, &f);
        if ring.gcd(&f, &ring.sub(&h, &x)).len() > 1 {
            return false;
        }
    }
    true
}

/// Monic irreducible polynomials of degree `k`, in lexicographic order of
/// their coefficient lists (element indices, constant term first).
pub fn irreducibles_of_degree<'a, F, I>(
    ring: &'a PolyRing<F>,
    k: usize,
    elements: I,
) -> impl Iterator<Item = Poly<F::Elem>> + 'a
where
    F: FiniteField,
    I: Fn() -> Vec<F::Elem>,
{
    let elems = elements();
    let q = elems.len();
    let total = (q as u128).pow(k as u32);
    (0..total).filter_map(move |idx| {
        let mut coeffs = Vec::with_capacity(k + 1);
        let mut v = idx;
        let mut digits = vec![0usize; k];
        for i in (0..k).rev() {
            digits[i] = (v % q as u128) as usize;
            v /= q as u128;
        }
        for d in digits {
            coeffs.push(elems[d].clone());
        }
        coeffs.push(ring.field.one());
        if is_irreducible(ring, &coeffs) {
            Some(coeffs)
        } else {
            None
        }
    })
}
