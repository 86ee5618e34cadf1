//! Factorization of monic polynomials in `F_q(t)[Y]`.
//!
//! Separable squarefree parts are cleared to `F_q[t][Y]`, specialized modulo
//! an irreducible `pi(t)`, factored over `F_q[t]/(pi)`, Hensel lifted in
//! powers of `pi` and recombined by trial division. Parts in `Y^p` are
//! handled by descending to the polynomial in `Y`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::fieldkit::ffactor::{self, irreducibles_of_degree};
use crate::fieldkit::{FqPoly, Poly, PolyRing, RatField, RatFunc, ResidueField};

pub type YPoly = Poly<RatFunc>;

/// Largest residue degree tried for the specialization point.
pub const MAX_SPECIALIZATION_DEGREE: usize = 4;

const FACTOR_SEED: u64 = 0x5eed_f00d;

/// For monic irreducible `n`: true iff `dn/dY != 0`.
pub fn is_separable_irreducible(k: &RatField, n: &[RatFunc]) -> bool {
    !PolyRing::new(k.clone()).derivative(n).is_empty()
}

/// Monic irreducible factors of the monic `q` with multiplicities, sorted
/// by degree then coefficients.
pub fn factor_monic_in_y(k: &RatField, q: &[RatFunc]) -> Result<Vec<(YPoly, usize)>> {
    let ring = PolyRing::new(k.clone());
    let q = ring.normalize(q.to_vec());
    if q.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if !ring.is_monic(&q) {
        return Err(Error::NotMonic);
    }
    let mut out: Vec<(YPoly, usize)> = Vec::new();
    for (g, m) in factor_rec(&ring, &q)? {
        match out.iter_mut().find(|(h, _)| *h == g) {
            Some(slot) => slot.1 += m,
            None => out.push((g, m)),
        }
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Yun's algorithm: separable squarefree parts with multiplicities, plus
/// the leftover factor lying in `K[Y^p]`.
fn yun(ring: &PolyRing<RatField>, f: &[RatFunc]) -> (Vec<(YPoly, usize)>, YPoly) {
    let df = ring.derivative(f);
    if df.is_empty() {
        return (vec![], f.to_vec());
    }
    let mut parts = Vec::new();
    let mut c = ring.gcd(f, &df);
    let mut w = ring.div_exact(f, &c).unwrap();
    let mut i = 1;
    while w.len() > 1 {
        let y = ring.gcd(&w, &c);
        let z = ring.div_exact(&w, &y).unwrap();
        if z.len() > 1 {
            parts.push((z, i));
        }
        i += 1;
        w = y;
        c = ring.div_exact(&c, &w).unwrap();
    }
    (parts, c)
}

fn factor_rec(ring: &PolyRing<RatField>, f: &[RatFunc]) -> Result<Vec<(YPoly, usize)>> {
    let k = &ring.field;
    let p = k.p() as usize;
    let mut out = Vec::new();
    if f.len() <= 1 {
        return Ok(out);
    }
    let (parts, rest) = yun(ring, f);
    for (z, i) in parts {
        for g in factor_separable(ring, &z)? {
            out.push((g, i));
        }
    }
    if rest.len() > 1 {
        let contracted: YPoly = rest.iter().step_by(p).cloned().collect();
        for (s, e) in factor_rec(ring, &contracted)? {
            if s.iter().all(|c| k.is_pth_power(c)) {
                // S(Y^p) = T^p with T irreducible.
                let t = s.iter().map(|c| k.pth_root(c).unwrap()).collect();
                out.push((t, e * p));
            } else {
                let mut expanded = vec![k.zero(); (s.len() - 1) * p + 1];
                for (j, c) in s.into_iter().enumerate() {
                    expanded[j * p] = c;
                }
                out.push((expanded, e));
            }
        }
    }
    Ok(out)
}

/// Factors a monic separable squarefree polynomial.
fn factor_separable(ring: &PolyRing<RatField>, z: &[RatFunc]) -> Result<Vec<YPoly>> {
    if z.len() <= 2 {
        return Ok(vec![z.to_vec()]);
    }
    let k = &ring.field;
    let d = z.len() - 1;
    let den = z.iter().fold(k.polys.one(), |acc, c| k.polys.lcm(&acc, &c.den));
    let den_f = k.from_poly(den);
    // Y -> Y / D, scaled by D^d, gives a monic polynomial over F_q[t].
    let cleared: YPoly = z.iter().enumerate().map(|(i, c)| k.mul(c, &k.pow(&den_f, (d - i) as u64))).collect();
    let den_inv = k.inv(&den_f).unwrap();
    let factors = factor_cleared(ring, &cleared)?;
    Ok(factors
        .into_iter()
        .map(|g| {
            let m = g.len() - 1;
            g.iter().enumerate().map(|(j, c)| k.mul(c, &k.pow(&den_inv, (m - j) as u64))).collect()
        })
        .collect())
}

fn to_residue(e: &ResidueField, f: &[RatFunc]) -> Poly<FqPoly> {
    PolyRing::new(e.clone()).normalize(f.iter().map(|c| e.reduce(&c.num)).collect())
}

fn from_residue(k: &RatField, f: &[FqPoly]) -> YPoly {
    f.iter().map(|c| k.from_poly(c.clone())).collect()
}

fn reduce_mod(k: &RatField, f: &[RatFunc], m: &FqPoly) -> YPoly {
    PolyRing::new(k.clone()).normalize(f.iter().map(|c| k.from_poly(k.polys.rem(&c.num, m))).collect())
}

/// Factors a monic squarefree separable polynomial with coefficients in
/// F_q[t]; the factors again have polynomial coefficients.
fn factor_cleared(ring: &PolyRing<RatField>, f: &[RatFunc]) -> Result<Vec<YPoly>> {
    let k = &ring.field;
    let bound = f.iter().map(|c| c.num.len().saturating_sub(1)).max().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    for deg in 1..=MAX_SPECIALIZATION_DEGREE {
        let elems = || k.fq.elements().collect::<Vec<_>>();
        for pi in irreducibles_of_degree(&k.polys, deg, elems) {
            let Some(e) = ResidueField::new(k.fq.clone(), pi.clone()) else {
                break;
            };
            let er = PolyRing::new(e.clone());
            let fbar = to_residue(&e, f);
            if er.gcd(&fbar, &er.derivative(&fbar)).len() != 1 {
                continue;
            }
            let local = ffactor::factor(&er, &fbar, &mut rng)?;
            if local.len() == 1 {
                return Ok(vec![f.to_vec()]);
            }
            let local: Vec<Poly<FqPoly>> = local.into_iter().map(|(g, _)| g).collect();
            let prec = (2 * bound + 1).div_ceil(deg);
            let lifted = hensel(k, &e, f, &local, prec);
            let modulus = k.polys.pow(&pi, prec as u64);
            return Ok(recombine(ring, f, &lifted, &modulus));
        }
    }
    Err(Error::NoGoodSpecialization(MAX_SPECIALIZATION_DEGREE))
}

/// Lifts `f = prod local (mod pi)` to a factorization modulo `pi^prec`.
fn hensel(k: &RatField, e: &ResidueField, f: &[RatFunc], local: &[Poly<FqPoly>], prec: usize) -> Vec<YPoly> {
    if local.len() == 1 {
        let m = k.polys.pow(&e.modulus, prec as u64);
        return vec![reduce_mod(k, f, &m)];
    }
    let er = PolyRing::new(e.clone());
    let mid = local.len() / 2;
    let a = local[..mid].iter().fold(er.one(), |acc, g| er.mul(&acc, g));
    let b = local[mid..].iter().fold(er.one(), |acc, g| er.mul(&acc, g));
    let (g, h) = lift_pair(k, e, f, &a, &b, prec);
    let mut out = hensel(k, e, &g, &local[..mid], prec);
    out.extend(hensel(k, e, &h, &local[mid..], prec));
    out
}

/// Linear Hensel lifting of `f = a b (mod pi)` for coprime monic `a`, `b`.
fn lift_pair(
    k: &RatField,
    e: &ResidueField,
    f: &[RatFunc],
    a: &Poly<FqPoly>,
    b: &Poly<FqPoly>,
    prec: usize,
) -> (YPoly, YPoly) {
    let ring = PolyRing::new(k.clone());
    let er = PolyRing::new(e.clone());
    let (_, _, t) = er.xgcd(a, b);
    let mut g = from_residue(k, a);
    let mut h = from_residue(k, b);
    let mut pj = e.modulus.clone();
    for _ in 1..prec {
        let err = ring.sub(f, &ring.mul(&g, &h));
        let pj_inv = k.inv(&k.from_poly(pj.clone())).unwrap();
        let scaled: YPoly = err.iter().map(|c| k.mul(c, &pj_inv)).collect();
        let ebar = to_residue(e, &scaled);
        // a dh + b dg = ebar with deg dg < deg a.
        let dg = er.rem(&er.mul(&t, &ebar), a);
        let dh = er.div_exact(&er.sub(&ebar, &er.mul(b, &dg)), a).expect("Hensel step is exact");
        let lift = |d: &Poly<FqPoly>| -> YPoly { from_residue(k, d).iter().map(|c| k.mul(c, &k.from_poly(pj.clone()))).collect() };
        g = ring.add(&g, &lift(&dg));
        h = ring.add(&h, &lift(&dh));
        pj = k.polys.mul(&pj, &e.modulus);
    }
    (g, h)
}

fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..s).collect();
    if s > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        let mut i = s;
        while i > 0 && idx[i - 1] == n - s + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..s {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Groups lifted local factors into true factors by trial division, trying
/// subsets by increasing size in lexicographic order.
fn recombine(ring: &PolyRing<RatField>, f: &[RatFunc], lifted: &[YPoly], modulus: &FqPoly) -> Vec<YPoly> {
    let k = &ring.field;
    let mut remaining: Vec<YPoly> = lifted.to_vec();
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut hit = None;
        for subset in combinations(remaining.len(), s) {
            let g = subset.iter().fold(ring.one(), |acc, &i| reduce_mod(k, &ring.mul(&acc, &remaining[i]), modulus));
            if let Some(quot) = ring.div_exact(&cur, &g) {
                hit = Some((subset, g, quot));
                break;
            }
        }
        match hit {
            Some((subset, g, quot)) => {
                out.push(g);
                cur = quot;
                for i in subset.into_iter().rev() {
                    remaining.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FiniteField;
    use crate::fieldkit::Fq;
    use rand::Rng;

    fn tpoly(k: &RatField, c: &[i64]) -> RatFunc {
        k.from_poly(c.iter().map(|&x| k.fq.from_int(x)).collect())
    }

    fn ypoly(k: &RatField, cs: &[&[i64]]) -> YPoly {
        cs.iter().map(|c| tpoly(k, c)).collect()
    }

    #[test]
    fn separability_examples() {
        let k = RatField::new(Fq::prime(3).unwrap());
        assert!(!is_separable_irreducible(&k, &ypoly(&k, &[&[0, -1], &[], &[], &[1]])));
        assert!(is_separable_irreducible(&k, &ypoly(&k, &[&[0, -1], &[], &[1]])));
        assert!(is_separable_irreducible(&k, &ypoly(&k, &[&[0, -1], &[1]])));
    }

    #[test]
    fn factor_examples() {
        let k = RatField::new(Fq::prime(3).unwrap());
        let out = factor_monic_in_y(&k, &ypoly(&k, &[&[0, 0, -1], &[], &[1]])).unwrap();
        assert_eq!(out, vec![(ypoly(&k, &[&[0, 1], &[1]]), 1), (ypoly(&k, &[&[0, -1], &[1]]), 1)]);
        let irr = ypoly(&k, &[&[0, -1], &[], &[1]]);
        assert_eq!(factor_monic_in_y(&k, &irr).unwrap(), vec![(irr.clone(), 1)]);
        let y2 = ypoly(&k, &[&[], &[], &[1]]);
        assert_eq!(factor_monic_in_y(&k, &y2).unwrap(), vec![(ypoly(&k, &[&[], &[1]]), 2)]);
        // Y^3 - t is irreducible and inseparable.
        let ins = ypoly(&k, &[&[0, -1], &[], &[], &[1]]);
        assert_eq!(factor_monic_in_y(&k, &ins).unwrap(), vec![(ins, 1)]);
        // Y^3 - t^3 = (Y - t)^3.
        let cube = ypoly(&k, &[&[0, 0, 0, -1], &[], &[], &[1]]);
        assert_eq!(factor_monic_in_y(&k, &cube).unwrap(), vec![(ypoly(&k, &[&[0, -1], &[1]]), 3)]);
        assert_eq!(factor_monic_in_y(&k, &ypoly(&k, &[&[1], &[2]])), Err(Error::NotMonic));
    }

    #[test]
    fn rational_coefficients() {
        let k = RatField::new(Fq::prime(5).unwrap());
        let r = k.frac(vec![k.fq.one()], vec![k.fq.zero(), k.fq.one()]).unwrap();
        // (Y - 1/t)(Y + t)
        let a = vec![k.neg(&r), k.one()];
        let b = vec![k.t(), k.one()];
        let ring = PolyRing::new(k.clone());
        let out = factor_monic_in_y(&k, &ring.mul(&a, &b)).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out.contains(&(a, 1)) && out.contains(&(b, 1)));
    }

    fn random_monic(k: &RatField, rng: &mut ChaCha8Rng, deg: usize) -> YPoly {
        let mut c: YPoly = (0..deg)
            .map(|_| {
                let n = (0..rng.gen_range(0..=4)).map(|_| k.fq.random(rng)).collect();
                if rng.gen_bool(0.2) {
                    k.frac(n, vec![k.fq.random(rng), k.fq.one()]).unwrap()
                } else {
                    k.from_poly(n)
                }
            })
            .collect();
        c.push(k.one());
        c
    }

    // Polynomial roots of a monic polynomial over F_q[t] with t-degree <= bound.
    fn has_poly_root(k: &RatField, f: &[RatFunc], bound: usize) -> bool {
        let ring = PolyRing::new(k.clone());
        let q = k.fq.q() as usize;
        let total = q.pow(bound as u32 + 1);
        (0..total).any(|mut idx| {
            let c: Vec<_> = (0..=bound)
                .map(|_| {
                    let e = k.fq.elem((idx % q) as u32);
                    idx /= q;
                    e
                })
                .collect();
            let x = k.from_poly(c);
            k.is_zero(&ring.eval(f, &x))
        })
    }

    #[test]
    fn random_products_factor_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for case in 0..100 {
            let k = RatField::new(Fq::new([2, 3, 5][case % 3], 1 + (case % 7 == 0) as usize, None).unwrap());
            let ring = PolyRing::new(k.clone());
            let n = rng.gen_range(1..=3);
            let mut prod = ring.one();
            let mut expected: Vec<YPoly> = Vec::new();
            for _ in 0..n {
                let d = rng.gen_range(1..=3);
                let g = random_monic(&k, &mut rng, d);
                for (h, m) in factor_monic_in_y(&k, &g).unwrap() {
                    for _ in 0..m {
                        expected.push(h.clone());
                    }
                }
                prod = ring.mul(&prod, &g);
            }
            let out = factor_monic_in_y(&k, &prod).unwrap();
            let back = out.iter().fold(ring.one(), |acc, (g, m)| ring.mul(&acc, &ring.pow(g, *m as u64)));
            assert_eq!(back, prod);
            let mut got: Vec<YPoly> = Vec::new();
            for (g, m) in &out {
                assert!(ring.is_monic(g));
                for _ in 0..*m {
                    got.push(g.clone());
                }
            }
            got.sort();
            expected.sort();
            assert_eq!(got, expected, "factor of a product is the union of factors");
        }
    }

    #[test]
    fn returned_factors_have_no_small_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for &p in &[2u32, 3] {
            let k = RatField::new(Fq::prime(p).unwrap());
            let ring = PolyRing::new(k.clone());
            for _ in 0..30 {
                let d = rng.gen_range(1..=3);
                let a = random_monic(&k, &mut rng, d);
                let d = rng.gen_range(1..=2);
                let b = random_monic(&k, &mut rng, d);
                let prod: YPoly = ring.mul(&a, &b).into_iter().map(|c| k.from_poly(c.num)).collect();
                if prod.iter().any(|c| !c.is_polynomial()) {
                    continue;
                }
                let bound = prod.iter().map(|c| c.num.len().saturating_sub(1)).max().unwrap();
                if bound > 4 {
                    continue;
                }
                for (g, _) in factor_monic_in_y(&k, &prod).unwrap() {
                    if g.len() >= 3 && g.len() <= 4 && g.iter().all(|c| c.is_polynomial()) {
                        assert!(!has_poly_root(&k, &g, bound), "{g:?}");
                    }
                }
            }
        }
    }
}
