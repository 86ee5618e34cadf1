//! LCLM-decomposition of operators over F_q(t).
//!
//! The pipeline reads the Frobenius invariants of the p-curvature, builds
//! a model operator `L*` with the same invariants whose decomposition is
//! known (shifted minimal multiples of `(t d - t f_N)^nu`), finds an
//! isomorphism `D_L* -> D_L` and transports the model's pieces to `L`.

use std::collections::HashMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algext::{ExtElem, ExtField};
use crate::asd::central_operator_reducible;
use crate::display::fmt_ypoly;
use crate::error::{Error, Result};
use crate::field::{Field, FiniteField};
use crate::fieldkit::{PolyRing, RatField, RatFunc};
use crate::linalg::{from_columns, kernel_basis};
use crate::ore::{exact_right_quotient_central, operator_degree, OrePoly, OreRing};
use crate::pcurv::{n_star_power_at_d, pcurvature};
use crate::yfactor::{factor_monic_in_y, is_separable_irreducible, YPoly};

/// Samples tried at each escalation level of [`pick_iso`].
pub const ISO_SAMPLES_PER_LEVEL: usize = 64;
pub const ISO_LEVELS: usize = 4;

type Op = OrePoly<RatFunc>;

/// A chain `Q_1 | ... | Q_m` of monic polynomials over F_q(t), `m <= p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRequest {
    pub chain: Vec<YPoly>,
}

impl InvariantRequest {
    pub fn new(k: &RatField, chain: Vec<YPoly>) -> Result<Self> {
        let polys = PolyRing::new(k.clone());
        let chain: Vec<YPoly> = chain.into_iter().map(|q| polys.normalize(q)).collect();
        if chain.is_empty() {
            return Err(Error::EmptyRequest);
        }
        if chain.len() > k.p() as usize {
            return Err(Error::BadRequest(format!("{} invariants exceed p = {}", chain.len(), k.p())));
        }
        for (i, q) in chain.iter().enumerate() {
            if q.is_empty() || !polys.is_monic(q) {
                return Err(Error::BadRequest(format!("entry {} is not monic", i + 1)));
            }
            if i > 0 && polys.div_exact(q, &chain[i - 1]).is_none() {
                return Err(Error::BadRequest(format!("entry {} does not divide entry {}", i, i + 1)));
            }
        }
        Ok(InvariantRequest { chain })
    }
}

/// One summand of a model operator: `label` is its `Q`-level invariant
/// (a power of an irreducible) and `index` its shift `i/t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub op: Op,
    pub label: YPoly,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceRepr {
    pub l_star: Op,
    pub pieces: Vec<Piece>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyFlags {
    pub lclm_check: bool,
    pub order_sum_check: bool,
    pub indecomposable_checks: Vec<bool>,
    pub divides_checks: Vec<bool>,
}

impl VerifyFlags {
    pub fn all_pass(&self) -> bool {
        self.lclm_check
            && self.order_sum_check
            && self.indecomposable_checks.iter().all(|&b| b)
            && self.divides_checks.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub input: Op,
    /// Leading coefficient of the input; the factors are monic.
    pub leading_coeff: RatFunc,
    pub factors: Vec<Op>,
    pub factor_invariants: Vec<YPoly>,
    pub iso_witness: Option<Op>,
    pub lclm_check: bool,
    pub order_sum_check: bool,
    pub indecomposable_checks: Vec<bool>,
    pub degrees: Vec<usize>,
    pub seed: u64,
}

impl DecompositionReport {
    pub fn verified(&self) -> bool {
        self.lclm_check && self.order_sum_check && self.indecomposable_checks.iter().all(|&b| b)
    }
}

fn ypolys(k: &RatField) -> PolyRing<RatField> {
    PolyRing::new(k.clone())
}

/// Separable irreducible factors of `q`, or `InseparableFactor`.
fn separable_factors(k: &RatField, q: &[RatFunc]) -> Result<Vec<YPoly>> {
    let mut out = Vec::new();
    for (n, _) in factor_monic_in_y(k, q)? {
        if !is_separable_irreducible(k, &n) {
            return Err(Error::InseparableFactor(fmt_ypoly(k, &n)));
        }
        out.push(n);
    }
    Ok(out)
}

/// Irreducible factors `N_*` of `Q_m` with their multiplicity in
/// `Q_1 ... Q_m` (the p-th root of χ).
pub fn check_hypothesis(ring: &OreRing<RatField>, l: &Op) -> Result<Vec<(YPoly, usize)>> {
    if l.is_zero() {
        return Err(Error::ZeroOperator);
    }
    if l.ord() == Some(0) {
        return Ok(vec![]);
    }
    let data = pcurvature(ring, l)?;
    hypothesis_from_roots(&ring.field, &data.invariant_roots)
}

fn hypothesis_from_roots(k: &RatField, roots: &[YPoly]) -> Result<Vec<(YPoly, usize)>> {
    let polys = ypolys(k);
    let last = roots.last().ok_or(Error::ZeroOrder)?;
    Ok(separable_factors(k, last)?
        .into_iter()
        .map(|n| {
            let nu = roots.iter().map(|q| polys.valuation(q, &n)).sum();
            (n, nu)
        })
        .collect())
}

/// `[(L_i, N_*i, nu_i)]` with `L_i = gcrd(L, N_*i^(p nu_i)(d))`.
pub fn first_decomposition(ring: &OreRing<RatField>, l: &Op) -> Result<Vec<(Op, YPoly, usize)>> {
    let p = ring.field.p() as u64;
    check_hypothesis(ring, l)?
        .into_iter()
        .map(|(n, nu)| {
            let c = n_star_power_at_d(ring, &n, p * nu as u64);
            Ok((ring.gcrd(l, &c)?, n, nu))
        })
        .collect()
}

/// Coordinates of an operator of order `< r` over `K_N` in F_q(t).
fn flatten_ext(ext: &ExtField, a: &OrePoly<ExtElem>, r: usize) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(r * ext.degree());
    for j in 0..r {
        match a.coeffs.get(j) {
            Some(c) => out.extend(c.iter().cloned()),
            None => out.extend(ext.zero()),
        }
    }
    out
}

/// The monic operator of least order in F_q(t)<d> that is a left
/// multiple of `r` in `K_N<d>`.
pub fn minimal_rational_multiple(ext: &ExtField, r: &OrePoly<ExtElem>) -> Result<Op> {
    let k = ext.base().clone();
    let ering = OreRing::new(ext.clone());
    let ord = r.ord().ok_or(Error::ZeroOperator)?;
    let qring = OreRing::new(k.clone());
    if ord == 0 {
        return Ok(qring.one());
    }
    let dim = ord * ext.degree();
    let mut cur = ering.one();
    let mut vecs = vec![flatten_ext(ext, &cur, ord)];
    for _ in 0..dim {
        cur = ering.rem_right(&ering.mul_d(&cur), r)?;
        vecs.push(flatten_ext(ext, &cur, ord));
        let ker = kernel_basis(&k, &from_columns(&vecs));
        if let Some(v) = ker.into_iter().next() {
            return Ok(qring.monic(&qring.from_coeffs(v)));
        }
    }
    unreachable!("dim + 1 vectors in a space of dimension dim are dependent")
}

/// `d -> d + i/t`.
fn shift_by_index(ring: &OreRing<RatField>, a: &Op, i: usize) -> Op {
    let k = &ring.field;
    ring.shift(a, &k.mul(&k.from_int(i as i64), &k.monomial(k.fq.one(), -1)))
}

/// Cache of `f_N` per irreducible factor.
type AsdCache = HashMap<YPoly, (ExtField, ExtElem)>;

fn asd_witness(k: &RatField, n: &YPoly, cache: &mut AsdCache) -> Result<(ExtField, ExtElem)> {
    if let Some(v) = cache.get(n) {
        return Ok(v.clone());
    }
    let verdict = central_operator_reducible(k, n)?;
    let f = match verdict.outcome.solution() {
        Some(s) => s.f.clone(),
        None => return Err(Error::CentralIrreducibleFactor(fmt_ypoly(k, n))),
    };
    cache.insert(n.clone(), (verdict.ext.clone(), f.clone()));
    Ok((verdict.ext, f))
}

/// The piece for factor `n` with multiplicity `nu` at position `i`.
fn model_piece(ring: &OreRing<RatField>, ext: &ExtField, f: &ExtElem, nu: usize, i: usize) -> Result<Op> {
    let k = &ring.field;
    let ering = OreRing::new(ext.clone());
    let t = ext.embed(&k.t());
    let base = ering.from_coeffs(vec![ext.neg(&ext.mul(&t, f)), t]);
    let r = ering.pow(&base, nu as u64);
    let m = minimal_rational_multiple(ext, &r)?;
    Ok(ring.monic(&shift_by_index(ring, &m, i)))
}

/// A model operator with the requested invariants, and its pieces.
pub fn nice_repr(ring: &OreRing<RatField>, req: &InvariantRequest) -> Result<NiceRepr> {
    nice_repr_cached(ring, &req.chain, &mut AsdCache::new())
}

fn nice_repr_cached(ring: &OreRing<RatField>, chain: &[YPoly], cache: &mut AsdCache) -> Result<NiceRepr> {
    let k = &ring.field;
    let polys = ypolys(k);
    let chain: Vec<&YPoly> = chain.iter().filter(|q| q.len() > 1).collect();
    let last = match chain.last() {
        Some(q) => *q,
        None => return Err(Error::EmptyRequest),
    };
    let factors = separable_factors(k, last)?;
    let mut pieces = Vec::new();
    for (pos, q) in chain.iter().enumerate() {
        let i = pos + 1;
        for n in &factors {
            let nu = polys.valuation(q, n);
            if nu == 0 {
                continue;
            }
            let (ext, f) = asd_witness(k, n, cache)?;
            pieces.push(Piece { op: model_piece(ring, &ext, &f, nu, i)?, label: polys.pow(n, nu as u64), index: i });
        }
    }
    let ops: Vec<Op> = pieces.iter().map(|p| p.op.clone()).collect();
    Ok(NiceRepr { l_star: ring.lclm(&ops)?, pieces })
}

/// F_q(s)-basis of `{M : ord M < ord L, L* M = 0 mod L}`.
pub fn hom_space(ring: &OreRing<RatField>, l_star: &Op, l: &Op) -> Result<Vec<Op>> {
    let k = &ring.field;
    let r = l.ord().ok_or(Error::ZeroOperator)?;
    let rs = l_star.ord().ok_or(Error::ZeroOperator)?;
    if r != rs {
        return Err(Error::OrderMismatch(rs, r));
    }
    if r == 0 {
        return Err(Error::ZeroOrder);
    }
    let p = k.p() as usize;
    let mut cols = Vec::with_capacity(p * r);
    let mut basis_ops = Vec::with_capacity(p * r);
    for j in 0..r {
        for u in 0..p {
            let m = ring.monomial(k.monomial(k.fq.one(), u as i64), j);
            let img = ring.rem_right(&ring.mul(l_star, &m), l)?;
            let mut col = Vec::with_capacity(p * r);
            for jj in 0..r {
                let c = img.coeffs.get(jj).cloned().unwrap_or_else(|| k.zero());
                col.extend(k.split_by_residue(&c));
            }
            cols.push(col);
            basis_ops.push(m);
        }
    }
    let mut out = Vec::new();
    for v in kernel_basis(k, &from_columns(&cols)) {
        // Scale by the common denominator; F_q(s) constants commute with d.
        let den = v.iter().fold(k.polys.one(), |acc, c| k.polys.lcm(&acc, &c.den));
        let den = k.from_poly(den);
        let mut m = ring.zero();
        for (c, b) in v.iter().zip(&basis_ops) {
            if !c.is_zero() {
                m = ring.add(&m, &ring.scale(&k.expand(&k.mul(c, &den)), b));
            }
        }
        if !ring.rem_right(&ring.mul(l_star, &m), l)?.is_zero() {
            return Err(Error::VerificationFailed("hom-space element does not map L* into L".into()));
        }
        out.push(m);
    }
    Ok(out)
}

/// A random combination of `basis` coprime to `l`.
pub fn pick_iso(ring: &OreRing<RatField>, l: &Op, basis: &[Op], rng: &mut dyn RngCore) -> Result<Op> {
    let k = &ring.field;
    if basis.is_empty() {
        return Err(Error::EmptyBasis);
    }
    for level in 0..ISO_LEVELS {
        for _ in 0..ISO_SAMPLES_PER_LEVEL {
            let mut m = ring.zero();
            for b in basis {
                let c: Vec<_> = (0..=level).map(|_| k.fq.random(rng)).collect();
                let c = k.expand(&k.from_poly(c));
                if !c.is_zero() {
                    m = ring.add(&m, &ring.scale(&c, b));
                }
            }
            if m.is_zero() {
                continue;
            }
            if ring.gcrd(&m, l)?.ord() == Some(0) {
                return Ok(m);
            }
        }
    }
    Err(Error::RetryExhausted(ISO_LEVELS * ISO_SAMPLES_PER_LEVEL))
}

/// Images of the pieces under `D_L* -> D_L`, `1 -> M`.
pub fn propagate(ring: &OreRing<RatField>, l: &Op, m: &Op, pieces: &[Op]) -> Result<Vec<Op>> {
    if ring.gcrd(m, l)?.ord() != Some(0) {
        return Err(Error::NotCoprime);
    }
    pieces
        .iter()
        .map(|piece| {
            let img = ring.rem_right(&ring.mul(piece, m), l)?;
            ring.gcrd(l, &img)
        })
        .collect()
}

pub fn is_indecomposable(ring: &OreRing<RatField>, l: &Op) -> Result<bool> {
    let k = &ring.field;
    match l.ord() {
        None => return Err(Error::ZeroOperator),
        Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        _ => {}
    }
    let data = pcurvature(ring, l)?;
    let factors = hypothesis_from_roots(k, &data.invariant_roots)?;
    if factors.len() != 1 {
        return Ok(false);
    }
    let n = &factors[0].0;
    if central_operator_reducible(k, n)?.reducible {
        return Ok(data.invariants.len() == 1);
    }
    let c = n_star_power_at_d(ring, n, k.p() as u64);
    let mut rest = ring.monic(l);
    while rest.ord() != Some(0) {
        match exact_right_quotient_central(ring, &rest, &c) {
            Ok(q) => rest = q,
            Err(Error::NotDivisible) => return Ok(false),
            Err(e) => return Err(e),
        }
    }
    Ok(true)
}

pub fn verify_decomposition(ring: &OreRing<RatField>, l: &Op, factors: &[Op]) -> VerifyFlags {
    let target = if l.is_zero() { l.clone() } else { ring.monic(l) };
    let lclm_check = ring.lclm(factors).map(|x| x == target).unwrap_or(false);
    let ord_sum: usize = factors.iter().map(|f| f.ord().unwrap_or(0)).sum();
    let order_sum_check = Some(ord_sum) == l.ord();
    let indecomposable_checks = factors.iter().map(|f| is_indecomposable(ring, f).unwrap_or(false)).collect();
    let divides_checks = factors
        .iter()
        .map(|f| ring.rem_right(l, f).map(|r| r.is_zero()).unwrap_or(false))
        .collect();
    VerifyFlags { lclm_check, order_sum_check, indecomposable_checks, divides_checks }
}

/// Decomposes `l` with randomness drawn from a ChaCha stream seeded by `seed`.
pub fn lclm_decompose(ring: &OreRing<RatField>, l: &Op, seed: u64) -> Result<DecompositionReport> {
    let k = &ring.field;
    let polys = ypolys(k);
    let p = k.p() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ord = l.ord().ok_or(Error::ZeroOperator)?;
    let leading_coeff = l.lc().cloned().unwrap();
    let input = l.clone();
    let mut found: Vec<(Op, YPoly, usize)> = Vec::new();
    let mut iso_witness = None;

    if ord == 1 {
        let data = pcurvature(ring, l)?;
        found.push((ring.monic(l), data.invariant_roots[0].clone(), 1));
    } else if ord > 1 {
        let data = pcurvature(ring, l)?;
        let mut q = data.invariant_roots.clone();
        let factors = hypothesis_from_roots(k, &q)?;
        let mut cache = AsdCache::new();
        let mut rest = ring.monic(l);

        if q.len() == p {
            for (n, _) in &factors {
                let nu = polys.valuation(&q[0], n);
                if nu == 0 || polys.valuation(&q[p - 1], n) != nu {
                    continue;
                }
                let c = n_star_power_at_d(ring, n, (p * nu) as u64);
                rest = exact_right_quotient_central(ring, &rest, &c)?;
                let npow = polys.pow(n, nu as u64);
                for qi in q.iter_mut() {
                    *qi = polys.div_exact(qi, &npow).expect("constant chain divides every entry");
                }
                if !central_operator_reducible(k, n)?.reducible {
                    found.push((c, npow, 0));
                    continue;
                }
                let chain = vec![npow.clone(); p];
                let model = nice_repr_cached(ring, &chain, &mut cache)?;
                let ops: Vec<Op> = model.pieces.iter().map(|x| x.op.clone()).collect();
                if ring.lclm(&ops)? != c {
                    return Err(Error::VerificationFailed("central pieces do not recover N(d^p)".into()));
                }
                found.extend(model.pieces.into_iter().map(|x| (x.op, x.label, x.index)));
            }
        }

        if rest.ord() != Some(0) {
            let model = nice_repr_cached(ring, &q, &mut cache)?;
            let basis = hom_space(ring, &model.l_star, &rest)?;
            let m = pick_iso(ring, &rest, &basis, &mut rng)?;
            let ops: Vec<Op> = model.pieces.iter().map(|x| x.op.clone()).collect();
            let images = propagate(ring, &rest, &m, &ops)?;
            for (img, piece) in images.into_iter().zip(model.pieces) {
                found.push((img, piece.label, piece.index));
            }
            iso_witness = Some(m);
        }
    }

    found.sort_by(|a, b| (a.1.len(), &a.1, a.2).cmp(&(b.1.len(), &b.1, b.2)));
    let factors: Vec<Op> = found.iter().map(|x| x.0.clone()).collect();
    let flags = verify_decomposition(ring, l, &factors);
    let report = DecompositionReport {
        input,
        leading_coeff,
        degrees: factors.iter().map(|f| operator_degree(k, f)).collect(),
        factor_invariants: found.into_iter().map(|x| x.1).collect(),
        factors,
        iso_witness,
        lclm_check: flags.lclm_check,
        order_sum_check: flags.order_sum_check,
        indecomposable_checks: flags.indecomposable_checks.clone(),
        seed,
    };
    if !flags.all_pass() {
        return Err(Error::VerificationFailed(format!("{flags:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldkit::Fq;
    use crate::pcurv::{frobenius_invariants, operators_equivalent};
    use rand::Rng;

    fn setup(p: u32) -> (RatField, OreRing<RatField>) {
        let k = RatField::new(Fq::prime(p).unwrap());
        (k.clone(), OreRing::new(k))
    }

    fn c_over_t(k: &RatField, c: i64) -> RatFunc {
        k.mul(&k.from_int(c), &k.monomial(k.fq.one(), -1))
    }

    fn lin(r: &OreRing<RatField>, f: RatFunc) -> Op {
        r.from_coeffs(vec![r.field.neg(&f), r.field.one()])
    }

    fn y_minus(k: &RatField, c: RatFunc) -> YPoly {
        vec![k.neg(&c), k.one()]
    }

    fn same_set(mut a: Vec<Op>, mut b: Vec<Op>) -> bool {
        a.sort();
        b.sort();
        a == b
    }

    #[test]
    fn hypothesis_examples() {
        let (k, r) = setup(3);
        let l = r.from_coeffs(vec![k.zero(), k.from_int(-1), k.one()]);
        let got = check_hypothesis(&r, &l).unwrap();
        assert_eq!(got, vec![(y_minus(&k, k.zero()), 1), (y_minus(&k, k.one()), 1)]);
        // d^3 - t: the p-curvature is t + nilpotent, so the chi-root is Y^3 - t.
        let l = r.from_coeffs(vec![k.neg(&k.t()), k.zero(), k.zero(), k.one()]);
        assert!(matches!(check_hypothesis(&r, &l), Err(Error::InseparableFactor(_))));
        assert_eq!(check_hypothesis(&r, &r.one()).unwrap(), vec![]);
    }

    #[test]
    fn first_decomposition_examples() {
        let (k, r) = setup(3);
        let l = r.from_coeffs(vec![k.zero(), k.from_int(-1), k.one()]);
        let got = first_decomposition(&r, &l).unwrap();
        assert_eq!(got[0], (r.d(), y_minus(&k, k.zero()), 1));
        assert_eq!(got[1], (lin(&r, k.one()), y_minus(&k, k.one()), 1));
        let tdd = r.from_coeffs(vec![k.zero(), k.one(), k.t()]);
        let got = first_decomposition(&r, &tdd).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].0, r.monic(&tdd));
        let d3 = r.monomial(k.one(), 3);
        let got = first_decomposition(&r, &d3).unwrap();
        assert_eq!(got, vec![(d3.clone(), y_minus(&k, k.zero()), 3)]);
    }

    #[test]
    fn minimal_multiple_examples() {
        let (k, r) = setup(3);
        let ext = crate::algext::make_extension(&k, &y_minus(&k, k.t())).unwrap();
        let er = OreRing::new(ext.clone());
        let td = er.from_coeffs(vec![ext.zero(), ext.embed(&k.t())]);
        assert_eq!(minimal_rational_multiple(&ext, &td).unwrap(), r.d());
        let rr = er.from_coeffs(vec![ext.embed(&k.neg(&k.t())), ext.one()]);
        assert_eq!(minimal_rational_multiple(&ext, &rr).unwrap(), lin(&r, k.t()));

        // d - a over K = F_3(t)[Y]/(Y^2 - t).
        let ext = crate::algext::make_extension(&k, &[k.neg(&k.t()), k.zero(), k.one()]).unwrap();
        let er = OreRing::new(ext.clone());
        let rr = er.from_coeffs(vec![ext.neg(&ext.generator()), ext.one()]);
        let m = minimal_rational_multiple(&ext, &rr).unwrap();
        assert_eq!(m.ord(), Some(2));
        let lifted = r.map_coeffs(&er, &m, |c| ext.embed(c));
        assert!(er.rem_right(&lifted, &rr).unwrap().is_zero());
    }

    #[test]
    fn nice_repr_examples() {
        for p in [3, 5, 7] {
            let (k, r) = setup(p);
            let y = y_minus(&k, k.zero());
            let req = InvariantRequest::new(&k, vec![y.clone()]).unwrap();
            let nr = nice_repr(&r, &req).unwrap();
            assert_eq!(nr.l_star, lin(&r, c_over_t(&k, -1)));

            let req = InvariantRequest::new(&k, vec![y_minus(&k, k.t())]).unwrap();
            let nr = nice_repr(&r, &req).unwrap();
            assert_eq!(nr.l_star, lin(&r, k.sub(&k.t(), &c_over_t(&k, 1))));
            let expect = vec![k.neg(&k.monomial(k.fq.one(), 1)), k.one()];
            assert_eq!(frobenius_invariants(&r, &nr.l_star).unwrap(), vec![expect]);

            let req = InvariantRequest::new(&k, vec![y.clone(), y.clone()]).unwrap();
            let nr = nice_repr(&r, &req).unwrap();
            let want = vec![lin(&r, c_over_t(&k, -1)), lin(&r, c_over_t(&k, -2))];
            assert!(same_set(nr.pieces.iter().map(|x| x.op.clone()).collect(), want));
            assert_eq!(frobenius_invariants(&r, &nr.l_star).unwrap(), vec![y.clone(), y.clone()]);
        }
        let (k, _) = setup(3);
        assert_eq!(InvariantRequest::new(&k, vec![]), Err(Error::EmptyRequest));
    }

    #[test]
    fn nice_repr_round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut done = 0;
        let mut tries = 0;
        while done < 30 {
            tries += 1;
            assert!(tries < 400, "too few usable random requests");
            let p = [3, 5][done % 2];
            let (k, r) = setup(p);
            let dy = rng.gen_range(1..=2usize);
            let mut n: YPoly = (0..dy)
                .map(|_| {
                    let num = (0..=rng.gen_range(0..=2)).map(|_| k.fq.random(&mut rng)).collect();
                    k.from_poly(num)
                })
                .collect();
            n.push(k.one());
            match factor_monic_in_y(&k, &n) {
                Ok(f) if f.len() == 1 && f[0].1 == 1 && is_separable_irreducible(&k, &n) => {}
                _ => continue,
            }
            if !central_operator_reducible(&k, &n).unwrap().reducible {
                continue;
            }
            let m = rng.gen_range(1..=2usize);
            let chain: Vec<YPoly> = (0..m).map(|_| n.clone()).collect();
            let req = InvariantRequest::new(&k, chain).unwrap();
            let nr = nice_repr(&r, &req).unwrap();
            let inv = frobenius_invariants(&r, &nr.l_star).unwrap();
            let roots: Vec<YPoly> = inv.iter().map(|x| crate::pcurv::invariants_pth_root(&k, x).unwrap()).collect();
            assert_eq!(roots, req.chain);
            done += 1;
        }
    }

    #[test]
    fn hom_space_examples() {
        let (k, r) = setup(5);
        let basis = hom_space(&r, &r.d(), &r.d()).unwrap();
        assert_eq!(basis, vec![r.one()]);
        let l = lin(&r, c_over_t(&k, -2));
        let basis = hom_space(&r, &r.d(), &l).unwrap();
        assert_eq!(basis.len(), 1);
        assert_eq!(basis[0], r.constant(k.monomial(k.fq.one(), 2)));
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = pick_iso(&r, &l, &basis, &mut rng).unwrap();
        assert_eq!(m.ord(), Some(0));
        assert_eq!(pick_iso(&r, &l, &[], &mut rng), Err(Error::EmptyBasis));
        let tdd = r.from_coeffs(vec![k.zero(), k.one(), k.t()]);
        assert!(hom_space(&r, &tdd, &tdd).unwrap().contains(&r.one()));
        assert_eq!(hom_space(&r, &r.d(), &tdd), Err(Error::OrderMismatch(1, 2)));
    }

    #[test]
    fn propagate_identity() {
        let (k, r) = setup(3);
        let y = y_minus(&k, k.zero());
        let req = InvariantRequest::new(&k, vec![y.clone(), y.clone()]).unwrap();
        let nr = nice_repr(&r, &req).unwrap();
        let ops: Vec<Op> = nr.pieces.iter().map(|x| x.op.clone()).collect();
        assert_eq!(propagate(&r, &nr.l_star, &r.one(), &ops).unwrap(), ops);
        assert_eq!(propagate(&r, &r.d(), &r.d(), &[r.d()]), Err(Error::NotCoprime));
    }

    #[test]
    fn indecomposable_examples() {
        let (k, r) = setup(3);
        assert!(is_indecomposable(&r, &r.from_coeffs(vec![k.zero(), k.one(), k.t()])).unwrap());
        assert!(!is_indecomposable(&r, &r.from_coeffs(vec![k.zero(), k.from_int(-1), k.one()])).unwrap());
        assert!(is_indecomposable(&r, &lin(&r, k.t())).unwrap());
        assert!(!is_indecomposable(&r, &r.monomial(k.one(), 3)).unwrap());
        // d^3 - 1/t^3 is the central symbol of Y - 1/t, irreducible over F_3(t).
        let c = r.from_coeffs(vec![k.neg(&k.monomial(k.fq.one(), -3)), k.zero(), k.zero(), k.one()]);
        assert!(is_indecomposable(&r, &c).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let (k, r) = setup(3);
        let rep = lclm_decompose(&r, &r.monomial(k.one(), 3), 0).unwrap();
        let want = vec![r.d(), lin(&r, c_over_t(&k, -1)), lin(&r, c_over_t(&k, -2))];
        assert!(same_set(rep.factors.clone(), want));
        assert!(rep.verified());

        let l = r.from_coeffs(vec![k.zero(), k.from_int(-1), k.one()]);
        let rep = lclm_decompose(&r, &l, 0).unwrap();
        assert_eq!(rep.factors.len(), 2);
        assert_eq!(rep.factor_invariants, vec![y_minus(&k, k.zero()), y_minus(&k, k.one())]);

        let tdd = r.from_coeffs(vec![k.zero(), k.one(), k.t()]);
        let rep = lclm_decompose(&r, &tdd, 0).unwrap();
        assert_eq!(rep.factors, vec![r.monic(&tdd)]);

        let (k, r) = setup(5);
        let l = r.lclm(&[r.d(), lin(&r, c_over_t(&k, -2))]).unwrap();
        let rep = lclm_decompose(&r, &l, 0).unwrap();
        assert_eq!(rep.factors.len(), 2);
        assert!(rep.factor_invariants.iter().all(|q| *q == y_minus(&k, k.zero())));
        assert!(operators_equivalent(&r, &rep.factors[0], &rep.factors[1]).unwrap());
        assert!(rep.iso_witness.is_some());

        assert!(lclm_decompose(&r, &r.one(), 0).unwrap().factors.is_empty());
        let l = r.from_coeffs(vec![k.t(), k.t()]);
        assert_eq!(lclm_decompose(&r, &l, 0).unwrap().factors, vec![r.monic(&l)]);
    }

    #[test]
    fn decompose_central_irreducible() {
        let (k, r) = setup(3);
        let c = r.from_coeffs(vec![k.neg(&k.monomial(k.fq.one(), -3)), k.zero(), k.zero(), k.one()]);
        let l = r.lclm(&[c.clone(), r.d()]).unwrap();
        let rep = lclm_decompose(&r, &l, 1).unwrap();
        assert!(rep.factors.contains(&c));
        assert!(rep.factors.contains(&r.d()));
    }

    #[test]
    fn verify_examples() {
        let (k, r) = setup(3);
        let l = r.from_coeffs(vec![k.zero(), k.from_int(-1), k.one()]);
        assert!(verify_decomposition(&r, &l, &[r.d(), lin(&r, k.one())]).all_pass());
        assert!(!verify_decomposition(&r, &l, &[r.d()]).order_sum_check);
        let d2 = r.monomial(k.one(), 2);
        assert!(!verify_decomposition(&r, &d2, &[r.d(), r.d()]).lclm_check);
    }

    #[test]
    fn random_lclm_of_first_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for i in 0..12 {
            let p = [3, 5, 7][i % 3];
            let (k, r) = setup(p);
            let ops: Vec<Op> = (0..rng.gen_range(2..=3))
                .map(|_| {
                    let num = (0..=rng.gen_range(0..=2)).map(|_| k.fq.random(&mut rng)).collect();
                    let den = if rng.gen_bool(0.5) { k.polys.one() } else { vec![k.fq.random(&mut rng), k.fq.one()] };
                    lin(&r, k.frac(num, den).unwrap())
                })
                .collect();
            let l = r.lclm(&ops).unwrap();
            let rep = lclm_decompose(&r, &l, i as u64).unwrap();
            assert!(rep.verified());
            let flags = verify_decomposition(&r, &l, &rep.factors);
            assert!(flags.all_pass());
        }
    }
}
