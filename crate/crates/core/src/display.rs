//! Text forms of field elements, polynomials and operators in the
//! expression grammar read by the command-line parser: `D` for the
//! derivation, `t` for the variable, `g` for the generator of F_q.

use crate::field::Field;
use crate::fieldkit::{Fq, FqElem, RatField, RatFunc};
use crate::ore::OrePoly;

/// Sum of `c_i g^i`, highest power first.
pub fn fmt_fq(fq: &Fq, c: FqElem) -> String {
    if fq.n() == 1 {
        return c.index().to_string();
    }
    let coords = fq.coords(c);
    let terms: Vec<String> = coords
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| match (i, d) {
            (0, d) => d.to_string(),
            (_, 1) => power("g", i),
            (_, d) => format!("{d}*{}", power("g", i)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{k}"),
    }
}

/// `c * var^k` with the coefficient parenthesized when it is a sum.
fn term(coef: &str, one: bool, var: &str, k: usize) -> String {
    if k == 0 {
        return coef.to_string();
    }
    if one {
        return power(var, k);
    }
    if coef.contains('+') || coef.contains('/') {
        format!("({coef})*{}", power(var, k))
    } else {
        format!("{coef}*{}", power(var, k))
    }
}

pub fn fmt_fqpoly(fq: &Fq, a: &[FqElem], var: &str) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !fq.is_zero(c))
        .map(|(i, c)| term(&fmt_fq(fq, *c), fq.is_one(c), var, i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn fmt_ratfunc(k: &RatField, a: &RatFunc) -> String {
    let num = fmt_fqpoly(&k.fq, &a.num, "t");
    if a.is_polynomial() {
        num
    } else {
        format!("({num})/({})", fmt_fqpoly(&k.fq, &a.den, "t"))
    }
}

/// Polynomial with F_q(t) coefficients in the variable `var`.
pub fn fmt_poly_over(k: &RatField, a: &[RatFunc], var: &str) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| term(&fmt_ratfunc(k, c), k.is_one(c), var, i))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub fn fmt_operator(k: &RatField, a: &OrePoly<RatFunc>) -> String {
    fmt_poly_over(k, &a.coeffs, "D")
}

pub fn fmt_ypoly(k: &RatField, a: &[RatFunc]) -> String {
    fmt_poly_over(k, a, "Y")
}

/// A polynomial over F_q(s), written with `t^p` in place of `s`.
pub fn fmt_spoly(k: &RatField, a: &[RatFunc]) -> String {
    let expanded: Vec<RatFunc> = a.iter().map(|c| k.expand(c)).collect();
    fmt_ypoly(k, &expanded)
}
