//! Field abstractions shared by the polynomial, matrix and operator code.
//!
//! Fields are "ring objects": a context value that knows how to combine
//! plain element values. This keeps elements small (no back-pointer to the
//! context) and lets the same matrix or operator code run over F_q, F_q(t)
//! and algebraic extensions of F_q(t).

use std::fmt::Debug;
use std::hash::Hash;

use rand::RngCore;

pub trait Field: Clone + Debug {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under Z -> F.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn characteristic(&self) -> u32;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// Rough size of an element, used to pick cheap pivots.
    fn weight(&self, _a: &Self::Elem) -> usize {
        0
    }

    /// Quotient `a / b`.
    ///
    /// Panics if `b` is zero; callers check divisors that come from input.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let b_inv = self.inv(b).expect("division by zero in field");
        self.mul(a, &b_inv)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
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
}

/// A field equipped with a derivation.
pub trait DifferentialField: Field {
    fn derivative(&self, a: &Self::Elem) -> Self::Elem;
}

/// A finite field, with what Cantor-Zassenhaus style factoring needs.
pub trait FiniteField: Field {
    /// Number of elements.
    fn order(&self) -> u64;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;
    /// The unique `b` with `b^p = a`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem;
}
