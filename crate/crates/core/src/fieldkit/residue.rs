//! Residue fields F_q[t]/(pi) for irreducible pi: the finite fields used as
//! evaluation points when specializing polynomials over F_q(t).

use rand::RngCore;

use crate::field::{Field, FiniteField};
use crate::fieldkit::fq::{Fq, FqElem};
use crate::fieldkit::ratfunc::FqPoly;
use crate::fieldkit::upoly::PolyRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    pub ring: PolyRing<Fq>,
    pub modulus: FqPoly,
    order: u64,
}

impl ResidueField {
    /// `modulus` must be monic irreducible over F_q; returns `None` when
    /// the field order does not fit in a u64.
    pub fn new(fq: Fq, modulus: FqPoly) -> Option<Self> {
        let k = modulus.len() - 1;
        let order = (fq.q() as u64).checked_pow(k as u32)?;
        Some(ResidueField { ring: PolyRing::new(fq), modulus, order })
    }

    pub fn reduce(&self, a: &[FqElem]) -> FqPoly {
        self.ring.rem(a, &self.modulus)
    }
}

impl Field for ResidueField {
    type Elem = FqPoly;

    fn zero(&self) -> FqPoly {
        vec![]
    }

    fn one(&self) -> FqPoly {
        self.ring.one()
    }

    fn is_zero(&self, a: &FqPoly) -> bool {
        a.is_empty()
    }

    fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.ring.add(a, b)
    }

    fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.ring.sub(a, b)
    }

    fn neg(&self, a: &FqPoly) -> FqPoly {
        self.ring.neg(a)
    }

    fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.reduce(&self.ring.mul(a, b))
    }

    fn inv(&self, a: &FqPoly) -> Option<FqPoly> {
        if a.is_empty() {
            return None;
        }
        let (g, s, _) = self.ring.xgcd(a, &self.modulus);
        debug_assert_eq!(g, self.ring.one());
        Some(self.reduce(&s))
    }

    fn from_int(&self, n: i64) -> FqPoly {
        self.ring.constant(self.ring.field.from_int(n))
    }

    fn characteristic(&self) -> u32 {
        self.ring.field.p()
    }
}

impl FiniteField for ResidueField {
    fn order(&self) -> u64 {
        self.order
    }

    fn random(&self, rng: &mut dyn RngCore) -> FqPoly {
        let k = self.modulus.len() - 1;
        self.ring.normalize((0..k).map(|_| self.ring.field.random(rng)).collect())
    }

    fn pth_root(&self, a: &FqPoly) -> FqPoly {
        self.pow(a, self.order / self.characteristic() as u64)
    }
}
