//! Ring objects. Elements are plain values; arithmetic goes through a ring
//! context so that rings with runtime structure (such as `B ⊗ R` with its
//! structure constants) can share generic code.

use std::fmt::Debug;

use num_rational::BigRational;

use crate::coeffield::{derive_unchecked, FieldElem};

pub trait Ring {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Image of a coefficient-field element under the structure map.
    #[allow(clippy::wrong_self_convention)]
    fn from_scalar(&self, c: &FieldElem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn scale_rational(&self, q: &BigRational, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.from_scalar(&FieldElem::from_rational(q.clone())), a)
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
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

    fn sum<'a, I>(&self, it: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        it.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A ring with commuting derivations `δ_1, δ_2, ...` (one-based).
pub trait DiffRing: Ring {
    fn derive(&self, j: usize, a: &Self::Elem) -> Self::Elem;
}

/// The coefficient field itself.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scalars;

impl Ring for Scalars {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem::zero()
    }
    fn one(&self) -> FieldElem {
        FieldElem::one()
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.add(b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        a.neg()
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.mul(b)
    }
    fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        a.sub(b)
    }
    fn from_scalar(&self, c: &FieldElem) -> FieldElem {
        c.clone()
    }
    fn scale_rational(&self, q: &BigRational, a: &FieldElem) -> FieldElem {
        a.scale(q)
    }
}

impl DiffRing for Scalars {
    fn derive(&self, j: usize, a: &FieldElem) -> FieldElem {
        derive_unchecked(j, a)
    }
}
