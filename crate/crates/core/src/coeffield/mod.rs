//! Exact differential coefficient fields of characteristic zero.
//!
//! Two kinds ship: ℚ itself and the rational function field `ℚ(t1, ..., ts)`.
//! Derivation `δ_j` acts as `∂/∂t_j` when `j ≤ s` and as zero otherwise, so a
//! field can carry any number of commuting derivations.

mod heugcd;
mod poly;
mod ratfunc;
pub mod series;

pub use poly::{RatPoly, TMonomial};
pub(crate) use poly::{fmt_monomial, fmt_rational};
pub use ratfunc::{monomial_elem, render_rational, FieldElem};

use num_rational::BigRational;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    /// `ℚ(t1, ..., t_vars)`.
    RationalFunctions { vars: usize },
}

/// A computable differential field: ℚ or ℚ(t̄) with `m` commuting derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    derivations: usize,
    kind: FieldKind,
}

impl Field {
    pub fn rationals(derivations: usize) -> Self {
        Field { derivations, kind: FieldKind::Rationals }
    }

    pub fn rational_functions(vars: usize, derivations: usize) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Invalid("a rational function field needs at least one generator".into()));
        }
        Ok(Field { derivations, kind: FieldKind::RationalFunctions { vars } })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Number of derivations `m`.
    pub fn num_derivations(&self) -> usize {
        self.derivations
    }

    /// Number of generators `s` (zero for ℚ).
    pub fn num_generators(&self) -> usize {
        match self.kind {
            FieldKind::Rationals => 0,
            FieldKind::RationalFunctions { vars } => vars,
        }
    }

    pub fn check_derivation(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.derivations {
            return Err(Error::DerivationOutOfRange { index: j, max: self.derivations });
        }
        Ok(())
    }

    /// Whether `a` only involves generators of this field.
    pub fn contains(&self, a: &FieldElem) -> bool {
        a.num_vars() <= self.num_generators()
    }

    /// `δ_j(a)` for `1 ≤ j ≤ m`.
    pub fn derive(&self, j: usize, a: &FieldElem) -> Result<FieldElem> {
        self.check_derivation(j)?;
        Ok(derive_unchecked(j, a))
    }

    /// Exact value of `a` at a rational point of length `s`.
    pub fn eval_at_point(&self, a: &FieldElem, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.num_generators() {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, field has {} generators",
                point.len(),
                self.num_generators()
            )));
        }
        a.eval_at(point)
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q with {} derivation(s)", self.derivations),
            FieldKind::RationalFunctions { vars } => {
                let gens: Vec<String> = (1..=vars).map(|k| format!("t{k}")).collect();
                write!(f, "Q({}) with {} derivation(s)", gens.join(","), self.derivations)
            }
        }
    }
}

/// `δ_j` as `∂/∂t_j`; generators beyond those present differentiate to zero.
pub(crate) fn derive_unchecked(j: usize, a: &FieldElem) -> FieldElem {
    a.partial(j - 1)
}
