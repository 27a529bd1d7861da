//! Autoreduced and coherent sets, Ritt reduction with certificates, and
//! membership in differential ideals given by characteristic sets.

mod coherence;
mod groebner;
mod ritt;

pub use coherence::{check_coherent, check_coherent_with_budget, CoherenceReport, PairCheck, PairVerdict};
pub use groebner::{GroebnerBudget, DEFAULT_BUDGET};
pub use ritt::{ideal_member, is_reduced, ritt_remainder, CertificateTerm, ReductionCertificate};

use std::cmp::Ordering;
use std::fmt;

use crate::coeffield::FieldElem;
use crate::diffpoly::{AlgIndet, DiffPoly, Rank};
use crate::error::{Error, Result};

/// One member of an autoreduced set with its cached data.
#[derive(Clone, Debug, PartialEq)]
pub struct Element {
    pub poly: DiffPoly,
    pub rank: Rank,
    pub initial: DiffPoly,
    pub separant: DiffPoly,
}

impl Element {
    fn new(poly: DiffPoly) -> Result<Self> {
        let rank = poly.rank()?;
        let initial = poly.initial()?;
        let separant = poly.separant()?;
        Ok(Element { poly, rank, initial, separant })
    }

    pub fn leader(&self) -> &AlgIndet {
        &self.rank.leader
    }

    pub fn degree(&self) -> u32 {
        self.rank.degree
    }
}

/// An autoreduced set sorted by increasing rank, with `H = Π I_f S_f`.
#[derive(Clone, Debug, PartialEq)]
pub struct AutoreducedSet {
    elements: Vec<Element>,
    h: DiffPoly,
    asserted_characteristic: bool,
}

/// Validates Def. (1) of autoreducedness and caches leaders, initials, separants and `H`.
pub fn check_autoreduced(polys: Vec<DiffPoly>) -> Result<AutoreducedSet> {
    let mut elements = polys.into_iter().map(Element::new).collect::<Result<Vec<_>>>()?;
    elements.sort_by(|a, b| a.rank.cmp(&b.rank));
    for f in &elements {
        for g in &elements {
            if std::ptr::eq(f, g) {
                continue;
            }
            if let Some(u) = obstruction(f, &g.poly) {
                return Err(Error::NotAutoreduced {
                    f: f.poly.to_string(),
                    g: g.poly.to_string(),
                    offending: u.to_string(),
                });
            }
        }
    }
    let mut h = DiffPoly::one();
    for e in &elements {
        h = h.mul(&e.initial).mul(&e.separant);
    }
    Ok(AutoreducedSet { elements, h, asserted_characteristic: false })
}

/// An indeterminate of `p` that makes it reducible by `f`, if any.
pub(crate) fn obstruction(f: &Element, p: &DiffPoly) -> Option<AlgIndet> {
    let v = f.leader();
    for u in p.indeterminates().into_iter().rev() {
        if u.is_proper_derivative_of(v) {
            return Some(u);
        }
        if &u == v && p.degree_in(&u) >= f.degree() {
            return Some(u);
        }
    }
    None
}

impl AutoreducedSet {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn polys(&self) -> impl Iterator<Item = &DiffPoly> {
        self.elements.iter().map(|e| &e.poly)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elements[i]
    }

    /// `H_Λ = Π I_f S_f`.
    pub fn h(&self) -> &DiffPoly {
        &self.h
    }

    pub fn leaders(&self) -> Vec<AlgIndet> {
        self.elements.iter().map(|e| e.leader().clone()).collect()
    }

    /// Records the caller's assertion that this is a characteristic set of a
    /// prime differential ideal. The assertion is not verified.
    pub fn assert_characteristic(mut self) -> Self {
        self.asserted_characteristic = true;
        self
    }

    pub fn is_asserted_characteristic(&self) -> bool {
        self.asserted_characteristic
    }

    /// `Λ^φ`, applying a coefficient map to every element.
    pub fn map_coefficients(&self, mut phi: impl FnMut(&FieldElem) -> Result<FieldElem>) -> Result<AutoreducedSet> {
        let hphi = self.h.map_coefficients(&mut phi)?;
        if hphi.is_zero() {
            return Err(Error::HVanishesUnderMap);
        }
        let mapped = self
            .elements
            .iter()
            .map(|e| e.poly.map_coefficients(&mut phi))
            .collect::<Result<Vec<_>>>()?;
        let mut out = check_autoreduced(mapped)?;
        out.asserted_characteristic = self.asserted_characteristic;
        Ok(out)
    }
}

/// Kolchin's order on autoreduced sets: compare ranks elementwise; when one
/// set extends the other, the longer one is lower.
pub fn compare_autoreduced(a: &AutoreducedSet, b: &AutoreducedSet) -> Ordering {
    for (x, y) in a.elements.iter().zip(&b.elements) {
        match x.rank.cmp(&y.rank) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    b.len().cmp(&a.len())
}

impl fmt::Display for AutoreducedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.polys().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
