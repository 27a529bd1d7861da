//! Desk checks for the prolongation axiom scheme: condition (i) by
//! reduction, membership in `V*(Λ) = V(Λ) \ V(H_Λ)`, and witness points.


use std::fmt;

use crate::coeffield::Field;
use crate::diffpoly::{DiffPoly, Point};
use crate::dstructure::DStructure;
use crate::error::{Error, Result};
use crate::prolongation::{components, nabla, pihat};
use crate::reduction::{ritt_remainder, AutoreducedSet};

/// `V*(Λ)` for an asserted characteristic set `Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct VStar {
    set: AutoreducedSet,
}

impl VStar {
    /// Fails with `HInAssertedIdeal` if `H_Λ` reduces to zero.
    pub fn new(set: AutoreducedSet) -> Result<Self> {
        if ritt_remainder(set.h(), &set).remainder.is_zero() {
            return Err(Error::HInAssertedIdeal);
        }
        Ok(VStar { set: set.assert_characteristic() })
    }

    pub fn set(&self) -> &AutoreducedSet {
        &self.set
    }

    pub fn h(&self) -> &DiffPoly {
        self.set.h()
    }

    pub fn contains(&self, field: &Field, a: &Point) -> Result<bool> {
        point_in_vstar(field, a, &self.set)
    }
}

/// Every element vanishes at `a` and `H(a) ≠ 0`.
pub fn point_in_vstar(field: &Field, a: &Point, set: &AutoreducedSet) -> Result<bool> {
    for f in set.polys() {
        if !f.evaluate(field, a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(!set.h().evaluate(field, a)?.is_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentCheck {
    pub source: DiffPoly,
    pub index: usize,
    pub component: DiffPoly,
    pub remainder: DiffPoly,
}

impl ComponentCheck {
    pub fn passed(&self) -> bool {
        self.remainder.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub checks: Vec<ComponentCheck>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(ComponentCheck::passed)
    }

    pub fn counterexample(&self) -> Option<&ComponentCheck> {
        self.checks.iter().find(|c| !c.passed())
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] component {}: {} -> remainder {} ({})",
                c.source,
                c.index,
                c.component,
                c.remainder,
                if c.passed() { "member" } else { "NOT a member" }
            )?;
        }
        if self.passed() {
            writeln!(f, "condition (i): pass")?;
            writeln!(f, "note: certificate is sound given that Gamma is a characteristic set of a prime differential ideal (asserted)")?;
        } else {
            writeln!(f, "condition (i): fail")?;
            writeln!(f, "note: a nonzero remainder refutes (i) only together with a witness point of V*(Gamma) where the component does not vanish")?;
        }
        Ok(())
    }
}

/// Tests `f^{(j)} ∈ [Γ]` by Ritt reduction for every `f ∈ Λ` and every `j`.
pub fn check_condition_i(lambda: &VStar, gamma: &VStar, s: &DStructure) -> Result<ConditionReport> {
    let mut checks = Vec::new();
    for f in lambda.set.polys() {
        for (index, component) in components(f, s)?.into_iter().enumerate() {
            let remainder = ritt_remainder(&component, &gamma.set).remainder;
            checks.push(ComponentCheck { source: f.clone(), index, component, remainder });
        }
    }
    Ok(ConditionReport { checks })
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport {
    pub point: Point,
    pub in_lambda: bool,
    pub nabla: Point,
    pub nabla_in_gamma: bool,
    /// `π̂_i(∇a)` and whether it lies in `V*(Λ^{σ_i})`.
    pub projections: Vec<(Point, bool)>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.in_lambda && self.nabla_in_gamma
    }
}

impl fmt::Display for WitnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(f, "a = {}: in V*(Lambda): {}", self.point, yn(self.in_lambda))?;
        writeln!(f, "nabla(a) = {}: in V*(Gamma): {}", self.nabla, yn(self.nabla_in_gamma))?;
        for (i, (p, ok)) in self.projections.iter().enumerate() {
            writeln!(f, "pihat{i}(nabla(a)) = {p}: in V*(Lambda^sigma{i}): {}", yn(*ok))?;
        }
        writeln!(f, "witness: {}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Checks `a ∈ V*(Λ)` and `∇(a) ∈ V*(Γ)`, and reports the projections.
pub fn check_witness(a: &Point, lambda: &VStar, gamma: &VStar, s: &DStructure) -> Result<WitnessReport> {
    let field = s.field();
    let in_lambda = lambda.contains(field, a)?;
    let na = nabla(a, s)?;
    let nabla_in_gamma = gamma.contains(field, &na)?;
    let mut projections = Vec::new();
    for i in 0..s.num_factors() {
        let p = pihat(i, &na, s)?;
        let ok = match lambda.set.map_coefficients(|c| s.sigma(i, c)) {
            Ok(mapped) => point_in_vstar(field, &p, &mapped)?,
            Err(Error::HVanishesUnderMap) | Err(Error::NotAutoreduced { .. }) => false,
            Err(e) => return Err(e),
        };
        projections.push((p, ok));
    }
    Ok(WitnessReport { point: a.clone(), in_lambda, nabla: na, nabla_in_gamma, projections })
}
