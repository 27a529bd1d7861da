use std::fmt;

use super::groebner::{in_saturation, GroebnerBudget, DEFAULT_BUDGET};
use super::{ritt_remainder, AutoreducedSet};
use crate::diffpoly::{AlgIndet, DerivOp, DiffPoly};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairVerdict {
    /// The Ritt remainder of the Δ-polynomial is zero.
    ReducesToZero,
    /// Decided by a Gröbner computation of `(Λ)_v : H^∞`.
    InSaturation,
    NotInSaturation,
}

/// The check for one pair of elements with a common derivative of their leaders.
#[derive(Clone, Debug, PartialEq)]
pub struct PairCheck {
    pub f: usize,
    pub g: usize,
    /// Least common derivative `v` of the two leaders.
    pub lcd: AlgIndet,
    /// `S_g θ_f f − S_f θ_g g`.
    pub delta: DiffPoly,
    pub remainder: DiffPoly,
    pub verdict: PairVerdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoherenceReport {
    pub pairs: Vec<PairCheck>,
    asserted_characteristic: bool,
    set: Vec<DiffPoly>,
}

impl CoherenceReport {
    pub fn is_coherent(&self) -> bool {
        self.pairs.iter().all(|p| p.verdict != PairVerdict::NotInSaturation)
    }

    /// The first failing pair.
    pub fn witness(&self) -> Option<&PairCheck> {
        self.pairs.iter().find(|p| p.verdict == PairVerdict::NotInSaturation)
    }
}

impl fmt::Display for CoherenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.pairs {
            let v = match p.verdict {
                PairVerdict::ReducesToZero => "reduces to 0",
                PairVerdict::InSaturation => "in saturation",
                PairVerdict::NotInSaturation => "NOT in saturation",
            };
            writeln!(
                f,
                "pair [{}], [{}] at {}: delta = {}; remainder = {}; {}",
                self.set[p.f], self.set[p.g], p.lcd, p.delta, p.remainder, v
            )?;
        }
        match self.witness() {
            None => writeln!(f, "verdict: coherent")?,
            Some(p) => writeln!(f, "verdict: incoherent; witness delta-polynomial: {}", p.delta)?,
        }
        if self.asserted_characteristic {
            writeln!(f, "assumption: characteristic set of a prime differential ideal (asserted, not verified)")?;
        }
        Ok(())
    }
}

pub fn check_coherent(set: &AutoreducedSet) -> Result<CoherenceReport> {
    check_coherent_with_budget(set, DEFAULT_BUDGET)
}

/// Checks every pair of elements whose leaders share a variable at the least
/// common derivative of the leaders.
pub fn check_coherent_with_budget(set: &AutoreducedSet, budget: GroebnerBudget) -> Result<CoherenceReport> {
    let mut pairs = Vec::new();
    let m = max_derivation(set);
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let (f, g) = (set.get(i), set.get(j));
            if f.leader().var != g.leader().var {
                continue;
            }
            let lcm = f.leader().theta.lcm(&g.leader().theta);
            let v = AlgIndet::new(f.leader().var, lcm.clone());
            let tf = f.leader().theta.quotient(&lcm).expect("lcm is a multiple");
            let tg = g.leader().theta.quotient(&lcm).expect("lcm is a multiple");
            let delta = g.separant.mul(&f.poly.theta_apply(&tf)).sub(&f.separant.mul(&g.poly.theta_apply(&tg)));
            let cert = ritt_remainder(&delta, set);
            let verdict = if cert.remainder.is_zero() {
                PairVerdict::ReducesToZero
            } else {
                let gens = lower_prolongations(set, &v, m);
                if in_saturation(&cert.remainder, &gens, set.h(), budget)? {
                    PairVerdict::InSaturation
                } else {
                    PairVerdict::NotInSaturation
                }
            };
            pairs.push(PairCheck { f: i, g: j, lcd: v, delta, remainder: cert.remainder, verdict });
        }
    }
    Ok(CoherenceReport {
        pairs,
        asserted_characteristic: set.is_asserted_characteristic(),
        set: set.polys().cloned().collect(),
    })
}

fn max_derivation(set: &AutoreducedSet) -> usize {
    set.polys().flat_map(|p| p.indeterminates()).map(|u| u.theta.max_index()).max().unwrap_or(0)
}

/// Generators `{θh : h ∈ Λ, v_{θh} < v}` of `(Λ)_v`.
fn lower_prolongations(set: &AutoreducedSet, v: &AlgIndet, m: usize) -> Vec<DiffPoly> {
    let mut out = Vec::new();
    for e in set.elements() {
        let budget = v.theta.order().saturating_sub(e.leader().theta.order());
        for theta in operators_up_to(m, budget) {
            if &e.leader().apply(&theta) < v {
                out.push(e.poly.theta_apply(&theta));
            }
        }
    }
    out
}

fn operators_up_to(m: usize, order: u32) -> Vec<DerivOp> {
    fn rec(m: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<DerivOp>) {
        if prefix.len() == m {
            out.push(DerivOp::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(m, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, order, &mut Vec::new(), &mut out);
    out
}
