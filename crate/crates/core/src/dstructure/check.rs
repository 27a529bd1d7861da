use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::DStructure;
use crate::coeffield::{FieldElem, RatPoly, TMonomial};
use crate::error::{Error, Result};
use crate::ring::Ring;
use num_rational::BigRational;

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureCheck {
    pub name: String,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&StructureCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.counterexample {
                None => writeln!(f, "pass: {}", c.name)?,
                Some(w) => writeln!(f, "FAIL: {}: {}", c.name, w)?,
            }
        }
        writeln!(f, "verdict: {}", if self.passed() { "pass" } else { "fail" })
    }
}

struct Checker {
    checks: Vec<StructureCheck>,
}

impl Checker {
    fn record(&mut self, name: String, failure: Option<String>) {
        // keep the first counterexample per check
        if let Some(c) = self.checks.iter_mut().find(|c| c.name == name) {
            if c.passed && failure.is_some() {
                c.passed = false;
                c.counterexample = failure;
            }
            return;
        }
        self.checks.push(StructureCheck { name, passed: failure.is_none(), counterexample: failure });
    }
}

fn random_poly(rng: &mut ChaCha8Rng, vars: usize) -> RatPoly {
    let terms = rng.gen_range(1..=3);
    RatPoly::from_terms((0..terms).map(|_| {
        let exps = (0..vars).map(|_| rng.gen_range(0..=2)).collect();
        (TMonomial::from_exponents(exps), BigRational::from_integer(rng.gen_range(-5i64..=5).into()))
    }))
}

fn random_elem(rng: &mut ChaCha8Rng, vars: usize) -> FieldElem {
    let num = random_poly(rng, vars);
    if vars == 0 || rng.gen_bool(0.5) {
        return FieldElem::from_poly(num);
    }
    let mut den = random_poly(rng, vars);
    while den.is_zero() {
        den = random_poly(rng, vars);
    }
    FieldElem::from_fraction(num, den).expect("nonzero denominator")
}

fn show(s: &DStructure, r: &Result<Vec<FieldElem>>) -> String {
    match r {
        Ok(v) => s.render(v),
        Err(e) => e.to_string(),
    }
}

/// Verifies the defining properties of a D-structure on the generators and
/// on `samples` random elements drawn from a seeded generator.
pub(super) fn check_structure(s: &DStructure, samples: usize, seed: u64) -> StructureReport {
    let mut ck = Checker { checks: Vec::new() };
    let d = s.ring();
    let vars = s.field.num_generators();
    let m = s.field.num_derivations();
    let nf = s.num_factors();

    // π ∘ e = id
    let pi_name = "pi o e = id".to_string();
    ck.record(pi_name.clone(), None);
    for k in 1..=vars {
        let t = FieldElem::t(k);
        let img = &s.images[k - 1];
        if img[0] != t {
            ck.record(pi_name.clone(), Some(format!("pi(e(t{k})) = {} != t{k}", img[0])));
        }
    }

    // e ∘ δ_j = δ_j ∘ e on generators
    for j in 1..=m {
        let name = format!("e o d{j} = d{j} o e");
        ck.record(name.clone(), None);
        for k in 1..=vars {
            let t = FieldElem::t(k);
            let lhs = s.e_of(&s.field.derive(j, &t).expect("derivation in range"));
            let rhs = d.apply_delta(j, &s.images[k - 1]);
            if lhs.as_ref() != Ok(&rhs) {
                ck.record(name.clone(), Some(format!("e(d{j} t{k}) = {} but d{j} e(t{k}) = {}", show(s, &lhs), s.render(&rhs))));
            }
        }
    }

    // σ_i injectivity witnesses: generator images are pairwise distinct and transcendental
    for i in 0..nf {
        let name = format!("sigma{i} injective on generators");
        ck.record(name.clone(), None);
        let imgs: Vec<FieldElem> = (0..vars).map(|k| d.residue(i, &s.images[k]).expect("factor exists")).collect();
        for (k, a) in imgs.iter().enumerate() {
            if a.as_rational().is_some() {
                ck.record(name.clone(), Some(format!("sigma{i}(t{}) = {a} is constant", k + 1)));
            }
            for (l, b) in imgs.iter().enumerate().skip(k + 1) {
                if a == b {
                    ck.record(name.clone(), Some(format!("sigma{i}(t{}) = sigma{i}(t{}) = {a}", k + 1, l + 1)));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let a = random_elem(&mut rng, vars);
        let b = random_elem(&mut rng, vars);
        let (ea, eb) = (s.e_of(&a), s.e_of(&b));
        let (ea, eb) = match (ea, eb) {
            (Ok(x), Ok(y)) => (x, y),
            (Err(Error::DenominatorNotUnit(i)), _) | (_, Err(Error::DenominatorNotUnit(i))) => {
                ck.record(format!("sigma{i} injective on generators"), Some(format!("denominator of {a} or {b} maps to a non-unit")));
                continue;
            }
            (Err(e), _) | (_, Err(e)) => {
                ck.record("e is defined".into(), Some(e.to_string()));
                continue;
            }
        };
        let sum = s.e_of(&a.add(&b));
        if sum.as_ref() != Ok(&d.add(&ea, &eb)) {
            ck.record("e additive".into(), Some(format!("a = {a}, b = {b}")));
        } else {
            ck.record("e additive".into(), None);
        }
        let prod = s.e_of(&a.mul(&b));
        if prod.as_ref() != Ok(&d.mul(&ea, &eb)) {
            ck.record("e multiplicative".into(), Some(format!("a = {a}, b = {b}")));
        } else {
            ck.record("e multiplicative".into(), None);
        }
        if ea[0] != a {
            ck.record(pi_name.clone(), Some(format!("pi(e({a})) = {}", ea[0])));
        }
        for j in 1..=m {
            let name = format!("e o d{j} = d{j} o e");
            let lhs = s.e_of(&s.field.derive(j, &a).expect("derivation in range"));
            let rhs = d.apply_delta(j, &ea);
            if lhs.as_ref() != Ok(&rhs) {
                ck.record(name, Some(format!("a = {a}: e(d{j} a) = {} but d{j} e(a) = {}", show(s, &lhs), s.render(&rhs))));
            }
        }
    }
    StructureReport { checks: ck.checks }
}
