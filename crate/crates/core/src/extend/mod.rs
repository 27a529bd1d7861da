//! Extending a D-structure on `K` to one more element `a` of `L ⊇ K`: find
//! `b ∈ B ⊗ L` with residues `σ_i(a)` on which `Λ^e` vanishes.


use std::fmt;

use crate::coeffield::{Field, FieldElem};
use crate::diffpoly::{Point, Var};
use crate::dstructure::{DStructure, MapMode};
use crate::error::{Error, Result};
use crate::finitealg::DElement;
use crate::hensel::{lift_nonlocal, Lift, LiftProblem, SolverStrategy};
use crate::reduction::AutoreducedSet;
use crate::ring::Ring;

#[derive(Clone, Debug)]
pub struct ExtensionRequest<'a> {
    /// The structure on `K`.
    pub structure: &'a DStructure,
    /// The field `L`; its first generators are those of `K`.
    pub field: &'a Field,
    /// The element `a`, one value per variable.
    pub element: Point,
    /// A characteristic set of `I_Δ(a/K)`, or `None` if `a` is Δ-transcendental.
    pub charset: Option<AutoreducedSet>,
    /// `σ_1(a), ..., σ_t(a)` in `L`.
    pub targets: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extension {
    /// `b[k]` is the image of `x_{k+1}`.
    pub b: Vec<DElement<FieldElem>>,
    /// `π_i(b)` for each local factor.
    pub residues: Vec<Point>,
    pub lift: Option<Lift>,
    labels: Vec<String>,
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.lift {
            for r in &l.levels {
                writeln!(f, "factor {}, level {}, basis {}: solution {}", r.factor, r.level, r.basis, r.solution)?;
            }
        } else {
            writeln!(f, "transcendental: canonical lift")?;
        }
        for (k, v) in self.labels.iter().enumerate() {
            writeln!(f, "x{} = {}", k + 1, v)?;
        }
        for (i, r) in self.residues.iter().enumerate() {
            writeln!(f, "residue {i}: {r}")?;
        }
        Ok(())
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

fn validate(req: &ExtensionRequest<'_>) -> Result<()> {
    let k = req.structure.field();
    if k.num_generators() > req.field.num_generators() || k.num_derivations() != req.field.num_derivations() {
        return Err(precondition(format!("{k} is not a differential subfield of {}", req.field)));
    }
    let t = req.structure.num_factors() - 1;
    if req.targets.len() != t {
        return Err(precondition(format!("{} targets given for {t} endomorphisms", req.targets.len())));
    }
    for (_, v) in req.element.iter().chain(req.targets.iter().flat_map(|p| p.iter())) {
        if !req.field.contains(v) {
            return Err(Error::NotInDomain(v.to_string()));
        }
    }
    let Some(set) = &req.charset else {
        return Ok(());
    };
    for f in set.polys() {
        if let Some(c) = f.terms().map(|(_, c)| c).find(|c| !k.contains(c)) {
            return Err(precondition(format!("coefficient {c} of {f} is not in {k}")));
        }
        if !f.evaluate(req.field, &req.element)?.is_zero() {
            return Err(precondition(format!("{f} does not vanish at a")));
        }
        for (i, target) in req.targets.iter().enumerate() {
            let fs = req.structure.map_poly(f, MapMode::Sigma(i + 1))?;
            if !fs.evaluate(req.field, target)?.is_zero() {
                return Err(precondition(format!("{fs} does not vanish at the target of sigma{}", i + 1)));
            }
        }
    }
    if set.h().evaluate(req.field, &req.element)?.is_zero() {
        return Err(precondition("H vanishes at a"));
    }
    Ok(())
}

pub fn extend_to_element(req: &ExtensionRequest<'_>, solver: &SolverStrategy) -> Result<Extension> {
    validate(req)?;
    let alg = req.structure.algebra();
    let d = crate::finitealg::DAlgebra::new(alg, crate::ring::Scalars);
    let mut residues_in = vec![req.element.clone()];
    residues_in.extend(req.targets.iter().cloned());
    let (b, lift) = match &req.charset {
        Some(set) => {
            let system = set.polys().map(|f| req.structure.map_poly_e(f)).collect::<Result<Vec<_>>>()?;
            let problem = LiftProblem { algebra: alg, field: req.field, system };
            let l = lift_nonlocal(&problem, &residues_in, solver)?;
            (l.b.clone(), Some(l))
        }
        None => {
            let dec = alg.decomposition()?;
            let n = req.element.iter().map(|(v, _)| v.index()).max().unwrap_or(0);
            let b = (1..=n)
                .map(|k| {
                    let mut acc = d.zero();
                    for (p, f) in residues_in.iter().zip(&dec.factors) {
                        let v = p.get(Var::x(k)).ok_or_else(|| Error::MissingIndeterminate(format!("x{k}")))?;
                        acc = d.add(&acc, &d.scale(v, &d.constant(&f.idempotent)));
                    }
                    Ok(acc)
                })
                .collect::<Result<Vec<_>>>()?;
            (b, None)
        }
    };
    let residues = (0..residues_in.len())
        .map(|i| {
            let mut p = Point::new();
            for (k, v) in b.iter().enumerate() {
                p.set(Var::x(k as u32 + 1), d.residue(i, v)?);
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, (got, want)) in residues.iter().zip(&residues_in).enumerate() {
        if got != want {
            return Err(Error::Invalid(format!("residue {i} of the lift is {got}, expected {want}")));
        }
    }
    let labels = b.iter().map(|v| d.render(v)).collect();
    Ok(Extension { b, residues, lift, labels })
}
