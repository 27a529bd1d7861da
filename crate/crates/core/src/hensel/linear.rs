use crate::coeffield::FieldElem;
use crate::diffpoly::{AlgIndet, DiffPoly};
use crate::error::SolveFailure;
use crate::reduction::{check_autoreduced, check_coherent, ritt_remainder, AutoreducedSet};

/// Whether every term has total degree at most one.
pub fn is_linear(p: &DiffPoly) -> bool {
    p.terms().all(|(m, _)| m.total_degree() <= 1)
}

fn leader_coefficient(p: &DiffPoly, v: &AlgIndet) -> FieldElem {
    p.coefficient_of(v, 1).as_constant().expect("linear polynomial")
}

fn monic(p: &DiffPoly) -> DiffPoly {
    let v = p.leader().expect("nonconstant");
    p.scale(&leader_coefficient(p, &v).inv().expect("leader coefficient is nonzero"))
}

/// Replaces `g` by `g − d θ(f)` for monic `f`, where `θ v_f` occurs in `g`
/// with coefficient `d`. Returns `None` if nothing in `g` is reducible by `f`.
fn reduce_once(g: &DiffPoly, f: &DiffPoly) -> Option<DiffPoly> {
    let vf = f.leader().ok()?;
    let w = g.indeterminates().into_iter().rev().find(|w| vf.derivative_quotient(w).is_some())?;
    let theta = vf.derivative_quotient(&w).expect("checked");
    let d = leader_coefficient(g, &w);
    Some(g.sub(&f.theta_apply(&theta).scale(&d)))
}

fn inconsistent(c: &FieldElem) -> SolveFailure {
    SolveFailure::ProvenInconsistent(format!("the linear system implies {c} = 0"))
}

/// Brings `system` into autoreduced form by the elementary steps
/// `ℓ_g ← ℓ_g − (d/c) θℓ_f`, leaving the generated Δ-ideal unchanged.
fn autoreduce(system: Vec<DiffPoly>) -> Result<Vec<DiffPoly>, SolveFailure> {
    let mut polys: Vec<DiffPoly> = Vec::new();
    for p in system {
        if p.is_zero() {
            continue;
        }
        if let Some(c) = p.as_constant() {
            return Err(inconsistent(&c));
        }
        polys.push(monic(&p));
    }
    loop {
        polys.sort_by_key(|a| a.leader().unwrap());
        let mut changed = false;
        'outer: for gi in 0..polys.len() {
            for fi in 0..polys.len() {
                if fi == gi {
                    continue;
                }
                // a set with equal leaders reduces the later copy only
                if polys[fi].leader().unwrap() == polys[gi].leader().unwrap() && fi > gi {
                    continue;
                }
                if let Some(r) = reduce_once(&polys[gi], &polys[fi]) {
                    if r.is_zero() {
                        polys.remove(gi);
                    } else if let Some(c) = r.as_constant() {
                        return Err(inconsistent(&c));
                    } else {
                        polys[gi] = monic(&r);
                    }
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            return Ok(polys);
        }
    }
}

/// Autoreduces a system of linear differential polynomials and completes it
/// to a coherent set generating the same Δ-ideal.
pub fn linear_autoreduce(system: &[DiffPoly]) -> Result<AutoreducedSet, SolveFailure> {
    debug_assert!(system.iter().all(is_linear));
    let mut polys = autoreduce(system.to_vec())?;
    for _ in 0..64 {
        if polys.is_empty() {
            return Ok(check_autoreduced(Vec::new()).expect("empty set"));
        }
        let set = check_autoreduced(polys.clone()).expect("autoreduced by construction");
        let report = check_coherent(&set).map_err(|e| SolveFailure::ProvenInconsistent(e.to_string()))?;
        let extra: Vec<DiffPoly> = report
            .pairs
            .iter()
            .map(|p| ritt_remainder(&p.delta, &set).remainder)
            .filter(|r| !r.is_zero())
            .collect();
        if extra.is_empty() {
            return Ok(set);
        }
        polys.extend(extra);
        polys = autoreduce(polys)?;
    }
    Err(SolveFailure::NoSolutionFoundAtBound("coherence completion did not terminate in 64 rounds".into()))
}

