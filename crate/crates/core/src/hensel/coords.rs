//! Differential polynomials over `B ⊗ L`, stored as coordinate polynomials
//! `f = Σ_j f_j ε_j` with `f_j` over `L`.

use crate::coeffield::{Field, FieldElem};
use crate::diffpoly::{AlgIndet, DiffPoly, Polys};
use crate::error::{Error, Result};
use crate::finitealg::{DAlgebra, DElement, FiniteAlgebra};
use crate::ring::{Ring, Scalars};

pub type CoordPoly = Vec<DiffPoly>;

/// `f · 1` for `f` over `L`.
pub fn embed(alg: &FiniteAlgebra, f: &DiffPoly) -> CoordPoly {
    DAlgebra::new(alg, Polys).embed(f)
}

/// `u_i · f`.
pub fn project(alg: &FiniteAlgebra, i: usize, f: &[DiffPoly]) -> Result<CoordPoly> {
    DAlgebra::new(alg, Polys).project(i, f)
}

/// `π_i(f) = Σ_j π_i(ε_j) f_j`.
pub fn residue(alg: &FiniteAlgebra, i: usize, f: &[DiffPoly]) -> Result<DiffPoly> {
    DAlgebra::new(alg, Polys).residue(i, f)
}

/// `∂f/∂u`, coordinatewise.
pub fn partial(f: &[DiffPoly], u: &AlgIndet) -> CoordPoly {
    f.iter().map(|c| c.partial(u)).collect()
}

/// `δ_j f`, coordinatewise.
pub fn derive(f: &[DiffPoly], j: usize) -> CoordPoly {
    f.iter().map(|c| c.derive(j)).collect()
}

/// `θ b` for the value `b` of the indeterminate's variable.
fn jet(field: &Field, b: &[DElement<FieldElem>], u: &AlgIndet) -> Result<DElement<FieldElem>> {
    if u.var.block().is_some() {
        return Err(Error::Invalid(format!("unexpected prolonged variable {}", u.var)));
    }
    let mut v = b
        .get(u.var.index() as usize - 1)
        .cloned()
        .ok_or_else(|| Error::MissingIndeterminate(u.var.to_string()))?;
    for (j, e) in u.theta.factors() {
        for _ in 0..e {
            v = v.iter().map(|c| field.derive(j, c)).collect::<Result<_>>()?;
        }
    }
    Ok(v)
}

/// `f(b) ∈ B ⊗ L` where `b[k]` is the value of `x_{k+1}`.
pub fn evaluate(alg: &FiniteAlgebra, field: &Field, f: &[DiffPoly], b: &[DElement<FieldElem>]) -> Result<DElement<FieldElem>> {
    let d = DAlgebra::new(alg, Scalars);
    let mut out = d.zero();
    for (j, fj) in f.iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        let v = fj.eval_in(&d, |c| Ok(d.from_scalar(c)), |u| jet(field, b, u))?;
        out = d.add(&out, &d.mul(&d.constant(&alg.basis(j)), &v));
    }
    Ok(out)
}
