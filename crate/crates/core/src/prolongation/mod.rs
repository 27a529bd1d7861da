//! Coordinate prolongations: the components `f^{(j)}` of `f^e(Σ_j x^{(j)} ε_j)`,
//! the section `∇` and the maps `π̂_i`.


use std::fmt;

use crate::diffpoly::{AlgIndet, DiffPoly, Point, Polys, Var};
use crate::dstructure::DStructure;
use crate::error::{Error, Result};
use crate::finitealg::DAlgebra;
use crate::reduction::AutoreducedSet;

/// `x_i^{(j)}`, rendered `x<i>_<j>`.
pub fn prolonged_var(i: u32, j: usize) -> Var {
    Var::prolonged(i, j as u32)
}

/// `(f^{(0)}, ..., f^{(ℓ)})` with `f^e(Σ_j x^{(j)} ε_j) = Σ_j f^{(j)} ε_j`.
pub fn components(f: &DiffPoly, s: &DStructure) -> Result<Vec<DiffPoly>> {
    let alg = s.algebra();
    let ring = DAlgebra::new(alg, Polys);
    if let Some(v) = f.variables().into_iter().find(|v| v.block().is_some()) {
        return Err(Error::Invalid(format!("{v} is already a prolonged variable")));
    }
    f.eval_in(
        &ring,
        |c| Ok(s.e_of(c)?.into_iter().map(DiffPoly::constant).collect()),
        |u| {
            Ok((0..alg.dim())
                .map(|j| DiffPoly::indet(AlgIndet::new(prolonged_var(u.var.index(), j), u.theta.clone())))
                .collect())
        },
    )
}

/// Renames `x_i` to `x_i^{(0)}`.
pub fn to_coordinate_zero(f: &DiffPoly) -> DiffPoly {
    f.rename(|v| prolonged_var(v.index(), 0))
}

/// The generators `f^{(j)}` of `τV` for `f ∈ Λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProlongedSystem {
    pub source: Vec<DiffPoly>,
    pub components: Vec<Vec<DiffPoly>>,
    pub asserted_characteristic: bool,
}

impl ProlongedSystem {
    pub fn generators(&self) -> impl Iterator<Item = &DiffPoly> {
        self.components.iter().flatten().filter(|g| !g.is_zero())
    }
}

impl fmt::Display for ProlongedSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (src, comps) in self.source.iter().zip(&self.components) {
            writeln!(f, "{src}:")?;
            for (j, c) in comps.iter().enumerate() {
                writeln!(f, "  ({j}) {c}")?;
            }
        }
        if self.asserted_characteristic {
            writeln!(f, "assumption: characteristic set of a prime differential ideal (asserted, not verified)")?;
        }
        Ok(())
    }
}

pub fn tau_generators(set: &AutoreducedSet, s: &DStructure) -> Result<ProlongedSystem> {
    let source: Vec<DiffPoly> = set.polys().cloned().collect();
    let components = source.iter().map(|f| components(f, s)).collect::<Result<_>>()?;
    Ok(ProlongedSystem { source, components, asserted_characteristic: set.is_asserted_characteristic() })
}

/// `∇(a) = (a, ∂_1 a, ..., ∂_ℓ a)` with `x_i^{(j)} ↦ ∂_j(a_i)`.
pub fn nabla(a: &Point, s: &DStructure) -> Result<Point> {
    let mut out = Point::new();
    for (v, val) in a.iter() {
        if v.block().is_some() {
            return Err(Error::Invalid(format!("{v} is already a prolonged variable")));
        }
        for (j, c) in s.e_of(val)?.into_iter().enumerate() {
            out.set(prolonged_var(v.index(), j), c);
        }
    }
    Ok(out)
}

/// `π̂_i(ā)_k = Σ_j a_k^{(j)} π_i(ε_j)`.
pub fn pihat(i: usize, abar: &Point, s: &DStructure) -> Result<Point> {
    let ring = s.ring();
    let dim = s.algebra().dim();
    let mut indices: Vec<u32> = abar.iter().filter(|(v, _)| v.block().is_some()).map(|(v, _)| v.index()).collect();
    indices.sort_unstable();
    indices.dedup();
    let mut out = Point::new();
    for k in indices {
        let coords = (0..dim)
            .map(|j| {
                let v = prolonged_var(k, j);
                abar.get(v).cloned().ok_or_else(|| Error::MissingIndeterminate(v.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        out.set(Var::x(k), ring.residue(i, &coords)?);
    }
    Ok(out)
}
