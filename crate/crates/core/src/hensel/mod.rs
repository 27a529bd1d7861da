//! Differential Hensel lifting: a nonsingular root `a` of the residue image
//! of `Λ` is lifted through the levels `𝔪^i/𝔪^{i+1}` of a local factor of
//! `B ⊗ L` by solving one linear differential system per basis element.

pub mod coords;
mod linear;
mod solve;
#[cfg(test)]
mod tests;

use std::fmt;

use crate::coeffield::series::vanishes_to_order;
use crate::coeffield::{Field, FieldElem};
use crate::diffpoly::{DiffPoly, Point, Var};
use crate::error::{Error, Result};
use crate::finitealg::{DAlgebra, DElement, FiniteAlgebra};
use crate::reduction::{check_autoreduced, check_coherent};
use crate::ring::{Ring, Scalars};

pub use coords::CoordPoly;
pub use linear::{is_linear, linear_autoreduce};
pub use solve::{solve, JetPrecision, Solution, SolverStrategy};

/// A system `Λ` over `B ⊗ L`.
#[derive(Clone, Debug)]
pub struct LiftProblem<'a> {
    pub algebra: &'a FiniteAlgebra,
    pub field: &'a Field,
    pub system: Vec<CoordPoly>,
}

/// The systems solved for one basis element of one level.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelRecord {
    pub factor: usize,
    pub level: usize,
    /// Label of the adapted basis element `ε_k`.
    pub basis: String,
    pub system: Vec<DiffPoly>,
    pub reduced: Vec<DiffPoly>,
    pub solution: Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    /// `b[k]` is the value of `x_{k+1}`.
    pub b: Vec<DElement<FieldElem>>,
    pub levels: Vec<LevelRecord>,
    pub precision: Option<JetPrecision>,
    /// `(factor, level, b)` with `b` as it stands after that level; level 0 is the start.
    pub stages: Vec<(usize, usize, Vec<DElement<FieldElem>>)>,
    labels: Vec<String>,
}

impl Lift {
    /// Renders `b` with the algebra's basis labels.
    pub fn render(&self, alg: &FiniteAlgebra) -> Vec<String> {
        self.b.iter().map(|v| DAlgebra::new(alg, Scalars).render(v)).collect()
    }
}

impl fmt::Display for Lift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.levels {
            let sys: Vec<String> = r.system.iter().map(|p| p.to_string()).collect();
            let red: Vec<String> = r.reduced.iter().map(|p| p.to_string()).collect();
            writeln!(
                f,
                "factor {}, level {}, basis {}: system {{{}}}; reduced {{{}}}; solution {}",
                r.factor,
                r.level,
                r.basis,
                sys.join(", "),
                red.join(", "),
                if r.solution.is_empty() { "(none needed)".to_string() } else { r.solution.to_string() }
            )?;
        }
        for (k, v) in self.labels.iter().enumerate() {
            writeln!(f, "x{} = {}", k + 1, v)?;
        }
        if let Some(p) = &self.precision {
            let pt: Vec<String> = p.point.iter().map(|c| c.to_string()).collect();
            writeln!(f, "precision: equations hold through order {} at ({})", p.order, pt.join(", "))?;
        }
        Ok(())
    }
}

fn precondition(msg: impl Into<String>) -> Error {
    Error::PreconditionFailed(msg.into())
}

/// Number of variables: the largest index occurring in the system or the point.
fn arity(system: &[CoordPoly], a: &Point) -> Result<usize> {
    let mut n = 0;
    for v in system.iter().flatten().flat_map(|p| p.variables()).chain(a.iter().map(|(v, _)| *v)) {
        if v.block().is_some() {
            return Err(Error::Invalid(format!("unexpected prolonged variable {v}")));
        }
        n = n.max(v.index() as usize);
    }
    Ok(n)
}

fn min_precision(a: Option<JetPrecision>, b: Option<JetPrecision>) -> Option<JetPrecision> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(x), Some(y)) => Some(if x.order <= y.order { x } else { y }),
    }
}

/// Whether the adapted coordinates of `v` in factor `i` below `level` vanish
/// (exactly, or through the jet precision).
fn in_filtration(alg: &FiniteAlgebra, i: usize, v: &DElement<FieldElem>, level: usize, precision: &Option<JetPrecision>) -> Result<bool> {
    let dec = alg.decomposition()?;
    let c = dec.adapted_coordinates(&Scalars, v);
    for k in 0..level {
        for &slot in dec.level_slots(i, k) {
            let ok = match precision {
                None => c[slot].is_zero(),
                Some(p) => vanishes_to_order(&c[slot], &p.point, p.order)?,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ℓ_f(y) = λ_k(f(b)) + Σ_u res(∂f/∂u)(a) · u`, with `y` written as the
/// original variables.
pub fn assemble_linearization(
    problem: &LiftProblem<'_>,
    factor: usize,
    f: &[DiffPoly],
    a: &Point,
    b: &[DElement<FieldElem>],
    level: usize,
    slot: usize,
) -> Result<DiffPoly> {
    let alg = problem.algebra;
    let fb = DAlgebra::new(alg, Scalars).project(factor, &coords::evaluate(alg, problem.field, f, b)?)?;
    if !in_filtration(alg, factor, &fb, level, &None)? {
        return Err(Error::NotInFiltration(level));
    }
    let lambda = alg.decomposition()?.adapted_coordinates(&Scalars, &fb).swap_remove(slot);
    Ok(linear_part(problem, factor, f, a)?.add(&DiffPoly::constant(lambda)))
}

fn linear_part(problem: &LiftProblem<'_>, factor: usize, f: &[DiffPoly], a: &Point) -> Result<DiffPoly> {
    let r = coords::residue(problem.algebra, factor, f)?;
    let mut out = DiffPoly::zero();
    for u in r.indeterminates() {
        let c = r.partial(&u).evaluate(problem.field, a)?;
        out = out.add(&DiffPoly::indet(u).scale(&c));
    }
    Ok(out)
}

/// Lifts `a` to a root of `Λ` in the local factor `B_factor ⊗ L`.
pub fn lift(problem: &LiftProblem<'_>, factor: usize, a: &Point, solver: &SolverStrategy) -> Result<Lift> {
    let alg = problem.algebra;
    let field = problem.field;
    let dec = alg.decomposition()?;
    let local = dec.factor(factor)?;
    let system: Vec<CoordPoly> = problem.system.iter().map(|f| coords::project(alg, factor, f)).collect::<Result<_>>()?;
    let n = arity(&system, a)?;

    let residues: Vec<DiffPoly> = system.iter().map(|f| coords::residue(alg, factor, f)).collect::<Result<_>>()?;
    let res_set = check_autoreduced(residues.clone()).map_err(|e| precondition(format!("residue image is not autoreduced: {e}")))?;
    let report = check_coherent(&res_set)?;
    if let Some(w) = report.witness() {
        return Err(precondition(format!("residue image is not coherent: witness {}", w.delta)));
    }
    for r in &residues {
        let v = r.evaluate(field, a)?;
        if !v.is_zero() {
            return Err(precondition(format!("res(f)(a) = {v} is not 0 for f = {r}")));
        }
    }
    if res_set.h().evaluate(field, a)?.is_zero() {
        return Err(precondition(format!("res(H)(a) = 0 for H = {}", res_set.h())));
    }

    let d = DAlgebra::new(alg, Scalars);
    let u = d.constant(&local.idempotent);
    let mut b: Vec<DElement<FieldElem>> = (1..=n)
        .map(|k| {
            a.get(Var::x(k as u32))
                .map(|v| d.scale(v, &u))
                .ok_or_else(|| Error::MissingIndeterminate(format!("x{k}")))
        })
        .collect::<Result<_>>()?;
    let linear: Vec<DiffPoly> = system.iter().map(|f| linear_part(problem, factor, f, a)).collect::<Result<_>>()?;
    let mut levels = Vec::new();
    let mut precision: Option<JetPrecision> = None;
    let mut stages = vec![(factor, 0, b.clone())];

    for level in 1..local.nilpotency_index {
        let values: Vec<DElement<FieldElem>> = system.iter().map(|f| coords::evaluate(alg, field, f, &b)).collect::<Result<_>>()?;
        for v in &values {
            if !in_filtration(alg, factor, v, level, &precision)? {
                return Err(Error::NotInFiltration(level));
            }
        }
        let adapted: Vec<Vec<FieldElem>> = values.iter().map(|v| dec.adapted_coordinates(&Scalars, v)).collect();
        let mut update: Vec<DElement<FieldElem>> = vec![d.zero(); n];
        for &slot in dec.level_slots(factor, level) {
            let eqs: Vec<DiffPoly> = linear.iter().zip(&adapted).map(|(l, c)| l.add(&DiffPoly::constant(c[slot].clone()))).collect();
            let fail = |failure| Error::SolverFailed { level, index: slot, failure };
            let reduced = linear_autoreduce(&eqs).map_err(fail)?;
            let sol = solve(&reduced, field, solver).map_err(fail)?;
            let eps = d.constant(dec.adapted_vector(slot));
            for (k, upd) in update.iter_mut().enumerate() {
                if let Some(y) = sol.values.get(Var::x(k as u32 + 1)) {
                    *upd = d.add(upd, &d.scale(y, &eps));
                }
            }
            precision = min_precision(precision, sol.precision.clone());
            levels.push(LevelRecord {
                factor,
                level,
                basis: render_basis(alg, dec.adapted_vector(slot)),
                system: eqs,
                reduced: reduced.polys().cloned().collect(),
                solution: sol.values,
            });
        }
        for (bk, upd) in b.iter_mut().zip(&update) {
            *bk = d.add(bk, upd);
        }
        stages.push((factor, level, b.clone()));
    }
    for f in &system {
        let v = coords::evaluate(alg, field, f, &b)?;
        if !in_filtration(alg, factor, &v, local.nilpotency_index, &precision)? {
            return Err(Error::NotInFiltration(local.nilpotency_index));
        }
    }
    let labels = b.iter().map(|v| d.render(v)).collect();
    Ok(Lift { b, levels, precision, stages, labels })
}

fn render_basis(alg: &FiniteAlgebra, v: &[num_rational::BigRational]) -> String {
    let coords: Vec<FieldElem> = v.iter().map(|c| FieldElem::from_rational(c.clone())).collect();
    DAlgebra::new(alg, Scalars).render(&coords)
}

/// Lifts in every local factor, with residue `a[i]` in factor `i`, and
/// reassembles `b = Σ_i b_i`.
pub fn lift_nonlocal(problem: &LiftProblem<'_>, a: &[Point], solver: &SolverStrategy) -> Result<Lift> {
    let alg = problem.algebra;
    let dec = alg.decomposition()?;
    if a.len() != dec.len() {
        return Err(Error::Invalid(format!("{} residue points for {} local factors", a.len(), dec.len())));
    }
    let d = DAlgebra::new(alg, Scalars);
    let mut total: Option<Lift> = None;
    for (i, ai) in a.iter().enumerate() {
        let part = lift(problem, i, ai, solver).map_err(|e| e.in_factor(i))?;
        total = Some(match total {
            None => part,
            Some(mut acc) => {
                if acc.b.len() < part.b.len() {
                    acc.b.resize(part.b.len(), d.zero());
                }
                for (k, v) in part.b.iter().enumerate() {
                    acc.b[k] = d.add(&acc.b[k], v);
                }
                acc.levels.extend(part.levels);
                acc.stages.extend(part.stages);
                acc.precision = min_precision(acc.precision, part.precision);
                acc
            }
        });
    }
    let mut out = total.expect("at least one factor");
    out.labels = out.b.iter().map(|v| d.render(v)).collect();
    Ok(out)
}
