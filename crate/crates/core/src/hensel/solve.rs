use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::coeffield::series::{monomials_up_to, unshift_from_point, Jet};
use crate::coeffield::{Field, FieldElem, RatPoly, TMonomial};
use crate::diffpoly::{DiffPoly, Point, Var};
use crate::error::{Error, SolveFailure};
use crate::linalg;
use crate::reduction::AutoreducedSet;

/// How the linear differential systems of a lift are solved.
#[derive(Clone, Debug, PartialEq)]
pub enum SolverStrategy {
    /// Polynomial solutions in the field generators of total degree at most `max_degree`.
    ExactAnsatz { max_degree: u32 },
    /// Truncated power series at `point` through total degree `order`.
    Jet { point: Vec<BigRational>, order: u32 },
}

impl Default for SolverStrategy {
    fn default() -> Self {
        SolverStrategy::ExactAnsatz { max_degree: 3 }
    }
}

impl fmt::Display for SolverStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverStrategy::ExactAnsatz { max_degree } => write!(f, "exact ansatz, degree <= {max_degree}"),
            SolverStrategy::Jet { point, order } => {
                let p: Vec<String> = point.iter().map(|c| c.to_string()).collect();
                write!(f, "jet at ({}) through order {order}", p.join(", "))
            }
        }
    }
}

/// Equations hold through total degree `order` at `point`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetPrecision {
    pub point: Vec<BigRational>,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub values: Point,
    /// `None` for exact solutions.
    pub precision: Option<JetPrecision>,
}

/// One linear equation `c_0 + Σ_u c_u u`.
struct Equation {
    constant: FieldElem,
    terms: Vec<(crate::diffpoly::AlgIndet, FieldElem)>,
}

fn split(p: &DiffPoly) -> Equation {
    let mut constant = FieldElem::zero();
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        match m.factors() {
            [] => constant = c.clone(),
            [(u, 1)] => terms.push((u.clone(), c.clone())),
            _ => unreachable!("linear system"),
        }
    }
    Equation { constant, terms }
}

fn theta_of(field: &Field, u: &crate::diffpoly::AlgIndet, a: &FieldElem) -> FieldElem {
    let mut v = a.clone();
    for (j, e) in u.theta.factors() {
        for _ in 0..e {
            v = field.derive(j, &v).unwrap_or_else(|_| FieldElem::zero());
        }
    }
    v
}

fn lcm(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let g = RatPoly::gcd(a, b);
    a.mul(&b.div_exact(&g).expect("gcd divides"))
}

/// Solves a coherent linear system for the plain variables occurring in it.
/// Free parameters are set to zero; these are the lowest-degree coefficients,
/// so jet solutions at different orders agree on their common truncation.
pub fn solve(system: &AutoreducedSet, field: &Field, strategy: &SolverStrategy) -> Result<Solution, SolveFailure> {
    let polys: Vec<DiffPoly> = system.polys().cloned().collect();
    solve_equations(&polys, field, strategy)
}

pub(crate) fn solve_equations(polys: &[DiffPoly], field: &Field, strategy: &SolverStrategy) -> Result<Solution, SolveFailure> {
    let s = field.num_generators();
    let mut vars: Vec<Var> = polys.iter().flat_map(|p| p.variables()).collect();
    vars.sort();
    vars.dedup();
    let eqs: Vec<Equation> = polys.iter().map(split).collect();
    let (degree, point) = match strategy {
        SolverStrategy::ExactAnsatz { max_degree } => (*max_degree, None),
        SolverStrategy::Jet { point, order } => {
            if point.len() != s {
                return Err(SolveFailure::SingularPoint(format!("point has {} coordinates, field has {s} generators", point.len())));
            }
            (*order, Some(point.clone()))
        }
    };
    let basis: Vec<TMonomial> = monomials_up_to(s, degree);
    let phi: Vec<FieldElem> = basis
        .iter()
        .map(|m| {
            let p = RatPoly::monomial(BigRational::from_integer(1.into()), m.clone());
            match &point {
                None => FieldElem::from_poly(p),
                Some(pt) => FieldElem::from_poly(unshift_from_point(&p, pt).expect("point has field arity")),
            }
        })
        .collect();
    // highest degree first, so that free parameters are the low-order coefficients
    let columns: Vec<(Var, usize)> = vars.iter().flat_map(|v| (0..phi.len()).rev().map(move |a| (*v, a))).collect();

    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    let mut guaranteed = degree;
    for eq in &eqs {
        // G[col] = Σ_{u with var v} c_u θ_u(φ_α)
        let g: Vec<FieldElem> = columns
            .iter()
            .map(|(v, a)| {
                eq.terms
                    .iter()
                    .filter(|(u, _)| u.var == *v)
                    .fold(FieldElem::zero(), |acc, (u, c)| acc.add(&c.mul(&theta_of(field, u, &phi[*a]))))
            })
            .collect();
        match &point {
            None => {
                let mut den = eq.constant.denom().clone();
                for x in &g {
                    den = lcm(&den, x.denom());
                }
                let den = FieldElem::from_poly(den);
                let to_poly = |x: &FieldElem| -> RatPoly {
                    let y = x.mul(&den);
                    let d = y.denom().as_constant().expect("denominator cleared");
                    y.numer().scale(&d.recip())
                };
                let c0 = to_poly(&eq.constant);
                let gp: Vec<RatPoly> = g.iter().map(to_poly).collect();
                let mut monos: Vec<TMonomial> = c0.terms().map(|(m, _)| m.clone()).collect();
                for p in &gp {
                    monos.extend(p.terms().map(|(m, _)| m.clone()));
                }
                monos.sort();
                monos.dedup();
                for m in monos {
                    rows.push(gp.iter().map(|p| coeff(p, &m)).collect());
                    rhs.push(-coeff(&c0, &m));
                }
            }
            Some(pt) => {
                let r = eq.terms.iter().map(|(u, _)| u.theta.order()).max().unwrap_or(0);
                let Some(n) = degree.checked_sub(r) else {
                    return Err(SolveFailure::NoSolutionFoundAtBound(format!("order {degree} is below the system order {r}")));
                };
                guaranteed = guaranteed.min(n);
                let expand = |x: &FieldElem| {
                    Jet::expand(x, pt, n).map_err(|e| match e {
                        Error::PoleAtPoint => SolveFailure::SingularPoint(format!("coefficient {x} has a pole")),
                        e => SolveFailure::SingularPoint(e.to_string()),
                    })
                };
                let c0 = expand(&eq.constant)?;
                let gj = g.iter().map(expand).collect::<Result<Vec<_>, _>>()?;
                for m in monomials_up_to(s, n) {
                    rows.push(gj.iter().map(|j| j.coeff(&m)).collect());
                    rhs.push(-c0.coeff(&m));
                }
            }
        }
    }
    let Some(x) = linalg::solve(rows, rhs, columns.len()) else {
        return Err(match strategy {
            SolverStrategy::ExactAnsatz { max_degree } => SolveFailure::NoSolutionFoundAtBound(format!("degree {max_degree}")),
            SolverStrategy::Jet { .. } => SolveFailure::ProvenInconsistent("the truncated series equations are contradictory".into()),
        });
    };
    let mut values: BTreeMap<Var, FieldElem> = vars.iter().map(|v| (*v, FieldElem::zero())).collect();
    for ((v, a), c) in columns.iter().zip(&x) {
        if !c.is_zero() {
            let e = values.get_mut(v).expect("column variable");
            *e = e.add(&phi[*a].scale(c));
        }
    }
    let mut out = Point::new();
    for (v, val) in values {
        out.set(v, val);
    }
    Ok(Solution {
        values: out,
        precision: point.map(|p| JetPrecision { point: p, order: guaranteed }),
    })
}

fn coeff(p: &RatPoly, m: &TMonomial) -> BigRational {
    p.terms().find(|(k, _)| *k == m).map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
}
