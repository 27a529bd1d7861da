use std::collections::BTreeMap;
use std::fmt;

use super::{obstruction, AutoreducedSet};
use crate::diffpoly::{AlgIndet, DerivOp, DiffPoly, Monomial};

/// One summand `c · θ(g)` of a reduction certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateTerm {
    pub coeff: DiffPoly,
    pub theta: DerivOp,
    /// Index of `g` in the autoreduced set.
    pub element: usize,
}

/// Witness of `M · f = Σ c_i θ_i(g_i) + r` with `M = Π I_g^{a_g} S_g^{b_g}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCertificate {
    pub input: DiffPoly,
    pub remainder: DiffPoly,
    /// Element index to `(a_g, b_g)`, the initial and separant powers.
    pub exponents: BTreeMap<usize, (u32, u32)>,
    pub terms: Vec<CertificateTerm>,
    /// Pseudo-division steps in order: `(reduced indeterminate, element, θ)`.
    pub steps: Vec<(AlgIndet, usize, DerivOp)>,
}

impl ReductionCertificate {
    /// The premultiplier `M`.
    pub fn multiplier(&self, set: &AutoreducedSet) -> DiffPoly {
        let mut m = DiffPoly::one();
        for (&i, &(a, b)) in &self.exponents {
            let e = set.get(i);
            m = m.mul(&e.initial.pow(a)).mul(&e.separant.pow(b));
        }
        m
    }

    /// Smallest `s` with `M | H^s`.
    pub fn h_power(&self) -> u32 {
        self.exponents.values().map(|&(a, b)| a.max(b)).max().unwrap_or(0)
    }

    /// `M f − Σ c_i θ_i g_i − r`, which is zero for a sound certificate.
    pub fn defect(&self, set: &AutoreducedSet) -> DiffPoly {
        let mut lhs = self.multiplier(set).mul(&self.input).sub(&self.remainder);
        for t in &self.terms {
            lhs = lhs.sub(&t.coeff.mul(&set.get(t.element).poly.theta_apply(&t.theta)));
        }
        lhs
    }

    pub fn verify(&self, set: &AutoreducedSet) -> bool {
        self.defect(set).is_zero()
    }

    /// Structured text report of the reduction.
    pub fn report(&self, set: &AutoreducedSet) -> String {
        let mut s = String::new();
        s.push_str(&format!("input: {}\n", self.input));
        for (k, (u, i, theta)) in self.steps.iter().enumerate() {
            let kind = if theta.is_identity() { "initial" } else { "separant" };
            s.push_str(&format!(
                "step {}: reduce {} by {} applied to [{}] (premultiply by {})\n",
                k + 1,
                u,
                render_theta(theta),
                set.get(*i).poly,
                kind
            ));
        }
        for (i, (a, b)) in &self.exponents {
            s.push_str(&format!("multiplier [{}]: I^{} S^{}\n", set.get(*i).poly, a, b));
        }
        s.push_str(&format!("remainder: {}\n", self.remainder));
        if set.is_asserted_characteristic() {
            s.push_str("assumption: characteristic set of a prime differential ideal (asserted, not verified)\n");
        }
        s
    }
}

fn render_theta(theta: &DerivOp) -> String {
    if theta.is_identity() {
        return "id".into();
    }
    let parts: Vec<String> = theta
        .factors()
        .map(|(j, e)| if e == 1 { format!("d{j}") } else { format!("d{j}^{e}") })
        .collect();
    parts.join(" ")
}

impl fmt::Display for ReductionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "remainder {}", self.remainder)
    }
}

/// Whether `p` is reduced with respect to every element of the set.
pub fn is_reduced(p: &DiffPoly, set: &AutoreducedSet) -> bool {
    set.elements().iter().all(|e| obstruction(e, p).is_none())
}

/// Ritt–Kolchin reduction of `f` by the set, returning a certificate.
///
/// The highest reducible indeterminate is eliminated first; proper derivatives
/// of leaders are removed by pseudo-division by `θg` (premultiplying by
/// `S_g`), leader powers by pseudo-division by `g` (premultiplying by `I_g`).
pub fn ritt_remainder(f: &DiffPoly, set: &AutoreducedSet) -> ReductionCertificate {
    let mut cert = ReductionCertificate {
        input: f.clone(),
        remainder: f.clone(),
        exponents: BTreeMap::new(),
        terms: Vec::new(),
        steps: Vec::new(),
    };
    while let Some((w, i, theta)) = next_reduction(&cert.remainder, set) {
        let e = set.get(i);
        let (divisor, mult, d, is_initial) = if theta.is_identity() {
            (e.poly.clone(), e.initial.clone(), e.degree(), true)
        } else {
            (e.poly.theta_apply(&theta), e.separant.clone(), 1, false)
        };
        cert.steps.push((w.clone(), i, theta.clone()));
        loop {
            let p = &cert.remainder;
            let deg = p.degree_in(&w);
            if deg < d {
                break;
            }
            let lead = p.coefficient_of(&w, deg);
            let q = lead.mul_monomial(&Monomial::indet(w.clone(), deg - d));
            for t in cert.terms.iter_mut() {
                t.coeff = t.coeff.mul(&mult);
            }
            cert.terms.push(CertificateTerm { coeff: q.clone(), theta: theta.clone(), element: i });
            cert.remainder = mult.mul(p).sub(&q.mul(&divisor));
            let ex = cert.exponents.entry(i).or_insert((0, 0));
            if is_initial {
                ex.0 += 1;
            } else {
                ex.1 += 1;
            }
        }
    }
    merge_terms(&mut cert.terms);
    cert
}

/// Collects summands sharing `(θ, element)`.
fn merge_terms(terms: &mut Vec<CertificateTerm>) {
    let mut acc: BTreeMap<(Vec<u32>, usize), DiffPoly> = BTreeMap::new();
    let mut order = Vec::new();
    for t in terms.drain(..) {
        let key = (t.theta.exponents().to_vec(), t.element);
        if !acc.contains_key(&key) {
            order.push(key.clone());
        }
        let e = acc.entry(key).or_insert_with(DiffPoly::zero);
        *e = e.add(&t.coeff);
    }
    for key in order {
        let coeff = acc.remove(&key).unwrap();
        if !coeff.is_zero() {
            terms.push(CertificateTerm {
                coeff,
                theta: DerivOp::from_exponents(key.0.clone()),
                element: key.1,
            });
        }
    }
}

/// The highest reducible indeterminate of `p`, the element reducing it
/// (lowest rank first), and the operator `θ` with `θ v_g = w`.
fn next_reduction(p: &DiffPoly, set: &AutoreducedSet) -> Option<(AlgIndet, usize, DerivOp)> {
    for w in p.indeterminates().into_iter().rev() {
        for (i, e) in set.elements().iter().enumerate() {
            let Some(theta) = e.leader().derivative_quotient(&w) else {
                continue;
            };
            if !theta.is_identity() || p.degree_in(&w) >= e.degree() {
                return Some((w, i, theta));
            }
        }
    }
    None
}

/// `f ∈ I` for the ideal whose characteristic set is asserted to be `set`:
/// true iff the Ritt remainder vanishes.
pub fn ideal_member(f: &DiffPoly, set: &AutoreducedSet) -> bool {
    ritt_remainder(f, set).remainder.is_zero()
}
