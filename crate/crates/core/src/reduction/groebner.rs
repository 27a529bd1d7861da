//! A small Buchberger engine over the coefficient field, used to decide
//! membership in saturated algebraic ideals `(G) : H^∞`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::coeffield::FieldElem;
use crate::diffpoly::{AlgIndet, DiffPoly};
use crate::error::{Error, Result};

/// Limit on the number of S-polynomial reductions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroebnerBudget(pub usize);

pub const DEFAULT_BUDGET: GroebnerBudget = GroebnerBudget(2000);

/// Exponent vector under degree reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Exp(Vec<u32>);

impl Exp {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Exp) -> Exp {
        Exp(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, o: &Exp) -> Option<Exp> {
        self.0.iter().zip(&o.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Exp)
    }

    fn lcm(&self, o: &Exp) -> Exp {
        Exp(self.0.iter().zip(&o.0).map(|(a, b)| *a.max(b)).collect())
    }

    fn coprime(&self, o: &Exp) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Exp {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&o.0).rev() {
                match b.cmp(a) {
                    Ordering::Equal => continue,
                    c => return c,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Exp {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, Debug, PartialEq)]
struct GPoly {
    terms: BTreeMap<Exp, FieldElem>,
}

impl GPoly {
    fn zero() -> Self {
        GPoly { terms: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> Option<(&Exp, &FieldElem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Exp, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(FieldElem::zero);
        *e = e.add(&c);
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    /// `self − c · x^m · g`.
    fn sub_scaled(&self, c: &FieldElem, m: &Exp, g: &GPoly) -> GPoly {
        let mut r = self.clone();
        for (gm, gc) in &g.terms {
            r.add_term(gm.mul(m), gc.mul(c).neg());
        }
        r
    }

    fn monic(&self) -> GPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                GPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(&inv))).collect() }
            }
        }
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(|m| m.degree() == 0)
    }
}

/// Full reduction of `p` by `basis`.
fn normal_form(p: &GPoly, basis: &[GPoly]) -> GPoly {
    let mut p = p.clone();
    let mut r = GPoly::zero();
    while let Some((m, c)) = p.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let mut reduced = false;
        for g in basis {
            let (gm, gc) = g.leading().unwrap();
            if let Some(q) = m.div(gm) {
                let f = c.div(gc).expect("nonzero leading coefficient");
                p = p.sub_scaled(&f, &q, g);
                reduced = true;
                break;
            }
        }
        if !reduced {
            p.terms.remove(&m);
            r.add_term(m, c);
        }
    }
    r
}

fn s_poly(f: &GPoly, g: &GPoly) -> GPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = l.div(fm).unwrap();
    let b = l.div(gm).unwrap();
    let mut r = GPoly::zero();
    let fi = fc.inv().unwrap();
    let gi = gc.inv().unwrap();
    for (m, c) in &f.terms {
        r.add_term(m.mul(&a), c.mul(&fi));
    }
    r.sub_scaled(&gi, &b, g)
}

fn groebner_basis(gens: Vec<GPoly>, budget: GroebnerBudget) -> Result<Vec<GPoly>> {
    let mut basis: Vec<GPoly> = Vec::new();
    for g in gens {
        let g = normal_form(&g, &basis);
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut steps = 0;
    while let Some((i, j)) = pairs.pop() {
        if basis.iter().any(GPoly::is_constant) {
            break;
        }
        let (mi, mj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        if mi.coprime(mj) {
            continue;
        }
        steps += 1;
        if steps > budget.0 {
            return Err(Error::ResourceLimit(format!("Groebner basis exceeded {} reductions", budget.0)));
        }
        let s = normal_form(&s_poly(&basis[i], &basis[j]), &basis);
        if !s.is_zero() {
            let k = basis.len();
            basis.push(s.monic());
            for i in 0..k {
                pairs.insert(0, (i, k));
            }
        }
    }
    Ok(basis)
}

/// Decides `r ∈ (gens) : h^∞` in the polynomial ring over the indeterminates
/// occurring, by Rabinowitsch's trick `(gens, 1 − z h)`.
pub(crate) fn in_saturation(r: &DiffPoly, gens: &[DiffPoly], h: &DiffPoly, budget: GroebnerBudget) -> Result<bool> {
    if r.is_zero() {
        return Ok(true);
    }
    let mut vars: Vec<AlgIndet> = Vec::new();
    for p in gens.iter().chain([r, h]) {
        vars.extend(p.indeterminates());
    }
    vars.sort();
    vars.dedup();
    // The extra variable z comes last.
    let n = vars.len() + 1;
    let index: BTreeMap<&AlgIndet, usize> = vars.iter().enumerate().map(|(k, u)| (u, k)).collect();
    let convert = |p: &DiffPoly| {
        let mut g = GPoly::zero();
        for (m, c) in p.terms() {
            let mut e = vec![0; n];
            for (u, d) in m.factors() {
                e[index[u]] = *d;
            }
            g.add_term(Exp(e), c.clone());
        }
        g
    };
    let mut all: Vec<GPoly> = gens.iter().map(convert).collect();
    let hz = convert(h);
    let mut rab = GPoly::zero();
    rab.add_term(Exp(vec![0; n]), FieldElem::one());
    let mut z = vec![0; n];
    z[n - 1] = 1;
    rab = rab.sub_scaled(&FieldElem::one(), &Exp(z), &hz);
    all.push(rab);
    let basis = groebner_basis(all, budget)?;
    Ok(normal_form(&convert(r), &basis).is_zero())
}
