//! Differential polynomials `K{x1, ..., xn}` under `m` commuting derivations.
//!
//! The underlying algebra is the polynomial ring over the algebraic
//! indeterminates `θx_i`, ordered by the canonical orderly ranking: `θx_i`
//! is compared through the tuple `(ord θ, i, e_m, ..., e_1)` lexicographically.
//! Monomials are compared lexicographically with respect to that ranking, which
//! makes the leading monomial carry the leader of the polynomial.

mod render;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

use crate::coeffield::{derive_unchecked, Field, FieldElem};
use crate::error::{Error, Result};
use crate::ring::{DiffRing, Ring};

/// A derivative operator `θ = δ_m^{e_m} ··· δ_1^{e_1}`, stored as its exponent
/// vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DerivOp(Vec<u32>);

impl DerivOp {
    pub fn identity() -> Self {
        DerivOp(Vec::new())
    }

    /// `δ_j` (one-based).
    pub fn delta(j: usize) -> Self {
        let mut e = vec![0; j];
        e[j - 1] = 1;
        DerivOp(e)
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        DerivOp(e)
    }

    /// Exponent of `δ_j` (one-based).
    pub fn exponent(&self, j: usize) -> u32 {
        self.0.get(j - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest derivation index with a nonzero exponent.
    pub fn max_index(&self) -> usize {
        self.0.len()
    }

    pub fn compose(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        DerivOp::from_exponents((1..=n).map(|j| self.exponent(j) + other.exponent(j)).collect())
    }

    /// `θ` with `θ ∘ self = other`, if `other` is a derivative of `self`.
    pub fn quotient(&self, other: &Self) -> Option<Self> {
        let n = self.0.len().max(other.0.len());
        let mut e = Vec::with_capacity(n);
        for j in 1..=n {
            e.push(other.exponent(j).checked_sub(self.exponent(j))?);
        }
        Some(DerivOp::from_exponents(e))
    }

    /// Least common multiple in the monoid.
    pub fn lcm(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        DerivOp::from_exponents((1..=n).map(|j| self.exponent(j).max(other.exponent(j))).collect())
    }

    /// Iterates `(j, e_j)` for nonzero exponents, one-based.
    pub fn factors(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (k + 1, e))
    }
}

impl fmt::Debug for DerivOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ{:?}", self.0)
    }
}

/// A differential indeterminate. Plain variables `x_i` come first; prolonged
/// variables `x_i^{(j)}` (rendered `x<i>_<j>`) follow, ordered by `(j, i)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    block: Option<u32>,
    index: u32,
}

impl Var {
    /// The variable `x_i` (one-based).
    pub fn x(i: u32) -> Self {
        assert!(i >= 1, "variables are numbered from 1");
        Var { block: None, index: i }
    }

    /// The prolongation coordinate `x_i^{(j)}`.
    pub fn prolonged(i: u32, j: u32) -> Self {
        assert!(i >= 1, "variables are numbered from 1");
        Var { block: Some(j), index: i }
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn block(&self) -> Option<u32> {
        self.block
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.block {
            None => write!(f, "x{}", self.index),
            Some(j) => write!(f, "x{}_{}", self.index, j),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An algebraic indeterminate `θx_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgIndet {
    pub var: Var,
    pub theta: DerivOp,
}

impl AlgIndet {
    pub fn new(var: Var, theta: DerivOp) -> Self {
        AlgIndet { var, theta }
    }

    pub fn plain(var: Var) -> Self {
        AlgIndet { var, theta: DerivOp::identity() }
    }

    pub fn derive(&self, j: usize) -> Self {
        AlgIndet { var: self.var, theta: self.theta.compose(&DerivOp::delta(j)) }
    }

    pub fn apply(&self, theta: &DerivOp) -> Self {
        AlgIndet { var: self.var, theta: self.theta.compose(theta) }
    }

    /// `Some(θ)` with `θ(self) = other`, possibly the identity.
    pub fn derivative_quotient(&self, other: &AlgIndet) -> Option<DerivOp> {
        if self.var != other.var {
            return None;
        }
        self.theta.quotient(&other.theta)
    }

    /// True if `other` is a proper derivative of `self`.
    pub fn is_proper_derivative_of(&self, other: &AlgIndet) -> bool {
        other.derivative_quotient(self).is_some_and(|q| !q.is_identity())
    }
}

/// The canonical ranking: compare `(ord θ, var, e_m, ..., e_1)` lexicographically.
pub fn rank_compare(u: &AlgIndet, v: &AlgIndet) -> Ordering {
    u.theta
        .order()
        .cmp(&v.theta.order())
        .then_with(|| u.var.cmp(&v.var))
        .then_with(|| {
            let n = u.theta.max_index().max(v.theta.max_index());
            for j in (1..=n).rev() {
                match u.theta.exponent(j).cmp(&v.theta.exponent(j)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
}

impl Ord for AlgIndet {
    fn cmp(&self, other: &Self) -> Ordering {
        rank_compare(self, other)
    }
}

impl PartialOrd for AlgIndet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AlgIndet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, e) in self.theta.factors() {
            if e == 1 {
                write!(f, "d{j} ")?;
            } else {
                write!(f, "d{j}^{e} ")?;
            }
        }
        write!(f, "{}", self.var)
    }
}

impl fmt::Debug for AlgIndet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A power product of indeterminates, highest-ranked factor first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<(AlgIndet, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn indet(u: AlgIndet, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(u, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(AlgIndet, u32)] {
        &self.0
    }

    pub fn degree_in(&self, u: &AlgIndet) -> u32 {
        self.0.iter().find(|(v, _)| v == u).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes `u` entirely, returning the rest and the removed exponent.
    pub fn split(&self, u: &AlgIndet) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(v, d)| {
                if v == u {
                    e = *d;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }

    fn map_indets(&self, f: &impl Fn(&AlgIndet) -> AlgIndet) -> Monomial {
        let mut m = Monomial::one();
        for (u, e) in &self.0 {
            m = m.mul(&Monomial::indet(f(u), *e));
        }
        m
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A differential polynomial with coefficients in the coefficient field.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, FieldElem>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElem::one())
    }

    pub fn constant(c: FieldElem) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: FieldElem, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn indet(u: AlgIndet) -> Self {
        Self::term(FieldElem::one(), Monomial::indet(u, 1))
    }

    /// The polynomial `x_i`.
    pub fn x(i: u32) -> Self {
        Self::indet(AlgIndet::plain(Var::x(i)))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, FieldElem)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True if no indeterminate occurs (the polynomial lies in the coefficient field).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<FieldElem> {
        if self.is_constant() {
            Some(self.terms.get(&Monomial::one()).cloned().unwrap_or_else(FieldElem::zero))
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&FieldElem::from_rational(q.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(&c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(&c);
        }
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        r
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        DiffPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// All indeterminates occurring, in increasing rank.
    pub fn indeterminates(&self) -> BTreeSet<AlgIndet> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(u, _)| u.clone())).collect()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(u, _)| u.var)).collect()
    }

    /// Highest-ranked indeterminate occurring, if any.
    pub fn leader(&self) -> Result<AlgIndet> {
        self.terms
            .keys()
            .next_back()
            .and_then(|m| m.0.first())
            .map(|(u, _)| u.clone())
            .ok_or(Error::ConstantPolynomial)
    }

    pub fn degree_in(&self, u: &AlgIndet) -> u32 {
        self.terms.keys().map(|m| m.degree_in(u)).max().unwrap_or(0)
    }

    /// Degree of the leader.
    pub fn degree(&self) -> Result<u32> {
        let v = self.leader()?;
        Ok(self.degree_in(&v))
    }

    /// `(leader, degree)`.
    pub fn rank(&self) -> Result<Rank> {
        let v = self.leader()?;
        let d = self.degree_in(&v);
        Ok(Rank { leader: v, degree: d })
    }

    /// Coefficients as a univariate polynomial in `u`, indexed by degree.
    pub fn coefficients_in(&self, u: &AlgIndet) -> Vec<DiffPoly> {
        let mut out = vec![DiffPoly::zero(); self.degree_in(u) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(u);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Coefficient of `u^d`.
    pub fn coefficient_of(&self, u: &AlgIndet, d: u32) -> DiffPoly {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(u);
            if e == d {
                r.add_term(rest, c.clone());
            }
        }
        r
    }

    /// Formal partial derivative with respect to an indeterminate.
    pub fn partial(&self, u: &AlgIndet) -> Self {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.split(u);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Monomial::indet(u.clone(), e - 1));
            r.add_term(m2, c.scale(&BigRational::from_integer(e.into())));
        }
        r
    }

    /// Separant `∂f/∂v_f`.
    pub fn separant(&self) -> Result<Self> {
        let v = self.leader()?;
        Ok(self.partial(&v))
    }

    /// Initial: leading coefficient in the leader.
    pub fn initial(&self) -> Result<Self> {
        let v = self.leader()?;
        let d = self.degree_in(&v);
        Ok(self.coefficient_of(&v, d))
    }

    /// `δ_j f` by the Leibniz rule (one-based `j`; no range check).
    pub fn derive(&self, j: usize) -> Self {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let dc = derive_unchecked(j, c);
            if !dc.is_zero() {
                r.add_term(m.clone(), dc);
            }
            for (u, e) in &m.0 {
                let (rest, _) = m.split(u);
                let mut nm = rest.mul(&Monomial::indet(u.derive(j), 1));
                if *e > 1 {
                    nm = nm.mul(&Monomial::indet(u.clone(), e - 1));
                }
                r.add_term(nm, c.scale(&BigRational::from_integer((*e).into())));
            }
        }
        r
    }

    /// `θ f`.
    pub fn theta_apply(&self, theta: &DerivOp) -> Self {
        let mut r = self.clone();
        for (j, e) in theta.factors() {
            for _ in 0..e {
                r = r.derive(j);
            }
        }
        r
    }

    /// Applies a map to every coefficient.
    pub fn map_coefficients(&self, mut phi: impl FnMut(&FieldElem) -> Result<FieldElem>) -> Result<Self> {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), phi(c)?);
        }
        Ok(r)
    }

    pub fn rename(&self, f: impl Fn(Var) -> Var) -> Self {
        let g = |u: &AlgIndet| AlgIndet { var: f(u.var), theta: u.theta.clone() };
        DiffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.map_indets(&g), c.clone())))
    }

    /// Evaluates in an arbitrary ring: coefficients through `coef`, indeterminates through `value`.
    pub fn eval_in<R: Ring>(
        &self,
        ring: &R,
        mut coef: impl FnMut(&FieldElem) -> Result<R::Elem>,
        mut value: impl FnMut(&AlgIndet) -> Result<R::Elem>,
    ) -> Result<R::Elem> {
        let mut cache: BTreeMap<AlgIndet, Vec<R::Elem>> = BTreeMap::new();
        let mut acc = ring.zero();
        for (m, c) in &self.terms {
            let mut t = coef(c)?;
            for (u, e) in &m.0 {
                if !cache.contains_key(u) {
                    cache.insert(u.clone(), vec![ring.one(), value(u)?]);
                }
                let pw = cache.get_mut(u).unwrap();
                while pw.len() <= *e as usize {
                    let next = ring.mul(pw.last().unwrap(), &pw[1]);
                    pw.push(next);
                }
                t = ring.mul(&t, &pw[*e as usize]);
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Substitutes polynomials for indeterminates (indeterminates not listed stay).
    pub fn substitute(&self, images: &BTreeMap<AlgIndet, DiffPoly>) -> Self {
        self.eval_in(&Polys, |c| Ok(DiffPoly::constant(c.clone())), |u| {
            Ok(images.get(u).cloned().unwrap_or_else(|| DiffPoly::indet(u.clone())))
        })
        .expect("substitution is total")
    }

    /// Evaluates at a point: each variable receives a field element and
    /// derivatives are computed in the field.
    pub fn evaluate(&self, field: &Field, point: &Point) -> Result<FieldElem> {
        self.eval_in(&crate::ring::Scalars, |c| Ok(c.clone()), |u| point.jet(field, u))
    }
}

/// `(leader, degree)`, compared lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub struct Rank {
    pub leader: AlgIndet,
    pub degree: u32,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.leader, self.degree)
    }
}

/// Rank including the convention that constants rank below everything.
pub fn rank_or_constant(f: &DiffPoly) -> Option<Rank> {
    f.rank().ok()
}

/// Assignment of field elements to variables.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Point {
    values: BTreeMap<Var, FieldElem>,
}

impl Point {
    pub fn new() -> Self {
        Self::default()
    }

    /// `x_1 = values[0], x_2 = values[1], ...`.
    pub fn from_values(values: impl IntoIterator<Item = FieldElem>) -> Self {
        Point {
            values: values.into_iter().enumerate().map(|(i, v)| (Var::x(i as u32 + 1), v)).collect(),
        }
    }

    pub fn with(mut self, var: Var, value: FieldElem) -> Self {
        self.values.insert(var, value);
        self
    }

    pub fn set(&mut self, var: Var, value: FieldElem) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: Var) -> Option<&FieldElem> {
        self.values.get(&var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &FieldElem)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `θa` for the value `a` of the indeterminate's variable.
    pub fn jet(&self, field: &Field, u: &AlgIndet) -> Result<FieldElem> {
        let mut a = self
            .values
            .get(&u.var)
            .cloned()
            .ok_or_else(|| Error::MissingIndeterminate(u.to_string()))?;
        for (j, e) in u.theta.factors() {
            for _ in 0..e {
                a = field.derive(j, &a)?;
            }
        }
        Ok(a)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|(v, a)| format!("{v} = {a}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// The ring of differential polynomials as a ring object.
#[derive(Clone, Copy, Debug, Default)]
pub struct Polys;

impl Ring for Polys {
    type Elem = DiffPoly;

    fn zero(&self) -> DiffPoly {
        DiffPoly::zero()
    }
    fn one(&self) -> DiffPoly {
        DiffPoly::one()
    }
    fn is_zero(&self, a: &DiffPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.add(b)
    }
    fn neg(&self, a: &DiffPoly) -> DiffPoly {
        a.neg()
    }
    fn mul(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.mul(b)
    }
    fn sub(&self, a: &DiffPoly, b: &DiffPoly) -> DiffPoly {
        a.sub(b)
    }
    fn from_scalar(&self, c: &FieldElem) -> DiffPoly {
        DiffPoly::constant(c.clone())
    }
    fn scale_rational(&self, q: &BigRational, a: &DiffPoly) -> DiffPoly {
        a.scale_rational(q)
    }
}

impl DiffRing for Polys {
    fn derive(&self, j: usize, a: &DiffPoly) -> DiffPoly {
        a.derive(j)
    }
}

impl From<FieldElem> for DiffPoly {
    fn from(c: FieldElem) -> Self {
        DiffPoly::constant(c)
    }
}

impl From<AlgIndet> for DiffPoly {
    fn from(u: AlgIndet) -> Self {
        DiffPoly::indet(u)
    }
}

#[cfg(test)]
mod tests;
