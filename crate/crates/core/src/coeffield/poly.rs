//! Sparse multivariate polynomials over ℚ in the field generators `t1, t2, ...`.
//!
//! Monomials are ordered degree-lexicographically (total degree first, then the
//! exponent of `t1`, then `t2`, ...). The leading term is the largest monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector over the generators, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct TMonomial(Vec<u32>);

impl TMonomial {
    pub fn one() -> Self {
        TMonomial(Vec::new())
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        TMonomial(e)
    }

    /// The monomial `t_{var+1}^exp` (zero-based variable index).
    pub fn var_power(var: usize, exp: u32) -> Self {
        let mut e = vec![0; var + 1];
        e[var] = exp;
        Self::from_exponents(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let e = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Self::from_exponents(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.0.len() > self.0.len()
            && other.0[self.0.len()..].iter().any(|&e| e > 0) {
                return None;
            }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            e.push(self.0[i].checked_sub(other.exponent(i))?);
        }
        Some(Self::from_exponents(e))
    }

    fn without(&self, var: usize) -> (Self, u32) {
        let mut e = self.0.clone();
        let d = self.exponent(var);
        if var < e.len() {
            e[var] = 0;
        }
        (Self::from_exponents(e), d)
    }
}

impl Ord for TMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exponent(i).cmp(&other.exponent(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for TMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `ℚ[t1, ..., ts]`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    terms: BTreeMap<TMonomial, BigRational>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, TMonomial::one())
    }

    pub fn monomial(c: BigRational, m: TMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RatPoly { terms }
    }

    /// The generator `t_{var+1}` (zero-based index).
    pub fn var(var: usize) -> Self {
        Self::monomial(BigRational::one(), TMonomial::var_power(var, 1))
    }

    pub fn from_terms(it: impl IntoIterator<Item = (TMonomial, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(TMonomial::is_one)
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&TMonomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    /// One more than the largest generator index occurring.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(TMonomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: TMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        RatPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut r = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &TMonomial) -> Self {
        RatPoly { terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect() }
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

    /// Partial derivative with respect to `t_{var+1}`.
    pub fn partial(&self, var: usize) -> Self {
        let mut r = Self::zero();
        for (m, c) in &self.terms {
            let d = m.exponent(var);
            if d == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[var] -= 1;
            r.add_term(TMonomial::from_exponents(e), c * BigRational::from_integer(d.into()));
        }
        r
    }

    /// Evaluates at a rational point; missing coordinates are an error.
    pub fn eval(&self, point: &[BigRational]) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            if m.0.len() > point.len() {
                return None;
            }
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    v *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += v;
        }
        Some(acc)
    }

    /// Generic homomorphic evaluation: substitutes `images[k]` for `t_{k+1}`.
    pub fn eval_with<T: Clone>(
        &self,
        images: &[T],
        zero: T,
        one: T,
        scale: impl Fn(&BigRational, &T) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> Option<T> {
        let mut powers: Vec<Vec<T>> = vec![vec![one.clone()]; images.len()];
        let mut acc = zero;
        for (m, c) in &self.terms {
            if m.0.len() > images.len() {
                return None;
            }
            let mut v = one.clone();
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = mul(powers[i].last().unwrap(), &images[i]);
                    powers[i].push(next);
                }
                v = mul(&v, &powers[i][e]);
            }
            acc = add(&acc, &scale(c, &v));
        }
        Some(acc)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((m, c)) = r.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            let t = Self::monomial(qc.clone(), qm.clone());
            r = r.sub(&d.mul(&t));
            q.add_term(qm, qc);
        }
        Some(q)
    }

    fn to_univariate(&self, var: usize) -> Vec<RatPoly> {
        let mut coeffs = vec![Self::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, d) = m.without(var);
            coeffs[d as usize].add_term(rest, c.clone());
        }
        coeffs
    }

    fn from_univariate(var: usize, coeffs: &[RatPoly]) -> Self {
        let mut r = Self::zero();
        for (d, c) in coeffs.iter().enumerate() {
            let m = TMonomial::var_power(var, d as u32);
            for (cm, cc) in &c.terms {
                r.add_term(cm.mul(&m), cc.clone());
            }
        }
        r
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if !a.is_constant() && !b.is_constant() && !(a.terms.len() == 1 && b.terms.len() == 1) {
            if let Some(g) = super::heugcd::heuristic_gcd(a, b) {
                return g.monic();
            }
        }
        Self::gcd_prs(a, b)
    }

    /// Gcd by primitive pseudo-remainder sequences; the fallback for [`RatPoly::gcd`].
    pub(crate) fn gcd_prs(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return Self::one();
        }
        if a.terms.len() == 1 && b.terms.len() == 1 {
            let (ma, _) = a.leading().unwrap();
            let (mb, _) = b.leading().unwrap();
            let n = ma.0.len().min(mb.0.len());
            let e = (0..n).map(|i| ma.exponent(i).min(mb.exponent(i))).collect();
            return Self::monomial(BigRational::one(), TMonomial::from_exponents(e));
        }
        let var = a.num_vars().max(b.num_vars()) - 1;
        if var == 0 {
            return uni_field_gcd(a, b);
        }
        let ua = a.to_univariate(var);
        let ub = b.to_univariate(var);
        let ca = uni_content(&ua);
        let cb = uni_content(&ub);
        let content = Self::gcd(&ca, &cb);
        let pa = uni_div(&ua, &ca);
        let pb = uni_div(&ub, &cb);
        let g = if pa.len() == 1 || pb.len() == 1 {
            vec![Self::one()]
        } else {
            let (mut p, mut q) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
            q = uni_scalar_normalize(q);
            loop {
                let r = uni_prem(&p, &q);
                if r.is_empty() {
                    break q;
                }
                if r.len() == 1 {
                    break vec![Self::one()];
                }
                let rc = uni_content(&r);
                p = q;
                q = uni_scalar_normalize(uni_div(&r, &rc));
            }
        };
        let g = uni_div(&g, &uni_content(&g));
        Self::from_univariate(var, &g).mul(&content).monic()
    }

    /// Integer content and sign normalization are not needed over ℚ; this is the
    /// least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, c.denom())
        })
    }

    pub fn leading_is_negative(&self) -> bool {
        self.leading().is_some_and(|(_, c)| c.is_negative())
    }
}

/// Euclid over ℚ for polynomials in `t1` only.
fn uni_field_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let to_dense = |p: &RatPoly| {
        let mut v = vec![BigRational::zero(); p.degree_in(0) as usize + 1];
        for (m, c) in &p.terms {
            v[m.exponent(0) as usize] = c.clone();
        }
        v
    };
    let mut p = to_dense(a);
    let mut q = to_dense(b);
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    while !(q.len() == 1 && q[0].is_zero()) {
        let lq = q.last().unwrap().recip();
        for x in q.iter_mut() {
            *x *= &lq;
        }
        while p.len() >= q.len() && !(p.len() == 1 && p[0].is_zero()) {
            let shift = p.len() - q.len();
            let lp = p.last().unwrap().clone();
            for (i, c) in q.iter().enumerate() {
                p[i + shift] -= &lp * c;
            }
            p.pop();
            while p.len() > 1 && p.last().unwrap().is_zero() {
                p.pop();
            }
            if p.is_empty() {
                p.push(BigRational::zero());
            }
        }
        std::mem::swap(&mut p, &mut q);
    }
    RatPoly::from_terms(p.into_iter().enumerate().map(|(d, c)| (TMonomial::var_power(0, d as u32), c))).monic()
}

fn uni_trim(mut v: Vec<RatPoly>) -> Vec<RatPoly> {
    while v.last().is_some_and(RatPoly::is_zero) {
        v.pop();
    }
    v
}

fn uni_content(c: &[RatPoly]) -> RatPoly {
    let mut g = RatPoly::zero();
    for x in c {
        g = RatPoly::gcd(&g, x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Scales so the leading coefficient of the leading coefficient is 1.
fn uni_scalar_normalize(c: Vec<RatPoly>) -> Vec<RatPoly> {
    let lc = c.last().map(RatPoly::leading_coeff).unwrap_or_else(BigRational::one);
    if lc.is_one() {
        return c;
    }
    let inv = lc.recip();
    c.iter().map(|x| x.scale(&inv)).collect()
}

fn uni_div(c: &[RatPoly], d: &RatPoly) -> Vec<RatPoly> {
    if d.is_one() {
        return c.to_vec();
    }
    c.iter().map(|x| x.div_exact(d).expect("content divides every coefficient")).collect()
}

/// Pseudo-remainder of univariate polynomials with polynomial coefficients.
fn uni_prem(a: &[RatPoly], b: &[RatPoly]) -> Vec<RatPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for x in r.iter_mut() {
            *x = x.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r = uni_trim(r);
    }
    r
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("({}/{})", q.numer(), q.denom())
    }
}

pub(crate) fn fmt_monomial(m: &TMonomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(format!("t{}", i + 1)),
            _ => parts.push(format!("t{}^{}", i + 1, e)),
        }
    }
    parts.join("*")
}

/// Renders one term with a nonnegative coefficient magnitude.
fn fmt_term(m: &TMonomial, c: &BigRational) -> String {
    if m.is_one() {
        return fmt_rational(c);
    }
    if c.is_one() {
        fmt_monomial(m)
    } else {
        format!("{}*{}", fmt_rational(c), fmt_monomial(m))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, false) => write!(f, "{}", fmt_term(m, &mag))?,
                (0, true) => write!(f, "-{}", fmt_term(m, &mag))?,
                (_, false) => write!(f, " + {}", fmt_term(m, &mag))?,
                (_, true) => write!(f, " - {}", fmt_term(m, &mag))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn t(i: usize) -> RatPoly {
        RatPoly::var(i)
    }

    fn c(n: i64) -> RatPoly {
        RatPoly::constant(q(n))
    }

    #[test]
    fn gcd_univariate() {
        // (t1+1)(t1-2) and (t1+1)(t1+3)
        let a = t(0).add(&c(1)).mul(&t(0).sub(&c(2)));
        let b = t(0).add(&c(1)).mul(&t(0).add(&c(3)));
        assert_eq!(RatPoly::gcd(&a, &b), t(0).add(&c(1)));
    }

    #[test]
    fn gcd_bivariate() {
        let common = t(0).mul(&t(1)).add(&c(1));
        let a = common.mul(&t(0).sub(&t(1)));
        let b = common.mul(&t(0).add(&t(1)).add(&c(2))).scale(&q(3));
        assert_eq!(RatPoly::gcd(&a, &b), common);
        assert!(RatPoly::gcd(&t(0), &t(1)).is_one());
        assert_eq!(RatPoly::gcd(&t(0).pow(3).mul(&t(1)), &t(0).pow(2)), t(0).pow(2));
    }

    #[test]
    fn exact_division() {
        let a = t(0).add(&t(1));
        let b = t(0).sub(&t(1));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(t(0).div_exact(&b), None);
    }

    #[test]
    fn leading_term_is_degree_lex() {
        let p = t(0).add(&t(1).pow(2));
        assert_eq!(p.leading().unwrap().0, &TMonomial::var_power(1, 2));
        assert_eq!(p.to_string(), "t2^2 + t1");
    }

    #[test]
    fn eval_with_point() {
        let p = t(0).pow(2).add(&c(1));
        assert_eq!(p.eval(&[q(2)]), Some(q(5)));
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

        #[test]
        fn heuristic_gcd_agrees_with_prs(
            a in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6), 1..4),
            b in proptest::collection::vec(((0u32..3, 0u32..3), -5i64..6), 1..4),
            g in proptest::collection::vec(((0u32..2, 0u32..2), -3i64..4), 1..3),
        ) {
            let mk = |ts: &Vec<((u32, u32), i64)>| RatPoly::from_terms(ts.iter().map(|&((x, y), k)| {
                (TMonomial::from_exponents(vec![x, y]), q(k))
            }));
            let (a, b, g) = (mk(&a), mk(&b), mk(&g));
            let (a, b) = (a.mul(&g), b.mul(&g));
            let h = RatPoly::gcd(&a, &b);
            proptest::prop_assert_eq!(&h, &RatPoly::gcd_prs(&a, &b));
            if !g.is_zero() {
                proptest::prop_assert!(h.div_exact(&g.monic()).is_some());
            }
        }
    }
}
