//! Truncated multivariate Taylor expansions of field elements at a rational point.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{RatPoly, TMonomial};
use super::ratfunc::FieldElem;
use crate::error::{Error, Result};

/// All exponent vectors in `vars` variables of total degree at most `degree`,
/// in increasing degree-lexicographic order.
pub fn monomials_up_to(vars: usize, degree: u32) -> Vec<TMonomial> {
    fn rec(vars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<TMonomial>) {
        if prefix.len() == vars {
            out.push(TMonomial::from_exponents(prefix.clone()));
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A power series in `u = t - p` truncated above total degree `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    order: u32,
    coeffs: BTreeMap<TMonomial, BigRational>,
}

/// Re-expands a polynomial in `t` as a polynomial in `u = t - p`.
pub fn shift_to_point(p: &RatPoly, point: &[BigRational]) -> Result<RatPoly> {
    let images: Vec<RatPoly> = point
        .iter()
        .enumerate()
        .map(|(k, c)| RatPoly::var(k).add(&RatPoly::constant(c.clone())))
        .collect();
    p.eval_with(&images, RatPoly::zero(), RatPoly::one(), |c, x| x.scale(c), RatPoly::add, RatPoly::mul)
        .ok_or(Error::IndexOutOfRange { index: p.num_vars(), what: "point coordinate" })
}

/// Inverse of [`shift_to_point`]: rewrites a polynomial in `u` in terms of `t`.
pub fn unshift_from_point(p: &RatPoly, point: &[BigRational]) -> Result<RatPoly> {
    let neg: Vec<BigRational> = point.iter().map(|c| -c.clone()).collect();
    shift_to_point(p, &neg)
}

impl Jet {
    pub fn zero(order: u32) -> Self {
        Jet { order, coeffs: BTreeMap::new() }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn from_poly_in_u(p: &RatPoly, order: u32) -> Self {
        Jet {
            order,
            coeffs: p
                .terms()
                .filter(|(m, _)| m.degree() <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Taylor expansion of `a` at `point` through total degree `order`.
    pub fn expand(a: &FieldElem, point: &[BigRational], order: u32) -> Result<Self> {
        let num = shift_to_point(a.numer(), point)?;
        let den = shift_to_point(a.denom(), point)?;
        let c0 = den.terms().find(|(m, _)| m.is_one()).map(|(_, c)| c.clone());
        let c0 = match c0 {
            Some(c) if !c.is_zero() => c,
            _ => return Err(Error::PoleAtPoint),
        };
        let n = Jet::from_poly_in_u(&num, order);
        if den.is_constant() {
            return Ok(n.scale(&c0.recip()));
        }
        let d = Jet::from_poly_in_u(&den, order);
        Ok(n.mul(&d.inverse(&c0, point.len())))
    }

    fn inverse(&self, c0: &BigRational, vars: usize) -> Jet {
        let inv_c0 = c0.recip();
        let mut out: BTreeMap<TMonomial, BigRational> = BTreeMap::new();
        for m in monomials_up_to(vars, self.order) {
            if m.is_one() {
                out.insert(m, inv_c0.clone());
                continue;
            }
            let mut acc = BigRational::zero();
            for (dm, dc) in &self.coeffs {
                if dm.is_one() {
                    continue;
                }
                if let Some(rest) = m.div(dm) {
                    if let Some(v) = out.get(&rest) {
                        acc += dc * v;
                    }
                }
            }
            if !acc.is_zero() {
                out.insert(m, -acc * &inv_c0);
            }
        }
        Jet { order: self.order, coeffs: out }
    }

    pub fn coeff(&self, m: &TMonomial) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Jet {
        Jet {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, x)| (m.clone(), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut coeffs = BTreeMap::new();
        for (m, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if m.degree() > order {
                continue;
            }
            let e: &mut BigRational = coeffs.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
        }
        coeffs.retain(|_, c: &mut BigRational| !c.is_zero());
        Jet { order, coeffs }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let order = self.order.min(o.order);
        let mut coeffs: BTreeMap<TMonomial, BigRational> = BTreeMap::new();
        for (m1, c1) in &self.coeffs {
            for (m2, c2) in &o.coeffs {
                let m = m1.mul(m2);
                if m.degree() > order {
                    continue;
                }
                *coeffs.entry(m).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Jet { order, coeffs }
    }

    /// The truncated series as a polynomial in `u`.
    pub fn to_poly_in_u(&self) -> RatPoly {
        RatPoly::from_terms(self.coeffs.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// True if every coefficient of total degree at most `order` vanishes.
    pub fn vanishes_through(&self, order: u32) -> bool {
        self.coeffs.keys().all(|m| m.degree() > order)
    }
}

/// Whether the Taylor expansion of `a` at `point` vanishes through total degree `order`.
pub fn vanishes_to_order(a: &FieldElem, point: &[BigRational], order: u32) -> Result<bool> {
    Ok(Jet::expand(a, point, order)?.is_zero())
}
