use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{fmt_rational, RatPoly, TMonomial};
use crate::error::{Error, Result};

/// An element of `ℚ(t1, ..., ts)` in canonical form: `num/den` with
/// `gcd(num, den) = 1` and `den` monic. Zero is `0/1`.
///
/// Equality is structural equality of the canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    num: RatPoly,
    den: RatPoly,
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem { num: RatPoly::zero(), den: RatPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(RatPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(q))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_poly(p: RatPoly) -> Self {
        FieldElem { num: p, den: RatPoly::one() }
    }

    /// The generator `t_k` (one-based).
    pub fn t(k: usize) -> Self {
        assert!(k >= 1, "generators are numbered from 1");
        Self::from_poly(RatPoly::var(k - 1))
    }

    /// Builds `num/den` and normalizes.
    pub fn from_fraction(num: RatPoly, den: RatPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let c = den.leading_coeff();
            return FieldElem { num: num.scale(&c.recip()), den: RatPoly::one() };
        }
        let g = RatPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            FieldElem { num, den }
        } else {
            let inv = lc.recip();
            FieldElem { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &RatPoly {
        &self.num
    }

    pub fn denom(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value if the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// One more than the largest generator index occurring.
    pub fn num_vars(&self) -> usize {
        self.num.num_vars().max(self.den.num_vars())
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            if self.den.is_one() {
                return Self::from_poly(self.num.add(&o.num));
            }
            return Self::normalized(self.num.add(&o.num), self.den.clone());
        }
        Self::normalized(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }

    pub fn neg(&self) -> Self {
        FieldElem { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Self::from_poly(self.num.mul(&o.num));
        }
        Self::normalized(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FieldElem { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        FieldElem { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `∂/∂t_{var+1}` (zero-based index) by the quotient rule.
    pub fn partial(&self, var: usize) -> Self {
        if self.den.is_one() {
            return Self::from_poly(self.num.partial(var));
        }
        let n = self.num.partial(var).mul(&self.den).sub(&self.num.mul(&self.den.partial(var)));
        Self::normalized(n, self.den.mul(&self.den))
    }

    /// Exact value at a rational point.
    pub fn eval_at(&self, point: &[BigRational]) -> Result<BigRational> {
        let out_of_range =
            || Error::IndexOutOfRange { index: self.num_vars(), what: "point coordinate" };
        let d = self.den.eval(point).ok_or_else(out_of_range)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let n = self.num.eval(point).ok_or_else(out_of_range)?;
        Ok(n / d)
    }

    /// Substitutes `images[k]` for `t_{k+1}`; fails if the denominator maps to zero.
    pub fn substitute(&self, images: &[FieldElem]) -> Result<Self> {
        let ev = |p: &RatPoly| {
            p.eval_with(
                images,
                FieldElem::zero(),
                FieldElem::one(),
                |c, x| x.scale(c),
                |a, b| a.add(b),
                |a, b| a.mul(b),
            )
            .ok_or(Error::IndexOutOfRange { index: p.num_vars(), what: "substitution image" })
        };
        let n = ev(&self.num)?;
        let d = ev(&self.den)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        n.div(&d)
    }

    /// Sign of the leading numerator coefficient, used when rendering.
    pub(crate) fn is_negative_leading(&self) -> bool {
        self.num.leading_is_negative()
    }

    /// Lowest common multiple of coefficient denominators in the numerator.
    pub fn numer_denominator_lcm(&self) -> BigInt {
        self.num.denominator_lcm()
    }

    /// Renders as a factor that can appear in a product, e.g. `(t1 + 1)` or `2*t1`.
    /// The caller takes care of the overall sign.
    pub(crate) fn render_factor(&self) -> String {
        let num = render_poly_factor(&self.num);
        if self.den.is_one() {
            return num;
        }
        format!("{}/{}", num, render_den(&self.den))
    }
}

fn render_poly_factor(p: &RatPoly) -> String {
    if p.num_terms() == 1 {
        p.to_string()
    } else {
        format!("({p})")
    }
}

fn render_den(p: &RatPoly) -> String {
    // A lone generator power binds tighter than `/`; anything else needs parentheses.
    if p.num_terms() == 1 {
        let (m, c) = p.leading().unwrap();
        if c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1 {
            return p.to_string();
        }
    }
    format!("({p})")
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", render_poly_factor(&self.num), render_den(&self.den))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl From<BigRational> for FieldElem {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<RatPoly> for FieldElem {
    fn from(p: RatPoly) -> Self {
        Self::from_poly(p)
    }
}

// Convenience operators on references.
impl std::ops::Add for &FieldElem {
    type Output = FieldElem;
    fn add(self, o: &FieldElem) -> FieldElem {
        FieldElem::add(self, o)
    }
}

impl std::ops::Sub for &FieldElem {
    type Output = FieldElem;
    fn sub(self, o: &FieldElem) -> FieldElem {
        FieldElem::sub(self, o)
    }
}

impl std::ops::Mul for &FieldElem {
    type Output = FieldElem;
    fn mul(self, o: &FieldElem) -> FieldElem {
        FieldElem::mul(self, o)
    }
}

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem::neg(self)
    }
}

/// Formats a rational the way coefficients are rendered (`3`, `(1/2)`).
pub fn render_rational(q: &BigRational) -> String {
    fmt_rational(q)
}

/// Builds `c * t^m` from an exponent vector.
pub fn monomial_elem(c: BigRational, exps: Vec<u32>) -> FieldElem {
    FieldElem::from_poly(RatPoly::monomial(c, TMonomial::from_exponents(exps)))
}
