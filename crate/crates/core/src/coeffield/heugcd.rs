//! Heuristic polynomial gcd over ℤ by evaluation at a large integer and
//! ξ-adic reconstruction. Returns `None` when the heuristic gives up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{RatPoly, TMonomial};

const ATTEMPTS: usize = 6;

/// Gcd of two polynomials over ℚ, up to a scalar.
pub(super) fn heuristic_gcd(a: &RatPoly, b: &RatPoly) -> Option<RatPoly> {
    let a = to_integral(a);
    let b = to_integral(b);
    gcd_z(&a, &b)
}

fn to_integral(p: &RatPoly) -> RatPoly {
    let l = p.denominator_lcm();
    p.scale(&BigRational::from_integer(l))
}

fn int_coeff(c: &BigRational) -> &BigInt {
    debug_assert!(c.is_integer());
    c.numer()
}

fn content(p: &RatPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(int_coeff(c)))
}

fn max_norm(p: &RatPoly) -> BigInt {
    p.terms().map(|(_, c)| int_coeff(c).abs()).max().unwrap_or_else(BigInt::zero)
}

fn positive(p: RatPoly) -> RatPoly {
    if p.leading_is_negative() {
        p.neg()
    } else {
        p
    }
}

fn constant(c: BigInt) -> RatPoly {
    RatPoly::constant(BigRational::from_integer(c))
}

/// Full gcd in ℤ[t], integer content included, positive leading coefficient.
fn gcd_z(f: &RatPoly, g: &RatPoly) -> Option<RatPoly> {
    if f.is_zero() {
        return Some(positive(g.clone()));
    }
    if g.is_zero() {
        return Some(positive(f.clone()));
    }
    let cf = content(f);
    let cg = content(g);
    let c = cf.gcd(&cg);
    if f.is_constant() || g.is_constant() {
        return Some(constant(c));
    }
    let f = f.scale(&BigRational::from_integer(cf).recip());
    let g = g.scale(&BigRational::from_integer(cg).recip());
    let var = f.num_vars().max(g.num_vars()) - 1;
    let h = match (f.degree_in(var) > 0, g.degree_in(var) > 0) {
        (true, true) => heu_primitive(&f, &g, var)?,
        (true, false) => coefficient_gcd(&f, &g, var)?,
        (false, true) => coefficient_gcd(&g, &f, var)?,
        (false, false) => unreachable!("var is the largest occurring generator"),
    };
    Some(h.scale(&BigRational::from_integer(c)))
}

/// gcd(f, g) when `g` does not involve `var`.
fn coefficient_gcd(f: &RatPoly, g: &RatPoly, var: usize) -> Option<RatPoly> {
    let mut acc = g.clone();
    for c in coefficients(f, var) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_z(&acc, &c)?;
        if acc.is_constant() {
            break;
        }
    }
    Some(positive(acc))
}

fn coefficients(p: &RatPoly, var: usize) -> Vec<RatPoly> {
    let mut out = vec![Vec::new(); p.degree_in(var) as usize + 1];
    for (m, c) in p.terms() {
        let mut e = m.exponents().to_vec();
        let d = m.exponent(var) as usize;
        if var < e.len() {
            e[var] = 0;
        }
        out[d].push((TMonomial::from_exponents(e), c.clone()));
    }
    out.into_iter().map(RatPoly::from_terms).collect()
}

fn eval_var(p: &RatPoly, var: usize, xi: &BigInt) -> RatPoly {
    let xi = BigRational::from_integer(xi.clone());
    RatPoly::from_terms(p.terms().map(|(m, c)| {
        let mut e = m.exponents().to_vec();
        let d = m.exponent(var);
        if var < e.len() {
            e[var] = 0;
        }
        (TMonomial::from_exponents(e), c * num_traits::pow(xi.clone(), d as usize))
    }))
}

fn symmetric_mod(c: &BigInt, xi: &BigInt) -> BigInt {
    let r = c.mod_floor(xi);
    if &r * 2 > *xi {
        r - xi
    } else {
        r
    }
}

fn interpolate(h: &RatPoly, var: usize, xi: &BigInt) -> RatPoly {
    let mut h = h.clone();
    let mut out = RatPoly::zero();
    let xq = BigRational::from_integer(xi.clone()).recip();
    let mut i = 0u32;
    while !h.is_zero() {
        let c = RatPoly::from_terms(
            h.terms()
                .map(|(m, c)| (m.clone(), BigRational::from_integer(symmetric_mod(int_coeff(c), xi)))),
        );
        out = out.add(&c.mul_monomial(&TMonomial::var_power(var, i)));
        h = h.sub(&c).scale(&xq);
        i += 1;
    }
    out
}

fn heu_primitive(f: &RatPoly, g: &RatPoly, var: usize) -> Option<RatPoly> {
    let two = BigInt::from(2);
    let mut xi = max_norm(f).min(max_norm(g)) * &two + BigInt::from(29);
    for _ in 0..ATTEMPTS {
        let ff = eval_var(f, var, &xi);
        let gg = eval_var(g, var, &xi);
        if !ff.is_zero() && !gg.is_zero() {
            let h = gcd_z(&ff, &gg)?;
            let hp = interpolate(&h, var, &xi);
            if !hp.is_zero() {
                let cont = content(&hp);
                let hp = positive(hp.scale(&BigRational::from_integer(cont).recip()));
                if f.div_exact(&hp).is_some() && g.div_exact(&hp).is_some() {
                    return Some(hp);
                }
            }
        }
        xi = xi * BigInt::from(73794) / BigInt::from(27011);
        if xi.is_one() {
            break;
        }
    }
    None
}
