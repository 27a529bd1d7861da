use std::fmt;

use num_traits::{One, Signed};

use super::{DiffPoly, Monomial};
use crate::coeffield::{fmt_monomial, fmt_rational, FieldElem};

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|(u, e)| match (*e, u.theta.is_identity()) {
                (1, _) => u.to_string(),
                (_, true) => format!("{u}^{e}"),
                (_, false) => format!("({u})^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Signed pieces `(negative, body)` for one term `c * m`.
fn pieces(m: &Monomial, c: &FieldElem, out: &mut Vec<(bool, String)>) {
    let x = if m.is_one() { None } else { Some(m.to_string()) };
    if c.is_polynomial() {
        for (tm, q) in c.numer().terms().rev() {
            let mut parts = Vec::new();
            let mag = q.abs();
            if !mag.is_one() || (tm.is_one() && x.is_none()) {
                parts.push(fmt_rational(&mag));
            }
            if !tm.is_one() {
                parts.push(fmt_monomial(tm));
            }
            if let Some(x) = &x {
                parts.push(x.clone());
            }
            out.push((q.is_negative(), parts.join("*")));
        }
    } else {
        let neg = c.is_negative_leading();
        let mag = if neg { c.neg() } else { c.clone() };
        let mut body = mag.render_factor();
        if let Some(x) = &x {
            body.push('*');
            body.push_str(x);
        }
        out.push((neg, body));
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = Vec::new();
        for (m, c) in self.terms().rev() {
            pieces(m, c, &mut out);
        }
        for (k, (neg, body)) in out.iter().enumerate() {
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
