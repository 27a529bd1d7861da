use num_traits::{One, Zero};

use super::FiniteAlgebra;
use crate::coeffield::FieldElem;
use crate::error::{Error, Result};
use crate::ring::{DiffRing, Ring, Scalars};

/// `Σ a_j ε_j ∈ B ⊗ R`, as the coordinate vector `(a_0, ..., a_ℓ)`.
pub type DElement<E> = Vec<E>;

/// The ring `B ⊗ R`, with derivations acting on coordinates.
#[derive(Clone, Copy, Debug)]
pub struct DAlgebra<'a, R> {
    pub alg: &'a FiniteAlgebra,
    pub ring: R,
}

impl<'a, R: Ring> DAlgebra<'a, R> {
    pub fn new(alg: &'a FiniteAlgebra, ring: R) -> Self {
        DAlgebra { alg, ring }
    }

    /// `Σ c_j ε_j` for rational `c`.
    pub fn constant(&self, c: &[num_rational::BigRational]) -> DElement<R::Elem> {
        c.iter().map(|x| self.ring.from_scalar(&FieldElem::from_rational(x.clone()))).collect()
    }

    /// `r ε_0`, which differs from `r · 1` when `ε_0` is not the unit.
    pub fn at_zero(&self, r: R::Elem) -> DElement<R::Elem> {
        let mut v = vec![self.ring.zero(); self.alg.dim()];
        v[0] = r;
        v
    }

    /// `r · 1`.
    pub fn embed(&self, r: &R::Elem) -> DElement<R::Elem> {
        self.alg.unit().iter().map(|u| self.scale_elem(u, r)).collect()
    }

    fn scale_elem(&self, c: &num_rational::BigRational, r: &R::Elem) -> R::Elem {
        if c.is_zero() {
            self.ring.zero()
        } else if c.is_one() {
            r.clone()
        } else {
            self.ring.scale_rational(c, r)
        }
    }

    /// `r · a` for `r ∈ R`.
    pub fn scale(&self, r: &R::Elem, a: &[R::Elem]) -> DElement<R::Elem> {
        a.iter().map(|x| self.ring.mul(r, x)).collect()
    }

    pub fn check(&self, a: &[R::Elem]) -> Result<()> {
        if a.len() != self.alg.dim() {
            return Err(Error::AlgebraMismatch(format!("element has {} coordinates, algebra has dimension {}", a.len(), self.alg.dim())));
        }
        Ok(())
    }

    /// Product with dimension checks.
    pub fn multiply(&self, a: &[R::Elem], b: &[R::Elem]) -> Result<DElement<R::Elem>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(&a.to_vec(), &b.to_vec()))
    }

    /// `π_i^R(a) = Σ_j a_j π_i(ε_j)`.
    pub fn residue(&self, i: usize, a: &[R::Elem]) -> Result<R::Elem> {
        let f = self.alg.decomposition()?.factor(i)?;
        let mut acc = self.ring.zero();
        for (c, x) in f.pi.iter().zip(a) {
            if !c.is_zero() && !self.ring.is_zero(x) {
                acc = self.ring.add(&acc, &self.scale_elem(c, x));
            }
        }
        Ok(acc)
    }

    /// `u_i · a`.
    pub fn project(&self, i: usize, a: &[R::Elem]) -> Result<DElement<R::Elem>> {
        let u = &self.alg.decomposition()?.factor(i)?.idempotent;
        Ok(self.mul(&self.constant(u), &a.to_vec()))
    }
}

impl<R: DiffRing> DAlgebra<'_, R> {
    pub fn apply_delta(&self, j: usize, a: &[R::Elem]) -> DElement<R::Elem> {
        a.iter().map(|x| self.ring.derive(j, x)).collect()
    }
}

impl<R: Ring> Ring for DAlgebra<'_, R> {
    type Elem = DElement<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.ring.zero(); self.alg.dim()]
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.alg.unit())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.ring.is_zero(x))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.ring.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.ring.neg(x)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.ring.sub(x, y)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        for (j, x) in a.iter().enumerate() {
            if self.ring.is_zero(x) {
                continue;
            }
            for (k, y) in b.iter().enumerate() {
                if self.ring.is_zero(y) {
                    continue;
                }
                let terms = self.alg.product_terms(j, k);
                if terms.is_empty() {
                    continue;
                }
                let xy = self.ring.mul(x, y);
                for (r, c) in terms {
                    out[*r] = self.ring.add(&out[*r], &self.scale_elem(c, &xy));
                }
            }
        }
        out
    }

    fn from_scalar(&self, c: &FieldElem) -> Self::Elem {
        self.embed(&self.ring.from_scalar(c))
    }

    fn scale_rational(&self, q: &num_rational::BigRational, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.scale_elem(q, x)).collect()
    }
}

impl<R: DiffRing> DiffRing for DAlgebra<'_, R> {
    fn derive(&self, j: usize, a: &Self::Elem) -> Self::Elem {
        self.apply_delta(j, a)
    }
}

impl DAlgebra<'_, Scalars> {
    /// Inverse computed factor by factor: on `B_i ⊗ L`, `a = r(u_i + n)` with
    /// `n` nilpotent, so `a^{-1} = r^{-1} Σ_{k<ν} (−n)^k`.
    pub fn invert(&self, a: &[FieldElem]) -> Result<DElement<FieldElem>> {
        self.check(a)?;
        let dec = self.alg.decomposition()?;
        let mut out = self.zero();
        for (i, f) in dec.factors.iter().enumerate() {
            let r = self.residue(i, a)?;
            if r.is_zero() {
                return Err(Error::NotAUnit(i));
            }
            let rinv = r.inv()?;
            let u = self.constant(&f.idempotent);
            let ai = self.mul(&u, &a.to_vec());
            // n = a_i / r − u_i
            let n = self.sub(&self.scale(&rinv, &ai), &u);
            let minus_n = self.neg(&n);
            let mut term = u.clone();
            let mut sum = u;
            for _ in 1..f.nilpotency_index {
                term = self.mul(&term, &minus_n);
                sum = self.add(&sum, &term);
            }
            out = self.add(&out, &self.scale(&rinv, &sum));
        }
        Ok(out)
    }

    /// `Σ c_j·label_j`, lowest basis index first.
    pub fn render(&self, a: &[FieldElem]) -> String {
        render_element(self.alg, a)
    }
}

pub(crate) fn render_element(alg: &FiniteAlgebra, a: &[FieldElem]) -> String {
    let mut out = String::new();
    for (c, label) in a.iter().zip(alg.labels()) {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = match c.as_rational() {
            Some(q) if q < num_rational::BigRational::zero() => (true, c.neg()),
            _ => (false, c.clone()),
        };
        let body = mag.to_string();
        let compound = body.contains(' ');
        let term = if label == "1" {
            if compound && !out.is_empty() { format!("({body})") } else { body }
        } else if mag.is_one() {
            label.clone()
        } else if compound || (body.contains('/') && mag.as_rational().is_none()) {
            format!("({body})*{label}")
        } else {
            format!("{body}*{label}")
        };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
