//! D-structures: ring homomorphisms `e : K → B ⊗ K` commuting with the
//! derivations, presented by the images of the field generators.

mod check;

use crate::coeffield::{Field, FieldElem, RatPoly};
use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::finitealg::{DAlgebra, DElement, FiniteAlgebra};
use crate::ring::{Ring, Scalars};

pub use check::{StructureCheck, StructureReport};

/// How coefficients are transformed by [`DStructure::map_poly`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    /// `σ_i = π_i ∘ e`.
    Sigma(usize),
    /// The `ε_i`-coordinate `∂_i` of `e`.
    Component(usize),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DStructure {
    algebra: FiniteAlgebra,
    field: Field,
    images: Vec<DElement<FieldElem>>,
}

impl DStructure {
    /// `images[k]` is `e(t_{k+1})`. The axioms are not checked here; see
    /// [`DStructure::check`].
    pub fn new(algebra: FiniteAlgebra, field: Field, images: Vec<DElement<FieldElem>>) -> Result<Self> {
        algebra.decomposition()?;
        if images.len() != field.num_generators() {
            return Err(Error::Invalid(format!(
                "{} generator images for a field with {} generators",
                images.len(),
                field.num_generators()
            )));
        }
        for img in &images {
            if img.len() != algebra.dim() {
                return Err(Error::AlgebraMismatch(format!("image has {} coordinates, algebra has dimension {}", img.len(), algebra.dim())));
            }
            if let Some(c) = img.iter().find(|c| !field.contains(c)) {
                return Err(Error::NotInDomain(c.to_string()));
            }
        }
        Ok(DStructure { algebra, field, images })
    }

    /// The trivial structure `e(r) = r · 1`.
    pub fn trivial(algebra: FiniteAlgebra, field: Field) -> Result<Self> {
        let d = DAlgebra::new(&algebra, Scalars);
        let images = (1..=field.num_generators()).map(|k| d.embed(&FieldElem::t(k))).collect();
        Self::new(algebra, field, images)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn images(&self) -> &[DElement<FieldElem>] {
        &self.images
    }

    pub fn ring(&self) -> DAlgebra<'_, Scalars> {
        DAlgebra::new(&self.algebra, Scalars)
    }

    /// Number of local factors `t + 1`.
    pub fn num_factors(&self) -> usize {
        self.algebra.decomposition().map(|d| d.len()).unwrap_or(1)
    }

    fn e_poly(&self, p: &RatPoly) -> Result<DElement<FieldElem>> {
        let d = self.ring();
        p.eval_with(&self.images, d.zero(), d.one(), |c, v| d.scale_rational(c, v), |a, b| d.add(a, b), |a, b| d.mul(a, b))
            .ok_or_else(|| Error::NotInDomain(p.to_string()))
    }

    /// The unique extension of `e` to fractions.
    pub fn e_of(&self, a: &FieldElem) -> Result<DElement<FieldElem>> {
        if !self.field.contains(a) {
            return Err(Error::NotInDomain(a.to_string()));
        }
        let d = self.ring();
        let num = self.e_poly(a.numer())?;
        if a.denom().is_one() {
            return Ok(num);
        }
        let den = self.e_poly(a.denom())?;
        let inv = d.invert(&den).map_err(|e| match e {
            Error::NotAUnit(i) => Error::DenominatorNotUnit(i),
            e => e,
        })?;
        Ok(d.mul(&num, &inv))
    }

    /// `∂_i(a)`, the `ε_i`-coordinate of `e(a)`.
    pub fn partial_of(&self, i: usize, a: &FieldElem) -> Result<FieldElem> {
        if i >= self.algebra.dim() {
            return Err(Error::IndexOutOfRange { index: i, what: "basis coordinate" });
        }
        Ok(self.e_of(a)?.swap_remove(i))
    }

    /// `σ_i(a) = π_i(e(a))`.
    pub fn sigma(&self, i: usize, a: &FieldElem) -> Result<FieldElem> {
        let e = self.e_of(a)?;
        self.ring().residue(i, &e)
    }

    /// `f^e` as the coordinate polynomials `(f_0, ..., f_ℓ)` with
    /// `f^e = Σ_j f_j ε_j`.
    pub fn map_poly_e(&self, f: &DiffPoly) -> Result<Vec<DiffPoly>> {
        let mut coords = vec![Vec::new(); self.algebra.dim()];
        for (m, c) in f.terms() {
            for (j, x) in self.e_of(c)?.into_iter().enumerate() {
                coords[j].push((m.clone(), x));
            }
        }
        Ok(coords.into_iter().map(DiffPoly::from_terms).collect())
    }

    /// `f^{σ_i}` or `f^{∂_i}`.
    pub fn map_poly(&self, f: &DiffPoly, mode: MapMode) -> Result<DiffPoly> {
        match mode {
            MapMode::Sigma(i) => f.map_coefficients(|c| self.sigma(i, c)),
            MapMode::Component(i) => f.map_coefficients(|c| self.partial_of(i, c)),
        }
    }

    pub fn check(&self, samples: usize, seed: u64) -> StructureReport {
        check::check_structure(self, samples, seed)
    }

    /// Renders an element of `B ⊗ K` with the algebra's labels.
    pub fn render(&self, a: &[FieldElem]) -> String {
        self.ring().render(a)
    }
}
