//! Finite `ℚ`-algebras `B` given by structure constants, their local
//! decompositions, and the rings `B ⊗ R`.

mod decompose;
mod dring;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;

pub use decompose::{LocalDecomposition, LocalFactor};
pub use dring::{DAlgebra, DElement};

/// Vector of rational coordinates on the basis `ε_0, ..., ε_ℓ`.
pub type Coords = Vec<BigRational>;

/// A building block of a product algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `ℚ[η]/(η^d)`.
    Local(usize),
    /// `ℚ`.
    Point,
    /// `ℚ[η_1, ..., η_q]/(η)^{order+1}`.
    Jets { vars: usize, order: usize },
}

/// A commutative finite-dimensional `ℚ`-algebra with basis `ε_0..ε_ℓ` such
/// that the `ε_0`-coordinate `π` is a ring homomorphism onto `ℚ`.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    table: Vec<Vec<Coords>>,
    sparse: Vec<Vec<Vec<(usize, BigRational)>>>,
    unit: Coords,
    labels: Vec<String>,
    atoms: Vec<(String, Coords)>,
    pieces: Option<Vec<Piece>>,
    decomposition: Option<LocalDecomposition>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.table == o.table && self.labels == o.labels
    }
}

fn basis_vector(dim: usize, k: usize) -> Coords {
    let mut v = vec![BigRational::zero(); dim];
    v[k] = BigRational::one();
    v
}

/// Monomials in `vars` variables of total degree at most `order`, graded then
/// lexicographically descending.
fn jet_monomials(vars: usize, order: usize) -> Vec<Vec<usize>> {
    fn rec(vars: usize, left: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == vars {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(vars, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for d in 0..=order {
        rec(vars, d, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_label(names: &[String], exps: &[usize]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    parts.join("*")
}

impl FiniteAlgebra {
    /// `ℚ[ε]/(ε^d)`.
    pub fn truncated(d: usize) -> Result<Self> {
        Self::product(&[Piece::Local(d)])
    }

    /// `ℚ[ε]/(ε²)`.
    pub fn dual_numbers() -> Self {
        Self::truncated(2).expect("valid")
    }

    /// `ℚ^n` with the coordinate idempotents as basis.
    pub fn split(n: usize) -> Result<Self> {
        Self::product(&vec![Piece::Point; n])
    }

    /// The product of local pieces. The basis is the concatenation of the
    /// monomial bases of the pieces, so `ε_0` is the unit of the first piece.
    pub fn product(pieces: &[Piece]) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::InvalidAlgebra("empty product".into()));
        }
        let single = pieces.len() == 1;
        let mut blocks: Vec<(Vec<Vec<usize>>, Vec<String>)> = Vec::new();
        for (p, piece) in pieces.iter().enumerate() {
            let (vars, order) = match *piece {
                Piece::Local(0) => return Err(Error::InvalidAlgebra("local(d) needs d >= 1".into())),
                Piece::Local(d) => (1, d - 1),
                Piece::Point => (1, 0),
                Piece::Jets { vars: 0, .. } => (1, 0),
                Piece::Jets { vars, order } => (vars, order),
            };
            let names: Vec<String> = match (*piece, single) {
                (Piece::Jets { vars, .. }, true) if vars > 1 => (1..=vars).map(|k| format!("e{k}")).collect(),
                (Piece::Jets { vars, .. }, false) if vars > 1 => (1..=vars).map(|k| format!("e{p}_{k}")).collect(),
                (_, true) => vec!["e".into()],
                (_, false) => vec![format!("e{p}")],
            };
            let mons = jet_monomials(vars, order);
            blocks.push((mons, names));
        }
        let dim: usize = blocks.iter().map(|b| b.0.len()).sum();
        let mut table = vec![vec![vec![BigRational::zero(); dim]; dim]; dim];
        let mut labels = Vec::with_capacity(dim);
        let mut atoms = Vec::new();
        let mut unit = vec![BigRational::zero(); dim];
        let mut offset = 0;
        for (p, (mons, names)) in blocks.iter().enumerate() {
            let unit_label = if single { "1".to_string() } else { format!("u{p}") };
            for (a, ma) in mons.iter().enumerate() {
                labels.push(if a == 0 { unit_label.clone() } else { monomial_label(names, ma) });
                for (b, mb) in mons.iter().enumerate() {
                    let prod: Vec<usize> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                    if let Some(r) = mons.iter().position(|m| *m == prod) {
                        table[offset + a][offset + b][offset + r] = BigRational::one();
                    }
                }
            }
            unit[offset] = BigRational::one();
            if !single {
                atoms.push((unit_label, basis_vector(dim, offset)));
            }
            if mons.len() > 1 {
                for (k, n) in names.iter().enumerate() {
                    let mut e = vec![0; names.len()];
                    e[k] = 1;
                    let r = mons.iter().position(|m| *m == e).expect("degree one monomial");
                    atoms.push((n.clone(), basis_vector(dim, offset + r)));
                }
            }
            offset += mons.len();
        }
        let mut alg = Self::assemble(table, labels, atoms)?;
        alg.pieces = Some(pieces.to_vec());
        let mut idempotents = Vec::new();
        let mut offset = 0;
        for (mons, _) in &blocks {
            let mut u = vec![BigRational::zero(); dim];
            u[offset] = BigRational::one();
            idempotents.push(u);
            offset += mons.len();
        }
        debug_assert_eq!(alg.unit, unit);
        alg.decomposition = Some(LocalDecomposition::from_idempotents(&alg, idempotents)?);
        Ok(alg)
    }

    /// An algebra from an explicit table `c[j][k][r]` with `ε_j ε_k = Σ_r
    /// c[j][k][r] ε_r`. Without `idempotents`, the algebra must be local.
    pub fn from_table(table: Vec<Vec<Coords>>, labels: Option<Vec<String>>, idempotents: Option<Vec<Coords>>) -> Result<Self> {
        let dim = table.len();
        let labels = labels.unwrap_or_else(|| (0..dim).map(|k| if k == 0 { "1".into() } else { format!("e{k}") }).collect());
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra(format!("{} labels for dimension {dim}", labels.len())));
        }
        let atoms = labels.iter().enumerate().filter(|(k, l)| *k > 0 || l.as_str() != "1").map(|(k, l)| (l.clone(), basis_vector(dim, k))).collect();
        let mut alg = Self::assemble(table, labels, atoms)?;
        alg.decomposition = Some(match idempotents {
            Some(us) => LocalDecomposition::from_idempotents(&alg, us)?,
            None => {
                if !alg.is_local() {
                    return Err(Error::IdempotentsRequired);
                }
                LocalDecomposition::from_idempotents(&alg, vec![alg.unit.clone()])?
            }
        });
        Ok(alg)
    }

    fn assemble(table: Vec<Vec<Coords>>, labels: Vec<String>, atoms: Vec<(String, Coords)>) -> Result<Self> {
        let dim = table.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("dimension 0".into()));
        }
        for row in &table {
            if row.len() != dim || row.iter().any(|v| v.len() != dim) {
                return Err(Error::InvalidAlgebra("structure constants must form a dim^3 table".into()));
            }
        }
        let sparse = table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(r, c)| (r, c.clone())).collect())
                    .collect()
            })
            .collect();
        let mut alg = FiniteAlgebra {
            table,
            sparse,
            unit: Vec::new(),
            labels,
            atoms,
            pieces: None,
            decomposition: None,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.dim();
        for j in 0..n {
            for k in 0..n {
                if self.table[j][k] != self.table[k][j] {
                    return Err(Error::InvalidAlgebra(format!("not commutative at ({j}, {k})")));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.mul(&self.mul(&basis_vector(n, a), &basis_vector(n, b)), &basis_vector(n, c));
                    let right = self.mul(&basis_vector(n, a), &self.mul(&basis_vector(n, b), &basis_vector(n, c)));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        // unit: u with u ε_k = ε_k for all k, linear in u
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for k in 0..n {
            for r in 0..n {
                rows.push((0..n).map(|j| self.table[j][k][r].clone()).collect());
                rhs.push(if k == r { BigRational::one() } else { BigRational::zero() });
            }
        }
        self.unit = linalg::solve(rows, rhs, n).ok_or_else(|| Error::InvalidAlgebra("no unit element".into()))?;
        if !self.unit[0].is_one() {
            return Err(Error::InvalidAlgebra("the unit must have ε0-coordinate 1".into()));
        }
        for j in 0..n {
            for k in 0..n {
                let expect = if j == 0 && k == 0 { BigRational::one() } else { BigRational::zero() };
                if self.table[j][k][0] != expect {
                    return Err(Error::InvalidAlgebra(format!("the ε0-coordinate is not multiplicative at ({j}, {k})")));
                }
            }
        }
        Ok(())
    }

    /// Whether `ker π` is nilpotent.
    fn is_local(&self) -> bool {
        let gens: Vec<Coords> = (1..self.dim()).map(|k| basis_vector(self.dim(), k)).collect();
        decompose::ideal_powers(self, &gens).is_some()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Coords {
        &self.unit
    }

    pub fn structure_constant(&self, j: usize, k: usize, r: usize) -> &BigRational {
        &self.table[j][k][r]
    }

    /// Nonzero `(r, c[j][k][r])`.
    pub(crate) fn product_terms(&self, j: usize, k: usize) -> &[(usize, BigRational)] {
        &self.sparse[j][k]
    }

    pub fn pieces(&self) -> Option<&[Piece]> {
        self.pieces.as_deref()
    }

    pub fn decomposition(&self) -> Result<&LocalDecomposition> {
        self.decomposition.as_ref().ok_or(Error::NoDecomposition)
    }

    /// Named elements usable in expressions: unit idempotents and nilpotent
    /// generators for products, basis labels for tables.
    pub fn atom(&self, name: &str) -> Option<&Coords> {
        self.atoms.iter().find(|(n, _)| n == name).map(|(_, v)| v)
    }

    pub fn atom_names(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(|(n, _)| n.as_str())
    }

    pub fn basis(&self, k: usize) -> Coords {
        basis_vector(self.dim(), k)
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Coords {
        let n = self.dim();
        let mut out = vec![BigRational::zero(); n];
        for (j, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (k, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (r, c) in &self.sparse[j][k] {
                    out[*r] += &xy * c;
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> Coords {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigRational], b: &[BigRational]) -> Coords {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, c: &BigRational, a: &[BigRational]) -> Coords {
        a.iter().map(|x| c * x).collect()
    }

    pub fn pow(&self, a: &[BigRational], e: u32) -> Coords {
        (0..e).fold(self.unit.clone(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(a: &[BigRational]) -> bool {
        a.iter().all(Zero::is_zero)
    }

    /// The `ε_0`-coordinate, which is `π`.
    pub fn pi(&self, a: &[BigRational]) -> BigRational {
        a[0].clone()
    }

}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.pieces {
            Some(ps) => {
                let parts: Vec<String> = ps
                    .iter()
                    .map(|p| match p {
                        Piece::Local(d) => format!("local(d={d})"),
                        Piece::Point => "point".into(),
                        Piece::Jets { vars, order } => format!("jets(vars={vars}, order={order})"),
                    })
                    .collect();
                write!(f, "product: [{}]", parts.join(", "))
            }
            None => write!(f, "algebra of dimension {} with basis {}", self.dim(), self.labels.join(", ")),
        }
    }
}
