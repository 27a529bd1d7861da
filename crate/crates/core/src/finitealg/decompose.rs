use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{basis_vector, Coords, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::linalg;
use crate::ring::Ring;

/// One local factor `B_i = u_i B`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalFactor {
    pub idempotent: Coords,
    /// `π_i(ε_j)` for each basis index `j`.
    pub pi: Coords,
    /// A basis of the maximal ideal `𝔪_i`.
    pub generators: Vec<Coords>,
    /// Least `ν` with `𝔪_i^ν = 0`.
    pub nilpotency_index: usize,
    /// `levels[k]` spans `𝔪_i^k` modulo `𝔪_i^{k+1}`; `levels[0] = [u_i]`.
    pub levels: Vec<Vec<Coords>>,
}

impl LocalFactor {
    pub fn dim(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// `B = B_0 × ... × B_t` with `π_0 = π`.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalDecomposition {
    pub factors: Vec<LocalFactor>,
    /// Columns: the level bases of all factors, concatenated.
    adapted: Vec<Coords>,
    adapted_inverse: Vec<Vec<BigRational>>,
    /// `(factor, level)` to positions in `adapted`.
    slots: Vec<Vec<Vec<usize>>>,
}

fn trace(alg: &FiniteAlgebra, x: &[BigRational]) -> BigRational {
    let n = alg.dim();
    let mut t = BigRational::zero();
    for r in 0..n {
        t += &alg.mul(x, &basis_vector(n, r))[r];
    }
    t
}

/// Bases of `I, I², ...` up to the last nonzero power, or `None` if `I` is
/// not nilpotent.
pub(super) fn ideal_powers(alg: &FiniteAlgebra, gens: &[Coords]) -> Option<Vec<Vec<Coords>>> {
    let pick = |vs: Vec<Coords>| -> Vec<Coords> {
        let idx = linalg::independent_subset(&vs);
        idx.into_iter().map(|i| vs[i].clone()).collect()
    };
    let first = pick(gens.to_vec());
    let mut powers = Vec::new();
    let mut cur = first.clone();
    while !cur.is_empty() {
        if powers.len() > alg.dim() {
            return None;
        }
        powers.push(cur.clone());
        let mut next = Vec::new();
        for a in &cur {
            for g in &first {
                next.push(alg.mul(a, g));
            }
        }
        cur = pick(next);
    }
    Some(powers)
}

fn rank(vs: &[Coords], n: usize) -> usize {
    linalg::rank(vs.to_vec(), n)
}

impl LocalDecomposition {
    pub(super) fn from_idempotents(alg: &FiniteAlgebra, us: Vec<Coords>) -> Result<Self> {
        let n = alg.dim();
        let bad = |m: String| Err(Error::InvalidIdempotents(m));
        if us.is_empty() || us.iter().any(|u| u.len() != n) {
            return bad(format!("expected nonempty vectors of length {n}"));
        }
        let mut total = vec![BigRational::zero(); n];
        for (i, u) in us.iter().enumerate() {
            if FiniteAlgebra::is_zero(u) || alg.mul(u, u) != *u {
                return bad(format!("u{i} is not a nonzero idempotent"));
            }
            for (j, v) in us.iter().enumerate().skip(i + 1) {
                if !FiniteAlgebra::is_zero(&alg.mul(u, v)) {
                    return bad(format!("u{i} u{j} != 0"));
                }
            }
            total = alg.add(&total, u);
        }
        if total != *alg.unit() {
            return bad("idempotents do not sum to 1".into());
        }
        let mut factors = Vec::new();
        for (i, u) in us.into_iter().enumerate() {
            let tu = trace(alg, &u);
            let pi: Coords = (0..n).map(|j| trace(alg, &alg.mul(&u, &basis_vector(n, j))) / &tu).collect();
            for j in 0..n {
                for k in 0..n {
                    let prod = alg.mul(&basis_vector(n, j), &basis_vector(n, k));
                    let lhs: BigRational = prod.iter().zip(&pi).map(|(a, b)| a * b).sum();
                    if lhs != &pi[j] * &pi[k] {
                        return bad(format!("factor {i} is not local with residue field Q"));
                    }
                }
            }
            let gens: Vec<Coords> = (0..n)
                .map(|j| alg.sub(&alg.mul(&u, &basis_vector(n, j)), &alg.scale(&pi[j], &u)))
                .collect();
            let powers = ideal_powers(alg, &gens).ok_or_else(|| Error::InvalidIdempotents(format!("maximal ideal of factor {i} is not nilpotent")))?;
            let mut levels = vec![vec![u.clone()]];
            for k in 0..powers.len() {
                let mut span: Vec<Coords> = powers.get(k + 1).cloned().unwrap_or_default();
                let mut level = Vec::new();
                for v in &powers[k] {
                    span.push(v.clone());
                    if rank(&span, n) == span.len() {
                        level.push(v.clone());
                    } else {
                        span.pop();
                    }
                }
                levels.push(level);
            }
            factors.push(LocalFactor {
                idempotent: u,
                pi,
                generators: powers.first().cloned().unwrap_or_default(),
                nilpotency_index: powers.len() + 1,
                levels,
            });
        }
        let pi0 = basis_vector(n, 0);
        let Some(first) = factors.iter().position(|f| f.pi == pi0) else {
            return bad("no factor has the ε0-coordinate as its residue map".into());
        };
        let f0 = factors.remove(first);
        factors.insert(0, f0);
        let mut adapted = Vec::new();
        let mut slots = Vec::new();
        for f in &factors {
            let mut fs = Vec::new();
            for level in &f.levels {
                let start = adapted.len();
                adapted.extend(level.iter().cloned());
                fs.push((start..adapted.len()).collect());
            }
            slots.push(fs);
        }
        if adapted.len() != n {
            return bad("the maximal ideals do not account for the radical".into());
        }
        let matrix: Vec<Vec<BigRational>> = (0..n).map(|r| adapted.iter().map(|v| v[r].clone()).collect()).collect();
        let adapted_inverse = linalg::inverse(&matrix).ok_or_else(|| Error::InvalidIdempotents("factors are not independent".into()))?;
        Ok(LocalDecomposition { factors, adapted, adapted_inverse, slots })
    }

    /// Number of factors `t + 1`.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, i: usize) -> Result<&LocalFactor> {
        self.factors.get(i).ok_or(Error::IndexOutOfRange { index: i, what: "local factor" })
    }

    /// Largest nilpotency index over the factors.
    pub fn nilpotency_bound(&self) -> usize {
        self.factors.iter().map(|f| f.nilpotency_index).max().unwrap_or(1)
    }

    /// The filtration-adapted basis element at `slot`.
    pub fn adapted_vector(&self, slot: usize) -> &Coords {
        &self.adapted[slot]
    }

    /// Positions of the level-`k` basis elements of factor `i`.
    pub fn level_slots(&self, i: usize, k: usize) -> &[usize] {
        self.slots[i].get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Coordinates of `a ∈ B ⊗ R` on the adapted basis.
    pub fn adapted_coordinates<R: Ring>(&self, ring: &R, a: &[R::Elem]) -> Vec<R::Elem> {
        self.adapted_inverse
            .iter()
            .map(|row| {
                let mut acc = ring.zero();
                for (c, x) in row.iter().zip(a) {
                    if !c.is_zero() && !ring.is_zero(x) {
                        acc = ring.add(&acc, &if c.is_one() { x.clone() } else { ring.scale_rational(c, x) });
                    }
                }
                acc
            })
            .collect()
    }
}
