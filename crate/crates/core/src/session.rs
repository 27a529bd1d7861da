//! Session files and the compact text forms used on the command line.
//!
//! ```toml
//! field = "Q(t1)"            # or "Q", "Q(t1,t2):2" (derivation count after ':')
//! algebra = "dual"           # "truncated:3", "split:2", "local:2,point,jets:2:1"
//! structure = ["t1 + e"]     # e(t_k); omitted for the trivial structure
//!
//! [sets]
//! L = ["d1 x1 - 1"]
//!
//! [systems]
//! S = ["x1*d1 x1 - t1 - e"]
//!
//! [points]
//! a = ["x1 = t1"]
//!
//! [table]                    # instead of `algebra`
//! products = [[["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]
//! labels = ["1", "e"]
//! idempotents = [["1", "0"]]
//! ```

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Deserialize;

use crate::coeffield::{Field, FieldElem};
use crate::diffpoly::{DiffPoly, Point, Polys};
use crate::dstructure::DStructure;
use crate::error::{Error, Result};
use crate::finitealg::{Coords, DAlgebra, DElement, FiniteAlgebra, Piece};
use crate::hensel::{CoordPoly, SolverStrategy};
use crate::parse::{parse_field_elem, parse_in, parse_poly, parse_var};
use crate::reduction::{check_autoreduced, AutoreducedSet};
use crate::ring::Scalars;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionFile {
    pub field: Option<String>,
    pub algebra: Option<String>,
    pub table: Option<TableSpec>,
    pub structure: Option<Vec<String>>,
    #[serde(default)]
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub systems: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub points: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableSpec {
    pub products: Vec<Vec<Vec<String>>>,
    pub labels: Option<Vec<String>>,
    pub idempotents: Option<Vec<Vec<String>>>,
}

impl SessionFile {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            Error::Syntax { line, column, expected: e.message().to_string() }
        })
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// A resolved session: field, algebra, structure and named blocks.
#[derive(Clone, Debug)]
pub struct Session {
    pub structure: DStructure,
    pub sets: BTreeMap<String, Vec<String>>,
    pub systems: BTreeMap<String, Vec<String>>,
    pub points: BTreeMap<String, Vec<String>>,
}

impl Session {
    pub fn from_file(file: &SessionFile) -> Result<Self> {
        let field = parse_field(file.field.as_deref().unwrap_or("Q(t1)"))?;
        let algebra = match (&file.algebra, &file.table) {
            (Some(_), Some(_)) => return Err(Error::Invalid("give either `algebra` or `table`, not both".into())),
            (_, Some(t)) => table_algebra(t)?,
            (a, None) => parse_algebra(a.as_deref().unwrap_or("dual"))?,
        };
        let structure = build_structure(algebra, field, file.structure.as_deref())?;
        Ok(Session { structure, sets: file.sets.clone(), systems: file.systems.clone(), points: file.points.clone() })
    }

    pub fn field(&self) -> &Field {
        self.structure.field()
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.structure.algebra()
    }

    /// A named set, or `;`-separated polynomials given inline.
    pub fn polys(&self, name_or_inline: &str) -> Result<Vec<DiffPoly>> {
        match self.sets.get(name_or_inline) {
            Some(ps) => ps.iter().map(|p| parse_poly(p)).collect(),
            None => split_list(name_or_inline).map(parse_poly).collect(),
        }
    }

    pub fn set(&self, name_or_inline: &str) -> Result<AutoreducedSet> {
        check_autoreduced(self.polys(name_or_inline)?)
    }

    /// A named system over `B ⊗ L`, or inline `;`-separated polynomials.
    pub fn system(&self, name_or_inline: &str) -> Result<Vec<CoordPoly>> {
        let d = DAlgebra::new(self.algebra(), Polys);
        let raw: Vec<&str> = match self.systems.get(name_or_inline) {
            Some(ps) => ps.iter().map(String::as_str).collect(),
            None => split_list(name_or_inline).collect(),
        };
        raw.into_iter().map(|p| parse_in(&d, p)).collect()
    }

    pub fn point(&self, name_or_inline: &str) -> Result<Point> {
        match self.points.get(name_or_inline) {
            Some(vs) => parse_point_items(vs.iter().map(String::as_str)),
            None => parse_point(name_or_inline),
        }
    }

    pub fn element(&self, text: &str) -> Result<DElement<FieldElem>> {
        parse_in(&DAlgebra::new(self.algebra(), Scalars), text)
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(';').map(str::trim).filter(|s| !s.is_empty())
}

pub fn build_structure(algebra: FiniteAlgebra, field: Field, images: Option<&[String]>) -> Result<DStructure> {
    match images {
        None => DStructure::trivial(algebra, field),
        Some(imgs) => {
            let d = DAlgebra::new(&algebra, Scalars);
            let images = imgs.iter().map(|s| parse_in(&d, s)).collect::<Result<Vec<_>>>()?;
            DStructure::new(algebra, field, images)
        }
    }
}

/// `Q`, `Q(t1,...,ts)`, optionally followed by `:m` for the number of
/// derivations (default `max(s, 1)`).
pub fn parse_field(text: &str) -> Result<Field> {
    let bad = || Error::Invalid(format!("field `{text}`: expected Q or Q(t1,...,ts), optionally with :m"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (body, m) = match t.split_once(':') {
        Some((b, m)) => (b, Some(m.parse::<usize>().map_err(|_| bad())?)),
        None => (t.as_str(), None),
    };
    if body == "Q" {
        return Ok(Field::rationals(m.unwrap_or(1)));
    }
    let inner = body.strip_prefix("Q(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let mut s = 0;
    for (k, g) in inner.split(',').enumerate() {
        if g != format!("t{}", k + 1) {
            return Err(bad());
        }
        s += 1;
    }
    Field::rational_functions(s, m.unwrap_or(s))
}

/// `dual`, `truncated:d`, `split:n`, or a comma-separated product of
/// `local:d`, `point` and `jets:vars:order`.
pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let bad = |p: &str| Error::Invalid(format!("algebra piece `{p}`"));
    let num = |s: &str, p: &str| s.parse::<usize>().map_err(|_| bad(p));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        ["dual"] => return Ok(FiniteAlgebra::dual_numbers()),
        ["truncated", d] => return FiniteAlgebra::truncated(num(d, &t)?),
        ["split", n] => return FiniteAlgebra::split(num(n, &t)?),
        _ => {}
    }
    let mut pieces = Vec::new();
    for p in t.split(',') {
        let f: Vec<&str> = p.split(':').collect();
        pieces.push(match f.as_slice() {
            ["local", d] => Piece::Local(num(d, p)?),
            ["point"] => Piece::Point,
            ["jets", v, o] => Piece::Jets { vars: num(v, p)?, order: num(o, p)? },
            _ => return Err(bad(p)),
        });
    }
    FiniteAlgebra::product(&pieces)
}

fn rational(text: &str) -> Result<BigRational> {
    parse_field_elem(text)?
        .as_rational()
        .ok_or_else(|| Error::Invalid(format!("`{text}` is not a rational number")))
}

fn coords(v: &[String]) -> Result<Coords> {
    v.iter().map(|s| rational(s)).collect()
}

fn table_algebra(t: &TableSpec) -> Result<FiniteAlgebra> {
    let table = t
        .products
        .iter()
        .map(|row| row.iter().map(|c| coords(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let idem = t.idempotents.as_ref().map(|us| us.iter().map(|u| coords(u)).collect::<Result<Vec<_>>>()).transpose()?;
    FiniteAlgebra::from_table(table, t.labels.clone(), idem)
}

/// `exact:deg=D` or `jet:point=p1,...,ps,order=N`.
pub fn parse_solver(text: &str) -> Result<SolverStrategy> {
    let bad = || Error::Invalid(format!("solver `{text}`: expected exact:deg=D or jet:point=p,order=N"));
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let (kind, rest) = t.split_once(':').unwrap_or((t.as_str(), ""));
    match kind {
        "exact" => {
            if rest.is_empty() {
                return Ok(SolverStrategy::default());
            }
            let d = rest.strip_prefix("deg=").ok_or_else(bad)?;
            Ok(SolverStrategy::ExactAnsatz { max_degree: d.parse().map_err(|_| bad())? })
        }
        "jet" => {
            let rest = rest.strip_prefix("point=").ok_or_else(bad)?;
            let (pt, order) = rest.rsplit_once(",order=").ok_or_else(bad)?;
            let point = pt.split(',').filter(|s| !s.is_empty()).map(rational).collect::<Result<Vec<_>>>()?;
            Ok(SolverStrategy::Jet { point, order: order.parse().map_err(|_| bad())? })
        }
        _ => Err(bad()),
    }
}

/// `;`-separated items, each `var = value` or a bare value for the next `x_k`.
pub fn parse_point(text: &str) -> Result<Point> {
    parse_point_items(split_list(text))
}

fn parse_point_items<'a>(items: impl Iterator<Item = &'a str>) -> Result<Point> {
    let mut p = Point::new();
    for (k, item) in items.enumerate() {
        match item.split_once('=') {
            Some((v, val)) => {
                let var = parse_var(v.trim())
                    .ok_or_else(|| Error::Invalid(format!("`{}` is not a variable", v.trim())))?;
                p.set(var, parse_field_elem(val)?);
            }
            None => p.set(crate::diffpoly::Var::x(k as u32 + 1), parse_field_elem(item)?),
        }
    }
    Ok(p)
}
