//! Built-in objects: the two gl(2) R-matrix brackets on ℝ⁴ with their flows
//! and trivializing fields, the Euler field, the Kirillov–Kostant bracket,
//! the tetrahedron and two Nambu brackets on ℝ³.
//!
//! Coordinates `x, y, z, v` on ℝ⁴ are `x1..x4`. Each object is stored in its
//! canonical text form, one per file under `catalog/`.

use std::collections::BTreeMap;
use std::fmt;

use anyhow::{anyhow, bail};
use graphflow::cohomsolve;
use graphflow::gracomplex::GraphSum;
use graphflow::multivec::{self, Multivector};
use graphflow::ratpoly::Poly;
use graphflow::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// A bivector that must satisfy the Jacobi identity.
    Poisson,
    Bivector,
    Field,
    Graph,
    /// A Casimir `a` on ℝ³; the entry holds the Nambu bracket with `ρ = 1`.
    NambuCasimir,
}

#[derive(Clone, Debug)]
pub struct Source {
    pub name: String,
    pub kind: Kind,
    pub text: String,
    pub note: String,
}

fn src(name: &str, kind: Kind, text: &str, note: &str) -> Source {
    Source { name: name.into(), kind, text: text.into(), note: note.into() }
}

pub fn builtin_sources() -> Vec<Source> {
    use Kind::*;
    vec![
        src("p1", Poisson, include_str!("../catalog/p1.txt"), "gl(2) R-matrix bracket, cubic coefficients"),
        src("q1", Bivector, include_str!("../catalog/q1.txt"), "tetrahedral flow of p1, as printed"),
        src("y1", Field, include_str!("../catalog/y1.txt"), "trivializing field for q1, as printed"),
        src("p2", Poisson, include_str!("../catalog/p2.txt"), "second gl(2) R-matrix bracket, (x,y;z,v) -> (x,y;-z,v)"),
        src("q2", Bivector, include_str!("../catalog/q2.txt"), "tetrahedral flow of p2, as printed"),
        src("y2", Field, include_str!("../catalog/y2.txt"), "trivializing field for q2, as printed"),
        src("euler", Field, include_str!("../catalog/euler.txt"), "Euler field on R^4"),
        src("kk_gl2", Poisson, include_str!("../catalog/kk_gl2.txt"), "Kirillov-Kostant bracket on gl(2)*, basis e11,e12,e21,e22"),
        src("dot", Graph, "graph{n=1; edges=; c=1}", "single vertex"),
        src("stick", Graph, "graph{n=2; edges=(1,2); c=1}", "single edge"),
        src("tetrahedron", Graph, include_str!("../catalog/tetrahedron.txt"), "K4 with lexicographic edge order"),
        src("nambu_quartic", NambuCasimir, include_str!("../catalog/nambu_quartic_casimir.txt"), "Nambu bracket, a = x^4+y^4+z^4, rho = 1"),
        src("nambu_cubic", NambuCasimir, include_str!("../catalog/nambu_cubic_casimir.txt"), "Nambu bracket, a = (x^3+y^3+z^3)/3, rho = 1"),
    ]
}

#[derive(Clone, Debug)]
pub enum Payload {
    Multivector(Multivector),
    Graph(GraphSum),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub dimension: usize,
    pub payload: Payload,
    pub note: String,
    /// For Poisson entries: a linear `V` with `[[V,P]] = P`, if any.
    pub homogenizing_field: Option<Option<Multivector>>,
    pub text: String,
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Multivector(m) => write!(f, "{m}"),
            Payload::Graph(g) => write!(f, "{g}"),
        }
    }
}

/// `P^{ij} = ε^{ijk} ρ ∂_k a` on ℝ³.
pub fn nambu_bivector(a: &Poly, rho: &Poly) -> Result<Multivector> {
    if a.nvars() != 3 {
        return Err(Error::DimensionMismatch { left: 3, right: a.nvars() });
    }
    if rho.nvars() != 3 {
        return Err(Error::DimensionMismatch { left: 3, right: rho.nvars() });
    }
    let d = |k: usize| -> Result<Poly> { Ok(rho * &a.partial(k)?) };
    let p = Multivector::bivector(3, vec![(0, 1, d(2)?), (0, 2, -&d(1)?), (1, 2, d(0)?)]);
    let jac = multivec::jacobiator(&p)?;
    if !jac.is_zero() {
        return Err(Error::NotPoisson { terms: jac.components().map(|(_, c)| c.len()).sum() });
    }
    Ok(p)
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> anyhow::Result<Catalog> {
        Catalog::from_sources(&builtin_sources())
    }

    /// Parses and checks every source: the stored text must be canonical
    /// and every Poisson entry must have zero Jacobiator.
    pub fn from_sources(sources: &[Source]) -> anyhow::Result<Catalog> {
        let mut entries = BTreeMap::new();
        for s in sources {
            let text = s.text.trim_end_matches('\n');
            let (payload, rendered) = match s.kind {
                Kind::Graph => {
                    let g = GraphSum::parse(text)?;
                    let r = g.to_string();
                    (Payload::Graph(g), r)
                }
                Kind::NambuCasimir => {
                    let a = Poly::parse(text, Some(3))?;
                    let r = a.to_string();
                    (Payload::Multivector(nambu_bivector(&a, &Poly::one(3))?), r)
                }
                _ => {
                    let m = Multivector::parse(text, None)?;
                    let r = m.to_string();
                    (Payload::Multivector(m), r)
                }
            };
            if rendered != text {
                bail!("catalog entry {}: text is not in canonical form", s.name);
            }
            let (dimension, homogenizing_field) = match &payload {
                Payload::Graph(_) => (0, None),
                Payload::Multivector(m) => {
                    let expected = if s.kind == Kind::Field { 1 } else { 2 };
                    if m.degree() != Some(expected) {
                        bail!("catalog entry {}: expected a {expected}-vector", s.name);
                    }
                    let h = if matches!(s.kind, Kind::Poisson | Kind::NambuCasimir) {
                        if !multivec::is_poisson(m)? {
                            bail!("catalog entry {}: Jacobi identity fails", s.name);
                        }
                        Some(cohomsolve::linear_homogenizing_field(m)?)
                    } else {
                        None
                    };
                    (m.nvars(), h)
                }
            };
            let entry = CatalogEntry {
                name: s.name.clone(),
                kind: s.kind,
                dimension,
                payload,
                note: s.note.clone(),
                homogenizing_field,
                text: text.to_string(),
            };
            entries.insert(s.name.to_lowercase(), entry);
        }
        Ok(Catalog { entries })
    }

    pub fn get(&self, name: &str) -> Option<&CatalogEntry> {
        self.entries.get(&name.to_lowercase())
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    pub fn multivector(&self, name: &str) -> anyhow::Result<&Multivector> {
        match self.get(name).map(|e| &e.payload) {
            Some(Payload::Multivector(m)) => Ok(m),
            _ => Err(anyhow!("no multivector named '{name}' in the catalog")),
        }
    }

    pub fn graph(&self, name: &str) -> anyhow::Result<&GraphSum> {
        match self.get(name).map(|e| &e.payload) {
            Some(Payload::Graph(g)) => Ok(g),
            _ => Err(anyhow!("no graph named '{name}' in the catalog")),
        }
    }
}
