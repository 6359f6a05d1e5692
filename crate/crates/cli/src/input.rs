//! Command-line arguments name a catalog entry, a file, or carry inline text.

use std::path::Path;

use anyhow::{bail, Context};
use graphflow::gracomplex::GraphSum;
use graphflow::multivec::Multivector;
use graphflow::ratpoly::Poly;

use crate::catalog::Catalog;

fn read_text(arg: &str) -> anyhow::Result<String> {
    let path = Path::new(arg);
    if path.is_file() {
        let s = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        Ok(s.trim_end().to_string())
    } else {
        Ok(arg.to_string())
    }
}

enum Raw {
    Stored(Multivector),
    Text(String),
}

/// Resolves several multivector arguments to a common dimension: the largest
/// variable index used by any text argument or the dimension of any catalog
/// entry.
pub fn multivectors(cat: &Catalog, args: &[&str]) -> anyhow::Result<Vec<Multivector>> {
    let mut raws = Vec::new();
    let mut n = 1;
    for arg in args {
        match cat.multivector(arg) {
            Ok(m) => {
                n = n.max(m.nvars());
                raws.push(Raw::Stored(m.clone()));
            }
            Err(_) => {
                let text = read_text(arg)?;
                let m = Multivector::parse(&text, None).with_context(|| format!("parsing '{text}'"))?;
                n = n.max(m.nvars());
                raws.push(Raw::Text(text));
            }
        }
    }
    raws.into_iter()
        .zip(args)
        .map(|(raw, arg)| match raw {
            Raw::Stored(m) if m.nvars() == n => Ok(m),
            Raw::Stored(m) => bail!("catalog entry {arg} lives in dimension {}, other inputs need {n}", m.nvars()),
            Raw::Text(t) => Multivector::parse(&t, Some(n)).with_context(|| format!("parsing '{t}'")),
        })
        .collect()
}

pub fn multivector(cat: &Catalog, arg: &str) -> anyhow::Result<Multivector> {
    Ok(multivectors(cat, &[arg])?.remove(0))
}

pub fn graph(cat: &Catalog, arg: &str) -> anyhow::Result<GraphSum> {
    if let Ok(g) = cat.graph(arg) {
        return Ok(g.clone());
    }
    let text = read_text(arg)?;
    GraphSum::parse(&text).with_context(|| format!("parsing graph '{text}'"))
}

pub fn poly(arg: &str, nvars: usize) -> anyhow::Result<Poly> {
    let text = read_text(arg)?;
    Poly::parse(&text, Some(nvars)).with_context(|| format!("parsing polynomial '{text}'"))
}
