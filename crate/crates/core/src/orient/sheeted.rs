//! Polynomials over `n` disjoint sheets of variables `x_(i)^μ`, `ξ^(i)_μ`.
//!
//! This is the literal expansion of the orientation morphism: place the
//! vertex contents on separate sheets, apply the edge operators one after
//! another, then identify the sheets. It is exponential in the number of
//! edges and is kept as the reference route for the factorized evaluator.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multivec::{Multivector, XiSet};
use crate::ratpoly::{Monomial, Poly, Rational};

/// Odd variables are numbered sheet-major: `ξ^(i)_μ` is bit `i·r + μ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SheetedPoly {
    nvars: usize,
    sheets: usize,
    terms: HashMap<(Vec<u32>, u64), Rational>,
}

impl SheetedPoly {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn sheets(&self) -> usize {
        self.sheets
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total ξ-degree when all terms agree.
    pub fn odd_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|(_, m)| m.count_ones() as usize);
        let first = it.next().unwrap_or(0);
        it.all(|d| d == first).then_some(first)
    }

    fn add_term(&mut self, key: (Vec<u32>, u64), c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Product of the vertex contents, vertex `i` rewritten on sheet `i`.
    /// Sheets are ordered, so the odd factors arrive already sorted and no
    /// Koszul sign appears.
    pub fn lift(tuple: &[Multivector]) -> Result<SheetedPoly> {
        let r = tuple.first().map(Multivector::nvars).unwrap_or(1);
        let n = tuple.len();
        if let Some(m) = tuple.iter().find(|m| m.nvars() != r) {
            return Err(Error::DimensionMismatch { left: r, right: m.nvars() });
        }
        if n * r > 64 {
            return Err(Error::MalformedGraph(format!("{n} sheets of {r} variables exceed 64 odd slots")));
        }
        let mut cur = SheetedPoly { nvars: r, sheets: n, terms: HashMap::new() };
        cur.add_term((vec![0; n * r], 0), Rational::one());
        for (i, content) in tuple.iter().enumerate() {
            let mut next = SheetedPoly { nvars: r, sheets: n, terms: HashMap::new() };
            for ((even, odd), c) in &cur.terms {
                for (s, p) in content.components() {
                    for (m, a) in p.terms() {
                        let mut e = even.clone();
                        e[i * r..(i + 1) * r].copy_from_slice(m.exponents());
                        next.add_term((e, odd | (s.0 as u64) << (i * r)), c * a);
                    }
                }
            }
            cur = next;
        }
        Ok(cur)
    }

    /// `Δ_ij = Σ_μ ∂/∂ξ^(i)_μ ⊗ ∂/∂x^μ_(j) + ∂/∂ξ^(j)_μ ⊗ ∂/∂x^μ_(i)`, odd
    /// derivatives acting from the left.
    pub fn apply_edge(&self, i: usize, j: usize) -> Result<SheetedPoly> {
        if i == j {
            return Err(Error::MalformedGraph(format!("loop at vertex {}", i + 1)));
        }
        if i >= self.sheets || j >= self.sheets {
            return Err(Error::MalformedGraph(format!("edge ({},{}) outside 1..{}", i + 1, j + 1, self.sheets)));
        }
        let r = self.nvars;
        let mut out = SheetedPoly { nvars: r, sheets: self.sheets, terms: HashMap::new() };
        for ((even, odd), c) in &self.terms {
            for (s, t) in [(i, j), (j, i)] {
                for mu in 0..r {
                    let bit = s * r + mu;
                    if odd >> bit & 1 == 0 {
                        continue;
                    }
                    let xv = t * r + mu;
                    let e = even[xv];
                    if e == 0 {
                        continue;
                    }
                    let below = (odd & ((1u64 << bit) - 1)).count_ones();
                    let mut coeff = c * BigInt::from(e);
                    if below % 2 == 1 {
                        coeff = -coeff;
                    }
                    let mut ne = even.clone();
                    ne[xv] -= 1;
                    out.add_term((ne, odd & !(1u64 << bit)), coeff);
                }
            }
        }
        Ok(out)
    }

    /// Identifies all sheets: `x_(i)^μ → x^μ`, `ξ^(i)_μ → ξ_μ`, sorting the
    /// odd factors with their Koszul sign. Repeated `ξ_μ` give zero.
    pub fn merge(&self) -> Multivector {
        let r = self.nvars;
        let mut out = Multivector::zero(r);
        let mut acc: HashMap<(Monomial, XiSet), Rational> = HashMap::new();
        for ((even, odd), c) in &self.terms {
            let Some((sign, xi)) = merge_odd(*odd, r) else { continue };
            let mut e = vec![0u32; r];
            for (k, &x) in even.iter().enumerate() {
                e[k % r] += x;
            }
            let v = acc.entry((Monomial::from_exponents(e), xi)).or_insert_with(Rational::zero);
            if sign < 0 {
                *v -= c;
            } else {
                *v += c;
            }
        }
        for ((m, xi), c) in acc {
            out.add_component(xi, Poly::monomial(r, m, c));
        }
        out
    }
}

/// Sign and support of the odd monomial after sheet identification.
pub(crate) fn merge_odd(odd: u64, r: usize) -> Option<(i32, XiSet)> {
    let mut seen = 0u32;
    let mut inversions = 0u32;
    let mut rest = odd;
    while rest != 0 {
        let g = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let mu = g % r;
        if seen >> mu & 1 == 1 {
            return None;
        }
        inversions += (seen >> mu >> 1).count_ones();
        seen |= 1 << mu;
    }
    Some((if inversions.is_multiple_of(2) { 1 } else { -1 }, XiSet(seen)))
}
