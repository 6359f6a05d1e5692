//! Exact solver for the coboundary equation `Q = [[Y,P]]`.
//!
//! The unknown `Y = Σ_k Y^k ξ_k` has homogeneous polynomial components of
//! a fixed degree `D`. Each ansatz monomial `m ξ_k` contributes the column
//! `[[m ξ_k, P]]`; rows are labelled by a bivector component and a monomial.

mod bareiss;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::multivec::{self, Multivector, XiSet};
use crate::ratpoly::{HomDegree, Monomial, Poly, Rational};

/// Degree-`D` polynomial ansatz for a vector field on `ℝ^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnsatzSpec {
    nvars: usize,
    degree: u32,
}

impl AnsatzSpec {
    pub fn new(nvars: usize, degree: u32) -> Result<Self> {
        if nvars == 0 || nvars > 32 {
            return Err(Error::InvalidDimension);
        }
        Ok(AnsatzSpec { nvars, degree })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `r · C(D+r−1, r−1)`.
    pub fn unknowns(&self) -> usize {
        self.nvars * binomial(self.degree as usize + self.nvars - 1, self.nvars - 1)
    }

    /// Unknowns as `(k, m)` for the term `m ξ_k`, largest monomial first.
    pub fn basis(&self) -> Vec<(usize, Monomial)> {
        let mut out = Vec::with_capacity(self.unknowns());
        for m in Monomial::all_of_degree(self.nvars, self.degree).into_iter().rev() {
            for k in 0..self.nvars {
                out.push((k, m.clone()));
            }
        }
        out
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The linear system `[[Y,P]] = Q` in the coefficients of `Y`.
#[derive(Clone, Debug)]
pub struct AnsatzSystem {
    spec: AnsatzSpec,
    rows: Vec<(XiSet, Monomial)>,
    columns: Vec<(usize, Monomial)>,
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

impl AnsatzSystem {
    pub fn spec(&self) -> AnsatzSpec {
        self.spec
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn rows(&self) -> &[(XiSet, Monomial)] {
        &self.rows
    }

    pub fn columns(&self) -> &[(usize, Monomial)] {
        &self.columns
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.matrix[row][col]
    }

    pub fn rhs(&self, row: usize) -> &Rational {
        &self.rhs[row]
    }

    fn field(&self, values: &[Rational]) -> Multivector {
        let r = self.spec.nvars;
        let mut comps = vec![Poly::zero(r); r];
        for ((k, m), c) in self.columns.iter().zip(values) {
            comps[*k].add_term(m.clone(), c.clone());
        }
        Multivector::vector(comps)
    }
}

/// An equation reduced to `0 = residual` with `residual ≠ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub component: XiSet,
    pub monomial: Monomial,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Status {
    Solved,
    Infeasible(Witness),
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub status: Status,
    /// Free variables set to zero; the zero field when infeasible.
    pub particular: Multivector,
    pub kernel_basis: Vec<Multivector>,
    columns: Vec<(usize, Monomial)>,
    free: Vec<usize>,
}

impl Solution {
    pub fn is_solved(&self) -> bool {
        self.status == Status::Solved
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// Whether `y = particular + Σ c_i k_i` for some rationals `c_i`.
    ///
    /// The kernel vector of free column `f` is 1 at `f` and 0 at the other
    /// free columns, so the `c_i` are read off `y` directly.
    pub fn contains(&self, y: &Multivector) -> bool {
        if !self.is_solved() {
            return false;
        }
        let coord = |(k, m): &(usize, Monomial)| y.component(XiSet::from_indices(&[*k])).coeff(m);
        let mut acc = self.particular.clone();
        for (f, kv) in self.free.iter().zip(&self.kernel_basis) {
            let c = coord(&self.columns[*f]);
            if !c.is_zero() {
                acc += &kv.scale(&c);
            }
        }
        &acc == y
    }
}

fn hom_degree(m: &Multivector) -> Result<Option<u32>> {
    match m.coefficient_degree() {
        Some(HomDegree::Exactly(d)) => Ok(Some(d)),
        Some(HomDegree::Any) => Ok(None),
        None => Err(Error::NotHomogeneousPoly),
    }
}

fn require_degree(m: &Multivector, k: usize, what: &str) -> Result<()> {
    if m.is_zero() || m.degree() == Some(k) {
        Ok(())
    } else {
        Err(Error::Grading { expected: format!("{what} of ξ-degree {k}"), found: format!("{:?}", m.degree()) })
    }
}

/// `deg Q − deg P + 1`, the component degree a solution must have.
pub fn default_degree(q: &Multivector, p: &Multivector) -> Result<u32> {
    let dq = hom_degree(q)?.ok_or(Error::NotHomogeneousPoly)?;
    let dp = hom_degree(p)?.ok_or(Error::NotHomogeneousPoly)?;
    let d = dq as i64 - dp as i64 + 1;
    u32::try_from(d).map_err(|_| Error::DegreeMismatch(format!("deg Q = {dq} is below deg P − 1 = {}", dp as i64 - 1)))
}

pub fn assemble(q: &Multivector, p: &Multivector, spec: AnsatzSpec) -> Result<AnsatzSystem> {
    assemble_with(Exec::default(), q, p, spec)
}

pub fn assemble_with(exec: Exec, q: &Multivector, p: &Multivector, spec: AnsatzSpec) -> Result<AnsatzSystem> {
    let r = spec.nvars;
    for m in [q, p] {
        if m.nvars() != r {
            return Err(Error::DimensionMismatch { left: r, right: m.nvars() });
        }
    }
    require_degree(p, 2, "P")?;
    require_degree(q, 2, "Q")?;
    let dp = hom_degree(p)?.ok_or(Error::NotHomogeneousPoly)?;
    let target = spec.degree as i64 + dp as i64 - 1;
    if let Some(dq) = hom_degree(q)? {
        if dq as i64 != target {
            return Err(Error::DegreeMismatch(format!(
                "[[Y,P]] has coefficient degree {target} for deg Y = {}, deg P = {dp}, but deg Q = {dq}",
                spec.degree
            )));
        }
    }

    let mut rows = Vec::new();
    if target >= 0 {
        let monos = Monomial::all_of_degree(r, target as u32);
        for i in 0..r {
            for j in i + 1..r {
                for m in monos.iter().rev() {
                    rows.push((XiSet::from_indices(&[i, j]), m.clone()));
                }
            }
        }
    }
    let index: std::collections::HashMap<(XiSet, Monomial), usize> =
        rows.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();

    let columns = spec.basis();
    let images = exec::map_collect(exec, &columns, |(k, m)| {
        let mut y = Multivector::zero(r);
        y.add_component(XiSet::from_indices(&[*k]), Poly::monomial(r, m.clone(), Rational::one()));
        multivec::schouten(&y, p)
    });

    let mut matrix = vec![vec![Rational::zero(); columns.len()]; rows.len()];
    for (col, img) in images.into_iter().enumerate() {
        for (s, poly) in img?.components() {
            for (m, c) in poly.terms() {
                let row = index[&(*s, m.clone())];
                matrix[row][col] = c.clone();
            }
        }
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for (s, poly) in q.components() {
        for (m, c) in poly.terms() {
            rhs[index[&(*s, m.clone())]] = c.clone();
        }
    }
    Ok(AnsatzSystem { spec, rows, columns, matrix, rhs })
}

fn integer_rows(sys: &AnsatzSystem) -> Vec<Vec<BigInt>> {
    sys.matrix
        .iter()
        .zip(&sys.rhs)
        .map(|(row, b)| {
            let l = row
                .iter()
                .chain(std::iter::once(b))
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            row.iter()
                .chain(std::iter::once(b))
                .map(|c| c.numer() * (&l / c.denom()))
                .collect()
        })
        .collect()
}

/// Back-substitution; `rhs = false` solves the homogeneous system.
fn back_substitute(e: &bareiss::Echelon, n: usize, fixed: &[(usize, Rational)], rhs: bool) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); n];
    for (f, v) in fixed {
        x[*f] = v.clone();
    }
    for (k, &pc) in e.pivots.iter().enumerate().rev() {
        let row = &e.rows[k];
        let mut acc = if rhs { Rational::from(row[n].clone()) } else { Rational::zero() };
        for j in pc + 1..n {
            if !row[j].is_zero() && !x[j].is_zero() {
                acc -= &x[j] * Rational::from(row[j].clone());
            }
        }
        x[pc] = acc / Rational::from(row[pc].clone());
    }
    x
}

pub fn solve(sys: &AnsatzSystem) -> Solution {
    let n = sys.columns.len();
    let e = bareiss::eliminate(integer_rows(sys), n);
    let rank = e.pivots.len();
    let mut is_pivot = vec![false; n];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();

    let kernel_basis = free
        .iter()
        .map(|&f| sys.field(&back_substitute(&e, n, &[(f, Rational::one())], false)))
        .collect();

    let witness = (rank..e.rows.len()).find(|&k| !e.rows[k][n].is_zero()).map(|k| {
        let (component, monomial) = sys.rows[e.origin[k]].clone();
        let v = &e.rows[k][n];
        Witness { component, monomial, residual: Rational::from(v.clone()) }
    });

    let (status, particular) = match witness {
        Some(w) => (Status::Infeasible(w), Multivector::zero(sys.spec.nvars)),
        None => (Status::Solved, sys.field(&back_substitute(&e, n, &[], true))),
    };
    Solution { status, particular, kernel_basis, columns: sys.columns.clone(), free }
}

/// Solves `Q = [[Y,P]]` at the given component degree, or at
/// [`default_degree`]. A `Q` with `[[P,Q]] ≠ 0` is rejected.
pub fn trivialize(q: &Multivector, p: &Multivector, degree: Option<u32>) -> Result<Solution> {
    trivialize_with(Exec::default(), q, p, degree)
}

pub fn trivialize_with(exec: Exec, q: &Multivector, p: &Multivector, degree: Option<u32>) -> Result<Solution> {
    require_degree(p, 2, "P")?;
    require_degree(q, 2, "Q")?;
    if !multivec::schouten(p, q)?.is_zero() {
        return Err(Error::NotCocycle);
    }
    let d = match degree {
        Some(d) => d,
        None => default_degree(q, p)?,
    };
    let spec = AnsatzSpec::new(p.nvars(), d)?;
    Ok(solve(&assemble_with(exec, q, p, spec)?))
}

/// A linear vector field `V` with `[[V,P]] = P`, if one exists.
///
/// For `P` with homogeneous coefficients of degree `d`, the degree-`k` part
/// of a polynomial `V` contributes in degree `k+d−1` only, so a polynomial
/// solution exists iff a linear one does.
pub fn linear_homogenizing_field(p: &Multivector) -> Result<Option<Multivector>> {
    if p.is_zero() {
        return Ok(Some(Multivector::zero(p.nvars())));
    }
    let spec = AnsatzSpec::new(p.nvars(), 1)?;
    let sol = solve(&assemble(p, p, spec)?);
    Ok(sol.is_solved().then_some(sol.particular))
}
