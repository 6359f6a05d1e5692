//! The orientation morphism: evaluation of graphs on tuples of multivectors.
//!
//! Vertex `i` of a graph receives the `i`-th multivector of the tuple, every
//! edge `i–j` becomes the operator
//! `Δ_ij = Σ_μ ∂/∂ξ^(i)_μ ⊗ ∂/∂x^μ_(j) + ∂/∂ξ^(j)_μ ⊗ ∂/∂x^μ_(i)`,
//! the operators act in edge order (first edge first) and the result is
//! restricted to the diagonal. [`sheeted::SheetedPoly`] does exactly that.
//!
//! [`evaluate`] computes the same value without expanding the product. For
//! a fixed choice of one ξ-component per vertex, the odd part of the state
//! is a single bitmask and each edge operator can only remove a ξ that is
//! still present, so the sum over `μ` collapses to the ξ's of one endpoint.
//! The walk over edges records, per vertex, how often each `x^μ` has been
//! differentiated; products of the differentiated coefficients are formed
//! once per distinct derivative pattern at the end.

pub mod sheeted;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::gracomplex::{Graph, GraphSum};
use crate::multivec::{self, HomogeneityReport, Multivector, XiSet};
use crate::ratpoly::{HomDegree, Poly, Rational};

pub use sheeted::SheetedPoly;

/// Ordered contents of the vertices of a graph.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexTuple {
    slots: Vec<Multivector>,
}

impl VertexTuple {
    pub fn new(slots: Vec<Multivector>) -> Result<Self> {
        if let Some(first) = slots.first() {
            let r = first.nvars();
            if let Some(m) = slots.iter().find(|m| m.nvars() != r) {
                return Err(Error::DimensionMismatch { left: r, right: m.nvars() });
            }
        }
        if slots.iter().any(|m| m.degree().is_none()) {
            return Err(Error::Grading {
                expected: "grading-homogeneous vertex contents".into(),
                found: "a mixed-degree multivector".into(),
            });
        }
        Ok(VertexTuple { slots })
    }

    pub fn repeat(m: &Multivector, n: usize) -> Result<Self> {
        VertexTuple::new(vec![m.clone(); n])
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[Multivector] {
        &self.slots
    }

    pub fn nvars(&self) -> usize {
        self.slots.first().map(Multivector::nvars).unwrap_or(1)
    }

    /// `Σ_i |t_i|`.
    pub fn odd_degree(&self) -> usize {
        self.slots.iter().map(|m| m.degree().unwrap_or(0)).sum()
    }
}

/// One unit of parallel work: a graph, its coefficient, a tuple and a
/// choice of ξ-component for every vertex.
struct Job<'a> {
    graph: &'a Graph,
    coeff: &'a Rational,
    choice: Vec<(XiSet, &'a Poly)>,
}

fn jobs_for<'a>(graph: &'a Graph, coeff: &'a Rational, tuple: &'a [Multivector], out: &mut Vec<Job<'a>>) {
    let comps: Vec<Vec<(XiSet, &Poly)>> = tuple
        .iter()
        .map(|m| m.components().map(|(s, p)| (*s, p)).collect())
        .collect();
    if comps.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; comps.len()];
    loop {
        out.push(Job {
            graph,
            coeff,
            choice: idx.iter().zip(&comps).map(|(&i, c)| c[i]).collect(),
        });
        let mut k = 0;
        loop {
            if k == idx.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < comps[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Per-vertex derivative bounds used for pruning.
struct Bounds {
    max_exp: Vec<u32>,
    degree: Vec<u32>,
}

struct Walk<'a> {
    r: usize,
    edges: Vec<(usize, usize)>,
    bounds: &'a Bounds,
    alpha: Vec<u32>,
    alpha_deg: Vec<u32>,
    acc: HashMap<(Vec<u32>, XiSet), i64>,
}

impl Walk<'_> {
    fn step(&mut self, k: usize, mask: u64, sign: i64) {
        if k == self.edges.len() {
            if let Some((s, xi)) = sheeted::merge_odd(mask, self.r) {
                *self.acc.entry((self.alpha.clone(), xi)).or_insert(0) += sign * s as i64;
            }
            return;
        }
        let (a, b) = self.edges[k];
        let r = self.r;
        for (s, t) in [(a, b), (b, a)] {
            if self.alpha_deg[t] >= self.bounds.degree[t] {
                continue;
            }
            let mut sheet = (mask >> (s * r)) & ((1u64 << r) - 1);
            while sheet != 0 {
                let mu = sheet.trailing_zeros() as usize;
                sheet &= sheet - 1;
                let xv = t * r + mu;
                if self.alpha[xv] >= self.bounds.max_exp[xv] {
                    continue;
                }
                let bit = s * r + mu;
                let below = (mask & ((1u64 << bit) - 1)).count_ones();
                let sg = if below % 2 == 1 { -sign } else { sign };
                self.alpha[xv] += 1;
                self.alpha_deg[t] += 1;
                self.step(k + 1, mask & !(1u64 << bit), sg);
                self.alpha[xv] -= 1;
                self.alpha_deg[t] -= 1;
            }
        }
    }
}

fn run_job(job: &Job, r: usize) -> Multivector {
    let n = job.choice.len();
    let mut bounds = Bounds { max_exp: vec![0; n * r], degree: vec![0; n] };
    let mut mask = 0u64;
    for (v, (s, p)) in job.choice.iter().enumerate() {
        mask |= (s.0 as u64) << (v * r);
        bounds.degree[v] = p.degree().unwrap_or(0);
        for (m, _) in p.terms() {
            for (mu, &e) in m.exponents().iter().enumerate() {
                let slot = &mut bounds.max_exp[v * r + mu];
                *slot = (*slot).max(e);
            }
        }
    }
    let mut walk = Walk {
        r,
        edges: job.graph.edges().collect(),
        bounds: &bounds,
        alpha: vec![0; n * r],
        alpha_deg: vec![0; n],
        acc: HashMap::new(),
    };
    walk.step(0, mask, 1);

    let mut out = Multivector::zero(r);
    let mut cache: HashMap<(usize, Vec<u32>), Poly> = HashMap::new();
    for ((alpha, xi), w) in walk.acc {
        if w == 0 {
            continue;
        }
        let mut prod = Poly::constant(r, job.coeff * BigInt::from(w));
        for (v, (_, p)) in job.choice.iter().enumerate() {
            let a = &alpha[v * r..(v + 1) * r];
            let d = cache
                .entry((v, a.to_vec()))
                .or_insert_with(|| p.diff_multi(a));
            if d.is_zero() {
                prod = Poly::zero(r);
                break;
            }
            prod = &prod * d;
        }
        out.add_component(xi, prod);
    }
    out
}

fn check_arity(g: &Graph, t: &VertexTuple) -> Result<()> {
    if g.vertices() != t.len() {
        return Err(Error::Arity { graph: g.vertices(), tuple: t.len() });
    }
    if g.vertices() * t.nvars() > 64 {
        return Err(Error::MalformedGraph(format!(
            "{} vertices in dimension {} exceed 64 odd slots",
            g.vertices(),
            t.nvars()
        )));
    }
    Ok(())
}

/// Evaluates `Σ_a c_a Or(g_a)(t_a)` over (graph, coefficient, tuple) triples.
fn evaluate_terms(exec: Exec, r: usize, terms: &[(&Graph, &Rational, &VertexTuple)]) -> Multivector {
    let mut jobs = Vec::new();
    for (g, c, t) in terms {
        jobs_for(g, c, t.slots(), &mut jobs);
    }
    exec::map_reduce(
        exec,
        &jobs,
        |job| run_job(job, r),
        || Multivector::zero(r),
        |mut a, b| {
            a += &b;
            a
        },
    )
}

/// `Or(g)(t)` for a single graph in the edge order given.
pub fn evaluate_graph(g: &Graph, t: &VertexTuple) -> Result<Multivector> {
    check_arity(g, t)?;
    let one = Rational::one();
    Ok(evaluate_terms(Exec::default(), t.nvars(), &[(g, &one, t)]))
}

pub fn evaluate(gamma: &GraphSum, t: &VertexTuple) -> Result<Multivector> {
    evaluate_with(Exec::default(), gamma, t)
}

pub fn evaluate_with(exec: Exec, gamma: &GraphSum, t: &VertexTuple) -> Result<Multivector> {
    let mut terms = Vec::new();
    for (g, c) in gamma.terms() {
        check_arity(g, t)?;
        terms.push((g, c, t));
    }
    Ok(evaluate_terms(exec, t.nvars(), &terms))
}

/// Reference evaluation through the full sheeted expansion.
pub fn evaluate_expanded(gamma: &GraphSum, t: &VertexTuple) -> Result<Multivector> {
    let mut out = Multivector::zero(t.nvars());
    for (g, c) in gamma.terms() {
        out += &evaluate_graph_expanded(g, t)?.scale(c);
    }
    Ok(out)
}

pub fn evaluate_graph_expanded(g: &Graph, t: &VertexTuple) -> Result<Multivector> {
    check_arity(g, t)?;
    let mut state = SheetedPoly::lift(t.slots())?;
    for (i, j) in g.edges() {
        if state.is_zero() {
            break;
        }
        state = state.apply_edge(i, j)?;
    }
    Ok(state.merge())
}

fn require_bivector(p: &Multivector) -> Result<()> {
    if p.is_zero() || p.degree() == Some(2) {
        Ok(())
    } else {
        Err(Error::Grading { expected: "a bivector".into(), found: format!("{:?}-vector", p.degree()) })
    }
}

fn common_vertex_count(gamma: &GraphSum) -> Result<Option<usize>> {
    let mut n = None;
    for (g, _) in gamma.terms() {
        match n {
            None => n = Some(g.vertices()),
            Some(m) if m != g.vertices() => {
                return Err(Error::Arity { graph: g.vertices(), tuple: m });
            }
            _ => {}
        }
    }
    Ok(n)
}

/// The flow `Q(P) = Or(γ)(P ⊗ … ⊗ P)`.
pub fn flow(gamma: &GraphSum, p: &Multivector) -> Result<Multivector> {
    flow_with(Exec::default(), gamma, p)
}

pub fn flow_with(exec: Exec, gamma: &GraphSum, p: &Multivector) -> Result<Multivector> {
    require_bivector(p)?;
    let Some(n) = common_vertex_count(gamma)? else {
        return Ok(Multivector::zero(p.nvars()));
    };
    evaluate_with(exec, gamma, &VertexTuple::repeat(p, n)?)
}

/// The 1-vector `X(γ,V,P) = Σ_k Or(γ)(P,…,V,…,P)` with `V` in slot `k`.
///
/// Requires `[[V,P]] = P`, `P` Poisson and every term of `γ` in bi-grading
/// `(n, 2n-2)`.
pub fn cocycle1(gamma: &GraphSum, v: &Multivector, p: &Multivector) -> Result<Multivector> {
    cocycle1_with(Exec::default(), gamma, v, p)
}

pub fn cocycle1_with(exec: Exec, gamma: &GraphSum, v: &Multivector, p: &Multivector) -> Result<Multivector> {
    require_bivector(p)?;
    if v.nvars() != p.nvars() {
        return Err(Error::DimensionMismatch { left: v.nvars(), right: p.nvars() });
    }
    match multivec::homogeneity_scale(v, p)? {
        HomogeneityReport::Scale(l) if l.is_one() => {}
        HomogeneityReport::Scale(l) => return Err(Error::NotHomogeneous { scale: Some(l) }),
        HomogeneityReport::Any => {}
        HomogeneityReport::Inhomogeneous => return Err(Error::NotHomogeneous { scale: None }),
    }
    let jac = multivec::jacobiator(p)?;
    if !jac.is_zero() {
        return Err(Error::NotPoisson { terms: jac.components().map(|(_, c)| c.len()).sum() });
    }
    for (g, _) in gamma.terms() {
        if g.vertices() < 1 || g.num_edges() != 2 * g.vertices() - 2 {
            return Err(Error::Bigrading { vertices: g.vertices(), edges: g.num_edges() });
        }
    }
    let Some(n) = common_vertex_count(gamma)? else {
        return Ok(Multivector::zero(p.nvars()));
    };
    let tuples: Vec<VertexTuple> = (0..n)
        .map(|k| {
            let mut slots = vec![p.clone(); n];
            slots[k] = v.clone();
            VertexTuple::new(slots)
        })
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for t in &tuples {
        for (g, c) in gamma.terms() {
            check_arity(g, t)?;
            terms.push((g, c, t));
        }
    }
    Ok(evaluate_terms(exec, p.nvars(), &terms))
}

/// Coefficient degree `n·d − (2n−2)` expected of a flow on `n` vertices.
pub fn expected_flow_degree(p: &Multivector, n: usize) -> Option<i64> {
    match p.coefficient_degree()? {
        HomDegree::Exactly(d) => Some(n as i64 * d as i64 - (2 * n as i64 - 2)),
        HomDegree::Any => None,
    }
}
