//! The graph complex of edge-ordered graphs.
//!
//! Graphs carry an ordering of their edges; transposing two edges flips the
//! sign of the graph. Vertices are unordered. A graph is zero when one of its
//! automorphisms induces an odd permutation of the edges, which covers every
//! graph with a doubled edge.
//!
//! The insertion `g1 ∘ g2` puts `g2` into each vertex of `g1` in turn and
//! reattaches the edges that were incident to that vertex in every possible
//! way; edges of `g2` come after the edges of `g1`. The bracket is
//! `[a, b] = a ∘ b − (-1)^{E(a)E(b)} b ∘ a` and the differential is
//! `d = −[•–•, ·]`, which gives `d(•) = −(•–•)`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::parse::Cursor;
use crate::ratpoly::Rational;

/// Largest vertex count accepted by [`canonicalize`] (exhaustive search).
pub const MAX_VERTICES: usize = 9;

/// An edge-ordered graph. Vertices are `0..n`; each edge is stored with its
/// smaller endpoint first and its list position is its place in the order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(u8, u8)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if n > u8::MAX as usize {
            return Err(Error::MalformedGraph(format!("too many vertices ({n})")));
        }
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::MalformedGraph(format!("loop at vertex {}", a + 1)));
            }
            if a >= n || b >= n {
                return Err(Error::MalformedGraph(format!(
                    "edge ({},{}) leaves the vertex range 1..{n}",
                    a + 1,
                    b + 1
                )));
            }
            out.push((a.min(b) as u8, a.max(b) as u8));
        }
        Ok(Graph { n, edges: out })
    }

    /// The single vertex `•`.
    pub fn dot() -> Graph {
        Graph { n: 1, edges: vec![] }
    }

    /// The single edge `•–•`.
    pub fn stick() -> Graph {
        Graph { n: 2, edges: vec![(0, 1)] }
    }

    /// The complete graph on four vertices with lexicographically ordered edges.
    pub fn tetrahedron() -> Graph {
        Graph { n: 4, edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] }
    }

    pub fn vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    /// Same graph with edges listed in the order `perm` (`perm[k]` is the old
    /// position of the new `k`-th edge).
    pub fn permute_edges(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.edges.len());
        Graph { n: self.n, edges: perm.iter().map(|&k| self.edges[k]).collect() }
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize] as u8, perm[b as usize] as u8);
                (x.min(y), x.max(y))
            })
            .collect();
        Graph { n: self.n, edges }
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (a, b) in self.edges() {
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parses one `graph{n=..; edges=(i,j)..; c=..}` term without canonicalizing.
    pub fn parse_term(text: &str) -> Result<(Graph, Rational)> {
        let mut cur = Cursor::new(text);
        let t = parse_term(&mut cur)?;
        cur.finish()?;
        Ok(t)
    }

    fn write_term(&self, f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
        write!(f, "graph{{n={}; edges=", self.n)?;
        for (a, b) in self.edges() {
            write!(f, "({},{})", a + 1, b + 1)?;
        }
        write!(f, "; c={c}}}")
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_term(f, &Rational::one())
    }
}

fn parse_term(cur: &mut Cursor) -> Result<(Graph, Rational)> {
    cur.expect_str("graph")?;
    cur.expect('{')?;
    cur.expect_str("n")?;
    cur.expect('=')?;
    let n = cur.index()?;
    cur.expect(';')?;
    cur.expect_str("edges")?;
    cur.expect('=')?;
    let at = cur.pos();
    let mut edges = Vec::new();
    while cur.eat('(') {
        let a = cur.index()?;
        cur.expect(',')?;
        let b = cur.index()?;
        cur.expect(')')?;
        if a == 0 || b == 0 {
            return Err(Error::Syntax { pos: at, msg: "vertex indices start at 1".into() });
        }
        edges.push((a - 1, b - 1));
    }
    cur.expect(';')?;
    cur.expect_str("c")?;
    cur.expect('=')?;
    let c = cur.signed_rational()?;
    cur.expect('}')?;
    let g = Graph::new(n, &edges)?;
    Ok((g, c))
}

fn permutation_parity(keys: &[(u8, u8)]) -> i32 {
    let mut inv = 0usize;
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            if keys[i] > keys[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Canonical representative and sign, or `None` for a zero graph.
///
/// The representative is the relabeling whose sorted edge list is
/// lexicographically minimal; the sign is the parity of the edge permutation
/// that sorts it. Exhaustive over all vertex permutations.
pub fn canonicalize(g: &Graph) -> Result<Option<(Graph, i32)>> {
    if g.n > MAX_VERTICES {
        return Err(Error::MalformedGraph(format!(
            "{} vertices exceeds the canonicalization limit {MAX_VERTICES}",
            g.n
        )));
    }
    let mut perm: Vec<usize> = (0..g.n).collect();
    let mut best: Option<(Vec<(u8, u8)>, i32)> = None;
    let mut relabeled = Vec::with_capacity(g.edges.len());
    loop {
        relabeled.clear();
        relabeled.extend(g.edges.iter().map(|&(a, b)| {
            let (x, y) = (perm[a as usize] as u8, perm[b as usize] as u8);
            (x.min(y), x.max(y))
        }));
        let mut sorted = relabeled.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(None);
        }
        let better = match &best {
            None => true,
            Some((b, sign)) => match sorted.cmp(b) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => {
                    if permutation_parity(&relabeled) != *sign {
                        return Ok(None);
                    }
                    false
                }
                std::cmp::Ordering::Greater => false,
            },
        };
        if better {
            let sign = permutation_parity(&relabeled);
            best = Some((sorted, sign));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (edges, sign) = best.expect("at least one permutation");
    Ok(Some((Graph { n: g.n, edges }, sign)))
}

/// A formal rational combination of canonical graphs.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GraphSum {
    terms: BTreeMap<Graph, Rational>,
}

impl GraphSum {
    pub fn new() -> Self {
        GraphSum::default()
    }

    pub fn single(g: Graph) -> Result<Self> {
        let mut s = GraphSum::new();
        s.add(g, Rational::one())?;
        Ok(s)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Graph, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, g: &Graph) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `c·g`, canonicalizing `g` first.
    pub fn add(&mut self, g: Graph, c: Rational) -> Result<()> {
        if let Some((canon, sign)) = canonicalize(&g)? {
            self.add_canonical(canon, if sign < 0 { -c } else { c });
        }
        Ok(())
    }

    fn add_canonical(&mut self, g: Graph, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn add_sum(&mut self, other: &GraphSum, scale: &Rational) {
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), c * scale);
        }
    }

    pub fn scale(&self, c: &Rational) -> GraphSum {
        let mut out = GraphSum::new();
        out.add_sum(self, c);
        out
    }

    /// `(vertices, edges)` when every term shares one bi-grading.
    pub fn bigrading(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|g| (g.n, g.edges.len()));
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    /// Newline-separated `graph{…}` terms; terms are canonicalized and
    /// collected. An empty input or `0` is the empty sum.
    pub fn parse(text: &str) -> Result<GraphSum> {
        let mut out = GraphSum::new();
        for (g, c) in parse_graph_terms(text)? {
            out.add(g, c)?;
        }
        Ok(out)
    }
}

/// Raw `graph{…}` terms in input order, edge order preserved.
pub fn parse_graph_terms(text: &str) -> Result<Vec<(Graph, Rational)>> {
    let mut cur = Cursor::new(text);
    if cur.eat('0') {
        cur.finish()?;
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    while !cur.at_end() {
        out.push(parse_term(&mut cur)?);
    }
    Ok(out)
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str("\n")?;
            }
            g.write_term(f, c)?;
        }
        Ok(())
    }
}

/// Raw insertion terms of `g2` into every vertex of `g1`, before
/// canonicalization. Used directly by tests that count reattachments.
pub fn insertion_terms(g1: &Graph, g2: &Graph) -> Vec<Graph> {
    let n1 = g1.n;
    let n2 = g2.n;
    let n = n1 + n2 - 1;
    let mut out = Vec::new();
    if n2 == 0 {
        return out;
    }
    for v in 0..n1 {
        let incident: Vec<usize> = g1
            .edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a as usize == v || b as usize == v)
            .map(|(k, _)| k)
            .collect();
        let shift = |u: usize| if u > v { u - 1 } else { u };
        let total = n2.pow(incident.len() as u32);
        for code in 0..total {
            let mut targets = vec![0usize; incident.len()];
            let mut c = code;
            for t in targets.iter_mut() {
                *t = c % n2;
                c /= n2;
            }
            let mut edges = Vec::with_capacity(g1.edges.len() + g2.edges.len());
            for (k, &(a, b)) in g1.edges.iter().enumerate() {
                let (a, b) = (a as usize, b as usize);
                let pos = incident.iter().position(|&e| e == k);
                let (x, y) = match pos {
                    Some(p) => {
                        let other = if a == v { b } else { a };
                        (shift(other), n1 - 1 + targets[p])
                    }
                    None => (shift(a), shift(b)),
                };
                edges.push((x.min(y) as u8, x.max(y) as u8));
            }
            for &(a, b) in &g2.edges {
                edges.push((a + (n1 - 1) as u8, b + (n1 - 1) as u8));
            }
            out.push(Graph { n, edges });
        }
    }
    out
}

pub fn insert(g1: &Graph, g2: &Graph) -> Result<GraphSum> {
    let mut out = GraphSum::new();
    for g in insertion_terms(g1, g2) {
        out.add(g, Rational::one())?;
    }
    Ok(out)
}

fn edge_sign(a: &Graph, b: &Graph) -> Rational {
    if a.edges.len() * b.edges.len() % 2 == 1 {
        -Rational::one()
    } else {
        Rational::one()
    }
}

pub fn bracket(x: &GraphSum, y: &GraphSum) -> Result<GraphSum> {
    bracket_with(Exec::default(), x, y)
}

pub fn bracket_with(exec: Exec, x: &GraphSum, y: &GraphSum) -> Result<GraphSum> {
    let pairs: Vec<(&Graph, &Rational, &Graph, &Rational)> = x
        .terms()
        .flat_map(|(g1, c1)| y.terms().map(move |(g2, c2)| (g1, c1, g2, c2)))
        .collect();
    exec::map_reduce(
        exec,
        &pairs,
        |&(g1, c1, g2, c2)| -> Result<GraphSum> {
            let c = c1 * c2;
            let mut s = insert(g1, g2)?.scale(&c);
            s.add_sum(&insert(g2, g1)?, &-(edge_sign(g1, g2) * c));
            Ok(s)
        },
        || Ok(GraphSum::new()),
        |a, b| {
            let mut a = a?;
            a.add_sum(&b?, &Rational::one());
            Ok(a)
        },
    )
}

/// The vertex-splitting differential `d = −[•–•, ·]`.
pub fn differential(g: &GraphSum) -> Result<GraphSum> {
    differential_with(Exec::default(), g)
}

pub fn differential_with(exec: Exec, g: &GraphSum) -> Result<GraphSum> {
    let stick = GraphSum::single(Graph::stick())?;
    Ok(bracket_with(exec, &stick, g)?.scale(&-Rational::one()))
}

pub fn is_cocycle(g: &GraphSum) -> Result<bool> {
    Ok(differential(g)?.is_empty())
}

/// Canonical representatives of all nonzero connected graphs on `n`
/// vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 6 {
        return Err(Error::MalformedGraph(format!("enumeration supports 1..=6 vertices, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        let g = Graph::new(n, &edges)?;
        if !g.is_connected() {
            continue;
        }
        if let Some((c, _)) = canonicalize(&g)? {
            seen.insert(c);
        }
    }
    Ok(seen.into_iter().collect())
}
