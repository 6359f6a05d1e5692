#![allow(dead_code)]

use graphflow::gracomplex::Graph;
use graphflow::multivec::{Multivector, XiSet};
use graphflow::ratpoly::{rat, Monomial, Poly};
use proptest::prelude::*;

pub const P1: &str = "(x1^2*x2 + x2^2*x3) xi1 xi2 + (x1^2*x3 + x2*x3^2) xi1 xi3 + (2*x1*x2*x3 + 2*x2*x3*x4) xi1 xi4 + (x2^2*x3 + x2*x4^2) xi2 xi4 + (x2*x3^2 + x3*x4^2) xi3 xi4";

/// Polynomials in `r` variables of total degree at most `maxdeg`.
pub fn poly(r: usize, maxdeg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=maxdeg, r), -3i64..=3), 0..4).prop_map(move |terms| {
        Poly::from_terms(
            r,
            terms.into_iter().map(|(mut e, c)| {
                while e.iter().sum::<u32>() > maxdeg {
                    let i = e.iter().position(|&x| x > 0).unwrap();
                    e[i] -= 1;
                }
                (Monomial::from_exponents(e), rat(c))
            }),
        )
    })
}

/// Homogeneous polynomials of degree exactly `d` (possibly zero).
pub fn homogeneous(r: usize, d: u32) -> impl Strategy<Value = Poly> {
    let monos = Monomial::all_of_degree(r, d);
    prop::collection::vec(-3i64..=3, monos.len())
        .prop_map(move |cs| Poly::from_terms(r, monos.iter().cloned().zip(cs.into_iter().map(rat))))
}

pub fn subsets(r: usize, k: usize) -> Vec<XiSet> {
    (0u32..1 << r).filter(|s| s.count_ones() as usize == k).map(XiSet).collect()
}

pub fn from_components(r: usize, k: usize, cs: Vec<Poly>) -> Multivector {
    let mut m = Multivector::zero(r);
    for (s, c) in subsets(r, k).into_iter().zip(cs) {
        m.add_component(s, c);
    }
    m
}

/// `k`-vectors with coefficients of degree at most `maxdeg`.
pub fn kvector(r: usize, k: usize, maxdeg: u32) -> impl Strategy<Value = Multivector> {
    let n = subsets(r, k).len();
    prop::collection::vec(poly(r, maxdeg), n).prop_map(move |cs| from_components(r, k, cs))
}

/// `k`-vectors with homogeneous coefficients of degree `d`.
pub fn homogeneous_kvector(r: usize, k: usize, d: u32) -> impl Strategy<Value = Multivector> {
    let n = subsets(r, k).len();
    prop::collection::vec(homogeneous(r, d), n).prop_map(move |cs| from_components(r, k, cs))
}

/// Graphs on `n` vertices without loops; multiple edges allowed.
pub fn graph(n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec((0..n, 1..n), 0..=max_edges).prop_map(move |es| {
        let edges: Vec<(usize, usize)> = es.into_iter().map(|(a, s)| (a, (a + s) % n)).collect();
        Graph::new(n, &edges).unwrap()
    })
}

pub fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

pub fn parity(perm: &[usize]) -> i32 {
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}
