mod common;

use common::*;
use graphflow::gracomplex::{self, canonicalize, Graph, GraphSum};
use graphflow::ratpoly::{rat, Rational};
use proptest::prelude::*;

fn sum(g: &Graph) -> GraphSum {
    GraphSum::single(g.clone()).unwrap()
}

fn edges_parity(x: &GraphSum) -> usize {
    x.terms().next().map_or(0, |(g, _)| g.num_edges() % 2)
}

fn sign(a: &GraphSum, b: &GraphSum) -> Rational {
    rat(if edges_parity(a) * edges_parity(b) == 1 { -1 } else { 1 })
}

fn small_graph() -> impl Strategy<Value = Graph> {
    prop_oneof![Just(Graph::dot()), (2usize..=3).prop_flat_map(|n| graph(n, 3))]
}

fn pre_lie(a: &GraphSum, b: &GraphSum) -> GraphSum {
    let mut out = GraphSum::new();
    for (g1, c1) in a.terms() {
        for (g2, c2) in b.terms() {
            out.add_sum(&gracomplex::insert(g1, g2).unwrap(), &(c1 * c2));
        }
    }
    out
}

fn minus(a: &GraphSum, b: &GraphSum) -> GraphSum {
    let mut out = a.clone();
    out.add_sum(b, &rat(-1));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_form_is_invariant(
        g in (2usize..=5).prop_flat_map(|n| graph(n, 6)),
        seed in any::<u64>(),
    ) {
        let n = g.vertices();
        let e = g.num_edges();
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
        let mut vperm: Vec<usize> = (0..n).collect();
        let mut eperm: Vec<usize> = (0..e).collect();
        rand::seq::SliceRandom::shuffle(vperm.as_mut_slice(), &mut rng);
        rand::seq::SliceRandom::shuffle(eperm.as_mut_slice(), &mut rng);
        let h = g.relabel(&vperm).permute_edges(&eperm);
        match (canonicalize(&g).unwrap(), canonicalize(&h).unwrap()) {
            (None, None) => {}
            (Some((cg, sg)), Some((ch, sh))) => {
                prop_assert_eq!(cg, ch);
                prop_assert_eq!(sh, sg * parity(&eperm));
            }
            (a, b) => prop_assert!(false, "zero status differs: {:?} vs {:?}", a, b),
        }
    }

    #[test]
    fn text_round_trip(g in (2usize..=5).prop_flat_map(|n| graph(n, 6)), c in -5i64..=5) {
        let mut s = GraphSum::new();
        s.add(g, rat(c)).unwrap();
        prop_assert_eq!(GraphSum::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn differential_squares_to_zero(g in (2usize..=5).prop_flat_map(|n| graph(n, 6))) {
        let d1 = gracomplex::differential(&sum(&g)).unwrap();
        prop_assert!(gracomplex::differential(&d1).unwrap().is_empty());
    }

    #[test]
    fn bracket_graded_antisymmetry(a in small_graph(), b in small_graph()) {
        let (a, b) = (sum(&a), sum(&b));
        let ab = gracomplex::bracket(&a, &b).unwrap();
        let ba = gracomplex::bracket(&b, &a).unwrap();
        prop_assert_eq!(ab, ba.scale(&-sign(&a, &b)));
    }

    #[test]
    fn insertion_is_pre_lie(a in small_graph(), b in small_graph(), c in small_graph()) {
        let (a, b, c) = (sum(&a), sum(&b), sum(&c));
        let assoc = |x: &GraphSum, y: &GraphSum, z: &GraphSum| {
            minus(&pre_lie(&pre_lie(x, y), z), &pre_lie(x, &pre_lie(y, z)))
        };
        prop_assert_eq!(assoc(&a, &b, &c), assoc(&a, &c, &b).scale(&sign(&b, &c)));
    }

    #[test]
    fn bracket_graded_jacobi(a in small_graph(), b in small_graph(), c in small_graph()) {
        let (a, b, c) = (sum(&a), sum(&b), sum(&c));
        let br = |x: &GraphSum, y: &GraphSum| gracomplex::bracket(x, y).unwrap();
        let mut rhs = br(&br(&a, &b), &c);
        rhs.add_sum(&br(&b, &br(&a, &c)), &sign(&a, &b));
        prop_assert_eq!(br(&a, &br(&b, &c)), rhs);
    }

    #[test]
    fn differential_is_a_derivation_of_the_bracket(a in small_graph(), b in small_graph()) {
        let (a, b) = (sum(&a), sum(&b));
        let d = |x: &GraphSum| gracomplex::differential(x).unwrap();
        let br = |x: &GraphSum, y: &GraphSum| gracomplex::bracket(x, y).unwrap();
        let mut rhs = br(&d(&a), &b);
        rhs.add_sum(&br(&a, &d(&b)), &rat(if edges_parity(&a) == 1 { -1 } else { 1 }));
        prop_assert_eq!(d(&br(&a, &b)), rhs);
    }
}

#[test]
fn differential_squares_to_zero_on_all_small_connected_graphs() {
    for n in 1..=4 {
        for g in gracomplex::connected_graphs(n).unwrap() {
            let d1 = gracomplex::differential(&sum(&g)).unwrap();
            assert!(gracomplex::differential(&d1).unwrap().is_empty(), "{g}");
        }
    }
}

#[test]
fn tetrahedron_is_a_cocycle_in_every_edge_order() {
    let t = Graph::tetrahedron();
    let (canon, base) = canonicalize(&t).unwrap().unwrap();
    let mut perm: Vec<usize> = (0..6).collect();
    let mut count = 0;
    loop {
        let (c, s) = canonicalize(&t.permute_edges(&perm)).unwrap().unwrap();
        assert_eq!(c, canon);
        assert_eq!(s, base * parity(&perm));
        count += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    assert_eq!(count, 720);
    assert!(gracomplex::is_cocycle(&sum(&t)).unwrap());
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
