mod common;

use common::*;
use graphflow::cohomsolve::{self, AnsatzSpec, AnsatzSystem};
use graphflow::multivec::{self, Multivector};
use graphflow::ratpoly::{Poly, Rational};
use graphflow::Exec;
use num_traits::Zero;
use proptest::prelude::*;

/// Plain rational Gauss–Jordan: `(rank A, rank [A|b])`.
fn ranks(sys: &AnsatzSystem) -> (usize, usize) {
    let (m, n) = (sys.num_rows(), sys.num_columns());
    let mut a: Vec<Vec<Rational>> =
        (0..m).map(|i| (0..n).map(|j| sys.entry(i, j).clone()).chain([sys.rhs(i).clone()]).collect()).collect();
    let mut rank = 0;
    for col in 0..=n {
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][col].clone();
        for x in a[rank].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..m {
            if i != rank && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pivot_row = a[rank].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if col < n {
            rank += 1;
        } else {
            return (rank, rank + 1);
        }
    }
    (rank, rank)
}

fn nambu(a: &Poly, rho: &Poly) -> Multivector {
    let dk = |k: usize| rho * &a.partial(k).unwrap();
    Multivector::bivector(3, vec![(0, 1, dk(2)), (0, 2, -&dk(1)), (1, 2, dk(0))])
}

/// Nambu brackets with coefficient degree 2 or 3.
fn poisson() -> impl Strategy<Value = (Multivector, u32)> {
    prop_oneof![
        homogeneous(3, 3).prop_map(|a| (nambu(&a, &Poly::one(3)), 2)),
        (homogeneous(3, 3), homogeneous(3, 1)).prop_map(|(a, rho)| (nambu(&a, &rho), 3)),
    ]
    .prop_filter("nonzero", |(p, _)| !p.is_zero())
}

/// `(P, Q, D)` with `deg Q = deg P + D − 1`, `Q` arbitrary.
fn system_inputs() -> impl Strategy<Value = (Multivector, Multivector, u32)> {
    (poisson(), 1u32..=2).prop_flat_map(|((p, d), deg)| (Just(p), homogeneous_kvector(3, 2, d + deg - 1), Just(deg)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn planted_fields_are_recovered((p, _) in poisson(), (y, deg) in (1u32..=2).prop_flat_map(|d| (homogeneous_kvector(3, 1, d), Just(d)))) {
        let q = multivec::schouten(&y, &p).unwrap();
        let sol = cohomsolve::trivialize(&q, &p, Some(deg)).unwrap();
        prop_assert!(sol.is_solved());
        prop_assert!(sol.contains(&y));
        prop_assert_eq!(multivec::schouten(&sol.particular, &p).unwrap(), q.clone());
        // the gauge: particular and planted differ by a symmetry of P
        prop_assert!(multivec::schouten(&(&y - &sol.particular), &p).unwrap().is_zero());
        for k in &sol.kernel_basis {
            prop_assert!(multivec::schouten(k, &p).unwrap().is_zero());
        }
    }

    #[test]
    fn bareiss_agrees_with_plain_elimination((p, q, deg) in system_inputs()) {
        let sys = cohomsolve::assemble(&q, &p, AnsatzSpec::new(3, deg).unwrap()).unwrap();
        let sol = cohomsolve::solve(&sys);
        let (ra, rab) = ranks(&sys);
        prop_assert_eq!(sol.kernel_dim(), sys.num_columns() - ra);
        prop_assert_eq!(sol.is_solved(), ra == rab);
        if let cohomsolve::Status::Infeasible(w) = &sol.status {
            prop_assert!(!w.residual.is_zero());
        }
    }

    #[test]
    fn hamiltonian_fields_lie_in_the_solution_set((p, d) in poisson(), (y, big_d) in (1u32..=2).prop_flat_map(|d| (homogeneous_kvector(3, 1, d), Just(d)))) {
        // deg h = D − d + 1 makes [[P,h]] a field of component degree D
        prop_assume!(big_d + 1 >= d);
        let h_deg = big_d + 1 - d;
        let q = multivec::schouten(&y, &p).unwrap();
        let sol = cohomsolve::trivialize(&q, &p, Some(big_d)).unwrap();
        for m in graphflow::ratpoly::Monomial::all_of_degree(3, h_deg) {
            let h = Poly::monomial(3, m, Rational::from_integer(1.into()));
            let xh = multivec::hamiltonian(&p, &h).unwrap();
            prop_assert!(sol.contains(&(&sol.particular + &xh)));
        }
    }

    #[test]
    fn assembly_is_execution_independent((p, q, deg) in system_inputs()) {
        let spec = AnsatzSpec::new(3, deg).unwrap();
        let a = cohomsolve::assemble_with(Exec::Sequential, &q, &p, spec).unwrap();
        let b = cohomsolve::assemble_with(Exec::default(), &q, &p, spec).unwrap();
        prop_assert_eq!(a.num_rows(), b.num_rows());
        for i in 0..a.num_rows() {
            prop_assert_eq!(a.rhs(i), b.rhs(i));
            for j in 0..a.num_columns() {
                prop_assert_eq!(a.entry(i, j), b.entry(i, j));
            }
        }
    }
}
