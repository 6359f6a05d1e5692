//! Acceptance criteria 1–12. Prints one line per criterion and exits
//! non-zero if any of them fails. All comparisons are exact.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use graphflow::cohomsolve;
use graphflow::gracomplex::{self, Graph, GraphSum};
use graphflow::multivec::{self, Multivector, XiSet};
use graphflow::orient;
use graphflow::ratpoly::{rat, Monomial, Poly};
use graphflow_cli::catalog::Catalog;
use graphflow_cli::verify::Regression;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: u8,
    what: &'static str,
    /// Wall-clock bound for the whole criterion.
    bound: Duration,
    run: fn(&Catalog) -> Outcome,
}

fn mv<'a>(cat: &'a Catalog, name: &str) -> &'a Multivector {
    cat.multivector(name).unwrap()
}

fn tetrahedron() -> GraphSum {
    GraphSum::single(Graph::tetrahedron()).unwrap()
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1(cat: &Catalog) -> Outcome {
    for name in ["p1", "p2"] {
        let j = multivec::jacobiator(mv(cat, name)).unwrap();
        ensure(j.is_zero(), format!("jacobiator({name}) has {} components", j.num_components()))?;
    }
    Ok("jacobiator(p1) = jacobiator(p2) = 0".into())
}

fn c2(cat: &Catalog) -> Outcome {
    let e = mv(cat, "euler");
    for name in ["p1", "p2"] {
        let p = mv(cat, name);
        ensure(&multivec::schouten(e, p).unwrap() == p, format!("[[E,{name}]] != {name}"))?;
    }
    Ok("[[E,p1]] = p1, [[E,p2]] = p2".into())
}

fn c3(cat: &Catalog) -> Outcome {
    let lead = |q: &Multivector| q.component(XiSet::from_indices(&[0, 1])).coeff(&Monomial::from_exponents(vec![5, 1, 0, 0]));
    ensure(lead(mv(cat, "q1")) == rat(-48), "printed q1 lacks the -48 x^5 y term")?;
    ensure(lead(mv(cat, "q2")) == rat(-384), "printed q2 lacks the -384 x^5 y term")?;
    let mut notes = Vec::new();
    for i in ["1", "2"] {
        let (p, q, y) = (mv(cat, &format!("p{i}")), mv(cat, &format!("q{i}")), mv(cat, &format!("y{i}")));
        let b = multivec::schouten(y, p).unwrap();
        if &b != q {
            let how = if b == -q { "= -q".to_string() } else { "differs from q".to_string() };
            notes.push(format!("[[y{i},p{i}]] {how}"));
        }
    }
    if notes.is_empty() {
        Ok("[[y1,p1]] = q1, [[y2,p2]] = q2".into())
    } else {
        Err(notes.join(", "))
    }
}

fn c4(cat: &Catalog) -> Outcome {
    let reg = Regression::builtin();
    let mut out = Vec::new();
    for (i, lambda) in [("1", &reg.lambda1), ("2", &reg.lambda2)] {
        let (p, q) = (mv(cat, &format!("p{i}")), mv(cat, &format!("q{i}")));
        let f = orient::flow(&tetrahedron(), p).unwrap();
        let l = f.proportionality(q).ok_or(format!("flow(p{i}) is not proportional to q{i}"))?;
        ensure(l != rat(0), format!("flow(p{i}) vanishes"))?;
        ensure(&l == lambda, format!("lambda{i} = {l}, frozen value {lambda}"))?;
        out.push(format!("lambda{i} = {l}"));
    }
    Ok(out.join(", "))
}

fn c5(cat: &Catalog) -> Outcome {
    for name in ["p1", "p2"] {
        let p = mv(cat, name);
        let f = orient::flow(&tetrahedron(), p).unwrap();
        ensure(multivec::schouten(p, &f).unwrap().is_zero(), format!("[[{name}, flow]] != 0"))?;
    }
    Ok("[[p, flow(p)]] = 0 for p1, p2".into())
}

fn c6(cat: &Catalog) -> Outcome {
    let e = mv(cat, "euler");
    for name in ["p1", "p2"] {
        let f = orient::flow(&tetrahedron(), mv(cat, name)).unwrap();
        ensure(multivec::schouten(e, &f).unwrap() == f.scale(&rat(4)), format!("[[E, flow({name})]] != 4 flow"))?;
    }
    Ok("[[E, flow(p)]] = 4 flow(p) for p1, p2".into())
}

fn c7(cat: &Catalog) -> Outcome {
    let e = mv(cat, "euler");
    for name in ["p1", "p2"] {
        let x = orient::cocycle1(&tetrahedron(), e, mv(cat, name)).map_err(|err| err.to_string())?;
        ensure(x.is_zero(), format!("cocycle1(tetrahedron, E, {name}) != 0"))?;
    }
    Ok("cocycle1(tetrahedron, E, p) = 0 for p1, p2".into())
}

fn c8(cat: &Catalog) -> Outcome {
    let p = mv(cat, "nambu_quartic");
    let e = multivec::euler_field(3).unwrap();
    ensure(&multivec::schouten(&e, p).unwrap() == p, "[[E, P_nambu]] != P_nambu")?;
    let x = orient::cocycle1(&tetrahedron(), &e, p).map_err(|err| err.to_string())?;
    ensure(multivec::schouten(&x, p).unwrap().is_zero(), "[[X, P_nambu]] != 0")?;
    Ok(format!("[[X, P_nambu]] = 0; X vanishes: {}", x.is_zero()))
}

fn c9(_: &Catalog) -> Outcome {
    let d = |g: &GraphSum| gracomplex::differential(g).unwrap();
    let mut minus_stick = GraphSum::new();
    minus_stick.add(Graph::stick(), rat(-1)).unwrap();
    ensure(d(&GraphSum::single(Graph::dot()).unwrap()) == minus_stick, "d(dot) != -stick")?;
    ensure(d(&tetrahedron()).is_empty(), "d(tetrahedron) != 0")?;
    let mut count = 0;
    for n in 1..=4 {
        for g in gracomplex::connected_graphs(n).unwrap() {
            let s = GraphSum::single(g.clone()).unwrap();
            ensure(d(&d(&s)).is_empty(), format!("d(d({g})) != 0"))?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    let mut random = 0;
    while random < 40 {
        let edges: Vec<(usize, usize)> = pairs.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        let g = Graph::new(5, &edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let s = GraphSum::single(g.clone()).unwrap();
        ensure(d(&d(&s)).is_empty(), format!("d(d({g})) != 0"))?;
        random += 1;
    }
    Ok(format!("d(dot) = -stick, d(tetrahedron) = 0, d∘d = 0 on all {count} nonzero connected classes with n <= 4 and {random} random connected graphs with n = 5"))
}

fn c10(cat: &Catalog) -> Outcome {
    let reg = Regression::builtin();
    let mut notes = Vec::new();
    for (i, kdim) in [("1", reg.kernel_dim_p1), ("2", reg.kernel_dim_p2)] {
        let (p, q, y) = (mv(cat, &format!("p{i}")), mv(cat, &format!("q{i}")), mv(cat, &format!("y{i}")));
        let sol = cohomsolve::trivialize(q, p, Some(4)).map_err(|e| e.to_string())?;
        ensure(sol.is_solved(), format!("q{i} = [[Y,p{i}]] infeasible at D = 4"))?;
        ensure(&multivec::schouten(&sol.particular, p).unwrap() == q, format!("particular solution for q{i} has a residual"))?;
        ensure(sol.kernel_dim() == kdim, format!("kernel dim {} for p{i}, frozen value {kdim}", sol.kernel_dim()))?;
        if !sol.contains(y) {
            let neg = if sol.contains(&-y) { "; -y".to_string() + i + " is a member" } else { String::new() };
            notes.push(format!("y{i} is not in the solution set{neg}"));
        }
    }
    if notes.is_empty() {
        Ok("solved with zero residual; y1, y2 are members".into())
    } else {
        Err(format!("solved with zero residual, kernel dims as frozen, but {}", notes.join(", ")))
    }
}

fn random_poly(rng: &mut ChaCha8Rng, r: usize, maxdeg: u32) -> Poly {
    let mut p = Poly::zero(r);
    for _ in 0..rng.gen_range(0..4) {
        let mut e = vec![0u32; r];
        for _ in 0..rng.gen_range(0..=maxdeg) {
            e[rng.gen_range(0..r)] += 1;
        }
        p.add_term(Monomial::from_exponents(e), rat(rng.gen_range(-3..=3)));
    }
    p
}

fn random_kvector(rng: &mut ChaCha8Rng, r: usize, k: usize, maxdeg: u32) -> Multivector {
    let mut m = Multivector::zero(r);
    for s in (0u32..1 << r).filter(|s| s.count_ones() as usize == k) {
        m.add_component(XiSet(s), random_poly(rng, r, maxdeg));
    }
    m
}

fn c11(cat: &Catalog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let br = |a: &Multivector, b: &Multivector| multivec::schouten(a, b).unwrap();
    let sign = |a: usize, b: usize| rat(if ((a + 1) * (b + 1)).is_multiple_of(2) { 1 } else { -1 });
    let triples = 120;
    for _ in 0..triples {
        let r = rng.gen_range(1..=3);
        let mut pick = || {
            let k = rng.gen_range(0..=r);
            (random_kvector(&mut rng, r, k, 2), k)
        };
        let ((x, a), (y, b), (z, _)) = (pick(), pick(), pick());
        ensure(br(&x, &y) == -&br(&y, &x).scale(&sign(a, b)), "graded skew-symmetry fails")?;
        let rhs = &br(&br(&x, &y), &z) + &br(&y, &br(&x, &z)).scale(&sign(a, b));
        ensure(br(&x, &br(&y, &z)) == rhs, "graded Jacobi fails")?;
    }
    let p = mv(cat, "p1");
    let samples = 30;
    for i in 0..samples {
        let w = random_kvector(&mut rng, 4, i % 4, 2);
        ensure(br(p, &br(p, &w)).is_zero(), "[[p1,[[p1,w]]]] != 0")?;
    }
    Ok(format!("skew-symmetry and Jacobi on {triples} triples; d_p1^2 = 0 on {samples} multivectors"))
}

fn c12(cat: &Catalog) -> Outcome {
    let f = orient::flow(&tetrahedron(), mv(cat, "kk_gl2")).unwrap();
    ensure(f.is_zero(), "flow(tetrahedron, kk_gl2) != 0")?;
    Ok("flow(tetrahedron, kk_gl2) = 0".into())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, what: "Jacobi identity for p1, p2", bound: secs(2), run: c1 },
        Criterion { id: 2, what: "Euler homogeneity of p1, p2", bound: secs(1), run: c2 },
        Criterion { id: 3, what: "coboundary [[y,p]] = q", bound: secs(2), run: c3 },
        Criterion { id: 4, what: "tetrahedral flow = lambda q", bound: secs(120), run: c4 },
        Criterion { id: 5, what: "flow is a Poisson cocycle", bound: secs(120), run: c5 },
        Criterion { id: 6, what: "flow has scale 4", bound: secs(120), run: c6 },
        Criterion { id: 7, what: "cocycle1 vanishes on p1, p2", bound: secs(120), run: c7 },
        Criterion { id: 8, what: "cocycle1 on the Nambu quartic", bound: secs(60), run: c8 },
        Criterion { id: 9, what: "graph complex differential", bound: secs(30), run: c9 },
        Criterion { id: 10, what: "coboundary solver", bound: secs(120), run: c10 },
        Criterion { id: 11, what: "randomized bracket identities", bound: secs(60), run: c11 },
        Criterion { id: 12, what: "Kirillov-Kostant flow vanishes", bound: secs(60), run: c12 },
    ];
    let cat = match Catalog::builtin() {
        Ok(c) => c,
        Err(e) => {
            println!("catalog failed to load: {e:#}");
            return ExitCode::FAILURE;
        }
    };
    panic::set_hook(Box::new(|_| {}));
    let mut failed = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| (c.run)(&cat)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(d) if t > c.bound => Err(format!("{d}; too slow")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!(
            "criterion {:>2}  {tag}  {:<32} {detail} [{:.2} s, bound {} s]",
            c.id,
            c.what,
            t.as_secs_f64(),
            c.bound.as_secs()
        );
        if outcome.is_err() {
            failed.push(c.id);
        }
    }
    let _ = panic::take_hook();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {} criteria fail: {failed:?}", failed.len(), criteria.len());
        ExitCode::FAILURE
    }
}

