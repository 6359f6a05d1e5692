//! The verification suite run by `graphflow verify-paper`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use anyhow::{anyhow, Context};
use graphflow::cohomsolve;
use graphflow::gracomplex::{self, Graph, GraphSum};
use graphflow::multivec::{self, HomogeneityReport, Multivector};
use graphflow::orient::{self, VertexTuple};
use graphflow::ratpoly::{rat, Rational};
use graphflow::Exec;
use serde::{Deserialize, Serialize};

use crate::catalog::Catalog;

/// Frozen values compared against on every run.
#[derive(Clone, Debug, PartialEq)]
pub struct Regression {
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub kernel_dim_p1: usize,
    pub kernel_dim_p2: usize,
}

#[derive(Deserialize)]
struct RawRegression {
    lambda1: String,
    lambda2: String,
    kernel_dim_p1: usize,
    kernel_dim_p2: usize,
}

impl Regression {
    pub fn parse(text: &str) -> anyhow::Result<Regression> {
        let raw: RawRegression = toml::from_str(text)?;
        let q = |s: &str| s.parse::<Rational>().map_err(|e| anyhow!("bad rational '{s}': {e}"));
        Ok(Regression {
            lambda1: q(&raw.lambda1)?,
            lambda2: q(&raw.lambda2)?,
            kernel_dim_p1: raw.kernel_dim_p1,
            kernel_dim_p2: raw.kernel_dim_p2,
        })
    }

    pub fn builtin() -> Regression {
        Regression::parse(include_str!("../fixtures/regression.toml")).expect("checked-in regression fixture")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub criterion: u8,
    pub description: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    pub outputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_ids(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect()
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = write!(s, "{}  {:<width$}  {}", if c.passed { "PASS" } else { "FAIL" }, c.id, c.description);
            if !c.detail.is_empty() {
                let _ = write!(s, "  [{}]", c.detail);
            }
            s.push('\n');
        }
        for (k, v) in &self.outputs {
            let _ = writeln!(s, "{k} = {v}");
        }
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                let _ = writeln!(s, "time {k} = {v} ms");
            }
        }
        let n = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(s, "passed {n}/{}", self.checks.len());
        s
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub exec: Exec,
    pub timing: bool,
}

struct Recorder {
    checks: Vec<Check>,
    outputs: BTreeMap<String, String>,
    timing: Option<BTreeMap<String, u128>>,
}

type Outcome = anyhow::Result<(bool, String)>;

impl Recorder {
    fn check(&mut self, id: &str, criterion: u8, description: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e:#}")));
        if let Some(t) = &mut self.timing {
            t.insert(id.to_string(), start.elapsed().as_millis());
        }
        self.checks.push(Check {
            id: id.into(),
            criterion,
            description: description.into(),
            passed,
            detail,
        });
    }

    fn timed<T>(&mut self, key: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let v = f();
        if let Some(t) = &mut self.timing {
            t.insert(key.to_string(), start.elapsed().as_millis());
        }
        v
    }
}

fn zero_detail(m: &Multivector) -> String {
    if m.is_zero() {
        String::new()
    } else {
        format!("{} nonzero components", m.num_components())
    }
}

/// Same outcome for a cached computation that may have failed.
fn cached<T>(r: &Result<T, String>) -> anyhow::Result<&T> {
    r.as_ref().map_err(|e| anyhow!("{e}"))
}

fn dd_vanishes(graphs: &[Graph], exec: Exec) -> Outcome {
    for g in graphs {
        let s = GraphSum::single(g.clone())?;
        let dd = gracomplex::differential_with(exec, &gracomplex::differential_with(exec, &s)?)?;
        if !dd.is_empty() {
            return Ok((false, format!("d(d({g})) has {} terms", dd.len())));
        }
    }
    Ok((true, format!("{} graphs", graphs.len())))
}

pub fn verify_paper(cat: &Catalog, opts: VerifyOptions) -> RunReport {
    verify_with(cat, &Regression::builtin(), opts)
}

pub fn verify_with(cat: &Catalog, reg: &Regression, opts: VerifyOptions) -> RunReport {
    let exec = opts.exec;
    let mut r = Recorder {
        checks: Vec::new(),
        outputs: BTreeMap::new(),
        timing: opts.timing.then(BTreeMap::new),
    };
    let get = |n: &str| cat.multivector(n).cloned().map_err(|e| e.to_string());
    let tetra = cat.graph("tetrahedron").cloned().map_err(|e| e.to_string());
    let euler = get("euler");

    for (i, lambda, kdim) in [(1, &reg.lambda1, reg.kernel_dim_p1), (2, &reg.lambda2, reg.kernel_dim_p2)] {
        let (pn, qn, yn) = (format!("p{i}"), format!("q{i}"), format!("y{i}"));
        let (p, q, y) = (get(&pn), get(&qn), get(&yn));
        let tag = format!("P{i}");

        r.check(&format!("1.{tag}"), 1, &format!("jacobiator({pn}) = 0"), || {
            let j = multivec::jacobiator(cached(&p)?)?;
            Ok((j.is_zero(), zero_detail(&j)))
        });
        r.check(&format!("2.{tag}"), 2, &format!("[[euler,{pn}]] = {pn}"), || {
            Ok(match multivec::homogeneity_scale(cached(&euler)?, cached(&p)?)? {
                HomogeneityReport::Scale(l) => (l == rat(1), format!("scale {l}")),
                other => (false, format!("{other:?}")),
            })
        });
        r.check(&format!("3.{tag}"), 3, &format!("[[{yn},{pn}]] = {qn}"), || {
            let (p, q, y) = (cached(&p)?, cached(&q)?, cached(&y)?);
            let b = multivec::schouten(y, p)?;
            if &b == q {
                Ok((true, String::new()))
            } else if b == -q {
                Ok((false, format!("[[{yn},{pn}]] = -{qn} exactly")))
            } else {
                Ok((false, format!("differs from {qn} in {} components", (&b - q).num_components())))
            }
        });

        let flow = r.timed(&format!("flow.{tag}"), || -> Result<Multivector, String> {
            let (g, p) = (cached(&tetra).map_err(|e| e.to_string())?, cached(&p).map_err(|e| e.to_string())?);
            orient::flow_with(exec, g, p).map_err(|e| e.to_string())
        });
        r.check(&format!("4.{tag}"), 4, &format!("flow(tetrahedron,{pn}) = lambda{i}*{qn}"), || {
            let f = cached(&flow)?;
            match f.proportionality(cached(&q)?) {
                Some(l) => Ok((&l == lambda, format!("lambda{i} = {l}, frozen {lambda}"))),
                None => Ok((false, "not proportional".into())),
            }
        });
        if let Ok(f) = &flow {
            if let Ok(q) = &q {
                if let Some(l) = f.proportionality(q) {
                    r.outputs.insert(format!("lambda{i}"), l.to_string());
                }
            }
        }
        r.check(&format!("4.{tag}.routes"), 4, "factorized and sheeted evaluation agree", || {
            let (g, p) = (cached(&tetra)?, cached(&p)?);
            let t = VertexTuple::repeat(p, 4)?;
            let e = orient::evaluate_expanded(g, &t)?;
            Ok((&e == cached(&flow)?, String::new()))
        });
        r.check(&format!("5.{tag}"), 5, &format!("[[{pn},flow]] = 0"), || {
            let b = multivec::schouten(cached(&p)?, cached(&flow)?)?;
            Ok((b.is_zero(), zero_detail(&b)))
        });
        r.check(&format!("6.{tag}"), 6, "[[euler,flow]] = 4*flow", || {
            let f = cached(&flow)?;
            let b = multivec::schouten(cached(&euler)?, f)?;
            Ok((b == f.scale(&rat(4)) && !f.is_zero(), String::new()))
        });
        r.check(&format!("7.{tag}"), 7, &format!("cocycle1(tetrahedron,euler,{pn}) = 0"), || {
            let x = orient::cocycle1_with(exec, cached(&tetra)?, cached(&euler)?, cached(&p)?)?;
            Ok((x.is_zero(), zero_detail(&x)))
        });

        let sol = r.timed(&format!("trivialize.{tag}"), || -> Result<cohomsolve::Solution, String> {
            let (p, q) = (cached(&p).map_err(|e| e.to_string())?, cached(&q).map_err(|e| e.to_string())?);
            cohomsolve::trivialize_with(exec, q, p, Some(4)).map_err(|e| e.to_string())
        });
        r.check(&format!("10.{tag}.solve"), 10, &format!("trivialize({qn},{pn}) solved, zero residual"), || {
            let s = cached(&sol)?;
            if !s.is_solved() {
                return Ok((false, format!("{:?}", s.status)));
            }
            let res = &multivec::schouten(&s.particular, cached(&p)?)? - cached(&q)?;
            Ok((res.is_zero(), zero_detail(&res)))
        });
        r.check(&format!("10.{tag}.member"), 10, &format!("{yn} in particular + span(kernel)"), || {
            let (s, y) = (cached(&sol)?, cached(&y)?);
            if s.contains(y) {
                Ok((true, String::new()))
            } else if s.contains(&-y) {
                Ok((false, format!("-{yn} is a member, {yn} is not")))
            } else {
                Ok((false, "neither sign is a member".into()))
            }
        });
        r.check(&format!("10.{tag}.kernel"), 10, "kernel dimension at degree 4", || {
            let k = cached(&sol)?.kernel_dim();
            Ok((k == kdim, format!("dim {k}, frozen {kdim}")))
        });
        if let Ok(s) = &sol {
            r.outputs.insert(format!("kernel_dim_{pn}"), s.kernel_dim().to_string());
        }
    }

    let nambu = get("nambu_quartic");
    let mut nambu_x = None;
    r.check("8.nambu", 8, "[[cocycle1(tetrahedron,euler,nambu_quartic), nambu_quartic]] = 0", || {
        let p = cached(&nambu)?;
        let e3 = multivec::euler_field(3)?;
        let x = orient::cocycle1_with(exec, cached(&tetra)?, &e3, p)?;
        let b = multivec::schouten(&x, p)?;
        let detail = if x.is_zero() { "X = 0".to_string() } else { format!("X = {x}") };
        nambu_x = Some(x);
        Ok((b.is_zero(), detail))
    });
    if let Some(x) = &nambu_x {
        r.outputs.insert("nambu_x_vanishes".into(), x.is_zero().to_string());
    }
    r.check("8.nambu.trivialize", 8, "trivialize(flow(tetrahedron,nambu_quartic)) at degree 4 runs", || {
        let p = cached(&nambu)?;
        let f = orient::flow_with(exec, cached(&tetra)?, p)?;
        let s = cohomsolve::trivialize_with(exec, &f, p, Some(4))?;
        let status = if s.is_solved() { "solved" } else { "infeasible" };
        Ok((true, format!("flow {}; {status}; kernel dim {}", if f.is_zero() { "= 0" } else { "!= 0" }, s.kernel_dim())))
    });

    r.check("9.point", 9, "d(dot) = -stick", || {
        let d = gracomplex::differential_with(exec, &GraphSum::single(Graph::dot())?)?;
        let mut want = GraphSum::new();
        want.add(Graph::stick(), rat(-1))?;
        Ok((d == want, d.to_string().replace('\n', " ")))
    });
    r.check("9.tetrahedron", 9, "d(tetrahedron) = 0", || {
        let d = gracomplex::differential_with(exec, cached(&tetra)?)?;
        Ok((d.is_empty(), format!("{} terms", d.len())))
    });
    r.check("9.dd", 9, "d(d(g)) = 0 for all connected g with at most 5 vertices", || {
        let mut all = Vec::new();
        for n in 1..=5 {
            all.extend(gracomplex::connected_graphs(n)?);
        }
        dd_vanishes(&all, exec)
    });

    r.check("11.dP2", 11, "[[p1,[[p1,w]]]] = 0 for sample multivectors w", || {
        let p1 = get("p1");
        let p = cached(&p1)?;
        let samples = [
            "(x1^2*x3)",
            "(x2*x4) xi1 + (x1^2) xi3",
            "(x3) xi1 xi2 + (x1*x4) xi2 xi4",
            "(x2^2) xi1 xi2 xi4 + (x1*x3) xi1 xi3 xi4",
        ];
        for s in samples {
            let w = Multivector::parse(s, Some(4))?;
            let b = multivec::schouten(p, &multivec::schouten(p, &w)?)?;
            if !b.is_zero() {
                return Ok((false, format!("fails for {s}")));
            }
        }
        Ok((true, format!("{} samples", samples.len())))
    });

    r.check("12.kk", 12, "flow(tetrahedron,kk_gl2) = 0", || {
        let kk = get("kk_gl2");
        let f = orient::flow_with(exec, cached(&tetra)?, cached(&kk)?).context("flow")?;
        Ok((f.is_zero(), zero_detail(&f)))
    });

    r.checks.sort_by_key(|a| a.criterion);
    RunReport {
        command: "verify-paper".into(),
        inputs: ["p1", "q1", "y1", "p2", "q2", "y2", "euler", "kk_gl2", "nambu_quartic", "tetrahedron"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        outputs: r.outputs,
        checks: r.checks,
        timing_ms: r.timing,
    }
}
