use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use graphflow::multivec::{self, HomogeneityReport, Multivector};
use graphflow::{cohomsolve, gracomplex, orient, Exec};
use graphflow_cli::catalog::{self, Catalog, Kind};
use graphflow_cli::input;
use graphflow_cli::verify::{self, VerifyOptions};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "graphflow", version, about = "Graph flows on polynomial Poisson bivectors")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Run single-threaded.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

/// Multivector, graph and polynomial arguments accept a catalog name, a file
/// path, or the object in text form.
#[derive(Subcommand)]
enum Command {
    /// Schouten bracket [[A,B]].
    Schouten { a: String, b: String },
    /// Jacobiator ½[[P,P]] of a bivector.
    Jacobi { poisson: String },
    /// The scale λ with [[V,P]] = λP.
    Scale {
        #[arg(long)]
        field: String,
        #[arg(long)]
        poisson: String,
    },
    /// Or(γ)(P ⊗ … ⊗ P).
    Flow {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        poisson: String,
    },
    /// Σ_k Or(γ)(P, …, V, …, P) with V in slot k.
    Cocycle1 {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        poisson: String,
    },
    /// Solve Q = [[Y,P]] for Y with homogeneous polynomial components.
    Trivialize {
        #[arg(long)]
        cocycle: String,
        #[arg(long)]
        poisson: String,
        /// Component degree of Y; defaults to deg Q − deg P + 1.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Graph differential d(γ).
    GraphD { graph: String },
    /// Graph bracket [A,B].
    GraphBracket { a: String, b: String },
    /// List catalog entries, or print one.
    Catalog { name: Option<String> },
    /// Nambu bracket ρ·det ∂(a,f,g)/∂(x,y,z) on ℝ³.
    Nambu {
        #[arg(long)]
        casimir: String,
        #[arg(long, default_value = "1")]
        density: String,
    },
    /// Run the built-in verification suite.
    VerifyPaper {
        /// Include per-check timings (output is then not reproducible).
        #[arg(long)]
        timing: bool,
    },
}

struct Reply {
    text: String,
    machine: Value,
    ok: bool,
}

impl Reply {
    fn new(command: &str, result: impl ToString) -> Reply {
        let text = result.to_string();
        Reply { machine: json!({ "command": command, "result": text }), text, ok: true }
    }

    fn with(mut self, key: &str, v: Value) -> Reply {
        self.machine[key] = v;
        self
    }
}

fn warn_if_not_cocycle(g: &gracomplex::GraphSum) -> anyhow::Result<()> {
    if !gracomplex::is_cocycle(g)? {
        eprintln!("warning: the graph is not a cocycle (d γ ≠ 0); the result need not be a Poisson cocycle");
    }
    Ok(())
}

fn run(cli: &Cli, cat: &Catalog) -> anyhow::Result<Reply> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    Ok(match &cli.command {
        Command::Schouten { a, b } => {
            let v = input::multivectors(cat, &[a, b])?;
            Reply::new("schouten", multivec::schouten(&v[0], &v[1])?)
        }
        Command::Jacobi { poisson } => {
            let p = input::multivector(cat, poisson)?;
            let j = multivec::jacobiator(&p)?;
            let zero = j.is_zero();
            Reply::new("jacobi", &j).with("poisson", json!(zero))
        }
        Command::Scale { field, poisson } => {
            let v = input::multivectors(cat, &[field, poisson])?;
            let s = match multivec::homogeneity_scale(&v[0], &v[1])? {
                HomogeneityReport::Scale(l) => l.to_string(),
                HomogeneityReport::Any => "any".into(),
                HomogeneityReport::Inhomogeneous => "none".into(),
            };
            Reply::new("scale", s)
        }
        Command::Flow { graph, poisson } => {
            let g = input::graph(cat, graph)?;
            warn_if_not_cocycle(&g)?;
            let p = input::multivector(cat, poisson)?;
            Reply::new("flow", orient::flow_with(exec, &g, &p)?)
        }
        Command::Cocycle1 { graph, field, poisson } => {
            let g = input::graph(cat, graph)?;
            warn_if_not_cocycle(&g)?;
            let v = input::multivectors(cat, &[field, poisson])?;
            Reply::new("cocycle1", orient::cocycle1_with(exec, &g, &v[0], &v[1])?)
        }
        Command::Trivialize { cocycle, poisson, degree } => {
            let v = input::multivectors(cat, &[cocycle, poisson])?;
            let (q, p) = (&v[0], &v[1]);
            let d = match degree {
                Some(d) => *d,
                None => cohomsolve::default_degree(q, p)?,
            };
            let sol = cohomsolve::trivialize_with(exec, q, p, Some(d))?;
            let kernel: Vec<String> = sol.kernel_basis.iter().map(Multivector::to_string).collect();
            let (status, witness) = match &sol.status {
                cohomsolve::Status::Solved => ("solved", Value::Null),
                cohomsolve::Status::Infeasible(w) => (
                    "infeasible",
                    json!({
                        "component": w.component.indices().map(|i| i + 1).collect::<Vec<_>>(),
                        "monomial": w.monomial.exponents(),
                        "residual": w.residual.to_string(),
                    }),
                ),
            };
            let mut text = format!("status: {status}\ndegree: {d}\nkernel_dim: {}\n", sol.kernel_dim());
            if sol.is_solved() {
                text.push_str(&format!("particular: {}\n", sol.particular));
            } else {
                text.push_str(&format!("witness: {witness}\n"));
            }
            text.push_str("kernel:");
            for k in &kernel {
                text.push_str(&format!("\n{k}"));
            }
            Reply { machine: Value::Null, text, ok: true }
                .with("command", json!("trivialize"))
                .with("status", json!(status))
                .with("degree", json!(d))
                .with("kernel_dim", json!(sol.kernel_dim()))
                .with("particular", json!(sol.particular.to_string()))
                .with("kernel", json!(kernel))
                .with("witness", witness)
        }
        Command::GraphD { graph } => {
            let g = input::graph(cat, graph)?;
            Reply::new("graph-d", gracomplex::differential_with(exec, &g)?)
        }
        Command::GraphBracket { a, b } => {
            let (a, b) = (input::graph(cat, a)?, input::graph(cat, b)?);
            Reply::new("graph-bracket", gracomplex::bracket_with(exec, &a, &b)?)
        }
        Command::Catalog { name: Some(name) } => {
            let e = cat.get(name).with_context(|| format!("no catalog entry '{name}'"))?;
            Reply::new("catalog", &e.payload)
                .with("name", json!(e.name))
                .with("dimension", json!(e.dimension))
                .with("note", json!(e.note))
        }
        Command::Catalog { name: None } => {
            let mut lines = Vec::new();
            let mut list = Vec::new();
            for e in cat.entries() {
                let kind = match e.kind {
                    Kind::Poisson | Kind::NambuCasimir => "poisson",
                    Kind::Bivector => "bivector",
                    Kind::Field => "field",
                    Kind::Graph => "graph",
                };
                let mut note = e.note.clone();
                if let Some(None) = e.homogenizing_field {
                    note.push_str("; no polynomial homogenizing field");
                }
                let dim = if e.kind == Kind::Graph { "-".to_string() } else { e.dimension.to_string() };
                lines.push(format!("{:<14} {:<9} r={dim:<2} {note}", e.name, kind));
                list.push(json!({ "name": e.name, "kind": kind, "dimension": e.dimension, "note": note }));
            }
            Reply::new("catalog", lines.join("\n")).with("entries", json!(list))
        }
        Command::Nambu { casimir, density } => {
            let (a, rho) = (input::poly(casimir, 3)?, input::poly(density, 3)?);
            let p = catalog::nambu_bivector(&a, &rho)?;
            let hom = cohomsolve::linear_homogenizing_field(&p)?;
            if hom.is_none() {
                eprintln!("note: no polynomial vector field V satisfies [[V,P]] = P");
            }
            Reply::new("nambu", &p).with("homogenizing_field", json!(hom.map(|v| v.to_string())))
        }
        Command::VerifyPaper { timing } => {
            let report = verify::verify_paper(cat, VerifyOptions { exec, timing: *timing });
            Reply { text: report.render_text().trim_end().to_string(), machine: serde_json::to_value(&report)?, ok: report.passed() }
        }
    })
}

fn emit(cli: &Cli, reply: &Reply) -> anyhow::Result<()> {
    let body = match cli.format {
        Format::Text => format!("{}\n", reply.text),
        Format::Machine => format!("{}\n", serde_json::to_string_pretty(&reply.machine)?),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = Catalog::builtin().and_then(|cat| run(&cli, &cat)).and_then(|reply| {
        emit(&cli, &reply)?;
        Ok(reply.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
