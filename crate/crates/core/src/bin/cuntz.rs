use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cuntz::car::transport::restrict_endomorphism;
use cuntz::dynamics::EvolutionExample;
use cuntz::io::suite::{csv_field, report_csv, run_timed, Backend, Config};
use cuntz::io::{parse_value, Experiment, Value};
use num_complex::Complex64;
use cuntz::morphisms::by_name;
use cuntz::perm_reps::{branching_number, enumerate_branch_labels, necklace_count};
use cuntz::states::{CarState, QuasiFreeState};
use cuntz::{Cplx, Error, Gauss};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cuntz", about = "Cuntz and CAR algebra calculator and verification suites")]
struct Cli {
    /// Write a JSON document to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    json: Option<String>,
    /// Write CSV rows to FILE.
    #[arg(long, global = true, value_name = "FILE")]
    csv: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Number C_n of primitive binary necklaces of length n.
    Necklace {
        #[arg(long)]
        n: u64,
    },
    /// B_p and the labels in the branching of the standard representation under φ_{σ_p}.
    Branch {
        #[arg(long)]
        p: usize,
    },
    /// Canonical form of a Cuntz or CAR expression.
    NormalForm { expr: String },
    /// Quasi-free state values: two-point table, or ω(expr) with --expr.
    State {
        #[arg(long, value_delimiter = ',', conflicts_with = "beta")]
        lambda: Vec<f64>,
        #[arg(long, requires = "eps")]
        beta: Option<f64>,
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long)]
        expr: Option<String>,
    },
    /// n-point function of an evolution example, ops like "a2@0.1,a1*@0.5".
    Npoint {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        example: u8,
        #[arg(long)]
        ops: String,
        #[arg(long, default_value_t = 1.0)]
        mu: f64,
        #[arg(long)]
        truncated: bool,
    },
    /// CAR restriction of a named endomorphism of O_2 on a_1..a_n.
    Restrict {
        #[arg(long)]
        endo: String,
        #[arg(long)]
        n: usize,
    },
    /// Evaluates a JSON experiment descriptor for an evolution example.
    Experiment { file: String },
    /// Runs a verification suite (or "all").
    Suite {
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        p_max: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// Text for stdout, JSON value, CSV rows, and whether every check passed.
struct Output {
    text: String,
    json: String,
    csv: String,
    ok: bool,
}

fn table(text: String, json: serde_json::Value, csv: String) -> Output {
    Output { text, json: serde_json::to_string_pretty(&json).expect("json"), csv, ok: true }
}

fn parse_op(s: &str) -> Result<(usize, bool, f64), Error> {
    let bad = || Error::Parse { pos: 0, msg: format!("expected aN[*]@t, got {s:?}") };
    let (op, t) = s.trim().split_once('@').ok_or_else(bad)?;
    let t: f64 = t.trim().parse().map_err(|_| bad())?;
    let op = op.trim().strip_prefix('a').ok_or_else(bad)?;
    let (num, dag) = match op.strip_suffix('*') {
        Some(n) => (n, true),
        None => (op, false),
    };
    let n: usize = num.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    Ok((n, dag, t))
}

fn run(cmd: Cmd) -> Result<Output, Error> {
    match cmd {
        Cmd::Necklace { n } => {
            let c = necklace_count(n)?;
            Ok(table(c.to_string(), json!({ "n": n, "C_n": c.to_string() }), format!("n,C_n\n{n},{c}\n")))
        }
        Cmd::Branch { p } => {
            if !(1..=cuntz::rfs::MAX_ORDER).contains(&p) {
                return Err(Error::Overflow(format!("p = {p}")));
            }
            let b = branching_number(p as u64)?;
            let labels: Vec<String> = enumerate_branch_labels(p).iter().map(|l| l.to_string()).collect();
            let text = format!("B_{p} = {b}\n{}", labels.join("\n"));
            let csv = labels.iter().fold("label\n".to_string(), |acc, l| format!("{acc}{}\n", csv_field(l)));
            Ok(table(text, json!({ "p": p, "B_p": b.to_string(), "labels": labels }), csv))
        }
        Cmd::NormalForm { expr } => {
            let text = match Backend::from_env()? {
                Backend::Exact => parse_value::<Gauss>(&expr, 2)?.canonical_text(),
                Backend::Float => parse_value::<Cplx>(&expr, 2)?.canonical_text(),
            };
            let csv = format!("input,normal_form\n{},{}\n", csv_field(&expr), csv_field(&text));
            Ok(table(text.clone(), json!({ "input": expr, "normal_form": text }), csv))
        }
        Cmd::State { lambda, beta, eps, expr } => {
            let st = match beta {
                Some(b) => QuasiFreeState::from_kms(b, &eps)?,
                None => QuasiFreeState::new(lambda)?,
            };
            match expr {
                Some(e) => {
                    let x = match parse_value::<Cplx>(&e, 2)? {
                        Value::Scalar(c) => cuntz::car::CarPoly::scalar(c),
                        v => v.into_car()?,
                    };
                    let w = st.omega(&x)?;
                    let text = format!("{}", Cplx(w));
                    let csv = format!("expr,re,im\n{},{},{}\n", csv_field(&e), w.re, w.im);
                    Ok(table(text, json!({ "lambda": st.lambdas(), "expr": e, "re": w.re, "im": w.im }), csv))
                }
                None => {
                    let mut rows = Vec::new();
                    for n in 1..=2 * st.p() {
                        let x = &cuntz::car::CarPoly::a_dag(n) * &cuntz::car::CarPoly::a(n);
                        rows.push((n, st.omega(&x)?.re));
                    }
                    let text =
                        rows.iter().map(|(n, v)| format!("ω(a{n}* a{n}) = {v:.12}")).collect::<Vec<_>>().join("\n");
                    let csv = rows.iter().fold("mode,occupation\n".to_string(), |a, (n, v)| format!("{a}{n},{v}\n"));
                    let j = json!({ "lambda": st.lambdas(), "occupation": rows.iter().map(|r| r.1).collect::<Vec<_>>() });
                    Ok(table(text, j, csv))
                }
            }
        }
        Cmd::Npoint { example, ops, mu, truncated } => {
            let ops: Vec<(usize, bool, f64)> = ops.split(',').map(parse_op).collect::<Result<_, _>>()?;
            let ex = EvolutionExample::new(example, mu)?;
            let w = ex.npoint(&ops, truncated)?;
            let text = format!("{}", Cplx(w));
            let csv = format!("re,im\n{},{}\n", w.re, w.im);
            Ok(table(text, json!({ "example": example, "truncated": truncated, "re": w.re, "im": w.im }), csv))
        }
        Cmd::Restrict { endo, n } => {
            let m = by_name::<Gauss>(&endo)?;
            let car = restrict_endomorphism(&m, n)?;
            let rows: Vec<(usize, String)> =
                car.rules().iter().enumerate().map(|(k, r)| (k + 1, r.pretty())).collect();
            let text = rows.iter().map(|(k, r)| format!("a{k} -> {r}")).collect::<Vec<_>>().join("\n");
            let csv = rows.iter().fold("mode,image\n".to_string(), |a, (k, r)| format!("{a}{k},{}\n", csv_field(r)));
            let j = json!({ "endomorphism": endo, "images": rows.iter().map(|r| &r.1).collect::<Vec<_>>() });
            Ok(table(text, j, csv))
        }
        Cmd::Experiment { file } => {
            let text = fs::read_to_string(&file).map_err(|e| Error::Precondition(format!("{file}: {e}")))?;
            let table = Experiment::from_json(&text)?.run()?;
            let lines: Vec<String> =
                table.rows.iter().map(|r| format!("t={:<8} {:<24} {}", r.t, r.column, Cplx(Complex64::new(r.re, r.im)))).collect();
            Ok(Output { text: lines.join("\n"), json: table.to_json(), csv: table.to_csv(), ok: true })
        }
        Cmd::Suite { name, seed, samples, p_max, n_max, tol } => {
            let d = Config::default();
            let cfg = Config {
                seed: seed.unwrap_or(d.seed),
                samples: samples.unwrap_or(d.samples),
                p_max: p_max.unwrap_or(d.p_max),
                n_max: n_max.unwrap_or(d.n_max),
                tol: tol.unwrap_or(d.tol),
                backend: Backend::from_env()?,
                ..d
            };
            let run = run_timed(&name, &cfg)?;
            Ok(Output {
                text: format!("{}elapsed {} ms", run.report, run.elapsed_ms),
                json: run.to_json(),
                csv: report_csv(&run.report),
                ok: run.report.all_pass(),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(cli.cmd) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    println!("{}", out.text.trim_end());
    let writes = [
        (cli.json.as_deref(), out.json),
        (cli.csv.as_deref(), out.csv),
    ];
    for (path, body) in writes {
        if let Some(p) = path {
            if let Err(e) = fs::write(p, body) {
                eprintln!("error: cannot write {p}: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
