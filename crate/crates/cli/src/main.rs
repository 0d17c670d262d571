use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gt_core::render;
use gt_core::sl3::{restriction_decomposition, restriction_mult, witness_no_gelfand};
use gt_core::tensor::{classify_gelfand, decompose, ind_decompose};
use gt_core::{CharTable, Gl2Irrep, GroupParams, MultTable, Report, Sl3Irrep, Suite};

const GL2_GRAMMAR: &str = "GL2 irrep labels: U:a | V:a | W:a,b (a < b) | X:n (n != 0 mod q+1, canonical min(n, qn mod q^2-1))";
const SL3_GRAMMAR: &str = "SL3 irrep labels: piQS | piT:u (1 <= u < q-1) | piRT:u (u != 0 mod q+1)";

#[derive(Debug, Parser)]
#[command(name = "gt", version, about = "Exact character theory of GL2(q), its tensor products and SL3(q) restrictions")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Common {
    /// Field size, a prime power
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Conjugacy classes of GL2(q)
    Classes(Common),
    /// Irreducible representations of GL2(q)
    Irreps(Common),
    /// Full character table
    Chartable(Common),
    /// Decomposition of LEFT (x) RIGHT
    Tensor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Constituents of the module induced from PI on diag GL2(q) to GL2(q) x GL2(q)
    Induct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pi: String,
    },
    /// Irreps inducing multiplicity free from the diagonal
    Gelfand(Common),
    /// Restriction of an SL3(q) irrep to GL2(q)
    Sl3Restrict {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        irrep: String,
        /// Report only the multiplicity of this GL2 irrep
        #[arg(long)]
        to: Option<String>,
    },
    /// Witnesses that no GL2(q) irrep induces multiplicity free to SL3(q)
    Sl3Witness {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pi: Option<String>,
    },
    /// Run verification suites
    Verify {
        /// Comma-separated field sizes
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
        /// Suite name or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Run every prime power up to this bound
        #[arg(long)]
        max_q: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Verification,
    Runtime(String),
}

type Outcome = Result<String, Failure>;

fn usage(e: impl std::fmt::Display, grammar: &str) -> Failure {
    Failure::Usage(format!("{e}\n{grammar}"))
}

fn params(q: u64) -> Result<GroupParams, Failure> {
    GroupParams::new(q).map_err(|e| Failure::Usage(e.to_string()))
}

fn gl2_label(text: &str, g: &GroupParams) -> Result<Gl2Irrep, Failure> {
    Gl2Irrep::parse(text, g).map_err(|e| usage(e, GL2_GRAMMAR))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json serializes") + "\n"
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| if f.contains([',', '"']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() })
        .collect();
    quoted.join(",") + "\n"
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure::Runtime(e.to_string())
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Classes(c) => {
            let g = params(c.q)?;
            Ok(match c.format {
                Format::Text => render::classes_text(&g),
                Format::Json => pretty(&render::classes_json(&g)),
                Format::Csv => render::classes_csv(&g),
            })
        }
        Command::Irreps(c) => {
            let g = params(c.q)?;
            Ok(match c.format {
                Format::Text => render::irreps_text(&g),
                Format::Json => pretty(&render::irreps_json(&g)),
                Format::Csv => render::irreps_csv(&g),
            })
        }
        Command::Chartable(c) => {
            let t = CharTable::new(params(c.q)?);
            Ok(match c.format {
                Format::Text => render::chartable_text(&t),
                Format::Json => pretty(&render::chartable_json(&t)),
                Format::Csv => render::chartable_csv(&t),
            })
        }
        Command::Tensor { common, left, right } => {
            let g = params(common.q)?;
            let (a, b) = (gl2_label(&left, &g)?, gl2_label(&right, &g)?);
            let d = decompose(&a, &b, &g).map_err(runtime)?;
            Ok(match common.format {
                Format::Json => pretty(&d.to_json()),
                Format::Csv => {
                    let mut out = csv_line(&["irrep".into(), "mult".into(), "dim".into()]);
                    for (p, m) in &d.constituents {
                        out += &csv_line(&[p.to_string(), m.to_string(), p.dim(&g).to_string()]);
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("{a} (x) {b} at q={}, dim {}\n", g.q, a.dim(&g) * b.dim(&g));
                    for (p, m) in &d.constituents {
                        out += &format!("  {:<10} mult {m}  dim {}\n", p.to_string(), p.dim(&g));
                    }
                    out + &format!("dim_check: {}\n", d.dim_check)
                }
            })
        }
        Command::Induct { common, pi } => {
            let g = params(common.q)?;
            let p = gl2_label(&pi, &g)?;
            let table = MultTable::new(g);
            let parts = ind_decompose(&p, &table).map_err(runtime)?;
            let sum_m2: u64 = parts.iter().map(|(_, m)| m * m).sum();
            let free = parts.iter().all(|(_, m)| *m <= 1);
            Ok(match common.format {
                Format::Json => pretty(&json!({
                    "q": g.q,
                    "pi": p.to_string(),
                    "constituents": parts.iter().map(|((x, y), m)| json!({"left": x.to_string(), "right": y.to_string(), "mult": m})).collect::<Vec<_>>(),
                    "count": parts.len(),
                    "sum_m2": sum_m2,
                    "multiplicity_free": free,
                })),
                Format::Csv => {
                    let mut out = csv_line(&["left".into(), "right".into(), "mult".into()]);
                    for ((x, y), m) in &parts {
                        out += &csv_line(&[x.to_string(), y.to_string(), m.to_string()]);
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("Ind {p} at q={}: {} constituents, sum m^2 = {sum_m2}, multiplicity free: {free}\n", g.q, parts.len());
                    for ((x, y), m) in &parts {
                        out += &format!("  {x} (x) {y}  mult {m}\n");
                    }
                    out
                }
            })
        }
        Command::Gelfand(c) => {
            let g = params(c.q)?;
            let set = classify_gelfand(&MultTable::new(g)).map_err(runtime)?;
            Ok(match c.format {
                Format::Json => pretty(&json!({"q": g.q, "gelfand": set.iter().map(ToString::to_string).collect::<Vec<_>>()})),
                Format::Csv => {
                    let mut out = csv_line(&["irrep".into(), "dim".into()]);
                    for p in &set {
                        out += &csv_line(&[p.to_string(), p.dim(&g).to_string()]);
                    }
                    out
                }
                Format::Text => set.iter().map(|p| format!("{p}  dim {}\n", p.dim(&g))).collect(),
            })
        }
        Command::Sl3Restrict { common, irrep, to } => {
            let g = params(common.q)?;
            let pi = Sl3Irrep::parse(&irrep, &g).map_err(|e| usage(e, SL3_GRAMMAR))?;
            if let Some(to) = to {
                let tau = gl2_label(&to, &g)?;
                let m = restriction_mult(&pi, &tau, &g).map_err(runtime)?;
                return Ok(match common.format {
                    Format::Json => pretty(&json!({"q": g.q, "irrep": pi.to_string(), "to": tau.to_string(), "mult": m})),
                    Format::Csv => csv_line(&["irrep".into(), "to".into(), "mult".into()]) + &csv_line(&[pi.to_string(), tau.to_string(), m.to_string()]),
                    Format::Text => format!("[Res {pi} : {tau}] = {m}\n"),
                });
            }
            let parts = restriction_decomposition(&pi, &g).map_err(runtime)?;
            Ok(match common.format {
                Format::Json => pretty(&json!({
                    "q": g.q,
                    "irrep": pi.to_string(),
                    "dim": pi.dim(&g),
                    "constituents": parts.iter().map(|(t, m)| json!({"irrep": t.to_string(), "mult": m})).collect::<Vec<_>>(),
                })),
                Format::Csv => {
                    let mut out = csv_line(&["irrep".into(), "mult".into(), "dim".into()]);
                    for (t, m) in &parts {
                        out += &csv_line(&[t.to_string(), m.to_string(), t.dim(&g).to_string()]);
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("Res {pi} (dim {}) to GL2({})\n", pi.dim(&g), g.q);
                    for (t, m) in &parts {
                        out += &format!("  {:<10} mult {m}\n", t.to_string());
                    }
                    out
                }
            })
        }
        Command::Sl3Witness { common, pi } => {
            let g = params(common.q)?;
            let taus = match pi {
                Some(text) => vec![gl2_label(&text, &g)?],
                None => g.irreps(),
            };
            let ws = taus.iter().map(|t| witness_no_gelfand(t, &g)).collect::<Result<Vec<_>, _>>().map_err(runtime)?;
            Ok(match common.format {
                Format::Json => pretty(&json!({"q": g.q, "d": g.d, "witnesses": ws})),
                Format::Csv => {
                    let mut out = csv_line(&["tau".into(), "witness".into(), "mult".into(), "expected".into(), "exceeds_two_for_x".into()]);
                    for w in &ws {
                        out += &csv_line(&[w.tau.clone(), w.pi.clone(), w.mult.to_string(), w.expected.to_string(), w.exceeds_two_for_x.to_string()]);
                    }
                    out
                }
                Format::Text => ws
                    .iter()
                    .map(|w| {
                        let flag = if w.exceeds_two_for_x { "  (exceeds two, d = 3)" } else { "" };
                        format!("{:<10} in {:<10} mult {}{flag}\n", w.tau, w.pi, w.mult)
                    })
                    .collect(),
            })
        }
        Command::Verify { q, suite, seed, max_q, format } => verify(q, &suite, seed, max_q, format),
    }
}

fn prime_powers(max: u64) -> Vec<u64> {
    (2..=max).filter(|&q| GroupParams::new(q).is_ok()).collect()
}

fn verify(qs: Vec<u64>, suite: &str, seed: u64, max_q: Option<u64>, format: Format) -> Outcome {
    let suites = Suite::parse_selector(suite).map_err(|e| {
        let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
        Failure::Usage(format!("{e}\nsuites: {} | all", names.join(" | ")))
    })?;
    let qs = match (qs.is_empty(), max_q) {
        (true, None) => return Err(Failure::Usage("verify needs --q or --max-q".into())),
        (true, Some(m)) => prime_powers(m),
        (false, m) => qs.into_iter().filter(|&q| m.is_none_or(|m| q <= m)).collect(),
    };
    for &q in &qs {
        params(q)?;
    }
    let single = suites.len() == 1;
    let budget = std::env::var("GT_BUDGET_SECONDS").ok().and_then(|s| s.parse::<f64>().ok());
    let start = Instant::now();
    let mut reports: Vec<Report> = Vec::new();
    let mut skipped: Vec<Value> = Vec::new();
    for s in suites {
        let (lo, hi) = s.q_range();
        let targets: Vec<u64> = if s.uses_q() { qs.clone() } else { vec![0] };
        for q in targets {
            if s.uses_q() && !(lo..=hi).contains(&q) {
                if single {
                    return Err(Failure::Usage(format!("suite {s} supports {lo} <= q <= {hi}, got q = {q}")));
                }
                skipped.push(json!({"suite": s.name(), "q": q, "reason": format!("outside {lo}..={hi}")}));
                continue;
            }
            if budget.is_some_and(|b| start.elapsed().as_secs_f64() > b) {
                skipped.push(json!({"suite": s.name(), "q": q, "reason": "budget"}));
                continue;
            }
            reports.push(gt_core::run_suite(s, q, seed).map_err(runtime)?);
        }
    }
    let pass = reports.iter().all(|r| r.pass);
    let body = match format {
        Format::Json => pretty(&json!({"pass": pass, "reports": reports, "skipped": skipped})),
        Format::Csv => {
            let mut out = csv_line(&["check".into(), "q".into(), "result".into()]);
            for r in &reports {
                out += &csv_line(&[r.check.clone(), r.q.to_string(), if r.pass { "PASS" } else { "FAIL" }.into()]);
            }
            for s in &skipped {
                out += &csv_line(&[s["suite"].as_str().unwrap_or("").into(), s["q"].to_string(), "SKIP".into()]);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in &reports {
                out += &format!("{r}\n");
                if !r.pass {
                    for d in r.details.iter().filter(|d| d.get("ok") == Some(&Value::Bool(false))) {
                        out += &format!("  {d}\n");
                    }
                }
            }
            for s in &skipped {
                out += &format!("{} q={}: SKIP ({})\n", s["suite"].as_str().unwrap_or(""), s["q"], s["reason"].as_str().unwrap_or(""));
            }
            out
        }
    };
    if pass {
        Ok(body)
    } else {
        print!("{body}");
        if let Some(r) = reports.iter().find(|r| !r.pass) {
            eprintln!("first counterexample ({r}): {}", r.first_failure().cloned().unwrap_or(Value::Null));
        }
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
