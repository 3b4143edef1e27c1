//! Batch driver: each subcommand runs one family of checks and writes a JSON
//! report to stdout or `--out`.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 the required tensor degree exceeds the budget.

mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dkoszul::charformula::sign_probe;
use dkoszul::comodule::{self, build_irrep, maximal_weights, plan, WeightLabel};
use dkoszul::doublecx::{self, eigen_check_loop_ker, eigen_check_loop_s, two_point, LoopReport};
use dkoszul::field::{Backend, BackendKind};
use dkoszul::hecke::{build_standard_r, check_hecke_symmetry, HeckeSymmetry, Side, SymKind, TensorAlgebra};
use dkoszul::koszul::{BirankSign, Koszul};
use dkoszul::{Error, EvalPoint, Evaluated, Exact};

use config::{BackendChoice, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "dkoszul", version, about = "Double Koszul complex verification for GL_q(3|1)")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
pub struct Flags {
    /// exact, evaluated or auto (exact when within the exact budget).
    #[arg(long, global = true)]
    pub backend: Option<BackendChoice>,
    /// Evaluation point for the evaluated backend, e.g. 7/5.
    #[arg(long, global = true)]
    pub q0: Option<String>,
    /// Largest tensor degree handled by the exact backend.
    #[arg(long, global = true)]
    pub exact_budget: Option<usize>,
    /// Largest tensor degree handled by the evaluated backend.
    #[arg(long, global = true)]
    pub evaluated_budget: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Seed for the second evaluation point.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// key=value file with the same settings; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the Hecke-symmetry axioms of the standard R or a JSON file.
    VerifyHecke {
        #[arg(long, default_value_t = 3)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[arg(long)]
        input: Option<std::path::PathBuf>,
    },
    /// Dimensions of S_n, Λ_n and their duals.
    Dims {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
    /// Operator identities of the Koszul complexes.
    Identity {
        #[arg(value_enum)]
        which: IdentityKind,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        l: i64,
        #[arg(long, default_value_t = 1)]
        p: i64,
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Bracket on the right side of the d∂ identity.
        #[arg(long, value_enum, default_value_t = SignArg::SMinusR)]
        sign: SignArg,
        #[arg(long, default_value_t = 3)]
        max_degree: i64,
    },
    /// Homology of K_a over the terms with k + l ≤ window.
    Homology {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, default_value_t = 6)]
        window: i64,
    },
    /// Spectra of the loops ∂PQd and P∂dQ.
    Eigen {
        #[arg(value_enum)]
        which: LoopArg,
        #[arg(long, default_value_t = 0)]
        i: i64,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
    },
    /// Split off the summands X and Y.
    Summand {
        #[arg(value_enum)]
        which: SummandArg,
        #[arg(long, default_value_t = 0)]
        i: i64,
        #[arg(long, default_value_t = 1)]
        k: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        a: i64,
    },
    /// Build the comodule of a dominant weight m,n,p,t.
    Irrep {
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Dispatch and characters for all dominant weights in a box.
    CharTable {
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        max: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        t: i64,
        /// Omit the character column.
        #[arg(long)]
        no_characters: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum IdentityKind {
    Ct3,
    Ct60,
    Bicomplex,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    #[value(name = "r-s")]
    RMinusS,
    #[value(name = "s-r")]
    SMinusR,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LoopArg {
    LoopS,
    LoopKer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SummandArg {
    X,
    Y,
}

/// Verdict and payload of one command.
struct Outcome {
    pass: bool,
    result: Value,
}

enum Failure {
    Budget { needed: usize, budget: usize, partial: Value },
    Usage(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { needed, budget } => Failure::Budget { needed, budget, partial: Value::Null },
            Error::NonDominant(..) | Error::Parse(_) | Error::OutOfRange(_) | Error::InvalidEvalPoint { .. } => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Other(e.to_string()),
        }
    }
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::VerifyHecke { .. } => "verify-hecke".into(),
            Command::Dims { .. } => "dims".into(),
            Command::Identity { which, .. } => format!("identity {}", value_name(*which)),
            Command::Homology { .. } => "homology".into(),
            Command::Eigen { which, .. } => format!("eigen {}", value_name(*which)),
            Command::Summand { which, .. } => format!("summand {}", value_name(*which)),
            Command::Irrep { .. } => "irrep".into(),
            Command::CharTable { .. } => "char-table".into(),
        }
    }

    /// Largest tensor degree (covariant plus contravariant legs) touched.
    fn degree(&self) -> Result<usize, Failure> {
        let d = |x: i64| x.max(0) as usize;
        Ok(match self {
            Command::VerifyHecke { .. } | Command::CharTable { .. } => 0,
            Command::Dims { max } => *max,
            Command::Identity { which, k, l, p, r, max_degree, .. } => match which {
                IdentityKind::Ct3 => d(k + l + 2),
                IdentityKind::Ct60 => d(p + r),
                IdentityKind::Bicomplex => d(max_degree + 4),
            },
            Command::Homology { window, .. } => d(window + 2),
            Command::Eigen { i, a, .. } | Command::Summand { i, a, .. } if self.on_s_tensor_s_dual() => {
                d(2 * i + a + 2)
            }
            Command::Eigen { i, k, a, .. } | Command::Summand { i, k, a, .. } => d(2 * i + 2 * k + a + 4),
            Command::Irrep { weight } => plan(&parse_weight(weight)?)?.degree(),
        })
    }
}

impl Command {
    /// `loop-s` and `summand x` live on `S_{i+1} ⊗ S*_{a+i+1}`.
    fn on_s_tensor_s_dual(&self) -> bool {
        matches!(
            self,
            Command::Eigen { which: LoopArg::LoopS, .. } | Command::Summand { which: SummandArg::X, .. }
        )
    }
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn parse_weight(s: &str) -> Result<WeightLabel, Failure> {
    s.parse::<WeightLabel>().map_err(|e| Failure::Usage(e.to_string()))
}

fn standard() -> Result<HeckeSymmetry, Failure> {
    Ok(build_standard_r(3, 1)?)
}

fn exact_koszul() -> Result<Koszul<Exact>, Failure> {
    Ok(Koszul::new(TensorAlgebra::new(&standard()?, Exact)?))
}

fn evaluated_koszul(pt: EvalPoint) -> Result<Koszul<Evaluated>, Failure> {
    Ok(Koszul::new(TensorAlgebra::new(&standard()?, Evaluated::new(pt))?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 2 } else { 0 });
        }
    };
    let cfg = match RunConfig::resolve(&cli.flags) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let name = cli.command.name();
    let (code, report) = match execute(&cli.command, &cfg) {
        Ok((kind, out)) => (
            if out.pass { 0 } else { 1 },
            envelope(&name, kind, if out.pass { "pass" } else { "fail" }, out.result),
        ),
        Err(Failure::Budget { needed, budget, partial }) => {
            let mut result = json!({ "needed": needed, "budget": budget });
            if let Value::Object(extra) = partial {
                result.as_object_mut().expect("object").extend(extra);
            }
            (3, envelope(&name, None, "budget_exceeded", result))
        }
        Err(Failure::Usage(msg)) => (2, envelope(&name, None, "usage_error", json!({ "message": msg }))),
        Err(Failure::Other(msg)) => (1, envelope(&name, None, "error", json!({ "message": msg }))),
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match &cfg.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}

fn envelope(command: &str, backend: Option<String>, status: &str, result: Value) -> Value {
    json!({
        "command": command,
        "backend": backend,
        "status": status,
        "result": result,
    })
}

/// Pick a backend for the command's degree and run it.
fn execute(cmd: &Command, cfg: &RunConfig) -> Result<(Option<String>, Outcome), Failure> {
    let needed = cmd.degree()?;
    let over = |budget: usize| -> Result<(Option<String>, Outcome), Failure> {
        Err(Failure::Budget { needed, budget, partial: symbolic(cmd)? })
    };
    let kind = match cfg.backend {
        BackendChoice::Exact if needed > cfg.exact_budget => return over(cfg.exact_budget),
        BackendChoice::Evaluated | BackendChoice::Auto if needed > cfg.evaluated_budget => {
            return over(cfg.evaluated_budget)
        }
        BackendChoice::Exact => BackendKind::Exact,
        BackendChoice::Evaluated => BackendKind::Evaluated,
        BackendChoice::Auto if needed <= cfg.exact_budget => BackendKind::Exact,
        BackendChoice::Auto => BackendKind::Evaluated,
    };
    match kind {
        BackendKind::Exact => {
            let kz = exact_koszul()?;
            let out = run(cmd, &kz, cfg, None::<&Koszul<Exact>>)?;
            Ok((Some(kz.label()), out))
        }
        BackendKind::Evaluated => {
            let kz = evaluated_koszul(cfg.q0.clone())?;
            let second = if matches!(cmd, Command::Eigen { .. }) {
                Some(evaluated_koszul(EvalPoint::seeded(cfg.seed))?)
            } else {
                None
            };
            let out = run(cmd, &kz, cfg, second.as_ref())?;
            Ok((Some(kz.label()), out))
        }
    }
}

/// The part of a report that needs no linear algebra.
fn symbolic(cmd: &Command) -> Result<Value, Failure> {
    let Command::Irrep { weight } = cmd else {
        return Ok(Value::Null);
    };
    let w = parse_weight(weight)?;
    let pl = plan(&w)?;
    let ch = pl.character()?;
    Ok(json!({
        "weight": w.to_string(),
        "case": pl.case,
        "item": pl.case.map(|c| c.item()),
        "recipe": pl.to_string(),
        "plan": pl,
        "character": ch.term_list(),
        "dims": { "total": ch.total(), "by_weight": comodule::dims_by_weight(&ch) },
    }))
}

fn run<B: Backend>(
    cmd: &Command,
    kz: &Koszul<B>,
    cfg: &RunConfig,
    second: Option<&Koszul<B>>,
) -> Result<Outcome, Failure> {
    match cmd {
        Command::VerifyHecke { r, s, input } => {
            let h = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                    HeckeSymmetry::from_json(&text)?
                }
                None => build_standard_r(*r, *s)?,
            };
            let rep = check_hecke_symmetry(&h);
            Ok(Outcome {
                pass: rep.passed(),
                result: serde_json::to_value(&rep).expect("serializes"),
            })
        }
        Command::Dims { max } => {
            let t = kz.algebra();
            let row = |side, kind| -> Vec<usize> { (0..=*max).map(|n| t.space(side, kind, n).dim()).collect() };
            let sym = row(Side::Co, SymKind::Sym);
            let ext = row(Side::Co, SymKind::Ext);
            let sym_dual = row(Side::Contra, SymKind::Sym);
            let ext_dual = row(Side::Contra, SymKind::Ext);
            // (1+t)^3/(1−t) and (1+t)/(1−t)^3
            let oracle_sym: Vec<usize> = (0..=*max).map(|n| (n + 1) * (n + 1)).collect();
            let oracle_ext: Vec<usize> = (0..=*max).map(|n| [1, 4, 7].get(n).copied().unwrap_or(8)).collect();
            let pass = sym == oracle_sym && ext == oracle_ext && sym_dual == sym && ext_dual == ext;
            Ok(Outcome {
                pass,
                result: json!({
                    "sym": sym, "ext": ext, "sym_dual": sym_dual, "ext_dual": ext_dual,
                    "oracle_sym": oracle_sym, "oracle_ext": oracle_ext,
                }),
            })
        }
        Command::Identity { which, k, l, p, r, sign, max_degree } => {
            let records = match which {
                IdentityKind::Ct3 => {
                    let sign = match sign {
                        SignArg::RMinusS => BirankSign::RMinusS,
                        SignArg::SMinusR => BirankSign::SMinusR,
                    };
                    vec![kz.verify_ct3(*k, *l, sign)?]
                }
                IdentityKind::Ct60 => vec![kz.verify_ct60(*p, *r)?],
                IdentityKind::Bicomplex => kz.verify_bicomplex(*max_degree)?,
            };
            let pass = records.iter().all(|r| r.residual_zero);
            let result = if let [one] = &records[..] {
                serde_json::to_value(one).expect("serializes")
            } else {
                json!({
                    "checked": records.len(),
                    "residual_zero": pass,
                    "failures": records.iter().filter(|r| !r.residual_zero).collect::<Vec<_>>(),
                })
            };
            Ok(Outcome { pass, result })
        }
        Command::Homology { a, window } => {
            let slots = kz.homology(*a, *window)?;
            let nontrivial: Vec<_> = slots.iter().filter(|s| s.dim > 0).collect();
            Ok(Outcome {
                pass: true,
                result: json!({
                    "a": a, "window": window,
                    "exact": nontrivial.is_empty(),
                    "nontrivial": nontrivial,
                    "slots": slots,
                }),
            })
        }
        Command::Eigen { which, i, k, a } => {
            let check = |kz: &Koszul<B>| -> Result<LoopReport, Error> {
                match which {
                    LoopArg::LoopS => eigen_check_loop_s(kz, *i, *a),
                    LoopArg::LoopKer => eigen_check_loop_ker(kz, *i, *k, *a),
                }
            };
            let mut rep = check(kz)?;
            if let Some(kz2) = second {
                rep = two_point(rep, &check(kz2)?);
            }
            let base_case = *i <= 1;
            let pass = match which {
                LoopArg::LoopS => rep.annihilation && rep.invertible && (!base_case || rep.all_attained()),
                LoopArg::LoopKer => {
                    rep.invertible && rep.spectrum_complete && (!base_case || (rep.annihilation && rep.all_attained()))
                }
            };
            Ok(Outcome {
                pass,
                result: serde_json::to_value(&rep).expect("serializes"),
            })
        }
        Command::Summand { which, i, k, a } => {
            let label = kz.label();
            let rep = match which {
                SummandArg::X => doublecx::extract_x(kz, *i, *a)?.report(
                    "X",
                    vec![*i, *a],
                    doublecx::expected_x_dim(kz, *i, *a),
                    label,
                )?,
                SummandArg::Y => doublecx::extract_y(kz, *i, *k, *a)?.report(
                    "Y",
                    vec![*i, *k, *a],
                    doublecx::expected_y_dim(kz, *i, *k, *a)?,
                    label,
                )?,
            };
            let pass = rep.idempotent && rep.additive && rep.complement_dim == rep.expected_complement_dim;
            Ok(Outcome {
                pass,
                result: serde_json::to_value(&rep).expect("serializes"),
            })
        }
        Command::Irrep { weight } => {
            let w = parse_weight(weight)?;
            let budget = match kz.algebra().backend().kind() {
                BackendKind::Exact => cfg.exact_budget,
                BackendKind::Evaluated => cfg.evaluated_budget,
            };
            let b = build_irrep(kz, &w, budget)?;
            let verified = b.verified()?;
            let top = maximal_weights(&b.character);
            Ok(Outcome {
                pass: verified && top == vec![w.highest_weight()],
                result: json!({
                    "weight": w.to_string(),
                    "case": b.plan.case,
                    "item": b.plan.case.map(|c| c.item()),
                    "recipe": b.plan.to_string(),
                    "plan": b.plan,
                    "degree": b.plan.degree(),
                    "character": b.character.term_list(),
                    "dims": {
                        "total": b.character.total(),
                        "by_weight": comodule::dims_by_weight(&b.character),
                    },
                    "highest_weight": top,
                    "verified": verified,
                }),
            })
        }
        Command::CharTable { min, max, t, no_characters } => {
            if min > max {
                return Err(Failure::Usage(format!("empty range {min}..{max}")));
            }
            let mut rows = Vec::new();
            let mut all_ok = true;
            for m in *min..=*max {
                for n in *min..=m {
                    for p in *min..=n {
                        let w = WeightLabel::new(m, n, p, *t)?;
                        let pl = plan(&w)?;
                        let ch = pl.character()?;
                        let ok = maximal_weights(&ch) == vec![w.highest_weight()];
                        all_ok &= ok;
                        let mut row = json!({
                            "weight": w.to_string(),
                            "case": pl.case,
                            "item": pl.case.map(|c| c.item()),
                            "recipe": pl.to_string(),
                            "dim": ch.total(),
                            "highest_weight_ok": ok,
                        });
                        if !no_characters {
                            row["character"] = json!(ch.to_string());
                        }
                        rows.push(row);
                    }
                }
            }
            let probe = sign_probe()?;
            Ok(Outcome {
                pass: all_ok && probe.decisive(),
                result: json!({ "t": t, "rows": rows, "sign_probe": probe }),
            })
        }
    }
}
