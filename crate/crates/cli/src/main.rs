use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use logtk_core::abgroups::smith_normal_form;
use logtk_core::logdiff::log_differentials;
use logtk_core::prelog::from_base;
use logtk_core::regcheck::fundamental_sequence_low_degree;
use logtk_core::{replay, Certificate, CheckOptions, FgAbGroup, Field, IntMat, RingMode, Status};
use logtk_cli::manifest::{parse_manifest_with, Manifest, ParseOptions, Procedure};
use logtk_cli::report::{exit_code, Report};
use logtk_cli::run::{run_tasks, tasks_for};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "logtk", version, about = "Decide log regularity and related properties of prelog rings")]
struct Cli {
    /// Verify a certificate or report file without recomputing it
    #[arg(long, value_name = "FILE")]
    replay: Option<PathBuf>,
    /// Coefficient field, `Q` or `Fp(p)`; overrides the manifest
    #[arg(long, global = true)]
    field: Option<Field>,
    /// Degree bound for monoid preimage enumeration
    #[arg(long, global = true, default_value_t = 8)]
    degree_bound: u32,
    /// Lattice point budget for saturation tests
    #[arg(long, global = true, default_value_t = 10_000)]
    hilbert_budget: usize,
    /// Ring mode, and with it the monomial order, for rings that declare none
    #[arg(long, global = true, value_enum)]
    order: Option<Order>,
    /// One JSON document per line instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    /// Negative degrevlex, localized at the origin
    Local,
    /// Degrevlex, homogeneous ideals
    Graded,
    /// Degrevlex, no localization
    Affine,
}

#[derive(Subcommand)]
enum Command {
    /// Run one procedure: the manifest's tasks for it, or every object it applies to
    Check {
        procedure: Procedure,
        manifest: PathBuf,
        /// Replay each certificate after computing it
        #[arg(long)]
        verify: bool,
    },
    /// Run the manifest's tasks in declaration order
    Run {
        manifest: PathBuf,
        /// Only these tasks
        #[arg(long = "task", value_name = "NAME")]
        tasks: Vec<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Print the normalized manifest
    Print { manifest: PathBuf },
    /// Minimal presentation of the log differentials of a map, or of a prelog ring over the field
    Diff { manifest: PathBuf, name: String },
    /// Low-degree dimensions of the fundamental sequences of a map
    Fundamental { manifest: PathBuf, map: String },
    /// Verify certificates or reports from a JSON file
    Replay { file: PathBuf },
    /// Finitely generated abelian groups
    Abgroup {
        #[command(subcommand)]
        command: AbCommand,
    },
}

#[derive(Subcommand)]
enum AbCommand {
    /// Smith normal form U * A * V = D
    Snf {
        /// Rows separated by `;`, entries by `,`
        #[arg(long)]
        matrix: String,
    },
    /// The group presented by the columns of the matrix as relations
    Describe {
        #[arg(long)]
        matrix: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Outcome = Result<i32, String>;

fn dispatch(cli: &Cli) -> Outcome {
    if let Some(file) = &cli.replay {
        if cli.command.is_some() {
            return Err("--replay takes no subcommand".into());
        }
        return replay_file(cli, file);
    }
    let Some(command) = &cli.command else {
        return Err("no command given; see --help".into());
    };
    let opts = CheckOptions {
        degree_bound: cli.degree_bound,
        budget: cli.hilbert_budget,
    };
    match command {
        Command::Check {
            procedure,
            manifest,
            verify,
        } => {
            let m = load(cli, manifest)?;
            let tasks = tasks_for(&m, *procedure);
            if tasks.is_empty() {
                return Err(format!("nothing in {} to run {procedure} on", manifest.display()));
            }
            emit(cli, run_tasks(&m, &tasks, &opts), *verify)
        }
        Command::Run { manifest, tasks, verify } => {
            let m = load(cli, manifest)?;
            if let Some(t) = tasks.iter().find(|t| !m.tasks.contains_key(*t)) {
                return Err(format!("no task `{t}` in {}", manifest.display()));
            }
            let selected: Vec<_> = m
                .tasks
                .iter()
                .filter(|(n, _)| tasks.is_empty() || tasks.contains(n))
                .map(|(n, t)| (n.clone(), t.clone()))
                .collect();
            emit(cli, run_tasks(&m, &selected, &opts), *verify)
        }
        Command::Print { manifest } => {
            print!("{}", load(cli, manifest)?.print());
            Ok(0)
        }
        Command::Diff { manifest, name } => diff(cli, &load(cli, manifest)?, name),
        Command::Fundamental { manifest, map } => fundamental(cli, &load(cli, manifest)?, map),
        Command::Replay { file } => replay_file(cli, file),
        Command::Abgroup { command } => abgroup(cli, command),
    }
}

fn load(cli: &Cli, path: &Path) -> Result<Manifest, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let opts = ParseOptions {
        field: cli.field,
        mode: cli.order.map(|o| match o {
            Order::Local => RingMode::Local,
            Order::Graded => RingMode::Graded,
            Order::Affine => RingMode::Affine,
        }),
    };
    parse_manifest_with(&text, &opts).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(cli: &Cli, mut reports: Vec<Report>, verify: bool) -> Outcome {
    let mut mismatch = false;
    for r in &mut reports {
        if verify {
            let ok = replay(&r.certificate).ok();
            mismatch |= !ok;
            r.stats.replay_ok = Some(ok);
        }
        if cli.json {
            println!("{}", r.to_json());
        } else {
            print!("{}", r.render());
        }
    }
    if mismatch {
        return Ok(2);
    }
    Ok(exit_code(reports.iter().map(|r| &r.status)))
}

fn diff(cli: &Cli, m: &Manifest, name: &str) -> Outcome {
    let omega = if let Some(d) = m.maps.get(name) {
        let h = d.prelog().ok_or_else(|| format!("`{name}` is a map of monoids"))?;
        log_differentials(h)
    } else if let Some(p) = m.prelogs.get(name) {
        log_differentials(&from_base(&p.value))
    } else {
        return Err(format!("no map or prelog ring named `{name}`"));
    };
    let min = omega.minimalize();
    let relations = min.show_relations();
    if cli.json {
        println!("{}", json!({ "rank": min.rank, "relations": relations, "labels": min.labels }));
    } else {
        println!("rank {}", min.rank);
        println!("generators: {}", min.labels.join(", "));
        if relations.is_empty() {
            println!("relations: none");
        } else {
            println!("relations:");
            for r in &relations {
                println!("  ({})", r.join(", "));
            }
        }
    }
    Ok(0)
}

fn fundamental(cli: &Cli, m: &Manifest, name: &str) -> Outcome {
    let d = m.maps.get(name).ok_or_else(|| format!("no map named `{name}`"))?;
    let h = d.prelog().ok_or_else(|| format!("`{name}` is a map of monoids"))?;
    let r = fundamental_sequence_low_degree(h).map_err(|e| e.to_string())?;
    if cli.json {
        println!("{}", serde_json::to_string(&r).expect("reports serialize"));
    } else {
        println!("omega of the monoid map: {}", r.omega_monoid);
        println!("omega of the ring map: {}", r.omega_ring);
        println!("group cokernel: {}", r.gp_cokernel);
        println!("log differentials: {} (pushout presentation {})", r.omega_log, r.omega_log_h0);
        let g = &r.gamma;
        println!(
            "gamma: {} = {} + {} (kernel tensor, cokernel tor), cokernel tensor {}",
            g.gamma, g.ker_tensor, g.coker_tor1, g.coker_tensor
        );
        if let Some(s) = &r.surjective {
            let kernel = s.monoid_kernel.map_or("unknown".to_string(), |k| k.to_string());
            println!(
                "surjective: monoid kernel {kernel}, I/I^2 {}, conormal {} (pushout {})",
                s.ideal_mod_square, s.conormal, s.conormal_pushout
            );
        }
        println!("consistent: {}", r.consistent);
    }
    Ok(if r.consistent { 0 } else { 1 })
}

fn abgroup(cli: &Cli, command: &AbCommand) -> Outcome {
    match command {
        AbCommand::Snf { matrix } => {
            let a = IntMat::parse(matrix).map_err(|e| e.to_string())?;
            let s = smith_normal_form(&a);
            let diag: Vec<String> = s.diagonal().iter().map(|x| x.to_string()).collect();
            if cli.json {
                println!("{}", json!({ "diagonal": diag, "snf": s }));
            } else {
                println!("D = diag({})", diag.join(", "));
                print!("U =\n{}", s.u);
                print!("V =\n{}", s.v);
            }
        }
        AbCommand::Describe { matrix } => {
            let a = IntMat::parse(matrix).map_err(|e| e.to_string())?;
            let g = FgAbGroup::from_presentation(&a);
            if cli.json {
                let factors: Vec<String> = g.invariant_factors.iter().map(|x| x.to_string()).collect();
                println!("{}", json!({ "rank": g.rank, "invariant_factors": factors }));
            } else {
                println!("{}", g.describe());
            }
        }
    }
    Ok(0)
}

/// Items of a replay file: one JSON value, an array, or one value per line.
fn replay_items(text: &str) -> Result<Vec<Value>, String> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(items)) => Ok(items),
        Ok(v) => Ok(vec![v]),
        Err(_) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .enumerate()
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| format!("item {}: {e}", i + 1)))
            .collect(),
    }
}

fn replay_file(cli: &Cli, path: &Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut all_ok = true;
    for (i, item) in replay_items(&text)?.into_iter().enumerate() {
        let (label, claimed, cert) = match item.get("certificate") {
            Some(c) => {
                let label = item.get("task").and_then(Value::as_str).unwrap_or("certificate").to_string();
                let claimed: Option<Status> = item.get("status").cloned().map(serde_json::from_value).transpose().map_err(|e| e.to_string())?;
                (label, claimed, c.clone())
            }
            None => (format!("certificate {}", i + 1), None, item),
        };
        let cert: Certificate = serde_json::from_value(cert).map_err(|e| format!("{label}: {e}"))?;
        let r = replay(&cert);
        let mut failures = r.failures.clone();
        if let Some(s) = claimed.filter(|s| *s != cert.status) {
            failures.push(format!("report says {s}, certificate says {}", cert.status));
        }
        let ok = r.ok() && failures.len() == r.failures.len();
        all_ok &= ok;
        if cli.json {
            println!(
                "{}",
                json!({
                    "task": label,
                    "procedure": r.procedure,
                    "recorded": r.recorded,
                    "replayed": r.replayed,
                    "facts_checked": r.facts_checked,
                    "failures": failures,
                    "ok": ok,
                })
            );
        } else {
            println!(
                "{label} [{}]: recorded {}, replayed {}, {} facts checked: {}",
                r.procedure,
                r.recorded,
                r.replayed,
                r.facts_checked,
                if ok { "ok" } else { "FAILED" }
            );
            for f in &failures {
                println!("  {f}");
            }
        }
    }
    Ok(if all_ok { 0 } else { 2 })
}
