//! Command-line front door: character tables, applicability
//! classification, Stickelberger elements, and the conjecture checks,
//! over JSON inputs.  All numerical output is exact; reruns are
//! byte-identical; batch inputs are processed in parallel with
//! deterministic aggregation.
//!
//! Exit codes: 0 pass, 1 fail, 2 undecided / not checkable, 3 input
//! error.

use brumer_core::chartab::{character_table, export_table};
use brumer_core::conjecture::{
    brumer_check, bs_antiunit_check, classify_theorem, dual_sbs_check, hybrid_check,
    ClassifyAssumptions, Outcome, TheoremTag,
};
use brumer_core::extension::{ExtensionDatum, ExtensionInput};
use brumer_core::group::{FiniteGroup, GroupInput};
use brumer_core::lvalues::{integrality_report, stickelberger, IntegralityLattice};
use brumer_core::perm::Perm;
use brumer_core::ring::CenterElement;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

#[derive(Parser)]
#[command(
    name = "brumer",
    about = "Exact checks for equivariant Stickelberger elements, non-commutative Fitting invariants, and Brumer/Brumer-Stark annihilation statements on desk-scale CM-extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Clone)]
struct ConfigArgs {
    /// truncation exponent k for Z/p^k computations
    #[arg(long, default_value_t = 20, global = true)]
    precision: u32,
    /// word bound for the trivial-unit search in nr-equivalence checks
    #[arg(long, default_value_t = 6, global = true)]
    unit_bound: usize,
    /// worker threads for batch inputs
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// JSON file with assumption records (abelianity flags, denominator
    /// certificates, ideal data)
    #[arg(long, global = true)]
    assume: Option<PathBuf>,
    /// bound on |G| for exhaustive subgroup searches
    #[arg(long, default_value_t = 300, global = true)]
    subgroup_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Exact character table of a permutation group
    Chartable { files: Vec<PathBuf> },
    /// Applicability classification of the unconditional criteria
    Classify {
        files: Vec<PathBuf>,
        #[arg(long)]
        prime: u64,
        /// generators of the designated normal subgroup (cycle strings)
        #[arg(long)]
        kernel: Vec<String>,
    },
    /// Hybridness certification for (G, N, p)
    Hybrid {
        files: Vec<PathBuf>,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        kernel: Vec<String>,
    },
    /// Stickelberger element with integrality report
    Stickelberger {
        files: Vec<PathBuf>,
        /// ignore the T-flags and compute the plain element
        #[arg(long)]
        no_t: bool,
    },
    /// Conjecture checks on an extension datum
    Check {
        files: Vec<PathBuf>,
        #[arg(long, value_enum)]
        mode: CheckMode,
        #[arg(long)]
        prime: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckMode {
    Brumer,
    Bs,
    DualSbs,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
struct AssumeFile {
    #[serde(default)]
    base_field_q: bool,
    #[serde(default)]
    abelian_fixed_fields: Vec<Vec<String>>,
    /// candidate denominator elements, as rational class-sum coordinates
    #[serde(default)]
    h_certificates: Vec<Vec<String>>,
    /// ideal-class data for the Brumer-Stark generator clause
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bs_ideal: Option<brumer_core::conjecture::BsInput>,
}

/// Result-relevant configuration, recorded in every output.  The
/// parallelism degree is deliberately omitted: results are independent
/// of it and outputs must be byte-identical across --jobs settings.
#[derive(Serialize)]
struct ConfigEcho {
    precision: u32,
    unit_bound: usize,
    format: &'static str,
    subgroup_bound: usize,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    config: ConfigEcho,
    results: Vec<FileResult<T>>,
    overall: &'static str,
}

#[derive(Serialize)]
struct FileResult<T: Serialize> {
    input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<T>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

fn main() {
    let cli = Cli::parse();
    let code = run(cli);
    std::process::exit(code);
}

fn config_echo(c: &ConfigArgs) -> ConfigEcho {
    ConfigEcho {
        precision: c.precision,
        unit_bound: c.unit_bound,
        format: match c.format {
            Format::Json => "json",
            Format::Text => "text",
        },
        subgroup_bound: c.subgroup_bound,
    }
}

fn load_assume(c: &ConfigArgs) -> Result<AssumeFile, String> {
    match &c.assume {
        None => Ok(AssumeFile::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

/// Deterministic indexed parallel map over batch inputs.
fn par_map<T, R, F>(items: Vec<T>, jobs: usize, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let jobs = jobs.max(1).min(items.len().max(1));
    let n = items.len();
    let results: Mutex<Vec<Option<R>>> = Mutex::new((0..n).map(|_| None).collect());
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let r = f(&items[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("worker filled slot"))
        .collect()
}

fn run(cli: Cli) -> i32 {
    let cfg = cli.config.clone();
    let assume = match load_assume(&cfg) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("input error: {e}");
            return 3;
        }
    };
    match cli.command {
        Command::Chartable { files } => cmd_chartable(&cfg, files),
        Command::Classify {
            files,
            prime,
            kernel,
        } => cmd_classify(&cfg, &assume, files, prime, kernel),
        Command::Hybrid {
            files,
            prime,
            kernel,
        } => cmd_hybrid(&cfg, files, prime, kernel),
        Command::Stickelberger { files, no_t } => cmd_stickelberger(&cfg, files, no_t),
        Command::Check { files, mode, prime } => cmd_check(&cfg, &assume, files, mode, prime),
    }
}

fn read_group(path: &PathBuf) -> Result<(FiniteGroup, Option<usize>), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let input: GroupInput =
        serde_json::from_str(&text).map_err(|e| format!("/: JSON parse error: {e}"))?;
    let (g, j) = FiniteGroup::from_input(&input).map_err(|e| format!("/group: {e}"))?;
    Ok((g, j.map(|jj| jj.elem)))
}

fn read_extension(path: &PathBuf) -> Result<ExtensionDatum, Vec<String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| vec![format!("cannot read {}: {e}", path.display())])?;
    let input: ExtensionInput =
        serde_json::from_str(&text).map_err(|e| vec![format!("/: JSON parse error: {e}")])?;
    ExtensionDatum::resolve(&input)
}

// ---------------------------------------------------------------------------
// chartable
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct ChartableResult {
    label: String,
    order: usize,
    classes: usize,
    fingerprints: Vec<String>,
    table: brumer_core::chartab::CharacterTableJson,
}

fn cmd_chartable(cfg: &ConfigArgs, files: Vec<PathBuf>) -> i32 {
    let outputs = par_map(files, cfg.jobs, |path| {
        let payload = (|| -> Result<ChartableResult, Vec<String>> {
            let (g, _) = read_group(path).map_err(|e| vec![e])?;
            let t = character_table(&g).map_err(|e| vec![format!("/group: {e}")])?;
            Ok(ChartableResult {
                label: g.fingerprint_label(),
                order: g.order(),
                classes: g.num_classes(),
                fingerprints: t.chars.iter().map(|c| c.fingerprint()).collect(),
                table: export_table(&g, &t),
            })
        })();
        to_file_result(path, payload)
    });
    let ok = outputs.iter().all(|r| r.errors.is_empty());
    let env = Envelope {
        command: "chartable",
        config: config_echo(cfg),
        results: outputs,
        overall: if ok { "pass" } else { "error" },
    };
    render(cfg, &env, |r, out| {
        if let Some(res) = &r.result {
            out.push_str(&format!(
                "group {} (order {}, {} classes)\n",
                res.label, res.order, res.classes
            ));
            out.push_str(&format!(
                "  class sizes: {:?}\n  degrees: {:?}\n",
                res.table.class_sizes,
                res.table
                    .characters
                    .iter()
                    .map(|c| c.degree)
                    .collect::<Vec<_>>()
            ));
            for (ci, ch) in res.table.characters.iter().enumerate() {
                out.push_str(&format!(
                    "  chi_{ci} (degree {}, fingerprint {})\n",
                    ch.degree, res.fingerprints[ci]
                ));
            }
        }
    });
    if ok {
        0
    } else {
        3
    }
}

fn to_file_result<T: Serialize>(path: &PathBuf, payload: Result<T, Vec<String>>) -> FileResult<T> {
    match payload {
        Ok(result) => FileResult {
            input: path.display().to_string(),
            result: Some(result),
            errors: vec![],
        },
        Err(errors) => FileResult {
            input: path.display().to_string(),
            result: None,
            errors,
        },
    }
}

fn render<T: Serialize>(
    cfg: &ConfigArgs,
    env: &Envelope<T>,
    text_fn: impl Fn(&FileResult<T>, &mut String),
) {
    match cfg.format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(env).expect("serialize"));
        }
        Format::Text => {
            let mut out = String::new();
            for r in &env.results {
                out.push_str(&format!("== {}\n", r.input));
                for e in &r.errors {
                    out.push_str(&format!("  error: {e}\n"));
                }
                text_fn(r, &mut out);
            }
            out.push_str(&format!("overall: {}\n", env.overall));
            print!("{out}");
        }
    }
}

// ---------------------------------------------------------------------------
// classify / hybrid
// ---------------------------------------------------------------------------

fn parse_kernel(g: &FiniteGroup, kernel: &[String]) -> Result<Option<Vec<usize>>, String> {
    if kernel.is_empty() {
        return Ok(None);
    }
    let ids = kernel
        .iter()
        .map(|s| {
            Perm::parse(s, g.degree())
                .map_err(|e| format!("--kernel: {e}"))
                .and_then(|p| {
                    g.id_of(&p)
                        .ok_or_else(|| format!("--kernel: {s} is not a group element"))
                })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(ids))
}

fn cmd_classify(
    cfg: &ConfigArgs,
    assume: &AssumeFile,
    files: Vec<PathBuf>,
    prime: u64,
    kernel: Vec<String>,
) -> i32 {
    let assumptions = ClassifyAssumptions {
        base_field_q: assume.base_field_q,
        abelian_fixed_fields: assume.abelian_fixed_fields.clone(),
    };
    let outputs = par_map(files, cfg.jobs, |path| {
        let payload = (|| -> Result<brumer_core::conjecture::TheoremVerdict, Vec<String>> {
            let (g, _) = read_group(path).map_err(|e| vec![e])?;
            let kernel_ids = parse_kernel(&g, &kernel).map_err(|e| vec![e])?;
            classify_theorem(
                &g,
                prime,
                kernel_ids.as_deref(),
                &assumptions,
                cfg.subgroup_bound,
            )
            .map_err(|e| vec![format!("{e}")])
        })();
        to_file_result(path, payload)
    });
    let all_ok = outputs.iter().all(|r| r.errors.is_empty());
    let applicable = outputs.iter().all(|r| {
        r.result
            .as_ref()
            .map(|v| v.tag != TheoremTag::None)
            .unwrap_or(false)
    });
    let env = Envelope {
        command: "classify",
        config: config_echo(cfg),
        results: outputs,
        overall: if !all_ok {
            "error"
        } else if applicable {
            "pass"
        } else {
            "fail"
        },
    };
    render(cfg, &env, |r, out| {
        if let Some(v) = &r.result {
            out.push_str(&format!("  applicable: {:?} at p = {}\n", v.tag, v.prime));
            for p in &v.premises {
                out.push_str(&format!(
                    "    [{}] {} ({})\n",
                    if p.holds { "ok" } else { "fail" },
                    p.name,
                    p.detail
                ));
            }
            for f in &v.recognized_families {
                out.push_str(&format!("    recognized: {f}\n"));
            }
            for a in &v.assumptions {
                out.push_str(&format!("    assumption: {a}\n"));
            }
        }
    });
    if !all_ok {
        3
    } else if applicable {
        0
    } else {
        1
    }
}

fn cmd_hybrid(cfg: &ConfigArgs, files: Vec<PathBuf>, prime: u64, kernel: Vec<String>) -> i32 {
    let outputs = par_map(files, cfg.jobs, |path| {
        let payload = (|| -> Result<brumer_core::conjecture::HybridVerdict, Vec<String>> {
            let (g, _) = read_group(path).map_err(|e| vec![e])?;
            let kernel_ids = parse_kernel(&g, &kernel)
                .map_err(|e| vec![e])?
                .ok_or_else(|| vec!["--kernel is required for the hybrid check".to_string()])?;
            let n = g.subgroup(&kernel_ids);
            if !n.is_normal {
                return Err(vec!["--kernel: subgroup is not normal".into()]);
            }
            hybrid_check(&g, &n, prime).map_err(|e| vec![format!("{e}")])
        })();
        to_file_result(path, payload)
    });
    let all_ok = outputs.iter().all(|r| r.errors.is_empty());
    let hybrid = outputs
        .iter()
        .all(|r| r.result.as_ref().map(|v| v.hybrid).unwrap_or(false));
    let env = Envelope {
        command: "hybrid",
        config: config_echo(cfg),
        results: outputs,
        overall: if !all_ok {
            "error"
        } else if hybrid {
            "pass"
        } else {
            "fail"
        },
    };
    render(cfg, &env, |r, out| {
        if let Some(v) = &r.result {
            out.push_str(&format!(
                "  hybrid: {} (p = {}, provenance {:?})\n",
                v.hybrid, v.prime, v.provenance
            ));
            for d in &v.detail {
                out.push_str(&format!("    {d}\n"));
            }
        }
    });
    if !all_ok {
        3
    } else if hybrid {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// stickelberger
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct StickResult {
    name: String,
    uses_t: bool,
    class_sums: Vec<String>,
    components: Vec<brumer_core::lvalues::ComponentReport>,
    integrality: brumer_core::lvalues::IntegralityReport,
    /// reported, not fatal for the element itself
    hypotheses: brumer_core::conjecture::HypVerdict,
}

fn cmd_stickelberger(cfg: &ConfigArgs, files: Vec<PathBuf>, no_t: bool) -> i32 {
    let outputs = par_map(files, cfg.jobs, |path| {
        let payload = (|| -> Result<StickResult, Vec<String>> {
            let datum = read_extension(path)?;
            let use_t = !no_t && !datum.t_places().is_empty();
            let res = stickelberger(&datum, use_t).map_err(|e| vec![format!("{e}")])?;
            let integrality = integrality_report(
                &datum.ring,
                &res.theta,
                &IntegralityLattice::IntegralGroupRing,
            )
            .map_err(|e| vec![format!("{e}")])?;
            let hypotheses = brumer_core::conjecture::check_hyp(&datum, None);
            Ok(StickResult {
                name: datum.name.clone(),
                uses_t: use_t,
                class_sums: res.class_sums.iter().map(|c| format!("{c}")).collect(),
                components: res.components,
                integrality,
                hypotheses,
            })
        })();
        to_file_result(path, payload)
    });
    let all_ok = outputs.iter().all(|r| r.errors.is_empty());
    let integral = outputs.iter().all(|r| {
        r.result
            .as_ref()
            .map(|v| v.integrality.pass)
            .unwrap_or(false)
    });
    let env = Envelope {
        command: "stickelberger",
        config: config_echo(cfg),
        results: outputs,
        overall: if !all_ok {
            "error"
        } else if integral {
            "pass"
        } else {
            "fail"
        },
    };
    render(cfg, &env, |r, out| {
        if let Some(v) = &r.result {
            out.push_str(&format!(
                "  {} ({}): class sums {:?}\n",
                v.name,
                if v.uses_t { "T-smoothed" } else { "plain" },
                v.class_sums
            ));
            out.push_str(&format!(
                "  integrality: {}\n",
                if v.integrality.pass { "pass" } else { "fail" }
            ));
            if !v.hypotheses.pass {
                out.push_str("  hypothesis warnings:\n");
                for reason in &v.hypotheses.reasons {
                    out.push_str(&format!("    {reason}\n"));
                }
            }
            for c in &v.components {
                out.push_str(&format!(
                    "    chi {} (degree {}, {:?}): {} [{}]\n",
                    c.fingerprint, c.degree, c.parity, c.component, c.provenance
                ));
            }
        }
    });
    if !all_ok {
        3
    } else if integral {
        0
    } else {
        1
    }
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

#[derive(Serialize)]
#[serde(untagged)]
enum CheckPayload {
    Brumer(brumer_core::conjecture::BrumerVerdict),
    Bs(brumer_core::conjecture::BsVerdict),
    DualSbs(brumer_core::conjecture::DualSbsVerdict),
}

fn payload_outcome(p: &CheckPayload) -> Outcome {
    match p {
        CheckPayload::Brumer(v) => v.outcome,
        CheckPayload::Bs(v) => v.outcome,
        CheckPayload::DualSbs(v) => v.outcome,
    }
}

fn cmd_check(
    cfg: &ConfigArgs,
    assume: &AssumeFile,
    files: Vec<PathBuf>,
    mode: CheckMode,
    prime: u64,
) -> i32 {
    let outputs = par_map(files, cfg.jobs, |path| {
        let payload = (|| -> Result<CheckPayload, Vec<String>> {
            let datum = read_extension(path)?;
            let mut certs: Vec<CenterElement> = Vec::new();
            for (i, coords) in assume.h_certificates.iter().enumerate() {
                if coords.len() != datum.group.num_classes() {
                    return Err(vec![format!(
                        "/h_certificates/{i}: expected {} class coordinates",
                        datum.group.num_classes()
                    )]);
                }
                let parsed: Option<Vec<_>> = coords
                    .iter()
                    .map(|s| {
                        brumer_core::extension::parse_rational(s)
                            .map(brumer_core::cyclotomic::Cyclotomic::from_rat)
                    })
                    .collect();
                match parsed {
                    Some(c) => certs.push(datum.ring.center_from_class_sums(&c)),
                    None => {
                        return Err(vec![format!(
                            "/h_certificates/{i}: bad rational coordinate"
                        )])
                    }
                }
            }
            match mode {
                CheckMode::Brumer => brumer_check(&datum, prime, cfg.precision, &certs)
                    .map(CheckPayload::Brumer)
                    .map_err(|e| vec![format!("{e}")]),
                CheckMode::Bs => {
                    let Some(bs) = &assume.bs_ideal else {
                        return Err(vec![
                            "--assume file with bs_ideal data required for the generator clause"
                                .into(),
                        ]);
                    };
                    bs_antiunit_check(&datum, Some(prime), bs, certs.first())
                        .map(CheckPayload::Bs)
                        .map_err(|e| vec![format!("{e}")])
                }
                CheckMode::DualSbs => dual_sbs_check(
                    &datum,
                    prime,
                    cfg.precision,
                    cfg.unit_bound,
                    cfg.subgroup_bound,
                )
                .map(CheckPayload::DualSbs)
                .map_err(|e| vec![format!("{e}")]),
            }
        })();
        to_file_result(path, payload)
    });
    let all_ok = outputs.iter().all(|r| r.errors.is_empty());
    let outcomes: Vec<Outcome> = outputs
        .iter()
        .filter_map(|r| r.result.as_ref().map(payload_outcome))
        .collect();
    let overall = if !all_ok {
        "error"
    } else if outcomes.iter().any(|o| *o == Outcome::Fail) {
        "fail"
    } else if outcomes
        .iter()
        .any(|o| matches!(o, Outcome::Undecided | Outcome::NotCheckable))
    {
        "undecided"
    } else {
        "pass"
    };
    let env = Envelope {
        command: "check",
        config: config_echo(cfg),
        results: outputs,
        overall,
    };
    render(cfg, &env, |r, out| {
        if let Some(v) = &r.result {
            match v {
                CheckPayload::Brumer(b) => {
                    out.push_str(&format!(
                        "  brumer at p = {}: {:?} (dichotomy {})\n",
                        b.prime, b.outcome, b.dichotomy
                    ));
                    for (name, a) in &b.annihilation {
                        out.push_str(&format!("    {name}: {a:?}\n"));
                    }
                }
                CheckPayload::Bs(b) => {
                    out.push_str(&format!(
                        "  brumer-stark: {:?}; class killed: {}\n    generator: {}\n    smoothing: {}\n",
                        b.outcome, b.class_killed, b.generator_clause, b.smoothing_clause
                    ));
                }
                CheckPayload::DualSbs(d) => {
                    out.push_str(&format!(
                        "  dual strong containment at p = {}: {:?} ({}) via {}\n",
                        d.prime, d.outcome, d.membership, d.theta_provenance
                    ));
                }
            }
        }
    });
    if !all_ok {
        3
    } else {
        match overall {
            "pass" => 0,
            "fail" => 1,
            _ => 2,
        }
    }
}
