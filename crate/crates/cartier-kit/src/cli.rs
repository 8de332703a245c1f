//! Command-line entry point.
//!
//! Six subcommands mirror the library surface: `check-hopf`, `dual`,
//! `smash`, `points`, `ml-check`, `proalg`.  Objects come from JSON files
//! or from `catalog:` URIs (`catalog:mu_4@Z/6`, `catalog:alpha_3_1`,
//! `catalog:exp_pairing@5`, `catalog:dual_numbers@Q`...).  Every command
//! prints a human summary by default and the full report with `--json`;
//! reports are byte-deterministic.
//!
//! Exit codes: 0 when every check passes, 1 when the input is well-formed
//! but a verification fails, 2 when the input cannot be used at all
//! (unparseable file, bad shapes, wrong ring, window 0...).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cartier::{duality_bijection, points};
use crate::catalog;
use crate::error::{Error, Result};
use crate::exactlin::{perm_legs, BaseRing, SparseMatrix};
use crate::hopf::{dual_hopf, verify_hopf, AssocAlgebraData, HopfAlgebraData};
use crate::io;
use crate::modsys::{ml_verdict, MlStatus, ProSystem};
use crate::motive::{smash, smash_swap_iso, verify_hopf_pairing, HopfPairing};
use crate::proalg::{stage_quotients, verify_factorization};

#[derive(Parser)]
#[command(name = "cartier-kit", version, about = "Exact Cartier duality toolkit")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the machine-readable report instead of the summary.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hopf algebra axioms of an object file or catalog URI.
    CheckHopf { object: String },
    /// Dualize a Hopf algebra of finite rank.
    Dual {
        object: String,
        /// Write the dual object file here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Verify a Hopf pairing, build the smash product and its swap
    /// isomorphism.  Takes a pairing file/URI, or three files A B u.
    Smash {
        inputs: Vec<String>,
        /// Write the smash product algebra file here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the B-points of a Hopf algebra and verify the bijection
    /// with the grouplikes of the dual.
    Points { object: String, algebra: String },
    /// Window-relative Mittag-Leffler verdict for a pro system file.
    MlCheck {
        system: String,
        /// Stage window; defaults to the stored transition count.
        #[arg(long)]
        window: Option<usize>,
    },
    /// Stage quotients and factorization check for a pro-algebra
    /// presentation file.
    Proalg { presentation: String },
}

/// Machine-readable result of one invocation.
#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub outcome: String,
    pub exit_code: u8,
    pub checks: Value,
    pub payload: Value,
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotAHopfAlgebra(_)
        | Error::NotAHopfPairing(_)
        | Error::IsoVerificationFailure(_)
        | Error::BracketingMismatch
        | Error::AssociativityFailure(_) => 1,
        _ => 2,
    }
}

fn split_uri(arg: &str) -> Option<(&str, Option<&str>)> {
    let rest = arg.strip_prefix("catalog:")?;
    Some(match rest.split_once('@') {
        Some((name, ring)) => (name, Some(ring)),
        None => (rest, None),
    })
}

fn uri_ring(ring: Option<&str>) -> Result<BaseRing> {
    let token = ring.ok_or_else(|| Error::Invalid("catalog URI needs @RING".into()))?;
    BaseRing::parse_token(token)
}

fn catalog_hopf(name: &str, ring: Option<&str>) -> Result<HopfAlgebraData> {
    if let Some(n) = name.strip_prefix("mu_") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad mu_n order {n:?}")))?;
        if n == 0 {
            return Err(Error::Invalid("mu_n needs n >= 1".into()));
        }
        return Ok(catalog::mu_n(uri_ring(ring)?, n));
    }
    if let Some(orders) = name.strip_prefix("constant_") {
        let orders = orders
            .split('x')
            .map(|o| o.parse::<usize>().ok().filter(|&o| o >= 1))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid(format!("bad constant_group orders in {name:?}")))?;
        return Ok(catalog::constant_group(uri_ring(ring)?, &orders));
    }
    if let Some(pk) = name.strip_prefix("alpha_") {
        let (p, k) = pk
            .split_once('_')
            .ok_or_else(|| Error::Invalid(format!("alpha URIs look like alpha_p_k, not {name:?}")))?;
        let p = p
            .parse()
            .map_err(|_| Error::Invalid(format!("bad prime in {name:?}")))?;
        let k = k
            .parse()
            .map_err(|_| Error::Invalid(format!("bad exponent in {name:?}")))?;
        return catalog::alpha(p, k);
    }
    if name == "trivial" {
        return Ok(catalog::trivial(uri_ring(ring)?));
    }
    Err(Error::Invalid(format!("unknown catalog Hopf algebra {name:?}")))
}

fn load_hopf(arg: &str) -> Result<HopfAlgebraData> {
    match split_uri(arg) {
        Some((name, ring)) => catalog_hopf(name, ring),
        None => io::hopf_from_file(&io::read_json(Path::new(arg))?),
    }
}

fn load_algebra(arg: &str) -> Result<AssocAlgebraData> {
    if let Some((name, ring)) = split_uri(arg) {
        return match name {
            "scalar" => Ok(catalog::scalar_algebra(uri_ring(ring)?)),
            "dual_numbers" => Ok(catalog::dual_numbers(uri_ring(ring)?)),
            "split_pair" => Ok(catalog::split_pair(uri_ring(ring)?)),
            _ => Ok(catalog_hopf(name, ring)?.algebra()),
        };
    }
    io::algebra_from_file(&io::read_json(Path::new(arg))?)
}

fn load_pairing(inputs: &[String]) -> Result<HopfPairing> {
    match inputs {
        [single] => match split_uri(single) {
            Some((name, ring)) => {
                if name == "exp_pairing" {
                    let p = ring
                        .ok_or_else(|| Error::Invalid("exp_pairing URIs look like exp_pairing@p".into()))?
                        .parse()
                        .map_err(|_| Error::Invalid("bad prime in exp_pairing URI".into()))?;
                    catalog::exp_pairing(p)
                } else {
                    Err(Error::Invalid(format!("unknown catalog pairing {name:?}")))
                }
            }
            None => {
                let path = Path::new(single);
                let base = path.parent().unwrap_or(Path::new(".")).to_path_buf();
                io::pairing_from_file(&io::read_json(path)?, &base)
            }
        },
        [a, b, u] => {
            let a = load_hopf(a)?;
            let b = load_hopf(b)?;
            let u = io::matrix_from_file(a.ring, &io::read_json(Path::new(u))?)?;
            HopfPairing::new(a, b, u)
        }
        _ => Err(Error::Invalid(
            "smash takes one pairing file/URI, or three files: A B u".into(),
        )),
    }
}

fn flag(v: bool) -> &'static str {
    if v {
        "ok"
    } else {
        "FAIL"
    }
}

fn cmd_check_hopf(object: &str) -> Result<(Report, Vec<String>)> {
    let h = load_hopf(object)?;
    let report = verify_hopf(&h)?;
    let pass = report.axioms_hold();
    let mut lines = vec![format!("check-hopf {}", object)];
    for (name, v) in [
        ("assoc", report.assoc),
        ("unit law", report.unit_law),
        ("coassoc", report.coassoc),
        ("counit law", report.counit_law),
        ("bialgebra compat", report.bialgebra_compat),
        ("antipode law", report.antipode_law),
    ] {
        lines.push(format!("  {:<16} {}", name, flag(v)));
    }
    lines.push(format!(
        "  commutative: {}, cocommutative: {}",
        report.commutative, report.cocommutative
    ));
    lines.push(format!(
        "verdict: {}",
        if pass { "Hopf algebra axioms hold" } else { "NOT a Hopf algebra" }
    ));
    Ok((
        Report {
            command: "check-hopf".into(),
            inputs: vec![object.into()],
            outcome: if pass { "pass" } else { "fail" }.into(),
            exit_code: u8::from(!pass),
            checks: io::to_value(&report),
            payload: json!({
                "ring": h.ring.token(),
                "rank": h.rank,
            }),
        },
        lines,
    ))
}

fn cmd_dual(object: &str, out: Option<&Path>) -> Result<(Report, Vec<String>)> {
    let h = load_hopf(object)?;
    let dual = dual_hopf(&h)?;
    let file = io::hopf_to_file(&dual);
    if let Some(path) = out {
        io::write_json(path, &file)?;
    }
    let mut lines = vec![format!(
        "dual of {}: rank {} over {}",
        object,
        dual.rank,
        dual.ring.token()
    )];
    if let Some(path) = out {
        lines.push(format!("wrote {}", path.display()));
    }
    Ok((
        Report {
            command: "dual".into(),
            inputs: vec![object.into()],
            outcome: "pass".into(),
            exit_code: 0,
            checks: json!({ "axioms_hold": true }),
            payload: json!({ "dual": io::to_value(&file) }),
        },
        lines,
    ))
}

fn cmd_smash(inputs: &[String], out: Option<&Path>) -> Result<(Report, Vec<String>)> {
    let pairing = load_pairing(inputs)?;
    let diagrams = verify_hopf_pairing(&pairing)?;
    if !diagrams.all() {
        let lines = vec![
            format!("smash {}", inputs.join(" ")),
            format!("  mul_A vs comul_B  {}", flag(diagrams.mul_a_vs_comul_b)),
            format!("  mul_B vs comul_A  {}", flag(diagrams.mul_b_vs_comul_a)),
            format!("  unit_A vs counit_B {}", flag(diagrams.unit_a_vs_counit_b)),
            format!("  unit_B vs counit_A {}", flag(diagrams.unit_b_vs_counit_a)),
            "verdict: NOT a Hopf pairing".into(),
        ];
        return Ok((
            Report {
                command: "smash".into(),
                inputs: inputs.to_vec(),
                outcome: "fail".into(),
                exit_code: 1,
                checks: io::to_value(&diagrams),
                payload: Value::Null,
            },
            lines,
        ));
    }
    let algebra = smash(&pairing)?;
    let iso = smash_swap_iso(&pairing)?;
    let file = io::algebra_to_file(&algebra);
    if let Some(path) = out {
        io::write_json(path, &file)?;
    }
    // Descriptive structure of the product: a trivial pairing degenerates
    // to the plain tensor algebra, and rank >= 2 factors get the Weyl
    // relation probed on the first generators.
    let (na, nb) = (pairing.a.rank, pairing.b.rank);
    let ring = algebra.ring;
    let big = algebra.rank;
    let plain = pairing
        .a
        .mul
        .kron(&pairing.b.mul)?
        .mat_mul(&perm_legs(ring, &[na, nb, na, nb], &[0, 2, 1, 3]))?;
    let tensor_algebra = algebra.mul == plain;
    let weyl_relation = if na >= 2 && nb >= 2 {
        let col = |u: usize, v: usize| -> Result<SparseMatrix> {
            algebra
                .mul
                .mat_mul(&SparseMatrix::basis_col(ring, big * big, u * big + v))
        };
        let yx = col(1, nb)?;
        let xy_plus_one = col(nb, 1)?.add(&algebra.unit)?;
        Some(yx == xy_plus_one)
    } else {
        None
    };
    let mut lines = vec![
        format!("smash {}", inputs.join(" ")),
        "  pairing diagrams   ok".into(),
        format!("  smash product      rank {}", algebra.rank),
        "  swap isomorphism   ok".into(),
        format!("  tensor algebra     {}", if tensor_algebra { "yes" } else { "no" }),
    ];
    if let Some(w) = weyl_relation {
        lines.push(format!("  y*x = x*y + 1      {}", if w { "pass" } else { "fail" }));
    }
    if let Some(path) = out {
        lines.push(format!("wrote {}", path.display()));
    }
    let mut checks = match io::to_value(&diagrams) {
        Value::Object(m) => m,
        _ => unreachable!("pairing report serializes as an object"),
    };
    checks.insert("swap_iso_verified".into(), Value::Bool(true));
    Ok((
        Report {
            command: "smash".into(),
            inputs: inputs.to_vec(),
            outcome: "pass".into(),
            exit_code: 0,
            checks: Value::Object(checks),
            payload: json!({
                "smash": io::to_value(&file),
                "swap_iso": io::to_value(&io::matrix_to_file(&iso)),
                "structure": {
                    "tensor_algebra": tensor_algebra,
                    "weyl_relation": weyl_relation,
                },
            }),
        },
        lines,
    ))
}

fn cmd_points(object: &str, algebra: &str) -> Result<(Report, Vec<String>)> {
    let h = load_hopf(object)?;
    let b = load_algebra(algebra)?;
    let pts = points(&h, &b)?;
    let duality = duality_bijection(&h, &b)?;
    let pass = duality.bijection_verified;
    let lines = vec![
        format!("points of {} over {}", object, algebra),
        format!("  points:     {}", duality.points_count),
        format!("  grouplikes: {}", duality.grouplikes_count),
        format!("  bijection:  {}", flag(pass)),
    ];
    Ok((
        Report {
            command: "points".into(),
            inputs: vec![object.into(), algebra.into()],
            outcome: if pass { "pass" } else { "fail" }.into(),
            exit_code: u8::from(!pass),
            checks: io::to_value(&duality),
            payload: json!({
                "points": pts
                    .iter()
                    .map(|m| io::to_value(&io::matrix_to_file(m)))
                    .collect::<Vec<_>>(),
            }),
        },
        lines,
    ))
}

fn load_pro_system(arg: &str) -> Result<ProSystem> {
    match io::system_from_file(&io::read_json(Path::new(arg))?)? {
        io::SystemKind::Pro(s) => Ok(s),
        io::SystemKind::Ind(_) => Err(Error::Invalid(
            "ml-check works on pro systems; this file declares direction \"ind\"".into(),
        )),
    }
}

fn cmd_ml_check(system: &str, window: Option<usize>) -> Result<(Report, Vec<String>)> {
    let s = load_pro_system(system)?;
    let window = window.unwrap_or_else(|| s.transitions().len());
    if window == 0 {
        return Err(Error::Invalid("window must be at least 1".into()));
    }
    let verdict = ml_verdict(&s, window)?;
    let pass = verdict.all_stabilized();
    let mut lines = vec![format!("ml-check {} --window {}", system, window)];
    let mut records = Vec::new();
    for r in &verdict.records {
        let (status, human) = match &r.status {
            MlStatus::StabilizedAt(b) => (
                json!({ "stabilized_at": b }),
                format!("stage {}: stabilized at {}", r.stage, b),
            ),
            MlStatus::NotStabilizedWithinWindow => (
                Value::String("not_stabilized_within_window".into()),
                format!("stage {}: not stabilized within window {}", r.stage, window),
            ),
        };
        lines.push(format!("  {}", human));
        records.push(json!({
            "stage": r.stage,
            "status": status,
            "image": r.image.as_ref().map(|m| io::to_value(&io::matrix_to_file(m))),
        }));
    }
    lines.push(format!(
        "verdict: {}",
        if pass {
            "Mittag-Leffler within the window"
        } else {
            "not Mittag-Leffler within the window"
        }
    ));
    Ok((
        Report {
            command: "ml-check".into(),
            inputs: vec![system.into()],
            outcome: if pass { "pass" } else { "fail" }.into(),
            exit_code: u8::from(!pass),
            checks: json!({ "all_stabilized": pass }),
            payload: json!({ "window": window, "records": records }),
        },
        lines,
    ))
}

fn cmd_proalg(presentation: &str) -> Result<(Report, Vec<String>)> {
    let p = io::presentation_from_file(&io::read_json(Path::new(presentation))?)?;
    let quotients = stage_quotients(&p)?;
    let factorization = verify_factorization(&p)?;
    let mut lines = vec![format!("proalg {}", presentation)];
    let mut payload = Vec::new();
    for sq in &quotients {
        lines.push(format!(
            "  stage {}: quotient rank {} ({} relations)",
            sq.stage,
            sq.quotient_rank,
            sq.relations.rows()
        ));
        payload.push(json!({
            "stage": sq.stage,
            "quotient_rank": sq.quotient_rank,
            "projection": io::to_value(&io::matrix_to_file(&sq.projection)),
            "induced_mul": io::to_value(&io::matrix_to_file(&sq.induced_mul)),
            "induced_unit": io::to_value(&io::matrix_to_file(&sq.induced_unit)),
            "relations": io::to_value(&io::matrix_to_file(&sq.relations)),
        }));
    }
    lines.push(format!("  factorization: {}", flag(factorization)));
    Ok((
        Report {
            command: "proalg".into(),
            inputs: vec![presentation.into()],
            outcome: if factorization { "pass" } else { "fail" }.into(),
            exit_code: u8::from(!factorization),
            checks: json!({ "factorization": factorization }),
            payload: json!({ "stage_quotients": payload }),
        },
        lines,
    ))
}

fn execute(cli: &Cli) -> Result<(Report, Vec<String>)> {
    match &cli.command {
        Command::CheckHopf { object } => cmd_check_hopf(object),
        Command::Dual { object, out } => cmd_dual(object, out.as_deref()),
        Command::Smash { inputs, out } => cmd_smash(inputs, out.as_deref()),
        Command::Points { object, algebra } => cmd_points(object, algebra),
        Command::MlCheck { system, window } => cmd_ml_check(system, *window),
        Command::Proalg { presentation } => cmd_proalg(presentation),
    }
}

/// Parses `std::env::args`, runs the command, prints the report and returns
/// the process exit code.
pub fn run() -> u8 {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok((report, lines)) => {
            if cli.json {
                print!("{}", io::canonical_json(&report));
            } else {
                for line in lines {
                    println!("{}", line);
                }
            }
            report.exit_code
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_code_for(&e)
        }
    }
}
