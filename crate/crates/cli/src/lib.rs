//! Command-line front end: load scenes or spaces, run certifications,
//! diagnoses, and experiments, and emit schema-versioned JSON verdicts.
//!
//! Exit codes: 0 success/affirmative, 1 negative verdict, 2 input error,
//! 3 hypothesis unavailable, 4 internal-consistency alarm.
//!
//! Every sampling command requires an explicit seed; identical invocations
//! produce byte-identical JSON.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use mck_core::defaults;
use mck_core::diagnosis::{diagnose, DiagnoseParams, Scene};
use mck_core::geometry::{klee_certify, GridRegion, Verdict};
use mck_core::lgp::{lgp_verdict, DiscreteSpace, LgpParams, LgpVerdict};
use mck_core::scenes::{
    builtin_scene, builtin_space, discretize_scene, horn_interval_experiment,
    schur_horn_experiment, toric_polytope_experiment, DiscretizeParams,
};
use mck_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_ALARM: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "mck", version, about = "momentum-image convexity checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify convexity of a rasterized region file.
    CertifyConvex(CertifyArgs),
    /// Diagnose openness-onto-image of a built-in scene.
    Diagnose(DiagnoseArgs),
    /// Run the local-to-global verdict on a space or scene.
    Lgp(LgpArgs),
    /// Run a classical-oracle experiment.
    Experiment(ExperimentArgs),
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Region JSON file ({origin, h, cells, closed}).
    #[arg(long)]
    file: PathBuf,
    /// Neighborhood radius; defaults to 4 cells.
    #[arg(long, value_parser = parse_scalar)]
    radius: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DiagnoseArgs {
    /// Scene name (positional or --scene).
    scene_pos: Option<String>,
    #[arg(long)]
    scene: Option<String>,
    /// Raster cell size (accepts fractions like 1/64).
    #[arg(long, value_parser = parse_scalar, default_value = "1/64")]
    h: f64,
    #[arg(long, default_value_t = 200_000)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 600)]
    probes: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct LgpArgs {
    /// Scene or space name (positional or --scene/--file).
    scene_pos: Option<String>,
    #[arg(long)]
    scene: Option<String>,
    /// Discrete space JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Samples for scene discretization.
    #[arg(long, default_value_t = 1500)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Hypothesis-check hop radius.
    #[arg(long, default_value_t = 1)]
    radius: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Experiment name: schur-horn | toric | horn.
    name: String,
    /// Spectrum for schur-horn, comma separated (e.g. 2,1,0).
    #[arg(long)]
    lambda: Option<String>,
    /// Spectra for the horn interval, comma separated pairs.
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, value_parser = parse_scalar, default_value = "1e-9")]
    tol: f64,
    /// Interval fill tolerance for horn.
    #[arg(long, value_parser = parse_scalar, default_value = "0.02")]
    tol_fill: f64,
    /// Scene for the toric experiment.
    #[arg(long, default_value = "cp2_toric")]
    scene: String,
    #[arg(long, value_parser = parse_scalar, default_value = "1/128")]
    h: f64,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json (default) or tsv point dumps alongside the report.
    #[arg(long, default_value = "json")]
    format: String,
}

/// Parse "0.015625", "1e-9", or "1/64".
pub fn parse_scalar(s: &str) -> Result<f64, String> {
    if let Some((num, den)) = s.split_once('/') {
        let n: f64 = num.trim().parse().map_err(|e| format!("{e}"))?;
        let d: f64 = den.trim().parse().map_err(|e| format!("{e}"))?;
        if d == 0.0 {
            return Err("zero denominator".into());
        }
        return Ok(n / d);
    }
    s.trim().parse().map_err(|e| format!("{e}"))
}

fn parse_vector(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| parse_scalar(p.trim()))
        .collect::<Result<Vec<f64>, String>>()
}

/// Parallelism cap from the environment; the engine runs sequentially, so
/// any positive cap is honored.
pub fn thread_cap() -> usize {
    std::env::var("MCK_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|v| *v >= 1)
        .unwrap_or(1)
}

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    result: T,
}

fn emit<T: Serialize>(
    command: &str,
    seed: Option<u64>,
    result: T,
    out: &Option<PathBuf>,
    code: i32,
) -> Outcome {
    let report = Report {
        schema: 1,
        command,
        seed,
        result,
    };
    let json = serde_json::to_string(&report).expect("report serialization");
    if let Some(dir) = out {
        let _ = std::fs::create_dir_all(dir);
        let _ = std::fs::write(dir.join(format!("{command}.json")), &json);
    }
    Outcome { code, stdout: json }
}

fn input_error(command: &str, message: String) -> Outcome {
    #[derive(Serialize)]
    struct Err1 {
        error: String,
    }
    emit(command, None, Err1 { error: message }, &None, EXIT_INPUT)
}

/// Entry point shared by the binary and the test harness.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return Outcome {
                code: EXIT_INPUT,
                stdout: e.to_string(),
            }
        }
    };
    let _ = thread_cap();
    match cli.command {
        Command::CertifyConvex(a) => cmd_certify_convex(a),
        Command::Diagnose(a) => cmd_diagnose(a),
        Command::Lgp(a) => cmd_lgp(a),
        Command::Experiment(a) => cmd_experiment(a),
    }
}

fn cmd_certify_convex(args: CertifyArgs) -> Outcome {
    const CMD: &str = "certify-convex";
    let text = match std::fs::read_to_string(&args.file) {
        Ok(t) => t,
        Err(e) => return input_error(CMD, format!("cannot read {}: {e}", args.file.display())),
    };
    let region: GridRegion = match serde_json::from_str(&text) {
        Ok(r) => r,
        Err(e) => return input_error(CMD, format!("malformed region JSON: {e}")),
    };
    let radius = args
        .radius
        .unwrap_or(defaults::LOCAL_CONVEXITY_RADIUS_CELLS * region.h);
    match klee_certify(&region, radius) {
        Ok(cert) => {
            let code = if cert.verdict == Verdict::Convex {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            emit(CMD, None, cert, &args.out, code)
        }
        Err(Error::KleeHypothesisUnavailable) => {
            #[derive(Serialize)]
            struct Unavailable {
                error: String,
            }
            let o = emit(
                CMD,
                None,
                Unavailable {
                    error: "Klee hypothesis unavailable: region not flagged closed".into(),
                },
                &args.out,
                EXIT_HYPOTHESIS,
            );
            o
        }
        Err(e) => input_error(CMD, e.to_string()),
    }
}

#[derive(Serialize)]
struct DiagnoseReport {
    scene: String,
    h: f64,
    samples: usize,
    verdict: mck_core::diagnosis::OpennessVerdict,
    /// Local convexity of the image raster: total violations and how many
    /// sit strictly away from the raster boundary (more than the check
    /// radius from any unoccupied cell).
    lc_violations: usize,
    lc_interior_violations: usize,
}

fn cmd_diagnose(args: DiagnoseArgs) -> Outcome {
    const CMD: &str = "diagnose";
    let Some(name) = args.scene.clone().or(args.scene_pos.clone()) else {
        return input_error(CMD, "missing scene name".into());
    };
    let scene: Scene = match builtin_scene(&name) {
        Ok(s) => s,
        Err(e) => return input_error(CMD, e.to_string()),
    };
    let params = DiagnoseParams {
        h: args.h,
        n_samples: args.samples,
        seed: args.seed,
        max_probes: args.probes,
        ccf_probes: 200,
    };
    let verdict = match diagnose(&scene, &params) {
        Ok(v) => v,
        Err(e) => return input_error(CMD, e.to_string()),
    };

    // Re-rasterize (same seed) for the local-convexity diagnostic.
    let (lo, hi) = scene.image_box.clone();
    let (lc_violations, lc_interior) = match mck_core::diagnosis::rasterize_images(
        &scene,
        &lo,
        &hi,
        args.h,
        args.samples,
        args.seed,
    ) {
        Ok(r) => {
            let radius = defaults::LOCAL_CONVEXITY_RADIUS_CELLS * args.h;
            match r.image.is_locally_convex(radius) {
                Ok(viol) => {
                    let interior = viol
                        .iter()
                        .filter(|c| is_interior_violation(&r.image, c, 4))
                        .count();
                    (viol.len(), interior)
                }
                Err(_) => (0, 0),
            }
        }
        Err(_) => (0, 0),
    };

    let code = if verdict.open_onto_image {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    emit(
        CMD,
        Some(args.seed),
        DiagnoseReport {
            scene: name,
            h: args.h,
            samples: args.samples,
            verdict,
            lc_violations,
            lc_interior_violations: lc_interior,
        },
        &args.out,
        code,
    )
}

/// A violation cell is interior when every cell within Chebyshev distance
/// `reach` is occupied (no hole or boundary nearby to attribute it to).
fn is_interior_violation(raster: &GridRegion, cell: &[i64], reach: i64) -> bool {
    let dim = raster.dim();
    let mut cur = vec![-reach; dim];
    loop {
        let probe: Vec<i64> = cell.iter().zip(&cur).map(|(a, b)| a + b).collect();
        if !raster.contains_cell(&probe) {
            return false;
        }
        let mut k = 0;
        loop {
            if k == dim {
                return true;
            }
            cur[k] += 1;
            if cur[k] <= reach {
                break;
            }
            cur[k] = -reach;
            k += 1;
        }
    }
}

/// Exit code for a local-to-global verdict: alarms dominate, then failed
/// hypotheses, then success.
pub fn exit_code_for_verdict(v: &LgpVerdict) -> i32 {
    if !v.consistent {
        EXIT_ALARM
    } else if v.hypotheses.lfc_ok && v.hypotheses.lcd_ok && v.hypotheses.closed_ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[derive(Serialize)]
struct LgpReport {
    source: String,
    verdict: LgpVerdict,
}

fn cmd_lgp(args: LgpArgs) -> Outcome {
    const CMD: &str = "lgp";
    let source;
    let space: DiscreteSpace = if let Some(file) = &args.file {
        source = file.display().to_string();
        let text = match std::fs::read_to_string(file) {
            Ok(t) => t,
            Err(e) => return input_error(CMD, format!("cannot read {}: {e}", file.display())),
        };
        match DiscreteSpace::from_json(&text) {
            Ok(s) => s,
            Err(e) => return input_error(CMD, format!("malformed space JSON: {e}")),
        }
    } else if let Some(name) = args.scene.clone().or(args.scene_pos.clone()) {
        source = name.clone();
        if let Ok(space) = builtin_space(&name) {
            space
        } else {
            match builtin_scene(&name) {
                Ok(scene) => {
                    let d = DiscretizeParams {
                        n_points: args.samples,
                        k: 8,
                        seed: args.seed,
                        eps: None,
                        truncation: None,
                    };
                    match discretize_scene(&scene, &d) {
                        Ok(s) => s,
                        Err(e) => return input_error(CMD, e.to_string()),
                    }
                }
                Err(e) => return input_error(CMD, e.to_string()),
            }
        }
    } else {
        return input_error(CMD, "need --file or a scene name".into());
    };

    let params = LgpParams {
        hop_radius: args.radius,
        ..LgpParams::default()
    };
    match lgp_verdict(&space, &params) {
        Ok(v) => {
            let code = exit_code_for_verdict(&v);
            emit(
                CMD,
                Some(args.seed),
                LgpReport { source, verdict: v },
                &args.out,
                code,
            )
        }
        Err(Error::MissingCones(n)) => input_error(CMD, format!("declared cones missing on {n} vertices")),
        Err(e) => input_error(CMD, e.to_string()),
    }
}

#[derive(Serialize)]
struct ExperimentOut {
    name: String,
    report: mck_core::scenes::ExperimentReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    hull: Option<Vec<mck_core::geometry::Point>>,
}

fn cmd_experiment(args: ExperimentArgs) -> Outcome {
    const CMD: &str = "experiment";
    let seed = args.seed;
    let (mut report, hull) = match args.name.as_str() {
        "schur-horn" => {
            let lambda = match args.lambda.as_deref().map(parse_vector).transpose() {
                Ok(v) => v.unwrap_or_else(|| vec![2.0, 1.0, 0.0]),
                Err(e) => return input_error(CMD, e),
            };
            match schur_horn_experiment(&lambda, args.trials, args.tol, seed) {
                Ok(r) => (r, None),
                Err(e) => return input_error(CMD, e.to_string()),
            }
        }
        "toric" => {
            let scene = match builtin_scene(&args.scene) {
                Ok(s) => s,
                Err(e) => return input_error(CMD, e.to_string()),
            };
            match toric_polytope_experiment(&scene, args.samples, args.h, seed) {
                Ok((r, hull)) => (r, Some(hull)),
                Err(e) => return input_error(CMD, e.to_string()),
            }
        }
        "horn" => {
            let to_pair = |v: &Option<String>| -> Result<[f64; 2], String> {
                match v {
                    None => Ok([1.0, 0.0]),
                    Some(text) => {
                        let x = parse_vector(text)?;
                        if x.len() == 2 {
                            Ok([x[0], x[1]])
                        } else {
                            Err("horn spectra must have two entries".into())
                        }
                    }
                }
            };
            let (a, b) = match (to_pair(&args.a), to_pair(&args.b)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return input_error(CMD, e),
            };
            match horn_interval_experiment(&a, &b, args.trials, args.tol_fill, seed) {
                Ok(r) => (r, None),
                Err(e) => return input_error(CMD, e.to_string()),
            }
        }
        other => {
            return input_error(
                CMD,
                format!("unknown experiment `{other}`; available: schur-horn, toric, horn"),
            )
        }
    };

    if args.format == "tsv" {
        if let Some(dir) = &args.out {
            let _ = std::fs::create_dir_all(dir);
            if let Some(h) = &hull {
                let mut tsv = String::from("x\ty\n");
                for p in h {
                    tsv.push_str(&format!("{}\t{}\n", p[0], p[1]));
                }
                let path = dir.join(format!("{}_hull.tsv", args.name));
                if std::fs::write(&path, tsv).is_ok() {
                    report.artifacts.push(path.display().to_string());
                }
            }
        }
    }

    let code = if report.failures == 0 {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    emit(
        CMD,
        Some(seed),
        ExperimentOut {
            name: args.name,
            report,
            hull,
        },
        &args.out,
        code,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_parsing() {
        assert_eq!(parse_scalar("1/64").unwrap(), 1.0 / 64.0);
        assert_eq!(parse_scalar("0.5").unwrap(), 0.5);
        assert_eq!(parse_scalar("1e-9").unwrap(), 1e-9);
        assert!(parse_scalar("1/0").is_err());
    }

    #[test]
    fn exit_codes_for_mock_verdicts() {
        use mck_core::lgp::verdict::{ConclusionBlock, HypothesisBlock};
        let mk = |hyp: bool, concl: bool, consistent: bool| LgpVerdict {
            hypotheses: HypothesisBlock {
                lfc_ok: hyp,
                lcd_ok: hyp,
                closed_ok: hyp,
                lfc_witnesses: vec![],
                lcd_witnesses: vec![],
            },
            conclusions: ConclusionBlock {
                fibers_connected: concl,
                open_onto_image: concl,
                image_convex: concl,
                disconnected_fiber_witnesses: vec![],
                openness_witnesses: vec![],
                resolution_suspect: vec![],
            },
            consistent,
        };
        assert_eq!(exit_code_for_verdict(&mk(true, true, true)), EXIT_OK);
        assert_eq!(exit_code_for_verdict(&mk(false, true, true)), EXIT_NEGATIVE);
        // Hand-built inconsistent mock: hypotheses pass, conclusions
        // overridden false.
        assert_eq!(exit_code_for_verdict(&mk(true, false, false)), EXIT_ALARM);
    }

    #[test]
    fn unknown_scene_is_input_error() {
        let o = run(["mck", "diagnose", "nope", "--seed", "1"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.stdout.contains("available"));
    }

    #[test]
    fn missing_file_is_input_error() {
        let o = run(["mck", "certify-convex", "--file", "/nonexistent.json"]);
        assert_eq!(o.code, EXIT_INPUT);
    }
}
