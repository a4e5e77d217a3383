use std::path::{Path, PathBuf};

use mdm_core::files::{export_bundle, load_bundle, write_atomic, write_construction};
use mdm_core::freq::{strong_mode_bounds, Mode};
use mdm_core::norms::{flatness_residual, growth_scan, norm_report, ordinary_entries};
use mdm_core::pipeline::{construct, PipelineConfig};
use mdm_core::verify::{verify_bundle, VerifyOutcome, VerifyParams};
use mdm_core::Error;
use num_traits::ToPrimitive;
use serde_json::json;

use crate::config::Config;
use crate::{Command, CommonArgs};

pub const PASS: u8 = 0;
pub const FAIL: u8 = 1;
pub const BAD_INPUT: u8 = 2;

pub const ORDINARY_FILE: &str = "ordinary.json";

/// Exit code for an error: input and file problems are 2, failed
/// construction or certification is 1.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidInput(_)
        | Error::Parse(_)
        | Error::Io(_)
        | Error::EmptyInput
        | Error::EnumTooLarge { .. }
        | Error::Mode => BAD_INPUT,
        Error::Domination { .. }
        | Error::AntiDerivative { .. }
        | Error::Collision { .. }
        | Error::ChainViolation(_)
        | Error::BaseOverflow => FAIL,
    }
}

fn report_error(e: &Error) -> u8 {
    let code = exit_code(e);
    eprintln!(
        "{}",
        json!({ "error": e.kind(), "message": e.to_string(), "exit": code })
    );
    code
}

fn fail(check: &str, message: String) -> u8 {
    eprintln!(
        "{}",
        json!({ "error": "verification", "check": check, "message": message, "exit": FAIL })
    );
    FAIL
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

fn settings(config: Option<&Path>, common: &CommonArgs) -> Result<(Config, PipelineConfig), Error> {
    let (mut cfg, warnings) = Config::load(config)?;
    warn_all(&warnings);
    if let Some(g) = common.grid {
        cfg.grid = g;
    }
    if let Some(b) = common.kappa_bits {
        cfg.kappa_bits = b;
    }
    if let Some(l) = common.lambda {
        cfg.lambda = l;
    }
    if let Some(b) = &common.base {
        cfg.initial_base = Some(b.clone());
    }
    if let Some(b) = &common.max_base {
        cfg.max_base = b.clone();
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    let pipeline = cfg.pipeline()?;
    Ok((cfg, pipeline))
}

pub fn run(config: Option<&Path>, common: &CommonArgs, command: Command) -> u8 {
    let (cfg, pipeline) = match settings(config, common) {
        Ok(s) => s,
        Err(e) => return report_error(&e),
    };
    let result = match command {
        Command::Construct { n, mode, out } => {
            cmd_construct(n, mode, &out.unwrap_or(cfg.out_dir.clone()), pipeline)
        }
        Command::Scan {
            n_min,
            n_max,
            step,
            scalar_only,
            csv,
            plot,
        } => cmd_scan(n_min, n_max, step, scalar_only, csv, plot, &pipeline),
        Command::Verify { bundle } => cmd_verify(&bundle, &pipeline),
        Command::Export { bundle, out } => cmd_export(&bundle, &out),
    };
    result.unwrap_or_else(|e| report_error(&e))
}

fn verify_params(p: &PipelineConfig) -> VerifyParams {
    VerifyParams {
        grid: p.grid,
        conditions: p.scheduler.conditions.clone(),
        ..Default::default()
    }
}

fn print_outcome(out: &VerifyOutcome) {
    warn_all(&out.warnings);
    for c in &out.checks {
        println!(
            "{} {}: {}",
            if c.ok { "ok  " } else { "FAIL" },
            c.name,
            c.detail
        );
    }
}

fn cmd_construct(n: usize, mode: Mode, out: &Path, mut cfg: PipelineConfig) -> Result<u8, Error> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    cfg.scheduler.mode = mode;
    let c = construct(n, &cfg)?;
    let report = norm_report(&c.bundle, c.flat(), &cfg.grid)?;
    write_construction(out, &c, Some(&report))?;

    let residual = flatness_residual(&c.pair, &cfg.grid);
    if residual > 1e-9 {
        return Ok(fail("flatness", format!("residual {residual:e}")));
    }
    if let Some(e) = report
        .entries
        .iter()
        .find(|e| e.grid_sup > e.l1_bound + 1e-9)
    {
        return Ok(fail(
            "l1_bound",
            format!("{} {} grid sup exceeds its l1 bound", e.poly, e.view),
        ));
    }
    if mode == Mode::Strong {
        let b = strong_mode_bounds(c.freqs(), &c.pair)?;
        let views = ordinary_entries(&c.bundle, &cfg.grid)?;
        let majorant_ok = b.majorant < num_rational::BigRational::from_integer(2.into());
        let record = json!({
            "s_val": b.s_val,
            "s_d1": b.s_d1,
            "s_d2": b.s_d2,
            "majorant": b.majorant.to_string(),
            "majorant_f64": b.majorant.to_f64(),
            "all_below_two": b.all_below_two() && majorant_ok,
            "views": views.iter().map(|e| json!({
                "poly": e.poly, "view": e.view, "grid_sup": e.grid_sup, "l1_bound": e.l1_bound,
            })).collect::<Vec<_>>(),
        });
        write_atomic(
            &out.join(ORDINARY_FILE),
            &(serde_json::to_string_pretty(&record)? + "\n"),
        )?;
        if !(b.all_below_two() && majorant_ok) {
            return Ok(fail(
                "ordinary_bounds",
                format!("sums {} {} {} not all below 2", b.s_val, b.s_d1, b.s_d2),
            ));
        }
        if let Some(e) = views.iter().find(|e| e.grid_sup > e.l1_bound + 1e-9) {
            return Ok(fail(
                "l1_bound",
                format!("{} {} grid sup exceeds its l1 bound", e.poly, e.view),
            ));
        }
    }

    let outcome = verify_bundle(out, &verify_params(&cfg))?;
    print_outcome(&outcome);
    let b = &c.bundle.bounds;
    println!(
        "n={n} mode={mode} base={} A={:?} mixed_best={} upper_pure1={} upper_pure2={} c={}",
        c.freqs().base,
        c.selection.a_set,
        b.mixed_best(),
        b.upper_pure1,
        b.upper_pure2,
        b.ratio()
    );
    Ok(if outcome.passed() {
        PASS
    } else {
        fail("verify", "written bundle failed re-verification".into())
    })
}

fn cmd_scan(
    n_min: usize,
    n_max: usize,
    step: usize,
    scalar_only: bool,
    csv: Option<PathBuf>,
    plot: Option<PathBuf>,
    cfg: &PipelineConfig,
) -> Result<u8, Error> {
    if n_min == 0 || n_min > n_max || step == 0 {
        return Err(Error::InvalidInput(format!(
            "empty scan range {n_min}..={n_max} step {step}"
        )));
    }
    let limit = cfg.scheduler.conditions.enum_limit;
    if !scalar_only && n_max > limit {
        return Err(Error::EnumTooLarge { n: n_max, limit });
    }
    let ns: Vec<usize> = (n_min..=n_max).step_by(step).collect();
    let table = growth_scan(&ns, scalar_only, cfg);
    let text = table.to_csv()?;
    match csv {
        Some(path) => write_atomic(&path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = plot {
        table.write_plot(&path)?;
    }
    Ok(if table.all_ok() {
        PASS
    } else {
        fail("scan", "some rows failed; see the status column".into())
    })
}

fn cmd_verify(bundle: &Path, cfg: &PipelineConfig) -> Result<u8, Error> {
    let outcome = verify_bundle(bundle, &verify_params(cfg))?;
    print_outcome(&outcome);
    if outcome.passed() {
        Ok(PASS)
    } else {
        let names: Vec<_> = outcome.failures().map(|c| c.name).collect();
        Ok(fail(
            "verify",
            format!("failed checks: {}", names.join(", ")),
        ))
    }
}

fn cmd_export(bundle: &Path, out: &Path) -> Result<u8, Error> {
    let loaded = load_bundle(bundle)?;
    warn_all(&loaded.warnings);
    export_bundle(out, &loaded)?;
    Ok(PASS)
}
