//! Independent re-verification of a construction from its files.
//!
//! Nothing stored is trusted: condition sums are recomputed exactly from
//! the schedule, every certificate term is matched against the closed-form
//! coefficient of its subset, and the stored bounds are recomputed from
//! the certificates and the coefficient schedule.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64;

use crate::error::Result;
use crate::files::{load_bundle, LoadedBundle};
use crate::freq::{enumerate_signed_sums, verify_conditions_with, ConditionParams, FreqSchedule};
use crate::norms::{flatness_residual_of, GridSpec};
use crate::poly::{ExpPair, SparsePoly};
use crate::rs::{
    check_chain, check_sources, choose_subset, expected_coefficient, mixed_at_one, scalar_trace,
    ScalarBounds,
};

#[derive(Clone, Debug)]
pub struct VerifyParams {
    /// Tolerance for recomputed floating-point quantities.
    pub tolerance: f64,
    pub grid: GridSpec,
    pub conditions: ConditionParams,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            tolerance: 1e-9,
            grid: GridSpec::default(),
            conditions: ConditionParams::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOutcome {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }

    fn push(&mut self, name: &'static str, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            ok,
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, name: &'static str, r: Result<String>) {
        match r {
            Ok(detail) => self.push(name, true, detail),
            Err(e) => self.push(name, false, e.to_string()),
        }
    }
}

/// Loads and verifies; `Err` only for unreadable or malformed files.
pub fn verify_bundle(path: &Path, params: &VerifyParams) -> Result<VerifyOutcome> {
    let loaded = load_bundle(path)?;
    Ok(verify_loaded(&loaded, params))
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs().max(b.abs()))
}

fn close_c(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm().max(b.norm()))
}

pub fn verify_loaded(b: &LoadedBundle, params: &VerifyParams) -> VerifyOutcome {
    let mut out = VerifyOutcome {
        warnings: b.warnings.clone(),
        ..Default::default()
    };
    let tol = params.tolerance;
    let pb = &b.bundle;
    let s = &b.schedule;

    let meta_ok = s.n == pb.coeffs.n() && s.kappa == pb.kappa && s.a_set == pb.file.a_set;
    out.push(
        "metadata",
        meta_ok,
        format!("n={}, kappa={}, A={:?}", s.n, s.kappa, s.a_set),
    );

    let rebuilt = FreqSchedule::from_base(s.n, &s.a_set, &s.kappa, &s.base, s.mode);
    out.push(
        "schedule_rule",
        rebuilt.freqs == s.freqs,
        format!("base {}", s.base),
    );

    let report = verify_conditions_with(s, &params.conditions);
    match &report {
        Ok(r) => {
            out.push(
                "conditions",
                r.passed && r.ratio_bounded,
                format!(
                    "sum_i≤{:e} sum_ii≤{:e} sum_iii≤{:e} iv={}",
                    r.sum_i.hi_f64(),
                    r.sum_ii.hi_f64(),
                    r.sum_iii.hi_f64(),
                    r.iv_ok
                ),
            );
            out.push(
                "conditions_file",
                *r == b.conditions,
                "stored report equals recomputed one",
            );
        }
        Err(e) => out.push("conditions", false, e.to_string()),
    }

    let trace = scalar_trace(&pb.coeffs);
    let selection = choose_subset(&trace, &pb.coeffs);
    match &selection {
        Ok(sel) => out.push(
            "selection",
            sel.a_set == pb.file.a_set && sel.branch == pb.branch,
            format!("branch {} A={:?}", sel.branch, sel.a_set),
        ),
        Err(e) => out.push("selection", false, e.to_string()),
    }

    out.push_result(
        "sources",
        check_sources(&pb.f_source, &pb.g_source).map(|_| "m1 ≥ 1 everywhere".into()),
    );
    out.push_result("terms", check_terms(b, params, tol));

    let mixed = mixed_at_one(&pb.f_source).and_then(|f| Ok((f, mixed_at_one(&pb.g_source)?)));
    match mixed {
        Ok((mf, mg)) => {
            let ok = close_c(mf, pb.bounds.mixed_at_1_f, tol)
                && close_c(mg, pb.bounds.mixed_at_1_g, tol);
            out.push("mixed_at_1", ok, format!("F {mf} G {mg}"));
            if let (Ok(r), Ok(sel)) = (&report, &selection) {
                out.push_result(
                    "chain",
                    check_chain(mf, mg, &pb.kappa, sel, r).map(|_| "within sum_i + sum_iii".into()),
                );
            }
        }
        Err(e) => out.push("mixed_at_1", false, e.to_string()),
    }

    let scalar = ScalarBounds::compute(&trace, &pb.coeffs, &pb.kappa);
    let st = &pb.bounds;
    let ok = close(scalar.upper_pure1, st.upper_pure1, tol)
        && close(scalar.upper_pure2, st.upper_pure2, tol)
        && close(scalar.chain_lower, st.chain_lower, tol);
    out.push(
        "scalar_bounds",
        ok,
        format!(
            "{} {} {}",
            scalar.upper_pure1, scalar.upper_pure2, scalar.chain_lower
        ),
    );

    let one = Complex64::new(1.0, 0.0);
    let q = SparsePoly::linear_combine(one, &pb.g_source, one, &SparsePoly::constant(one));
    let flat = trace.flat[pb.coeffs.n()];
    let residual = flatness_residual_of(&pb.f_source, &q, flat, &params.grid);
    out.push(
        "flatness",
        residual <= tol,
        format!("max relative residual {residual:e}"),
    );
    out
}

/// Each certificate must hold exactly the subsets of its parity, with the
/// closed-form coefficient.
fn check_terms(b: &LoadedBundle, params: &VerifyParams, tol: f64) -> Result<String> {
    let pb = &b.bundle;
    let entries = enumerate_signed_sums(&b.schedule, params.conditions.enum_limit)?;
    let mut want_f: BTreeMap<ExpPair, f64> = BTreeMap::new();
    let mut want_g: BTreeMap<ExpPair, f64> = BTreeMap::new();
    for e in &entries {
        let c = expected_coefficient(e, &pb.coeffs);
        if c == 0.0 {
            continue;
        }
        let Some(m) = e.exp_pair() else {
            return Err(crate::Error::InvalidInput(format!(
                "subset mask {:#x} has a negative exponent",
                e.mask
            )));
        };
        if e.odd { &mut want_f } else { &mut want_g }.insert(m, c);
    }
    for (name, poly, want) in [("F", &pb.f_source, &want_f), ("G", &pb.g_source, &want_g)] {
        if poly.term_count() != want.len() {
            return Err(crate::Error::InvalidInput(format!(
                "{name} has {} terms, expected {}",
                poly.term_count(),
                want.len()
            )));
        }
        for (e, c) in poly.terms() {
            let Some(&w) = want.get(e) else {
                return Err(crate::Error::InvalidInput(format!(
                    "{name} has unexpected exponent {e}"
                )));
            };
            if !close_c(*c, Complex64::new(w, 0.0), tol) {
                return Err(crate::Error::InvalidInput(format!(
                    "{name} coefficient at {e} is {c}, expected {w}"
                )));
            }
        }
    }
    Ok(format!("{} + {} terms", want_f.len(), want_g.len()))
}
