use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{grid_sup, GridSpec};
use crate::error::{Error, Result};
use crate::poly::{EulerOp, GridPoint, Multiplier, SparsePoly};
use crate::rs::{BoundsRecord, CounterexampleBundle};

/// One `(polynomial, operator)` row of a norm report.
#[derive(Clone, Debug, PartialEq)]
pub struct NormEntry {
    /// `"F"` or `"G"`.
    pub poly: &'static str,
    pub view: String,
    pub mult: Multiplier,
    /// Lower bound of the sup over the torus.
    pub grid_sup: f64,
    pub argmax: GridPoint,
    /// Certified upper bound: ℓ¹ norm of the coefficients.
    pub l1_bound: f64,
    pub value_at_1: Complex64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormReport {
    pub entries: Vec<NormEntry>,
    pub bounds: BoundsRecord,
    pub ratio: f64,
}

impl NormReport {
    pub fn entry(&self, poly: &str, view: &str) -> Option<&NormEntry> {
        self.entries
            .iter()
            .find(|e| e.poly == poly && e.view == view)
    }

    /// Tab-separated table with a header row.
    pub fn to_table(&self) -> String {
        let mut out = String::from(
            "poly\tview\tgrid_sup\targmax_j1\targmax_j2\tl1_bound\tvalue_at_1_re\tvalue_at_1_im\n",
        );
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{}\t{}\t{:e}\t{}\t{}\t{:e}\t{:e}\t{:e}",
                e.poly,
                e.view,
                e.grid_sup,
                e.argmax.j1,
                e.argmax.j2,
                e.l1_bound,
                e.value_at_1.re,
                e.value_at_1.im
            );
        }
        let b = &self.bounds;
        let _ = writeln!(out, "# upper_pure1\t{:e}", b.upper_pure1);
        let _ = writeln!(out, "# upper_pure2\t{:e}", b.upper_pure2);
        let _ = writeln!(out, "# mixed_best\t{:e}", b.mixed_best());
        let _ = writeln!(out, "# chain_lower\t{:e}", b.chain_lower);
        let _ = writeln!(out, "# ratio_c\t{:e}", self.ratio);
        out
    }
}

fn entry(
    poly: &'static str,
    source: &SparsePoly,
    view: String,
    mult: Multiplier,
    spec: &GridSpec,
) -> Result<NormEntry> {
    let sup = grid_sup(source, mult, spec)?;
    Ok(NormEntry {
        poly,
        view,
        mult,
        grid_sup: sup.estimate,
        argmax: sup.argmax,
        l1_bound: source.weighted_l1(mult)?,
        value_at_1: source.eval_view_at(mult, GridPoint::origin(spec.n as u64))?,
    })
}

fn entries(
    bundle: &CounterexampleBundle,
    views: &[(&str, Multiplier)],
    spec: &GridSpec,
) -> Result<Vec<NormEntry>> {
    let jobs: Vec<_> = [("F", &bundle.f_source), ("G", &bundle.g_source)]
        .into_iter()
        .flat_map(|(name, src)| views.iter().map(move |&(v, m)| (name, src, v, m)))
        .collect();
    jobs.into_par_iter()
        .map(|(name, src, v, m)| entry(name, src, v.to_string(), m, spec))
        .collect()
}

/// Euler-derivative views `D1sq`, `D2sq`, `D1D2` of `F` and `G`.
///
/// `flat` is `Π(1 + a_k²)`; the flatness identity caps `|p_n| ≤ √flat`
/// and `|q_n − 1| ≤ √flat + 1`, and a grid sup above either cap is an
/// error.
pub fn norm_report(
    bundle: &CounterexampleBundle,
    flat: f64,
    spec: &GridSpec,
) -> Result<NormReport> {
    let views: Vec<_> = [EulerOp::D1sq, EulerOp::D2sq, EulerOp::D1D2]
        .into_iter()
        .map(|op| (op.name(), CounterexampleBundle::view(op)))
        .collect();
    let entries = entries(bundle, &views, spec)?;
    for e in entries.iter().filter(|e| e.view == EulerOp::D1sq.name()) {
        let cap = flat.sqrt() + if e.poly == "G" { 1.0 } else { 0.0 } + 1e-6;
        if e.grid_sup > cap {
            return Err(Error::ChainViolation(format!(
                "grid sup {} of {} exceeds the flatness cap {cap}",
                e.grid_sup, e.poly
            )));
        }
    }
    Ok(NormReport {
        entries,
        bounds: bundle.bounds.clone(),
        ratio: bundle.bounds.ratio(),
    })
}

/// Ordinary-derivative views `F`, `∂1F`, `∂2F` (and the same for `G`).
pub fn ordinary_entries(bundle: &CounterexampleBundle, spec: &GridSpec) -> Result<Vec<NormEntry>> {
    let views = [
        ("value", Multiplier::new(-2, 0)),
        ("d1", Multiplier::new(-1, 0)),
        ("d2", Multiplier::new(-2, 1)),
    ];
    entries(bundle, &views, spec)
}
