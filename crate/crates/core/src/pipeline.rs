//! End-to-end construction: parameters, scalar trace, subset, schedule,
//! pair, counterexample bundle.

use crate::dyadic::Dyadic;
use crate::error::Result;
use crate::freq::{schedule_frequencies, ConditionReport, FreqSchedule, SchedulerConfig};
use crate::norms::GridSpec;
use crate::rs::{
    assemble_counterexamples, build_rs_pair, choose_subset, default_parameters, scalar_trace,
    CoeffSchedule, CounterexampleBundle, RSPair, RsSelection, ScalarBounds, ScalarTrace,
};

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Fractional bits of κ̂ for full builds.
    pub kappa_bits: u32,
    /// Fractional bits of κ̂ for scalar-only runs.
    pub scalar_kappa_bits: u32,
    pub scheduler: SchedulerConfig,
    pub grid: GridSpec,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            kappa_bits: 20,
            scalar_kappa_bits: 52,
            scheduler: SchedulerConfig::default(),
            grid: GridSpec::default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub trace: ScalarTrace,
    pub selection: RsSelection,
    pub report: ConditionReport,
    pub pair: RSPair,
    pub bundle: CounterexampleBundle,
}

impl Construction {
    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn coeffs(&self) -> &CoeffSchedule {
        &self.pair.schedule
    }

    pub fn freqs(&self) -> &FreqSchedule {
        &self.pair.freqs
    }

    pub fn flat(&self) -> f64 {
        self.pair.flat()
    }
}

/// Full build for an arbitrary coefficient schedule and κ̂.
pub fn construct_with(
    coeffs: &CoeffSchedule,
    kappa: &Dyadic,
    cfg: &SchedulerConfig,
) -> Result<Construction> {
    let trace = scalar_trace(coeffs);
    let selection = choose_subset(&trace, coeffs)?;
    let (freqs, report) = schedule_frequencies(coeffs.n(), &selection.a_set, kappa, cfg)?;
    let pair = build_rs_pair(coeffs, &freqs)?;
    let bundle = assemble_counterexamples(&pair, &trace, &selection, &report)?;
    log::info!(
        "built n={} with base {} ({} + {} terms)",
        coeffs.n(),
        freqs.base,
        pair.p.term_count(),
        pair.q.term_count()
    );
    Ok(Construction {
        trace,
        selection,
        report,
        pair,
        bundle,
    })
}

/// Full build with `a_k = k^(-1/2)` and `κ̂ ≈ n^(-1/4)`.
pub fn construct(n: usize, cfg: &PipelineConfig) -> Result<Construction> {
    let (coeffs, kappa) = default_parameters(n, cfg.kappa_bits)?;
    construct_with(&coeffs, &kappa, &cfg.scheduler)
}

/// Scalar quantities only; no polynomial is built.
#[derive(Clone, Debug)]
pub struct ScalarRun {
    pub coeffs: CoeffSchedule,
    pub kappa: Dyadic,
    pub trace: ScalarTrace,
    pub selection: RsSelection,
    pub bounds: ScalarBounds,
}

pub fn scalar_run(n: usize, cfg: &PipelineConfig) -> Result<ScalarRun> {
    let (coeffs, kappa) = default_parameters(n, cfg.scalar_kappa_bits)?;
    let trace = scalar_trace(&coeffs);
    let selection = choose_subset(&trace, &coeffs)?;
    let bounds = ScalarBounds::compute(&trace, &coeffs, &kappa);
    Ok(ScalarRun {
        coeffs,
        kappa,
        trace,
        selection,
        bounds,
    })
}
