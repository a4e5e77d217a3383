use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use num_traits::Zero;

use super::{CoeffSchedule, RSPair, RsSelection, ScalarTrace};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::freq::ConditionReport;
use crate::poly::{GridPoint, Multiplier, SparsePoly};
use crate::sum::KahanSum;

/// Closed-form chain values that only need the scalar trace.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalarBounds {
    /// `flat[n]^(1/2) + 1`
    pub upper_pure1: f64,
    /// `√2·κ̂²·S + 2`
    pub upper_pure2: f64,
    /// `κ̂·S/(2π) − 2`
    pub chain_lower: f64,
    /// `S = Σ_{k=1}^n a_k·flat[k−1]^(1/2)`
    pub s: f64,
}

impl ScalarBounds {
    pub fn compute(trace: &ScalarTrace, a: &CoeffSchedule, kappa: &Dyadic) -> Self {
        let n = a.n();
        let s = (1..=n)
            .map(|k| a.a(k) * trace.flat[k - 1].sqrt())
            .collect::<KahanSum>()
            .value();
        let kappa = kappa.to_f64();
        ScalarBounds {
            upper_pure1: trace.flat[n].sqrt() + 1.0,
            upper_pure2: SQRT_2 * kappa * kappa * s + 2.0,
            chain_lower: kappa * s / (2.0 * PI) - 2.0,
            s,
        }
    }
}

/// Certified bounds attached to a counterexample bundle.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRecord {
    /// Upper bound for `‖(z1∂1)²F‖` and `‖(z1∂1)²G‖`.
    pub upper_pure1: f64,
    /// Upper bound for `‖(z2∂2)²F‖` and `‖(z2∂2)²G‖`.
    pub upper_pure2: f64,
    /// `z2∂2 z1∂1 F` at `𝟏`.
    pub mixed_at_1_f: Complex64,
    /// `z2∂2 z1∂1 G` at `𝟏`.
    pub mixed_at_1_g: Complex64,
    pub chain_lower: f64,
}

impl BoundsRecord {
    pub fn mixed_best(&self) -> f64 {
        self.mixed_at_1_f.norm().max(self.mixed_at_1_g.norm())
    }

    /// Mixed value over the larger of the two pure bounds.
    pub fn ratio(&self) -> f64 {
        self.mixed_best() / self.upper_pure1.max(self.upper_pure2)
    }
}

/// `F` and `G` held through their second Euler derivatives:
/// `(z1∂1)²F = f_source = p_n`, `(z1∂1)²G = g_source = q_n − 1`.
#[derive(Clone, Debug)]
pub struct CounterexampleBundle {
    pub f_source: SparsePoly,
    pub g_source: SparsePoly,
    pub kappa: Dyadic,
    pub bounds: BoundsRecord,
}

impl CounterexampleBundle {
    /// Multiplier taking a source coefficient to the coefficient of
    /// `op(F)`, e.g. `D1D2` gives `m2/m1`.
    pub fn view(op: crate::poly::EulerOp) -> Multiplier {
        crate::poly::EulerOp::AntiD1sq.multiplier().then(op)
    }
}

/// Rejects sources with an `m1 = 0` term, where `F` would not exist.
pub fn check_sources(f: &SparsePoly, g: &SparsePoly) -> Result<()> {
    for (e, _) in f.terms().chain(g.terms()) {
        if e.m1.is_zero() {
            return Err(Error::AntiDerivative {
                m1: e.m1.to_string(),
                m2: e.m2.to_string(),
            });
        }
    }
    Ok(())
}

/// Value of `Σ c·m2/m1` at `z = 𝟏`.
pub fn mixed_at_one(source: &SparsePoly) -> Result<Complex64> {
    source.eval_view_at(Multiplier::new(-1, 1), GridPoint::origin(1))
}

pub fn certified_bounds(
    f_source: &SparsePoly,
    g_source: &SparsePoly,
    kappa: &Dyadic,
    trace: &ScalarTrace,
    a: &CoeffSchedule,
    sel: &RsSelection,
    report: &ConditionReport,
) -> Result<BoundsRecord> {
    if !report.passed {
        return Err(Error::InvalidInput("condition report did not pass".into()));
    }
    let scalar = ScalarBounds::compute(trace, a, kappa);
    let mixed_at_1_f = mixed_at_one(f_source)?;
    let mixed_at_1_g = mixed_at_one(g_source)?;
    check_chain(mixed_at_1_f, mixed_at_1_g, kappa, sel, report)?;
    Ok(BoundsRecord {
        upper_pure1: scalar.upper_pure1,
        upper_pure2: scalar.upper_pure2,
        mixed_at_1_f,
        mixed_at_1_g,
        chain_lower: scalar.chain_lower,
    })
}

/// `| |mixed_F| + |mixed_G| − κ̂(|Σ_A ω^q| + |Σ_A ω^p|) | ≤ sum_i + sum_iii`.
///
/// Holds because `|b_M| ≤ 1`: on subsets with `max M ∈ A` the ratio sits
/// within the (i) budget of κ̂, elsewhere within the (iii) budget of 0.
pub fn check_chain(
    mixed_f: Complex64,
    mixed_g: Complex64,
    kappa: &Dyadic,
    sel: &RsSelection,
    report: &ConditionReport,
) -> Result<()> {
    let (gap, budget) = chain_gap(mixed_f, mixed_g, kappa, sel, report);
    let slack = 1e-12 * (1.0 + mixed_f.norm() + mixed_g.norm());
    if gap > budget + slack {
        return Err(Error::ChainViolation(format!(
            "mixed values deviate from kappa-scaled selected sums by {gap:e}, budget {budget:e}"
        )));
    }
    Ok(())
}

/// `(gap, sum_i + sum_iii)` for the chain check.
pub fn chain_gap(
    mixed_f: Complex64,
    mixed_g: Complex64,
    kappa: &Dyadic,
    sel: &RsSelection,
    report: &ConditionReport,
) -> (f64, f64) {
    let gap = (mixed_f.norm() + mixed_g.norm() - kappa.to_f64() * (sel.sum_q + sel.sum_p)).abs();
    let budget = report.sum_i.hi_f64() + report.sum_iii.hi_f64();
    (gap, budget)
}

/// `F_source = p_n`, `G_source = q_n − 1`, with freshly certified bounds.
pub fn assemble_counterexamples(
    pair: &RSPair,
    trace: &ScalarTrace,
    sel: &RsSelection,
    report: &ConditionReport,
) -> Result<CounterexampleBundle> {
    let one = Complex64::new(1.0, 0.0);
    let f_source = pair.p.clone();
    let g_source = SparsePoly::linear_combine(one, &pair.q, -one, &SparsePoly::constant(one));
    check_sources(&f_source, &g_source)?;
    let kappa = pair.freqs.kappa.clone();
    let bounds = certified_bounds(
        &f_source,
        &g_source,
        &kappa,
        trace,
        &pair.schedule,
        sel,
        report,
    )?;
    Ok(CounterexampleBundle {
        f_source,
        g_source,
        kappa,
        bounds,
    })
}
