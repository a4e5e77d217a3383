use std::f64::consts::{LN_2, PI, SQRT_2};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use plotters::prelude::*;

use crate::error::{Error, Result};
use crate::pipeline::{construct, scalar_run, PipelineConfig};

/// `n^(1/4) / (2√2π)`.
pub fn reference_curve(n: usize) -> f64 {
    (n as f64).powf(0.25) / (2.0 * SQRT_2 * PI)
}

fn ln_big(x: &BigUint) -> f64 {
    let shift = x.bits().saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * LN_2
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub n: usize,
    /// `(n_n)_1`; empty in scalar mode.
    pub deg1: Option<BigUint>,
    pub upper_pure1: f64,
    pub upper_pure2: f64,
    pub mixed_best: Option<f64>,
    pub chain_lower: f64,
    pub ratio: Option<f64>,
    pub base: Option<BigUint>,
    pub reference: f64,
    /// `(ln deg1)^(1/8)`.
    pub log_deg_eighth: Option<f64>,
    /// `"ok"` or the error that stopped the row.
    pub status: String,
}

impl ScanRow {
    pub fn ok(&self) -> bool {
        self.status == "ok"
    }

    fn failed(n: usize, err: &Error) -> Self {
        ScanRow {
            n,
            deg1: None,
            upper_pure1: f64::NAN,
            upper_pure2: f64::NAN,
            mixed_best: None,
            chain_lower: f64::NAN,
            ratio: None,
            base: None,
            reference: reference_curve(n),
            log_deg_eighth: None,
            status: format!("{}: {err}", err.kind()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

pub const SCAN_HEADER: [&str; 11] = [
    "n",
    "deg1",
    "upper_pure1",
    "upper_pure2",
    "mixed_best",
    "chain_lower",
    "ratio_c",
    "base_B",
    "reference",
    "log_deg_eighth",
    "status",
];

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(T::to_string).unwrap_or_default()
}

impl ScanTable {
    pub fn all_ok(&self) -> bool {
        self.rows.iter().all(ScanRow::ok)
    }

    pub fn row(&self, n: usize) -> Option<&ScanRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let err = |e: csv::Error| Error::Io(std::io::Error::other(e));
        w.write_record(SCAN_HEADER).map_err(err)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                opt(&r.deg1),
                r.upper_pure1.to_string(),
                r.upper_pure2.to_string(),
                opt(&r.mixed_best),
                r.chain_lower.to_string(),
                opt(&r.ratio),
                opt(&r.base),
                r.reference.to_string(),
                opt(&r.log_deg_eighth),
                r.status.clone(),
            ])
            .map_err(err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(std::io::Error::other(e)))
    }

    /// SVG plot of `c(n)` and the reference curve against `n`, log axes.
    pub fn write_plot(&self, path: &Path) -> Result<()> {
        let ok: Vec<_> = self.rows.iter().filter(|r| r.ok()).collect();
        let c: Vec<(f64, f64)> = ok
            .iter()
            .filter_map(|r| r.ratio.map(|c| (r.n as f64, c)))
            .filter(|p| p.1 > 0.0)
            .collect();
        let reference: Vec<(f64, f64)> = ok.iter().map(|r| (r.n as f64, r.reference)).collect();
        let xs = || c.iter().chain(&reference).map(|p| p.0);
        let ys = || c.iter().chain(&reference).map(|p| p.1);
        let (x0, x1) = (xs().fold(f64::INFINITY, f64::min), xs().fold(0.0, f64::max));
        let (y0, y1) = (ys().fold(f64::INFINITY, f64::min), ys().fold(0.0, f64::max));
        if !x0.is_finite() {
            return Err(Error::InvalidInput("no completed rows to plot".into()));
        }
        let plot_err = |e: &dyn std::fmt::Display| Error::Io(std::io::Error::other(e.to_string()));
        let root = SVGBackend::new(path, (800, 600)).into_drawing_area();
        root.fill(&WHITE).map_err(|e| plot_err(&e))?;
        let mut chart = ChartBuilder::on(&root)
            .margin(20)
            .x_label_area_size(40)
            .y_label_area_size(60)
            .build_cartesian_2d(
                (x0 * 0.9..x1 * 1.1).log_scale(),
                (y0 * 0.8..y1 * 1.25).log_scale(),
            )
            .map_err(|e| plot_err(&e))?;
        chart
            .configure_mesh()
            .x_desc("n")
            .y_desc("c(n)")
            .draw()
            .map_err(|e| plot_err(&e))?;
        chart
            .draw_series(LineSeries::new(reference.iter().copied(), &BLUE))
            .map_err(|e| plot_err(&e))?
            .label("n^(1/4)/(2√2π)");
        chart
            .draw_series(LineSeries::new(c.iter().copied(), &RED))
            .map_err(|e| plot_err(&e))?
            .label("c(n)");
        chart
            .draw_series(c.iter().map(|&p| Circle::new(p, 3, RED.filled())))
            .map_err(|e| plot_err(&e))?;
        root.present().map_err(|e| plot_err(&e))?;
        Ok(())
    }
}

fn scan_row(n: usize, scalar_only: bool, cfg: &PipelineConfig) -> Result<ScanRow> {
    if scalar_only {
        let run = scalar_run(n, cfg)?;
        return Ok(ScanRow {
            n,
            deg1: None,
            upper_pure1: run.bounds.upper_pure1,
            upper_pure2: run.bounds.upper_pure2,
            mixed_best: None,
            chain_lower: run.bounds.chain_lower,
            ratio: None,
            base: None,
            reference: reference_curve(n),
            log_deg_eighth: None,
            status: "ok".into(),
        });
    }
    let c = construct(n, cfg)?;
    let deg1 = c.freqs().top_degree().clone();
    let b = &c.bundle.bounds;
    Ok(ScanRow {
        n,
        log_deg_eighth: Some(ln_big(&deg1).powf(0.125)),
        deg1: Some(deg1),
        upper_pure1: b.upper_pure1,
        upper_pure2: b.upper_pure2,
        mixed_best: Some(b.mixed_best()),
        chain_lower: b.chain_lower,
        ratio: Some(b.ratio()),
        base: Some(c.freqs().base.clone()),
        reference: reference_curve(n),
        status: "ok".into(),
    })
}

/// One row per `n`; a failing row records its error and the scan goes on.
pub fn growth_scan(n_list: &[usize], scalar_only: bool, cfg: &PipelineConfig) -> ScanTable {
    let rows = n_list
        .iter()
        .map(|&n| {
            scan_row(n, scalar_only, cfg).unwrap_or_else(|e| {
                log::warn!("scan row n={n} failed: {e}");
                ScanRow::failed(n, &e)
            })
        })
        .collect();
    ScanTable { rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_of_huge_integers() {
        let x = BigUint::from(3u32).pow(1000);
        assert!((ln_big(&x) - 1000.0 * 3f64.ln()).abs() < 1e-9);
        assert_eq!(ln_big(&BigUint::from(1u32)), 0.0);
    }

    #[test]
    fn scalar_rows() {
        let t = growth_scan(&[100, 1000], true, &PipelineConfig::default());
        assert!(t.all_ok());
        assert!((t.rows[0].chain_lower - 3.0329).abs() < 1e-4);
        assert!((t.rows[1].chain_lower - 26.30).abs() < 1e-2);
        let csv = t.to_csv().unwrap();
        assert!(
            csv.starts_with("n,deg1,upper_pure1,upper_pure2,mixed_best,chain_lower,ratio_c,base_B")
        );
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn failed_rows_are_recorded() {
        let t = growth_scan(&[0, 100], true, &PipelineConfig::default());
        assert!(!t.all_ok());
        assert!(t.rows[0].status.starts_with("invalid_input"));
        assert!(t.rows[1].ok());
    }
}
