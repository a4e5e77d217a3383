//! On-disk formats.
//!
//! A construction directory holds `bundle.json` (coefficients, κ̂, subset,
//! bounds and both certificates), `schedule.json` (base and frequencies),
//! `conditions.json` (exact condition enclosures), `F.cert.json`,
//! `G.cert.json` and `norms.tsv`. Big integers are decimal strings,
//! rationals `"p/q"` strings and κ̂ `"K/2^bits"`. Readers accept unknown
//! keys and report them as warnings.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dyadic::{parse_decimal, Dyadic, Enclosure};
use crate::error::{Error, Result};
use crate::fields::{get, unknown_keys};
use crate::freq::{ConditionReport, FreqSchedule, Mode};
use crate::norms::NormReport;
use crate::pipeline::Construction;
use crate::poly::{ExpPair, PolyCertificate, SparsePoly};
use crate::rs::{BoundsRecord, Branch, CoeffSchedule};

pub const BUNDLE_FILE: &str = "bundle.json";
pub const SCHEDULE_FILE: &str = "schedule.json";
pub const CONDITIONS_FILE: &str = "conditions.json";
pub const F_CERT_FILE: &str = "F.cert.json";
pub const G_CERT_FILE: &str = "G.cert.json";
pub const NORMS_FILE: &str = "norms.tsv";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScheduleFile {
    pub n: usize,
    pub mode: String,
    pub base: String,
    pub kappa: String,
    #[serde(rename = "A")]
    pub a_set: Vec<usize>,
    pub freqs: Vec<[String; 2]>,
}

impl ScheduleFile {
    pub const KEYS: [&'static str; 6] = ["n", "mode", "base", "kappa", "A", "freqs"];

    pub fn from_schedule(s: &FreqSchedule) -> Self {
        ScheduleFile {
            n: s.n,
            mode: s.mode.to_string(),
            base: s.base.to_string(),
            kappa: s.kappa.to_string(),
            a_set: s.a_set.clone(),
            freqs: s
                .freqs
                .iter()
                .map(|e| [e.m1.to_string(), e.m2.to_string()])
                .collect(),
        }
    }

    pub fn to_schedule(&self) -> Result<FreqSchedule> {
        if self.n == 0 || self.freqs.len() != self.n {
            return Err(Error::Parse(format!(
                "schedule lists {} frequencies for n={}",
                self.freqs.len(),
                self.n
            )));
        }
        check_a_set(&self.a_set, self.n)?;
        let mode: Mode = self.mode.parse()?;
        let base = parse_decimal(&self.base)
            .ok_or_else(|| Error::Parse("base must be a decimal string".into()))?;
        let kappa: Dyadic = self.kappa.parse()?;
        let freqs = self
            .freqs
            .iter()
            .enumerate()
            .map(
                |(i, [m1, m2])| match (parse_decimal(m1), parse_decimal(m2)) {
                    (Some(m1), Some(m2)) => Ok(ExpPair { m1, m2 }),
                    _ => Err(Error::Parse(format!(
                        "freqs[{i}]: exponents must be decimal strings"
                    ))),
                },
            )
            .collect::<Result<Vec<_>>>()?;
        Ok(FreqSchedule {
            n: self.n,
            freqs,
            kappa,
            a_set: self.a_set.clone(),
            base,
            mode,
        })
    }

    pub fn parse(text: &str) -> Result<(FreqSchedule, Vec<String>)> {
        let v: Value = serde_json::from_str(text)?;
        let mut warnings = Vec::new();
        unknown_keys(&v, &Self::KEYS, "", &mut warnings);
        let file: ScheduleFile = serde_json::from_value(v)?;
        Ok((file.to_schedule()?, warnings))
    }
}

fn check_a_set(a_set: &[usize], n: usize) -> Result<()> {
    if a_set.is_empty()
        || a_set.windows(2).any(|w| w[0] >= w[1])
        || a_set[0] == 0
        || a_set[a_set.len() - 1] > n
    {
        return Err(Error::Parse(format!(
            "A must be a nonempty increasing subset of 1..={n}"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureFile {
    pub lo: String,
    pub hi: String,
}

impl EnclosureFile {
    fn from_enclosure(e: &Enclosure) -> Self {
        EnclosureFile {
            lo: e.lo_string(),
            hi: e.hi_string(),
        }
    }

    fn to_enclosure(&self) -> Result<Enclosure> {
        Enclosure::from_strings(&self.lo, &self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsFile {
    pub sum_i: EnclosureFile,
    pub sum_ii: EnclosureFile,
    pub sum_iii: EnclosureFile,
    pub iv_ok: bool,
    pub ratio_bounded: bool,
    pub passed: bool,
    pub count_in_a: usize,
    pub count_off_a: usize,
}

impl ConditionsFile {
    pub const KEYS: [&'static str; 8] = [
        "sum_i",
        "sum_ii",
        "sum_iii",
        "iv_ok",
        "ratio_bounded",
        "passed",
        "count_in_a",
        "count_off_a",
    ];

    pub fn from_report(r: &ConditionReport) -> Self {
        ConditionsFile {
            sum_i: EnclosureFile::from_enclosure(&r.sum_i),
            sum_ii: EnclosureFile::from_enclosure(&r.sum_ii),
            sum_iii: EnclosureFile::from_enclosure(&r.sum_iii),
            iv_ok: r.iv_ok,
            ratio_bounded: r.ratio_bounded,
            passed: r.passed,
            count_in_a: r.count_in_a,
            count_off_a: r.count_off_a,
        }
    }

    pub fn to_report(&self) -> Result<ConditionReport> {
        Ok(ConditionReport {
            sum_i: self.sum_i.to_enclosure()?,
            sum_ii: self.sum_ii.to_enclosure()?,
            sum_iii: self.sum_iii.to_enclosure()?,
            iv_ok: self.iv_ok,
            ratio_bounded: self.ratio_bounded,
            passed: self.passed,
            count_in_a: self.count_in_a,
            count_off_a: self.count_off_a,
        })
    }

    pub fn parse(text: &str) -> Result<(ConditionReport, Vec<String>)> {
        let v: Value = serde_json::from_str(text)?;
        let mut warnings = Vec::new();
        unknown_keys(&v, &Self::KEYS, "", &mut warnings);
        for k in ["sum_i", "sum_ii", "sum_iii"] {
            if let Some(e) = get(&v, k) {
                unknown_keys(e, &["lo", "hi"], k, &mut warnings);
            }
        }
        let file: ConditionsFile = serde_json::from_value(v)?;
        Ok((file.to_report()?, warnings))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsFile {
    pub upper_pure1: f64,
    pub upper_pure2: f64,
    pub mixed_at_1_f: [f64; 2],
    pub mixed_at_1_g: [f64; 2],
    pub chain_lower: f64,
}

impl BoundsFile {
    pub const KEYS: [&'static str; 5] = [
        "upper_pure1",
        "upper_pure2",
        "mixed_at_1_f",
        "mixed_at_1_g",
        "chain_lower",
    ];

    pub fn from_record(b: &BoundsRecord) -> Self {
        BoundsFile {
            upper_pure1: b.upper_pure1,
            upper_pure2: b.upper_pure2,
            mixed_at_1_f: [b.mixed_at_1_f.re, b.mixed_at_1_f.im],
            mixed_at_1_g: [b.mixed_at_1_g.re, b.mixed_at_1_g.im],
            chain_lower: b.chain_lower,
        }
    }

    pub fn to_record(&self) -> BoundsRecord {
        BoundsRecord {
            upper_pure1: self.upper_pure1,
            upper_pure2: self.upper_pure2,
            mixed_at_1_f: Complex64::new(self.mixed_at_1_f[0], self.mixed_at_1_f[1]),
            mixed_at_1_g: Complex64::new(self.mixed_at_1_g[0], self.mixed_at_1_g[1]),
            chain_lower: self.chain_lower,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleFile {
    pub n: usize,
    pub a_schedule: String,
    pub a: Vec<f64>,
    pub kappa: String,
    #[serde(rename = "A")]
    pub a_set: Vec<usize>,
    pub branch: String,
    pub bounds: BoundsFile,
    /// Path of the schedule file, relative to the bundle.
    pub schedule: String,
    /// Path of the conditions file, relative to the bundle.
    pub conditions: String,
    #[serde(rename = "F")]
    pub f: PolyCertificate,
    #[serde(rename = "G")]
    pub g: PolyCertificate,
}

impl BundleFile {
    pub const KEYS: [&'static str; 11] = [
        "n",
        "a_schedule",
        "a",
        "kappa",
        "A",
        "branch",
        "bounds",
        "schedule",
        "conditions",
        "F",
        "G",
    ];

    pub fn from_construction(c: &Construction) -> Self {
        BundleFile {
            n: c.n(),
            a_schedule: c.coeffs().name.clone(),
            a: c.coeffs().values().to_vec(),
            kappa: c.bundle.kappa.to_string(),
            a_set: c.selection.a_set.clone(),
            branch: c.selection.branch.to_string(),
            bounds: BoundsFile::from_record(&c.bundle.bounds),
            schedule: SCHEDULE_FILE.into(),
            conditions: CONDITIONS_FILE.into(),
            f: PolyCertificate::from_poly(&c.bundle.f_source),
            g: PolyCertificate::from_poly(&c.bundle.g_source),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serializes")
    }

    /// Parses and validates the bundle body, collecting unknown-key warnings.
    pub fn parse(text: &str) -> Result<(ParsedBundle, Vec<String>)> {
        let v: Value = serde_json::from_str(text)?;
        let mut warnings = Vec::new();
        unknown_keys(&v, &Self::KEYS, "", &mut warnings);
        if let Some(b) = get(&v, "bounds") {
            unknown_keys(b, &BoundsFile::KEYS, "bounds", &mut warnings);
        }
        let mut certs = Vec::new();
        for k in ["F", "G"] {
            let c = get(&v, k).ok_or_else(|| Error::Parse(format!("missing field `{k}`")))?;
            certs.push(PolyCertificate::from_value(c, k, &mut warnings)?);
        }
        let file: BundleFile = serde_json::from_value(v)?;
        if file.n == 0 || file.a.len() != file.n {
            return Err(Error::Parse(format!(
                "bundle lists {} coefficients for n={}",
                file.a.len(),
                file.n
            )));
        }
        check_a_set(&file.a_set, file.n)?;
        let parsed = ParsedBundle {
            coeffs: CoeffSchedule::new(file.a_schedule.clone(), file.a.clone())
                .map_err(|e| Error::Parse(e.to_string()))?,
            kappa: file.kappa.parse()?,
            branch: file.branch.parse()?,
            bounds: file.bounds.to_record(),
            f_source: certs[0].to_poly()?,
            g_source: certs[1].to_poly()?,
            file,
        };
        Ok((parsed, warnings))
    }
}

/// A bundle body with its fields decoded.
#[derive(Clone, Debug)]
pub struct ParsedBundle {
    pub file: BundleFile,
    pub coeffs: CoeffSchedule,
    pub kappa: Dyadic,
    pub branch: Branch,
    pub bounds: BoundsRecord,
    pub f_source: SparsePoly,
    pub g_source: SparsePoly,
}

/// A bundle together with the files it references.
#[derive(Clone, Debug)]
pub struct LoadedBundle {
    pub bundle: ParsedBundle,
    pub schedule: FreqSchedule,
    pub conditions: ConditionReport,
    pub warnings: Vec<String>,
}

/// `path` may name the bundle file or the directory holding `bundle.json`.
pub fn bundle_path(path: &Path) -> PathBuf {
    if path.is_dir() {
        path.join(BUNDLE_FILE)
    } else {
        path.to_path_buf()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

fn prefixed(file: &str, warnings: Vec<String>) -> impl Iterator<Item = String> + '_ {
    warnings
        .into_iter()
        .map(move |w| format!("{file}: unknown field `{w}`"))
}

pub fn load_bundle(path: &Path) -> Result<LoadedBundle> {
    let path = bundle_path(path);
    let dir = path.parent().unwrap_or(Path::new("."));
    let (bundle, w) = BundleFile::parse(&read(&path)?)?;
    let mut warnings: Vec<String> = prefixed(BUNDLE_FILE, w).collect();
    let (schedule, w) = ScheduleFile::parse(&read(&dir.join(&bundle.file.schedule))?)?;
    warnings.extend(prefixed(SCHEDULE_FILE, w));
    let (conditions, w) = ConditionsFile::parse(&read(&dir.join(&bundle.file.conditions))?)?;
    warnings.extend(prefixed(CONDITIONS_FILE, w));
    Ok(LoadedBundle {
        bundle,
        schedule,
        conditions,
        warnings,
    })
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializes");
    s.push('\n');
    s
}

/// Writes every output file of a construction into `dir`.
pub fn write_construction(dir: &Path, c: &Construction, norms: Option<&NormReport>) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut bundle = BundleFile::from_construction(c).to_json();
    bundle.push('\n');
    write_atomic(&dir.join(BUNDLE_FILE), &bundle)?;
    write_atomic(
        &dir.join(SCHEDULE_FILE),
        &json(&ScheduleFile::from_schedule(c.freqs())),
    )?;
    write_atomic(
        &dir.join(CONDITIONS_FILE),
        &json(&ConditionsFile::from_report(&c.report)),
    )?;
    write_certificates(dir, &c.bundle.f_source, &c.bundle.g_source)?;
    if let Some(r) = norms {
        write_atomic(&dir.join(NORMS_FILE), &r.to_table())?;
    }
    Ok(())
}

pub fn write_certificates(dir: &Path, f: &SparsePoly, g: &SparsePoly) -> Result<()> {
    write_atomic(&dir.join(F_CERT_FILE), &(f.to_certificate_json() + "\n"))?;
    write_atomic(&dir.join(G_CERT_FILE), &(g.to_certificate_json() + "\n"))
}

/// Canonical re-serialization of a loaded bundle into `dir`.
pub fn export_bundle(dir: &Path, b: &LoadedBundle) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut file = b.bundle.file.clone();
    file.schedule = SCHEDULE_FILE.into();
    file.conditions = CONDITIONS_FILE.into();
    file.f = PolyCertificate::from_poly(&b.bundle.f_source);
    file.g = PolyCertificate::from_poly(&b.bundle.g_source);
    write_atomic(&dir.join(BUNDLE_FILE), &(file.to_json() + "\n"))?;
    write_atomic(
        &dir.join(SCHEDULE_FILE),
        &json(&ScheduleFile::from_schedule(&b.schedule)),
    )?;
    write_atomic(
        &dir.join(CONDITIONS_FILE),
        &json(&ConditionsFile::from_report(&b.conditions)),
    )?;
    write_certificates(dir, &b.bundle.f_source, &b.bundle.g_source)
}
