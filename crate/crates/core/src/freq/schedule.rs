use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{verify_conditions_with, ConditionParams, ConditionReport};
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::poly::ExpPair;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Standard,
    /// First coordinates additionally exceed `2^(k²)`.
    Strong,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Standard => "standard",
            Mode::Strong => "strong",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Mode::Standard),
            "strong" => Ok(Mode::Strong),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SchedulerConfig {
    /// Exponent scale of the initial base `3^max(2, ceil(λ n))`.
    pub lambda: f64,
    /// Overrides the λ-derived initial base.
    pub initial_base: Option<BigUint>,
    pub max_base: BigUint,
    pub mode: Mode,
    pub conditions: ConditionParams,
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        SchedulerConfig {
            lambda: 2.0,
            initial_base: None,
            max_base: BigUint::one() << 4096usize,
            mode: Mode::Standard,
            conditions: ConditionParams::default(),
        }
    }
}

impl SchedulerConfig {
    pub fn initial_base_for(&self, n: usize) -> BigUint {
        match &self.initial_base {
            Some(b) => b.clone(),
            None => {
                let e = ((self.lambda * n as f64).ceil() as u32).max(2);
                BigUint::from(3u32).pow(e)
            }
        }
    }
}

/// A lacunary frequency schedule together with the data that generated it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreqSchedule {
    pub n: usize,
    pub freqs: Vec<ExpPair>,
    pub kappa: Dyadic,
    /// Selected indices, sorted, 1-based.
    pub a_set: Vec<usize>,
    pub base: BigUint,
    pub mode: Mode,
}

impl FreqSchedule {
    /// Applies the generation rule for a fixed base `B`.
    ///
    /// First coordinates are `x_k = B^k` (strong mode: `max(B^k, 2^(k²)+1)`).
    /// Second coordinates are `round(κ̂·x_k)` for `k ∈ A`, and otherwise
    /// `max(1 + Σ_{j<k} y_j, floor(x_k·κ̂·2^-(n+3)))`.
    pub fn from_base(
        n: usize,
        a_set: &[usize],
        kappa: &Dyadic,
        base: &BigUint,
        mode: Mode,
    ) -> Self {
        let kb = kappa.bits() as usize;
        let kn = kappa.numerator();
        let mut freqs = Vec::with_capacity(n);
        let mut power = BigUint::one();
        let mut second_sum = BigUint::zero();
        for k in 1..=n {
            power *= base;
            let x = match mode {
                Mode::Standard => power.clone(),
                Mode::Strong => power.clone().max((BigUint::one() << (k * k)) + 1u32),
            };
            let scaled = &x * kn;
            let y = if a_set.contains(&k) {
                ((scaled << 1usize) + (BigUint::one() << kb)) >> (kb + 1)
            } else {
                let floor = scaled >> (kb + n + 3);
                floor.max(&second_sum + 1u32)
            };
            second_sum += &y;
            freqs.push(ExpPair { m1: x, m2: y });
        }
        FreqSchedule {
            n,
            freqs,
            kappa: kappa.clone(),
            a_set: a_set.to_vec(),
            base: base.clone(),
            mode,
        }
    }

    /// Coordinatewise `n_k > Σ_{j<k} n_j` for both coordinates.
    pub fn is_dominated(&self) -> bool {
        let mut s1 = BigUint::zero();
        let mut s2 = BigUint::zero();
        for f in &self.freqs {
            if f.m1 <= s1 || f.m2 <= s2 {
                return false;
            }
            s1 += &f.m1;
            s2 += &f.m2;
        }
        true
    }

    /// Strong-mode requirement `(n_k)_1 > 2^(k²)` for every k.
    pub fn exceeds_square_powers(&self) -> bool {
        self.freqs.iter().enumerate().all(|(i, f)| {
            let k = i + 1;
            f.m1 > BigUint::one() << (k * k)
        })
    }

    pub fn in_a(&self, k: usize) -> bool {
        self.a_set.binary_search(&k).is_ok()
    }

    /// The degree `(n_n)_1` of the last frequency in `z1`.
    pub fn top_degree(&self) -> &BigUint {
        &self.freqs.last().expect("nonempty schedule").m1
    }
}

fn check_inputs(n: usize, a_set: &[usize], kappa: &Dyadic) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    if a_set.iter().any(|&k| k == 0 || k > n) {
        return Err(Error::InvalidInput(format!(
            "A must be a subset of 1..={n}"
        )));
    }
    if a_set.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput(
            "A must be sorted without repeats".into(),
        ));
    }
    let one = BigUint::one() << kappa.bits() as usize;
    if kappa.is_zero() || kappa.numerator() > &one {
        return Err(Error::InvalidInput(format!(
            "kappa {kappa} must lie in (0, 1]"
        )));
    }
    Ok(())
}

/// Searches bases `B, 2B, 4B, …` until the exact verifier accepts.
///
/// The returned schedule always passes its report (conditions (i)–(iv) and
/// `m2 ≤ m1` for every subset).
pub fn schedule_frequencies(
    n: usize,
    a_set: &[usize],
    kappa: &Dyadic,
    cfg: &SchedulerConfig,
) -> Result<(FreqSchedule, ConditionReport)> {
    check_inputs(n, a_set, kappa)?;
    if n > cfg.conditions.enum_limit {
        return Err(Error::EnumTooLarge {
            n,
            limit: cfg.conditions.enum_limit,
        });
    }
    let mut base = cfg.initial_base_for(n);
    if base < BigUint::from(2u32) {
        return Err(Error::InvalidInput(
            "initial base must be at least 2".into(),
        ));
    }
    while base <= cfg.max_base {
        let s = FreqSchedule::from_base(n, a_set, kappa, &base, cfg.mode);
        let report = verify_conditions_with(&s, &cfg.conditions)?;
        if report.passed && report.ratio_bounded {
            return Ok((s, report));
        }
        log::debug!("base {base} rejected for n={n}; doubling");
        base <<= 1usize;
    }
    Err(Error::BaseOverflow)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Dyadic {
        Dyadic::new(BigUint::one() << 19usize, 20)
    }

    #[test]
    fn n2_example_schedule() {
        let (s, report) =
            schedule_frequencies(2, &[2], &half(), &SchedulerConfig::default()).unwrap();
        assert_eq!(s.base, BigUint::from(81u32));
        assert_eq!(
            s.freqs,
            vec![ExpPair::new(81u32, 1u32), ExpPair::new(6561u32, 3281u32)]
        );
        assert!(report.passed);
        assert!(s.is_dominated());
    }

    #[test]
    fn n1_exact_ratio() {
        let one = Dyadic::new(BigUint::one() << 20usize, 20);
        let (s, report) = schedule_frequencies(1, &[1], &one, &SchedulerConfig::default()).unwrap();
        assert_eq!(s.freqs[0].m1, s.freqs[0].m2);
        assert!(report.sum_i.hi.is_zero());
    }

    #[test]
    fn retry_doubles_from_small_base() {
        let kappa = Dyadic::nearest_inv_fourth_root(6, 20);
        let cfg = SchedulerConfig {
            initial_base: Some(BigUint::from(3u32)),
            ..Default::default()
        };
        let first = FreqSchedule::from_base(
            6,
            &[2, 4, 5, 6],
            &kappa,
            &BigUint::from(3u32),
            Mode::Standard,
        );
        assert!(
            !verify_conditions_with(&first, &cfg.conditions)
                .unwrap()
                .passed
        );
        let (s, report) = schedule_frequencies(6, &[2, 4, 5, 6], &kappa, &cfg).unwrap();
        assert!(report.passed);
        assert!(s.base > BigUint::from(3u32));
        let ratio = &s.base / 3u32;
        assert_eq!(&ratio * 3u32, s.base);
        assert!(ratio.count_ones() == 1, "base must be 3·2^j");
    }

    #[test]
    fn bad_inputs() {
        let cfg = SchedulerConfig::default();
        assert!(schedule_frequencies(0, &[], &half(), &cfg).is_err());
        assert!(schedule_frequencies(2, &[3], &half(), &cfg).is_err());
        assert!(schedule_frequencies(2, &[1], &Dyadic::new(BigUint::zero(), 20), &cfg).is_err());
        assert!(matches!(
            schedule_frequencies(21, &[1], &half(), &cfg),
            Err(Error::EnumTooLarge { .. })
        ));
        let tiny = SchedulerConfig {
            initial_base: Some(BigUint::from(3u32)),
            max_base: BigUint::from(4u32),
            ..Default::default()
        };
        assert!(matches!(
            schedule_frequencies(
                6,
                &[2, 4, 5, 6],
                &Dyadic::nearest_inv_fourth_root(6, 20),
                &tiny
            ),
            Err(Error::BaseOverflow)
        ));
    }

    #[test]
    fn strong_mode_exceeds_square_powers() {
        let cfg = SchedulerConfig {
            mode: Mode::Strong,
            initial_base: Some(BigUint::from(9u32)),
            ..Default::default()
        };
        let kappa = Dyadic::nearest_inv_fourth_root(6, 20);
        let (s, _) = schedule_frequencies(6, &[1, 3, 6], &kappa, &cfg).unwrap();
        assert!(s.exceeds_square_powers());
    }
}
