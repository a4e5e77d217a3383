use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;

use super::{enumerate_signed_sums, FreqSchedule, SignedSumEntry};
use crate::dyadic::Enclosure;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct ConditionParams {
    /// Largest `n` for which all `2^n − 1` subsets are enumerated.
    pub enum_limit: usize,
    /// Condition sums are enclosed on the grid `2^-enclosure_bits`.
    pub enclosure_bits: u32,
}

impl Default for ConditionParams {
    fn default() -> Self {
        ConditionParams {
            enum_limit: 20,
            enclosure_bits: 256,
        }
    }
}

/// Exact verdict on conditions (i)–(iv) for a schedule.
///
/// Each sum is an enclosure `[lo, hi]` obtained by computing every term
/// exactly in integers and rounding it outward; `hi < 1` certifies `< 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    /// `Σ_{max M ∈ A} |m2/m1 − κ̂|`
    pub sum_i: Enclosure,
    /// `Σ_{max M ∈ A} |(m2/m1)² − κ̂²|`
    pub sum_ii: Enclosure,
    /// `Σ_{max M ∉ A} m2/m1`
    pub sum_iii: Enclosure,
    pub iv_ok: bool,
    /// `m2 ≤ m1` for every subset.
    pub ratio_bounded: bool,
    pub passed: bool,
    pub count_in_a: usize,
    pub count_off_a: usize,
}

pub fn verify_conditions(s: &FreqSchedule) -> Result<ConditionReport> {
    verify_conditions_with(s, &ConditionParams::default())
}

struct TermBounds {
    positive: bool,
    bounded: bool,
    in_a: bool,
    i: Enclosure,
    ii: Enclosure,
    iii: Enclosure,
}

pub fn verify_conditions_with(
    s: &FreqSchedule,
    params: &ConditionParams,
) -> Result<ConditionReport> {
    let entries = enumerate_signed_sums(s, params.enum_limit)?;
    let bits = params.enclosure_bits;
    let kb = s.kappa.bits() as usize;
    let k = BigInt::from(s.kappa.numerator().clone());
    let k2 = &k * &k;

    let terms: Vec<TermBounds> = entries
        .par_iter()
        .map(|e| term_bounds(e, s, &k, &k2, kb, bits))
        .collect();

    let mut sum_i = Enclosure::zero(bits);
    let mut sum_ii = Enclosure::zero(bits);
    let mut sum_iii = Enclosure::zero(bits);
    let mut iv_ok = true;
    let mut ratio_bounded = true;
    let mut count_in_a = 0;
    let mut count_off_a = 0;
    for t in &terms {
        iv_ok &= t.positive;
        ratio_bounded &= t.bounded;
        if t.in_a {
            count_in_a += 1;
            sum_i.add(&t.i);
            sum_ii.add(&t.ii);
        } else {
            count_off_a += 1;
            sum_iii.add(&t.iii);
        }
    }
    let passed = iv_ok
        && sum_i.certified_below_one()
        && sum_ii.certified_below_one()
        && sum_iii.certified_below_one();
    Ok(ConditionReport {
        sum_i,
        sum_ii,
        sum_iii,
        iv_ok,
        ratio_bounded,
        passed,
        count_in_a,
        count_off_a,
    })
}

fn term_bounds(
    e: &SignedSumEntry,
    s: &FreqSchedule,
    k: &BigInt,
    k2: &BigInt,
    kb: usize,
    bits: u32,
) -> TermBounds {
    let in_a = s.in_a(e.max_m);
    let zero = Enclosure::zero(bits);
    if !e.is_positive() {
        return TermBounds {
            positive: false,
            bounded: false,
            in_a,
            i: zero.clone(),
            ii: zero.clone(),
            iii: zero,
        };
    }
    let bounded = e.m2 <= e.m1;
    let m1 = e.m1.magnitude();
    let m2 = e.m2.magnitude();
    if in_a {
        // |m2/m1 − K/2^b| = |m2·2^b − K·m1| / (m1·2^b)
        let d1 = abs_diff(&(BigInt::from(m2.clone()) << kb), &(k * &e.m1));
        let i = Enclosure::of_ratio(&d1, &(m1 << kb), bits);
        let m1sq = m1 * m1;
        let d2 = abs_diff(
            &(BigInt::from(m2 * m2) << (2 * kb)),
            &(k2 * BigInt::from(m1sq.clone())),
        );
        let ii = Enclosure::of_ratio(&d2, &(m1sq << (2 * kb)), bits);
        TermBounds {
            positive: true,
            bounded,
            in_a,
            i,
            ii,
            iii: zero,
        }
    } else {
        let iii = Enclosure::of_ratio(m2, m1, bits);
        TermBounds {
            positive: true,
            bounded,
            in_a,
            i: zero.clone(),
            ii: zero,
            iii,
        }
    }
}

fn abs_diff(a: &BigInt, b: &BigInt) -> BigUint {
    (a - b).magnitude().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::freq::Mode;
    use crate::poly::ExpPair;
    use num_rational::BigRational;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn sched(freqs: Vec<ExpPair>, a_set: Vec<usize>, kappa: Dyadic) -> FreqSchedule {
        FreqSchedule {
            n: freqs.len(),
            freqs,
            kappa,
            a_set,
            base: BigUint::from(81u32),
            mode: Mode::Standard,
        }
    }

    #[test]
    fn n2_exact_sums() {
        let half = Dyadic::new(BigUint::from(1u32) << 19usize, 20);
        let s = sched(
            vec![ExpPair::new(81u32, 1u32), ExpPair::new(6561u32, 3281u32)],
            vec![2],
            half,
        );
        let r = verify_conditions(&s).unwrap();
        assert!(r.passed && r.iv_ok && r.ratio_bounded);
        assert!(r.sum_i.contains(&(q(80, 12960) + q(1, 13122))));
        assert!(r.sum_iii.contains(&q(1, 81)));
        // (ii): |(3281/6561)² − 1/4| + |(3280/6480)² − 1/4|
        let t1 = q(3281, 6561) * q(3281, 6561) - q(1, 4);
        let t2 = q(3280, 6480) * q(3280, 6480) - q(1, 4);
        assert!(r.sum_ii.contains(&(t1 + t2)));
        assert_eq!((r.count_in_a, r.count_off_a), (2, 1));
    }

    #[test]
    fn exact_ratio_single_frequency() {
        let half = Dyadic::new(BigUint::from(1u32) << 19usize, 20);
        let s = sched(vec![ExpPair::new(64u32, 32u32)], vec![1], half);
        let r = verify_conditions(&s).unwrap();
        assert_eq!(r.sum_i, Enclosure::zero(256));
        assert_eq!(r.sum_ii, Enclosure::zero(256));
    }

    #[test]
    fn domination_violation_detected() {
        let half = Dyadic::new(BigUint::from(1u32) << 19usize, 20);
        let s = sched(
            vec![ExpPair::new(81u32, 1u32), ExpPair::new(80u32, 1u32)],
            vec![2],
            half,
        );
        let r = verify_conditions(&s).unwrap();
        assert!(!r.iv_ok);
        assert!(!r.passed);
    }
}
