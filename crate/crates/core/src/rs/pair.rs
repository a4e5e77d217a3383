use num_complex::Complex64;

use super::CoeffSchedule;
use crate::error::{Error, Result};
use crate::freq::{FreqSchedule, SignedSumEntry};
use crate::poly::SparsePoly;

/// The Rudin–Shapiro pair `(p_n, q_n)` over a frequency schedule.
#[derive(Clone, Debug)]
pub struct RSPair {
    pub p: SparsePoly,
    pub q: SparsePoly,
    pub schedule: CoeffSchedule,
    pub freqs: FreqSchedule,
}

impl RSPair {
    pub fn n(&self) -> usize {
        self.schedule.n()
    }

    /// `Π_{k=1}^n (1 + a_k²)`
    pub fn flat(&self) -> f64 {
        self.schedule.values().iter().map(|a| 1.0 + a * a).product()
    }
}

/// Runs
///
/// ```text
/// p_k = p_{k−1} + a_k z^{n_k} q_{k−1}(z^{-1})
/// q_k = q_{k−1} − a_k z^{n_k} p_{k−1}(z^{-1})
/// ```
///
/// from `p_0 = 0`, `q_0 = 1`. Every reflection must be dominated by `n_k`
/// and the two summands of each step must have disjoint supports.
pub fn build_rs_pair(schedule: &CoeffSchedule, freqs: &FreqSchedule) -> Result<RSPair> {
    if schedule.n() != freqs.n || freqs.freqs.len() != freqs.n {
        return Err(Error::InvalidInput(format!(
            "schedule level {} does not match frequency level {}",
            schedule.n(),
            freqs.n
        )));
    }
    let mut p = SparsePoly::new();
    let mut q = SparsePoly::constant(Complex64::new(1.0, 0.0));
    for k in 1..=schedule.n() {
        let nk = &freqs.freqs[k - 1];
        let a = Complex64::new(schedule.a(k), 0.0);
        let from_q = q.reflect_shift(nk)?.scale(a);
        let from_p = p.reflect_shift(nk)?.scale(-a.conj());
        p = p.disjoint_sum(&from_q)?;
        q = q.disjoint_sum(&from_p)?;
    }
    Ok(RSPair {
        p,
        q,
        schedule: schedule.clone(),
        freqs: freqs.clone(),
    })
}

/// Closed form `b_M = (−1)^⌊|M|/2⌋ Π_{k∈M} a_k` of the coefficient at `m(M)`
/// (in `p_n` for odd `|M|`, in `q_n` for even).
pub fn expected_coefficient(entry: &SignedSumEntry, a: &CoeffSchedule) -> f64 {
    let magnitude: f64 = entry.members().map(|k| a.a(k)).product();
    if (entry.cardinality() / 2) % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::freq::{enumerate_signed_sums, Mode};
    use crate::poly::ExpPair;
    use num_bigint::BigUint;

    fn freqs(fs: Vec<ExpPair>) -> FreqSchedule {
        FreqSchedule {
            n: fs.len(),
            freqs: fs,
            kappa: Dyadic::new(BigUint::from(1u32) << 19usize, 20),
            a_set: vec![],
            base: BigUint::from(81u32),
            mode: Mode::Standard,
        }
    }

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn level_one() {
        let a = CoeffSchedule::new("ones", vec![1.0]).unwrap();
        let pair = build_rs_pair(&a, &freqs(vec![ExpPair::new(4u32, 1u32)])).unwrap();
        assert_eq!(
            pair.p,
            SparsePoly::monomial(ExpPair::new(4u32, 1u32), one())
        );
        assert_eq!(pair.q, SparsePoly::constant(one()));
    }

    #[test]
    fn level_two() {
        let a = CoeffSchedule::new("ones", vec![1.0, 1.0]).unwrap();
        let pair = build_rs_pair(
            &a,
            &freqs(vec![ExpPair::new(4u32, 1u32), ExpPair::new(81u32, 40u32)]),
        )
        .unwrap();
        let p = SparsePoly::from_terms([
            (ExpPair::new(4u32, 1u32), one()),
            (ExpPair::new(81u32, 40u32), one()),
        ]);
        let q = SparsePoly::from_terms([
            (ExpPair::zero(), one()),
            (ExpPair::new(77u32, 39u32), -one()),
        ]);
        assert_eq!(pair.p, p);
        assert_eq!(pair.q, q);
    }

    #[test]
    fn small_frequency_is_domination_error() {
        let a = CoeffSchedule::new("ones", vec![1.0, 1.0]).unwrap();
        let r = build_rs_pair(
            &a,
            &freqs(vec![ExpPair::new(4u32, 1u32), ExpPair::new(3u32, 5u32)]),
        );
        assert!(matches!(r, Err(Error::Domination { .. })));
    }

    #[test]
    fn colliding_frequencies() {
        // n_2 = 2·n_1 makes m({2,1}) = n_1 collide with m({1}) in the next step's sums.
        let a = CoeffSchedule::new("ones", vec![1.0, 1.0, 1.0]).unwrap();
        let fs = vec![
            ExpPair::new(2u32, 2u32),
            ExpPair::new(4u32, 4u32),
            ExpPair::new(6u32, 6u32),
        ];
        let r = build_rs_pair(&a, &freqs(fs));
        assert!(matches!(r, Err(Error::Collision { .. })));
    }

    #[test]
    fn coefficients_match_closed_form() {
        let a = CoeffSchedule::new("mixed", vec![0.9, 0.3, 0.7, 0.5, 1.0, 0.2]).unwrap();
        let kappa = Dyadic::nearest_inv_fourth_root(6, 20);
        let s = FreqSchedule::from_base(
            6,
            &[1, 2, 5],
            &kappa,
            &BigUint::from(3u32.pow(12)),
            Mode::Standard,
        );
        let pair = build_rs_pair(&a, &s).unwrap();
        assert_eq!(pair.p.term_count(), 32);
        assert_eq!(pair.q.term_count(), 32);
        for e in enumerate_signed_sums(&s, 20).unwrap() {
            let poly = if e.odd { &pair.p } else { &pair.q };
            let c = poly.get(&e.exp_pair().unwrap()).expect("term present");
            assert_eq!(c.im, 0.0);
            assert!((c.re - expected_coefficient(&e, &a)).abs() <= 1e-15);
        }
    }
}
