use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use super::FreqSchedule;
use crate::error::{Error, Result};
use crate::poly::ExpPair;

/// One nonempty subset `M ⊂ {1..n}` and its alternating sum
/// `m(M) = n_{i0} − n_{i1} + n_{i2} − …` over `i0 > i1 > …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSumEntry {
    /// Bit `k − 1` set iff `k ∈ M`.
    pub mask: u64,
    pub max_m: usize,
    /// Odd cardinality: the term belongs to `p_n` (and `F`); even: `q_n − 1` (and `G`).
    pub odd: bool,
    pub m1: BigInt,
    pub m2: BigInt,
}

impl SignedSumEntry {
    pub fn cardinality(&self) -> u32 {
        self.mask.count_ones()
    }

    /// `m(M)` as an exponent pair, if both coordinates are nonnegative.
    pub fn exp_pair(&self) -> Option<ExpPair> {
        Some(ExpPair {
            m1: self.m1.to_biguint()?,
            m2: self.m2.to_biguint()?,
        })
    }

    /// Condition (iv) plus `m1 ≥ 1`.
    pub fn is_positive(&self) -> bool {
        self.m1.sign() == Sign::Plus && self.m2.sign() != Sign::Minus
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..64)
            .filter(move |b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
    }
}

/// All `2^n − 1` nonempty subsets in increasing mask order.
///
/// Uses `m(M) = n_max(M) − m(M \ {max M})` with `m(∅) = 0`.
pub fn enumerate_signed_sums(s: &FreqSchedule, limit: usize) -> Result<Vec<SignedSumEntry>> {
    let n = s.n;
    if n > limit || n > 63 {
        return Err(Error::EnumTooLarge { n, limit });
    }
    let total = 1usize << n;
    let freqs: Vec<(BigInt, BigInt)> = s
        .freqs
        .iter()
        .map(|f| (BigInt::from(f.m1.clone()), BigInt::from(f.m2.clone())))
        .collect();
    let mut sums: Vec<(BigInt, BigInt)> = Vec::with_capacity(total);
    sums.push((BigInt::zero(), BigInt::zero()));
    let mut out = Vec::with_capacity(total - 1);
    for mask in 1..total {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let (f1, f2) = &freqs[top];
        let (r1, r2) = &sums[rest];
        let m = (f1 - r1, f2 - r2);
        out.push(SignedSumEntry {
            mask: mask as u64,
            max_m: top + 1,
            odd: mask.count_ones() % 2 == 1,
            m1: m.0.clone(),
            m2: m.1.clone(),
        });
        sums.push(m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::Dyadic;
    use crate::freq::Mode;
    use num_bigint::BigUint;

    fn n2_schedule() -> FreqSchedule {
        FreqSchedule {
            n: 2,
            freqs: vec![ExpPair::new(81u32, 1u32), ExpPair::new(6561u32, 3281u32)],
            kappa: Dyadic::new(BigUint::from(1u32) << 19usize, 20),
            a_set: vec![2],
            base: BigUint::from(81u32),
            mode: Mode::Standard,
        }
    }

    #[test]
    fn n2_entries() {
        let es = enumerate_signed_sums(&n2_schedule(), 20).unwrap();
        let got: Vec<_> = es
            .iter()
            .map(|e| (e.mask, e.m1.clone(), e.m2.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (0b01, BigInt::from(81), BigInt::from(1)),
                (0b10, BigInt::from(6561), BigInt::from(3281)),
                (0b11, BigInt::from(6480), BigInt::from(3280)),
            ]
        );
        assert!(es[0].odd && es[1].odd && !es[2].odd);
        assert_eq!(es[2].max_m, 2);
    }

    #[test]
    fn count_and_singletons() {
        let kappa = Dyadic::nearest_inv_fourth_root(5, 20);
        let s = FreqSchedule::from_base(5, &[1, 4], &kappa, &BigUint::from(243u32), Mode::Standard);
        let es = enumerate_signed_sums(&s, 20).unwrap();
        assert_eq!(es.len(), 31);
        for e in es.iter().filter(|e| e.cardinality() == 1) {
            let f = &s.freqs[e.max_m - 1];
            assert_eq!(e.exp_pair().unwrap(), *f);
        }
    }

    #[test]
    fn limit_enforced() {
        assert!(matches!(
            enumerate_signed_sums(&n2_schedule(), 1),
            Err(Error::EnumTooLarge { .. })
        ));
    }
}
