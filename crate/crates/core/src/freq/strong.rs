use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{FreqSchedule, Mode};
use crate::error::{Error, Result};
use crate::poly::{Multiplier, SparsePoly};
use crate::rs::RSPair;

/// ℓ¹ bounds for the ordinary (non-Euler) derivatives of `F` and `G`.
///
/// With `(z1∂1)²F = p_n`, the coefficient of `F` at `m(M)` is
/// `b_M / m1²`; these sums run over the combined `F` and `G` term sets.
#[derive(Clone, Debug, PartialEq)]
pub struct OrdinaryBounds {
    /// `Σ |b_M| / m1²`, bounds `‖F‖ + ‖G‖`.
    pub s_val: f64,
    /// `Σ |b_M| / m1`, bounds `‖∂1F‖ + ‖∂1G‖`.
    pub s_d1: f64,
    /// `Σ |b_M| · m2 / m1²`, bounds `‖∂2F‖ + ‖∂2G‖`.
    pub s_d2: f64,
    /// `Σ_{k=1}^n 2^k / 2^(k²)`.
    pub majorant: BigRational,
}

impl OrdinaryBounds {
    pub fn all_below_two(&self) -> bool {
        self.s_val < 2.0 && self.s_d1 < 2.0 && self.s_d2 < 2.0
    }
}

pub fn strong_majorant(n: usize) -> BigRational {
    let mut acc = BigRational::zero();
    for k in 1..=n {
        let num = BigInt::one() << k;
        let den = BigInt::one() << (k * k);
        acc += BigRational::new(num, den);
    }
    acc
}

pub fn strong_mode_bounds(s: &FreqSchedule, pair: &RSPair) -> Result<OrdinaryBounds> {
    if s.mode != Mode::Strong {
        return Err(Error::Mode);
    }
    if !s.exceeds_square_powers() {
        return Err(Error::InvalidInput(
            "strong schedule must have (n_k)_1 > 2^(k^2)".into(),
        ));
    }
    let g: SparsePoly = SparsePoly::from_terms(
        pair.q
            .terms()
            .filter(|(e, _)| e.m1 != BigUint::zero())
            .map(|(e, c)| (e.clone(), *c)),
    );
    let sum =
        |mult: Multiplier| -> Result<f64> { Ok(pair.p.weighted_l1(mult)? + g.weighted_l1(mult)?) };
    Ok(OrdinaryBounds {
        s_val: sum(Multiplier::new(-2, 0))?,
        s_d1: sum(Multiplier::new(-1, 0))?,
        s_d2: sum(Multiplier::new(-2, 1))?,
        majorant: strong_majorant(s.n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn majorant_three_terms() {
        let m = strong_majorant(3);
        assert_eq!(m, BigRational::new(BigInt::from(81), BigInt::from(64)));
        assert_eq!(m.to_f64().unwrap(), 1.265625);
        assert!(strong_majorant(40) < BigRational::from_integer(BigInt::from(2)));
    }
}
