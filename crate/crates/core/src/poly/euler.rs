use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{ExpPair, SparsePoly};
use crate::dyadic::ratio_to_f64;
use crate::error::{Error, Result};
use crate::sum::KahanSum;

/// Euler differential operators, acting diagonally on monomials.
///
/// `D1 = z1 ∂/∂z1` multiplies `z^m` by `m1`, `D2` by `m2`; `AntiD1sq` is the
/// inverse of `D1sq` on polynomials without `m1 = 0` terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EulerOp {
    Identity,
    D1,
    D2,
    D1sq,
    D2sq,
    D1D2,
    AntiD1sq,
}

impl EulerOp {
    pub const ALL: [EulerOp; 7] = [
        EulerOp::Identity,
        EulerOp::D1,
        EulerOp::D2,
        EulerOp::D1sq,
        EulerOp::D2sq,
        EulerOp::D1D2,
        EulerOp::AntiD1sq,
    ];

    pub fn multiplier(self) -> Multiplier {
        let (pow1, pow2) = match self {
            EulerOp::Identity => (0, 0),
            EulerOp::D1 => (1, 0),
            EulerOp::D2 => (0, 1),
            EulerOp::D1sq => (2, 0),
            EulerOp::D2sq => (0, 2),
            EulerOp::D1D2 => (1, 1),
            EulerOp::AntiD1sq => (-2, 0),
        };
        Multiplier { pow1, pow2 }
    }

    pub fn name(self) -> &'static str {
        match self {
            EulerOp::Identity => "Identity",
            EulerOp::D1 => "D1",
            EulerOp::D2 => "D2",
            EulerOp::D1sq => "D1sq",
            EulerOp::D2sq => "D2sq",
            EulerOp::D1D2 => "D1D2",
            EulerOp::AntiD1sq => "AntiD1sq",
        }
    }
}

impl fmt::Display for EulerOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EulerOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EulerOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown operator {s:?}")))
    }
}

/// Per-term multiplier `m1^pow1 · m2^pow2`; composition adds powers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Multiplier {
    pub pow1: i32,
    pub pow2: i32,
}

impl Multiplier {
    pub const IDENTITY: Multiplier = Multiplier { pow1: 0, pow2: 0 };

    pub fn new(pow1: i32, pow2: i32) -> Self {
        Multiplier { pow1, pow2 }
    }

    pub fn then(self, op: EulerOp) -> Multiplier {
        let m = op.multiplier();
        Multiplier {
            pow1: self.pow1 + m.pow1,
            pow2: self.pow2 + m.pow2,
        }
    }

    /// Exact factor at `e` as `(numerator, denominator)`.
    pub fn factor_ratio(self, e: &ExpPair) -> Result<(BigUint, BigUint)> {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for (x, pow) in [(&e.m1, self.pow1), (&e.m2, self.pow2)] {
            if pow < 0 && x.is_zero() {
                return Err(Error::AntiDerivative {
                    m1: e.m1.to_string(),
                    m2: e.m2.to_string(),
                });
            }
            let p = x.pow(pow.unsigned_abs());
            if pow >= 0 {
                num *= p;
            } else {
                den *= p;
            }
        }
        Ok((num, den))
    }

    /// Factor at `e`, correctly rounded to `f64`.
    pub fn factor(self, e: &ExpPair) -> Result<f64> {
        if self == Multiplier::IDENTITY {
            return Ok(1.0);
        }
        let (num, den) = self.factor_ratio(e)?;
        Ok(ratio_to_f64(&num, &den))
    }
}

impl SparsePoly {
    /// Applies `op` termwise; zero factors are pruned.
    pub fn euler_apply(&self, op: EulerOp) -> Result<SparsePoly> {
        self.apply_multiplier(op.multiplier())
    }

    pub fn apply_multiplier(&self, mult: Multiplier) -> Result<SparsePoly> {
        let mut out = SparsePoly::new();
        for (e, c) in self.terms() {
            out.insert(e.clone(), c * mult.factor(e)?);
        }
        Ok(out)
    }

    /// `Σ |factor(m)·c_m|`, an upper bound for the torus sup of the image.
    pub fn coeff_l1(&self, op: EulerOp) -> Result<f64> {
        self.weighted_l1(op.multiplier())
    }

    pub fn weighted_l1(&self, mult: Multiplier) -> Result<f64> {
        let mut acc = KahanSum::new();
        for (e, c) in self.terms() {
            acc.add((c * mult.factor(e)?).norm());
        }
        Ok(acc.value())
    }

    /// Terms scaled by `mult`, in canonical order.
    pub fn scaled_terms(&self, mult: Multiplier) -> Result<Vec<(&ExpPair, Complex64)>> {
        self.terms()
            .map(|(e, c)| Ok((e, c * mult.factor(e)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(a: u32, b: u32, re: f64) -> SparsePoly {
        SparsePoly::monomial(ExpPair::new(a, b), Complex64::new(re, 0.0))
    }

    #[test]
    fn operator_examples() {
        assert_eq!(
            mono(3, 2, 1.0).euler_apply(EulerOp::D1sq).unwrap(),
            mono(3, 2, 9.0)
        );
        assert_eq!(
            mono(3, 2, 1.0).euler_apply(EulerOp::D1D2).unwrap(),
            mono(3, 2, 6.0)
        );
        assert!(mono(0, 5, 2.0)
            .euler_apply(EulerOp::D1sq)
            .unwrap()
            .is_empty());
        assert_eq!(
            mono(3, 2, 9.0).euler_apply(EulerOp::AntiD1sq).unwrap(),
            mono(3, 2, 1.0)
        );
    }

    #[test]
    fn anti_derivative_needs_positive_m1() {
        let err = mono(0, 1, 1.0).euler_apply(EulerOp::AntiD1sq).unwrap_err();
        assert!(matches!(err, Error::AntiDerivative { .. }));
    }

    #[test]
    fn l1_examples() {
        let p = SparsePoly::from_terms([
            (ExpPair::new(1u32, 0u32), Complex64::new(3.0, 0.0)),
            (ExpPair::new(2u32, 1u32), Complex64::new(0.0, -4.0)),
        ]);
        assert_eq!(p.coeff_l1(EulerOp::Identity).unwrap(), 7.0);
        assert_eq!(SparsePoly::new().coeff_l1(EulerOp::Identity).unwrap(), 0.0);
    }

    #[test]
    fn composed_multiplier_is_ratio() {
        let m = EulerOp::AntiD1sq.multiplier().then(EulerOp::D1D2);
        assert_eq!(m, Multiplier::new(-1, 1));
        let e = ExpPair::new(77u32, 39u32);
        assert_eq!(m.factor(&e).unwrap(), 39.0 / 77.0);
    }

    #[test]
    fn op_names_parse() {
        for op in EulerOp::ALL {
            assert_eq!(op.name().parse::<EulerOp>().unwrap(), op);
        }
    }
}
