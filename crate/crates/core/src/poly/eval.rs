use std::f64::consts::TAU;

use num_complex::Complex64;

use super::{Multiplier, SparsePoly};
use crate::error::{Error, Result};
use crate::sum::ComplexKahanSum;

/// Torus point `(e^{2πi j1/N}, e^{2πi j2/N})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridPoint {
    pub n: u64,
    pub j1: u64,
    pub j2: u64,
}

impl GridPoint {
    pub fn new(n: u64, j1: u64, j2: u64) -> Result<Self> {
        if n == 0 || j1 >= n || j2 >= n {
            return Err(Error::InvalidInput(format!(
                "grid point ({j1}, {j2}) outside 0..{n}"
            )));
        }
        Ok(GridPoint { n, j1, j2 })
    }

    pub fn origin(n: u64) -> Self {
        GridPoint { n, j1: 0, j2: 0 }
    }

    /// The conjugate point `(-j1 mod N, -j2 mod N)`.
    pub fn conj(self) -> Self {
        GridPoint {
            n: self.n,
            j1: (self.n - self.j1) % self.n,
            j2: (self.n - self.j2) % self.n,
        }
    }
}

/// `e^{2πi r/n}`, exact at multiples of a quarter turn.
pub fn unit_root(r: u64, n: u64) -> Complex64 {
    let r = r % n;
    if (4 * r as u128).is_multiple_of(n as u128) {
        return match (4 * r as u128) / n as u128 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let theta = TAU * (r as f64 / n as f64);
    Complex64::new(theta.cos(), theta.sin())
}

impl SparsePoly {
    /// Exact-phase evaluation at a grid point.
    ///
    /// Each phase index `(m1·j1 + m2·j2) mod N` is reduced in integers before
    /// any floating-point work; only the compensated summation (canonical
    /// term order) rounds.
    pub fn eval_at(&self, g: GridPoint) -> Complex64 {
        self.terms()
            .map(|(e, c)| c * phase(e, g))
            .collect::<ComplexKahanSum>()
            .value()
    }

    /// Evaluates the image under `mult` without materializing it.
    pub fn eval_view_at(&self, mult: Multiplier, g: GridPoint) -> Result<Complex64> {
        let mut acc = ComplexKahanSum::new();
        for (e, c) in self.terms() {
            acc.add(c * mult.factor(e)? * phase(e, g));
        }
        Ok(acc.value())
    }
}

fn phase(e: &super::ExpPair, g: GridPoint) -> Complex64 {
    let (r1, r2) = e.reduce_mod(g.n);
    let n = g.n as u128;
    let r = (r1 as u128 * g.j1 as u128 + r2 as u128 * g.j2 as u128) % n;
    unit_root(r as u64, g.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExpPair;
    use num_bigint::BigUint;

    #[test]
    fn huge_exponent_phase() {
        // 3^2 = 9 ≡ 1 (mod 8), so 3^100 ≡ 1.
        assert_eq!(
            BigUint::from(3u32).modpow(&BigUint::from(100u32), &BigUint::from(8u32)),
            BigUint::from(1u32)
        );
        let p = SparsePoly::monomial(
            ExpPair::new(BigUint::from(3u32).pow(100), 0u32),
            Complex64::new(1.0, 0.0),
        );
        let v = p.eval_at(GridPoint::new(8, 1, 0).unwrap());
        let want = Complex64::from_polar(1.0, TAU / 8.0);
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn one_plus_z_vanishes_at_minus_one() {
        let p = SparsePoly::from_terms([
            (ExpPair::zero(), Complex64::new(1.0, 0.0)),
            (ExpPair::new(1u32, 0u32), Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(
            p.eval_at(GridPoint::new(2, 1, 0).unwrap()),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn constant_everywhere() {
        let c = Complex64::new(0.25, -3.0);
        let p = SparsePoly::constant(c);
        for (j1, j2) in [(0, 0), (3, 5), (7, 7)] {
            assert_eq!(p.eval_at(GridPoint::new(8, j1, j2).unwrap()), c);
        }
    }

    #[test]
    fn grid_point_bounds() {
        assert!(GridPoint::new(8, 8, 0).is_err());
        assert!(GridPoint::new(0, 0, 0).is_err());
        assert_eq!(
            GridPoint::new(8, 3, 0).unwrap().conj(),
            GridPoint { n: 8, j1: 5, j2: 0 }
        );
    }
}
