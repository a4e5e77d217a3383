use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::poly::{GridPoint, Multiplier, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    /// Grid order, a power of two.
    pub n: usize,
    /// Random spot-check points for sampled checks.
    pub samples: usize,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            n: 512,
            samples: 100,
            seed: 0,
        }
    }
}

impl GridSpec {
    pub fn new(n: usize, samples: usize, seed: u64) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "grid order {n} must be a power of two ≥ 2"
            )));
        }
        Ok(GridSpec { n, samples, seed })
    }

    /// `samples` seeded uniform grid points.
    pub fn sample_points(&self) -> Vec<GridPoint> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = self.n as u64;
        (0..self.samples)
            .map(|_| GridPoint {
                n,
                j1: rng.random_range(0..n),
                j2: rng.random_range(0..n),
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSup {
    pub estimate: f64,
    pub argmax: GridPoint,
}

/// Values of the `mult`-image of `poly` on the whole `n × n` grid,
/// row-major in `(j1, j2)`.
///
/// Coefficients are folded to `(m1 mod n, m2 mod n)` with exact integer
/// reduction, then a 2-D inverse DFT evaluates the folded polynomial.
pub fn grid_values(poly: &SparsePoly, mult: Multiplier, n: usize) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut grid = vec![zero; n * n];
    for (e, c) in poly.terms() {
        let (r1, r2) = e.reduce_mod(n as u64);
        grid[r1 as usize * n + r2 as usize] += c * mult.factor(e)?;
    }
    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    let scratch_len = fft.get_inplace_scratch_len();
    let rows = |g: &mut Vec<Complex64>| {
        g.par_chunks_mut(n).for_each_init(
            || vec![zero; scratch_len],
            |scratch, row| fft.process_with_scratch(row, scratch),
        );
    };
    rows(&mut grid);
    let mut t = transpose(&grid, n);
    rows(&mut t);
    Ok(transpose(&t, n))
}

fn transpose(g: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            out[j * n + i] = g[i * n + j];
        }
    }
    out
}

/// Largest modulus over the grid; the argmax is the first point in scan
/// order within a relative `1e-12` of it.
pub fn grid_sup(poly: &SparsePoly, mult: Multiplier, spec: &GridSpec) -> Result<GridSup> {
    let n = spec.n;
    let values = grid_values(poly, mult, n)?;
    let estimate = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let idx = values
        .iter()
        .position(|v| v.norm() >= estimate * (1.0 - 1e-12))
        .unwrap_or(0);
    Ok(GridSup {
        estimate,
        argmax: GridPoint {
            n: n as u64,
            j1: (idx / n) as u64,
            j2: (idx % n) as u64,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ExpPair;
    use num_bigint::BigUint;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn unimodular_monomial() {
        let p = SparsePoly::monomial(ExpPair::new(5u32, 3u32), one());
        let s = grid_sup(&p, Multiplier::IDENTITY, &GridSpec::new(64, 0, 0).unwrap()).unwrap();
        assert!((s.estimate - 1.0).abs() < 1e-12);
        assert_eq!(s.argmax, GridPoint::origin(64));
    }

    #[test]
    fn one_plus_z() {
        let p =
            SparsePoly::from_terms([(ExpPair::zero(), one()), (ExpPair::new(1u32, 0u32), one())]);
        let s = grid_sup(&p, Multiplier::IDENTITY, &GridSpec::default()).unwrap();
        assert!((s.estimate - 2.0).abs() < 1e-12);
        assert_eq!(s.argmax, GridPoint::origin(512));
    }

    #[test]
    fn matches_direct_evaluation_with_huge_exponents() {
        let p = SparsePoly::from_terms([
            (
                ExpPair::new(BigUint::from(3u32).pow(300), 7u32),
                Complex64::new(0.5, -0.25),
            ),
            (
                ExpPair::new(11u32, BigUint::from(5u32).pow(200)),
                Complex64::new(-1.0, 0.1),
            ),
            (ExpPair::new(2u32, 2u32), Complex64::new(0.3, 0.0)),
        ]);
        let spec = GridSpec::new(32, 40, 9).unwrap();
        for mult in [Multiplier::IDENTITY, Multiplier::new(-1, 1), Multiplier::new(1, 0)] {
            let values = grid_values(&p, mult, 32).unwrap();
            let scale = p.weighted_l1(mult).unwrap().max(1.0);
            for g in spec.sample_points() {
                let direct = p.eval_view_at(mult, g).unwrap();
                let folded = values[(g.j1 * 32 + g.j2) as usize];
                assert!((direct - folded).norm() <= 1e-14 * scale, "{mult:?} {g:?}");
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GridSpec::new(1, 0, 0).is_err());
        assert!(GridSpec::new(48, 0, 0).is_err());
        let a = GridSpec::new(16, 5, 3).unwrap().sample_points();
        assert_eq!(a, GridSpec::new(16, 5, 3).unwrap().sample_points());
    }
}
