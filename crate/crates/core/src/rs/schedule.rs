use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// Real coefficient schedule `a_1..a_n`, each in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffSchedule {
    pub name: String,
    a: Vec<f64>,
}

impl CoeffSchedule {
    pub fn new(name: impl Into<String>, a: Vec<f64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput(
                "coefficient schedule must be nonempty".into(),
            ));
        }
        if let Some(x) = a.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidInput(format!(
                "coefficient {x} outside [0, 1]"
            )));
        }
        Ok(CoeffSchedule {
            name: name.into(),
            a,
        })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// `a_k` for `k` in `1..=n`.
    pub fn a(&self, k: usize) -> f64 {
        self.a[k - 1]
    }

    pub fn values(&self) -> &[f64] {
        &self.a
    }
}

/// `a_k = k^(-1/2)` and `κ̂` the nearest dyadic with `bits` fractional bits
/// to `n^(-1/4)`.
pub fn default_parameters(n: usize, bits: u32) -> Result<(CoeffSchedule, Dyadic)> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    let a = (1..=n).map(|k| 1.0 / (k as f64).sqrt()).collect();
    let kappa = Dyadic::nearest_inv_fourth_root(n as u64, bits);
    Ok((CoeffSchedule::new("inv_sqrt", a)?, kappa))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_parameter_examples() {
        let (a, k) = default_parameters(16, 20).unwrap();
        assert_eq!(k.to_f64(), 0.5);
        assert_eq!(a.a(4), 0.5);
        let (a, k) = default_parameters(1, 20).unwrap();
        assert_eq!((a.values(), k.to_f64()), (&[1.0][..], 1.0));
        let (_, k) = default_parameters(4, 20).unwrap();
        assert_eq!(k.to_string(), "741455/2^20");
        for n in [2, 3, 5, 7, 12, 100, 1000] {
            let (_, k) = default_parameters(n, 20).unwrap();
            assert!((k.to_f64() - (n as f64).powf(-0.25)).abs() <= 2f64.powi(-21));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(CoeffSchedule::new("x", vec![0.5, 1.5]).is_err());
        assert!(CoeffSchedule::new("x", vec![]).is_err());
        assert!(default_parameters(0, 20).is_err());
    }
}
