use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use super::{CoeffSchedule, ScalarTrace};
use crate::error::{Error, Result};
use crate::sum::{ComplexKahanSum, KahanSum};

/// A half-plane subset `A = {k : Re(e^{-iφ} ω_k) > 0}` and its sum.
#[derive(Clone, Debug, PartialEq)]
pub struct SubsetSelection {
    /// Selected positions in the input, ascending, 0-based.
    pub indices: Vec<usize>,
    /// `|Σ_{k∈A} ω_k|`
    pub achieved: f64,
    /// `Σ_k |ω_k|`
    pub total: f64,
    pub phi: f64,
}

/// Picks the half-plane subset with the largest `|Σ_{k∈A} ω_k|`.
///
/// The subset `A(φ)` only changes when a boundary angle `arg ω_k ± π/2` is
/// crossed, so it suffices to scan those angles, the values `arg ω_k` and
/// the midpoints between consecutive candidates. Averaging `|Σ_{A(φ)} ω|`
/// over φ gives `total/π`, hence `achieved ≥ total/π`. Ties go to the
/// smallest φ in `[0, 2π)`.
pub fn select_subset(omega: &[Complex64]) -> Result<SubsetSelection> {
    if omega.is_empty() {
        return Err(Error::EmptyInput);
    }
    let total = omega.iter().map(|w| w.norm()).collect::<KahanSum>().value();
    let mut angles = Vec::new();
    for w in omega.iter().filter(|w| w.norm() > 0.0) {
        let t = w.arg();
        for a in [t, t + FRAC_PI_2, t - FRAC_PI_2] {
            angles.push(a.rem_euclid(TAU));
        }
    }
    if angles.is_empty() {
        return Ok(SubsetSelection {
            indices: Vec::new(),
            achieved: 0.0,
            total,
            phi: 0.0,
        });
    }
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|b, a| (*b - *a).abs() <= 1e-12);
    let mut candidates = Vec::with_capacity(2 * angles.len());
    for (i, &a) in angles.iter().enumerate() {
        candidates.push(a);
        let next = if i + 1 < angles.len() {
            angles[i + 1]
        } else {
            angles[0] + TAU
        };
        candidates.push(((a + next) / 2.0).rem_euclid(TAU));
    }
    candidates.sort_by(f64::total_cmp);

    let mut best: Option<SubsetSelection> = None;
    for phi in candidates {
        let rot = Complex64::from_polar(1.0, -phi);
        let indices: Vec<usize> = (0..omega.len())
            .filter(|&k| (rot * omega[k]).re > 0.0)
            .collect();
        let achieved = indices
            .iter()
            .map(|&k| omega[k])
            .collect::<ComplexKahanSum>()
            .value()
            .norm();
        let better = match &best {
            None => true,
            Some(b) => achieved > b.achieved * (1.0 + 1e-12),
        };
        if better {
            best = Some(SubsetSelection {
                indices,
                achieved,
                total,
                phi,
            });
        }
    }
    Ok(best.expect("at least one candidate"))
}

/// Which scalar sequence drove the choice of `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// `ω_k = a_k·q_{k−1}(𝟏)`
    Q,
    /// `ω_k = a_k·p_{k−1}(𝟏)`
    P,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Q => "q",
            Branch::P => "p",
        })
    }
}

impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" => Ok(Branch::Q),
            "p" => Ok(Branch::P),
            _ => Err(Error::Parse(format!("unknown branch {s:?}"))),
        }
    }
}

/// The subset `A ⊂ {1..n}` used by the construction, with both
/// selected sums.
#[derive(Clone, Debug, PartialEq)]
pub struct RsSelection {
    pub branch: Branch,
    /// 1-based, ascending.
    pub a_set: Vec<usize>,
    pub selection: SubsetSelection,
    /// `|Σ_{k∈A} a_k q_{k−1}(𝟏)|`
    pub sum_q: f64,
    /// `|Σ_{k∈A} a_k p_{k−1}(𝟏)|`
    pub sum_p: f64,
}

/// Chooses the larger of `Σ|ω^q|`, `Σ|ω^p|` and selects `A` for it.
pub fn choose_subset(trace: &ScalarTrace, a: &CoeffSchedule) -> Result<RsSelection> {
    let wq = trace.omega_q(a);
    let wp = trace.omega_p(a);
    let tq = wq.iter().map(|x| x.abs()).collect::<KahanSum>().value();
    let tp = wp.iter().map(|x| x.abs()).collect::<KahanSum>().value();
    let (branch, chosen) = if tq >= tp {
        (Branch::Q, &wq)
    } else {
        (Branch::P, &wp)
    };
    let omega: Vec<Complex64> = chosen.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let selection = select_subset(&omega)?;
    let a_set: Vec<usize> = selection.indices.iter().map(|i| i + 1).collect();
    Ok(RsSelection {
        branch,
        sum_q: selected_sum(&wq, &a_set),
        sum_p: selected_sum(&wp, &a_set),
        a_set,
        selection,
    })
}

/// `|Σ_{k∈A} ω_k|` for 1-based `A`.
pub(crate) fn selected_sum(omega: &[f64], a_set: &[usize]) -> f64 {
    a_set
        .iter()
        .map(|&k| omega[k - 1])
        .collect::<KahanSum>()
        .value()
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rs::{default_parameters, scalar_trace};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn brute_force(omega: &[Complex64]) -> f64 {
        (0u32..1 << omega.len())
            .map(|mask| {
                (0..omega.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| omega[k])
                    .sum::<Complex64>()
                    .norm()
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn four_directions() {
        let w = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        let s = select_subset(&w).unwrap();
        assert_eq!(s.indices, vec![0, 1]);
        assert!((s.achieved - 2f64.sqrt()).abs() < 1e-15);
        assert!((brute_force(&w) - 2f64.sqrt()).abs() < 1e-15);
        assert!(s.achieved >= 4.0 / PI);
    }

    #[test]
    fn aligned_and_opposite() {
        let s = select_subset(&[c(1.0, 0.0); 3]).unwrap();
        assert_eq!((s.indices, s.achieved), (vec![0, 1, 2], 3.0));
        let s = select_subset(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert_eq!((s.indices, s.achieved), (vec![0], 1.0));
    }

    #[test]
    fn empty_and_zero_inputs() {
        assert!(matches!(select_subset(&[]), Err(Error::EmptyInput)));
        let s = select_subset(&[c(0.0, 0.0); 2]).unwrap();
        assert!(s.indices.is_empty() && s.achieved == 0.0);
    }

    #[test]
    fn pipeline_selection_sums() {
        let (a, _) = default_parameters(8, 20).unwrap();
        let t = scalar_trace(&a);
        let sel = choose_subset(&t, &a).unwrap();
        let w = match sel.branch {
            Branch::Q => t.omega_q(&a),
            Branch::P => t.omega_p(&a),
        };
        let total: f64 = w.iter().map(|x| x.abs()).sum();
        assert!(sel.selection.achieved >= total / PI);
        assert!(sel.a_set.iter().all(|&k| (1..=8).contains(&k)));
    }

    fn omega_strategy() -> impl Strategy<Value = Vec<Complex64>> {
        proptest::collection::vec(
            (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b)),
            1..=12,
        )
    }

    proptest! {
        #[test]
        fn achieves_lemma_and_brute_force(w in omega_strategy()) {
            let s = select_subset(&w).unwrap();
            prop_assert!(s.achieved >= s.total / PI - 1e-12);
            let brute = brute_force(&w);
            prop_assert!(brute >= s.achieved - 1e-12);
            prop_assert!(s.achieved >= brute - 1e-9 * brute.max(1.0));
        }

        #[test]
        fn positive_scaling_keeps_subset(w in omega_strategy(), scale in 0.01f64..100.0) {
            let s = select_subset(&w).unwrap();
            let scaled: Vec<_> = w.iter().map(|z| z * scale).collect();
            prop_assert_eq!(select_subset(&scaled).unwrap().indices, s.indices);
        }
    }
}
