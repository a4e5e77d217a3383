use rayon::prelude::*;

use super::GridSpec;
use crate::poly::SparsePoly;
use crate::rs::RSPair;

/// Largest relative residual of `|p(g)|² + |q(ḡ)|² = flat` over the
/// sampled grid points, where `ḡ` negates both indices mod N.
pub fn flatness_residual_of(p: &SparsePoly, q: &SparsePoly, flat: f64, spec: &GridSpec) -> f64 {
    spec.sample_points()
        .par_iter()
        .map(|&g| {
            let lhs = p.eval_at(g).norm_sqr() + q.eval_at(g.conj()).norm_sqr();
            (lhs - flat).abs() / flat
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max)
}

pub fn flatness_residual(pair: &RSPair, spec: &GridSpec) -> f64 {
    flatness_residual_of(&pair.p, &pair.q, pair.flat(), spec)
}
