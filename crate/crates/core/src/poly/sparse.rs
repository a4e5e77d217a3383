use std::collections::btree_map::{self, BTreeMap};

use num_complex::Complex64;

use super::ExpPair;
use crate::error::{Error, Result};

/// Finite map from exponent pairs to nonzero complex coefficients.
///
/// Exponents are nonnegative by type, so every value is an analytic
/// polynomial. Exactly-zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparsePoly {
    terms: BTreeMap<ExpPair, Complex64>,
}

impl SparsePoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        Self::monomial(ExpPair::zero(), c)
    }

    pub fn monomial(e: ExpPair, c: Complex64) -> Self {
        let mut p = Self::new();
        p.insert(e, c);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeated
    /// exponents and pruning exact zeros.
    pub fn from_terms<I: IntoIterator<Item = (ExpPair, Complex64)>>(terms: I) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            let slot = p.terms.entry(e).or_insert(Complex64::new(0.0, 0.0));
            *slot += c;
        }
        p.terms.retain(|_, c| !is_exact_zero(*c));
        p
    }

    /// Sets the coefficient at `e`; a zero coefficient removes the term.
    pub fn insert(&mut self, e: ExpPair, c: Complex64) {
        if is_exact_zero(c) {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, c);
        }
    }

    pub fn get(&self, e: &ExpPair) -> Option<Complex64> {
        self.terms.get(e).copied()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> btree_map::Iter<'_, ExpPair, Complex64> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> btree_map::Keys<'_, ExpPair, Complex64> {
        self.terms.keys()
    }

    /// `alpha·P + beta·Q`, pruning exact zeros.
    pub fn linear_combine(
        alpha: Complex64,
        p: &SparsePoly,
        beta: Complex64,
        q: &SparsePoly,
    ) -> SparsePoly {
        let mut out = BTreeMap::new();
        let mut left = p.terms.iter().peekable();
        let mut right = q.terms.iter().peekable();
        loop {
            let (e, c) = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some((ep, cp)), None) => {
                    let r = ((*ep).clone(), alpha * **cp);
                    left.next();
                    r
                }
                (None, Some((eq, cq))) => {
                    let r = ((*eq).clone(), beta * **cq);
                    right.next();
                    r
                }
                (Some((ep, cp)), Some((eq, cq))) => match ep.cmp(eq) {
                    std::cmp::Ordering::Less => {
                        let r = ((*ep).clone(), alpha * **cp);
                        left.next();
                        r
                    }
                    std::cmp::Ordering::Greater => {
                        let r = ((*eq).clone(), beta * **cq);
                        right.next();
                        r
                    }
                    std::cmp::Ordering::Equal => {
                        let r = ((*ep).clone(), alpha * **cp + beta * **cq);
                        left.next();
                        right.next();
                        r
                    }
                },
            };
            if !is_exact_zero(c) {
                out.insert(e, c);
            }
        }
        SparsePoly { terms: out }
    }

    /// `z^s · P(z^{-1})`: each term `c z^e` becomes `c z^(s-e)`.
    pub fn reflect_shift(&self, s: &ExpPair) -> Result<SparsePoly> {
        let mut out = BTreeMap::new();
        for (e, c) in &self.terms {
            let r = s.checked_sub(e).ok_or_else(|| Error::Domination {
                m1: e.m1.to_string(),
                m2: e.m2.to_string(),
            })?;
            out.insert(r, *c);
        }
        Ok(SparsePoly { terms: out })
    }

    /// Disjoint union of supports; fails on the first shared exponent.
    pub fn disjoint_sum(&self, other: &SparsePoly) -> Result<SparsePoly> {
        let (big, small) = if self.term_count() >= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.terms.clone();
        for (e, c) in &small.terms {
            if out.insert(e.clone(), *c).is_some() {
                return Err(Error::Collision {
                    m1: e.m1.to_string(),
                    m2: e.m2.to_string(),
                });
            }
        }
        Ok(SparsePoly { terms: out })
    }

    pub fn scale(&self, alpha: Complex64) -> SparsePoly {
        SparsePoly::linear_combine(alpha, self, Complex64::new(0.0, 0.0), &SparsePoly::new())
    }

    /// Sum of squared coefficient moduli.
    pub fn energy(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .collect::<crate::sum::KahanSum>()
            .value()
    }
}

fn is_exact_zero(c: Complex64) -> bool {
    c.re == 0.0 && c.im == 0.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(ts: &[((u32, u32), Complex64)]) -> SparsePoly {
        SparsePoly::from_terms(ts.iter().map(|&((a, b), z)| (ExpPair::new(a, b), z)))
    }

    #[test]
    fn linear_combine_cancels() {
        let p = poly(&[((1, 0), c(1.0, 0.0))]);
        let q = poly(&[((1, 0), c(-1.0, 0.0))]);
        assert!(SparsePoly::linear_combine(c(1.0, 0.0), &p, c(1.0, 0.0), &q).is_empty());
    }

    #[test]
    fn linear_combine_scales() {
        let p = poly(&[((0, 0), c(1.0, 0.0))]);
        let r = SparsePoly::linear_combine(c(2.0, 0.0), &p, c(0.0, 0.0), &SparsePoly::new());
        assert_eq!(r, poly(&[((0, 0), c(2.0, 0.0))]));
    }

    #[test]
    fn linear_combine_disjoint() {
        let p = poly(&[((1, 0), c(1.0, 0.0))]);
        let q = poly(&[((4, 1), c(1.0, 0.0))]);
        let r = SparsePoly::linear_combine(c(1.0, 0.0), &p, c(1.0, 0.0), &q);
        assert_eq!(r, poly(&[((1, 0), c(1.0, 0.0)), ((4, 1), c(1.0, 0.0))]));
    }

    #[test]
    fn reflect_shift_examples() {
        let p = poly(&[((0, 0), c(1.0, 0.0)), ((1, 0), c(1.0, 0.0))]);
        let r = p.reflect_shift(&ExpPair::new(3u32, 2u32)).unwrap();
        assert_eq!(r, poly(&[((3, 2), c(1.0, 0.0)), ((2, 2), c(1.0, 0.0))]));

        let p = poly(&[((2, 1), c(0.0, 1.0))]);
        let r = p.reflect_shift(&ExpPair::new(2u32, 1u32)).unwrap();
        assert_eq!(r, poly(&[((0, 0), c(0.0, 1.0))]));

        let p = poly(&[((2, 1), c(1.0, 0.0))]);
        assert!(matches!(
            p.reflect_shift(&ExpPair::new(1u32, 0u32)),
            Err(Error::Domination { .. })
        ));
    }

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut p = SparsePoly::new();
        p.insert(ExpPair::new(1u32, 1u32), c(0.0, 0.0));
        assert!(p.is_empty());
        let p = poly(&[((1, 1), c(1.0, 0.0)), ((1, 1), c(-1.0, 0.0))]);
        assert!(p.is_empty());
    }

    #[test]
    fn disjoint_sum_detects_collision() {
        let p = poly(&[((1, 0), c(1.0, 0.0))]);
        assert!(matches!(p.disjoint_sum(&p), Err(Error::Collision { .. })));
    }
}
