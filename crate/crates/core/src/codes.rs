//! Evaluation codes of degree-`d` forms on the rational points of a
//! Hermitian surface.

use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::Serialize;

use crate::classes::{chunks, num_classes, ClassEnumerator};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::forms::FormContext;
use crate::hermitian::HermitianSurface;
use crate::linalg;

pub const DEFAULT_CODEWORD_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct EvaluationCode {
    pub q: u16,
    pub d: u32,
    pub n: usize,
    pub k: usize,
    /// One row per degree-`d` monomial in monomial order; columns follow the
    /// surface's point order.
    pub generator: Vec<Vec<Elem>>,
    /// Row-reduced basis of the row space (`k` rows).
    basis: Vec<Vec<Elem>>,
}

pub fn build_code(s: &std::sync::Arc<HermitianSurface>, d: u32) -> Result<EvaluationCode> {
    let ctx = FormContext::new(s.clone(), d)?;
    let m = ctx.basis().len();
    let mut generator = vec![Vec::with_capacity(s.num_points()); m];
    for &p in s.points() {
        for (row, &v) in generator.iter_mut().zip(ctx.monomial_values(p)) {
            row.push(v);
        }
    }
    let mut basis = generator.clone();
    linalg::rref(s.field(), &mut basis);
    Ok(EvaluationCode { q: s.q(), d, n: s.num_points(), k: basis.len(), generator, basis })
}

/// Codeword weight counts by Hamming weight, zero codeword included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub counts: Vec<u64>,
}

impl EvaluationCode {
    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    fn enumerator<'a>(&'a self, s: &'a HermitianSurface, budget: u128) -> Result<ClassEnumerator<'a>> {
        let order = s.field().order() as u128;
        let words = order.checked_pow(self.k as u32);
        if words.is_none_or(|w| w > budget) {
            return Err(Error::BudgetExceeded {
                required: words.map_or_else(|| "more than 2^128".into(), |w| w.to_string()),
                budget: budget.min(u64::MAX as u128) as u64,
            });
        }
        Ok(ClassEnumerator::new(s.field(), &self.basis).expect("within budget"))
    }

    /// Per-weight counts over scalar classes of nonzero codewords.
    fn class_weights(&self, s: &HermitianSurface, budget: u128) -> Result<Vec<u64>> {
        let en = self.enumerator(s, budget)?;
        let n = self.n;
        let counts = chunks(en.total(), 1 << 14)
            .into_par_iter()
            .map(|(a, b)| {
                let mut local = vec![0u64; n + 1];
                let _ = en.walk(a, b, |_, _, word| {
                    local[word.iter().filter(|x| !x.is_zero()).count()] += 1;
                    ControlFlow::Continue(())
                });
                local
            })
            .reduce(
                || vec![0u64; n + 1],
                |mut x, y| {
                    x.iter_mut().zip(y).for_each(|(a, b)| *a += b);
                    x
                },
            );
        Ok(counts)
    }

    /// Minimum weight over all nonzero codewords, by enumerating them up
    /// to scalars.
    pub fn min_distance_enumerate(&self, s: &HermitianSurface, budget: u128) -> Result<usize> {
        let w = self.class_weights(s, budget)?;
        Ok(w.iter().position(|&c| c > 0).expect("a nonzero code has nonzero words"))
    }

    pub fn weight_distribution(&self, s: &HermitianSurface, budget: u128) -> Result<WeightDistribution> {
        let scale = s.field().order() as u64 - 1;
        let mut counts: Vec<u64> = self.class_weights(s, budget)?.into_iter().map(|c| c * scale).collect();
        counts[0] += 1;
        Ok(WeightDistribution { counts })
    }

    pub fn scalar_classes(&self, s: &HermitianSurface) -> Option<u128> {
        num_classes(s.field().order(), self.k)
    }
}

/// Predicted minimum distance `(q^3+1)(q^2+1) - (d(q^3+q^2-q)+q+1)`.
/// At `d = q + 1` the prediction excludes Hermitian multiples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GeometricDistance {
    pub value: u64,
    pub conditional: bool,
}

pub fn min_distance_geometric(q: u32, d: u32) -> Result<GeometricDistance> {
    if d == 0 || d > q + 1 {
        return Err(Error::OutOfRange { what: "code degree", detail: format!("d = {d}, need 1 <= d <= {}", q + 1) });
    }
    let (q, d64) = (q as u64, d as u64);
    let n = (q * q * q + 1) * (q * q + 1);
    Ok(GeometricDistance { value: n - (d64 * (q * q * q + q * q - q) + q + 1), conditional: d as u64 == q + 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: u16,
    pub d: u32,
    pub n: usize,
    pub k: usize,
    pub d_min_enumerated: Option<usize>,
    pub d_min_geometric: Option<u64>,
    pub geometric_conditional: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_code_q2() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let c = build_code(&s, 1).unwrap();
        assert_eq!((c.n, c.k), (45, 4));
        assert_eq!(c.min_distance_enumerate(&s, DEFAULT_CODEWORD_BUDGET).unwrap(), 32);
        let w = c.weight_distribution(&s, DEFAULT_CODEWORD_BUDGET).unwrap();
        assert_eq!(w.counts.iter().sum::<u64>(), 256);
        assert_eq!(w.counts[32], 45 * 3);
    }

    #[test]
    fn geometric_prediction() {
        assert_eq!(min_distance_geometric(2, 1).unwrap().value, 32);
        assert_eq!(min_distance_geometric(2, 2).unwrap().value, 22);
        assert_eq!(min_distance_geometric(3, 2).unwrap().value, 210);
        assert!(min_distance_geometric(2, 3).unwrap().conditional);
        assert!(min_distance_geometric(2, 4).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let s = HermitianSurface::canonical_for_q(2).unwrap();
        let c = build_code(&s, 2).unwrap();
        assert!(c.min_distance_enumerate(&s, 1000).is_err());
    }
}
