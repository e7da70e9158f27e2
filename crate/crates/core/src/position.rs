//! Hyperplane configurations in projective space: subset span dimensions
//! d(R), N-subgeneral and general position predicates, and the minimal N.
//!
//! Coefficients stay unnormalized and exact; the unit-norm scaling used by
//! the analytic side is irrational over the Gaussian rationals and only
//! matters for float evaluation, never for ranks or zero orders.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::linalg;
use crate::util::{binomial, Combinations};
use crate::{Gaussian, DEFAULT_SUBSET_CAP};

/// A hyperplane given by its coefficient vector A = (c_0, .., c_{m-1});
/// the pairing against a curve conjugates the coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperplane {
    #[serde(default)]
    pub label: String,
    pub coeffs: Vec<Gaussian>,
}

impl Hyperplane {
    pub fn new(label: impl Into<String>, coeffs: Vec<Gaussian>) -> Result<Self> {
        let label = label.into();
        if coeffs.iter().all(Gaussian::is_zero) {
            return Err(Error::HyperplaneZero { label });
        }
        Ok(Hyperplane { label, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// q hyperplanes with a uniform coefficient length m.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperplaneSet {
    hyperplanes: Vec<Hyperplane>,
    m: usize,
}

impl HyperplaneSet {
    pub fn new(hyperplanes: Vec<Hyperplane>) -> Result<Self> {
        let Some(first) = hyperplanes.first() else {
            return Err(Error::InvalidInput {
                detail: "need at least one hyperplane".to_string(),
            });
        };
        let m = first.dim();
        if m == 0 {
            return Err(Error::InvalidInput {
                detail: "hyperplane coefficient vectors must be nonempty".to_string(),
            });
        }
        for h in &hyperplanes {
            if h.dim() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: h.dim(),
                });
            }
        }
        Ok(HyperplaneSet { hyperplanes, m })
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    /// Ambient coefficient length m (the hyperplanes live in P^{m-1}).
    pub fn ambient_dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, j: usize) -> &Hyperplane {
        &self.hyperplanes[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperplane> {
        self.hyperplanes.iter()
    }

    pub fn subset(&self, indices: &[usize]) -> Result<HyperplaneSet> {
        let mut picked = Vec::with_capacity(indices.len());
        for &j in indices {
            if j >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: self.len(),
                });
            }
            picked.push(self.hyperplanes[j].clone());
        }
        HyperplaneSet::new(picked)
    }

    /// d(R): exact dimension of the span of {A_j : j in R}.
    pub fn span_dimension(&self, subset: &[usize]) -> Result<usize> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut rows = Vec::with_capacity(subset.len());
        for &j in subset {
            if j >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: self.len(),
                });
            }
            rows.push(self.hyperplanes[j].coeffs.clone());
        }
        Ok(linalg::rank(&rows))
    }

    /// True iff every subset of size N+1 spans dimension k+1. Larger subsets
    /// are redundant by monotonicity of the span.
    pub fn is_n_subgeneral(&self, n: usize, k: usize, cap: u128) -> Result<bool> {
        if k < 1 || n < k {
            return Err(Error::InvalidInput {
                detail: format!("need N >= k >= 1, got N = {n}, k = {k}"),
            });
        }
        let q = self.len();
        if q < n + 1 {
            return Err(Error::InvalidInput {
                detail: format!("need q >= N+1 hyperplanes, got q = {q}, N = {n}"),
            });
        }
        let count = binomial(q, n + 1);
        if count > cap {
            return Err(Error::SubsetCapExceeded {
                combinations: count,
                cap,
            });
        }
        for subset in Combinations::new(q, n + 1) {
            if self.span_dimension(&subset)? != k + 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_general_position(&self, k: usize, cap: u128) -> Result<bool> {
        self.is_n_subgeneral(k, k, cap)
    }

    /// Least N >= k such that the set is N-subgeneral. Errors when the full
    /// set does not span dimension k+1 (the caller must reduce k).
    pub fn minimal_subgeneral_n(&self, k: usize, cap: u128) -> Result<usize> {
        let q = self.len();
        let full: Vec<usize> = (0..q).collect();
        let span = self.span_dimension(&full)?;
        if span != k + 1 {
            return Err(Error::SpanDeficient {
                span,
                need: k + 1,
            });
        }
        for n in k..q {
            if self.is_n_subgeneral(n, k, cap)? {
                return Ok(n);
            }
        }
        // n = q-1 always succeeds because the full set spans
        unreachable!("is_n_subgeneral(q-1) must hold when the full set spans");
    }
}

/// Convenience for the default enumeration cap.
pub fn default_cap() -> u128 {
    DEFAULT_SUBSET_CAP
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(label: &str, coeffs: &[i64]) -> Hyperplane {
        Hyperplane::new(
            label,
            coeffs.iter().map(|&c| Gaussian::from_int(c)).collect(),
        )
        .unwrap()
    }

    fn paired_points() -> HyperplaneSet {
        HyperplaneSet::new(vec![
            h("a1", &[1, 0]),
            h("a2", &[1, 0]),
            h("b1", &[0, 1]),
            h("b2", &[0, 1]),
            h("c1", &[1, 1]),
            h("c2", &[1, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn span_dimension_examples() {
        let hs = HyperplaneSet::new(vec![
            h("x", &[1, 0, 0]),
            h("y", &[0, 1, 0]),
            h("x2", &[1, 0, 0]),
        ])
        .unwrap();
        assert_eq!(hs.span_dimension(&[0, 1]).unwrap(), 2);
        assert_eq!(hs.span_dimension(&[0, 2]).unwrap(), 1);
        assert!(matches!(hs.span_dimension(&[]), Err(Error::EmptySubset)));

        let plane = HyperplaneSet::new(vec![h("a", &[1, 0]), h("b", &[0, 1]), h("c", &[1, 1])])
            .unwrap();
        assert_eq!(plane.span_dimension(&[0, 1, 2]).unwrap(), 2);
    }

    #[test]
    fn subgeneral_paired_points() {
        let hs = paired_points();
        assert!(hs.is_n_subgeneral(2, 1, DEFAULT_SUBSET_CAP).unwrap());
        assert!(!hs.is_n_subgeneral(1, 1, DEFAULT_SUBSET_CAP).unwrap());
        assert_eq!(hs.minimal_subgeneral_n(1, DEFAULT_SUBSET_CAP).unwrap(), 2);
    }

    #[test]
    fn general_position_examples() {
        let hs = HyperplaneSet::new(vec![
            h("x", &[1, 0, 0]),
            h("y", &[0, 1, 0]),
            h("z", &[0, 0, 1]),
            h("w", &[1, 1, 1]),
        ])
        .unwrap();
        assert!(hs.is_general_position(2, DEFAULT_SUBSET_CAP).unwrap());
        assert_eq!(hs.minimal_subgeneral_n(2, DEFAULT_SUBSET_CAP).unwrap(), 2);

        let dup = HyperplaneSet::new(vec![
            h("x", &[1, 0, 0]),
            h("x2", &[1, 0, 0]),
            h("y", &[0, 1, 0]),
            h("z", &[0, 0, 1]),
        ])
        .unwrap();
        assert!(!dup.is_general_position(2, DEFAULT_SUBSET_CAP).unwrap());
    }

    #[test]
    fn triple_duplicate_needs_n_three() {
        let hs = HyperplaneSet::new(vec![
            h("a", &[1, 0]),
            h("a2", &[1, 0]),
            h("a3", &[1, 0]),
            h("b", &[0, 1]),
            h("c", &[1, 1]),
        ])
        .unwrap();
        assert_eq!(hs.minimal_subgeneral_n(1, DEFAULT_SUBSET_CAP).unwrap(), 3);
    }

    #[test]
    fn span_deficient_detected() {
        let hs = HyperplaneSet::new(vec![h("a", &[1, 0, 0]), h("b", &[0, 1, 0])]).unwrap();
        assert!(matches!(
            hs.minimal_subgeneral_n(2, DEFAULT_SUBSET_CAP),
            Err(Error::SpanDeficient { span: 2, need: 3 })
        ));
    }

    #[test]
    fn scaling_invariance_of_rank() {
        let mut v = vec![h("a", &[2, 4]), h("b", &[0, 1]), h("c", &[3, 3])];
        let hs1 = HyperplaneSet::new(v.clone()).unwrap();
        // scale first hyperplane by (1+i)
        let s = Gaussian::new(crate::rat_i64(1), crate::rat_i64(1));
        v[0].coeffs = v[0].coeffs.iter().map(|c| c * &s).collect();
        let hs2 = HyperplaneSet::new(v).unwrap();
        for subset in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            assert_eq!(
                hs1.span_dimension(&subset).unwrap(),
                hs2.span_dimension(&subset).unwrap()
            );
        }
    }

    #[test]
    fn cap_enforced() {
        let many: Vec<Hyperplane> = (0..30).map(|i| h(&format!("h{i}"), &[1, i])).collect();
        let hs = HyperplaneSet::new(many).unwrap();
        assert!(matches!(
            hs.is_n_subgeneral(15, 1, 1000),
            Err(Error::SubsetCapExceeded { .. })
        ));
    }
}
