//! Nochka weights by exact linear feasibility.
//!
//! For hyperplanes in N-subgeneral position with q > 2N - k + 1 there exist
//! rational weights omega(1..q) and a constant theta with
//!
//!   (i)   0 < omega(j) <= theta <= 1
//!   (ii)  sum omega(j) = k + 1 + theta (q - 2N + k - 1)
//!   (iii) (k+1)/(2N-k+1) <= theta <= (k+1)/(N+1)
//!   (iv)  sum_{j in R} omega(j) <= d(R)  whenever 0 < #R <= N + 1.
//!
//! Existence is a theorem; this module picks the canonical feasible point
//! (minimal theta, then lexicographically minimal omega) with an exact
//! simplex plus lazy separation of the subset constraints (iv), and
//! re-verifies all four axioms on the way out.

pub mod simplex;

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::position::HyperplaneSet;
use crate::util::{binomial, subsets_up_to, Combinations};
use crate::{rat_i64, Rational};
use simplex::{Constraint, LpOutcome};

/// Rational Nochka weights plus the record of the program that produced
/// them.
#[derive(Clone, Debug, Serialize)]
pub struct NochkaWeights {
    pub omega: Vec<Rational>,
    pub theta: Rational,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub objective: String,
    pub lp_solves: usize,
    pub separation_rounds: usize,
    pub active_subset_constraints: usize,
    pub subsets_scanned: usize,
}

/// One axiom violation with a witness, for `verify_axioms` reports.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub detail: String,
    pub subset: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn nochka_sum_target(q: usize, n: usize, k: usize, theta: &Rational) -> Rational {
    // k + 1 + theta (q - 2N + k - 1)
    rat_i64((k + 1) as i64) + theta * rat_i64(q as i64 - 2 * n as i64 + k as i64 - 1)
}

struct WeightProgram<'a> {
    hs: &'a HyperplaneSet,
    q: usize,
    n: usize,
    k: usize,
    /// base rows over variables (omega_1..omega_q, theta)
    base: Vec<Constraint>,
    /// active subset rows, with the generating subset for provenance
    subset_rows: Vec<(Vec<usize>, Rational)>,
    rank_cache: HashMap<Vec<usize>, usize>,
}

impl<'a> WeightProgram<'a> {
    fn new(hs: &'a HyperplaneSet, n: usize, k: usize) -> Self {
        let q = hs.len();
        let nv = q + 1;
        let theta_col = q;
        let mut base = Vec::new();
        // omega_j <= theta
        for j in 0..q {
            let mut c = vec![Rational::zero(); nv];
            c[j] = Rational::one();
            c[theta_col] = -Rational::one();
            base.push(Constraint::le(c, Rational::zero()));
        }
        // theta window (iii); theta <= 1 follows from (k+1)/(N+1) <= 1
        let mut c = vec![Rational::zero(); nv];
        c[theta_col] = Rational::one();
        base.push(Constraint::le(
            c.clone(),
            Rational::new(((k + 1) as i64).into(), ((n + 1) as i64).into()),
        ));
        base.push(Constraint::ge(
            c,
            Rational::new(((k + 1) as i64).into(), ((2 * n - k + 1) as i64).into()),
        ));
        // equality (ii)
        let mut c = vec![Rational::one(); nv];
        c[theta_col] = -rat_i64(q as i64 - 2 * n as i64 + k as i64 - 1);
        base.push(Constraint::eq(c, rat_i64((k + 1) as i64)));
        WeightProgram {
            hs,
            q,
            n,
            k,
            base,
            subset_rows: Vec::new(),
            rank_cache: HashMap::new(),
        }
    }

    fn d(&mut self, subset: &[usize]) -> Result<usize> {
        if let Some(&d) = self.rank_cache.get(subset) {
            return Ok(d);
        }
        let d = self.hs.span_dimension(subset)?;
        self.rank_cache.insert(subset.to_vec(), d);
        Ok(d)
    }

    fn all_constraints(&self) -> Vec<Constraint> {
        let nv = self.q + 1;
        let mut out = self.base.clone();
        for (subset, d) in &self.subset_rows {
            let mut c = vec![Rational::zero(); nv];
            for &j in subset {
                c[j] = Rational::one();
            }
            out.push(Constraint::le(c, d.clone()));
        }
        out
    }

    /// Lexicographic minimization: theta first, then omega_1, omega_2, ...
    /// Each stage pins the previous optimum with an equality row.
    fn lex_minimize(&self, lp_solves: &mut usize) -> Result<(Vec<Rational>, Rational)> {
        let nv = self.q + 1;
        let theta_col = self.q;
        let mut cons = self.all_constraints();
        let order: Vec<usize> = std::iter::once(theta_col).chain(0..self.q - 1).collect();
        let mut fixed: Vec<(usize, Rational)> = Vec::new();
        for var in order {
            let mut obj = vec![Rational::zero(); nv];
            obj[var] = Rational::one();
            *lp_solves += 1;
            match simplex::minimize(nv, &cons, &obj) {
                LpOutcome::Optimal { value, .. } => {
                    let mut row = vec![Rational::zero(); nv];
                    row[var] = Rational::one();
                    cons.push(Constraint::eq(row, value.clone()));
                    fixed.push((var, value));
                }
                LpOutcome::Infeasible => {
                    return Err(Error::Infeasible {
                        detail: "weight program infeasible; this signals a position-check bug"
                            .to_string(),
                    })
                }
                LpOutcome::Unbounded => {
                    return Err(Error::InternalAssertion {
                        what: "weight program is bounded by construction".to_string(),
                    })
                }
            }
        }
        // one final solve to read the full vertex (omega_q is pinned by (ii))
        let mut obj = vec![Rational::zero(); nv];
        obj[self.q - 1] = Rational::one();
        *lp_solves += 1;
        match simplex::minimize(nv, &cons, &obj) {
            LpOutcome::Optimal { x, .. } => {
                let theta = x[theta_col].clone();
                Ok((x[..self.q].to_vec(), theta))
            }
            _ => Err(Error::InternalAssertion {
                what: "pinned weight program must stay feasible".to_string(),
            }),
        }
    }

    /// Scans every subset with 0 < #R <= N+1 and returns the rows violated
    /// by (omega, theta), most violated first.
    fn violated_subsets(
        &mut self,
        omega: &[Rational],
        cap: u128,
        scanned: &mut usize,
    ) -> Result<Vec<(Vec<usize>, Rational)>> {
        let max_size = (self.n + 1).min(self.q);
        let mut total: u128 = 0;
        for s in 1..=max_size {
            total = total.saturating_add(binomial(self.q, s));
        }
        if total > cap {
            return Err(Error::SubsetCapExceeded {
                combinations: total,
                cap,
            });
        }
        let mut violated = Vec::new();
        for subset in subsets_up_to(self.q, max_size) {
            *scanned += 1;
            let sum: Rational = subset.iter().map(|&j| omega[j].clone()).sum();
            let d = rat_i64(self.d(&subset)? as i64);
            if sum > d {
                let excess = &sum - &d;
                violated.push((subset, d, excess));
            }
        }
        violated.sort_by(|a, b| b.2.cmp(&a.2));
        Ok(violated
            .into_iter()
            .take(64)
            .map(|(s, d, _)| (s, d))
            .collect())
    }
}

/// Computes the canonical Nochka weights for an N-subgeneral configuration.
pub fn compute_weights(
    hs: &HyperplaneSet,
    n: usize,
    k: usize,
    cap: u128,
) -> Result<NochkaWeights> {
    let q = hs.len();
    if 2 * n < k {
        return Err(Error::InvalidInput {
            detail: format!("need N >= k >= 1, got N = {n}, k = {k}"),
        });
    }
    let bound = 2 * n - k + 1;
    if q <= bound {
        return Err(Error::NochkaHypothesis { q, bound });
    }
    if !hs.is_n_subgeneral(n, k, cap)? {
        return Err(Error::NotSubgeneral { n, k });
    }

    let mut prog = WeightProgram::new(hs, n, k);
    let mut lp_solves = 0usize;
    let mut rounds = 0usize;
    let mut scanned = 0usize;
    let (omega, theta) = loop {
        rounds += 1;
        if rounds > 10_000 {
            return Err(Error::InternalAssertion {
                what: "subset-constraint separation failed to converge".to_string(),
            });
        }
        let (omega, theta) = prog.lex_minimize(&mut lp_solves)?;
        let violated = prog.violated_subsets(&omega, cap, &mut scanned)?;
        if violated.is_empty() {
            break (omega, theta);
        }
        prog.subset_rows.extend(violated);
    };

    let weights = NochkaWeights {
        omega,
        theta,
        provenance: Provenance {
            objective: "minimize theta, then lexicographically minimize omega".to_string(),
            lp_solves,
            separation_rounds: rounds,
            active_subset_constraints: prog.subset_rows.len(),
            subsets_scanned: scanned,
        },
    };

    // the canonical point must satisfy all axioms, including strictness of
    // omega > 0, which the LP closure cannot express
    let report = verify_axioms(&weights, hs, n, k, cap)?;
    if !report.all_pass() {
        return Err(Error::InternalAssertion {
            what: format!(
                "computed weights violate the axioms: {:?}",
                report.violations
            ),
        });
    }
    Ok(weights)
}

/// Exact re-verification of axioms (i)-(iv) for arbitrary weights.
pub fn verify_axioms(
    w: &NochkaWeights,
    hs: &HyperplaneSet,
    n: usize,
    k: usize,
    cap: u128,
) -> Result<AxiomReport> {
    let q = hs.len();
    if w.omega.len() != q {
        return Err(Error::DimensionMismatch {
            expected: q,
            got: w.omega.len(),
        });
    }
    let mut violations = Vec::new();
    // (i) 0 < omega(j) <= theta <= 1
    for (j, om) in w.omega.iter().enumerate() {
        if !om.is_positive() {
            violations.push(AxiomViolation {
                axiom: "(i)",
                detail: format!("omega({}) = {} is not positive", j + 1, om),
                subset: Some(vec![j]),
            });
        }
        if om > &w.theta {
            violations.push(AxiomViolation {
                axiom: "(i)",
                detail: format!("omega({}) = {} exceeds theta = {}", j + 1, om, w.theta),
                subset: Some(vec![j]),
            });
        }
    }
    if w.theta > Rational::one() {
        violations.push(AxiomViolation {
            axiom: "(i)",
            detail: format!("theta = {} exceeds 1", w.theta),
            subset: None,
        });
    }
    // (ii)
    let sum: Rational = w.omega.iter().cloned().sum();
    let target = nochka_sum_target(q, n, k, &w.theta);
    if sum != target {
        violations.push(AxiomViolation {
            axiom: "(ii)",
            detail: format!("sum omega = {sum}, required {target}"),
            subset: None,
        });
    }
    // (iii)
    let lo = Rational::new(((k + 1) as i64).into(), ((2 * n - k + 1) as i64).into());
    let hi = Rational::new(((k + 1) as i64).into(), ((n + 1) as i64).into());
    if w.theta < lo || w.theta > hi {
        violations.push(AxiomViolation {
            axiom: "(iii)",
            detail: format!("theta = {} outside [{lo}, {hi}]", w.theta),
            subset: None,
        });
    }
    // (iv)
    let max_size = (n + 1).min(q);
    let mut total: u128 = 0;
    for s in 1..=max_size {
        total = total.saturating_add(binomial(q, s));
    }
    if total > cap {
        return Err(Error::SubsetCapExceeded {
            combinations: total,
            cap,
        });
    }
    for subset in subsets_up_to(q, max_size) {
        let sum: Rational = subset.iter().map(|&j| w.omega[j].clone()).sum();
        let d = hs.span_dimension(&subset)?;
        if sum > rat_i64(d as i64) {
            violations.push(AxiomViolation {
                axiom: "(iv)",
                detail: format!("sum over R = {sum} exceeds d(R) = {d}"),
                subset: Some(subset),
            });
        }
    }
    Ok(AxiomReport { violations })
}

/// Brute-force check of the weighted product inequality: for R with
/// 0 < #R <= N+1 and reals E_j >= 1 there is R' inside R with
/// #R' = d(R) = d(R') and prod_{R} E_j^{omega(j)} <= prod_{R'} E_j.
///
/// Exact comparison: both sides are raised to the common denominator of the
/// omega exponents. Returns the first satisfying R' in lexicographic order,
/// or (false, None) when the search fails — a finding, not a panic.
pub fn product_inequality_check(
    w: &NochkaWeights,
    hs: &HyperplaneSet,
    r_set: &[usize],
    e: &[Rational],
) -> Result<(bool, Option<Vec<usize>>)> {
    if r_set.is_empty() {
        return Err(Error::EmptySubset);
    }
    if e.len() != hs.len() || w.omega.len() != hs.len() {
        return Err(Error::DimensionMismatch {
            expected: hs.len(),
            got: e.len(),
        });
    }
    for &j in r_set {
        if j >= hs.len() {
            return Err(Error::IndexOutOfRange {
                index: j,
                len: hs.len(),
            });
        }
        if e[j] < Rational::one() {
            return Err(Error::InvalidInput {
                detail: format!("E_{} = {} must be >= 1", j + 1, e[j]),
            });
        }
    }
    let d = hs.span_dimension(r_set)?;

    // common denominator of the omega over R
    let mut denom = num_bigint::BigInt::from(1);
    for &j in r_set {
        denom = num_integer::lcm(denom, w.omega[j].denom().clone());
    }
    // lhs^denom = prod E_j^(omega_j * denom)
    let mut lhs_pow = Rational::one();
    for &j in r_set {
        let exp = (&w.omega[j] * Rational::from_integer(denom.clone()))
            .to_integer();
        let exp: i32 = exp.try_into().map_err(|_| Error::InvalidInput {
            detail: "omega exponent too large for exact powering".to_string(),
        })?;
        lhs_pow *= e[j].pow(exp);
    }
    let denom_i32: i32 = denom.clone().try_into().map_err(|_| Error::InvalidInput {
        detail: "weight denominator too large for exact powering".to_string(),
    })?;

    for positions in Combinations::new(r_set.len(), d) {
        let candidate: Vec<usize> = positions.iter().map(|&p| r_set[p]).collect();
        if hs.span_dimension(&candidate)? != d {
            continue;
        }
        let mut rhs = Rational::one();
        for &j in &candidate {
            rhs *= e[j].clone();
        }
        if lhs_pow <= rhs.pow(denom_i32) {
            return Ok((true, Some(candidate)));
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::position::Hyperplane;
    use crate::{rat, Gaussian, DEFAULT_SUBSET_CAP};

    fn h(coeffs: &[i64]) -> Hyperplane {
        Hyperplane::new(
            format!("{coeffs:?}"),
            coeffs.iter().map(|&c| Gaussian::from_int(c)).collect(),
        )
        .unwrap()
    }

    fn paired_points() -> HyperplaneSet {
        HyperplaneSet::new(vec![
            h(&[1, 0]),
            h(&[1, 0]),
            h(&[0, 1]),
            h(&[0, 1]),
            h(&[1, 1]),
            h(&[1, 1]),
        ])
        .unwrap()
    }

    #[test]
    fn general_position_gives_unit_weights() {
        // 5 distinct points in P^1, N = k = 1, q = 5 > 2
        let hs = HyperplaneSet::new(vec![
            h(&[1, 0]),
            h(&[0, 1]),
            h(&[1, 1]),
            h(&[1, -1]),
            h(&[1, 2]),
        ])
        .unwrap();
        let w = compute_weights(&hs, 1, 1, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(w.theta, rat_i64(1));
        assert!(w.omega.iter().all(|o| *o == rat_i64(1)));
    }

    #[test]
    fn paired_points_half_weights() {
        let hs = paired_points();
        let w = compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        assert_eq!(w.theta, rat(1, 2));
        assert!(w.omega.iter().all(|o| *o == rat(1, 2)));
        assert!(verify_axioms(&w, &hs, 2, 1, DEFAULT_SUBSET_CAP)
            .unwrap()
            .all_pass());
    }

    #[test]
    fn hypothesis_violation_rejected() {
        // q = 2N - k + 1 exactly
        let hs = HyperplaneSet::new(vec![h(&[1, 0]), h(&[0, 1]), h(&[1, 1]), h(&[1, -1])])
            .unwrap();
        assert!(matches!(
            compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP),
            Err(Error::NochkaHypothesis { q: 4, bound: 4 })
        ));
    }

    #[test]
    fn theta_minimality_paired_points() {
        // re-solving with theta forced below 1/2 must be infeasible
        let hs = paired_points();
        let mut prog = WeightProgram::new(&hs, 2, 1);
        // add all subset constraints up front
        let mut scanned = 0usize;
        let violated = prog
            .violated_subsets(&vec![Rational::one(); 6], DEFAULT_SUBSET_CAP, &mut scanned)
            .unwrap();
        prog.subset_rows.extend(violated);
        let mut cons = prog.all_constraints();
        let mut row = vec![Rational::zero(); 7];
        row[6] = Rational::one();
        cons.push(Constraint::le(row, rat(1, 2) - rat(1, 1000)));
        let out = simplex::minimize(7, &cons, &vec![Rational::zero(); 7]);
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn axiom_violations_reported() {
        let hs = paired_points();
        let mut w = compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        // bump omega(1) above theta
        w.omega[0] = &w.theta + rat_i64(1);
        let report = verify_axioms(&w, &hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "(i)" && v.detail.contains("exceeds theta")));
        // (ii) breaks too since the sum changed
        assert!(report.violations.iter().any(|v| v.axiom == "(ii)"));

        // theta outside the window
        let mut w2 = compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        w2.theta = rat(1, 100);
        let report = verify_axioms(&w2, &hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        assert!(report.violations.iter().any(|v| v.axiom == "(iii)"));
    }

    #[test]
    fn product_inequality_paired_example() {
        let hs = paired_points();
        let w = compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        // R = {0, 1}: duplicated direction, d(R) = 1, E = (4, 9) on those
        let mut e = vec![Rational::one(); 6];
        e[0] = rat_i64(4);
        e[1] = rat_i64(9);
        let (holds, witness) = product_inequality_check(&w, &hs, &[0, 1], &e).unwrap();
        assert!(holds);
        // lhs = 2 * 3 = 6 > 4, so {0} fails and lex-first witness is {1}
        assert_eq!(witness, Some(vec![1]));
    }

    #[test]
    fn product_inequality_trivial_cases() {
        let hs = paired_points();
        let w = compute_weights(&hs, 2, 1, DEFAULT_SUBSET_CAP).unwrap();
        let e = vec![Rational::one(); 6];
        let (holds, witness) = product_inequality_check(&w, &hs, &[0, 2, 4], &e).unwrap();
        assert!(holds);
        assert!(witness.is_some());
        assert!(matches!(
            product_inequality_check(&w, &hs, &[], &e),
            Err(Error::EmptySubset)
        ));
        let mut bad = e.clone();
        bad[0] = rat(1, 2);
        assert!(product_inequality_check(&w, &hs, &[0], &bad).is_err());
    }

    #[test]
    fn degenerate_flat_forces_asymmetric_weights() {
        // e1 doubled in P^2 with six generic directions: theta_min rises
        // above (k+1)/(2N-k+1) and the lex stage differentiates omegas.
        let hs = HyperplaneSet::new(vec![
            h(&[1, 0, 0]),
            h(&[1, 0, 0]),
            h(&[0, 1, 0]),
            h(&[0, 0, 1]),
            h(&[1, 1, 1]),
            h(&[1, 2, 3]),
            h(&[1, 4, 9]),
            h(&[1, 8, 27]),
        ])
        .unwrap();
        // N = 3, k = 2: every 4-subset must span; two copies of e1 allowed
        assert!(hs.is_n_subgeneral(3, 2, DEFAULT_SUBSET_CAP).unwrap());
        let w = compute_weights(&hs, 3, 2, DEFAULT_SUBSET_CAP).unwrap();
        assert!(verify_axioms(&w, &hs, 3, 2, DEFAULT_SUBSET_CAP)
            .unwrap()
            .all_pass());
        // the doubled flat {0,1} pins omega_0 + omega_1 <= 1
        assert!(&w.omega[0] + &w.omega[1] <= rat_i64(1));
        // theta must exceed the unconstrained lower endpoint 3/5
        assert!(w.theta > rat(3, 5));
    }
}
