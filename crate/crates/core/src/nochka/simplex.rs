//! Dense two-phase primal simplex over exact rationals, with Bland's rule.
//!
//! Desk-scale only: the weight programs have about a dozen structural
//! variables and a few dozen active rows, so a dense exact tableau is the
//! simplest thing that is provably correct. No floating point anywhere.

use num_traits::{One, Signed, Zero};

use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rel {
    Le,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Rel,
    pub rhs: Rational,
}

impl Constraint {
    pub fn le(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Le,
            rhs,
        }
    }
    pub fn eq(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        }
    }
    /// coeffs . x >= rhs, stored as -coeffs . x <= -rhs.
    pub fn ge(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Constraint {
            coeffs: coeffs.into_iter().map(|c| -c).collect(),
            rel: Rel::Le,
            rhs: -rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

/// Minimizes objective . x over { x >= 0 : constraints }.
pub fn minimize(n: usize, constraints: &[Constraint], objective: &[Rational]) -> LpOutcome {
    assert_eq!(objective.len(), n);
    let m = constraints.len();

    // column layout: structural | slacks | artificials | rhs
    let n_slack = constraints.iter().filter(|c| c.rel == Rel::Le).count();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut slack_idx = 0usize;
    let mut artificials: Vec<usize> = Vec::new();
    let mut basis: Vec<usize> = Vec::with_capacity(m);

    // first pass: count artificials to size the rows
    let mut needs_artificial = vec![false; m];
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n);
        match c.rel {
            Rel::Le => {
                if c.rhs.is_negative() {
                    needs_artificial[i] = true;
                }
            }
            Rel::Eq => needs_artificial[i] = true,
        }
    }
    let n_art = needs_artificial.iter().filter(|b| **b).count();
    let ncols = n + n_slack + n_art;
    let mut art_idx = n + n_slack;

    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols + 1];
        let negate = c.rhs.is_negative();
        for (j, a) in c.coeffs.iter().enumerate() {
            row[j] = if negate { -a.clone() } else { a.clone() };
        }
        row[ncols] = if negate { -c.rhs.clone() } else { c.rhs.clone() };
        match c.rel {
            Rel::Le => {
                let s = n + slack_idx;
                slack_idx += 1;
                row[s] = if negate {
                    -Rational::one() // surplus
                } else {
                    Rational::one()
                };
                if negate {
                    row[art_idx] = Rational::one();
                    artificials.push(art_idx);
                    basis.push(art_idx);
                    art_idx += 1;
                } else {
                    basis.push(s);
                }
            }
            Rel::Eq => {
                row[art_idx] = Rational::one();
                artificials.push(art_idx);
                basis.push(art_idx);
                art_idx += 1;
            }
        }
        rows.push(row);
    }

    let is_artificial = |j: usize| j >= n + n_slack;

    // phase 1: minimize the sum of artificials
    let mut cost1 = vec![Rational::zero(); ncols];
    for &a in &artificials {
        cost1[a] = Rational::one();
    }
    if simplex_iterate(&mut rows, &mut basis, &cost1, &|_| true) == IterOutcome::Unbounded {
        unreachable!("phase 1 objective is bounded below by zero");
    }
    let phase1_value: Rational = basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| is_artificial(b))
        .map(|(i, _)| rows[i][ncols].clone())
        .sum();
    if !phase1_value.is_zero() {
        return LpOutcome::Infeasible;
    }

    // drive leftover artificials out of the basis (or drop redundant rows)
    let mut i = 0;
    while i < basis.len() {
        if is_artificial(basis[i]) {
            if let Some(j) = (0..n + n_slack).find(|&j| !rows[i][j].is_zero()) {
                pivot(&mut rows, &mut basis, i, j);
            } else {
                rows.remove(i);
                basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // phase 2: artificial columns are banned
    let mut cost2 = vec![Rational::zero(); ncols];
    cost2[..n].clone_from_slice(objective);
    let allowed = |j: usize| !is_artificial(j);
    match simplex_iterate(&mut rows, &mut basis, &cost2, &allowed) {
        IterOutcome::Unbounded => LpOutcome::Unbounded,
        IterOutcome::Optimal => {
            let mut x = vec![Rational::zero(); n];
            for (i, &b) in basis.iter().enumerate() {
                if b < n {
                    x[b] = rows[i].last().unwrap().clone();
                }
            }
            let value = objective
                .iter()
                .zip(x.iter())
                .map(|(c, v)| c * v)
                .sum();
            LpOutcome::Optimal { x, value }
        }
    }
}

#[derive(PartialEq, Eq)]
enum IterOutcome {
    Optimal,
    Unbounded,
}

fn pivot(rows: &mut [Vec<Rational>], basis: &mut [usize], pr: usize, pc: usize) {
    let inv = {
        let pv = &rows[pr][pc];
        assert!(!pv.is_zero());
        Rational::one() / pv.clone()
    };
    for v in rows[pr].iter_mut() {
        *v = &*v * &inv;
    }
    let pivot_row = rows[pr].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == pr || row[pc].is_zero() {
            continue;
        }
        let factor = row[pc].clone();
        for (v, p) in row.iter_mut().zip(pivot_row.iter()) {
            *v = &*v - &(&factor * p);
        }
    }
    basis[pr] = pc;
}

/// Runs simplex pivots to optimality of `cost` with Bland's rule. The
/// `allowed` predicate restricts entering columns.
fn simplex_iterate(
    rows: &mut Vec<Vec<Rational>>,
    basis: &mut Vec<usize>,
    cost: &[Rational],
    allowed: &dyn Fn(usize) -> bool,
) -> IterOutcome {
    let ncols = cost.len();
    loop {
        // reduced costs r_j = c_j - c_B . column_j, recomputed exactly
        let mut entering: Option<usize> = None;
        for j in 0..ncols {
            if !allowed(j) || basis.contains(&j) {
                continue;
            }
            let mut r = cost[j].clone();
            for (i, &b) in basis.iter().enumerate() {
                if !cost[b].is_zero() && !rows[i][j].is_zero() {
                    r -= &cost[b] * &rows[i][j];
                }
            }
            if r.is_negative() {
                entering = Some(j);
                break; // Bland: smallest improving index
            }
        }
        let Some(j) = entering else {
            return IterOutcome::Optimal;
        };

        // ratio test with Bland tie-breaking on the basic variable index
        let mut best: Option<(Rational, usize)> = None;
        for i in 0..rows.len() {
            let a = &rows[i][j];
            if a.is_positive() {
                let ratio = rows[i].last().unwrap() / a;
                match &best {
                    None => best = Some((ratio, i)),
                    Some((r0, i0)) => {
                        if ratio < *r0 || (ratio == *r0 && basis[i] < basis[*i0]) {
                            best = Some((ratio, i));
                        }
                    }
                }
            }
        }
        let Some((_, pr)) = best else {
            return IterOutcome::Unbounded;
        };
        pivot(rows, basis, pr, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_i64};

    fn v(vals: &[i64]) -> Vec<Rational> {
        vals.iter().map(|&x| rat_i64(x)).collect()
    }

    #[test]
    fn simple_bounded_min() {
        // min -x st x <= 3  ->  x = 3, value -3
        let out = minimize(1, &[Constraint::le(v(&[1]), rat_i64(3))], &v(&[-1]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![rat_i64(3)],
                value: rat_i64(-3)
            }
        );
    }

    #[test]
    fn equality_and_bounds() {
        // min x1 st x1 + x2 = 5, x2 <= 2  ->  x1 = 3
        let out = minimize(
            2,
            &[
                Constraint::eq(v(&[1, 1]), rat_i64(5)),
                Constraint::le(v(&[0, 1]), rat_i64(2)),
            ],
            &v(&[1, 0]),
        );
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(x, vec![rat_i64(3), rat_i64(2)]);
                assert_eq!(value, rat_i64(3));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        // x <= -1 with x >= 0
        let out = minimize(1, &[Constraint::le(v(&[1]), rat_i64(-1))], &v(&[0]));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        // min -x st -x <= 1 (x free upward)
        let out = minimize(1, &[Constraint::le(v(&[-1]), rat_i64(1))], &v(&[-1]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn ge_helper_and_fractions() {
        // min x st x >= 2/3
        let out = minimize(1, &[Constraint::ge(v(&[1]), rat(2, 3))], &v(&[1]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                x: vec![rat(2, 3)],
                value: rat(2, 3)
            }
        );
    }

    #[test]
    fn degenerate_vertex_terminates() {
        // multiple ties at the optimum; Bland must terminate
        let cons = vec![
            Constraint::le(v(&[1, 1]), rat_i64(1)),
            Constraint::le(v(&[1, 0]), rat_i64(1)),
            Constraint::le(v(&[0, 1]), rat_i64(1)),
            Constraint::le(v(&[1, -1]), rat_i64(0)),
            Constraint::le(v(&[-1, 1]), rat_i64(0)),
        ];
        let out = minimize(2, &cons, &v(&[-1, -1]));
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, rat_i64(-1));
                assert_eq!(&x[0] + &x[1], rat_i64(1));
            }
            other => panic!("unexpected outcome {other:?}"),
        }
    }
}
