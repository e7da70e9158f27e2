//! Wronskian ladders, contracted Wronskians, the selected nonvanishing
//! components psi_{jp}, contact functions, and degeneracy detection for
//! reduced representations of holomorphic curves.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactnum::{gcd, linalg, rational_to_f64};
use crate::position::{Hyperplane, HyperplaneSet};
use crate::util::Combinations;
use crate::{Complex64, ExactPoly, Gaussian};

/// Reduced representation (f_0 : ... : f_k) of a holomorphic curve: not all
/// components zero, and the component gcd is a unit (monomials allowed).
#[derive(Clone, Debug, PartialEq)]
pub struct CurveRep {
    components: Vec<ExactPoly>,
}

impl CurveRep {
    pub fn new(components: Vec<ExactPoly>) -> Result<Self> {
        if components.is_empty() || components.iter().all(ExactPoly::is_zero) {
            return Err(Error::AllZero);
        }
        let mut g = ExactPoly::zero();
        for c in &components {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, c)?;
        }
        if !g.is_constant() {
            return Err(Error::NotReduced {
                factor: g.to_string(),
            });
        }
        Ok(CurveRep { components })
    }

    pub fn components(&self) -> &[ExactPoly] {
        &self.components
    }

    /// k: the curve lives in P^k.
    pub fn k(&self) -> usize {
        self.components.len() - 1
    }

    /// Row matrix of coefficients over the joint exponent support.
    pub fn coefficient_matrix(&self) -> Vec<Vec<Gaussian>> {
        let mut exps: Vec<i64> = Vec::new();
        for c in &self.components {
            for (e, _) in c.terms() {
                if !exps.contains(&e) {
                    exps.push(e);
                }
            }
        }
        exps.sort_unstable();
        self.components
            .iter()
            .map(|c| exps.iter().map(|&e| c.coeff(e)).collect())
            .collect()
    }

    /// Derivative table: rows l = 0..=max_order, entry [l][i] = f_i^(l).
    fn derivative_table(&self, max_order: usize) -> Vec<Vec<ExactPoly>> {
        let mut rows = vec![self.components.clone()];
        for _ in 0..max_order {
            let prev = rows.last().unwrap();
            rows.push(prev.iter().map(ExactPoly::derivative).collect());
        }
        rows
    }

    /// Squared euclidean norm |F|^2(z) of the component vector at a point.
    pub fn norm_sqr_at(&self, z: Complex64) -> Result<f64> {
        let mut acc = 0.0;
        for c in &self.components {
            acc += c.eval_complex(z)?.norm_sqr();
        }
        Ok(acc)
    }
}

/// Exact Wronskian determinant W(f_0, .., f_p): rows are derivative orders,
/// columns are the functions in the given order.
pub fn wronskian(fs: &[ExactPoly]) -> Result<ExactPoly> {
    if fs.is_empty() {
        return Err(Error::EmptySubset);
    }
    let n = fs.len();
    let mut rows: Vec<Vec<ExactPoly>> = vec![fs.to_vec()];
    for _ in 1..n {
        let prev = rows.last().unwrap();
        rows.push(prev.iter().map(ExactPoly::derivative).collect());
    }
    Ok(determinant(&rows))
}

fn determinant(m: &[Vec<ExactPoly>]) -> ExactPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let cols: Vec<usize> = (0..n).collect();
    det_expand(m, 0, &cols)
}

fn det_expand(m: &[Vec<ExactPoly>], row: usize, cols: &[usize]) -> ExactPoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = ExactPoly::zero();
    for (pos, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&cc| cc != c)
            .collect();
        let minor = det_expand(m, row + 1, &rest);
        let term = &m[row][c] * &minor;
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// All Wronskian minors, level by level: level p holds W(f_{i_0},..,f_{i_p})
/// for every i_0 < .. < i_p, in lexicographic index order.
#[derive(Clone, Debug)]
pub struct WronskianLadder {
    levels: Vec<Vec<(Vec<usize>, ExactPoly)>>,
}

impl WronskianLadder {
    pub fn level(&self, p: usize) -> &[(Vec<usize>, ExactPoly)] {
        &self.levels[p]
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    /// The full Wronskian W(f_0, .., f_k).
    pub fn top(&self) -> &ExactPoly {
        &self.levels.last().unwrap()[0].1
    }

    /// |F_p|^2(z) = sum over minors at level p of |W|^2.
    pub fn norm_sqr_at(&self, p: usize, z: Complex64) -> Result<f64> {
        let mut acc = 0.0;
        for (_, w) in &self.levels[p] {
            acc += w.eval_complex(z)?.norm_sqr();
        }
        Ok(acc)
    }
}

/// Computes every minor at every level 0..=k.
pub fn ladder(curve: &CurveRep) -> Result<WronskianLadder> {
    let k = curve.k();
    let table = curve.derivative_table(k);
    let mut levels = Vec::with_capacity(k + 1);
    for p in 0..=k {
        let mut minors = Vec::new();
        for subset in Combinations::new(k + 1, p + 1) {
            let m: Vec<Vec<ExactPoly>> = (0..=p)
                .map(|l| subset.iter().map(|&i| table[l][i].clone()).collect())
                .collect();
            minors.push((subset, determinant(&m)));
        }
        levels.push(minors);
    }
    Ok(WronskianLadder { levels })
}

/// F(H) = sum conj(c_l) f_l, exact.
pub fn pairing(curve: &CurveRep, h: &Hyperplane) -> Result<ExactPoly> {
    if h.dim() != curve.components().len() {
        return Err(Error::DimensionMismatch {
            expected: curve.components().len(),
            got: h.dim(),
        });
    }
    let mut acc = ExactPoly::zero();
    for (c, f) in h.coeffs.iter().zip(curve.components()) {
        acc = &acc + &f.scale(&c.conj());
    }
    Ok(acc)
}

/// Contracted Wronskian sum_{l not in I} conj(c_l) W(f_l, f_{i_1},..,f_{i_p})
/// for an index set I = (i_1 < .. < i_p), 1 <= p <= k.
pub fn contracted(
    curve: &CurveRep,
    h: &Hyperplane,
    p: usize,
    index_set: &[usize],
) -> Result<ExactPoly> {
    let k = curve.k();
    if p < 1 || p > k {
        return Err(Error::InvalidIndexSet {
            detail: format!("level p = {p} outside 1..={k}"),
        });
    }
    if index_set.len() != p
        || index_set.windows(2).any(|w| w[0] >= w[1])
        || index_set.iter().any(|&i| i > k)
    {
        return Err(Error::InvalidIndexSet {
            detail: format!("index set {index_set:?} is not a sorted p-subset of 0..={k}"),
        });
    }
    if h.dim() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: h.dim(),
        });
    }
    let table = curve.derivative_table(p);
    let mut acc = ExactPoly::zero();
    for l in 0..=k {
        if index_set.contains(&l) {
            continue;
        }
        let cl = h.coeffs[l].conj();
        if cl.is_zero() {
            continue;
        }
        // columns ordered (f_l, f_{i_1}, .., f_{i_p})
        let cols: Vec<usize> = std::iter::once(l).chain(index_set.iter().copied()).collect();
        let m: Vec<Vec<ExactPoly>> = (0..=p)
            .map(|d| cols.iter().map(|&i| table[d][i].clone()).collect())
            .collect();
        let w = determinant(&m);
        acc = &acc + &w.scale(&cl);
    }
    Ok(acc)
}

/// One selected component per (hyperplane, level).
#[derive(Clone, Debug)]
pub struct PsiEntry {
    pub index_set: Vec<usize>,
    pub poly: ExactPoly,
}

/// psi_{jp} for 0 <= p <= k and every hyperplane j: the lexicographically
/// first index set whose contracted Wronskian is not identically zero.
/// Level 0 is the pairing; level k is the full Wronskian up to a constant.
#[derive(Clone, Debug)]
pub struct PsiSelection {
    entries: Vec<Vec<PsiEntry>>,
}

impl PsiSelection {
    pub fn entry(&self, j: usize, p: usize) -> &PsiEntry {
        &self.entries[j][p]
    }

    pub fn num_hyperplanes(&self) -> usize {
        self.entries.len()
    }

    pub fn num_levels(&self) -> usize {
        self.entries.first().map_or(0, |e| e.len())
    }
}

pub fn select_psi(curve: &CurveRep, hs: &HyperplaneSet) -> Result<PsiSelection> {
    if is_degenerate(curve) {
        return Err(Error::Degenerate);
    }
    let k = curve.k();
    let mut entries = Vec::with_capacity(hs.len());
    for h in hs.iter() {
        let mut per_level = Vec::with_capacity(k + 1);
        let pair = pairing(curve, h)?;
        if pair.is_zero() {
            return Err(Error::HyperplaneContainsCurve {
                label: h.label.clone(),
            });
        }
        per_level.push(PsiEntry {
            index_set: Vec::new(),
            poly: pair,
        });
        for p in 1..=k {
            let mut chosen = None;
            for index_set in Combinations::new(k + 1, p) {
                let c = contracted(curve, h, p, &index_set)?;
                if !c.is_zero() {
                    chosen = Some(PsiEntry {
                        index_set,
                        poly: c,
                    });
                    break;
                }
            }
            let Some(entry) = chosen else {
                return Err(Error::InternalAssertion {
                    what: format!(
                        "no nonvanishing contracted Wronskian at level {p} for {:?}; \
                         contradicts non-degeneracy",
                        h.label
                    ),
                });
            };
            per_level.push(entry);
        }
        entries.push(per_level);
    }
    Ok(PsiSelection { entries })
}

/// p-th contact function |F_p(H)|^2 / |F_p|^2 at a point, with H normalized
/// to unit length in floating point.
pub fn contact_eval(
    curve: &CurveRep,
    h: &Hyperplane,
    p: usize,
    z: Complex64,
) -> Result<f64> {
    let k = curve.k();
    if p > k {
        return Err(Error::InvalidIndexSet {
            detail: format!("level p = {p} outside 0..={k}"),
        });
    }
    if h.dim() != k + 1 {
        return Err(Error::DimensionMismatch {
            expected: k + 1,
            got: h.dim(),
        });
    }
    let norm_sqr: f64 = h
        .coeffs
        .iter()
        .map(|c| rational_to_f64(&c.norm_sqr()))
        .sum();

    let (num, den) = if p == 0 {
        let pairing_val = pairing(curve, h)?.eval_complex(z)?;
        (pairing_val.norm_sqr(), curve.norm_sqr_at(z)?)
    } else {
        let lad = ladder(curve)?;
        let den = lad.norm_sqr_at(p, z)?;
        let mut num = 0.0;
        for index_set in Combinations::new(k + 1, p) {
            let c = contracted(curve, h, p, &index_set)?;
            num += c.eval_complex(z)?.norm_sqr();
        }
        (num, den)
    };
    if den == 0.0 {
        return Err(Error::SingularEvaluation {
            at: format!("|F_{p}| vanishes at {z}"),
        });
    }
    Ok(num / (den * norm_sqr))
}

/// True iff the components are linearly dependent over the complex numbers,
/// i.e. the top Wronskian vanishes identically. The exact rank of the
/// coefficient matrix is the cross-validating oracle.
pub fn is_degenerate(curve: &CurveRep) -> bool {
    let top = wronskian(curve.components()).expect("nonempty components");
    let by_wronskian = top.is_zero();
    let by_rank = linalg::rank(&curve.coefficient_matrix()) < curve.components().len();
    debug_assert_eq!(by_wronskian, by_rank);
    by_wronskian
}
