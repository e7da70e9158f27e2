//! Exact Gaussian elimination over the Gaussian rationals. Only rank and
//! reduced row echelon form are needed by the rest of the crate.

use num_traits::Zero;

use crate::exactnum::gaussian::Gaussian;

/// Exact rank of a row matrix.
pub fn rank(rows: &[Vec<Gaussian>]) -> usize {
    rref(rows).1.len()
}

/// Reduced row echelon form. Returns (rref rows with zero rows dropped,
/// pivot column indices).
pub fn rref(rows: &[Vec<Gaussian>]) -> (Vec<Vec<Gaussian>>, Vec<usize>) {
    let mut m: Vec<Vec<Gaussian>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pr) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].inv().expect("pivot nonzero");
        for c in col..ncols {
            m[row][c] = (&m[row][c]) * (&inv);
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let delta = (&factor) * (&m[row][c]);
                    let cur = m[r][c].clone();
                    m[r][c] = cur - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    (m, pivots)
}
