//! Exact rational linear algebra: reduced row echelon form, rank, nullspace,
//! and consistent-system solving. No pivot tolerances exist anywhere; a pivot
//! is any exactly nonzero entry.

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Reduce `m` (rows of equal length) to reduced row echelon form in place.
/// Returns the pivot column of each pivot row.
pub fn rref(m: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in &mut m[r][c..] {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                #[allow(clippy::needless_range_loop)]
                for k in c..cols {
                    let sub = &m[r][k] * &f;
                    m[i][k] = &m[i][k] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(mut m: Vec<Vec<Rat>>) -> usize {
    rref(&mut m).len()
}

/// Basis of the nullspace of the matrix whose rows are `rows` (each of length
/// `ncols`). The basis is canonical: one vector per free column, with a 1 in
/// that column, in increasing column order.
pub fn nullspace(mut rows: Vec<Vec<Rat>>, ncols: usize) -> Vec<Vec<Rat>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = -&rows[r][free];
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` where `cols` are the columns of A. The system may be
/// overdetermined; it must be consistent (this is asserted exactly).
pub fn solve_consistent(cols: &[Vec<Rat>], b: &[Rat]) -> Result<Vec<Rat>> {
    let nrows = b.len();
    debug_assert!(cols.iter().all(|c| c.len() == nrows));
    let ncols = cols.len();
    let mut m: Vec<Vec<Rat>> = (0..nrows)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&ncols) {
        return Err(Error::InconsistentSystem(format!(
            "no solution for {ncols}-unknown system with {nrows} equations"
        )));
    }
    if pivots.len() < ncols {
        return Err(Error::InconsistentSystem(format!(
            "underdetermined system: rank {} < {} unknowns",
            pivots.len(),
            ncols
        )));
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = m[r][ncols].clone();
    }
    Ok(x)
}
