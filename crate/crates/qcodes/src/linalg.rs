//! Crate-internal exact linear algebra over a [`Field`]: deterministic
//! reduced row echelon form and null spaces on byte matrices.

use crate::galois::Field;

/// Reduce `rows` in place to reduced row echelon form and drop zero rows.
///
/// Pivot selection is deterministic: leftmost column, first nonzero row from
/// the top, pivot normalized to 1. Returns the pivot columns.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rref(field: &Field, rows: &mut Vec<Vec<u8>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        let Some(src) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, src);
        let inv = field.inv(rows[pivot_row][col]).expect("pivot is nonzero");
        if inv != 1 {
            for c in rows[pivot_row].iter_mut() {
                *c = field.mul(*c, inv);
            }
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for j in 0..ncols {
                    let sub = field.mul(factor, rows[pivot_row][j]);
                    rows[r][j] = field.sub(rows[r][j], sub);
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    pivots
}

/// Basis of `{x : A x = 0}` for the matrix with the given rows.
pub(crate) fn null_space(field: &Field, matrix: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut rows: Vec<Vec<u8>> = matrix.to_vec();
    let pivots = rref(field, &mut rows);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u8; ncols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(rows[i][free]);
        }
        basis.push(v);
    }
    basis
}

pub(crate) fn transpose(matrix: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let mut t = vec![vec![0u8; matrix.len()]; ncols];
    for (i, row) in matrix.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t[j][i] = v;
        }
    }
    t
}

/// Basis of `{v : v A = 0}` (combinations of rows of `A` summing to zero).
pub(crate) fn left_null_space(field: &Field, matrix: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    null_space(field, &transpose(matrix, ncols), matrix.len())
}
