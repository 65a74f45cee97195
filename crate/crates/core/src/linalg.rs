//! Dense Gaussian elimination over `F_q` for the tiny matrices used here
//! (at most a few dozen rows and columns).

use crate::gf::{Elem, Field};

/// Determinant of a square matrix given as rows. Consumes a scratch copy.
pub fn det(field: &Field, rows: &[Vec<Elem>]) -> Elem {
    let n = rows.len();
    let mut a: Vec<Vec<Elem>> = rows.to_vec();
    let mut acc = Elem::ONE;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Elem::ZERO;
        };
        if piv != col {
            a.swap(piv, col);
            acc = field.neg(acc);
        }
        let p = a[col][col];
        acc = field.mul(acc, p);
        let p_inv = field.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(a[r][col], p_inv);
            let (top, rest) = a.split_at_mut(r);
            for (x, &y) in rest[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
    }
    acc
}

/// Determinant over `F_2` of an `n x n` matrix whose row `i` is the bit mask `rows[i]`.
pub fn det_gf2(rows: &mut [u64]) -> bool {
    let n = rows.len();
    for col in 0..n {
        let bit = 1u64 << col;
        let Some(piv) = (col..n).find(|&r| rows[r] & bit != 0) else {
            return false;
        };
        rows.swap(piv, col);
        let pivot_row = rows[col];
        for r in rows[col + 1..].iter_mut() {
            if *r & bit != 0 {
                *r ^= pivot_row;
            }
        }
    }
    true
}

/// Row-reduces in place to reduced (left) echelon form; returns pivot columns.
pub fn rref(field: &Field, a: &mut [Vec<Elem>]) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(piv, r);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        for x in a[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    let mut a = rows.to_vec();
    rref(field, &mut a).len()
}

/// Basis of `{x : A x = 0}` for `A` given as rows with `cols` columns.
pub fn nullspace(field: &Field, rows: &[Vec<Elem>], cols: usize) -> Vec<Vec<Elem>> {
    let mut a = rows.to_vec();
    let pivots = rref(field, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Elem::ZERO; cols];
            x[f] = Elem::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                x[pc] = field.neg(a[r][f]);
            }
            x
        })
        .collect()
}

/// Basis of `{x : x A = 0}`, the left kernel of the rows of `A`.
pub fn left_kernel(field: &Field, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let n = rows.len();
    let cols = rows.first().map_or(0, Vec::len);
    let transpose: Vec<Vec<Elem>> = (0..cols).map(|c| rows.iter().map(|r| r[c]).collect()).collect();
    nullspace(field, &transpose, n)
}
