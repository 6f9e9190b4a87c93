//! Exact fraction-free elimination (Bareiss) over any [`Field`].
//!
//! Pivots are the first nonzero entry in the column. Over the rationals with
//! integral input every intermediate stays integral.

use crate::scalar::Field;

/// Row echelon form produced by fraction-free elimination.
struct Echelon<F> {
    rows: Vec<Vec<F>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn eliminate<F: Field>(mut rows: Vec<Vec<F>>, cols: usize) -> Echelon<F> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev = F::one();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let pivot = rows[r][c].clone();
        let (top, below) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let factor = row[c].clone();
            for (x, y) in row[c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                let v = pivot.clone() * x.clone() - factor.clone() * y.clone();
                *x = v.checked_div(&prev).expect("nonzero previous pivot");
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

/// Determinant of a square matrix.
pub fn determinant<F: Field>(m: Vec<Vec<F>>) -> F {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    if n == 0 {
        return F::one();
    }
    let e = eliminate(m, n);
    if e.pivots.len() < n {
        return F::zero();
    }
    let last = e.rows[n - 1][n - 1].clone();
    if e.swaps % 2 == 1 {
        -last
    } else {
        last
    }
}

pub fn rank<F: Field>(m: Vec<Vec<F>>, cols: usize) -> usize {
    eliminate(m, cols).pivots.len()
}

/// A basis of `{v : M v = 0}`, one vector per free column, each reduced by [`Field::reduce_vector`].
pub fn nullspace<F: Field>(m: Vec<Vec<F>>, cols: usize) -> Vec<Vec<F>> {
    let e = eliminate(m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::zero(); cols];
            v[f] = F::one();
            for (r, &pc) in e.pivots.iter().enumerate().rev() {
                let row = &e.rows[r];
                let s = (pc + 1..cols).fold(F::zero(), |acc, j| acc + row[j].clone() * v[j].clone());
                v[pc] = (-s).checked_div(&row[pc]).expect("nonzero pivot");
            }
            F::reduce_vector(&mut v);
            v
        })
        .collect()
}
