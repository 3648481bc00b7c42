//! Dense exact linear algebra over the rationals: reduced row echelon form,
//! rank, and linear solving with a Farkas certificate on infeasibility.

use num_traits::Zero;

use crate::rat::{rat, Rat};

/// Reduces `mat` in place to reduced row echelon form, eliminating only in
/// columns `0..limit`, and returns the pivot column of each pivot row.
pub fn rref_cols(mat: &mut [Vec<Rat>], limit: usize) -> Vec<usize> {
    let rows = mat.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for entry in &mut mat[r] {
            *entry = &*entry / &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                let pivot_row = mat[r].clone();
                for (entry, pe) in mat[i].iter_mut().zip(&pivot_row) {
                    *entry = &*entry - &(pe * &factor);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rref(mat: &mut [Vec<Rat>]) -> Vec<usize> {
    let limit = mat.first().map_or(0, |r| r.len());
    rref_cols(mat, limit)
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    rref(&mut m).len()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// A particular solution with free variables set to zero.
    Solution(Vec<Rat>),
    /// Row multipliers `y` with `y^T A = 0` and `y^T b != 0`.
    Infeasible { farkas: Vec<Rat> },
}

/// Solves `A x = b` exactly.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> SolveOutcome {
    let m = a.len();
    let k = a.first().map_or(0, |r| r.len());
    assert_eq!(b.len(), m);
    // augmented block [A | I | b]; row operations keep the middle block
    // equal to the transform applied so far
    let mut rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut row = a[i].clone();
            assert_eq!(row.len(), k, "ragged matrix");
            for j in 0..m {
                row.push(if i == j { rat(1) } else { rat(0) });
            }
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref_cols(&mut rows, k);
    for row in rows.iter().skip(pivots.len()) {
        if !row[k + m].is_zero() {
            return SolveOutcome::Infeasible {
                farkas: row[k..k + m].to_vec(),
            };
        }
    }
    let mut x = vec![rat(0); k];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][k + m].clone();
    }
    SolveOutcome::Solution(x)
}

/// Matrix-vector product.
pub fn mat_vec(a: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .map(|(p, q)| p * q)
                .fold(Rat::zero(), |acc, t| acc + t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratio;

    fn rv(vals: &[i64]) -> Vec<Rat> {
        vals.iter().map(|&v| rat(v)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&[rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])]), 2);
        assert_eq!(rank(&[rv(&[1, 2]), rv(&[2, 4])]), 1);
        assert_eq!(rank(&[rv(&[0, 0])]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solve_unique() {
        // x + y = 3, x - y = 1
        let a = vec![rv(&[1, 1]), rv(&[1, -1])];
        let b = rv(&[3, 1]);
        assert_eq!(solve(&a, &b), SolveOutcome::Solution(rv(&[2, 1])));
    }

    #[test]
    fn solve_underdetermined_picks_particular() {
        let a = vec![rv(&[1, 1, 0])];
        let b = rv(&[2]);
        let SolveOutcome::Solution(x) = solve(&a, &b) else {
            panic!("expected a solution");
        };
        assert_eq!(mat_vec(&a, &x), b);
    }

    #[test]
    fn infeasible_produces_farkas_certificate() {
        // x + y = 1, 2x + 2y = 3
        let a = vec![rv(&[1, 1]), rv(&[2, 2])];
        let b = vec![rat(1), rat(3)];
        let SolveOutcome::Infeasible { farkas } = solve(&a, &b) else {
            panic!("expected infeasible");
        };
        // check y^T A = 0 and y^T b != 0
        for c in 0..2 {
            let dot: Rat = farkas.iter().zip(&a).map(|(y, row)| y * &row[c]).sum();
            assert!(dot.is_zero());
        }
        let dot: Rat = farkas.iter().zip(&b).map(|(y, v)| y * v).sum();
        assert!(!dot.is_zero());
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![ratio(1, 2), ratio(1, 3)]];
        let b = vec![ratio(5, 6)];
        let SolveOutcome::Solution(x) = solve(&a, &b) else {
            panic!("expected a solution");
        };
        assert_eq!(mat_vec(&a, &x), b);
    }
}
