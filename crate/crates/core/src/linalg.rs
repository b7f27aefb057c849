//! Small exact linear algebra over the working field: row reduction,
//! rank and nullspaces of the tiny matrices used by the geometry layer.

use std::sync::Arc;

use crate::cyclo::{FieldElem, FieldOps, FieldSpec};

/// Reduces `rows` in place to reduced row echelon form and returns the rank.
pub fn rref(rows: &mut [Vec<FieldElem>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let sub = &factor * &rows[rank][c];
                rows[r][c] = &rows[r][c] - &sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Rank of a matrix, leaving the input untouched.
pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work)
}

/// Basis of the right nullspace `{x : A x = 0}` of the matrix `rows`,
/// one vector per free column, in ascending free-column order.
pub fn nullspace(
    spec: &Arc<FieldSpec>,
    rows: &[Vec<FieldElem>],
    ncols: usize,
) -> Vec<Vec<FieldElem>> {
    let mut work = rows.to_vec();
    let rank = rref(&mut work);
    let mut pivot_cols = Vec::with_capacity(rank);
    for row in work.iter().take(rank) {
        let col = row
            .iter()
            .position(|c| !c.is_zero())
            .expect("rows above the rank are nonzero");
        pivot_cols.push(col);
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![spec.zero(); ncols];
        v[free] = spec.one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -&work[r][free];
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::make_field;

    #[test]
    fn nullspace_of_coordinate_rows() {
        let f = make_field(4).unwrap();
        let e = |v: i64| f.integer(v);
        // Rows e0, e1, e2 in 4 columns: nullspace is span(e3).
        let rows = vec![
            vec![e(1), e(0), e(0), e(0)],
            vec![e(0), e(1), e(0), e(0)],
            vec![e(0), e(0), e(1), e(0)],
        ];
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![e(0), e(0), e(0), e(1)]);
        assert_eq!(rank(&rows), 3);
    }

    #[test]
    fn rank_detects_dependence() {
        let f = make_field(4).unwrap();
        let e = |v: i64| f.integer(v);
        let rows = vec![
            vec![e(1), e(2), e(3)],
            vec![e(2), e(4), e(6)],
            vec![e(0), e(1), e(1)],
        ];
        assert_eq!(rank(&rows), 2);
        let ns = nullspace(&f, &rows, 3);
        assert_eq!(ns.len(), 1);
        for row in &rows {
            let mut dot = f.zero();
            for (a, x) in row.iter().zip(&ns[0]) {
                dot = &dot + &(a * x);
            }
            assert!(dot.is_zero());
        }
    }
}
