//! Exact sparse linear algebra over the rationals.
//!
//! Ranks are computed by integer-preserving elimination: each row is scaled
//! to integers, pivots are chosen to limit fill-in, and rows are reduced by
//! cross-multiplication with the content gcd stripped after every step.
//! This is fraction-free in spirit (no rational division inside the
//! elimination loop) and keeps entries small on the sparse differential
//! matrices this crate produces.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::scalar::Scalar;

/// Sparse rational matrix in triplet form with a fixed shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Appends an entry; duplicate positions are summed on access.
    pub fn push(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "entry out of shape");
        if !value.is_zero() {
            self.entries.push((row, col, value));
        }
    }

    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.row_major().iter().all(|r| r.is_empty())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(); self.cols]; self.rows];
        for (i, j, v) in &self.entries {
            out[*i][*j] += v;
        }
        out
    }

    /// Rows as sorted (col, coeff) lists with duplicates combined and
    /// zeros dropped.
    fn row_major(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        let mut sorted = self.entries.clone();
        sorted.sort_by_key(|&(i, j, _)| (i, j));
        for (i, j, v) in sorted {
            match rows[i].last_mut() {
                Some((jj, vv)) if *jj == j => *vv += v,
                _ => rows[i].push((j, v)),
            }
        }
        for row in &mut rows {
            row.retain(|(_, v)| !v.is_zero());
        }
        rows
    }

    /// Matrix product `self * other` (sparse, exact).
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in compose");
        let mut other_cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); other.cols];
        for (i, j, v) in &other.entries {
            other_cols[*j].push((*i, v.clone()));
        }
        let mut self_cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for (i, j, v) in &self.entries {
            self_cols[*j].push((*i, v.clone()));
        }
        let mut out = SparseMatrix::new(self.rows, other.cols);
        for (j, col) in other_cols.iter().enumerate() {
            // accumulate self * (column j of other)
            let mut acc: std::collections::BTreeMap<usize, Scalar> = Default::default();
            for (k, w) in col {
                for (i, v) in &self_cols[*k] {
                    let e = acc.entry(*i).or_insert_with(Scalar::zero);
                    *e += v * w;
                }
            }
            for (i, v) in acc {
                if !v.is_zero() {
                    out.push(i, j, v);
                }
            }
        }
        out
    }

    /// Exact rank by sparse integer-preserving elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::new();
        for row in self.row_major() {
            if row.is_empty() {
                continue;
            }
            let mut lcm = BigInt::from(1);
            for (_, v) in &row {
                lcm = lcm.lcm(v.denom());
            }
            let mut irow: Vec<(usize, BigInt)> = row
                .iter()
                .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
                .collect();
            strip_content(&mut irow);
            rows.push(irow);
        }
        let mut rank = 0;
        while !rows.is_empty() {
            // pivot: the row with fewest entries; within it, the column
            // appearing in fewest other rows
            let mut col_count: std::collections::HashMap<usize, usize> = Default::default();
            for row in &rows {
                for (j, _) in row {
                    *col_count.entry(*j).or_insert(0) += 1;
                }
            }
            let pi = (0..rows.len()).min_by_key(|&i| rows[i].len()).unwrap();
            let pivot_row = rows.swap_remove(pi);
            let &(pj, _) = pivot_row
                .iter()
                .min_by_key(|(j, _)| col_count[j])
                .unwrap();
            let pv = pivot_row
                .iter()
                .find(|(j, _)| *j == pj)
                .map(|(_, v)| v.clone())
                .unwrap();
            rank += 1;
            for row in &mut rows {
                let Some(cv) = row.iter().find(|(j, _)| *j == pj).map(|(_, v)| v.clone()) else {
                    continue;
                };
                *row = combine_rows(row, &pv, &pivot_row, &cv, pj);
                strip_content(row);
            }
            rows.retain(|r| !r.is_empty());
        }
        rank
    }
}

/// `pv * row - cv * pivot_row`, dropping column `pj` (which cancels exactly).
fn combine_rows(
    row: &[(usize, BigInt)],
    pv: &BigInt,
    pivot_row: &[(usize, BigInt)],
    cv: &BigInt,
    pj: usize,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let (mut a, mut b) = (0usize, 0usize);
    while a < row.len() || b < pivot_row.len() {
        match (row.get(a), pivot_row.get(b)) {
            (Some((ja, va)), Some((jb, vb))) => {
                if ja == jb {
                    if *ja != pj {
                        let v = pv * va - cv * vb;
                        if !v.is_zero() {
                            out.push((*ja, v));
                        }
                    }
                    a += 1;
                    b += 1;
                } else if ja < jb {
                    if *ja != pj {
                        out.push((*ja, pv * va));
                    }
                    a += 1;
                } else {
                    if *jb != pj {
                        out.push((*jb, -(cv * vb)));
                    }
                    b += 1;
                }
            }
            (Some((ja, va)), None) => {
                if *ja != pj {
                    out.push((*ja, pv * va));
                }
                a += 1;
            }
            (None, Some((jb, vb))) => {
                if *jb != pj {
                    out.push((*jb, -(cv * vb)));
                }
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

fn strip_content(row: &mut [(usize, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g == BigInt::from(1) {
            return;
        }
    }
    if g > BigInt::from(1) {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// Kernel basis of a small dense rational matrix (columns = unknowns).
/// Returns one basis vector per free column, each of length `cols`.
pub fn dense_kernel(matrix: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = matrix.to_vec();
    let rows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    let mut r = 0usize;
    for c in 0..cols {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].clone();
        for x in &mut m[r] {
            *x = &*x / &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    let delta = p * &f;
                    *x = &*x - &delta;
                }
            }
        }
        pivot_of_col[c] = Some(r);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); cols];
        v[free] = Scalar::from_integer(BigInt::from(1));
        for c in 0..cols {
            if let Some(pr) = pivot_of_col[c] {
                v[c] = -m[pr][free].clone();
            }
        }
        basis.push(v);
    }
    basis
}
