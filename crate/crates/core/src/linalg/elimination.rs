//! Fraction-free sparse elimination over the integers.
//!
//! Rational input rows are cleared of denominators first. A row update
//! `row <- (p*row - a*pivot) / content` keeps every entry integral; the
//! pivot in each column is the candidate with the smallest absolute value,
//! ties broken by fewest nonzeros.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::poly::Rational;

/// Sparse rational vector, sorted by index, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

type IntRow = Vec<(usize, BigInt)>;

fn integerize(v: &[(usize, Rational)]) -> IntRow {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, (_, r)| acc.lcm(r.denom()));
    let mut row: IntRow = v
        .iter()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| (*i, r.numer() * (&lcm / r.denom())))
        .collect();
    row.sort_by_key(|(i, _)| *i);
    remove_content(&mut row);
    row
}

fn remove_content(row: &mut IntRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

fn entry(row: &IntRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |(c, _)| *c)
        .ok()
        .map(|i| &row[i].1)
}

/// Eliminates `col` from `row` using `pivot` (whose entry at `col` is nonzero).
fn eliminate(row: &IntRow, pivot: &IntRow, col: usize) -> IntRow {
    let a = entry(row, col).expect("row has entry at col");
    let p = entry(pivot, col).expect("pivot has entry at col");
    let g = a.gcd(p);
    let (ma, mp) = (p / &g, a / &g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, &ma * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(&mp * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, &ma * &row[i - 1].1 - &mp * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    remove_content(&mut out);
    out
}

/// Row echelon form of a set of integer rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    /// Pivot rows in increasing order of pivot column.
    rows: Vec<(usize, IntRow)>,
    reduced: bool,
}

impl Echelon {
    /// Reduces `rows` (each a sparse rational vector of length `ncols`).
    /// With `reduced`, entries above each pivot are eliminated too.
    pub fn new(rows: &[SparseVec], ncols: usize, reduced: bool) -> Self {
        let mut active: Vec<IntRow> = rows
            .iter()
            .map(|r| integerize(r))
            .filter(|r| !r.is_empty())
            .collect();
        debug_assert!(active.iter().all(|r| r.last().is_none_or(|e| e.0 < ncols)));
        let mut pivots: Vec<(usize, IntRow)> = Vec::new();
        while !active.is_empty() {
            let lead = active.iter().map(|r| r[0].0).min().expect("nonempty");
            let mut best: Option<usize> = None;
            for (idx, r) in active.iter().enumerate() {
                if r[0].0 != lead {
                    continue;
                }
                best = match best {
                    None => Some(idx),
                    Some(b) => {
                        let (rb, rc) = (&active[b], r);
                        let key_b = (rb[0].1.magnitude().clone(), rb.len());
                        let key_c = (rc[0].1.magnitude().clone(), rc.len());
                        if key_c < key_b {
                            Some(idx)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let pivot = active.swap_remove(best.expect("some row leads"));
            let mut next = Vec::with_capacity(active.len());
            for r in active.drain(..) {
                if r[0].0 == lead {
                    let e = eliminate(&r, &pivot, lead);
                    if !e.is_empty() {
                        next.push(e);
                    }
                } else {
                    next.push(r);
                }
            }
            active = next;
            pivots.push((lead, pivot));
        }
        if reduced {
            for k in (0..pivots.len()).rev() {
                let (col, prow) = (pivots[k].0, pivots[k].1.clone());
                for (_, row) in pivots[..k].iter_mut() {
                    if entry(row, col).is_some() {
                        *row = eliminate(row, &prow, col);
                    }
                }
            }
        }
        Echelon {
            ncols,
            rows: pivots,
            reduced,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for (c, _) in &self.rows {
            is_pivot[*c] = true;
        }
        (0..self.ncols).filter(|c| !is_pivot[*c]).collect()
    }

    /// Basis of the null space `{v : row . v = 0 for all rows}`, one vector
    /// per free column (that coordinate set to one).
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        assert!(self.reduced, "kernel needs reduced echelon form");
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.ncols];
        for (i, f) in free.iter().enumerate() {
            slot[*f] = i;
        }
        let mut basis: Vec<SparseVec> = free.iter().map(|f| vec![(*f, Rational::one())]).collect();
        for (pc, row) in &self.rows {
            let p = entry(row, *pc).expect("pivot entry");
            for (c, v) in row {
                if c != pc {
                    basis[slot[*c]].push((*pc, -Rational::new(v.clone(), p.clone())));
                }
            }
        }
        for v in basis.iter_mut() {
            v.sort_by_key(|(i, _)| *i);
        }
        basis
    }
}

/// Rank of a set of vectors of length `ncols`.
pub fn rank_of(vectors: &[SparseVec], ncols: usize) -> usize {
    Echelon::new(vectors, ncols, false).rank()
}

/// Null space of the matrix whose rows are given.
pub fn kernel_of_rows(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    Echelon::new(rows, ncols, true).kernel_basis()
}

/// Transposes a list of sparse columns into sparse rows.
pub fn transpose(columns: &[SparseVec], nrows: usize) -> Vec<SparseVec> {
    let mut rows: Vec<SparseVec> = vec![Vec::new(); nrows];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].push((j, v.clone()));
        }
    }
    rows
}

/// Finds `x` with `sum_j x_j columns[j] = rhs`, or `None` when `rhs` is
/// outside the column span.
pub fn solve(columns: &[SparseVec], nrows: usize, rhs: &SparseVec) -> Option<Vec<Rational>> {
    let n = columns.len();
    let mut augmented: Vec<SparseVec> = columns.to_vec();
    augmented.push(rhs.clone());
    let rows = transpose(&augmented, nrows);
    let ech = Echelon::new(&rows, n + 1, true);
    let mut x = vec![Rational::zero(); n];
    for (pc, row) in &ech.rows {
        if *pc == n {
            return None;
        }
        let p = entry(row, *pc).expect("pivot entry");
        if let Some(b) = entry(row, n) {
            x[*pc] = Rational::new(b.clone(), p.clone());
        }
    }
    Some(x)
}

/// Applies a column-major sparse matrix to a dense vector.
pub fn apply(columns: &[SparseVec], nrows: usize, x: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); nrows];
    for (col, xj) in columns.iter().zip(x) {
        if xj.is_zero() {
            continue;
        }
        for (i, v) in col {
            out[*i] += v * xj;
        }
    }
    out
}

/// Applies the matrix to a sparse vector; returns a sparse result.
pub fn apply_sparse(columns: &[SparseVec], nrows: usize, x: &SparseVec) -> SparseVec {
    let mut dense = vec![Rational::zero(); nrows];
    for (j, xj) in x {
        for (i, v) in &columns[*j] {
            dense[*i] += v * xj;
        }
    }
    dense
        .into_iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .collect()
}
