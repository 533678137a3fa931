//! Dense exact linear algebra over coordinate vectors.

use crate::scalar::Scalar;

/// Row-reduce `rows` in place; returns the pivot column of each surviving row,
/// in row order. Zero rows are removed.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..ncols {
                    let delta = &rows[rank][c] * &factor;
                    let entry = &rows[r][c] - &delta;
                    rows[r][c] = entry;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    pivots
}

pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    rref(&mut rows).len()
}

/// Kernel of the linear map with the given rows (as functionals on column
/// vectors): all `x` with `rows · x = 0`, echelonized.
pub fn nullspace(mut rows: Vec<Vec<Scalar>>, ncols: usize) -> Vec<Vec<Scalar>> {
    debug_assert!(rows.iter().all(|r| r.len() == ncols));
    let pivots = rref(&mut rows);
    let mut out = Vec::new();
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        out.push(v);
    }
    out
}

/// Solve `Σ xᵢ·vectors[i] = target`; `None` when the target is outside the
/// span. When the vectors are dependent an arbitrary preimage is returned.
pub fn solve_combination(vectors: &[Vec<Scalar>], target: &[Scalar]) -> Option<Vec<Scalar>> {
    let n = target.len();
    debug_assert!(vectors.iter().all(|v| v.len() == n));
    let m = vectors.len();
    // Augmented system with unknown column per vector.
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|coord| {
            let mut row: Vec<Scalar> = vectors.iter().map(|v| v[coord].clone()).collect();
            row.push(target[coord].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    let mut solution = vec![Scalar::zero(); m];
    for (row, &p) in rows.iter().zip(&pivots) {
        if p == m {
            return None; // pivot in the augmented column: inconsistent
        }
        solution[p] = row[m].clone();
    }
    Some(solution)
}

/// A subspace of coordinate vectors of fixed length, kept in reduced row
/// echelon form. Equality of spans is structural equality of `basis()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordSpan {
    len: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl CoordSpan {
    pub fn new(len: usize) -> Self {
        CoordSpan {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(len: usize, vectors: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let mut s = CoordSpan::new(len);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        assert_eq!(v.len(), self.len);
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for c in 0..self.len {
                    let delta = &row[c] * &factor;
                    v[c] = &v[c] - &delta;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<Scalar>) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[pivot].inv().expect("nonzero pivot");
        let v: Vec<Scalar> = v.iter().map(|c| c * &inv).collect();
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[pivot].is_zero() {
                let factor = row[pivot].clone();
                for c in 0..self.len {
                    let delta = &v[c] * &factor;
                    row[c] = &row[c] - &delta;
                }
            }
        }
        // Keep rows sorted by pivot column.
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.rows.insert(at, v);
        self.pivots.insert(at, pivot);
        true
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }
}
