//! Dense exact-rational matrices and Gaussian elimination.
//!
//! Plain rational elimination with pivot normalization is all the degreewise
//! kernel computations need at this scale; no fraction-free tricks.

use crate::error::{Error, Result};
use crate::rat::Rat;
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> RatMatrix {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RatMatrix {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::SizeMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::SizeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::SizeMismatch("vector length".into()));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .fold(Rat::zero(), |s, t| s + t)
            })
            .collect())
    }

    pub fn commutes_with(&self, other: &RatMatrix) -> Result<bool> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    pub fn trace(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch("trace of non-square matrix".into()));
        }
        Ok((0..self.rows).fold(Rat::zero(), |s, i| s + &self[(i, i)]))
    }

    /// Row-reduces a copy of the matrix; returns the rank and a basis of the
    /// right nullspace. Each basis vector carries 1 at its free column and is
    /// determined by back substitution, so the output is deterministic.
    pub fn rref_nullspace(&self) -> (usize, Vec<Vec<Rat>>) {
        let mut m = self.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = {
                let p = m[(r, c)].clone();
                p.recip()
            };
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(i, j)] - &(&f * &m[(r, j)]);
                        m[(i, j)] = v;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        // remaining columns may still contain pivots only if r < rows; the
        // loop above already scanned every column, so pivot_cols is final.
        let rank = pivot_cols.len();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; m.cols];
            for &c in &pivot_cols {
                v[c] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); m.cols];
            v[free] = Rat::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m[(i, free)].clone();
            }
            basis.push(v);
        }
        (rank, basis)
    }

    pub fn rank(&self) -> usize {
        self.rref_nullspace().0
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// Incrementally built row space: insert vectors one at a time and watch the
/// rank grow. Backs the decomposable-subspace and ideal-span computations.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    // (pivot column, reduced row with 1 at the pivot)
    rows: Vec<(usize, Vec<Rat>)>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; returns true (and absorbs the
    /// residual) when `v` was outside the span.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].clone().recip();
        for a in v.iter_mut() {
            *a *= &inv;
        }
        self.rows.push((pc, v));
        true
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.entries[i * self.cols + j]
    }
}
