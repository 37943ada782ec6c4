//! Dense exact linear algebra over GF(q): Gaussian elimination, determinant,
//! inverse, solving, null spaces. Everything is small and exact; no pivot
//! strategy beyond "first nonzero" is needed over a field.

use crate::error::{Error, Result};
use crate::field::{Elt, Field};

/// Column vector over a field.
pub type Vect = Vec<Elt>;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elt>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.field.format_elt(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Build from integer entries (row major), reduced into the field.
    pub fn from_ints(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols);
        let data = entries.iter().map(|&e| field.from_int(e)).collect();
        Mat { field: field.clone(), rows, cols, data }
    }

    pub fn from_columns(field: &Field, cols: &[Vect]) -> Mat {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Mat::zero(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Elt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Elt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, j: usize) -> Vect {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vect> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let f = &self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, k), other.get(k, c)));
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elt]) -> Vect {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.get(r, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.neg(a)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Elt) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Row echelon reduction in place; returns (rank, det of the leading
    /// square part, pivot columns). `det` only meaningful for square input.
    fn row_reduce(&mut self) -> (usize, Elt, Vec<usize>) {
        let f = self.field.clone();
        let mut det = f.one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                self.swap_rows(pr, r);
                det = f.neg(&det);
            }
            let pivot = self.get(r, c).clone();
            det = f.mul(&det, &pivot);
            let pinv = f.inv(&pivot).expect("pivot nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), &pinv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let factor = self.get(i, c).clone();
                    for j in c..self.cols {
                        let v = f.sub(self.get(i, j), &f.mul(&factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (r, det, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().0
    }

    pub fn det(&self) -> Elt {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let (rank, det, _) = m.row_reduce();
        if rank < self.rows {
            self.field.zero()
        } else {
            det
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = &self.field;
        let mut aug = Mat::zero(f, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, f.one());
        }
        let (rank, _, pivots) = aug.row_reduce();
        // all pivots must land in the left block
        if rank < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Mat::zero(f, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Ok(inv)
    }

    /// Solve A x = b for one solution (A need not be square); None when
    /// inconsistent.
    pub fn solve(&self, b: &[Elt]) -> Option<Vect> {
        assert_eq!(self.rows, b.len());
        let f = &self.field;
        let mut aug = Mat::zero(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let (_, _, pivots) = aug.row_reduce();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the null space of A (as column vectors).
    pub fn null_space(&self) -> Vec<Vect> {
        let f = &self.field;
        let mut m = self.clone();
        let (_, _, pivots) = m.row_reduce();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, fc));
            }
            basis.push(v);
        }
        basis
    }
}

/// x^T A y for a square matrix A.
pub fn bilinear(a: &Mat, x: &[Elt], y: &[Elt]) -> Elt {
    let f = &a.field;
    let ay = a.mul_vec(y);
    let mut acc = f.zero();
    for (xi, ayi) in x.iter().zip(&ay) {
        acc = f.add(&acc, &f.mul(xi, ayi));
    }
    acc
}

pub fn vec_add(f: &Field, x: &[Elt], y: &[Elt]) -> Vect {
    x.iter().zip(y).map(|(a, b)| f.add(a, b)).collect()
}

pub fn vec_sub(f: &Field, x: &[Elt], y: &[Elt]) -> Vect {
    x.iter().zip(y).map(|(a, b)| f.sub(a, b)).collect()
}

pub fn vec_scale(f: &Field, s: &Elt, x: &[Elt]) -> Vect {
    x.iter().map(|a| f.mul(s, a)).collect()
}

pub fn vec_is_zero(x: &[Elt]) -> bool {
    x.iter().all(|a| a.is_zero())
}
