//! Dense matrices over the ambient field and Gaussian elimination.

use crate::gf_tower::{Elem, Tower};

/// A row-major matrix of ambient field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Elem>>) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, row: &[Elem]) {
        assert_eq!(row.len(), self.cols);
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, t: &Tower) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut r = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = t.add(r.get(i, j), t.mul(a, other.get(k, j)));
                    r.set(i, j, v);
                }
            }
        }
        r
    }

    /// The row vector `v · A`.
    pub fn left_mul_vec(&self, v: &[Elem], t: &Tower) -> Vec<Elem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Elem::ZERO; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = t.add(*o, t.mul(c, a));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self, t: &Tower) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = t.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = t.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = t.sub(m.get(i, j), t.mul(f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.data.truncate(r * m.cols);
        m.rows = r;
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, t: &Tower) -> usize {
        self.rref(t).1.len()
    }

    /// A basis of `{x : A xᵀ = 0}`, as the rows of the returned matrix.
    pub fn right_kernel(&self, t: &Tower) -> Matrix {
        let (r, pivots) = self.rref(t);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(0, self.cols);
        for &f in &free {
            let mut v = vec![Elem::ZERO; self.cols];
            v[f] = Elem::ONE;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = t.neg(r.get(i, f));
            }
            k.push_row(&v);
        }
        k
    }

    /// Coefficients `x` with `x · A = v`, if `v` is in the row space.
    pub fn solve_left(&self, v: &[Elem], t: &Tower) -> Option<Vec<Elem>> {
        // solve Aᵀ xᵀ = vᵀ through the augmented matrix [Aᵀ | v]
        let mut aug = Matrix::zeros(self.cols, self.rows + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(j, i, self.get(i, j));
            }
        }
        for (j, &x) in v.iter().enumerate() {
            aug.set(j, self.rows, x);
        }
        let (r, pivots) = aug.rref(t);
        if pivots.last() == Some(&self.rows) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.rows];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.rows);
        }
        Some(x)
    }

    pub fn row_space_contains(&self, v: &[Elem], t: &Tower) -> bool {
        let mut m = self.clone();
        m.push_row(v);
        m.rank(t) == self.rank(t)
    }

    /// Whether both matrices have the same row space.
    pub fn same_row_space(&self, other: &Matrix, t: &Tower) -> bool {
        if self.cols != other.cols {
            return false;
        }
        let r = self.rank(t);
        if r != other.rank(t) {
            return false;
        }
        let mut m = self.clone();
        for i in 0..other.rows {
            m.push_row(other.row(i));
        }
        m.rank(t) == r
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = self.clone();
        m.data.extend_from_slice(&other.data);
        m.rows += other.rows;
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_solve_and_rank() {
        let t = Tower::new(2, 1, 2, 2, 3).unwrap();
        let e = |x| Elem(x);
        let a = Matrix::from_rows(4, vec![vec![e(1), e(2), e(3), e(4)], vec![e(5), e(6), e(7), e(8)], vec![e(4), e(4), e(4), e(12)]]);
        let r = a.rank(&t);
        let k = a.right_kernel(&t);
        assert_eq!(r + k.rows(), 4);
        let prod = a.mul(&k.transpose(), &t);
        assert!(prod.entries().iter().all(|x| x.is_zero()));
        let v = a.left_mul_vec(&[e(3), e(9), e(0)], &t);
        let x = a.solve_left(&v, &t).unwrap();
        assert_eq!(a.left_mul_vec(&x, &t), v);
        assert!(a.row_space_contains(&v, &t));
        assert_eq!(Matrix::identity(3).rank(&t), 3);
        assert!(a.same_row_space(&a.rref(&t).0, &t));
    }
}
