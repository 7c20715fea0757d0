//! Dense matrices over `F_q` and the exact elimination routines the rest of the
//! crate leans on.

use crate::gf::PrimeField;

/// Row-major matrix of residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![0; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Matrix::new(r, c, data)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<u32>], dim: usize) -> Self {
        let mut m = Matrix::zeros(dim, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..dim {
                m.set(i, j, c[i]);
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, f: &PrimeField, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let q = f.q() as u64;
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u64;
                for l in 0..self.cols {
                    acc += self.get(i, l) as u64 * rhs.get(l, j) as u64;
                    if acc >= 1 << 62 {
                        acc %= q;
                    }
                }
                out.set(i, j, (acc % q) as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, f: &PrimeField, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        let q = f.q() as u64;
        (0..self.rows)
            .map(|i| {
                let acc: u64 = (0..self.cols)
                    .map(|j| self.get(i, j) as u64 * v[j] as u64 % q)
                    .sum();
                (acc % q) as u32
            })
            .collect()
    }

    pub fn scale(&self, f: &PrimeField, s: u32) -> Matrix {
        Matrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&x| f.mul(x, s)).collect(),
        )
    }

    pub fn det(&self, f: &PrimeField) -> u32 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1u32;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let p = a[col * n + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).unwrap();
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let v = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], v);
                }
            }
        }
        det
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self, f: &PrimeField) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for j in 0..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in 0..cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self, f: &PrimeField) -> Vec<Vec<u32>> {
        let mut a = self.clone();
        let pivots = a.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u32; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(a.get(r, fc));
                }
                x
            })
            .collect()
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, f: &PrimeField, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, f: &PrimeField) -> Option<Matrix> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }
}

/// Rank of a list of vectors.
pub fn rank_of(f: &PrimeField, vectors: &[Vec<u32>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).rank(f)
}

/// Extends independent vectors to a basis of `F_q^dim` with standard basis vectors,
/// returning only the added vectors.
pub fn complete_basis(f: &PrimeField, vectors: &[Vec<u32>], dim: usize) -> Vec<Vec<u32>> {
    let mut all: Vec<Vec<u32>> = vectors.to_vec();
    let mut added = Vec::new();
    for i in 0..dim {
        if all.len() == dim {
            break;
        }
        let mut e = vec![0u32; dim];
        e[i] = 1;
        all.push(e.clone());
        if rank_of(f, &all) == all.len() {
            added.push(e);
        } else {
            all.pop();
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn determinant_and_inverse() {
        let f7 = f(7);
        let m = Matrix::from_rows(&[vec![2, 1], vec![3, 4]]);
        assert_eq!(m.det(&f7), 5);
        let inv = m.inverse(&f7).unwrap();
        assert_eq!(m.mul(&f7, &inv), Matrix::identity(2));
        let sing = Matrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(sing.det(&f7), 0);
        assert!(sing.inverse(&f7).is_none());
    }

    #[test]
    fn kernel_and_solve() {
        let f5 = f(5);
        let a = Matrix::from_rows(&[vec![1, 2, 0], vec![0, 0, 1]]);
        let k = a.kernel(&f5);
        assert_eq!(k.len(), 1);
        assert_eq!(a.mul_vec(&f5, &k[0]), vec![0, 0]);
        let x = a.solve(&f5, &[3, 4]).unwrap();
        assert_eq!(a.mul_vec(&f5, &x), vec![3, 4]);
        let inconsistent = Matrix::from_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(inconsistent.solve(&f5, &[1, 1]).is_none());
    }

    #[test]
    fn basis_completion() {
        let f3 = f(3);
        let added = complete_basis(&f3, &[vec![1, 1, 0]], 3);
        assert_eq!(added.len(), 2);
        let mut all = vec![vec![1, 1, 0]];
        all.extend(added);
        assert_eq!(rank_of(&f3, &all), 3);
    }
}
