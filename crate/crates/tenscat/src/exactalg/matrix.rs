//! Dense matrices over a [`Ring`], row-major, with exact entries.

use super::ring::{Elem, Ring};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    elems: Vec<Elem>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.at(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Matrix {
        let z = ring.zero();
        Matrix { elems: vec![z; rows * cols], ring, rows, cols }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring.clone(), n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_fn(ring: Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut elems = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                elems.push(f(i, j));
            }
        }
        Matrix { ring, rows, cols, elems }
    }

    pub fn from_rows(ring: Ring, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        if rows.iter().any(|v| v.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let mut elems = Vec::with_capacity(r * c);
        for mut row in rows {
            for e in row.drain(..) {
                elems.push(ring.canon(e)?);
            }
        }
        Ok(Matrix { ring, rows: r, cols: c, elems })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(ring: Ring, rows: usize, cols: usize, data: &[i64]) -> Matrix {
        assert_eq!(data.len(), rows * cols, "from_i64 data length");
        let elems = data.iter().map(|v| ring.from_i64(*v)).collect();
        Matrix { ring, rows, cols, elems }
    }

    pub fn row_vector(ring: Ring, data: Vec<Elem>) -> Matrix {
        let cols = data.len();
        Matrix { ring, rows: 1, cols, elems: data }
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.elems[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.elems[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.elems[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.elems.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring.clone(), self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, elems })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let elems = self
            .elems
            .iter()
            .zip(&other.elems)
            .map(|(a, b)| self.ring.sub(a, b))
            .collect();
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, elems })
    }

    pub fn neg(&self) -> Matrix {
        let elems = self.elems.iter().map(|a| self.ring.neg(a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, elems }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let elems = self.elems.iter().map(|a| self.ring.mul(c, a)).collect();
        Matrix { ring: self.ring.clone(), rows: self.rows, cols: self.cols, elems }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "mul {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ring = self.ring.clone();
        let mut out = Matrix::zero(ring.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let p = ring.mul(a, b);
                    let cur = out.at(i, j).clone();
                    out.set(i, j, ring.add(&cur, &p));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with row-major pair ordering: entry
    /// `((i1,i2),(j1,j2)) = a[i1,j1] * b[i2,j2]`.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let ring = self.ring.clone();
        Matrix::from_fn(
            ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                ring.mul(self.at(i1, j1), other.at(i2, j2))
            },
        )
    }

    /// Stack vertically: `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols && self.rows != 0 && other.rows != 0 {
            return Err(Error::DimensionMismatch("vstack column mismatch".into()));
        }
        let cols = if self.rows == 0 { other.cols } else { self.cols };
        let mut elems = Vec::with_capacity((self.rows + other.rows) * cols);
        elems.extend(self.elems.iter().cloned());
        elems.extend(other.elems.iter().cloned());
        Ok(Matrix { ring: self.ring.clone(), rows: self.rows + other.rows, cols, elems })
    }

    /// Stack horizontally: `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows && self.cols != 0 && other.cols != 0 {
            return Err(Error::DimensionMismatch("hstack row mismatch".into()));
        }
        let rows = if self.cols == 0 { other.rows } else { self.rows };
        let mut out = Matrix::zero(self.ring.clone(), rows, self.cols + other.cols);
        for i in 0..rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.at(i, j).clone());
            }
        }
        Ok(out)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.ring.clone(), self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.at(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.at(i, j).clone());
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring.clone(), rows.len(), cols.len(), |i, j| {
            self.at(rows[i], cols[j]).clone()
        })
    }

    pub fn map_ring(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        let elems = self.elems.iter().map(f).collect();
        Matrix { ring: target.clone(), rows: self.rows, cols: self.cols, elems }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.elems.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.elems.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += c * row[b]
    pub fn add_row_multiple(&mut self, a: usize, b: usize, c: &Elem) {
        for j in 0..self.cols {
            let t = self.ring.mul(c, self.at(b, j));
            let v = self.ring.add(self.at(a, j), &t);
            self.set(a, j, v);
        }
    }

    /// col[a] += c * col[b]
    pub fn add_col_multiple(&mut self, a: usize, b: usize, c: &Elem) {
        for i in 0..self.rows {
            let t = self.ring.mul(c, self.at(i, b));
            let v = self.ring.add(self.at(i, a), &t);
            self.set(i, a, v);
        }
    }

    pub fn scale_row(&mut self, a: usize, c: &Elem) {
        for j in 0..self.cols {
            let v = self.ring.mul(c, self.at(a, j));
            self.set(a, j, v);
        }
    }

    pub fn scale_col(&mut self, a: usize, c: &Elem) {
        for i in 0..self.rows {
            let v = self.ring.mul(c, self.at(i, a));
            self.set(i, a, v);
        }
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_hand_value() {
        let z = Ring::integers();
        let a = Matrix::from_i64(z.clone(), 2, 2, &[1, 2, 3, 4]);
        let b = Matrix::from_i64(z.clone(), 1, 2, &[5, 6]);
        let k = a.kronecker(&b);
        assert_eq!(k.rows, 2);
        assert_eq!(k.cols, 4);
        let expect = Matrix::from_i64(z, 2, 4, &[5, 6, 10, 12, 15, 18, 20, 24]);
        assert_eq!(k, expect);
    }

    #[test]
    fn kronecker_associative() {
        let z = Ring::integers();
        let a = Matrix::from_i64(z.clone(), 2, 1, &[1, -2]);
        let b = Matrix::from_i64(z.clone(), 1, 3, &[3, 0, 1]);
        let c = Matrix::from_i64(z.clone(), 2, 2, &[1, 1, 0, 2]);
        let l = a.kronecker(&b).kronecker(&c);
        let r = a.kronecker(&b.kronecker(&c));
        assert_eq!(l, r);
    }

    #[test]
    fn empty_products() {
        let z = Ring::integers();
        let a = Matrix::zero(z.clone(), 0, 3);
        let b = Matrix::zero(z.clone(), 3, 2);
        let c = a.mul(&b).unwrap();
        assert_eq!((c.rows, c.cols), (0, 2));
        let d = Matrix::zero(z.clone(), 2, 0);
        let e = Matrix::zero(z.clone(), 0, 4);
        let f = d.mul(&e).unwrap();
        assert_eq!((f.rows, f.cols), (2, 4));
        assert!(f.is_zero());
    }
}
