//! Dense exact linear algebra over the Gaussian rationals.
//!
//! Vectors are rows (`Vec<GaussScalar>`); a linear map is applied by the
//! caller, so only spans, kernels and quotients live here.

use num_traits::{One, Zero};

use crate::scalars::GaussScalar;

pub type Vector = Vec<GaussScalar>;

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![GaussScalar::zero(); rows * cols],
        }
    }

    /// Builds a matrix from equal-length rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            m.data[r * cols..(r + 1) * cols].clone_from_slice(row);
        }
        m
    }

    /// The matrix whose columns are `cols` (each of length `rows`).
    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        Matrix::from_rows(cols, rows).transpose()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &GaussScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussScalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[GaussScalar]) -> Vector {
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(GaussScalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("nonzero pivot");
            for k in c..self.cols {
                let v = self.get(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for k in c..self.cols {
                    let v = self.get(i, k) - &(&factor * self.get(r, k));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vector> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussScalar::zero(); self.cols];
                v[f] = GaussScalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f);
                }
                v
            })
            .collect()
    }
}

/// Row-reduced basis of the span of `vectors` (all of length `dim`).
pub fn span_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let (m, pivots) = Matrix::from_rows(vectors, dim).rref();
    (0..pivots.len()).map(|r| m.row(r).to_vec()).collect()
}

/// Representatives of `span(kernel) / span(image)`, assuming the image lies in the kernel.
///
/// Kernel vectors are first cleared on the image's pivot columns, then row
/// reduced; columns earlier in the ambient order take precedence as pivots.
pub fn quotient_basis(kernel: &[Vector], image: &[Vector], dim: usize) -> Vec<Vector> {
    let im = span_basis(image, dim);
    let (im_m, im_piv) = Matrix::from_rows(&im, dim).rref();
    let reduced: Vec<Vector> = kernel
        .iter()
        .map(|v| {
            let mut v = v.clone();
            for (r, &p) in im_piv.iter().enumerate() {
                if v[p].is_zero() {
                    continue;
                }
                let f = v[p].clone();
                for (k, x) in v.iter_mut().enumerate() {
                    *x -= &(&f * im_m.get(r, k));
                }
            }
            v
        })
        .collect();
    span_basis(&reduced, dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussScalar {
        GaussScalar::gaussian(re, im)
    }

    #[test]
    fn kernel_and_rank() {
        let m = Matrix::from_rows(&[vec![g(1, 0), g(0, 1), g(2, 0)], vec![g(0, 1), g(-1, 0), g(0, 2)]], 3);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        let inv = Matrix::from_rows(&[vec![g(1, 1), g(0, 0)], vec![g(0, 0), g(2, 0)]], 2);
        assert_eq!(inv.rank(), 2);
        assert!(inv.kernel().is_empty());
    }

    #[test]
    fn quotient_drops_image() {
        let e = |i: usize| {
            let mut v = vec![GaussScalar::zero(); 3];
            v[i] = GaussScalar::one();
            v
        };
        let kernel = vec![e(0), e(1), e(2)];
        let image = vec![vec![g(1, 0), g(1, 0), g(0, 0)]];
        let q = quotient_basis(&kernel, &image, 3);
        assert_eq!(q, vec![e(1), e(2)]);
        assert!(quotient_basis(&kernel, &kernel, 3).is_empty());
    }
}
