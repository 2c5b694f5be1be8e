//! Minimal dense linear algebra: a row-major matrix, Cholesky
//! factorization, and a symmetric tridiagonal eigensolver.
//!
//! The problem sizes here are small (a few hundred rows at most), so a
//! plain `Vec<f64>` matrix with textbook kernels is the right tool; no
//! BLAS dependency is warranted.

use alloc::vec;
use alloc::vec::Vec;

use crate::fmath;

/// Dense row-major matrix of `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        Mat { rows: r, cols: c, data }
    }

    /// Identity matrix of size `n`.
    pub fn eye(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
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
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [f64] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<f64> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    /// `A x`.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| dot(self.row(r), x))
            .collect()
    }

    /// `Aᵀ x`.
    pub fn t_matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![0.0; self.cols];
        for (r, &xr) in x.iter().enumerate() {
            if xr != 0.0 {
                for (o, &a) in out.iter_mut().zip(self.row(r)) {
                    *o += xr * a;
                }
            }
        }
        out
    }

    /// Gram matrix of the columns, `AᵀA`.
    pub fn gram(&self) -> Mat {
        let n = self.cols;
        let mut g = Mat::zeros(n, n);
        for r in 0..self.rows {
            let row = self.row(r);
            for i in 0..n {
                let ai = row[i];
                if ai != 0.0 {
                    for j in i..n {
                        g[(i, j)] += ai * row[j];
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                g[(i, j)] = g[(j, i)];
            }
        }
        g
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = f64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.cols + c]
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Cholesky factor `L` (lower triangular, row-major packed dense) of a
/// symmetric positive-definite matrix. Returns `None` if a pivot is not
/// strictly positive.
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn factor(a: &Mat) -> Option<Cholesky> {
        let n = a.rows();
        assert_eq!(a.cols(), n);
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= 0.0 {
                        return None;
                    }
                    l[i * n + i] = fmath::sqrt(s);
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Some(Cholesky { n, l })
    }

    /// Solve `A x = b` via forward/back substitution.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut y = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                y[i] -= self.l[i * n + k] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                y[i] -= self.l[k * n + i] * y[k];
            }
            y[i] /= self.l[i * n + i];
        }
        y
    }
}

fn hypot(a: f64, b: f64) -> f64 {
    let (a, b) = (fmath::abs(a), fmath::abs(b));
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    if hi == 0.0 {
        return 0.0;
    }
    let r = lo / hi;
    hi * fmath::sqrt(1.0 + r * r)
}

/// Eigen-decomposition of a symmetric tridiagonal matrix, returning the
/// eigenvalues in ascending order together with the first component of
/// each (normalized) eigenvector.
///
/// This is exactly the piece Golub–Welsch needs: for the Jacobi matrix of
/// an orthonormal polynomial family the eigenvalues are the Gauss nodes
/// and the squared first components are the Gauss weights.
///
/// Implicit-shift QL with eigenvector row accumulation.
pub fn sym_tridiag_eigen(diag: &[f64], offdiag: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    assert_eq!(offdiag.len() + 1, n, "offdiag must have n-1 entries");
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut d = diag.to_vec();
    // e[i] couples d[i] and d[i+1]; last slot is workspace.
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(offdiag);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fmath::abs(d[m]) + fmath::abs(d[m + 1]);
                if fmath::abs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 64, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            let sign_r = if g >= 0.0 { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let eigs: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let firsts: Vec<f64> = order.iter().map(|&i| z[i]).collect();
    (eigs, firsts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cholesky_solves_spd_system() {
        let a = Mat::from_rows(&[
            vec![4.0, 2.0, 0.6],
            vec![2.0, 5.0, 1.0],
            vec![0.6, 1.0, 3.0],
        ]);
        let x_true = vec![1.0, -2.0, 0.5];
        let b = a.matvec(&x_true);
        let x = Cholesky::factor(&a).expect("SPD").solve(&b);
        for (xi, ti) in x.iter().zip(&x_true) {
            assert!((xi - ti).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Mat::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(Cholesky::factor(&a).is_none());
    }

    #[test]
    fn tridiag_eigen_2x2() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3, eigenvectors (1,∓1)/√2.
        let (eigs, firsts) = sym_tridiag_eigen(&[2.0, 2.0], &[1.0]);
        assert!((eigs[0] - 1.0).abs() < 1e-14);
        assert!((eigs[1] - 3.0).abs() < 1e-14);
        for f in firsts {
            assert!((f * f - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn golub_welsch_hermite_3() {
        // Probabilists' Hermite Jacobi matrix: diag 0, offdiag sqrt(k).
        // 3-point rule: nodes ∓√3, 0; weights 1/6, 2/3, 1/6.
        let (nodes, firsts) = sym_tridiag_eigen(&[0.0; 3], &[1.0, 2f64.sqrt()]);
        let w: Vec<f64> = firsts.iter().map(|f| f * f).collect();
        assert!((nodes[0] + 3f64.sqrt()).abs() < 1e-12);
        assert!(nodes[1].abs() < 1e-12);
        assert!((nodes[2] - 3f64.sqrt()).abs() < 1e-12);
        assert!((w[0] - 1.0 / 6.0).abs() < 1e-12);
        assert!((w[1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((w[2] - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn golub_welsch_legendre_5() {
        // Uniform measure on [-1,1]: monic recurrence b_k = k²/(4k²-1);
        // Jacobi offdiag sqrt(b_k). Classical 5-point Gauss–Legendre
        // nodes, weights halved (probability normalization).
        let b: Vec<f64> = (1..5).map(|k| {
            let k = k as f64;
            k * k / (4.0 * k * k - 1.0)
        }).collect();
        let off: Vec<f64> = b.iter().map(|&x| x.sqrt()).collect();
        let (nodes, firsts) = sym_tridiag_eigen(&[0.0; 5], &off);
        let expect_nodes = [
            -0.906_179_845_938_664,
            -0.538_469_310_105_683,
            0.0,
            0.538_469_310_105_683,
            0.906_179_845_938_664,
        ];
        let expect_w = [
            0.236_926_885_056_189 / 2.0,
            0.478_628_670_499_366 / 2.0,
            0.568_888_888_888_889 / 2.0,
            0.478_628_670_499_366 / 2.0,
            0.236_926_885_056_189 / 2.0,
        ];
        for i in 0..5 {
            assert!((nodes[i] - expect_nodes[i]).abs() < 1e-12, "node {i}");
            assert!((firsts[i] * firsts[i] - expect_w[i]).abs() < 1e-12, "weight {i}");
        }
    }
}
