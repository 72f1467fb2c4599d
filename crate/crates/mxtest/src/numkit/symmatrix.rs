//! Small dense symmetric matrices with spectral helpers.
//!
//! Storage is the packed upper triangle, so symmetry is exact by
//! construction. Eigendecomposition is cyclic Jacobi: at the dimensions used
//! here (conditional covariances, d <= 16; knockoff covariances, m <= ~50)
//! simplicity and accuracy matter more than speed.

use super::matrix::Matrix;
use super::NumError;

/// Symmetric matrix; the upper triangle is the source of truth.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    // packed upper triangle, row by row: (0,0) (0,1) .. (0,n-1) (1,1) ..
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "SymMatrix dimension must be positive");
        SymMatrix {
            dim,
            data: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = SymMatrix::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Builds from an upper-triangle generator f(i, j) with i <= j.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// 1x1 convenience.
    pub fn scalar(v: f64) -> Self {
        SymMatrix::from_diag(&[v])
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        let (r, c) = if i <= j { (i, j) } else { (j, i) };
        r * self.dim - r * (r + 1) / 2 + c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[self.idx(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = self.idx(i, j);
        self.data[k] = v;
    }

    pub fn scale(&self, c: f64) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| c * v).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// self * v
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn frob_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                s += self.get(i, j).powi(2);
            }
        }
        s.sqrt()
    }

    /// Eigendecomposition via cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues (ascending) and the matching eigenvectors as
    /// columns of the returned matrix.
    pub fn eigen(&self) -> (Vec<f64>, Matrix) {
        let n = self.dim;
        // unpack to full working copy
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                a[i][j] = self.get(i, j);
            }
        }
        let mut v = vec![vec![0.0; n]; n];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = 1.0;
        }

        let off = |a: &Vec<Vec<f64>>| -> f64 {
            let mut s = 0.0;
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        s += a[i][j] * a[i][j];
                    }
                }
            }
            s.sqrt()
        };
        let scale: f64 = self.frob_norm().max(1e-300);

        for _sweep in 0..100 {
            if off(&a) <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[p][q];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = c * akp - s * akq;
                        a[k][q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = c * apk - s * aqk;
                        a[q][k] = s * apk + c * aqk;
                    }
                    for row in v.iter_mut() {
                        let vp = row[p];
                        let vq = row[q];
                        row[p] = c * vp - s * vq;
                        row[q] = s * vp + c * vq;
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
        let vectors = Matrix::from_fn(n, n, |i, j| v[i][order[j]]);
        (eigenvalues, vectors)
    }

    /// PSD check: all eigenvalues >= -tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        let (ev, _) = self.eigen();
        ev.iter().all(|&l| l >= -tol)
    }

    /// Applies a scalar function to the spectrum: V f(L) V^T.
    fn spectral_map(&self, f: impl Fn(f64) -> f64) -> SymMatrix {
        let (ev, vecs) = self.eigen();
        let mapped: Vec<f64> = ev.iter().map(|&l| f(l)).collect();
        let n = self.dim;
        SymMatrix::from_fn(n, |i, j| {
            (0..n)
                .map(|k| vecs.get(i, k) * mapped[k] * vecs.get(j, k))
                .sum()
        })
    }

    fn check_spd(&self, eig_tol: f64) -> Result<(Vec<f64>, f64), NumError> {
        let (ev, _) = self.eigen();
        let max = ev.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = ev[0];
        if !(min > eig_tol * max.max(0.0)) || max <= 0.0 {
            return Err(NumError::Singular { eigenvalue: min });
        }
        Ok((ev, max))
    }

    /// Inverse square root: returns A with A * self * A = I.
    ///
    /// Requires the smallest eigenvalue to exceed `eig_tol` times the
    /// largest; the default tolerance is 1e-12.
    pub fn inv_sqrt(&self) -> Result<SymMatrix, NumError> {
        self.inv_sqrt_tol(1e-12)
    }

    pub fn inv_sqrt_tol(&self, eig_tol: f64) -> Result<SymMatrix, NumError> {
        self.check_spd(eig_tol)?;
        Ok(self.spectral_map(|l| 1.0 / l.sqrt()))
    }

    /// PSD square root (negative eigenvalues within tolerance clip to 0).
    pub fn sqrt_psd(&self) -> Result<SymMatrix, NumError> {
        let (ev, _) = self.eigen();
        let max = ev.iter().cloned().fold(0.0f64, f64::max);
        if ev[0] < -1e-10 * max.max(1.0) {
            return Err(NumError::Singular { eigenvalue: ev[0] });
        }
        Ok(self.spectral_map(|l| l.max(0.0).sqrt()))
    }

    /// Inverse via the spectrum; same tolerance policy as `inv_sqrt`.
    pub fn inverse(&self) -> Result<SymMatrix, NumError> {
        self.check_spd(1e-12)?;
        Ok(self.spectral_map(|l| 1.0 / l))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigen().0[0]
    }

    /// Cholesky factor L (lower triangular, as a dense Matrix) with
    /// L L^T = self. Errors if the matrix is not positive definite.
    pub fn cholesky(&self) -> Result<Matrix, NumError> {
        let n = self.dim;
        let mut l = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self.get(i, j);
                for k in 0..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                if i == j {
                    if s <= 0.0 {
                        return Err(NumError::Singular { eigenvalue: s });
                    }
                    l.set(i, j, s.sqrt());
                } else {
                    l.set(i, j, s / l.get(j, j));
                }
            }
        }
        Ok(l)
    }

    /// Solves self * x = b via Cholesky.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>, NumError> {
        let l = self.cholesky()?;
        let n = self.dim;
        assert_eq!(b.len(), n);
        let mut y = vec![0.0; n];
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= l.get(i, k) * y[k];
            }
            y[i] = s / l.get(i, i);
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in (i + 1)..n {
                s -= l.get(k, i) * x[k];
            }
            x[i] = s / l.get(i, i);
        }
        Ok(x)
    }

    /// self * other * self for symmetric `other` (congruence with itself as
    /// the sandwich); used for reconstruction checks in tests.
    pub fn sandwich(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        // t = other * self
        let mut t = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                t[i][j] = (0..n).map(|k| other.get(i, k) * self.get(k, j)).sum();
            }
        }
        SymMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * t[k][j]).sum())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_storage_is_symmetric() {
        let mut m = SymMatrix::zeros(3);
        m.set(0, 2, 5.0);
        assert_eq!(m.get(2, 0), 5.0);
        m.set(2, 1, -1.5);
        assert_eq!(m.get(1, 2), -1.5);
    }

    #[test]
    fn eigen_diag() {
        let m = SymMatrix::from_diag(&[3.0, 1.0, 2.0]);
        let (ev, _) = m.eigen();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!((ev[1] - 2.0).abs() < 1e-12);
        assert!((ev[2] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_2x2_closed_form() {
        // [[2, 1], [1, 2]] has eigenvalues 1 and 3
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let (ev, vecs) = m.eigen();
        assert!((ev[0] - 1.0).abs() < 1e-12);
        assert!((ev[1] - 3.0).abs() < 1e-12);
        // eigenvector for 3 is (1,1)/sqrt(2) up to sign
        let r = (vecs.get(0, 1) / vecs.get(1, 1) - 1.0).abs();
        assert!(r < 1e-10);
    }

    #[test]
    fn inv_sqrt_identity_and_diag() {
        let id = SymMatrix::identity(4);
        let a = id.inv_sqrt().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((a.get(i, j) - want).abs() < 1e-12);
            }
        }
        let d = SymMatrix::from_diag(&[4.0, 9.0]);
        let a = d.inv_sqrt().unwrap();
        assert!((a.get(0, 0) - 0.5).abs() < 1e-12);
        assert!((a.get(1, 1) - 1.0 / 3.0).abs() < 1e-12);
        assert!(a.get(0, 1).abs() < 1e-14);
    }

    #[test]
    fn inv_sqrt_reconstruction() {
        // random-ish PSD built as G^T G + small ridge
        let g = [
            [0.3, -1.2, 0.5],
            [1.1, 0.4, -0.7],
            [-0.2, 0.9, 1.3],
        ];
        let s = SymMatrix::from_fn(3, |i, j| {
            (0..3).map(|k| g[k][i] * g[k][j]).sum::<f64>() + if i == j { 0.05 } else { 0.0 }
        });
        let a = s.inv_sqrt().unwrap();
        let recon = a.sandwich(&s);
        let mut err = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                err += (recon.get(i, j) - want).powi(2);
            }
        }
        assert!(err.sqrt() < 1e-8, "frobenius error {}", err.sqrt());
    }

    #[test]
    fn inv_sqrt_flags_near_singular() {
        let s = SymMatrix::from_diag(&[1.0, 1e-15]);
        match s.inv_sqrt() {
            Err(NumError::Singular { eigenvalue }) => {
                assert!(eigenvalue.abs() < 1e-12);
            }
            other => panic!("expected singularity error, got {other:?}"),
        }
    }

    #[test]
    fn cholesky_solve_roundtrip() {
        let s = SymMatrix::from_fn(3, |i, j| if i == j { 4.0 } else { 1.0 });
        let x_true = vec![1.0, -2.0, 0.5];
        let b = s.apply(&x_true);
        let x = s.solve(&b).unwrap();
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let s = SymMatrix::from_diag(&[1.0, -0.5]);
        assert!(s.cholesky().is_err());
        assert!(!s.is_psd(1e-12));
    }

    #[test]
    fn sqrt_psd_squares_back() {
        let s = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 0.5 });
        let r = s.sqrt_psd().unwrap();
        let sq = r.sandwich(&SymMatrix::identity(2));
        for i in 0..2 {
            for j in 0..2 {
                assert!((sq.get(i, j) - s.get(i, j)).abs() < 1e-10);
            }
        }
    }
}
