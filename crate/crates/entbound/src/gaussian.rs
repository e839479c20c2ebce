//! Covariance-matrix calculus for Gaussian states: channel action on second
//! moments, symplectic spectra, and the exact two-mode separability test.
//!
//! Quadratures are ordered `(x_1, y_1, ..., x_N, y_N)` with `[q, p] = i`, so
//! the vacuum covariance is `I/2` and a state is physical iff every
//! symplectic eigenvalue is at least 1/2.

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Default absolute tolerance for symplectic-eigenvalue comparisons.
/// Boundary states (eigenvalue exactly 1/2) classify as physical/separable.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// Real symmetric 2N x 2N second-moment matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    modes: usize,
    m: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Wraps a raw matrix, checking shape and symmetry.
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n || n == 0 || !n.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: n.max(2),
                got: m.ncols(),
            });
        }
        let scale = m.amax().max(1.0);
        for i in 0..n {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)]).abs() > 1e-10 * scale {
                    return Err(Error::DomainError(format!(
                        "covariance matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { modes: n / 2, m })
    }

    /// N-mode vacuum, covariance I/2.
    pub fn vacuum(modes: usize) -> Self {
        Self {
            modes,
            m: DMatrix::identity(2 * modes, 2 * modes) * 0.5,
        }
    }

    /// N-mode thermal state with symplectic eigenvalue `nu >= 1/2` per mode.
    pub fn thermal(nu: f64, modes: usize) -> Self {
        Self {
            modes,
            m: DMatrix::identity(2 * modes, 2 * modes) * nu,
        }
    }

    /// Two-mode squeezed vacuum with squeezing parameter `r >= 0`:
    /// diagonal blocks `cosh(2r)/2 I`, off-diagonal `sinh(2r)/2 diag(1, -1)`.
    pub fn tmsv(r: f64) -> Self {
        let c = 0.5 * (2.0 * r).cosh();
        let s = 0.5 * (2.0 * r).sinh();
        let m = DMatrix::from_row_slice(
            4,
            4,
            &[
                c, 0.0, s, 0.0, //
                0.0, c, 0.0, -s, //
                s, 0.0, c, 0.0, //
                0.0, -s, 0.0, c,
            ],
        );
        Self { modes: 2, m }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    /// Second-moment transformation of a per-mode phase-insensitive map with
    /// raw `(kappa, mu)` pairs, without requiring channel validity. Diagonal
    /// blocks pick up `kappa_i V_ii + mu_i I`, cross blocks scale by
    /// `sqrt(kappa_i kappa_j)`.
    ///
    /// This is the common backend of [`apply_channel`](Self::apply_channel)
    /// and of boundary bisections that probe noise below the quantum limit,
    /// where the map is no longer completely positive but the moment algebra
    /// is still well defined.
    pub fn transform_raw(&self, gains_noises: &[(f64, f64)]) -> Result<Self> {
        if gains_noises.len() != self.modes {
            return Err(Error::DimensionMismatch {
                expected: self.modes,
                got: gains_noises.len(),
            });
        }
        let n = 2 * self.modes;
        let mut out = DMatrix::zeros(n, n);
        for i in 0..n {
            let (ki, _) = gains_noises[i / 2];
            for j in 0..n {
                let (kj, _) = gains_noises[j / 2];
                out[(i, j)] = (ki * kj).sqrt() * self.m[(i, j)];
            }
        }
        for i in 0..n {
            out[(i, i)] += gains_noises[i / 2].1;
        }
        Ok(Self {
            modes: self.modes,
            m: out,
        })
    }

    /// Applies one valid channel per mode to the covariance matrix.
    pub fn apply_channel(&self, channels: &[ChannelParams]) -> Result<Self> {
        let raw: Vec<(f64, f64)> = channels.iter().map(|p| (p.kappa(), p.mu())).collect();
        self.transform_raw(&raw)
    }

    /// Symplectic eigenvalues: the moduli of the (pairwise conjugate)
    /// eigenvalues of `Delta V`, each pair reported once, sorted ascending.
    ///
    /// For positive-definite `V` the spectrum of `Delta V` equals that of the
    /// antisymmetric `V^(1/2) Delta V^(1/2)`, so `i V^(1/2) Delta V^(1/2)` is
    /// Hermitian with real eigenvalues `+-nu` and a symmetric eigensolver
    /// does the work.
    pub fn symplectic_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = 2 * self.modes;
        if self.m.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonConvergence);
        }
        let eig = self.m.clone().symmetric_eigen();
        if eig.eigenvalues.min() <= 0.0 {
            return Err(Error::DomainError(
                "symplectic spectrum needs a positive-definite matrix".into(),
            ));
        }
        let sqrt_vals = eig.eigenvalues.map(f64::sqrt);
        let root = &eig.eigenvectors
            * DMatrix::from_diagonal(&sqrt_vals)
            * eig.eigenvectors.transpose();
        // a = root * Delta * root, built via the row-swap action of Delta
        let mut delta_root = DMatrix::zeros(n, n);
        for j in 0..n {
            for k in 0..self.modes {
                delta_root[(2 * k, j)] = -root[(2 * k + 1, j)];
                delta_root[(2 * k + 1, j)] = root[(2 * k, j)];
            }
        }
        let a = &root * delta_root;
        let h = DMatrix::from_fn(n, n, |i, j| {
            Complex64::new(0.0, 0.5 * (a[(i, j)] - a[(j, i)]))
        });
        let vals = h
            .try_symmetric_eigen(f64::EPSILON, 100_000)
            .ok_or(Error::NonConvergence)?
            .eigenvalues;
        let mut moduli: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
        moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = moduli.last().copied().unwrap_or(0.0).max(1.0);
        let mut out = Vec::with_capacity(self.modes);
        for pair in moduli.chunks_exact(2) {
            if (pair[1] - pair[0]).abs() > 1e-6 * scale {
                return Err(Error::NonConvergence);
            }
            out.push(0.5 * (pair[0] + pair[1]));
        }
        Ok(out)
    }

    /// True iff every symplectic eigenvalue is >= 1/2 - tol.
    pub fn is_physical(&self, tol: f64) -> Result<bool> {
        Ok(self
            .symplectic_eigenvalues()?
            .iter()
            .all(|&nu| nu >= 0.5 - tol))
    }

    /// Partial transposition of the second mode: sign flip of its `y`
    /// quadrature, `V -> Lambda V Lambda` with `Lambda = diag(1, 1, 1, -1)`.
    pub fn partial_transpose(&self) -> Result<Self> {
        if self.modes != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.modes,
            });
        }
        let mut m = self.m.clone();
        for i in 0..4 {
            m[(i, 3)] = -m[(i, 3)];
        }
        for j in 0..4 {
            m[(3, j)] = -m[(3, j)];
        }
        Ok(Self { modes: 2, m })
    }

    /// Exact separability decision for two-mode Gaussian states: the state is
    /// separable iff the partially transposed covariance matrix is still
    /// physical. Boundary states count as separable.
    ///
    /// The comparison tolerance widens with the covariance scale: a
    /// backward-stable eigensolver cannot resolve a 1/2-sized eigenvalue of a
    /// matrix with 1e8-sized entries (high-squeezing states) better than
    /// `norm * eps`.
    pub fn simon_separable(&self) -> Result<bool> {
        let tol = PHYSICALITY_TOL.max(self.m.amax() * f64::EPSILON * 64.0);
        self.partial_transpose()?.is_physical(tol)
    }
}

/// Mean photon number of the two-mode squeezed vacuum: `cosh(2r) - 1`.
pub fn tmsv_energy(r: f64) -> f64 {
    (2.0 * r).cosh() - 1.0
}

/// Squeezing parameter reproducing a given mean photon number.
pub fn tmsv_r_from_energy(energy: f64) -> f64 {
    0.5 * (energy + 1.0).acosh()
}
