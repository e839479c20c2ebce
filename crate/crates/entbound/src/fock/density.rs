//! Two-mode density operators: Kraus-channel action, partial transposition,
//! negativity, and quadrature moments.

use super::{FockCutoff, FockState, KrausSet, LadderOp, Mode};
use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use nalgebra::{DMatrix, Vector4};
use num_complex::Complex64;

/// Eigenvalues in `[-NEGATIVITY_FLOOR, 0)` of a partial-transpose spectrum
/// are numerical noise and count as zero.
pub const NEGATIVITY_FLOOR: f64 = 1e-9;

/// Entries this far (relatively) below the largest matrix entry are treated
/// as unoccupied when bounding the support of a state during channel
/// application. The neglected contributions are orders of magnitude below
/// every tolerance in the crate.
const SUPPORT_RELATIVE_FLOOR: f64 = 1e-22;

/// Two-mode density operator on the truncated Fock space, flat index
/// `(n1, n2) -> n1 * d + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockDensity {
    cutoff: FockCutoff,
    m: DMatrix<Complex64>,
}

impl FockDensity {
    pub fn from_pure(state: &FockState) -> Self {
        let a = state.amplitudes();
        Self {
            cutoff: state.cutoff(),
            m: a * a.adjoint(),
        }
    }

    /// Wraps a raw matrix, checking Hermiticity, trace and positivity.
    pub fn from_matrix(cutoff: FockCutoff, m: DMatrix<Complex64>) -> Result<Self> {
        let n = cutoff.pair_dim();
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: m.nrows(),
            });
        }
        let scale = m.camax().max(1.0);
        for i in 0..n {
            for j in 0..=i {
                if (m[(i, j)] - m[(j, i)].conj()).norm() > 1e-10 * scale {
                    return Err(Error::DomainError(format!(
                        "density matrix is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let tr = m.diagonal().iter().map(|z| z.re).sum::<f64>();
        if !(0.0..=1.0 + 1e-9).contains(&tr) {
            return Err(Error::DomainError(format!(
                "density matrix trace {tr} outside [0, 1]"
            )));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonConvergence);
        }
        let min_eig = m.symmetric_eigenvalues().min();
        if min_eig < -NEGATIVITY_FLOOR {
            return Err(Error::DomainError(format!(
                "density matrix has eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { cutoff, m })
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.diagonal().iter().map(|z| z.re).sum()
    }

    /// Highest occupied level per mode, bounding where the matrix has
    /// non-negligible support.
    fn occupied_bands(&self) -> (usize, usize) {
        let d = self.cutoff.dim();
        let floor = self.m.camax() * SUPPORT_RELATIVE_FLOOR;
        let (mut b1, mut b2) = (0usize, 0usize);
        for (flat, z) in self.m.iter().enumerate() {
            if z.norm_sqr() > floor * floor {
                // column-major: flat = col * d^2 + row
                let row = flat % (d * d);
                let col = flat / (d * d);
                b1 = b1.max(row / d).max(col / d);
                b2 = b2.max(row % d).max(col % d);
            }
        }
        (b1, b2)
    }

    /// Applies a Kraus set to one mode: `rho -> sum_k (A_k ⊗ I) rho (A_k ⊗ I)^dag`
    /// (or `I ⊗ A_k`), stage by stage. The trace is non-increasing; the
    /// deficit is bounded by the set's truncation error on states supported
    /// below the guard band.
    pub fn apply(&self, ks: &KrausSet, mode: Mode) -> Result<FockDensity> {
        if ks.cutoff() != self.cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.cutoff.pair_dim(),
                got: ks.cutoff().pair_dim(),
            });
        }
        let mut cur = self.clone();
        for stage in ks.stages() {
            cur = cur.apply_stage(stage, mode);
        }
        Ok(cur)
    }

    fn apply_stage(&self, stage: &[LadderOp], mode: Mode) -> FockDensity {
        let d = self.cutoff.dim();
        let (b1, b2) = self.occupied_bands();
        let (bt, bo) = match mode {
            Mode::One => (b1, b2),
            Mode::Two => (b2, b1),
        };
        let mut out = DMatrix::<Complex64>::zeros(d * d, d * d);
        for op in stage {
            let o = op.offset();
            // source levels n with a valid image n + o, restricted to the band
            let n_lo = (-o).max(0) as usize;
            let n_hi = bt.min((d as isize - 1 - o.max(0)) as usize);
            if n_lo > n_hi {
                continue;
            }
            for nl in n_lo..=n_hi {
                let rl = (nl as isize + o) as usize;
                let cl = op.coeff(nl);
                if cl == 0.0 {
                    continue;
                }
                for nr in n_lo..=n_hi {
                    let rr = (nr as isize + o) as usize;
                    let w = cl * op.coeff(nr);
                    if w == 0.0 {
                        continue;
                    }
                    match mode {
                        Mode::One => {
                            for mr in 0..=bo {
                                let src_col = nr * d + mr;
                                let dst_col = rr * d + mr;
                                for ml in 0..=bo {
                                    out[(rl * d + ml, dst_col)] +=
                                        w * self.m[(nl * d + ml, src_col)];
                                }
                            }
                        }
                        Mode::Two => {
                            for mr in 0..=bo {
                                let src_col = mr * d + nr;
                                let dst_col = mr * d + rr;
                                for ml in 0..=bo {
                                    out[(ml * d + rl, dst_col)] +=
                                        w * self.m[(ml * d + nl, src_col)];
                                }
                            }
                        }
                    }
                }
            }
        }
        FockDensity {
            cutoff: self.cutoff,
            m: out,
        }
    }

    /// Index swap on the chosen mode's bra/ket sides. The result is Hermitian
    /// whenever the input is.
    pub fn partial_transpose(&self, mode: Mode) -> DMatrix<Complex64> {
        let d = self.cutoff.dim();
        let mut out = DMatrix::zeros(d * d, d * d);
        for n1 in 0..d {
            for n2 in 0..d {
                for m1 in 0..d {
                    for m2 in 0..d {
                        let v = self.m[(n1 * d + n2, m1 * d + m2)];
                        match mode {
                            Mode::Two => out[(n1 * d + m2, m1 * d + n2)] = v,
                            Mode::One => out[(m1 * d + n2, n1 * d + m2)] = v,
                        }
                    }
                }
            }
        }
        out
    }

    /// Negativity with respect to the given mode: the summed magnitude of
    /// the negative partial-transpose eigenvalues. A value above the noise
    /// floor certifies entanglement.
    pub fn negativity_via(&self, mode: Mode) -> Result<f64> {
        let pt = self.partial_transpose(mode);
        if pt.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonConvergence);
        }
        let eig = pt.symmetric_eigenvalues();
        Ok(eig
            .iter()
            .filter(|&&l| l < -NEGATIVITY_FLOOR)
            .map(|&l| -l)
            .sum())
    }

    /// Negativity via transposition of the second mode; the choice of mode
    /// does not affect the value.
    pub fn negativity(&self) -> Result<f64> {
        self.negativity_via(Mode::Two)
    }

    /// First moments `(q1, p1, q2, p2)` and the symmetrized covariance
    /// matrix, with `q = (b + b^dag)/sqrt(2)`, `p = (b - b^dag)/(i sqrt(2))`.
    /// The caller is responsible for the trace being close to one.
    pub fn moments(&self) -> (Vector4<f64>, CovarianceMatrix) {
        let d = self.cutoff.dim();
        let m = &self.m;
        let mut b1 = Complex64::default();
        let mut b2 = Complex64::default();
        let mut b1b1 = Complex64::default();
        let mut b2b2 = Complex64::default();
        let mut b1b2 = Complex64::default();
        let mut b1b2d = Complex64::default();
        let mut n1m = 0.0;
        let mut n2m = 0.0;
        for r1 in 0..d {
            for r2 in 0..d {
                let row = r1 * d + r2;
                let diag = m[(row, row)].re;
                n1m += r1 as f64 * diag;
                n2m += r2 as f64 * diag;
                if r1 >= 1 {
                    b1 += (r1 as f64).sqrt() * m[(row, (r1 - 1) * d + r2)];
                }
                if r2 >= 1 {
                    b2 += (r2 as f64).sqrt() * m[(row, r1 * d + r2 - 1)];
                }
                if r1 >= 2 {
                    b1b1 += ((r1 * (r1 - 1)) as f64).sqrt() * m[(row, (r1 - 2) * d + r2)];
                }
                if r2 >= 2 {
                    b2b2 += ((r2 * (r2 - 1)) as f64).sqrt() * m[(row, r1 * d + r2 - 2)];
                }
                if r1 >= 1 && r2 >= 1 {
                    b1b2 += ((r1 * r2) as f64).sqrt() * m[(row, (r1 - 1) * d + r2 - 1)];
                }
                if r1 >= 1 && r2 + 1 < d {
                    b1b2d += ((r1 * (r2 + 1)) as f64).sqrt() * m[(row, (r1 - 1) * d + r2 + 1)];
                }
            }
        }
        let sqrt2 = 2.0_f64.sqrt();
        let (q1, p1) = (sqrt2 * b1.re, sqrt2 * b1.im);
        let (q2, p2) = (sqrt2 * b2.re, sqrt2 * b2.im);
        let mut v = DMatrix::zeros(4, 4);
        v[(0, 0)] = 0.5 * (2.0 * b1b1.re + 1.0 + 2.0 * n1m) - q1 * q1;
        v[(1, 1)] = 0.5 * (1.0 + 2.0 * n1m - 2.0 * b1b1.re) - p1 * p1;
        v[(0, 1)] = b1b1.im - q1 * p1;
        v[(1, 0)] = v[(0, 1)];
        v[(2, 2)] = 0.5 * (2.0 * b2b2.re + 1.0 + 2.0 * n2m) - q2 * q2;
        v[(3, 3)] = 0.5 * (1.0 + 2.0 * n2m - 2.0 * b2b2.re) - p2 * p2;
        v[(2, 3)] = b2b2.im - q2 * p2;
        v[(3, 2)] = v[(2, 3)];
        v[(0, 2)] = b1b2.re + b1b2d.re - q1 * q2;
        v[(2, 0)] = v[(0, 2)];
        v[(1, 3)] = b1b2d.re - b1b2.re - p1 * p2;
        v[(3, 1)] = v[(1, 3)];
        v[(0, 3)] = b1b2.im - b1b2d.im - q1 * p2;
        v[(3, 0)] = v[(0, 3)];
        v[(1, 2)] = b1b2.im + b1b2d.im - p1 * q2;
        v[(2, 1)] = v[(1, 2)];
        let cov = CovarianceMatrix::from_matrix(v).expect("constructed symmetric");
        (Vector4::new(q1, p1, q2, p2), cov)
    }
}
