//! Kraus-operator sets for the phase-insensitive channels on the truncated
//! Fock space.
//!
//! Every operator generated here shifts photon number by a fixed amount, so
//! it is stored as a diagonal offset plus a coefficient per source level
//! instead of a dense matrix. A channel with both loss and gain is kept as
//! two stages (attenuator ladder, then amplifier ladder) and applied
//! stage-by-stage; materializing the d^2 composed products would buy nothing.
//!
//! The attenuator ladder is exactly trace-preserving on the truncated space.
//! The amplifier ladder loses the population that the gain would push above
//! the cutoff; the per-level deficit of `sum A^dag A` from the identity is
//! what `truncation_error` reports on the guard-band-free block.

use super::FockCutoff;
use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A single photon-number-shifting Kraus operator
/// `sum_n coeffs[n] |n + offset><n|` (entries outside `0..d` vanish).
#[derive(Debug, Clone, PartialEq)]
pub struct LadderOp {
    offset: isize,
    coeffs: Vec<f64>,
}

impl LadderOp {
    pub fn offset(&self) -> isize {
        self.offset
    }

    /// Coefficient applied to source level `n`.
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs[n]
    }

    pub fn dense(&self, cutoff: FockCutoff) -> DMatrix<Complex64> {
        let d = cutoff.dim();
        let mut m = DMatrix::zeros(d, d);
        for n in 0..d {
            let r = n as isize + self.offset;
            if (0..d as isize).contains(&r) {
                m[(r as usize, n)] = Complex64::new(self.coeffs[n], 0.0);
            }
        }
        m
    }
}

/// A finite Kraus representation of one channel on the truncated space,
/// applied as consecutive stages.
#[derive(Debug, Clone)]
pub struct KrausSet {
    cutoff: FockCutoff,
    stages: Vec<Vec<LadderOp>>,
    truncation_error: f64,
}

impl KrausSet {
    /// The identity channel: a single unit operator.
    pub fn identity(cutoff: FockCutoff) -> Self {
        let d = cutoff.dim();
        Self::from_stages(
            cutoff,
            vec![vec![LadderOp {
                offset: 0,
                coeffs: vec![1.0; d],
            }]],
        )
    }

    /// Quantum-limited attenuator of transmissivity `eta` in (0, 1]:
    /// the photon-loss ladder with binomial amplitudes.
    pub fn attenuator(eta: f64, cutoff: FockCutoff) -> Result<Self> {
        if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
            return Err(Error::DomainError(format!(
                "attenuator transmissivity must lie in (0, 1], got {eta}"
            )));
        }
        if eta == 1.0 {
            return Ok(Self::identity(cutoff));
        }
        let d = cutoff.dim();
        let mut ops = Vec::with_capacity(d);
        for k in 0..d {
            // c_{k,n} = sqrt(C(n,k) eta^(n-k) (1-eta)^k), built by recurrence
            let mut coeffs = vec![0.0; d];
            let mut c = (1.0 - eta).powi(k as i32).sqrt();
            for (n, slot) in coeffs.iter_mut().enumerate().skip(k) {
                if n > k {
                    c *= (eta * n as f64 / (n - k) as f64).sqrt();
                }
                *slot = c;
            }
            ops.push(LadderOp {
                offset: -(k as isize),
                coeffs,
            });
        }
        Ok(Self::from_stages(cutoff, vec![ops]))
    }

    /// Quantum-limited amplifier of gain `tau >= 1`: the photon-gain ladder
    /// obtained from the two-mode-squeezer dilation with a vacuum idler.
    pub fn amplifier(tau: f64, cutoff: FockCutoff) -> Result<Self> {
        if !tau.is_finite() || tau < 1.0 {
            return Err(Error::DomainError(format!(
                "amplifier gain must be >= 1, got {tau}"
            )));
        }
        if tau == 1.0 {
            return Ok(Self::identity(cutoff));
        }
        let d = cutoff.dim();
        let t = ((tau - 1.0) / tau).sqrt();
        let mut ops = Vec::with_capacity(d);
        for k in 0..d {
            // c_{k,n} = t^k tau^{-(n+1)/2} sqrt(C(n+k, k)), by recurrence
            let mut coeffs = vec![0.0; d];
            let mut c = t.powi(k as i32) / tau.sqrt();
            for (n, slot) in coeffs.iter_mut().take(d - k).enumerate() {
                if n > 0 {
                    c *= ((n + k) as f64 / (n as f64 * tau)).sqrt();
                }
                *slot = c;
            }
            ops.push(LadderOp {
                offset: k as isize,
                coeffs,
            });
        }
        Ok(Self::from_stages(cutoff, vec![ops]))
    }

    /// Kraus set of the general channel: quantum-limited attenuation with
    /// the channel's `eta` followed by quantum-limited gain `tau`. Stages
    /// that reduce to the identity are dropped.
    pub fn for_channel(params: ChannelParams, cutoff: FockCutoff) -> Self {
        let mut stages = Vec::new();
        if params.eta() < 1.0 {
            stages.extend(
                Self::attenuator(params.eta(), cutoff)
                    .expect("eta validated by ChannelParams")
                    .stages,
            );
        }
        if params.tau() > 1.0 {
            stages.extend(
                Self::amplifier(params.tau(), cutoff)
                    .expect("tau validated by ChannelParams")
                    .stages,
            );
        }
        if stages.is_empty() {
            return Self::identity(cutoff);
        }
        Self::from_stages(cutoff, stages)
    }

    fn from_stages(cutoff: FockCutoff, stages: Vec<Vec<LadderOp>>) -> Self {
        let mut set = Self {
            cutoff,
            stages,
            truncation_error: 0.0,
        };
        let comp = set.completeness_diagonal();
        set.truncation_error = comp[..cutoff.guarded_levels()]
            .iter()
            .map(|c| (1.0 - c).abs())
            .fold(0.0, f64::max);
        set
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn stages(&self) -> &[Vec<LadderOp>] {
        &self.stages
    }

    pub fn num_operators(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }

    /// Deficit of `sum A^dag A` from the identity on the guard-band-free
    /// block (levels `0..guarded_levels()`).
    pub fn truncation_error(&self) -> f64 {
        self.truncation_error
    }

    /// Errors with `CutoffTooSmall` unless the guarded-block deficit is
    /// within `bound`.
    pub fn require_truncation_error(self, bound: f64) -> Result<Self> {
        if self.truncation_error > bound {
            return Err(Error::CutoffTooSmall(format!(
                "Kraus completeness deficit {:.3e} exceeds {bound:.3e} on the guarded block",
                self.truncation_error
            )));
        }
        Ok(self)
    }

    /// Diagonal of the composed `sum A^dag A`. Photon-number shifts keep the
    /// operator diagonal, so the diagonal is the whole story; the composed
    /// value threads each stage's diagonal through the earlier stages.
    pub fn completeness_diagonal(&self) -> Vec<f64> {
        let d = self.cutoff.dim();
        let mut comp = vec![1.0; d];
        for stage in self.stages.iter().rev() {
            let mut next = vec![0.0; d];
            for op in stage {
                for (n, slot) in next.iter_mut().enumerate() {
                    let r = n as isize + op.offset;
                    if (0..d as isize).contains(&r) {
                        *slot += op.coeffs[n] * op.coeffs[n] * comp[r as usize];
                    }
                }
            }
            comp = next;
        }
        comp
    }

    /// Length of the maximal prefix of levels whose completeness deficit
    /// stays within `bound`.
    pub fn certified_levels(&self, bound: f64) -> usize {
        self.completeness_diagonal()
            .iter()
            .take_while(|&&c| (1.0 - c).abs() <= bound)
            .count()
    }
}
