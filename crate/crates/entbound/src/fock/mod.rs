//! Truncated Fock-space simulator: an oracle for the Gaussian layer that is
//! independent of covariance algebra, and the only route for non-Gaussian
//! states.
//!
//! Everything lives in a two-mode space truncated to `d` levels per mode,
//! index `(n1, n2) -> n1 * d + n2`. Amplification pushes population toward
//! the cutoff, so a guard band of top levels (one quarter of the space) is
//! excluded from accuracy guarantees; quantities weighted there are suspect
//! and the affected entry points either error out or report the deficit.

mod density;
mod kraus;
mod state;

pub use density::FockDensity;
pub use kraus::{KrausSet, LadderOp};
pub use state::{coherent_amplitudes, FockState, Sign};

use crate::error::{Error, Result};

/// Per-mode truncation dimension (levels `0..d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoff(usize);

impl FockCutoff {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DomainError(format!(
                "Fock cutoff must be at least 2, got {d}"
            )));
        }
        Ok(Self(d))
    }

    /// Levels per mode.
    pub fn dim(&self) -> usize {
        self.0
    }

    /// Dimension of the two-mode space, `d^2`.
    pub fn pair_dim(&self) -> usize {
        self.0 * self.0
    }

    /// Number of top levels excluded from accuracy guarantees.
    pub fn guard_band(&self) -> usize {
        self.0.div_ceil(4)
    }

    /// Levels covered by accuracy guarantees: `0..guarded_levels()`.
    pub fn guarded_levels(&self) -> usize {
        self.0 - self.guard_band()
    }

    /// Flat index of the two-mode basis state `|n1, n2>`.
    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 < self.0 && n2 < self.0);
        n1 * self.0 + n2
    }

    /// Smallest cutoff the amplification heuristic asks for:
    /// `max(20, ceil(8 tau (1 + n_mean)))`.
    pub fn recommended(tau: f64, mean_photons_in: f64) -> usize {
        20usize.max((8.0 * tau * (1.0 + mean_photons_in)).ceil() as usize)
    }
}

/// Which tensor factor a one-mode operation acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}
