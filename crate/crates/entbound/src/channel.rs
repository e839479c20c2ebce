//! One-mode phase-insensitive bosonic channels and their entanglement
//! classification.
//!
//! A channel is parameterized by the power gain `kappa` (attenuation for
//! `kappa < 1`, classical-noise addition at `kappa = 1`, amplification for
//! `kappa > 1`) and the total added noise `mu` per quadrature, in units where
//! the vacuum variance is 1/2. Complete positivity requires
//! `mu >= |kappa - 1| / 2`; the excess over that quantum limit is the extra
//! noise `a`. Every such channel factors as a quantum-limited attenuator with
//! transmissivity `eta` followed by a quantum-limited amplifier with gain
//! `tau`, with `kappa = eta * tau`.

use crate::error::{Error, Result};
use serde::Serialize;

/// A valid one-mode phase-insensitive channel with its derived decomposition
/// parameters. Construction enforces `mu >= |kappa - 1| / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    kappa: f64,
    mu: f64,
    /// Extra noise above the quantum limit.
    a: f64,
    /// Transmissivity of the quantum-limited attenuator stage, in (0, 1].
    eta: f64,
    /// Gain of the quantum-limited amplifier stage, >= 1.
    tau: f64,
}

impl ChannelParams {
    /// Builds a channel from power gain and total noise.
    pub fn new(kappa: f64, mu: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa <= 0.0 || !mu.is_finite() {
            return Err(Error::InvalidChannel {
                kappa,
                mu,
                min_mu: f64::NAN,
            });
        }
        let min_mu = quantum_limited_noise(kappa);
        if mu < min_mu {
            return Err(Error::InvalidChannel { kappa, mu, min_mu });
        }
        let a = mu - min_mu;
        // The two branches of the gain formula coincide at kappa = 1.
        let tau = kappa.max(1.0) + a;
        let eta = kappa / tau;
        Ok(Self {
            kappa,
            mu,
            a,
            eta,
            tau,
        })
    }

    /// Builds a channel from power gain and extra noise above the quantum limit.
    pub fn from_extra_noise(kappa: f64, a: f64) -> Result<Self> {
        if !a.is_finite() || a < 0.0 {
            return Err(Error::InvalidChannel {
                kappa,
                mu: f64::NAN,
                min_mu: quantum_limited_noise(kappa),
            });
        }
        Self::new(kappa, quantum_limited_noise(kappa) + a)
    }

    /// The identity channel (kappa = 1, mu = 0).
    pub fn identity() -> Self {
        Self::new(1.0, 0.0).expect("identity channel is valid")
    }

    /// Quantum-limited attenuator with transmissivity `eta` in (0, 1].
    pub fn ql_attenuator(eta: f64) -> Result<Self> {
        if !eta.is_finite() || eta <= 0.0 || eta > 1.0 {
            return Err(Error::DomainError(format!(
                "attenuator transmissivity must lie in (0, 1], got {eta}"
            )));
        }
        Self::new(eta, 0.5 * (1.0 - eta))
    }

    /// Quantum-limited amplifier with gain `tau >= 1`.
    pub fn ql_amplifier(tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau < 1.0 {
            return Err(Error::DomainError(format!(
                "amplifier gain must be >= 1, got {tau}"
            )));
        }
        Self::new(tau, 0.5 * (tau - 1.0))
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn extra_noise(&self) -> f64 {
        self.a
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// True iff the channel already operates at the quantum noise limit.
    pub fn is_quantum_limited(&self) -> bool {
        self.a == 0.0
    }

    /// True iff one-sided action disentangles the mode from everything else:
    /// the extra noise reaches `min(kappa, 1)`.
    pub fn is_entanglement_breaking(&self) -> bool {
        self.a >= self.kappa.min(1.0)
    }

    /// True iff the homogeneous N-fold product of this channel maps every
    /// N-mode Gaussian state to a separable one, for every N >= 2. This
    /// holds exactly when the total noise reaches 1/2, independent of the
    /// gain and of N.
    pub fn is_gaussian_annihilating(&self) -> bool {
        self.mu >= 0.5
    }
}

/// Minimal noise `|kappa - 1| / 2` a channel of gain `kappa` must add.
pub fn quantum_limited_noise(kappa: f64) -> f64 {
    0.5 * (kappa - 1.0).abs()
}

/// Total noise at which a channel of gain `kappa` becomes entanglement
/// breaking: `|kappa - 1| / 2 + min(kappa, 1)`.
pub fn entanglement_breaking_noise(kappa: f64) -> f64 {
    quantum_limited_noise(kappa) + kappa.min(1.0)
}

/// Sufficient condition for a product of distinct channels to annihilate the
/// entanglement of every N-mode Gaussian state (N = channels.len() >= 2).
///
/// For each choice of a distinguished mode `j`, the remaining channels must
/// admit `s = min_{i != j} (2 mu_i - 1) / kappa_i >= 0` and the distinguished
/// channel must satisfy `mu_j >= (1 - s kappa_j) / 2`. The mode labeling is
/// arbitrary, so all choices of `j` are tried.
pub fn tuple_annihilates_gaussian(channels: &[ChannelParams]) -> bool {
    assert!(
        channels.len() >= 2,
        "annihilation of entanglement needs at least two modes"
    );
    (0..channels.len()).any(|j| {
        let s = channels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j)
            .map(|(_, p)| (2.0 * p.mu() - 1.0) / p.kappa())
            .fold(f64::INFINITY, f64::min);
        s >= 0.0 && channels[j].mu() >= 0.5 * (1.0 - s * channels[j].kappa())
    })
}

/// Exact (necessary and sufficient) condition for a pair of channels to
/// annihilate the entanglement of every two-mode Gaussian state:
/// `kappa_1 mu_2 + kappa_2 mu_1 >= (kappa_1 + kappa_2) / 2`.
pub fn pair_annihilates_gaussian(p1: ChannelParams, p2: ChannelParams) -> bool {
    p1.kappa() * p2.mu() + p2.kappa() * p1.mu() >= 0.5 * (p1.kappa() + p2.kappa())
}

/// Largest total noise below which a two-mode squeezed vacuum of the given
/// mean photon number survives the symmetric channel pair of gain `kappa`:
/// `[1 - kappa + kappa (sqrt(E(2+E)) - E)] / 2`.
///
/// The state stays entangled iff `mu` is strictly below the returned value.
/// The bound tends to 1/2 from below as the energy grows.
pub fn tmsv_survival_noise_bound(kappa: f64, energy: f64) -> f64 {
    let e = energy;
    0.5 * (1.0 - kappa + kappa * ((e * (2.0 + e)).sqrt() - e))
}
