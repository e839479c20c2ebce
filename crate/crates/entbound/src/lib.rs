//! Decides when local attenuation or amplification destroys the entanglement
//! of continuous-variable states.
//!
//! The crate has two independent computational routes that cross-validate
//! each other:
//!
//! - an exact Gaussian layer ([`gaussian`], [`channel`]): covariance-matrix
//!   channel action, symplectic spectra, the two-mode separability decision,
//!   and closed-form survival/annihilation boundaries;
//! - a truncated Fock-space simulator ([`fock`]): Kraus-operator channel
//!   action on density matrices, negativity via partial transposition, and
//!   moment extraction.
//!
//! On top of those sit the entanglement witness layer ([`witness`]) with its
//! closed-form channel averages, the boundary-curve builders with CSV/JSON
//! export ([`phase`]), and the acceptance-check runners ([`verify`]).

pub mod channel;
pub mod error;
pub mod fock;
pub mod gaussian;
pub mod phase;
pub mod verify;
pub mod witness;

pub use channel::ChannelParams;
pub use error::{Error, Result};
pub use fock::{FockCutoff, FockDensity, FockState, KrausSet, Mode};
pub use gaussian::CovarianceMatrix;
