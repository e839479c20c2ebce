//! Two-mode pure states in the truncated Fock basis.

use super::FockCutoff;
use crate::error::{Error, Result};
use nalgebra::DVector;
use num_complex::Complex64;

/// Largest probability mass a constructor may silently truncate away.
const TRUNCATION_MASS_TOL: f64 = 1e-8;

/// Relative sign of the two branches in a superposition state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// One-mode coherent-state amplitudes `<n|gamma> = e^{-|g|^2/2} g^n / sqrt(n!)`.
///
/// Errors with `CutoffTooSmall` when the truncated probability mass exceeds
/// 1e-8.
pub fn coherent_amplitudes(gamma: Complex64, cutoff: FockCutoff) -> Result<DVector<Complex64>> {
    let d = cutoff.dim();
    let mut amps = DVector::zeros(d);
    let g2 = gamma.norm_sqr();
    let pref = (-0.5 * g2).exp();
    let mut term = Complex64::new(pref, 0.0);
    let mut mass = 0.0;
    for n in 0..d {
        if n > 0 {
            term *= gamma / (n as f64).sqrt();
        }
        amps[n] = term;
        mass += term.norm_sqr();
    }
    let tail = (1.0 - mass).max(0.0);
    if tail > TRUNCATION_MASS_TOL {
        return Err(Error::CutoffTooSmall(format!(
            "coherent state |gamma| = {:.3} leaves mass {tail:.3e} above {d} levels",
            gamma.norm()
        )));
    }
    Ok(amps)
}

/// Normalized two-mode pure state with amplitudes indexed `(n1, n2) -> n1*d + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    cutoff: FockCutoff,
    amps: DVector<Complex64>,
}

impl FockState {
    /// Wraps and normalizes a raw amplitude vector.
    pub fn from_amplitudes(cutoff: FockCutoff, amps: DVector<Complex64>) -> Result<Self> {
        if amps.len() != cutoff.pair_dim() {
            return Err(Error::DimensionMismatch {
                expected: cutoff.pair_dim(),
                got: amps.len(),
            });
        }
        let norm = amps.norm();
        if norm < 1e-12 {
            return Err(Error::DegenerateState("amplitude vector has zero norm"));
        }
        Ok(Self {
            cutoff,
            amps: amps / Complex64::new(norm, 0.0),
        })
    }

    /// Product of two one-mode amplitude vectors.
    pub fn product(cutoff: FockCutoff, a: &DVector<Complex64>, b: &DVector<Complex64>) -> Result<Self> {
        let d = cutoff.dim();
        if a.len() != d || b.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: a.len().max(b.len()),
            });
        }
        let mut amps = DVector::zeros(d * d);
        for n1 in 0..d {
            for n2 in 0..d {
                amps[n1 * d + n2] = a[n1] * b[n2];
            }
        }
        Self::from_amplitudes(cutoff, amps)
    }

    /// The antisymmetric coherent-vacuum superposition
    /// `(|gamma>|0> - |0>|gamma>) / sqrt(2 (1 - e^{-|gamma|^2}))`.
    ///
    /// Its mean photon number is `|gamma|^2 / (1 - e^{-|gamma|^2})`, which
    /// tends to 1 as `gamma -> 0`. Errors with `DegenerateState` at
    /// `gamma = 0`, where the two branches coincide.
    pub fn entangled_coherent(gamma: Complex64, cutoff: FockCutoff) -> Result<Self> {
        if gamma.norm() == 0.0 {
            return Err(Error::DegenerateState(
                "coherent superposition collapses at gamma = 0",
            ));
        }
        let d = cutoff.dim();
        let g = coherent_amplitudes(gamma, cutoff)?;
        let mut amps = DVector::zeros(d * d);
        for n in 0..d {
            amps[n * d] += g[n]; // |gamma>|0>
            amps[n] -= g[n]; // |0>|gamma>
        }
        Self::from_amplitudes(cutoff, amps)
    }

    /// The superposition `(|n>|0> +- |0>|n>) / sqrt(2)` of `n` photons in one
    /// arm or the other.
    pub fn noon(n: usize, sign: Sign, cutoff: FockCutoff) -> Result<Self> {
        if n >= cutoff.dim() {
            return Err(Error::CutoffTooSmall(format!(
                "photon number {n} needs cutoff > {n}, have {}",
                cutoff.dim()
            )));
        }
        if n == 0 {
            return Err(Error::DegenerateState(
                "both branches equal the vacuum at n = 0",
            ));
        }
        let d = cutoff.dim();
        let mut amps = DVector::zeros(d * d);
        amps[n * d] = Complex64::new(1.0, 0.0);
        amps[n] = Complex64::new(sign.factor(), 0.0);
        Self::from_amplitudes(cutoff, amps)
    }

    /// Two-mode squeezed vacuum `sqrt(1 - tanh^2 r) sum_n tanh^n r |n, n>`.
    ///
    /// Errors with `CutoffTooSmall` when the truncated mass `tanh^{2d} r`
    /// exceeds 1e-8.
    pub fn tmsv(r: f64, cutoff: FockCutoff) -> Result<Self> {
        let d = cutoff.dim();
        let t = r.tanh();
        let tail = t.powi(2 * d as i32);
        if tail > TRUNCATION_MASS_TOL {
            return Err(Error::CutoffTooSmall(format!(
                "two-mode squeezed vacuum with r = {r} leaves mass {tail:.3e} above {d} levels"
            )));
        }
        let mut amps = DVector::zeros(d * d);
        let mut c = Complex64::new(1.0, 0.0);
        for n in 0..d {
            if n > 0 {
                c *= t;
            }
            amps[n * d + n] = c;
        }
        Self::from_amplitudes(cutoff, amps)
    }

    pub fn cutoff(&self) -> FockCutoff {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amps
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> Complex64 {
        self.amps[self.cutoff.index(n1, n2)]
    }

    /// Mean total photon number `<n1 + n2>`.
    pub fn energy(&self) -> f64 {
        let d = self.cutoff.dim();
        let mut e = 0.0;
        for n1 in 0..d {
            for n2 in 0..d {
                e += (n1 + n2) as f64 * self.amps[n1 * d + n2].norm_sqr();
            }
        }
        e
    }

    pub fn overlap(&self, other: &FockState) -> Complex64 {
        self.amps.dotc(&other.amps)
    }

    /// The state with the two modes exchanged.
    pub fn swap_modes(&self) -> FockState {
        let d = self.cutoff.dim();
        let mut amps = DVector::zeros(d * d);
        for n1 in 0..d {
            for n2 in 0..d {
                amps[n2 * d + n1] = self.amps[n1 * d + n2];
            }
        }
        FockState {
            cutoff: self.cutoff,
            amps,
        }
    }

    /// Schmidt coefficients (singular values of the amplitude matrix),
    /// sorted descending.
    pub fn schmidt_coefficients(&self) -> Vec<f64> {
        let d = self.cutoff.dim();
        let m = nalgebra::DMatrix::from_fn(d, d, |i, j| self.amps[i * d + j]);
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        sv
    }

    pub fn to_density(&self) -> super::FockDensity {
        super::FockDensity::from_pure(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn coherent_vacuum_limit() {
        let cut = FockCutoff::new(10).unwrap();
        let v = coherent_amplitudes(Complex64::new(0.0, 0.0), cut).unwrap();
        assert_eq!(v[0], c(1.0));
        assert_eq!(v[5], c(0.0));
    }

    #[test]
    fn coherent_unit_gamma_values() {
        let cut = FockCutoff::new(20).unwrap();
        let v = coherent_amplitudes(c(1.0), cut).unwrap();
        assert_relative_eq!(v[0].re, (-0.5_f64).exp(), max_relative = 1e-14);
        // norm deficit far below the tolerance at d = 20
        let mass: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        assert!(1.0 - mass < 1e-16, "deficit {}", 1.0 - mass);
    }

    #[test]
    fn coherent_cutoff_too_small() {
        let cut = FockCutoff::new(4).unwrap();
        assert!(matches!(
            coherent_amplitudes(c(2.5), cut),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    #[test]
    fn entangled_coherent_energy() {
        let cut = FockCutoff::new(25).unwrap();
        // analytic mean photon number |g|^2 / (1 - e^{-|g|^2})
        for &g in &[0.05_f64, 0.3, 1.0] {
            let s = FockState::entangled_coherent(c(g), cut).unwrap();
            let expected = g * g / (1.0 - (-g * g).exp());
            assert_relative_eq!(s.energy(), expected, max_relative = 1e-10);
        }
        // gamma -> 0 limit tends to one photon
        let s = FockState::entangled_coherent(c(1e-4), cut).unwrap();
        assert_relative_eq!(s.energy(), 1.0, epsilon = 1e-6);
        let s = FockState::entangled_coherent(c(1.0), cut).unwrap();
        assert_relative_eq!(s.energy(), 1.0 / (1.0 - (-1.0_f64).exp()), max_relative = 1e-10);
    }

    #[test]
    fn entangled_coherent_is_antisymmetric() {
        let cut = FockCutoff::new(20).unwrap();
        let s = FockState::entangled_coherent(Complex64::new(0.4, 0.3), cut).unwrap();
        let swapped = s.swap_modes();
        for i in 0..cut.pair_dim() {
            assert_relative_eq!(swapped.amplitudes()[i].re, -s.amplitudes()[i].re, epsilon = 1e-14);
            assert_relative_eq!(swapped.amplitudes()[i].im, -s.amplitudes()[i].im, epsilon = 1e-14);
        }
        assert!(matches!(
            FockState::entangled_coherent(c(0.0), cut),
            Err(Error::DegenerateState(_))
        ));
    }

    #[test]
    fn noon_state_basics() {
        let cut = FockCutoff::new(8).unwrap();
        let s = FockState::noon(1, Sign::Minus, cut).unwrap();
        assert_relative_eq!(s.amplitude(1, 0).re, 1.0 / 2.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(s.amplitude(0, 1).re, -1.0 / 2.0_f64.sqrt(), max_relative = 1e-15);
        for n in 1..6 {
            assert_relative_eq!(FockState::noon(n, Sign::Plus, cut).unwrap().energy(), n as f64, epsilon = 1e-12);
            assert_relative_eq!(FockState::noon(n, Sign::Minus, cut).unwrap().energy(), n as f64, epsilon = 1e-12);
        }
        assert!(FockState::noon(8, Sign::Minus, cut).is_err());
        assert!(FockState::noon(0, Sign::Minus, cut).is_err());
    }

    #[test]
    fn small_gamma_superposition_approaches_single_photon_state() {
        let cut = FockCutoff::new(15).unwrap();
        let s = FockState::entangled_coherent(c(1e-3), cut).unwrap();
        let target = FockState::noon(1, Sign::Minus, cut).unwrap();
        assert_relative_eq!(s.overlap(&target).norm(), 1.0, epsilon = 1e-6);
    }

    #[test]
    fn tmsv_state_values() {
        let cut = FockCutoff::new(30).unwrap();
        let s = FockState::tmsv(0.0, cut).unwrap();
        assert_relative_eq!(s.amplitude(0, 0).re, 1.0, epsilon = 1e-15);

        let s = FockState::tmsv(0.5, cut).unwrap();
        let t = 0.5_f64.tanh();
        assert_relative_eq!(s.amplitude(0, 0).norm_sqr(), 1.0 - t * t, max_relative = 1e-10);
        // Schmidt-diagonal: off-diagonal amplitudes vanish
        assert_eq!(s.amplitude(1, 2), c(0.0));

        assert!(matches!(
            FockState::tmsv(10.0, cut),
            Err(Error::CutoffTooSmall(_))
        ));
    }
}
