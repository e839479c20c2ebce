//! The entanglement witness for channel outputs of the antisymmetric
//! coherent-vacuum superposition, in two equivalent routes:
//!
//! - a closed-form average over the channel pair, exact in the infinite
//!   Hilbert space, valid for `lambda < lambda0(tau1, tau2)`;
//! - the witness matrix in the truncated Fock basis traced against a
//!   simulated output density operator.
//!
//! A negative average certifies that the output state is entangled. On pure
//! product states the average is a squared modulus, hence never negative.
//!
//! The closed form here carries the normalization of the input state, i.e.
//! the prefactor is `1 / (2 (1 - e^{-|gamma|^2}) D)`. With that factor the
//! identity-channel average at `lambda = 0` is exactly -1, the swap-operator
//! expectation on the antisymmetric state, and the value agrees with the
//! Fock-numeric trace everywhere it converges.

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::fock::{FockCutoff, FockDensity};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// A witness average below this value counts as a detection; anything closer
/// to zero is round-off.
pub const DETECTION_THRESHOLD: f64 = -1e-12;

/// Upper edge of the analytic validity range of the closed form:
/// `1 - sqrt((tau1 - 1)(tau2 - 1) / (tau1 tau2))`, always in (0, 1].
pub fn lambda_validity_limit(tau1: f64, tau2: f64) -> f64 {
    1.0 - ((tau1 - 1.0) * (tau2 - 1.0) / (tau1 * tau2)).sqrt()
}

/// Closed-form witness average on the channel-pair output of the
/// antisymmetric coherent-vacuum state with amplitude `gamma`.
///
/// Requires `lambda < lambda_validity_limit(tau1, tau2)`; beyond it the
/// denominator changes sign and the expression is meaningless. The value may
/// overflow to `-inf` very close to the limit, which still certifies
/// detection.
pub fn witness_average_closed_form(
    p1: ChannelParams,
    p2: ChannelParams,
    gamma: Complex64,
    lambda: f64,
) -> Result<f64> {
    let (t1, t2) = (p1.tau(), p2.tau());
    let lambda0 = lambda_validity_limit(t1, t2);
    if lambda >= lambda0 {
        return Err(Error::DomainError(format!(
            "lambda = {lambda} is not below the validity limit {lambda0}"
        )));
    }
    let g2 = gamma.norm_sqr();
    if g2 == 0.0 {
        return Err(Error::DegenerateState(
            "coherent superposition collapses at gamma = 0",
        ));
    }
    let (e1, e2) = (p1.eta(), p2.eta());
    let d = t1 * t2 * (1.0 - lambda).powi(2) - (t1 - 1.0) * (t2 - 1.0);
    let lam2 = lambda * (2.0 - lambda);
    let term1 = (-e1 * t1 * (1.0 - lam2 * t2) * g2 / d).exp();
    let term2 = (-e2 * t2 * (1.0 - lam2 * t1) * g2 / d).exp();
    let term3 = (-(1.0 - (e1 * t1 * e2 * t2).sqrt() * (1.0 - lambda) / d) * g2).exp();
    Ok((term1 + term2 - 2.0 * term3) / (2.0 * (1.0 - (-g2).exp()) * d))
}

/// Fock-basis witness matrix: entries `(1 - lambda)^{-(i + j + 2)}` linking
/// `|j, i>` to `<i, j|`, zero elsewhere. Real symmetric. At `lambda = 0` this
/// is the swap operator restricted to the cutoff. Requires `lambda < 1`.
pub fn witness_fock_matrix(lambda: f64, cutoff: FockCutoff) -> Result<DMatrix<f64>> {
    if lambda >= 1.0 {
        return Err(Error::DomainError(format!(
            "witness weight requires lambda < 1, got {lambda}"
        )));
    }
    let w = 1.0 / (1.0 - lambda);
    Ok(build_swap_weighted(cutoff, |i, j| w.powi((i + j + 2) as i32)))
}

/// Geometric-weight variant: entries `lambda^{i + j}` on the same swap
/// pattern and no prefactor. Defined for any real `lambda`; weights grow
/// without bound for `|lambda| > 1`.
pub fn witness_fock_matrix_geometric(lambda: f64, cutoff: FockCutoff) -> DMatrix<f64> {
    build_swap_weighted(cutoff, |i, j| lambda.powi((i + j) as i32))
}

fn build_swap_weighted(cutoff: FockCutoff, weight: impl Fn(usize, usize) -> f64) -> DMatrix<f64> {
    let d = cutoff.dim();
    let mut m = DMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m[(i * d + j, j * d + i)] = weight(i, j);
        }
    }
    m
}

/// Witness average `tr(W_lambda rho)` on a truncated density operator,
/// computed directly from the swap-pattern entries.
///
/// Errors with `CutoffTooSmall` when the weighted mass of the guard band
/// exceeds 1e-9: the weights grow toward the cutoff for `lambda > 0`, so a
/// state with appreciable population there makes the truncated trace
/// untrustworthy.
pub fn witness_average_numeric(rho: &FockDensity, lambda: f64) -> Result<f64> {
    if lambda >= 1.0 {
        return Err(Error::DomainError(format!(
            "witness weight requires lambda < 1, got {lambda}"
        )));
    }
    let cutoff = rho.cutoff();
    let d = cutoff.dim();
    let w = 1.0 / (1.0 - lambda);
    let guarded = cutoff.guarded_levels();
    let mut value = 0.0;
    let mut guard_mass = 0.0;
    for i in 0..d {
        for j in 0..d {
            let weight = w.powi((i + j + 2) as i32);
            let entry = rho.matrix()[(j * d + i, i * d + j)];
            value += weight * entry.re;
            if i.max(j) >= guarded {
                guard_mass += weight * entry.norm();
            }
        }
    }
    if guard_mass > 1e-9 {
        return Err(Error::CutoffTooSmall(format!(
            "witness weight puts {guard_mass:.3e} on the guard band at lambda = {lambda}"
        )));
    }
    Ok(value)
}

/// Parameter region where the channel pair provably preserves the
/// entanglement of the antisymmetric coherent-vacuum state (in the small
/// amplitude limit), written as the gain-branch inequalities in the extra
/// noises `a1`, `a2`.
pub fn psi_survival_region(p1: ChannelParams, p2: ChannelParams) -> bool {
    let (k1, a1) = (p1.kappa(), p1.extra_noise());
    let (k2, a2) = (p2.kappa(), p2.extra_noise());
    match (k1 < 1.0, k2 < 1.0) {
        (true, true) => {
            a1 < k1 * (1.0 + a2) / (2.0 * (1.0 + a2) - k2)
                && a2 < k2 * (1.0 + a1) / (2.0 * (1.0 + a1) - k1)
        }
        (true, false) => {
            a1 < k1 * (k2 + a2) / (k2 + 2.0 * a2)
                && a2 < 1.0 - k2 * (1.0 + a1 - k1) / (2.0 * (1.0 + a1) - k1)
        }
        (false, true) => {
            a2 < k2 * (k1 + a1) / (k1 + 2.0 * a1)
                && a1 < 1.0 - k1 * (1.0 + a2 - k2) / (2.0 * (1.0 + a2) - k2)
        }
        (false, false) => {
            a1 < 1.0 - k1 * a2 / (k2 + 2.0 * a2) && a2 < 1.0 - k2 * a1 / (k1 + 2.0 * a1)
        }
    }
}

/// The same region expressed through the attenuation/gain decomposition:
/// `2 - eta1 - tau2 (2 - eta1 - eta2) > 0` and the index-swapped partner.
/// Algebraically equivalent to [`psi_survival_region`]; kept as an
/// independent route for cross-checking.
pub fn psi_survival_region_gain_form(p1: ChannelParams, p2: ChannelParams) -> bool {
    let (e1, t1) = (p1.eta(), p1.tau());
    let (e2, t2) = (p2.eta(), p2.tau());
    let common = 2.0 - e1 - e2;
    2.0 - e1 - t2 * common > 0.0 && 2.0 - e2 - t1 * common > 0.0
}

/// Total-noise threshold below which a symmetric channel pair of gain
/// `kappa` preserves the entanglement of low-energy non-Gaussian states:
/// `sqrt(kappa^2 + 1) / 2`. Strictly above the universal Gaussian limit 1/2
/// for every `kappa > 0`.
pub fn symmetric_survival_threshold(kappa: f64) -> f64 {
    0.5 * (kappa * kappa + 1.0).sqrt()
}

/// Outcome of a witness scan over a lambda grid.
#[derive(Debug, Clone, Copy)]
pub struct Detection {
    pub detected: bool,
    /// Grid point minimizing the average, when any point evaluated finite.
    pub best_lambda: Option<f64>,
    pub min_value: f64,
}

/// Default scan grid: a coarse sweep of `[-4, lambda0)` plus geometric
/// refinement toward `lambda0`, where the minimizer migrates near the
/// detection boundary. 256 points.
pub fn default_lambda_grid(lambda0: f64) -> Vec<f64> {
    lambda_grid(lambda0, 192, 64)
}

pub fn lambda_grid(lambda0: f64, coarse: usize, refine: usize) -> Vec<f64> {
    let mut pts = Vec::with_capacity(coarse + refine);
    let lo = -4.0;
    let hi = lambda0 - 1e-6;
    if hi > lo {
        for i in 0..coarse {
            pts.push(lo + (hi - lo) * i as f64 / (coarse - 1).max(1) as f64);
        }
    }
    let span = lambda0 - lo;
    for k in 0..refine {
        let p = lambda0 - span * 0.5_f64.powi(k as i32);
        if p < lambda0 {
            pts.push(p);
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

/// Scans the closed-form average over the grid and reports whether any point
/// certifies entanglement of the channel-pair output.
pub fn detect_entanglement(
    p1: ChannelParams,
    p2: ChannelParams,
    gamma: Complex64,
    grid: &[f64],
) -> Detection {
    let lambda0 = lambda_validity_limit(p1.tau(), p2.tau());
    let mut best_lambda = None;
    let mut min_value = f64::INFINITY;
    for &lambda in grid {
        if lambda >= lambda0 {
            continue;
        }
        let Ok(v) = witness_average_closed_form(p1, p2, gamma, lambda) else {
            continue;
        };
        if v.is_nan() {
            continue;
        }
        if v < min_value {
            min_value = v;
            best_lambda = Some(lambda);
        }
    }
    Detection {
        detected: min_value < DETECTION_THRESHOLD,
        best_lambda,
        min_value,
    }
}

/// Convenience scan with the default grid.
pub fn detect_entanglement_default(
    p1: ChannelParams,
    p2: ChannelParams,
    gamma: Complex64,
) -> Detection {
    let grid = default_lambda_grid(lambda_validity_limit(p1.tau(), p2.tau()));
    detect_entanglement(p1, p2, gamma, &grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{FockState, Sign};
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn cut(d: usize) -> FockCutoff {
        FockCutoff::new(d).unwrap()
    }

    #[test]
    fn lambda_limit_values() {
        assert_eq!(lambda_validity_limit(1.0, 7.3), 1.0);
        assert_relative_eq!(lambda_validity_limit(2.0, 2.0), 0.5, max_relative = 1e-15);
        for &(t1, t2) in &[(1.0, 1.0), (1.5, 8.0), (30.0, 30.0)] {
            let l0 = lambda_validity_limit(t1, t2);
            assert!(l0 > 0.0 && l0 <= 1.0);
        }
    }

    #[test]
    fn identity_channel_average_is_swap_expectation() {
        // At lambda = 0 the witness is the swap operator, whose expectation
        // on the antisymmetric state is exactly -1.
        let id = ChannelParams::identity();
        for &g in &[0.3, 0.8, 1.5] {
            let v = witness_average_closed_form(id, id, c(g), 0.0).unwrap();
            assert_relative_eq!(v, -1.0, max_relative = 1e-13);
        }
        // cross-checked against the Fock route
        let cutoff = cut(25);
        let rho = FockState::entangled_coherent(c(0.8), cutoff).unwrap().to_density();
        let num = witness_average_numeric(&rho, 0.0).unwrap();
        assert_relative_eq!(num, -1.0, epsilon = 1e-10);
    }

    #[test]
    fn symmetric_noise_boundary_near_inverse_sqrt2() {
        // kappa = 1 pair: detection survives extra noise up to 1/sqrt(2).
        let gamma = c(1e-3);
        let below = ChannelParams::from_extra_noise(1.0, 0.70).unwrap();
        assert!(detect_entanglement_default(below, below, gamma).detected);
        let above = ChannelParams::from_extra_noise(1.0, 0.72).unwrap();
        assert!(!detect_entanglement_default(above, above, gamma).detected);
    }

    #[test]
    fn witness_matrix_entries() {
        let cutoff = cut(5);
        let w0 = witness_fock_matrix(0.0, cutoff).unwrap();
        // swap operator: ones exactly on (i,j) <-> (j,i)
        let d = cutoff.dim();
        for i in 0..d {
            for j in 0..d {
                assert_eq!(w0[(i * d + j, j * d + i)], 1.0);
            }
        }
        assert_eq!(w0[(cutoff.index(0, 1), cutoff.index(0, 1))], 0.0);

        let w = witness_fock_matrix(0.5, cutoff).unwrap();
        assert_relative_eq!(w[(cutoff.index(1, 0), cutoff.index(0, 1))], 8.0, max_relative = 1e-14);

        assert!(witness_fock_matrix(1.0, cutoff).is_err());
    }

    #[test]
    fn witness_matrix_entry_matches_quadrature_oracle() {
        // The (i=1, j=0) weight at lambda = 1/2 equals the radial integral
        // 2 int_0^inf r^3 e^{-r^2/2} dr  x  2 int_0^inf r e^{-r^2/2} dr,
        // evaluated here by midpoint quadrature.
        let s = 0.5;
        let quad = |m: u32| {
            let steps = 400_000;
            let rmax = 12.0;
            let h = rmax / steps as f64;
            let mut acc = 0.0;
            for i in 0..steps {
                let r: f64 = (i as f64 + 0.5) * h;
                acc += 2.0 * r.powi(2 * m as i32 + 1) * (-s * r * r).exp() * h;
            }
            acc
        };
        let oracle = quad(1) * quad(0);
        assert_relative_eq!(oracle, 8.0, max_relative = 1e-6);
    }

    #[test]
    fn geometric_variant_weights() {
        let cutoff = cut(4);
        let w = witness_fock_matrix_geometric(2.0, cutoff);
        assert_eq!(w[(cutoff.index(1, 2), cutoff.index(2, 1))], 8.0);
        assert_eq!(w[(cutoff.index(0, 0), cutoff.index(0, 0))], 1.0);
    }

    #[test]
    fn numeric_average_examples() {
        let cutoff = cut(16);
        let singlet = FockState::noon(1, Sign::Minus, cutoff).unwrap().to_density();
        assert_relative_eq!(witness_average_numeric(&singlet, 0.0).unwrap(), -1.0, epsilon = 1e-12);

        let mut amps = nalgebra::DVector::zeros(cutoff.pair_dim());
        amps[0] = c(1.0);
        let vac = FockState::from_amplitudes(cutoff, amps).unwrap().to_density();
        for &l in &[-1.0_f64, 0.0, 0.4] {
            let expect = (1.0 - l).powi(-2);
            assert_relative_eq!(witness_average_numeric(&vac, l).unwrap(), expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn numeric_average_guards_weighted_tail() {
        // A state sitting on the guard band with lambda > 0 must be refused.
        let cutoff = cut(8);
        let mut amps = nalgebra::DVector::zeros(cutoff.pair_dim());
        amps[cutoff.index(7, 7)] = c(1.0);
        let rho = FockState::from_amplitudes(cutoff, amps).unwrap().to_density();
        assert!(matches!(
            witness_average_numeric(&rho, 0.3),
            Err(Error::CutoffTooSmall(_))
        ));
    }

    #[test]
    fn closed_form_matches_numeric_on_noisy_channels() {
        let cutoff = cut(30);
        let cases = [
            (1.0, 0.3, 1.0, 0.3, 0.5, 0.1),
            (0.5, 0.25, 0.5, 0.25, 0.4, -0.5),
            (2.0, 0.5, 1.0, 0.0, 0.5, 0.0),
            (1.5, 0.8, 0.7, 0.3, 0.3, -0.2),
        ];
        for &(k1, m1, k2, m2, g, l) in &cases {
            let p1 = ChannelParams::new(k1, m1).unwrap();
            let p2 = ChannelParams::new(k2, m2).unwrap();
            let psi = FockState::entangled_coherent(c(g), cutoff).unwrap();
            let rho = psi
                .to_density()
                .apply(&crate::fock::KrausSet::for_channel(p1, cutoff), crate::fock::Mode::One)
                .unwrap()
                .apply(&crate::fock::KrausSet::for_channel(p2, cutoff), crate::fock::Mode::Two)
                .unwrap();
            let num = witness_average_numeric(&rho, l).unwrap();
            let cf = witness_average_closed_form(p1, p2, c(g), l).unwrap();
            assert_relative_eq!(num, cf, epsilon = 1e-8, max_relative = 1e-8);
        }
    }

    #[test]
    fn region_examples() {
        let sym = |a| ChannelParams::from_extra_noise(1.0, a).unwrap();
        assert!(psi_survival_region(sym(0.5), sym(0.5)));
        assert!(!psi_survival_region(sym(0.8), sym(0.8)));

        // quantum-limited attenuators always preserve the state
        for &k in &[0.05, 0.3, 0.9] {
            let p = ChannelParams::ql_attenuator(k).unwrap();
            assert!(psi_survival_region(p, p));
        }

        // quantum-limited amplifier paired with an equal-gain channel:
        // the partner must become entanglement breaking (a2 = 1) to kill psi
        let ql = ChannelParams::ql_amplifier(5.0).unwrap();
        let just_below = ChannelParams::from_extra_noise(5.0, 0.999).unwrap();
        let just_above = ChannelParams::from_extra_noise(5.0, 1.001).unwrap();
        assert!(psi_survival_region(ql, just_below));
        assert!(!psi_survival_region(ql, just_above));
    }

    #[test]
    fn region_forms_agree_on_mixed_branches() {
        for &(k1, a1, k2, a2) in &[
            (0.5, 0.2, 3.0, 0.4),
            (0.9, 0.05, 1.0, 0.6),
            (1.0, 0.1, 0.3, 0.2),
            (4.0, 0.9, 2.0, 0.3),
        ] {
            let p1 = ChannelParams::from_extra_noise(k1, a1).unwrap();
            let p2 = ChannelParams::from_extra_noise(k2, a2).unwrap();
            assert_eq!(
                psi_survival_region(p1, p2),
                psi_survival_region_gain_form(p1, p2),
                "(k1, a1, k2, a2) = ({k1}, {a1}, {k2}, {a2})"
            );
        }
    }

    #[test]
    fn symmetric_threshold_values() {
        assert_relative_eq!(
            symmetric_survival_threshold(1.0),
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
        assert_relative_eq!(symmetric_survival_threshold(1e-9), 0.5, epsilon = 1e-12);
        for &k in &[0.01, 0.3, 1.0, 5.0, 50.0] {
            assert!(symmetric_survival_threshold(k) > 0.5);
        }
    }

    #[test]
    fn symmetric_region_boundary_matches_threshold() {
        // At kappa1 = kappa2 the region boundary in extra noise equals
        // (sqrt(kappa^2 + 1) - |kappa - 1|) / 2.
        for &k in &[0.2_f64, 0.7, 1.0, 2.0, 6.0] {
            let a_star = 0.5 * ((k * k + 1.0).sqrt() - (k - 1.0_f64).abs());
            let inside = ChannelParams::from_extra_noise(k, a_star - 1e-9).unwrap();
            let outside = ChannelParams::from_extra_noise(k, a_star + 1e-9).unwrap();
            assert!(psi_survival_region(inside, inside), "kappa = {k}");
            assert!(!psi_survival_region(outside, outside), "kappa = {k}");
            assert_relative_eq!(
                inside.mu() + 1e-9,
                symmetric_survival_threshold(k),
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn detection_inside_region_with_small_gamma() {
        let gamma = c(1e-3);
        for &(k1, a1, k2, a2) in &[
            (0.6, 0.1, 0.8, 0.2),
            (1.0, 0.5, 1.0, 0.5),
            (2.0, 0.3, 3.0, 0.5),
            (0.8, 0.1, 1.5, 0.4),
        ] {
            let p1 = ChannelParams::from_extra_noise(k1, a1).unwrap();
            let p2 = ChannelParams::from_extra_noise(k2, a2).unwrap();
            assert!(psi_survival_region(p1, p2));
            let det = detect_entanglement_default(p1, p2, gamma);
            assert!(det.detected, "(k1, a1, k2, a2) = ({k1}, {a1}, {k2}, {a2})");
            assert!(det.best_lambda.is_some());
        }
    }

    #[test]
    fn no_detection_for_entanglement_breaking_side() {
        let gamma = c(1e-3);
        let id = ChannelParams::identity();
        for &(k, mu) in &[(1.0, 1.0), (0.5, 0.75), (3.0, 2.0)] {
            let eb = ChannelParams::new(k, mu).unwrap();
            assert!(eb.is_entanglement_breaking());
            assert!(!detect_entanglement_default(eb, id, gamma).detected);
            assert!(!detect_entanglement_default(id, eb, gamma).detected);
        }
    }

    #[test]
    fn detection_survives_at_every_probe_amplitude() {
        // below the symmetric threshold the scan fires for amplitudes from
        // the vanishing limit up to several photons, not just gamma -> 0
        for &kappa in &[0.5, 1.0, 2.0] {
            let mu = symmetric_survival_threshold(kappa) - 0.01;
            let p = ChannelParams::new(kappa, mu).unwrap();
            for &g in &[1e-3, 0.1, 0.5, 1.0, 2.0, 3.0] {
                assert!(
                    detect_entanglement_default(p, p, c(g)).detected,
                    "kappa = {kappa}, gamma = {g}"
                );
            }
        }
    }

    #[test]
    fn ql_amplifier_pair_boundary_depends_on_gain_gap() {
        // with a quantum-limited amplifier on the stronger mode, the
        // partner's survival bound stays at the entanglement-breaking noise
        // only while the gains differ by at most 2
        use crate::phase::psi_region_boundary_a2;
        for &(k1, k2) in &[(3.0, 1.5), (4.0, 2.0), (3.5, 1.5)] {
            assert!(k1 - k2 <= 2.0);
            assert_relative_eq!(psi_region_boundary_a2(k1, k2, 0.0).unwrap(), 1.0, epsilon = 1e-12);
        }
        for &(k1, k2) in &[(3.5, 1.2), (5.0, 1.5)] {
            assert!(k1 - k2 > 2.0);
            let b = psi_region_boundary_a2(k1, k2, 0.0).unwrap();
            assert!(b < 1.0, "({k1}, {k2}) gave {b}");
            assert_relative_eq!(b, k2 / (k1 - 2.0), epsilon = 1e-12);
        }
    }

    #[test]
    fn detection_is_monotone_in_extra_noise() {
        // once the scan stops firing along an extra-noise ray, it stays off
        let gamma = c(1e-3);
        for &(k1, k2, a2) in &[(1.0, 1.0, 0.3), (0.5, 2.0, 0.2), (3.0, 3.0, 0.5)] {
            let p2 = ChannelParams::from_extra_noise(k2, a2).unwrap();
            let mut lost = false;
            for i in 0..24 {
                let a1 = 0.05 * i as f64;
                let p1 = ChannelParams::from_extra_noise(k1, a1).unwrap();
                let det = detect_entanglement_default(p1, p2, gamma).detected;
                if lost {
                    assert!(!det, "detection returned at a1 = {a1} for ({k1}, {k2}, {a2})");
                }
                lost |= !det;
            }
            assert!(lost, "no annihilation up to a1 = 1.2 for ({k1}, {k2}, {a2})");
        }
    }

    #[test]
    fn closed_form_rejects_lambda_at_limit() {
        let p = ChannelParams::new(2.0, 0.5).unwrap();
        let l0 = lambda_validity_limit(p.tau(), p.tau());
        assert!(witness_average_closed_form(p, p, c(0.1), l0).is_err());
        assert!(witness_average_closed_form(p, p, c(0.1), l0 + 0.1).is_err());
        assert!(witness_average_closed_form(p, p, c(0.0), 0.0).is_err());
    }
}
