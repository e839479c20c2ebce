//! Acceptance-check runners: ten numbered criteria with pinned tolerances,
//! each reporting measured values and a pass/fail verdict. The `verify` CLI
//! subcommand and the acceptance test suite both run these.

use crate::channel::{self, ChannelParams};
use crate::fock::{FockCutoff, FockState, KrausSet, LadderOp, Mode};
use crate::gaussian::{self, CovarianceMatrix};
use crate::phase;
use crate::witness;
use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::TAU;
use std::time::Instant;

/// Knobs shared by the criteria. Defaults pin the documented values; the
/// cutoff applies to the checks specified at 30 levels (4 always runs at 40).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VerifyConfig {
    pub cutoff: usize,
    pub gamma: f64,
    pub r_asymptotic: f64,
    pub bisect_tol: f64,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            cutoff: 30,
            gamma: 1e-3,
            r_asymptotic: 10.0,
            bisect_tol: 1e-3,
            seed: 0x5eed,
        }
    }
}

/// One measured quantity within a criterion. `bound` is an inclusive upper
/// bound on `measured` when present; purely informational lines carry none.
#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub label: String,
    pub measured: f64,
    pub bound: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_s: f64,
    pub lines: Vec<CheckLine>,
}

impl CriterionReport {
    fn new(id: u32, title: &'static str) -> Self {
        Self {
            id,
            title,
            passed: true,
            elapsed_s: 0.0,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, label: impl Into<String>, measured: f64, bound: f64) {
        let pass = measured <= bound && measured.is_finite();
        self.passed &= pass;
        self.lines.push(CheckLine {
            label: label.into(),
            measured,
            bound: Some(bound),
            pass,
        });
    }

    fn require(&mut self, label: impl Into<String>, ok: bool) {
        self.passed &= ok;
        self.lines.push(CheckLine {
            label: label.into(),
            measured: if ok { 1.0 } else { 0.0 },
            bound: None,
            pass: ok,
        });
    }

    fn info(&mut self, label: impl Into<String>, measured: f64) {
        self.lines.push(CheckLine {
            label: label.into(),
            measured,
            bound: None,
            pass: true,
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Gaussian,
    Fock,
    Witness,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u32> {
        match self {
            Suite::Gaussian => vec![1, 2, 3],
            Suite::Fock => vec![4, 10],
            Suite::Witness => vec![5, 6, 7, 8, 9],
            Suite::All => (1..=10).collect(),
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CriterionReport> {
    suite
        .criteria()
        .into_iter()
        .map(|id| run_criterion(id, cfg))
        .collect()
}

pub fn run_criterion(id: u32, cfg: &VerifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut report = match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        _ => panic!("criterion ids run from 1 to 10, got {id}"),
    };
    report.elapsed_s = start.elapsed().as_secs_f64();
    report
}

/// Gain-independent Gaussian annihilation boundary at mu = 1/2.
fn criterion_1(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(1, "universal Gaussian boundary mu = 1/2");
    let t0 = Instant::now();
    for &kappa in &[0.2, 1.0, 2.0, 5.0] {
        let mu = phase::simon_critical_mu_symmetric(kappa, cfg.r_asymptotic, 1e-6)
            .expect("boundary in [0, 2]");
        rep.check(
            format!("kappa = {kappa}: |critical mu - 0.5|"),
            (mu - 0.5).abs(),
            cfg.bisect_tol,
        );
    }
    rep.check("runtime (s)", t0.elapsed().as_secs_f64(), 1.0);
    rep
}

/// Finite-energy survival boundary against the closed-form bound.
fn criterion_2(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(2, "finite-energy TMSV survival boundary");
    for &(kappa, energy) in &[(1.0, 1.0), (2.0, 1.0)] {
        let r = gaussian::tmsv_r_from_energy(energy);
        let mu = phase::simon_critical_mu_symmetric(kappa, r, 1e-6).expect("boundary in [0, 2]");
        let expect = channel::tmsv_survival_noise_bound(kappa, energy);
        rep.check(
            format!("kappa = {kappa}, E = {energy}: |critical mu - {expect:.5}|"),
            (mu - expect).abs(),
            cfg.bisect_tol,
        );
    }
    rep
}

/// Exactness of the two-mode annihilation condition over random gain pairs.
fn criterion_3(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(3, "two-mode annihilation boundary, random gains");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 3);
    let mut accepted = Vec::new();
    let mut tried = 0;
    while accepted.len() < 50 && tried < 2000 {
        tried += 1;
        let k1 = rng.gen_range(0.1..5.0);
        let k2 = rng.gen_range(0.1..5.0);
        let a1 = rng.gen_range(0.0..0.05);
        let mu1 = channel::quantum_limited_noise(k1) + a1;
        let target = (0.5 * (k1 + k2) - k2 * mu1) / k1;
        if (0.02..=1.9).contains(&target) {
            accepted.push((k1, mu1, k2, target));
        }
    }
    let worst = accepted
        .par_iter()
        .map(|&(k1, mu1, k2, target)| {
            let mu2 = phase::simon_critical_mu2(k1, mu1, k2, cfg.r_asymptotic, 1e-6)
                .expect("boundary in [0, 2]");
            (mu2 - target).abs()
        })
        .reduce(|| 0.0, f64::max);
    rep.info("boundary crossings sampled", accepted.len() as f64);
    rep.check("worst |bisected mu2 - formula|", worst, cfg.bisect_tol);
    rep
}

fn stage_completeness(stage: &[LadderOp], d: usize) -> Vec<f64> {
    let mut comp = vec![0.0; d];
    for op in stage {
        for (n, c) in comp.iter_mut().enumerate() {
            let r = n as isize + op.offset();
            if (0..d as isize).contains(&r) {
                *c += op.coeff(n) * op.coeff(n);
            }
        }
    }
    comp
}

/// Covariance-level channel action against the Kraus simulation at 40 levels.
fn criterion_4(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(4, "moment consistency of the Kraus simulator");
    let t0 = Instant::now();
    let d = 40;
    let cutoff = FockCutoff::new(d).expect("d >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 4);
    // Gains are capped where the 40-level truncation still supports 1e-6
    // moment accuracy on the worst input (TMSV at r = 0.7).
    let draws: Vec<(f64, f64, f64, f64, f64, f64)> = (0..20)
        .map(|_| {
            (
                rng.gen_range(0.2..1.5),
                rng.gen_range(0.0..0.15),
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..1.0),
                rng.gen_range(0.1..0.7),
            )
        })
        .collect();
    let results: Vec<(f64, f64, f64, f64)> = draws
        .par_iter()
        .enumerate()
        .map(|(i, &(kappa, a, g_norm, g_phase, g2_norm, r))| {
            let p = ChannelParams::from_extra_noise(kappa, a).expect("a >= 0");
            let ks = KrausSet::for_channel(p, cutoff);
            let (state, v_in, mean_in) = if i % 2 == 0 {
                let g1 = Complex64::from_polar(g_norm, g_phase);
                let g2 = Complex64::from_polar(g2_norm, g_phase * 0.7);
                let a1 = crate::fock::coherent_amplitudes(g1, cutoff).expect("cutoff ample");
                let a2 = crate::fock::coherent_amplitudes(g2, cutoff).expect("cutoff ample");
                let mean = nalgebra::Vector4::new(
                    2.0_f64.sqrt() * g1.re,
                    2.0_f64.sqrt() * g1.im,
                    2.0_f64.sqrt() * g2.re,
                    2.0_f64.sqrt() * g2.im,
                );
                (
                    FockState::product(cutoff, &a1, &a2).expect("lengths match"),
                    CovarianceMatrix::vacuum(2),
                    mean,
                )
            } else {
                (
                    FockState::tmsv(r, cutoff).expect("cutoff ample"),
                    CovarianceMatrix::tmsv(r),
                    nalgebra::Vector4::zeros(),
                )
            };
            let rho = state
                .to_density()
                .apply(&ks, Mode::One)
                .expect("same cutoff")
                .apply(&ks, Mode::Two)
                .expect("same cutoff");
            let (mean, cov) = rho.moments();
            let v_expect = v_in
                .transform_raw(&[(p.kappa(), p.mu()), (p.kappa(), p.mu())])
                .expect("two modes");
            let v_err = (cov.matrix() - v_expect.matrix()).amax();
            let mean_err = (mean - mean_in * p.kappa().sqrt()).amax();
            // completeness of the generated stages
            let mut att_deficit = 0.0_f64;
            let mut amp_deficit = 0.0_f64;
            let mut overshoot = 0.0_f64;
            for stage in ks.stages() {
                let comp = stage_completeness(stage, d);
                let is_gain = stage.iter().any(|op| op.offset() > 0);
                overshoot = comp
                    .iter()
                    .fold(overshoot, |acc, &c| acc.max(c - 1.0));
                if is_gain {
                    // levels the cutoff heuristic certifies for this gain
                    let certified = ((d as f64 / (8.0 * p.tau())).floor() as usize).max(1);
                    for &c in &comp[..certified.min(d)] {
                        amp_deficit = amp_deficit.max((1.0 - c).abs());
                    }
                } else {
                    for &c in &comp {
                        att_deficit = att_deficit.max((1.0 - c).abs());
                    }
                }
            }
            (v_err.max(mean_err), att_deficit, amp_deficit, overshoot)
        })
        .collect();
    let worst_moment = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_att = results.iter().map(|r| r.1).fold(0.0, f64::max);
    let worst_amp = results.iter().map(|r| r.2).fold(0.0, f64::max);
    let worst_over = results.iter().map(|r| r.3).fold(0.0, f64::max);
    rep.check("worst |V_fock - (kappa V + mu I)| and mean error", worst_moment, 1e-6);
    rep.check("attenuator-stage completeness deficit (all levels)", worst_att, 1e-9);
    rep.check("amplifier-stage deficit on heuristic-certified levels", worst_amp, 1e-9);
    rep.check("over-completeness above identity", worst_over, 1e-9);
    rep.check("runtime (s)", t0.elapsed().as_secs_f64(), 60.0);
    rep
}

/// Closed-form witness average against the Fock-numeric trace.
fn criterion_5(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(5, "witness closed form vs Fock numerics");
    let cutoff = FockCutoff::new(cfg.cutoff).expect("d >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 5);
    // oversample; points whose weighted tail the cutoff cannot support are
    // skipped by the numeric route's guard
    let candidates: Vec<(f64, f64, f64, f64, f64, f64, f64)> = (0..1200)
        .map(|_| {
            (
                rng.gen_range(0.2..2.0),
                rng.gen_range(0.0..0.4),
                rng.gen_range(0.2..2.0),
                rng.gen_range(0.0..0.4),
                rng.gen_range(0.05..0.5),
                rng.gen_range(0.0..TAU),
                rng.gen_range(0.0..1.0),
            )
        })
        .collect();
    let mut errs: Vec<f64> = Vec::with_capacity(200);
    for chunk in candidates.chunks(64) {
        let batch: Vec<f64> = chunk
            .par_iter()
            .filter_map(|&(k1, a1, k2, a2, gn, gp, u)| {
                let p1 = ChannelParams::from_extra_noise(k1, a1).ok()?;
                let p2 = ChannelParams::from_extra_noise(k2, a2).ok()?;
                let lam_hi = (witness::lambda_validity_limit(p1.tau(), p2.tau()) - 0.05).min(0.6);
                if lam_hi <= -2.0 {
                    return None;
                }
                let lambda = -2.0 + u * (lam_hi + 2.0);
                let gamma = Complex64::from_polar(gn, gp);
                let psi = FockState::entangled_coherent(gamma, cutoff).ok()?;
                let rho = psi
                    .to_density()
                    .apply(&KrausSet::for_channel(p1, cutoff), Mode::One)
                    .ok()?
                    .apply(&KrausSet::for_channel(p2, cutoff), Mode::Two)
                    .ok()?;
                let numeric = witness::witness_average_numeric(&rho, lambda).ok()?;
                let closed = witness::witness_average_closed_form(p1, p2, gamma, lambda).ok()?;
                Some((numeric - closed).abs())
            })
            .collect();
        errs.extend(batch);
        if errs.len() >= 200 {
            break;
        }
    }
    let n = errs.len().min(200);
    let worst = errs[..n].iter().fold(0.0_f64, |a, &b| a.max(b));
    rep.require("200 convergent sweep points", n == 200);
    rep.check("worst |closed - numeric|", worst, 1e-6);
    rep
}

/// Witness-scan bisection of the symmetric survival threshold.
fn criterion_6(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(6, "symmetric non-Gaussian threshold sqrt(kappa^2+1)/2");
    let gamma = Complex64::new(cfg.gamma, 0.0);
    for &kappa in &[0.1, 0.5, 1.0, 2.0, 5.0] {
        let thr = witness::symmetric_survival_threshold(kappa);
        let below = ChannelParams::new(kappa, thr - 0.01).expect("valid");
        let above = ChannelParams::new(kappa, thr + 0.01).expect("valid");
        rep.require(
            format!("kappa = {kappa}: detection fires at threshold - 0.01"),
            witness::detect_entanglement_default(below, below, gamma).detected,
        );
        rep.require(
            format!("kappa = {kappa}: no detection at threshold + 0.01"),
            !witness::detect_entanglement_default(above, above, gamma).detected,
        );
        let mu = phase::witness_critical_mu_symmetric(kappa, cfg.gamma, 1e-6)
            .expect("threshold above quantum limit");
        rep.check(
            format!("kappa = {kappa}: |bisected mu - threshold|"),
            (mu - thr).abs(),
            cfg.bisect_tol,
        );
    }
    // finite-amplitude bias: halving gamma must not move the boundary
    let b1 = phase::witness_critical_mu_symmetric(1.0, cfg.gamma, 1e-8).expect("bracketed");
    let b2 = phase::witness_critical_mu_symmetric(1.0, cfg.gamma / 2.0, 1e-8).expect("bracketed");
    rep.check("boundary shift under gamma -> gamma/2", (b1 - b2).abs(), 1e-6);
    rep
}

/// Witness positivity on product states.
fn criterion_7(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(7, "witness positivity on product states");
    let d = 12;
    let cutoff = FockCutoff::new(d).expect("d >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 7);
    let mut min_val = f64::INFINITY;
    for &lambda in &[-1.0, 0.0, 0.3, 0.6] {
        let w = witness::witness_fock_matrix(lambda, cutoff).expect("lambda < 1");
        for _ in 0..250 {
            let xi = random_state_vector(&mut rng, d);
            let ups = random_state_vector(&mut rng, d);
            let prod = FockState::product(cutoff, &xi, &ups).expect("lengths match");
            let amps = prod.amplitudes();
            let mut val = 0.0;
            for i in 0..d * d {
                for j in 0..d * d {
                    if w[(i, j)] != 0.0 {
                        val += w[(i, j)] * (amps[i].conj() * amps[j]).re;
                    }
                }
            }
            min_val = min_val.min(val);
        }
    }
    rep.check("-(minimum product-state average)", -min_val, 1e-12);
    rep
}

fn random_state_vector(rng: &mut ChaCha8Rng, d: usize) -> DVector<Complex64> {
    let mut v = DVector::from_fn(d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    let norm = v.norm();
    v /= Complex64::new(norm, 0.0);
    v
}

/// The two printed forms of the survival region are the same set.
fn criterion_8(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(8, "survival-region forms agree");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 8);
    let mut disagreements = 0u64;
    for _ in 0..100_000 {
        let p1 = ChannelParams::from_extra_noise(rng.gen_range(0.05..6.0), rng.gen_range(0.0..2.0))
            .expect("a >= 0");
        let p2 = ChannelParams::from_extra_noise(rng.gen_range(0.05..6.0), rng.gen_range(0.0..2.0))
            .expect("a >= 0");
        if witness::psi_survival_region(p1, p2) != witness::psi_survival_region_gain_form(p1, p2) {
            disagreements += 1;
        }
    }
    rep.check("disagreements over 1e5 draws", disagreements as f64, 0.0);
    rep
}

/// The non-Gaussian threshold beats the Gaussian 1/2 line everywhere.
fn criterion_9(_cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(9, "non-Gaussian advantage at every gain");
    let mut grid = phase::log_grid(0.05, 8.0, 101);
    grid.push(0.3);
    let min_gap = grid
        .iter()
        .map(|&k| witness::symmetric_survival_threshold(k) - 0.5)
        .fold(f64::INFINITY, f64::min);
    rep.require("threshold - 1/2 > 0 on the full grid", min_gap > 0.0);
    rep.info("smallest advantage on the grid", min_gap);
    rep.check(
        "|threshold(0.3) - 0.522015325445528|",
        (witness::symmetric_survival_threshold(0.3) - 0.522_015_325_445_527_5).abs(),
        1e-13,
    );
    rep
}

/// Entanglement-breaking channels leave nothing to detect.
fn criterion_10(cfg: &VerifyConfig) -> CriterionReport {
    let mut rep = CriterionReport::new(10, "null results on entanglement-breaking channels");
    let cutoff = FockCutoff::new(cfg.cutoff).expect("d >= 2");
    let gamma = Complex64::new(0.5, 0.0);
    let id = ChannelParams::identity();
    let mut worst_neg = 0.0_f64;
    let mut detections = 0;
    for &(kappa, mu) in &[(1.0, 1.0), (0.5, 0.75), (3.0, 2.0)] {
        let eb = ChannelParams::new(kappa, mu).expect("valid");
        assert!(eb.is_entanglement_breaking());
        let ks = KrausSet::for_channel(eb, cutoff);
        for state in [
            FockState::entangled_coherent(gamma, cutoff).expect("cutoff ample"),
            FockState::tmsv(0.5, cutoff).expect("cutoff ample"),
        ] {
            let rho = state.to_density().apply(&ks, Mode::One).expect("same cutoff");
            worst_neg = worst_neg.max(rho.negativity().expect("eigensolver"));
        }
        let probe = Complex64::new(cfg.gamma, 0.0);
        if witness::detect_entanglement_default(eb, id, probe).detected
            || witness::detect_entanglement_default(id, eb, probe).detected
        {
            detections += 1;
        }
    }
    rep.check("worst negativity after one-sided EB channel", worst_neg, 1e-9);
    rep.check("witness detections on EB outputs", detections as f64, 0.0);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_partition_the_criteria() {
        let mut all: Vec<u32> = Suite::Gaussian
            .criteria()
            .into_iter()
            .chain(Suite::Fock.criteria())
            .chain(Suite::Witness.criteria())
            .collect();
        all.sort_unstable();
        assert_eq!(all, Suite::All.criteria());
    }

    #[test]
    fn fast_criteria_pass_with_defaults() {
        let cfg = VerifyConfig::default();
        for id in [1, 2, 8, 9] {
            let rep = run_criterion(id, &cfg);
            assert!(rep.passed, "criterion {id}: {:?}", rep.lines);
        }
    }
}
