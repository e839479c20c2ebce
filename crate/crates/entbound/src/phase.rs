//! Boundary curves over channel-parameter planes, computed from the analytic
//! layer and cross-checked by bisection against the numeric criteria, with
//! deterministic CSV/JSON export.

use crate::channel::{self, ChannelParams};
use crate::error::{Error, Result};
use crate::gaussian::{self, CovarianceMatrix};
use crate::witness;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;
use std::path::Path;

/// Default agreement tolerance between analytic and bisection variants.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

/// Maximum bisection iterations.
pub const MAX_BISECT_ITER: usize = 48;

/// What a curve describes. The label doubles as the `kind` column of the
/// exported files.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// The universal Gaussian annihilation line mu = 1/2.
    Prop1Gaussian,
    /// Survival bound of the two-mode squeezed vacuum at fixed energy.
    TmsvEnergy(f64),
    /// Two-mode Gaussian annihilation boundary in the extra-noise plane at
    /// fixed gains.
    Corollary3 { kappa1: f64, kappa2: f64 },
    /// Non-Gaussian survival-region boundary in the extra-noise plane.
    Prop2RegionSlice { kappa1: f64, kappa2: f64 },
    /// Symmetric non-Gaussian survival threshold sqrt(kappa^2 + 1)/2.
    Corollary4,
    /// Noise at which a channel becomes entanglement breaking.
    EbThreshold,
    /// Complete-positivity boundary |kappa - 1|/2.
    Validity,
    /// Large-gain asymptote mu = kappa/2 of the symmetric threshold.
    AsymptoteKappaHalf,
}

impl CurveKind {
    pub fn label(&self) -> String {
        match self {
            CurveKind::Prop1Gaussian => "prop1_gaussian".into(),
            CurveKind::TmsvEnergy(e) => format!("tmsv_energy(E={e})"),
            CurveKind::Corollary3 { kappa1, kappa2 } => {
                format!("corollary3(kappa1={kappa1},kappa2={kappa2})")
            }
            CurveKind::Prop2RegionSlice { kappa1, kappa2 } => {
                format!("prop2_region_slice(kappa1={kappa1},kappa2={kappa2})")
            }
            CurveKind::Corollary4 => "corollary4".into(),
            CurveKind::EbThreshold => "eb_threshold".into(),
            CurveKind::Validity => "validity".into(),
            CurveKind::AsymptoteKappaHalf => "asymptote_kappa_half".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Analytic,
    Bisection,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::Analytic => "analytic",
            Method::Bisection => "bisection",
        }
    }
}

/// A sampled `(abscissa, critical value)` curve.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    pub kind: CurveKind,
    pub method: Method,
    pub tolerance: f64,
    pub samples: Vec<(f64, f64)>,
}

impl BoundaryCurve {
    pub fn new(kind: CurveKind, method: Method, tolerance: f64, samples: Vec<(f64, f64)>) -> Self {
        debug_assert!(samples.windows(2).all(|w| w[0].0 <= w[1].0));
        Self {
            kind,
            method,
            tolerance,
            samples,
        }
    }
}

/// `n` logarithmically spaced points covering `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

/// `n` linearly spaced points covering `[lo, hi]`.
pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1).max(1) as f64)
        .collect()
}

/// Bisects the flip point of a monotone predicate that is false at `lo` and
/// true at `hi`. The upper bracket expands automatically (by doubling the
/// interval) a few times if the predicate is still false there.
pub fn bisect_boundary(
    mut pred: impl FnMut(f64) -> Result<bool>,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<f64> {
    let mut lo = lo;
    let mut hi = hi;
    if pred(lo)? {
        // boundary at or below the bracket edge
        return Ok(lo);
    }
    let mut expansions = 0;
    while !pred(hi)? {
        expansions += 1;
        if expansions > 4 {
            return Err(Error::DomainError(format!(
                "no boundary found below {hi}"
            )));
        }
        hi += 2.0 * (hi - lo);
    }
    for _ in 0..MAX_BISECT_ITER {
        if hi - lo <= xtol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Separability for bisection probes. A numerically non-positive-definite
/// partial transpose means the smallest symplectic eigenvalue sits below the
/// f64 resolution of the matrix scale, far under 1/2, so the probe counts as
/// entangled.
fn separable_probe(v: &CovarianceMatrix) -> Result<bool> {
    match v.simon_separable() {
        Err(Error::DomainError(_)) => Ok(false),
        other => other,
    }
}

/// Critical total noise at which the channel pair
/// `(kappa1, mu1) x (kappa2, mu2)` starts to annihilate a two-mode squeezed
/// vacuum of squeezing `r`, bisected in `mu2` on the raw second-moment map so
/// that boundaries below the quantum limit remain reachable.
pub fn simon_critical_mu2(
    kappa1: f64,
    mu1: f64,
    kappa2: f64,
    r: f64,
    xtol: f64,
) -> Result<f64> {
    let v = CovarianceMatrix::tmsv(r);
    bisect_boundary(
        |mu2| separable_probe(&v.transform_raw(&[(kappa1, mu1), (kappa2, mu2)])?),
        0.0,
        2.0,
        xtol,
    )
}

/// Symmetric-pair version of [`simon_critical_mu2`].
pub fn simon_critical_mu_symmetric(kappa: f64, r: f64, xtol: f64) -> Result<f64> {
    let v = CovarianceMatrix::tmsv(r);
    bisect_boundary(
        |mu| separable_probe(&v.transform_raw(&[(kappa, mu), (kappa, mu)])?),
        0.0,
        2.0,
        xtol,
    )
}

/// Critical total noise at which the symmetric channel pair stops being
/// detected by the witness scan on the low-amplitude coherent-superposition
/// state. Bisected in `mu` over valid channels.
pub fn witness_critical_mu_symmetric(kappa: f64, gamma: f64, xtol: f64) -> Result<f64> {
    let mu_ql = channel::quantum_limited_noise(kappa);
    let g = Complex64::new(gamma, 0.0);
    bisect_boundary(
        |mu| {
            let p = ChannelParams::new(kappa, mu)?;
            Ok(!witness::detect_entanglement_default(p, p, g).detected)
        },
        mu_ql,
        mu_ql + 2.0,
        xtol,
    )
}

/// Survival curves of the two-mode squeezed vacuum in the `(kappa, mu)`
/// plane: one analytic + one bisection curve per energy, the universal 1/2
/// line, and the complete-positivity boundary. Samples where even the
/// quantum-limited channel annihilates (bound below the validity line) are
/// dropped.
pub fn curve_fig1b(energies: &[f64], kappa_grid: &[f64]) -> Vec<BoundaryCurve> {
    let mut curves = Vec::new();
    for &energy in energies {
        let r = gaussian::tmsv_r_from_energy(energy);
        let analytic: Vec<(f64, f64)> = kappa_grid
            .iter()
            .map(|&k| (k, channel::tmsv_survival_noise_bound(k, energy)))
            .filter(|&(k, mu)| mu >= channel::quantum_limited_noise(k))
            .collect();
        let bisected: Vec<(f64, f64)> = analytic
            .par_iter()
            .map(|&(k, _)| {
                let mu = simon_critical_mu_symmetric(k, r, DEFAULT_TOLERANCE / 20.0)
                    .expect("boundary bracketed in [0, 2]");
                (k, mu)
            })
            .collect();
        curves.push(BoundaryCurve::new(
            CurveKind::TmsvEnergy(energy),
            Method::Analytic,
            DEFAULT_TOLERANCE,
            analytic,
        ));
        curves.push(BoundaryCurve::new(
            CurveKind::TmsvEnergy(energy),
            Method::Bisection,
            DEFAULT_TOLERANCE,
            bisected,
        ));
    }
    curves.push(BoundaryCurve::new(
        CurveKind::Prop1Gaussian,
        Method::Analytic,
        DEFAULT_TOLERANCE,
        kappa_grid.iter().map(|&k| (k, 0.5)).collect(),
    ));
    curves.push(BoundaryCurve::new(
        CurveKind::Validity,
        Method::Analytic,
        DEFAULT_TOLERANCE,
        kappa_grid
            .iter()
            .map(|&k| (k, channel::quantum_limited_noise(k)))
            .collect(),
    ));
    curves
}

/// Extra-noise plane boundary of two-mode Gaussian annihilation at fixed
/// gains: `a2` as a function of `a1`, analytic plus a Simon bisection
/// cross-check on a high-squeezing two-mode squeezed vacuum.
pub fn curve_fig2b(kappa1: f64, kappa2: f64, a1_grid: &[f64], r: f64) -> Vec<BoundaryCurve> {
    let kind = CurveKind::Corollary3 { kappa1, kappa2 };
    let mu_ql1 = channel::quantum_limited_noise(kappa1);
    let mu_ql2 = channel::quantum_limited_noise(kappa2);
    let analytic: Vec<(f64, f64)> = a1_grid
        .iter()
        .map(|&a1| {
            let mu2 = (0.5 * (kappa1 + kappa2) - kappa2 * (mu_ql1 + a1)) / kappa1;
            (a1, mu2 - mu_ql2)
        })
        .filter(|&(_, a2)| a2 >= 0.0)
        .collect();
    let bisected: Vec<(f64, f64)> = analytic
        .par_iter()
        .map(|&(a1, _)| {
            let mu2 = simon_critical_mu2(kappa1, mu_ql1 + a1, kappa2, r, DEFAULT_TOLERANCE / 20.0)
                .expect("boundary bracketed in [0, 2]");
            (a1, mu2 - mu_ql2)
        })
        .collect();
    vec![
        BoundaryCurve::new(kind.clone(), Method::Analytic, DEFAULT_TOLERANCE, analytic),
        BoundaryCurve::new(kind, Method::Bisection, DEFAULT_TOLERANCE, bisected),
    ]
}

/// Critical extra noise `a2` closing the non-Gaussian survival region at
/// fixed `(kappa1, kappa2, a1)`, or `None` when no `a2 >= 0` lies inside.
pub fn psi_region_boundary_a2(kappa1: f64, kappa2: f64, a1: f64) -> Option<f64> {
    let (k1, k2) = (kappa1, kappa2);
    // Solve each branch inequality of the survival region for a2.
    let bound = if k1 < 1.0 && k2 < 1.0 {
        let b2 = k2 * (1.0 + a1) / (2.0 * (1.0 + a1) - k1);
        let b1 = if 2.0 * a1 <= k1 {
            f64::INFINITY
        } else {
            a1 * k2 / (2.0 * a1 - k1) - 1.0
        };
        b1.min(b2)
    } else if k1 < 1.0 {
        // a1 < k1 (k2 + a2) / (k2 + 2 a2)  and  a2 < 1 - k2 (1 + a1 - k1) / (2 (1 + a1) - k1)
        let b2 = 1.0 - k2 * (1.0 + a1 - k1) / (2.0 * (1.0 + a1) - k1);
        let b1 = if 2.0 * a1 <= k1 {
            f64::INFINITY
        } else if a1 >= k1 {
            f64::NEG_INFINITY
        } else {
            k2 * (k1 - a1) / (2.0 * a1 - k1)
        };
        b1.min(b2)
    } else if k2 < 1.0 {
        // a2 < k2 (k1 + a1) / (k1 + 2 a1)  and  a1 < 1 - k1 (1 + a2 - k2) / (2 (1 + a2) - k2)
        let b2 = k2 * (k1 + a1) / (k1 + 2.0 * a1);
        let b1 = if k1 - 2.0 * (1.0 - a1) <= 0.0 {
            f64::INFINITY
        } else {
            k2 * (k1 - 1.0 + a1) / (k1 - 2.0 + 2.0 * a1) - 1.0
        };
        b1.min(b2)
    } else {
        let b2 = 1.0 - k2 * a1 / (k1 + 2.0 * a1);
        let b1 = if a1 >= 1.0 {
            f64::NEG_INFINITY
        } else if k1 - 2.0 * (1.0 - a1) <= 0.0 {
            f64::INFINITY
        } else {
            k2 * (1.0 - a1) / (k1 - 2.0 * (1.0 - a1))
        };
        b1.min(b2)
    };
    (bound > 0.0 && bound.is_finite()).then_some(bound)
}

/// Non-Gaussian survival-region boundary in the extra-noise plane at fixed
/// gains, analytic inversion plus predicate bisection.
pub fn curve_fig3a(kappa1: f64, kappa2: f64, a1_grid: &[f64]) -> Vec<BoundaryCurve> {
    let kind = CurveKind::Prop2RegionSlice { kappa1, kappa2 };
    let analytic: Vec<(f64, f64)> = a1_grid
        .iter()
        .filter_map(|&a1| psi_region_boundary_a2(kappa1, kappa2, a1).map(|a2| (a1, a2)))
        .collect();
    let bisected: Vec<(f64, f64)> = analytic
        .par_iter()
        .map(|&(a1, _)| {
            let p1 = ChannelParams::from_extra_noise(kappa1, a1).expect("a1 >= 0");
            let a2 = bisect_boundary(
                |a2| {
                    let p2 = ChannelParams::from_extra_noise(kappa2, a2)?;
                    Ok(!witness::psi_survival_region(p1, p2))
                },
                0.0,
                2.0,
                DEFAULT_TOLERANCE / 20.0,
            )
            .expect("region closes at finite extra noise");
            (a1, a2)
        })
        .collect();
    vec![
        BoundaryCurve::new(kind.clone(), Method::Analytic, DEFAULT_TOLERANCE, analytic),
        BoundaryCurve::new(kind, Method::Bisection, DEFAULT_TOLERANCE, bisected),
    ]
}

/// Symmetric non-Gaussian survival threshold over a gain grid: the analytic
/// `sqrt(kappa^2 + 1)/2` curve, its two asymptotes, and a witness-scan
/// bisection cross-check.
pub fn curve_fig3b(kappa_grid: &[f64], gamma: f64) -> Vec<BoundaryCurve> {
    let analytic: Vec<(f64, f64)> = kappa_grid
        .iter()
        .map(|&k| (k, witness::symmetric_survival_threshold(k)))
        .collect();
    let bisected: Vec<(f64, f64)> = kappa_grid
        .par_iter()
        .map(|&k| {
            let mu = witness_critical_mu_symmetric(k, gamma, DEFAULT_TOLERANCE / 20.0)
                .expect("threshold lies above the quantum limit");
            (k, mu)
        })
        .collect();
    vec![
        BoundaryCurve::new(CurveKind::Corollary4, Method::Analytic, DEFAULT_TOLERANCE, analytic),
        BoundaryCurve::new(
            CurveKind::Corollary4,
            Method::Bisection,
            DEFAULT_TOLERANCE,
            bisected,
        ),
        BoundaryCurve::new(
            CurveKind::Prop1Gaussian,
            Method::Analytic,
            DEFAULT_TOLERANCE,
            kappa_grid.iter().map(|&k| (k, 0.5)).collect(),
        ),
        BoundaryCurve::new(
            CurveKind::AsymptoteKappaHalf,
            Method::Analytic,
            DEFAULT_TOLERANCE,
            kappa_grid.iter().map(|&k| (k, 0.5 * k)).collect(),
        ),
    ]
}

/// Channel validity and entanglement-breaking threshold lines.
pub fn curve_eb_threshold(kappa_grid: &[f64]) -> BoundaryCurve {
    BoundaryCurve::new(
        CurveKind::EbThreshold,
        Method::Analytic,
        DEFAULT_TOLERANCE,
        kappa_grid
            .iter()
            .map(|&k| (k, channel::entanglement_breaking_noise(k)))
            .collect(),
    )
}

/// Rounds to 12 significant decimal digits, the precision of all exported
/// numbers.
pub fn round_sig12(x: f64) -> f64 {
    format_sig12(x).parse().expect("formatted float")
}

/// Fixed 12-significant-digit decimal rendering used in CSV output.
pub fn format_sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// CSV rendering: header `kind,method,abscissa,value,tolerance`, one row per
/// sample, LF line endings, 12-significant-digit floats.
pub fn curves_to_csv(curves: &[BoundaryCurve]) -> String {
    let mut out = String::from("kind,method,abscissa,value,tolerance\n");
    for c in curves {
        let kind = c.kind.label();
        let method = c.method.label();
        let tol = format_sig12(c.tolerance);
        for &(x, v) in &c.samples {
            out.push_str(&format!(
                "{kind},{method},{},{},{tol}\n",
                format_sig12(x),
                format_sig12(v)
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct CurveJson {
    kind: String,
    method: &'static str,
    tolerance: f64,
    samples: Vec<[f64; 2]>,
}

/// JSON rendering: an object with a `curves` array; sample values rounded to
/// 12 significant digits so both formats carry identical numbers.
pub fn curves_to_json(curves: &[BoundaryCurve]) -> serde_json::Value {
    let list: Vec<CurveJson> = curves
        .iter()
        .map(|c| CurveJson {
            kind: c.kind.label(),
            method: c.method.label(),
            tolerance: round_sig12(c.tolerance),
            samples: c
                .samples
                .iter()
                .map(|&(x, v)| [round_sig12(x), round_sig12(v)])
                .collect(),
        })
        .collect();
    serde_json::json!({ "curves": list })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Csv,
    Json,
}

/// Writes the curves to disk; byte output is a pure function of the input.
pub fn export(curves: &[BoundaryCurve], format: ExportFormat, path: &Path) -> Result<()> {
    let bytes = match format {
        ExportFormat::Csv => curves_to_csv(curves).into_bytes(),
        ExportFormat::Json => {
            let mut s = serde_json::to_string_pretty(&curves_to_json(curves))
                .expect("serializable value");
            s.push('\n');
            s.into_bytes()
        }
    };
    let mut f = std::fs::File::create(path)?;
    f.write_all(&bytes)?;
    Ok(())
}
