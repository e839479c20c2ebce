//! Command-line front end: classify channels, export boundary-curve
//! diagrams, and run the verification suites.
//!
//! Exit codes: 0 success, 1 bad arguments, 2 invalid channel,
//! 3 verification failure.

use clap::{Parser, Subcommand, ValueEnum};
use entbound::channel::{self, ChannelParams};
use entbound::phase::{self, round_sig12, BoundaryCurve, ExportFormat};
use entbound::verify::{run_suite, CriterionReport, Suite, VerifyConfig};
use entbound::witness;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const EXIT_BAD_ARGS: u8 = 1;
const EXIT_INVALID_CHANNEL: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "entbound",
    version,
    about = "Entanglement survival under noisy bosonic attenuation and amplification"
)]
struct Cli {
    /// Worker threads for grid scans (env ENTBOUND_THREADS, default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report validity, decomposition and entanglement verdicts of one channel
    Classify {
        /// Power gain (attenuation below 1, amplification above 1)
        kappa: f64,
        /// Total noise per quadrature (vacuum variance = 1/2)
        mu: Option<f64>,
        /// Extra noise above the quantum limit, alternative to MU
        #[arg(long, conflicts_with = "mu")]
        extra_noise: Option<f64>,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
    /// Compute boundary curves and write them to a CSV or JSON file
    Diagram {
        /// Which figure's content to compute
        #[arg(value_enum)]
        kind: FigKind,
        /// Output path
        #[arg(long)]
        out: PathBuf,
        /// File format; inferred from the extension when omitted
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Energies of the squeezed-vacuum survival curves (fig1b)
        #[arg(long, value_delimiter = ',', default_value = "0.1,1,10")]
        energies: Vec<f64>,
        /// First-mode gain (fig2b, fig3a)
        #[arg(long)]
        kappa1: Option<f64>,
        /// Second-mode gain (fig2b, fig3a)
        #[arg(long)]
        kappa2: Option<f64>,
        /// Gain grid lower edge (fig1b, fig3b)
        #[arg(long, default_value_t = 0.05)]
        kappa_min: f64,
        /// Gain grid upper edge (fig1b, fig3b)
        #[arg(long, default_value_t = 8.0)]
        kappa_max: f64,
        /// Samples per axis
        #[arg(long, default_value_t = 101)]
        points: usize,
        /// Extra-noise grid upper edge (fig2b, fig3a)
        #[arg(long, default_value_t = 1.5)]
        a_max: f64,
        /// Probe amplitude of the witness scan (fig3b)
        #[arg(long, default_value_t = 1e-3)]
        gamma: f64,
        /// Squeezing of the high-energy reference state (fig2b)
        #[arg(long, default_value_t = 10.0)]
        r: f64,
    },
    /// Run the numbered verification checks and report pass/fail
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Fock levels per mode for the simulator-backed checks
        #[arg(long, default_value_t = 30)]
        cutoff: usize,
        /// Probe amplitude for witness scans
        #[arg(long, default_value_t = 1e-3)]
        gamma: f64,
        /// Squeezing standing in for the infinite-energy limit
        #[arg(long, default_value_t = 10.0)]
        r: f64,
        /// Boundary bisection tolerance
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Seed of the random sweeps
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Machine-readable output
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FigKind {
    Fig1b,
    Fig2b,
    Fig3a,
    Fig3b,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Gaussian,
    Fock,
    Witness,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Gaussian => Suite::Gaussian,
            SuiteArg::Fock => Suite::Fock,
            SuiteArg::Witness => Suite::Witness,
            SuiteArg::All => Suite::All,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_BAD_ARGS);
        }
    };
    let threads = cli.threads.or_else(|| {
        std::env::var("ENTBOUND_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_BAD_ARGS);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .ok();
    }
    match cli.cmd {
        Command::Classify {
            kappa,
            mu,
            extra_noise,
            json,
        } => classify(kappa, mu, extra_noise, json),
        Command::Diagram {
            kind,
            out,
            format,
            energies,
            kappa1,
            kappa2,
            kappa_min,
            kappa_max,
            points,
            a_max,
            gamma,
            r,
        } => diagram(DiagramArgs {
            kind,
            out,
            format,
            energies,
            kappa1,
            kappa2,
            kappa_min,
            kappa_max,
            points,
            a_max,
            gamma,
            r,
        }),
        Command::Verify {
            suite,
            cutoff,
            gamma,
            r,
            tol,
            seed,
            json,
        } => verify(suite, cutoff, gamma, r, tol, seed, json),
    }
}

fn classify(kappa: f64, mu: Option<f64>, extra_noise: Option<f64>, json: bool) -> ExitCode {
    if !kappa.is_finite() || kappa <= 0.0 {
        eprintln!("error: kappa must be a positive finite number");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    let mu = match (mu, extra_noise) {
        (Some(m), None) => m,
        (None, Some(a)) => channel::quantum_limited_noise(kappa) + a,
        (None, None) => {
            eprintln!("error: provide MU or --extra-noise");
            return ExitCode::from(EXIT_BAD_ARGS);
        }
        (Some(_), Some(_)) => unreachable!("clap conflict"),
    };
    let mu_ql = channel::quantum_limited_noise(kappa);
    let params = match ChannelParams::new(kappa, mu) {
        Ok(p) => p,
        Err(e) => {
            if json {
                let report = serde_json::json!({
                    "kappa": round_sig12(kappa),
                    "mu": round_sig12(mu),
                    "mu_ql": round_sig12(mu_ql),
                    "valid": false,
                    "error": e.to_string(),
                });
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                eprintln!("error: {e}");
            }
            return ExitCode::from(EXIT_INVALID_CHANNEL);
        }
    };
    let threshold = witness::symmetric_survival_threshold(kappa);
    let survivable = mu < threshold;
    if json {
        let report = serde_json::json!({
            "kappa": round_sig12(kappa),
            "mu": round_sig12(mu),
            "valid": true,
            "mu_ql": round_sig12(mu_ql),
            "extra_noise": round_sig12(params.extra_noise()),
            "eta": round_sig12(params.eta()),
            "tau": round_sig12(params.tau()),
            "quantum_limited": params.is_quantum_limited(),
            "entanglement_breaking": params.is_entanglement_breaking(),
            "gaussian_annihilating": params.is_gaussian_annihilating(),
            "nongaussian_threshold": round_sig12(threshold),
            "nongaussian_survivable": survivable,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        let yesno = |b: bool| if b { "yes" } else { "no" };
        println!(
            "channel: kappa = {}, mu = {}",
            round_sig12(kappa),
            round_sig12(mu)
        );
        println!("  valid: yes");
        println!("  quantum-limited noise: {}", round_sig12(mu_ql));
        println!("  extra noise a: {}", round_sig12(params.extra_noise()));
        println!(
            "  decomposition: eta = {}, tau = {}",
            round_sig12(params.eta()),
            round_sig12(params.tau())
        );
        println!(
            "  entanglement breaking: {}",
            yesno(params.is_entanglement_breaking())
        );
        println!(
            "  annihilates all Gaussian entanglement (any mode count): {}",
            yesno(params.is_gaussian_annihilating())
        );
        println!(
            "  symmetric-pair non-Gaussian survival threshold: {}",
            round_sig12(threshold)
        );
        println!("  non-Gaussian survival possible: {}", yesno(survivable));
    }
    ExitCode::SUCCESS
}

struct DiagramArgs {
    kind: FigKind,
    out: PathBuf,
    format: Option<FormatArg>,
    energies: Vec<f64>,
    kappa1: Option<f64>,
    kappa2: Option<f64>,
    kappa_min: f64,
    kappa_max: f64,
    points: usize,
    a_max: f64,
    gamma: f64,
    r: f64,
}

fn diagram(args: DiagramArgs) -> ExitCode {
    if args.points < 2 {
        eprintln!("error: --points must be at least 2");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    if args.kappa_min <= 0.0 || args.kappa_max <= args.kappa_min {
        eprintln!("error: gain grid needs 0 < --kappa-min < --kappa-max");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    if args.gamma <= 0.0 || args.r <= 0.0 || args.a_max <= 0.0 {
        eprintln!("error: --gamma, --r and --a-max must be positive");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    let pair = |k1: Option<f64>, k2: Option<f64>| -> Result<(f64, f64), String> {
        match (k1, k2) {
            (Some(a), Some(b)) if a > 0.0 && b > 0.0 => Ok((a, b)),
            (Some(_), Some(_)) => Err("gains must be positive".into()),
            _ => Err("this diagram needs --kappa1 and --kappa2".into()),
        }
    };
    let curves: Vec<BoundaryCurve> = match args.kind {
        FigKind::Fig1b => {
            if args.energies.is_empty() || args.energies.iter().any(|&e| e <= 0.0) {
                eprintln!("error: --energies must be positive");
                return ExitCode::from(EXIT_BAD_ARGS);
            }
            let grid = phase::log_grid(args.kappa_min, args.kappa_max, args.points);
            phase::curve_fig1b(&args.energies, &grid)
        }
        FigKind::Fig2b => match pair(args.kappa1, args.kappa2) {
            Ok((k1, k2)) => {
                let grid = phase::lin_grid(0.0, args.a_max, args.points);
                phase::curve_fig2b(k1, k2, &grid, args.r)
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_BAD_ARGS);
            }
        },
        FigKind::Fig3a => match pair(args.kappa1, args.kappa2) {
            Ok((k1, k2)) => {
                let grid = phase::lin_grid(0.0, args.a_max, args.points);
                phase::curve_fig3a(k1, k2, &grid)
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(EXIT_BAD_ARGS);
            }
        },
        FigKind::Fig3b => {
            let grid = phase::log_grid(args.kappa_min, args.kappa_max, args.points);
            phase::curve_fig3b(&grid, args.gamma)
        }
    };
    let format = match args.format {
        Some(FormatArg::Csv) => ExportFormat::Csv,
        Some(FormatArg::Json) => ExportFormat::Json,
        None => match args.out.extension().and_then(|e| e.to_str()) {
            Some("json") => ExportFormat::Json,
            _ => ExportFormat::Csv,
        },
    };
    if let Err(e) = phase::export(&curves, format, &args.out) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    let samples: usize = curves.iter().map(|c| c.samples.len()).sum();
    println!(
        "wrote {} curves ({} samples) to {} [kappa grid {}..{} x{}, a_max {}, gamma {}, r {}]",
        curves.len(),
        samples,
        args.out.display(),
        args.kappa_min,
        args.kappa_max,
        args.points,
        args.a_max,
        args.gamma,
        args.r
    );
    ExitCode::SUCCESS
}

fn verify(
    suite: SuiteArg,
    cutoff: usize,
    gamma: f64,
    r: f64,
    tol: f64,
    seed: u64,
    json: bool,
) -> ExitCode {
    if cutoff < 2 || gamma <= 0.0 || r <= 0.0 || tol <= 0.0 {
        eprintln!("error: need --cutoff >= 2 and positive --gamma, --r, --tol");
        return ExitCode::from(EXIT_BAD_ARGS);
    }
    let cfg = VerifyConfig {
        cutoff,
        gamma,
        r_asymptotic: r,
        bisect_tol: tol,
        seed,
    };
    let t0 = Instant::now();
    let reports = run_suite(suite.into(), &cfg);
    let total = t0.elapsed().as_secs_f64();
    let all_passed = reports.iter().all(|r| r.passed);
    if json {
        let doc = serde_json::json!({
            "config": cfg,
            "criteria": reports,
            "elapsed_s": total,
            "passed": all_passed,
        });
        println!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        println!(
            "verification config: cutoff = {cutoff}, gamma = {gamma}, r = {r}, tol = {tol}, seed = {seed}"
        );
        for rep in &reports {
            print_report(rep);
        }
        println!(
            "{} of {} criteria passed in {total:.1}s",
            reports.iter().filter(|r| r.passed).count(),
            reports.len(),
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}

fn print_report(rep: &CriterionReport) {
    println!(
        "{} criterion {:>2}: {} ({:.2}s)",
        if rep.passed { "PASS" } else { "FAIL" },
        rep.id,
        rep.title,
        rep.elapsed_s
    );
    for line in &rep.lines {
        let tag = if line.pass { "ok" } else { "FAIL" };
        match line.bound {
            Some(bound) => println!(
                "    [{tag}] {}: measured {:.3e} (bound {:.1e})",
                line.label, line.measured, bound
            ),
            None => println!("    [{tag}] {}: {:.6e}", line.label, line.measured),
        }
    }
}
