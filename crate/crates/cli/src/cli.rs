//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 an inequality or
//! certification failed, 3 a conjecture counterexample candidate was flagged.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use entropic_frames_core::bounds::{
    amgm_sum_bound, conjectured_product_bound, deutsch_lower_bound, mu_bound, product_bound,
};
use entropic_frames_core::entropy::certify_phi;
use entropic_frames_core::frames::{validate_frame, WeightedFrame};
use entropic_frames_core::tightness::{interior_angles, SearchConfig};
use entropic_frames_core::{EPS_PARSEVAL, ETA_ADM};

use crate::io::{self, fmt_f64, fmt_opt, RunManifest};
use crate::{drivers, grammar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Failure = 2,
    Candidate = 3,
}

#[derive(Debug, Parser)]
#[command(name = "entropic-frames", version, about = "Entropic uncertainty bounds on finite Parseval frames")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Both,
}

impl Format {
    fn json(self) -> bool {
        matches!(self, Format::Json | Format::Both)
    }
    fn csv(self) -> bool {
        matches!(self, Format::Csv | Format::Both)
    }
}

#[derive(Debug, Args)]
struct RunOpts {
    /// Run seed; every per-task seed is derived from it.
    #[arg(long, env = "ENTROPIC_FRAMES_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Output directory.
    #[arg(long, default_value = "entropic-out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Both)]
    format: Format,
}

#[derive(Debug, Args)]
struct SearchOpts {
    #[arg(long, default_value_t = 64)]
    starts: usize,
    #[arg(long, default_value_t = 2000)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-6)]
    fd_step: f64,
    #[arg(long, default_value_t = 1e-8)]
    grad_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    eta_floor: f64,
    /// Include per-start objective histories in the JSON output.
    #[arg(long)]
    verbose: bool,
}

impl SearchOpts {
    fn config(&self, seed: u64) -> SearchConfig {
        SearchConfig {
            n_starts: self.starts,
            max_iters: self.max_iters,
            fd_step: self.fd_step,
            grad_tol: self.grad_tol,
            eta_floor: self.eta_floor,
            seed,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every applicable inequality on seeded random states.
    Verify {
        #[arg(long)]
        frame_a: String,
        #[arg(long)]
        frame_b: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = 1000)]
        states: u64,
        #[arg(long, default_value_t = ETA_ADM)]
        eta_adm: f64,
        /// Parseval residual tolerance for the input frames.
        #[arg(long, default_value_t = EPS_PARSEVAL)]
        tol: f64,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Grid-check positivity, decrease and submultiplicativity of a φ.
    CertifyPhi {
        phi: String,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Tabulate the bound formulas over coherence values.
    Bounds {
        #[arg(long)]
        phi: String,
        /// Coherence values (comma separated or repeated).
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        c: Vec<f64>,
        /// Add an evenly spaced grid of this many points on [0, 1].
        #[arg(long)]
        grid: Option<usize>,
        /// Also write bounds.csv and manifest.json here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimize the entropy product and test the conjectured bound.
    Search {
        #[arg(long)]
        frame_a: String,
        #[arg(long)]
        frame_b: String,
        #[arg(long)]
        phi: String,
        #[arg(long, default_value_t = EPS_PARSEVAL)]
        tol: f64,
        #[command(flatten)]
        search: SearchOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Product and Shannon minima for rotated bases of C^2.
    Sweep {
        #[arg(long)]
        phi: String,
        /// Number of interior angles k·(π/2)/(N+1).
        #[arg(long, default_value_t = 16)]
        angles: usize,
        #[command(flatten)]
        search: SearchOpts,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Write a generated frame to a JSON file.
    GenFrame {
        spec: String,
        #[arg(long, env = "ENTROPIC_FRAMES_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report Parseval residual and max norm of a frame.
    ValidateFrame {
        spec: String,
        #[arg(long, env = "ENTROPIC_FRAMES_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = EPS_PARSEVAL)]
        tol: f64,
    },
    /// Re-run the command recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Write outputs here instead of the recorded directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (without the program name), runs the command and returns
/// its exit code. Messages go to stdout/stderr.
pub fn run(args: &[String]) -> Exit {
    let argv = std::iter::once("entropic-frames".to_string()).chain(args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Usage } else { Exit::Success };
        }
    };
    match dispatch(cli.command, args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            Exit::Usage
        }
    }
}

fn load_frame(flag: &str, spec: &str, seed: u64, tol: f64) -> anyhow::Result<WeightedFrame> {
    let frame = grammar::parse_frame(spec, seed).with_context(|| format!("--{flag}"))?;
    let v = validate_frame(&frame, tol);
    if !v.pass {
        bail!(
            "--{flag}: `{}` is not a 1-bounded Parseval frame (parseval_residual {:e} > {tol:e} or max_norm {} > 1)",
            frame.label(),
            v.parseval_residual,
            v.max_norm
        );
    }
    Ok(frame)
}

/// `args` with every `--flag value` / `--flag=value` for the given flags removed.
fn strip_flags(args: &[String], flags: &[&str]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip_next = false;
    for a in args {
        if skip_next {
            skip_next = false;
            continue;
        }
        if flags.iter().any(|f| a == f) {
            skip_next = true;
        } else if !flags.iter().any(|f| a.starts_with(&format!("{f}="))) {
            out.push(a.clone());
        }
    }
    out
}

fn write_manifest(
    dir: &Path,
    command: &str,
    raw_args: &[String],
    seed: u64,
    parameters: Vec<(String, String)>,
    seed_derivation: &str,
) -> anyhow::Result<()> {
    let mut args = strip_flags(raw_args, &["--seed", "--out"]);
    args.extend(["--seed".to_string(), seed.to_string(), "--out".to_string(), dir.display().to_string()]);
    let manifest = RunManifest {
        command: command.to_string(),
        args,
        parameters,
        seed,
        seed_derivation: seed_derivation.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: io::unix_timestamp(),
    };
    io::write_file(&dir.join("manifest.json"), &io::to_json(&manifest))?;
    Ok(())
}

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn dispatch(command: Command, raw_args: &[String]) -> anyhow::Result<Exit> {
    match command {
        Command::Verify {
            frame_a,
            frame_b,
            phi,
            states,
            eta_adm,
            tol,
            run,
        } => {
            if states == 0 {
                bail!("--states: must be at least 1");
            }
            let a = load_frame("frame-a", &frame_a, run.seed, tol)?;
            let b = load_frame("frame-b", &frame_b, run.seed.wrapping_add(1), tol)?;
            let phi_spec = grammar::parse_phi(&phi).context("--phi")?;
            if !certify_phi(&phi_spec, 200)?.certified() {
                eprintln!("warning: phi `{phi_spec}` fails certification; the product bound is not guaranteed");
            }
            let outcome = drivers::verify_batch(&a, &b, &phi_spec, states, run.seed, eta_adm, run.jobs)?;
            if run.format.json() {
                io::write_file(&run.out.join("report.json"), &io::to_json(&outcome))?;
            }
            if run.format.csv() {
                io::write_file(&run.out.join("report.csv"), &io::reports_csv(&outcome.reports))?;
            }
            write_manifest(
                &run.out,
                "verify",
                raw_args,
                run.seed,
                vec![
                    kv("frame_a", a.label()),
                    kv("frame_b", b.label()),
                    kv("phi", &phi_spec),
                    kv("states", states),
                    kv("eta_adm", format!("{eta_adm:e}")),
                    kv("tol", format!("{tol:e}")),
                ],
                "frame-a generator: seed; frame-b generator: seed+1; state i: ChaCha8(seed) stream i",
            )?;
            let s = &outcome.summary;
            println!(
                "verify {} vs {} phi={}: {} states, {} evaluated, {} skipped (inadmissible), {} violations, min product margin {}",
                a.label(),
                b.label(),
                phi_spec,
                s.n_states,
                s.evaluated,
                s.skipped_inadmissible,
                s.violations,
                fmt_f64(s.min_margins.product)
            );
            Ok(if s.violations == 0 { Exit::Success } else { Exit::Failure })
        }

        Command::CertifyPhi { phi, grid, run } => {
            let phi_spec = grammar::parse_phi(&phi).context("phi")?;
            let cert = certify_phi(&phi_spec, grid)?;
            io::write_file(&run.out.join("certificate.json"), &io::to_json(&cert))?;
            write_manifest(
                &run.out,
                "certify-phi",
                raw_args,
                run.seed,
                vec![kv("phi", &phi_spec), kv("grid", grid)],
                "unused",
            )?;
            println!(
                "certify {}: positive={} decreasing={} submultiplicative={} (grid {})",
                cert.phi, cert.positive, cert.decreasing, cert.submultiplicative, cert.grid_size
            );
            if cert.certified() {
                Ok(Exit::Success)
            } else {
                if let Some(w) = cert.witness {
                    println!("witness: {w} (defect {})", fmt_f64(w.defect()));
                }
                Ok(Exit::Failure)
            }
        }

        Command::Bounds { phi, c, grid, out } => {
            let phi_spec = grammar::parse_phi(&phi).context("--phi")?;
            let mut cs = c;
            if let Some(n) = grid {
                if n < 2 {
                    bail!("--grid: need at least 2 points");
                }
                cs.extend((0..n).map(|i| i as f64 / (n - 1) as f64));
            }
            if cs.is_empty() {
                bail!("give coherence values with --c or --grid");
            }
            let mut csv = String::from(io::BOUNDS_CSV_HEADER);
            csv.push('\n');
            for &c in &cs {
                let deutsch = deutsch_lower_bound(c).map_err(|e| anyhow!("--c: {e}"))?;
                let row = [
                    fmt_f64(c),
                    fmt_f64(deutsch),
                    fmt_opt(mu_bound(c).ok()),
                    fmt_f64(product_bound(&phi_spec, c)?),
                    fmt_opt(conjectured_product_bound(&phi_spec, c).ok()),
                    fmt_f64(amgm_sum_bound(&phi_spec, c)?),
                ];
                csv.push_str(&row.join(","));
                csv.push('\n');
            }
            print!("{csv}");
            if let Some(dir) = out {
                io::write_file(&dir.join("bounds.csv"), &csv)?;
                write_manifest(
                    &dir,
                    "bounds",
                    raw_args,
                    0,
                    vec![kv("phi", &phi_spec), kv("c", format!("{cs:?}"))],
                    "unused",
                )?;
            }
            Ok(Exit::Success)
        }

        Command::Search {
            frame_a,
            frame_b,
            phi,
            tol,
            search,
            run,
        } => {
            let a = load_frame("frame-a", &frame_a, run.seed, tol)?;
            let b = load_frame("frame-b", &frame_b, run.seed.wrapping_add(1), tol)?;
            let phi_spec = grammar::parse_phi(&phi).context("--phi")?;
            let cfg = search.config(run.seed);
            let mut probe = drivers::probe_conjecture(&a, &b, &phi_spec, &cfg, run.jobs)?;
            if !search.verbose {
                for t in &mut probe.search.per_start {
                    t.history.clear();
                }
            }
            io::write_file(&run.out.join("search.json"), &io::to_json(&probe))?;
            write_manifest(
                &run.out,
                "search",
                raw_args,
                run.seed,
                vec![
                    kv("frame_a", a.label()),
                    kv("frame_b", b.label()),
                    kv("phi", &phi_spec),
                    kv("config", format!("{cfg:?}")),
                ],
                "frame-a generator: seed; frame-b generator: seed+1; start s: seed+s",
            )?;
            let r = &probe.search;
            println!(
                "search {} vs {} phi={}: best {} bound {} gap {} conjectured {} conjecture_gap {} boundary={} candidate={}",
                a.label(),
                b.label(),
                phi_spec,
                fmt_f64(r.best_value),
                fmt_f64(r.bound_value),
                fmt_f64(r.gap),
                fmt_opt(r.conjectured_value),
                fmt_opt(r.conjecture_gap),
                r.boundary_flag,
                probe.counterexample_candidate
            );
            Ok(if probe.counterexample_candidate { Exit::Candidate } else { Exit::Success })
        }

        Command::Sweep {
            phi,
            angles,
            search,
            run,
        } => {
            let phi_spec = grammar::parse_phi(&phi).context("--phi")?;
            if angles == 0 {
                bail!("--angles: must be at least 1");
            }
            let cfg = search.config(run.seed);
            let sweep = drivers::sweep_rotation(&interior_angles(angles), &phi_spec, &cfg, run.jobs)?;
            if run.format.csv() {
                io::write_file(&run.out.join("sweep.csv"), &io::sweep_csv(&sweep.rows))?;
            }
            if run.format.json() {
                io::write_file(&run.out.join("sweep.json"), &io::to_json(&sweep))?;
            }
            write_manifest(
                &run.out,
                "sweep",
                raw_args,
                run.seed,
                vec![kv("phi", &phi_spec), kv("angles", angles), kv("config", format!("{cfg:?}"))],
                "every angle uses start seeds seed+s",
            )?;
            let candidates = sweep.rows.iter().filter(|r| r.counterexample_candidate).count();
            let unsound = sweep
                .rows
                .iter()
                .filter(|r| r.min_product < r.product_bound - entropic_frames_core::EPS_VERIFY)
                .count();
            println!(
                "sweep phi={}: {} rows, {} skipped, {} below the product bound, {} counterexample candidates",
                phi_spec,
                sweep.rows.len(),
                sweep.skipped.len(),
                unsound,
                candidates
            );
            Ok(if candidates > 0 {
                Exit::Candidate
            } else if unsound > 0 {
                Exit::Failure
            } else {
                Exit::Success
            })
        }

        Command::GenFrame { spec, seed, out } => {
            let frame = grammar::parse_frame(&spec, seed)?;
            io::save_frame(&out, &frame)?;
            println!("wrote {} ({} vectors in dimension {}) to {}", frame.label(), frame.len(), frame.dimension(), out.display());
            Ok(Exit::Success)
        }

        Command::ValidateFrame { spec, seed, tol } => {
            let frame = grammar::parse_frame(&spec, seed)?;
            let v = validate_frame(&frame, tol);
            println!(
                "{}: parseval_residual {} max_norm {} trace_deviation {} pass={}",
                frame.label(),
                fmt_f64(v.parseval_residual),
                fmt_f64(v.max_norm),
                fmt_f64(v.trace_deviation),
                v.pass
            );
            Ok(if v.pass { Exit::Success } else { Exit::Failure })
        }

        Command::Replay { manifest, out } => {
            let m = io::load_manifest(&manifest)?;
            if m.args.first().map(String::as_str) == Some("replay") {
                bail!("manifest records a replay");
            }
            let mut args = m.args;
            if let Some(dir) = out {
                args = strip_flags(&args, &["--out"]);
                args.extend(["--out".to_string(), dir.display().to_string()]);
            }
            Ok(run(&args))
        }
    }
}
