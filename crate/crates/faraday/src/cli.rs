//! Batch command-line front end.
//!
//! Conventions, in order of anyone caring:
//!
//! * stdout carries machine-readable output only: one summary document per
//!   invocation, JSON by default or flattened `key,value` CSV under
//!   `--format csv`. Human commentary goes to stderr. Tabular artifacts
//!   (time series, scans, per-cell maps) are written as CSV files into the
//!   `--out` directory; structured reports as JSON.
//! * Exit status: 0 when every check in scope passed; 1 when a check or
//!   experiment failed (the failing item is named on stderr); 2 for an
//!   invalid invocation: unknown flags, unreadable or malformed config,
//!   grids too small, under-resolved or oversized experiment requests.
//! * Precedence for `simulate`: built-in defaults, then command-line flags,
//!   then the config file. Keys present in the file win over flags; flags
//!   win over defaults. The `[init]` section, when present, is taken whole.
//! * Determinism: the same argv, seed, and config produce byte-identical
//!   stdout and artifacts. Random states come from a counter-mode stream
//!   cipher keyed by `--seed`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::Signature;
use crate::fields::{
    density_maps, density_totals, duality_report, equivalence_report, synth, total_energy_with_mass,
    write_snapshot, GridSpec,
};
use crate::sim::{
    evanescence_report, measure_dispersion, monopole_gauss_check, write_evanescence_csv,
    write_timeseries_csv, DispersionSpec, SimConfig, SimError, Simulation,
};
use crate::symbolic::{parse_corpus, run_corpus, IDENTITY_CORPUS};

/// Absolute tolerance for the exact-to-rounding checks (equivalence of the
/// two forms of the field equation, duality invariants).
const TOL_EXACT: f64 = 1e-12;
/// Relative tolerance for the dispersion measurement.
const TOL_DISPERSION: f64 = 0.01;
/// Relative tolerance for the fitted evanescent decay rate.
const TOL_EVANESCENCE: f64 = 0.02;
/// Transmitted-amplitude bound ten decay lengths past the drive.
const TOL_TAIL: f64 = 1e-4;
/// Gauss-law flux ratio window and box-to-box agreement bound.
const FLUX_WINDOW: (f64, f64) = (0.99, 1.01);
const FLUX_BOX_AGREEMENT: f64 = 0.005;

#[derive(Parser)]
#[command(
    name = "faraday",
    version,
    about = "Exact Clifford algebra, identity verification, and grid experiments",
    after_help = "Exit status: 0 all checks passed, 1 a named check failed, 2 bad invocation."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_signature(s: &str) -> Result<(u32, u32), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q (e.g. 1,3), got {s:?}"))?;
    let p: u32 = p.trim().parse().map_err(|e| format!("bad p: {e}"))?;
    let q: u32 = q.trim().parse().map_err(|e| format!("bad q: {e}"))?;
    Signature::new(p, q).map_err(|e| e.to_string())?;
    Ok((p, q))
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify the shipped identity corpus by exact canonicalization
    VerifyIdentities {
        /// Only run identities declared for this signature, as p,q
        #[arg(long, value_parser = parse_signature)]
        signature: Option<(u32, u32)>,
        /// Also write identities.csv here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the unified field equation against its component form on
    /// seeded random states
    CheckEquivalence {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random states
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Cells per axis
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long = "box", default_value_t = 1.0)]
        box_len: f64,
        #[arg(long, default_value_t = 0.5)]
        mass: f64,
        /// Also write equivalence.csv here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Evolve a configured state with the leapfrog integrator
    Simulate {
        /// TOML run configuration (overrides any flags below)
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Cells per axis (cubic grid)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long = "box")]
        box_len: Option<f64>,
        #[arg(long)]
        mass: Option<f64>,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        steps: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Measure omega(k) on the lattice against the massive branch
    DispersionScan {
        /// Cells along x, comma-separated for a convergence scan
        #[arg(long, value_delimiter = ',', default_value = "64")]
        grid: Vec<usize>,
        /// Field mass values, comma-separated
        #[arg(long, value_delimiter = ',', default_value = "0.0")]
        mass: Vec<f64>,
        /// Wave modes (k = 2 pi mode / L), comma-separated
        #[arg(long, value_delimiter = ',', default_value = "1")]
        modes: Vec<i32>,
        /// Periods of the slowest wave to fit over
        #[arg(long, default_value_t = 6)]
        periods: u32,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Solve the driven slab in the definite signature and fit the decay
    EuclideanEvanescence {
        /// Intervals along the slab
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long = "box", default_value_t = 1.0)]
        box_len: f64,
        /// Drive frequencies, comma-separated
        #[arg(long, value_delimiter = ',', default_value = "12.566370614359172")]
        omega: Vec<f64>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Gauss law for a static magnetic charge: relax the potential and
    /// compare enclosed flux against 4 pi e_m on two nested boxes
    MonopoleGauss {
        /// Nodes per axis of the relaxation box
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Magnetic charge
        #[arg(long, default_value_t = 1.0)]
        charge: f64,
        /// Gaussian charge width in cells
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        /// Also write monopole.json here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rotate seeded random states through duality angles and report how
    /// the invariants moved
    DualityReport {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random states
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long = "box", default_value_t = 1.0)]
        box_len: f64,
        #[arg(long, default_value_t = 0.5)]
        mass: f64,
        /// Rotation angles in radians, comma-separated (default: quarter turn)
        #[arg(long, value_delimiter = ',', default_value = "1.5707963267948966")]
        alpha: Vec<f64>,
        /// Also write duality.csv here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit per-cell invariant densities and their integrals for a seeded
    /// random state
    Densities {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long = "box", default_value_t = 1.0)]
        box_len: f64,
        #[arg(long, default_value_t = 0.5)]
        mass: f64,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

struct Failure {
    code: i32,
    msg: String,
    usage: Option<String>,
}

type CmdResult = Result<i32, Failure>;

fn check_failed(msg: impl Into<String>) -> Failure {
    Failure { code: 1, msg: msg.into(), usage: None }
}

fn bad_request(msg: impl Into<String>, sub: &str) -> Failure {
    Failure { code: 2, msg: msg.into(), usage: Some(usage_of(sub)) }
}

fn usage_of(sub: &str) -> String {
    let mut cmd = Cli::command();
    match cmd.find_subcommand_mut(sub) {
        Some(s) => {
            let mut named = s.clone().bin_name(format!("faraday {sub}"));
            named.render_usage().to_string()
        }
        None => cmd.render_usage().to_string(),
    }
}

impl Failure {
    /// Attach the subcommand usage line to invalid-invocation failures.
    fn for_sub(mut self, sub: &str) -> Failure {
        if self.code == 2 && self.usage.is_none() {
            self.usage = Some(usage_of(sub));
        }
        self
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Failure {
        let code = match e {
            // the request itself was out of the tool's envelope
            SimError::Cfl { .. }
            | SimError::BadDt(_)
            | SimError::DegeneratePolarization
            | SimError::UnderResolved { .. }
            | SimError::Config(_)
            | SimError::Field(_) => 2,
            // the computation ran and failed
            SimError::NonFinite { .. }
            | SimError::FitFailed(_)
            | SimError::NoConvergence { .. }
            | SimError::Algebra(_) => 1,
        };
        Failure { code, msg: e.to_string(), usage: None }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure { code: 1, msg: format!("i/o: {e}"), usage: None }
    }
}

/// Parse argv and dispatch. Returns the process exit status; the caller
/// decides when to exit (keeps this testable).
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            if let Some(u) = f.usage {
                eprintln!("{u}");
            }
            f.code
        }
    }
}

fn dispatch(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::VerifyIdentities { signature, out, format } => {
            verify_identities(signature, out, format).map_err(|f| f.for_sub("verify-identities"))
        }
        Cmd::CheckEquivalence { seed, n, grid, box_len, mass, out, format } => {
            check_equivalence(seed, n, grid, box_len, mass, out, format)
                .map_err(|f| f.for_sub("check-equivalence"))
        }
        Cmd::Simulate { config, out, grid, box_len, mass, dt, steps, format } => {
            simulate(config, out, grid, box_len, mass, dt, steps, format)
                .map_err(|f| f.for_sub("simulate"))
        }
        Cmd::DispersionScan { grid, mass, modes, periods, out, format } => {
            dispersion_scan(grid, mass, modes, periods, out, format)
                .map_err(|f| f.for_sub("dispersion-scan"))
        }
        Cmd::EuclideanEvanescence { grid, box_len, omega, out, format } => {
            euclidean_evanescence(grid, box_len, omega, out, format)
                .map_err(|f| f.for_sub("euclidean-evanescence"))
        }
        Cmd::MonopoleGauss { grid, charge, width, out, format } => {
            monopole_gauss(grid, charge, width, out, format)
                .map_err(|f| f.for_sub("monopole-gauss"))
        }
        Cmd::DualityReport { seed, n, grid, box_len, mass, alpha, out, format } => {
            duality_cmd(seed, n, grid, box_len, mass, alpha, out, format)
                .map_err(|f| f.for_sub("duality-report"))
        }
        Cmd::Densities { seed, grid, box_len, mass, out, format } => {
            densities_cmd(seed, grid, box_len, mass, out, format)
                .map_err(|f| f.for_sub("densities"))
        }
    }
}

// ---- output plumbing ----

fn emit_summary(format: Format, v: &Value) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(v).expect("summary json")),
        Format::Csv => {
            let mut rows = Vec::new();
            flatten("", v, &mut rows);
            println!("key,value");
            for (k, val) in rows {
                println!("{},{}", csv_field(&k), csv_field(&val));
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |tail: &str| {
        if prefix.is_empty() {
            tail.to_string()
        } else {
            format!("{prefix}.{tail}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&key(k), inner, rows);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), inner, rows);
            }
        }
        Value::Null => rows.push((prefix.to_string(), String::new())),
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn ensure_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| check_failed(format!("cannot create {}: {e}", dir.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text)
        .map_err(|e| check_failed(format!("cannot write {}: {e}", path.display())))
}

// ---- subcommands ----

fn verify_identities(
    signature: Option<(u32, u32)>,
    out: Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let mut cases = parse_corpus(IDENTITY_CORPUS)
        .map_err(|e| check_failed(format!("shipped corpus failed to parse: {e}")))?;
    if let Some((p, q)) = signature {
        let sig = Signature::new(p, q).map_err(|e| bad_request(e.to_string(), "verify-identities"))?;
        cases.retain(|c| c.sig == sig);
        if cases.is_empty() {
            return Err(check_failed(format!("no corpus identities declare Cl({p},{q})")));
        }
    }
    let report = run_corpus(&cases);
    let mut case_rows = Vec::new();
    let mut failed_names = Vec::new();
    for o in &report.outcomes {
        let sig = format!("{},{}", o.sig.p(), o.sig.q());
        eprintln!("{} {} [Cl({sig})]", if o.passed { "PASS" } else { "FAIL" }, o.name);
        for d in &o.detail {
            eprintln!("    {d}");
        }
        if !o.passed {
            failed_names.push(o.name.clone());
        }
        case_rows.push(json!({ "name": o.name, "signature": sig, "passed": o.passed }));
    }
    let summary = json!({
        "total": report.outcomes.len(),
        "passed": report.passed(),
        "failed": report.failed(),
        "cases": case_rows,
    });
    if let Some(dir) = out {
        ensure_dir(&dir)?;
        let mut text = String::from("name,signature,passed\n");
        for o in &report.outcomes {
            text += &format!(
                "{},\"{},{}\",{}\n",
                csv_field(&o.name),
                o.sig.p(),
                o.sig.q(),
                o.passed
            );
        }
        write_text(&dir.join("identities.csv"), &text)?;
    }
    emit_summary(format, &summary);
    if report.all_passed() {
        eprintln!("all {} identities verified", report.outcomes.len());
        Ok(0)
    } else {
        Err(check_failed(format!("identities failed: {}", failed_names.join(", "))))
    }
}

fn check_equivalence(
    seed: u64,
    n: usize,
    grid_n: usize,
    box_len: f64,
    mass: f64,
    out: Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let grid = GridSpec::cube(grid_n, box_len)
        .map_err(|e| bad_request(e.to_string(), "check-equivalence"))?;
    let mut worst = 0.0f64;
    let mut per_state = Vec::with_capacity(n);
    let mut csv = String::from("state,seed,max_diff,unified_linf\n");
    for i in 0..n {
        let s = seed.wrapping_add(i as u64);
        let (state, derivs) = synth::random_state(grid, s, mass, 1.0);
        let rep = equivalence_report(&state, &derivs);
        worst = worst.max(rep.max_diff);
        csv += &format!("{i},{s},{},{}\n", rep.max_diff, rep.unified_linf);
        per_state.push(rep.max_diff);
    }
    if let Some(dir) = out {
        ensure_dir(&dir)?;
        write_text(&dir.join("equivalence.csv"), &csv)?;
    }
    let pass = worst <= TOL_EXACT;
    let summary = json!({
        "states": n,
        "seed": seed,
        "grid": grid_n,
        "box": box_len,
        "mass": mass,
        "max_deviation": worst,
        "tolerance": TOL_EXACT,
        "pass": pass,
        "per_state": per_state,
    });
    emit_summary(format, &summary);
    eprintln!("max unified-vs-component deviation over {n} states: {worst:.3e}");
    if pass {
        Ok(0)
    } else {
        Err(check_failed(format!(
            "equivalence: max deviation {worst:.3e} exceeds {TOL_EXACT:e}"
        )))
    }
}

/// The optional parts of a run config, used to let file keys override flags
/// without losing track of which keys the file actually set.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Overlay {
    grid: Option<GridOverlay>,
    physics: Option<PhysicsOverlay>,
    run: Option<RunOverlay>,
    init: Option<crate::sim::InitSection>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GridOverlay {
    n: Option<[usize; 3]>,
    #[serde(rename = "box")]
    box_len: Option<[f64; 3]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhysicsOverlay {
    mass: Option<f64>,
    c: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RunOverlay {
    dt: Option<f64>,
    steps: Option<u64>,
    diagnostics_every: Option<u64>,
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    config: PathBuf,
    out: PathBuf,
    grid: Option<usize>,
    box_len: Option<f64>,
    mass: Option<f64>,
    dt: Option<f64>,
    steps: Option<u64>,
    format: Format,
) -> CmdResult {
    let text = fs::read_to_string(&config)
        .map_err(|e| bad_request(format!("cannot read config {}: {e}", config.display()), "simulate"))?;
    let overlay: Overlay = toml::from_str(&text)
        .map_err(|e| bad_request(format!("config {}: {e}", config.display()), "simulate"))?;

    // defaults, then flags, then the file
    let mut cfg = SimConfig::default();
    if let Some(g) = grid {
        cfg.grid.n = [g, g, g];
    }
    if let Some(l) = box_len {
        cfg.grid.box_len = [l, l, l];
    }
    if let Some(m) = mass {
        cfg.physics.mass = m;
    }
    if let Some(d) = dt {
        cfg.run.dt = Some(d);
    }
    if let Some(s) = steps {
        cfg.run.steps = s;
    }
    if let Some(g) = overlay.grid {
        if let Some(n) = g.n {
            cfg.grid.n = n;
        }
        if let Some(b) = g.box_len {
            cfg.grid.box_len = b;
        }
    }
    if let Some(p) = overlay.physics {
        if let Some(m) = p.mass {
            cfg.physics.mass = m;
        }
        if let Some(c) = p.c {
            cfg.physics.c = c;
        }
    }
    if let Some(r) = overlay.run {
        if let Some(d) = r.dt {
            cfg.run.dt = Some(d);
        }
        if let Some(s) = r.steps {
            cfg.run.steps = s;
        }
        if let Some(e) = r.diagnostics_every {
            cfg.run.diagnostics_every = e;
        }
    }
    if let Some(init) = overlay.init {
        cfg.init = init;
    }

    let grid_spec = cfg.grid_spec().map_err(SimError::from)?;
    let state = cfg.initial_state()?;
    let dt = cfg.time_step(grid_spec);
    let mut sim = Simulation::new(&state, dt)?;
    let rows = sim.run(cfg.run.steps, cfg.run.diagnostics_every)?;

    ensure_dir(&out)?;
    let series_path = out.join("timeseries.csv");
    write_timeseries_csv(&rows, &series_path)?;
    let snap_path = out.join("final_state.csv");
    write_snapshot(&sim.colocated_state(), &snap_path).map_err(|e| check_failed(e.to_string()))?;

    let last = rows.last().expect("run always yields at least one row");
    let summary = json!({
        "steps": cfg.run.steps,
        "dt": dt,
        "grid": cfg.grid.n,
        "mass": cfg.physics.mass,
        "final": {
            "t": last.t,
            "energy": last.energy,
            "energy_total": last.energy_total,
            "action": last.action,
            "gauss_e_linf": last.gauss_e_linf,
            "gauss_m_linf": last.gauss_m_linf,
            "lorenz_linf": last.lorenz_linf,
        },
        "artifacts": [series_path.to_string_lossy(), snap_path.to_string_lossy()],
    });
    emit_summary(format, &summary);
    eprintln!(
        "simulated {} steps (dt = {dt:.3e}) -> {}",
        cfg.run.steps,
        series_path.display()
    );
    Ok(0)
}

fn dispersion_scan(
    grids: Vec<usize>,
    masses: Vec<f64>,
    modes: Vec<i32>,
    periods: u32,
    out: PathBuf,
    format: Format,
) -> CmdResult {
    let mut rows = Vec::new();
    let mut csv = String::from("nx,mass,mode,k,measured_omega,predicted_omega,rel_error\n");
    let mut failures = Vec::new();
    for &nx in &grids {
        for &mass in &masses {
            for &mode in &modes {
                let r = measure_dispersion(DispersionSpec { nx, mode, mass, c: 1.0, periods })?;
                csv += &format!(
                    "{nx},{mass},{mode},{},{},{},{}\n",
                    r.k, r.measured_omega, r.predicted_omega, r.rel_error
                );
                if r.rel_error > TOL_DISPERSION {
                    failures.push(format!(
                        "nx={nx} mass={mass} mode={mode}: rel_error {:.3e}",
                        r.rel_error
                    ));
                }
                eprintln!(
                    "nx={nx} mass={mass} mode={mode}: omega {} vs {} ({:+.4}%)",
                    r.measured_omega,
                    r.predicted_omega,
                    100.0 * (r.measured_omega - r.predicted_omega) / r.predicted_omega
                );
                rows.push(json!({
                    "nx": nx, "mass": mass, "mode": mode, "k": r.k,
                    "measured_omega": r.measured_omega,
                    "predicted_omega": r.predicted_omega,
                    "rel_error": r.rel_error,
                }));
            }
        }
    }
    ensure_dir(&out)?;
    let path = out.join("dispersion.csv");
    write_text(&path, &csv)?;
    let summary = json!({
        "tolerance": TOL_DISPERSION,
        "pass": failures.is_empty(),
        "rows": rows,
        "artifact": path.to_string_lossy(),
    });
    emit_summary(format, &summary);
    if failures.is_empty() {
        Ok(0)
    } else {
        Err(check_failed(format!("dispersion outside {TOL_DISPERSION:e}: {}", failures.join("; "))))
    }
}

fn euclidean_evanescence(
    n: usize,
    box_len: f64,
    omegas: Vec<f64>,
    out: PathBuf,
    format: Format,
) -> CmdResult {
    ensure_dir(&out)?;
    let mut csv = String::from("omega,kappa_fit,kappa_expected,rel_error,tail_amplitude\n");
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (idx, &omega) in omegas.iter().enumerate() {
        let rep = evanescence_report(omega, 1.0, n, box_len)?;
        let profile_path = out.join(format!("evanescence_profile_{idx:03}.csv"));
        write_evanescence_csv(&rep, &profile_path)?;
        csv += &format!(
            "{omega},{},{},{},{}\n",
            rep.kappa_fit, rep.kappa_expected, rep.rel_error, rep.tail_amplitude
        );
        if rep.rel_error > TOL_EVANESCENCE {
            failures.push(format!("omega={omega}: kappa off by {:.3e}", rep.rel_error));
        }
        if rep.tail_amplitude >= TOL_TAIL {
            failures.push(format!("omega={omega}: tail {:.3e}", rep.tail_amplitude));
        }
        eprintln!(
            "omega={omega}: kappa {} vs {} (tail {:.2e})",
            rep.kappa_fit, rep.kappa_expected, rep.tail_amplitude
        );
        rows.push(json!({
            "omega": omega,
            "kappa_fit": rep.kappa_fit,
            "kappa_expected": rep.kappa_expected,
            "rel_error": rep.rel_error,
            "tail_amplitude": rep.tail_amplitude,
            "profile": profile_path.to_string_lossy(),
        }));
    }
    let path = out.join("evanescence.csv");
    write_text(&path, &csv)?;
    let summary = json!({
        "kappa_tolerance": TOL_EVANESCENCE,
        "tail_bound": TOL_TAIL,
        "pass": failures.is_empty(),
        "rows": rows,
        "artifact": path.to_string_lossy(),
    });
    emit_summary(format, &summary);
    if failures.is_empty() {
        Ok(0)
    } else {
        Err(check_failed(format!("evanescence: {}", failures.join("; "))))
    }
}

fn monopole_gauss(
    n: usize,
    charge: f64,
    width: f64,
    out: Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let rep = monopole_gauss_check(charge, width, n)?;
    let summary = serde_json::to_value(&rep).expect("report serializes");
    if let Some(dir) = out {
        ensure_dir(&dir)?;
        write_text(
            &dir.join("monopole.json"),
            &format!("{}\n", serde_json::to_string_pretty(&summary).expect("report json")),
        )?;
    }
    emit_summary(format, &summary);
    eprintln!(
        "flux through boxes {:?}: {:?} (4 pi e_m = {})",
        rep.box_half_cells,
        rep.flux,
        4.0 * std::f64::consts::PI * charge
    );
    let mut failures = Vec::new();
    match rep.ratio {
        Some(ratios) => {
            for (i, r) in ratios.iter().enumerate() {
                if !(FLUX_WINDOW.0..=FLUX_WINDOW.1).contains(r) {
                    failures.push(format!(
                        "box {} (half-width {} cells): flux ratio {r}",
                        i, rep.box_half_cells[i]
                    ));
                }
            }
            let diff = rep.ratio_difference.unwrap_or(0.0);
            if diff >= FLUX_BOX_AGREEMENT {
                failures.push(format!("boxes disagree by {diff:.3e}"));
            }
        }
        None => {
            if rep.flux != [0.0, 0.0] {
                failures.push(format!("zero charge but flux {:?}", rep.flux));
            }
        }
    }
    if failures.is_empty() {
        Ok(0)
    } else {
        Err(check_failed(format!("monopole gauss: {}", failures.join("; "))))
    }
}

#[allow(clippy::too_many_arguments)]
fn duality_cmd(
    seed: u64,
    n: usize,
    grid_n: usize,
    box_len: f64,
    mass: f64,
    alphas: Vec<f64>,
    out: Option<PathBuf>,
    format: Format,
) -> CmdResult {
    let grid = GridSpec::cube(grid_n, box_len)
        .map_err(|e| bad_request(e.to_string(), "duality-report"))?;
    let states: Vec<_> = (0..n)
        .map(|i| synth::random_state(grid, seed.wrapping_add(i as u64), mass, 1.0))
        .collect();
    let mut rows = Vec::new();
    let mut csv = String::from(
        "alpha,exact_quarter_turn,max_energy_diff,max_flux_diff,max_action_negation,max_residual_diff\n",
    );
    let mut failures = Vec::new();
    for &alpha in &alphas {
        let mut energy = 0.0f64;
        let mut flux = 0.0f64;
        let mut residual = 0.0f64;
        let mut action: Option<f64> = None;
        let mut exact_quarter = false;
        for (state, derivs) in &states {
            let rep = duality_report(state, derivs, alpha).map_err(|e| check_failed(e.to_string()))?;
            energy = energy.max(rep.energy_diff_linf);
            flux = flux.max(rep.flux_diff_linf);
            residual = residual.max(rep.rotated_residual_agreement);
            if let Some(a) = rep.action_negation_linf {
                action = Some(action.unwrap_or(0.0).max(a));
            }
            exact_quarter = rep.exact_quarter_turn;
        }
        let mut bad = Vec::new();
        if energy > TOL_EXACT {
            bad.push(format!("energy density moved by {energy:.3e}"));
        }
        if flux > TOL_EXACT {
            bad.push(format!("flux density moved by {flux:.3e}"));
        }
        if residual > TOL_EXACT {
            bad.push(format!("rotated equivalence broke: {residual:.3e}"));
        }
        if let Some(a) = action {
            if a > TOL_EXACT {
                bad.push(format!("action not negated: {a:.3e}"));
            }
        }
        if !bad.is_empty() {
            failures.push(format!("alpha={alpha}: {}", bad.join(", ")));
        }
        eprintln!(
            "alpha={alpha}{}: energy diff {energy:.2e}, flux diff {flux:.2e}",
            if exact_quarter { " (exact quarter turn)" } else { "" }
        );
        csv += &format!(
            "{alpha},{exact_quarter},{energy},{flux},{},{residual}\n",
            action.map_or(String::new(), |a| a.to_string())
        );
        rows.push(json!({
            "alpha": alpha,
            "exact_quarter_turn": exact_quarter,
            "max_energy_diff": energy,
            "max_flux_diff": flux,
            "max_action_negation": action,
            "max_residual_diff": residual,
        }));
    }
    if let Some(dir) = out {
        ensure_dir(&dir)?;
        write_text(&dir.join("duality.csv"), &csv)?;
    }
    let summary = json!({
        "states": n,
        "seed": seed,
        "grid": grid_n,
        "mass": mass,
        "tolerance": TOL_EXACT,
        "pass": failures.is_empty(),
        "rows": rows,
    });
    emit_summary(format, &summary);
    if failures.is_empty() {
        Ok(0)
    } else {
        Err(check_failed(format!("duality: {}", failures.join("; "))))
    }
}

fn densities_cmd(
    seed: u64,
    grid_n: usize,
    box_len: f64,
    mass: f64,
    out: PathBuf,
    format: Format,
) -> CmdResult {
    let grid =
        GridSpec::cube(grid_n, box_len).map_err(|e| bad_request(e.to_string(), "densities"))?;
    let (state, _) = synth::random_state(grid, seed, mass, 1.0);
    let maps = density_maps(&state);
    let totals = density_totals(&maps);
    let energy_with_mass = total_energy_with_mass(&state);

    ensure_dir(&out)?;
    let path = out.join("density_maps.csv");
    let [nx, ny, nz] = grid.n();
    let h = grid.h();
    let mut text = String::with_capacity(64 * nx * ny * nz);
    text += "x,y,z,action,pseudo,energy,flux_x,flux_y,flux_z,momentum_x,momentum_y,momentum_z\n";
    for i in 0..nx {
        for j in 0..ny {
            for k in 0..nz {
                let f = maps.flux.at(i, j, k);
                let p = maps.momentum.at(i, j, k);
                text += &format!(
                    "{},{},{},{},{},{},{},{},{},{},{},{}\n",
                    i as f64 * h[0],
                    j as f64 * h[1],
                    k as f64 * h[2],
                    maps.action.at(i, j, k),
                    maps.pseudo.at(i, j, k),
                    maps.energy.at(i, j, k),
                    f[0], f[1], f[2],
                    p[0], p[1], p[2],
                );
            }
        }
    }
    write_text(&path, &text)?;
    let summary = json!({
        "seed": seed,
        "grid": grid_n,
        "box": box_len,
        "mass": mass,
        "totals": {
            "action": totals.action,
            "pseudo": totals.pseudo,
            "energy": totals.energy,
            "energy_with_mass": energy_with_mass,
            "flux": totals.flux,
            "momentum": totals.momentum,
        },
        "artifact": path.to_string_lossy(),
    });
    emit_summary(format, &summary);
    eprintln!("density maps for {} cells -> {}", grid.cells(), path.display());
    Ok(0)
}
