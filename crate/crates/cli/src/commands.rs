use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::json;
use svorigami::analysis::{
    convergence_experiment, count_N, doubling_check, recurrence_experiment, summarize_doubling, svc_estimate,
    uniform_bound, write_csv, ExperimentReport, Weighting,
};
use svorigami::geometry::holonomy::format_float;
use svorigami::geometry::{
    enumerate_affine, enumerate_in_direction, trace_separatrices, AffineSurface, HolonomyKind, HolonomySet,
    Normalization, Surface,
};
use svorigami::{generate_stratum_origamis, sl2z_orbit, stratum_of, StratumSignature};

use crate::input::{self, invalid};

/// Whether a command's experiment verdict passed.
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Cylinders,
    Saddles,
}

impl From<Kind> for HolonomyKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Cylinders => HolonomyKind::Cylinders,
            Kind::Saddles => HolonomyKind::Saddles,
        }
    }
}

/// Paths are not part of the echoed config, so reports written to
/// different places stay comparable byte for byte.
#[derive(Args, Debug, Default)]
pub struct Output {
    /// JSON report path
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV flattening of the results
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn finish(report: ExperimentReport, output: &Output, started: Instant, timing: bool) -> Result<Status> {
    let mut report = report;
    if timing {
        report.wall_clock_seconds = Some(started.elapsed().as_secs_f64());
    }
    for (name, pass) in &report.verdicts {
        println!("verdict {name}: {}", if *pass { "PASS" } else { "FAIL" });
    }
    if let Some(path) = &output.out {
        report.write_json(path)?;
    }
    Ok(if report.passed() { Status::Pass } else { Status::Fail })
}

fn csv_to(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    write_csv(f, header, rows).with_context(|| format!("writing {}", path.display()))
}

fn geodesic_family(
    origamis: Vec<svorigami::Origami>,
    marked: bool,
    times: &[f64],
) -> Result<Vec<(String, AffineSurface)>> {
    if times.iter().any(|t| !t.is_finite()) {
        return Err(invalid("--geodesic values must be finite"));
    }
    let mut family = Vec::new();
    for o in origamis {
        let label = o.to_string();
        let x = AffineSurface::identity(Surface::new(o, marked));
        for &s in times {
            family.push((format!("g_{s} [{label}]"), x.geodesic(s)));
        }
    }
    Ok(family)
}

#[derive(Args, Debug, Serialize)]
pub struct StratumArgs {
    /// Origami in text format, or @file with one per line
    #[arg(long, required = true)]
    pub origami: Vec<String>,
}

pub fn stratum(a: &StratumArgs) -> Result<Status> {
    for o in input::origamis(&a.origami)? {
        let sig = stratum_of(&o);
        println!("{sig}, genus {}", sig.genus);
    }
    Ok(Status::Pass)
}

#[derive(Args, Debug, Serialize)]
pub struct GenerateArgs {
    /// Square counts, a..b inclusive
    #[arg(long)]
    pub n: String,
    /// Stratum such as H(2) or H(1,1)
    #[arg(long, default_value = "H(2)")]
    pub stratum: String,
    /// Write origamis here instead of stdout
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn generate(a: &GenerateArgs) -> Result<Status> {
    let (lo, hi) = input::n_range(&a.n)?;
    let sig: StratumSignature = a.stratum.parse().map_err(|e| invalid(format!("--stratum: {e}")))?;
    let mut lines = String::new();
    for n in lo..=hi {
        for o in generate_stratum_origamis(n, &sig)? {
            lines.push_str(&o.to_string());
            lines.push('\n');
        }
    }
    match &a.out {
        Some(path) => std::fs::write(path, &lines).with_context(|| format!("writing {}", path.display()))?,
        None => io::stdout().write_all(lines.as_bytes())?,
    }
    Ok(Status::Pass)
}

#[derive(Args, Debug, Serialize)]
pub struct OrbitArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    /// JSON export of members and generator edges
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

pub fn orbit(a: &OrbitArgs) -> Result<Status> {
    let orbit = sl2z_orbit(&input::single_origami(&a.origami)?);
    println!("orbit of size {} in {}", orbit.len(), orbit.signature());
    for o in orbit.representatives() {
        println!("{o}");
    }
    if let Some(path) = &a.out {
        std::fs::write(path, orbit.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(Status::Pass)
}

#[derive(Args, Debug, Serialize)]
pub struct EnumerateArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    /// Treat every vertex as a marked point
    #[arg(long)]
    pub marked: bool,
    /// Radius (unit-area lengths unless --raw)
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, value_enum, default_value = "cylinders")]
    pub kind: Kind,
    /// Real matrix a,b,c,d with determinant 1 applied to the surface
    #[arg(long)]
    pub matrix: Option<String>,
    /// Lengths in square units rather than unit area
    #[arg(long)]
    pub raw: bool,
    /// Only the primitive direction p,q (ignores --R and --matrix)
    #[arg(long, allow_hyphen_values = true)]
    pub direction: Option<String>,
    /// With --direction: use the separatrix tracer (saddles only)
    #[arg(long)]
    pub trace: bool,
    /// CSV path; stdout otherwise
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn parse_direction(text: &str) -> Result<(i64, i64)> {
    let bad = || invalid(format!("--direction: expected p,q, got {text:?}"));
    let (p, q) = text.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

pub fn enumerate(a: &EnumerateArgs) -> Result<Status> {
    let o = input::single_origami(&a.origami)?;
    let normalization = if a.raw { Normalization::Raw } else { Normalization::UnitArea };
    let kind: HolonomyKind = a.kind.into();
    let set = match &a.direction {
        Some(d) => {
            let (p, q) = parse_direction(d)?;
            let s = Surface::new(o, a.marked);
            let records = if a.trace {
                if !matches!(a.kind, Kind::Saddles) {
                    return Err(invalid("--trace needs --kind saddles"));
                }
                trace_separatrices(&s, p, q)?
            } else {
                enumerate_in_direction(&s, p, q, kind)?
            };
            let radius = records.iter().map(|r| r.holonomy.norm()).fold(0.0, f64::max);
            HolonomySet { kind, radius, normalization, n: s.n(), records }
        }
        None => {
            if a.trace {
                return Err(invalid("--trace needs --direction"));
            }
            let r = input::positive("--R", a.r.ok_or_else(|| invalid("--R is required without --direction"))?)?;
            let s = input::affine(o, a.marked, a.matrix.as_deref())?;
            enumerate_affine(&s, r, kind, normalization)?
        }
    };
    match &a.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
            set.write_csv(f)?;
        }
        None => set.write_csv(io::stdout().lock())?,
    }
    Ok(Status::Pass)
}

#[derive(Args, Debug, Serialize)]
pub struct CountArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    #[arg(long)]
    pub marked: bool,
    /// Radius in unit-area lengths
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: f64,
    #[arg(long, value_enum, default_value = "cylinders")]
    pub kind: Kind,
    /// Weight each cylinder by its area fraction
    #[arg(long)]
    pub weighted: bool,
    #[arg(long)]
    pub matrix: Option<String>,
}

pub fn count(a: &CountArgs) -> Result<Status> {
    let r = input::positive("--R", a.r)?;
    let origamis = input::origamis(&a.origami)?;
    let many = origamis.len() > 1;
    let weighting = if a.weighted { Weighting::Area } else { Weighting::Unweighted };
    for o in origamis {
        let label = o.to_string();
        let s = input::affine(o, a.marked, a.matrix.as_deref())?;
        let n = count_N(&s, r, a.kind.into(), weighting)?;
        if many {
            println!("{n}\t{label}");
        } else {
            println!("{n}");
        }
    }
    Ok(Status::Pass)
}

#[derive(Args, Debug, Serialize)]
pub struct SvcArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    #[arg(long)]
    pub marked: bool,
    /// Largest counting radius (unit-area lengths)
    #[arg(long = "Rmax", default_value_t = 1000.0, allow_hyphen_values = true)]
    pub r_max: f64,
    #[arg(long)]
    pub matrix: Option<String>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

pub fn svc(a: &SvcArgs, timing: bool) -> Result<Status> {
    let started = Instant::now();
    let r_max = input::positive("--Rmax", a.r_max)?;
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for o in input::origamis(&a.origami)? {
        let label = o.to_string();
        let s = input::affine(o, a.marked, a.matrix.as_deref())?;
        let fit = svc_estimate(&s, r_max)?;
        println!("{label}: c = {:.6} (least squares {:.6})", fit.estimate, fit.least_squares);
        for &(r, n) in &fit.samples {
            rows.push(vec![label.clone(), format_float(r), format_float(n), format_float(n / (r * r))]);
        }
        results.push(json!({ "origami": label, "fit": fit }));
    }
    if let Some(path) = &a.output.csv {
        csv_to(path, &["origami", "R", "N", "N_over_R2"], &rows)?;
    }
    finish(ExperimentReport::new("svc", a, &results)?, &a.output, started, timing)
}

#[derive(Args, Debug, Serialize)]
pub struct RecurrenceArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    #[arg(long)]
    pub marked: bool,
    /// Geodesic times s; the family is g_s·X for every origami X
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3", allow_hyphen_values = true)]
    pub geodesic: Vec<f64>,
    #[arg(long, default_value_t = 0.25, allow_hyphen_values = true)]
    pub delta: f64,
    /// start:step:end or a comma list
    #[arg(long = "Tgrid", default_value = "0:0.5:5")]
    pub t_grid: String,
    /// Relative quadrature tolerance
    #[arg(long, default_value_t = 1e-4, allow_hyphen_values = true)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

pub fn recurrence(a: &RecurrenceArgs, timing: bool) -> Result<Status> {
    let started = Instant::now();
    let delta = input::delta(a.delta)?;
    let tol = input::tolerance(a.tol)?;
    let grid = input::t_grid(&a.t_grid)?;
    if grid.len() < 3 {
        return Err(invalid("--Tgrid needs at least three points"));
    }
    let family = geodesic_family(input::origamis(&a.origami)?, a.marked, &a.geodesic)?;
    let rep = recurrence_experiment(&family, delta, &grid, tol)?;
    for c in &rep.curves {
        println!(
            "{}: ell = {:.6}, alpha = {:.6}, tail spread {:.4}",
            c.label, c.shortest_saddle, c.alpha, c.tail_spread
        );
    }
    println!(
        "c0 = {}, b = {:.6}, split b = ({:.6}, {:.6}), violations = {}",
        rep.c0, rep.b, rep.split_b.0, rep.split_b.1, rep.violations
    );
    if let Some(path) = &a.output.csv {
        let rows: Vec<Vec<String>> = rep
            .curves
            .iter()
            .flat_map(|c| {
                grid.iter().zip(c.values.iter().zip(&c.errors)).map(move |(t, (v, e))| {
                    vec![c.label.clone(), format_float(*t), format_float(*v), format_float(*e)]
                })
            })
            .collect();
        csv_to(path, &["label", "T", "I", "error"], &rows)?;
    }
    let report = ExperimentReport::new("recurrence", a, &rep)?
        .with_verdict("zero_violations", rep.violations == 0)
        .with_verdict("b_stable", rep.b_stable)
        .with_verdict("tails_flat", rep.curves.iter().all(|c| c.tail_flat));
    finish(report, &a.output, started, timing)
}

#[derive(Args, Debug, Serialize)]
pub struct DoublingArgs {
    #[arg(long, required = true)]
    pub origami: Vec<String>,
    #[arg(long)]
    pub marked: bool,
    /// Radii for the doubling inequality
    #[arg(long = "R", value_delimiter = ',', default_value = "4,8,16,32", allow_hyphen_values = true)]
    pub r: Vec<f64>,
    /// The uniform bound uses radii 16, 32, … up to this value
    #[arg(long = "Rmax", default_value_t = 1024.0, allow_hyphen_values = true)]
    pub r_max: f64,
    /// Geodesic times s for the uniform bound family g_s·X
    #[arg(long, value_delimiter = ',', default_value = "0,1,2", allow_hyphen_values = true)]
    pub geodesic: Vec<f64>,
    /// Relative quadrature tolerance for the circle integrals
    #[arg(long, default_value_t = 1e-6, allow_hyphen_values = true)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

pub fn doubling(a: &DoublingArgs, timing: bool) -> Result<Status> {
    let started = Instant::now();
    let tol = input::tolerance(a.tol)?;
    for &r in &a.r {
        if !(r.is_finite() && r >= 1.0) {
            return Err(invalid(format!("--R values must be at least 1, got {r}")));
        }
    }
    let r_max = input::positive("--Rmax", a.r_max)?;
    let radii: Vec<f64> = (4..).map(|k| f64::powi(2.0, k)).take_while(|&r| r <= r_max).collect();
    if radii.len() < 2 {
        return Err(invalid(format!("--Rmax must be at least 32, got {r_max}")));
    }
    let origamis = input::origamis(&a.origami)?;

    let mut instances = Vec::new();
    for o in &origamis {
        let s = AffineSurface::identity(Surface::new(o.clone(), a.marked));
        for &r in &a.r {
            instances.push(doubling_check(&o.to_string(), &s, r, tol)?);
        }
    }
    let summary = summarize_doubling(instances);
    println!("doubling: smallest dominating c = {:.6} over {} instances", summary.c, summary.instances.len());

    let family = geodesic_family(origamis, a.marked, &a.geodesic)?;
    let uniform = uniform_bound(&family, &radii)?;
    println!("uniform: c_max = {:.6} at {} R = {}", uniform.c_max, uniform.argmax.0, uniform.argmax.1);

    if let Some(path) = &a.output.csv {
        let rows: Vec<Vec<String>> = summary
            .instances
            .iter()
            .map(|i| {
                vec![
                    i.label.clone(),
                    format_float(i.r),
                    format_float(i.n_r),
                    format_float(i.n_2r),
                    format_float(i.integral),
                    format_float(i.ratio),
                ]
            })
            .collect();
        csv_to(path, &["label", "R", "N_R", "N_2R", "integral", "ratio"], &rows)?;
    }
    let results = json!({ "doubling": summary, "uniform": uniform });
    let report = ExperimentReport::new("doubling", a, &results)?
        .with_verdict("doubling_dominated", summary.dominated)
        .with_verdict("uniform_stabilized", uniform.all_stabilized);
    finish(report, &a.output, started, timing)
}

#[derive(Args, Debug, Serialize)]
pub struct ConvergeArgs {
    /// Square counts, a..b inclusive
    #[arg(long, default_value = "3..8")]
    pub n: String,
    /// Counting radius (unit-area lengths)
    #[arg(long = "R", default_value_t = 1000.0, allow_hyphen_values = true)]
    pub r: f64,
    /// JSON-lines file of finished (n, orbit) cells; reused on restart
    #[arg(long)]
    #[serde(skip)]
    pub checkpoint: Option<PathBuf>,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

pub fn converge(a: &ConvergeArgs, timing: bool) -> Result<Status> {
    let started = Instant::now();
    let (lo, hi) = input::n_range(&a.n)?;
    if lo < 3 {
        return Err(invalid(format!("--n must start at 3 or above for H(2), got {}", a.n)));
    }
    let r = input::positive("--R", a.r)?;
    let rep = convergence_experiment(lo, hi, r, a.checkpoint.as_deref())?;
    for s in &rep.sizes {
        println!("n = {}: {} orbits, mean c = {:.6}, mean |c - 10/pi| = {:.6}", s.n, s.orbits, s.mean_c_hat, s.mean_distance);
    }
    println!(
        "convention factor {}: {:.6} vs target {:.6} (relative error {:.4})",
        rep.convention.label, rep.convention.converted_mean, rep.target, rep.convention.relative_error
    );
    if let Some(path) = &a.output.csv {
        let rows: Vec<Vec<String>> = rep
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.orbit_id.to_string(),
                    r.orbit_size.to_string(),
                    r.representative.clone(),
                    format_float(r.c_hat),
                    format_float(r.least_squares),
                    format_float(r.distance),
                ]
            })
            .collect();
        csv_to(path, &["n", "orbit_id", "orbit_size", "representative", "c_hat", "least_squares", "distance"], &rows)?;
    }
    let report = ExperimentReport::new("converge", a, &rep)?
        .with_verdict("improves", rep.improves)
        .with_verdict("within_tolerance", rep.within_tolerance);
    finish(report, &a.output, started, timing)
}
