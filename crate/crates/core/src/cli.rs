//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and maps errors to exit codes.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dof::{gdof_corner, mc_gdof, prediction_jacobian, McConfig};
use crate::error::{Error, Result};
use crate::geometry::{
    enumerate_signatures, expand_template, inverse_rays, ray_membership, simplex_template,
    SignPattern, SimplexDescriptor,
};
use crate::io::{self, fmt_num, RunManifest, Table};
use crate::linalg;
use crate::model::{exp_correlation, spectrum_from_gram, EigenSpectrum, ObservationVector, PlsConfig, SquaredObservation};
use crate::shrinkage::{corner_shrinkage, shrinkage_average, shrinkage_direct};
use crate::subset::{check_enum_cap, subsets, IndexSubset};

#[derive(Debug, Parser)]
#[command(name = "plsgeom", version, about = "Shrinkage geometry of partial least squares")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shrinkage, relative residual and coordinates for one observation.
    Shrink(ShrinkArgs),
    /// Corner shrinkages and DoF estimators for every n-subset.
    Corners(CornersArgs),
    /// Admissible sign patterns and simplex templates.
    Signatures(SignaturesArgs),
    /// Extremal rays of the cone of observations sharing z.
    Rays(RaysArgs),
    /// Prediction Jacobian and DoF estimators at one observation.
    Dof(DofArgs),
    /// Monte Carlo distribution of the DoF estimators.
    Mc(McArgs),
    /// Eigenvalues of a Gram matrix.
    Spectrum(SpectrumArgs),
    /// Exponential correlation matrix.
    ExpCorr(ExpCorrArgs),
}

#[derive(Debug, Args)]
struct SpectrumSource {
    /// Eigenvalues, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// File with one eigenvalue per line.
    #[arg(long)]
    lambda_file: Option<PathBuf>,
    /// Gram matrix CSV; its eigenvalues are used.
    #[arg(long)]
    gram: Option<PathBuf>,
    /// Smallest accepted relative gap between eigenvalues.
    #[arg(long, default_value_t = 1e-10)]
    distinct_tol: f64,
}

#[derive(Debug, Args)]
struct Tolerances {
    #[arg(long, default_value_t = 1e-12)]
    zero_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    solve_tol: f64,
    #[arg(long, default_value_t = 1_000_000)]
    enum_cap: u64,
}

impl Tolerances {
    fn config(&self, n: usize) -> PlsConfig {
        PlsConfig {
            n,
            zero_tol: self.zero_tol,
            solve_tol: self.solve_tol,
            enum_cap: self.enum_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Direct,
    Average,
    Both,
}

#[derive(Debug, Args)]
struct ShrinkArgs {
    #[command(flatten)]
    spectrum: SpectrumSource,
    /// Observation y, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long)]
    y_file: Option<PathBuf>,
    /// Squared observation ψ, comma separated.
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    psi_file: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value = "direct")]
    method: Method,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(Debug, Args)]
struct CornersArgs {
    #[command(flatten)]
    spectrum: SpectrumSource,
    /// Range of direction counts, `a..b` (inclusive) or a single value.
    #[arg(long)]
    n_range: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(Debug, Args)]
struct SignaturesArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    /// One-based indices of the n+1 simplex corners.
    #[arg(long)]
    simplex: Option<String>,
    /// List the strict completions of the simplex template.
    #[arg(long, requires = "simplex")]
    expand: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct RaysArgs {
    #[command(flatten)]
    spectrum: SpectrumSource,
    /// Relative residual z, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    z_file: Option<PathBuf>,
    /// Squared observation; z is computed from it and ψ is decomposed on the rays.
    #[arg(long)]
    psi: Option<String>,
    #[arg(long)]
    psi_file: Option<PathBuf>,
    /// Output of `shrink`; supplies ψ and z.
    #[arg(long)]
    from_shrink: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(Debug, Args)]
struct DofArgs {
    #[command(flatten)]
    spectrum: SpectrumSource,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long)]
    y_file: Option<PathBuf>,
    #[arg(long)]
    n: usize,
    /// Fail when the Jacobian deviates from finite differences by more.
    #[arg(long)]
    fd_tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(Debug, Args)]
struct McArgs {
    #[command(flatten)]
    spectrum: SpectrumSource,
    #[arg(long, allow_hyphen_values = true)]
    beta: String,
    #[arg(long)]
    sigma: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 20_000)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[command(flatten)]
    tol: Tolerances,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long)]
    gram: PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    distinct_tol: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExpCorrArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    rate: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Shrink(a) => cmd_shrink(a),
        Command::Corners(a) => cmd_corners(a),
        Command::Signatures(a) => cmd_signatures(a),
        Command::Rays(a) => cmd_rays(a),
        Command::Dof(a) => cmd_dof(a),
        Command::Mc(a) => cmd_mc(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::ExpCorr(a) => cmd_exp_corr(a),
    }
}

type Inputs = BTreeMap<String, String>;

fn ambiguous(what: &str) -> Error {
    Error::InvalidConfig(format!("{what} given more than once; pass exactly one source"))
}

/// Exactly one of an inline vector and a vector file.
fn vector_from(
    name: &str,
    inline: &Option<String>,
    file: &Option<PathBuf>,
    inputs: &mut Inputs,
) -> Result<Option<Vec<f64>>> {
    match (inline, file) {
        (Some(_), Some(_)) => Err(ambiguous(name)),
        (Some(s), None) => {
            inputs.insert(name.into(), s.clone());
            io::parse_inline(s).map(Some)
        }
        (None, Some(p)) => {
            inputs.insert(format!("{name}_file"), p.display().to_string());
            io::read_vector(p).map(Some)
        }
        (None, None) => Ok(None),
    }
}

fn load_spectrum(src: &SpectrumSource, inputs: &mut Inputs) -> Result<EigenSpectrum> {
    let vec = vector_from("lambda", &src.lambda, &src.lambda_file, inputs)?;
    match (vec, &src.gram) {
        (Some(_), Some(_)) => Err(ambiguous("spectrum")),
        (Some(v), None) => EigenSpectrum::with_tolerance(v, src.distinct_tol),
        (None, Some(p)) => {
            inputs.insert("gram".into(), p.display().to_string());
            spectrum_from_gram(&io::read_matrix(p)?, src.distinct_tol)
        }
        (None, None) => Err(Error::InvalidConfig(
            "a spectrum is required (--lambda, --lambda-file or --gram)".into(),
        )),
    }
}

fn emit(out: &Option<PathBuf>, contents: &str, command: &str, inputs: Inputs, seed: Option<u64>) -> Result<()> {
    match out {
        Some(path) => {
            io::write_file(path, contents)?;
            write_manifest(&sidecar(path, "manifest.json"), command, inputs, seed)
        }
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".");
    s.push(suffix);
    PathBuf::from(s)
}

fn write_manifest(path: &Path, command: &str, inputs: Inputs, seed: Option<u64>) -> Result<()> {
    let m = RunManifest::new(command, inputs, seed);
    io::write_file(path, &io::to_sorted_json(&m)?)
}

fn long_rows(table: &mut Table, quantity: &str, values: &[f64]) {
    for (i, v) in values.iter().enumerate() {
        table.push(vec![quantity.into(), (i + 1).to_string(), fmt_num(*v)]);
    }
}

fn cmd_shrink(a: ShrinkArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    let spectrum = load_spectrum(&a.spectrum, &mut inputs)?;
    let cfg = a.tol.config(a.n);
    inputs.insert("n".into(), a.n.to_string());
    inputs.insert("method".into(), format!("{:?}", a.method).to_lowercase());
    let y = vector_from("y", &a.y, &a.y_file, &mut inputs)?;
    let psi = vector_from("psi", &a.psi, &a.psi_file, &mut inputs)?;
    let psi = match (y, psi) {
        (Some(_), Some(_)) => return Err(ambiguous("observation")),
        (Some(y), None) => ObservationVector::new(y, cfg.zero_tol)?.squared(),
        (None, Some(p)) => SquaredObservation::new(p, cfg.zero_tol)?,
        (None, None) => {
            return Err(Error::InvalidConfig("an observation is required (--y or --psi)".into()))
        }
    };
    if psi.len() != spectrum.dim() {
        return Err(Error::DimensionMismatch {
            expected: spectrum.dim(),
            found: psi.len(),
        });
    }
    cfg.validate(spectrum.dim())?;

    let mut table = Table::new(["quantity", "key", "value"]);
    long_rows(&mut table, "psi", psi.values());
    let (triple, weights) = match a.method {
        Method::Direct => (shrinkage_direct(&spectrum, &psi, a.n, &cfg)?, None),
        Method::Average => {
            let avg = shrinkage_average(&spectrum, &psi, a.n, &cfg)?;
            (avg.triple, Some(avg.weights))
        }
        Method::Both => {
            let direct = shrinkage_direct(&spectrum, &psi, a.n, &cfg)?;
            let avg = shrinkage_average(&spectrum, &psi, a.n, &cfg)?;
            let dev = linalg::max_mixed_deviation(&avg.triple.omega, &direct.omega);
            eprintln!("max deviation between routes: {dev:.3e}");
            table.push(vec!["deviation".into(), "max".into(), fmt_num(dev)]);
            if !(dev <= cfg.solve_tol) {
                return Err(Error::CrossCheckFailure {
                    deviation: dev,
                    tolerance: cfg.solve_tol,
                });
            }
            (direct, Some(avg.weights))
        }
    };
    long_rows(&mut table, "omega", &triple.omega);
    long_rows(&mut table, "z", &triple.z);
    long_rows(&mut table, "alpha", &triple.alpha);
    for (tau, p) in weights.unwrap_or_default() {
        table.push(vec!["weight".into(), tau.to_field(), fmt_num(p)]);
    }
    emit(&a.out, &table.to_csv(), "shrink", inputs, None)
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidConfig(format!("bad range {s:?}, expected a..b"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            let (lo, hi) = (num(lo)?, num(hi)?);
            if lo > hi {
                return Err(bad());
            }
            Ok((lo, hi))
        }
        None => num(s).map(|v| (v, v)),
    }
}

/// Corner table with columns `n, tau, omega_1..omega_m, gdof, gdof_dp`.
pub fn corner_table(spectrum: &EigenSpectrum, lo: usize, hi: usize, base: &PlsConfig) -> Result<Table> {
    let m = spectrum.dim();
    let mut header = vec!["n".to_string(), "tau".to_string()];
    header.extend((1..=m).map(|i| format!("omega_{i}")));
    header.extend(["gdof".to_string(), "gdof_dp".to_string()]);
    let mut table = Table::new(header);
    for n in lo..=hi {
        let cfg = PlsConfig { n, ..*base };
        cfg.validate(m)?;
        check_enum_cap(m, n, cfg.enum_cap)?;
        for tau in subsets(m, n) {
            let corner = corner_shrinkage(spectrum, &tau, &cfg)?;
            let (g, dp) = gdof_corner(spectrum, &tau);
            let mut row = vec![n.to_string(), tau.to_field()];
            row.extend(corner.omega.iter().map(|w| fmt_num(*w)));
            row.extend([fmt_num(g), fmt_num(dp)]);
            table.push(row);
        }
    }
    Ok(table)
}

fn cmd_corners(a: CornersArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    let spectrum = load_spectrum(&a.spectrum, &mut inputs)?;
    let (lo, hi) = parse_range(&a.n_range)?;
    inputs.insert("n_range".into(), a.n_range.clone());
    let table = corner_table(&spectrum, lo, hi, &a.tol.config(lo.max(1)))?;
    emit(&a.out, &table.to_csv(), "corners", inputs, None)
}

fn positions_field(p: &SignPattern) -> String {
    p.change_positions()
        .unwrap_or_default()
        .iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(";")
}

/// Signature tables: Table-1 style enumeration, simplex template with its
/// vertices, or the strict completions of the template.
pub fn signature_table(m: usize, n: usize, simplex: Option<&IndexSubset>, expand: bool) -> Result<Table> {
    let Some(t) = simplex else {
        let mut table = Table::new(["pattern", "change_positions"]);
        for p in enumerate_signatures(m, n)? {
            table.push(vec![p.to_string(), positions_field(&p)]);
        }
        return Ok(table);
    };
    if t.len() != n + 1 {
        return Err(Error::SubsetSizeMismatch {
            expected: n + 1,
            found: t.len(),
        });
    }
    let template = simplex_template(m, t)?;
    if expand {
        let mut table = Table::new(["pattern", "change_positions"]);
        for p in expand_template(&template, n)? {
            table.push(vec![p.to_string(), positions_field(&p)]);
        }
        return Ok(table);
    }
    // vertex sign patterns only depend on the index sets
    let nodes: Vec<f64> = (0..m).map(|i| 0.5f64.powi(i as i32)).collect();
    let simplex = SimplexDescriptor::new(&EigenSpectrum::new(nodes)?, t)?;
    let mut table = Table::new(["row", "pattern"]);
    for (tau, sig) in simplex.vertices.iter().map(|(t, _)| t).zip(simplex.vertex_signatures()) {
        table.push(vec![format!("z_{tau}").replace(',', ";"), sig.to_string()]);
    }
    table.push(vec!["z".into(), template.to_string()]);
    Ok(table)
}

fn cmd_signatures(a: SignaturesArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    inputs.insert("m".into(), a.m.to_string());
    inputs.insert("n".into(), a.n.to_string());
    let simplex = match &a.simplex {
        Some(s) => {
            inputs.insert("simplex".into(), s.clone());
            Some(IndexSubset::parse(s, a.m)?)
        }
        None => None,
    };
    if a.expand {
        inputs.insert("expand".into(), "true".into());
    }
    let table = signature_table(a.m, a.n, simplex.as_ref(), a.expand)?;
    emit(&a.out, &table.to_csv(), "signatures", inputs, None)
}

/// `psi` and `z` rows of a `shrink` output file.
fn read_shrink_output(path: &Path) -> Result<(Vec<f64>, Vec<f64>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut psi = Vec::new();
    let mut z = Vec::new();
    for line in text.lines().skip(1) {
        let mut f = line.split(',');
        let (Some(q), Some(_), Some(v)) = (f.next(), f.next(), f.next()) else {
            continue;
        };
        let v = || v.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad value in {line:?}")));
        match q {
            "psi" => psi.push(v()?),
            "z" => z.push(v()?),
            _ => {}
        }
    }
    if psi.is_empty() || z.is_empty() {
        return Err(Error::Parse(format!("{}: no psi/z rows", path.display())));
    }
    Ok((psi, z))
}

#[derive(Serialize)]
struct RaySummary {
    k_z: usize,
    sections: Vec<usize>,
    signature: String,
    max_residual: f64,
    coefficients: Option<Vec<f64>>,
    decomposition_residual: Option<f64>,
}

fn cmd_rays(a: RaysArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    let spectrum = load_spectrum(&a.spectrum, &mut inputs)?;
    let cfg = a.tol.config(a.n);
    inputs.insert("n".into(), a.n.to_string());
    let z_in = vector_from("z", &a.z, &a.z_file, &mut inputs)?;
    let psi_in = vector_from("psi", &a.psi, &a.psi_file, &mut inputs)?;
    let shrink = match &a.from_shrink {
        Some(p) => {
            inputs.insert("from_shrink".into(), p.display().to_string());
            Some(read_shrink_output(p)?)
        }
        None => None,
    };
    let (z, psi) = match (z_in, psi_in, shrink) {
        (Some(z), None, None) => (z, None),
        (None, Some(p), None) => {
            let psi = SquaredObservation::new(p, cfg.zero_tol)?;
            let z = shrinkage_direct(&spectrum, &psi, a.n, &cfg)?.z;
            (z, Some(psi))
        }
        (None, None, Some((p, z))) => (z, Some(SquaredObservation::new(p, cfg.zero_tol)?)),
        (None, None, None) => {
            return Err(Error::InvalidConfig("one of --z, --psi or --from-shrink is required".into()))
        }
        _ => return Err(ambiguous("z source")),
    };
    let fan = inverse_rays(&spectrum, &z, a.n, &cfg)?;
    let decomposition = match &psi {
        Some(p) => Some(ray_membership(&spectrum, p, &z, &fan)?),
        None => None,
    };

    let m = spectrum.dim();
    let mut header = vec!["support".to_string()];
    header.extend((1..=m).map(|i| format!("d_{i}")));
    let mut table = Table::new(header);
    for (tau, ray) in fan.supports.iter().zip(&fan.rays) {
        let mut row = vec![tau.to_field()];
        row.extend(ray.iter().map(|v| fmt_num(*v)));
        table.push(row);
    }
    let summary = RaySummary {
        k_z: fan.k_z(),
        sections: fan.sections.clone(),
        signature: fan.signature.to_string(),
        max_residual: fan.max_residual,
        coefficients: decomposition.as_ref().map(|d| d.coefficients.clone()),
        decomposition_residual: decomposition.as_ref().map(|d| d.residual),
    };
    let json = io::to_sorted_json(&summary)?;
    match &a.out {
        Some(path) => io::write_file(&sidecar(path, "summary.json"), &json)?,
        None => eprint!("{json}"),
    }
    emit(&a.out, &table.to_csv(), "rays", inputs, None)
}

#[derive(Serialize)]
struct DofSummary {
    gdof_hat: f64,
    gdof_dp_hat: f64,
    fd_error: f64,
    omega: Vec<f64>,
}

fn cmd_dof(a: DofArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    let spectrum = load_spectrum(&a.spectrum, &mut inputs)?;
    let cfg = a.tol.config(a.n);
    inputs.insert("n".into(), a.n.to_string());
    let y = vector_from("y", &a.y, &a.y_file, &mut inputs)?
        .ok_or_else(|| Error::InvalidConfig("--y or --y-file is required".into()))?;
    let y = ObservationVector::new(y, cfg.zero_tol)?;
    let report = prediction_jacobian(&spectrum, &y, a.n, &cfg)?;
    if let Some(tol) = a.fd_tol {
        report.check_fd(tol)?;
    }
    let summary = io::to_sorted_json(&DofSummary {
        gdof_hat: report.gdof_hat,
        gdof_dp_hat: report.gdof_dp_hat,
        fd_error: report.fd_error,
        omega: report.omega.clone(),
    })?;
    match &a.out {
        Some(path) => {
            io::write_file(&sidecar(path, "summary.json"), &summary)?;
            emit(&a.out, &io::matrix_csv(&report.jacobian), "dof", inputs, None)
        }
        None => {
            print!("{summary}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct McSummary {
    mean: f64,
    se: Option<f64>,
    prob_negative: f64,
    excluded_count: usize,
    seed: u64,
}

fn cmd_mc(a: McArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    let spectrum = load_spectrum(&a.spectrum, &mut inputs)?;
    inputs.insert("beta".into(), a.beta.clone());
    inputs.insert("sigma".into(), a.sigma.to_string());
    inputs.insert("n".into(), a.n.to_string());
    inputs.insert("reps".into(), a.reps.to_string());
    let mc = McConfig {
        beta: io::parse_inline(&a.beta)?,
        sigma: a.sigma,
        replications: a.reps,
        seed: a.seed,
        n: a.n,
    };
    let res = mc_gdof(&spectrum, &mc, &a.tol.config(a.n))?;

    let mut reps = Table::new(["replicate", "gdof_hat", "gdof_dp_hat"]);
    for s in &res.samples {
        reps.push(vec![s.replicate.to_string(), fmt_num(s.gdof_hat), fmt_num(s.gdof_dp_hat)]);
    }
    let mut cdf = Table::new(["rank", "gdof_hat", "gdof_dp_hat"]);
    for (k, (g, dp)) in res.sorted_gdof().iter().zip(res.sorted_gdof_dp()).enumerate() {
        cdf.push(vec![(k + 1).to_string(), fmt_num(*g), fmt_num(dp)]);
    }
    let summary = McSummary {
        mean: res.mean_gdof,
        se: res.mc_se,
        prob_negative: res.prob_negative,
        excluded_count: res.excluded.len(),
        seed: a.seed,
    };
    if !res.excluded.is_empty() {
        eprintln!("excluded {} singular replicates", res.excluded.len());
    }
    let dir = &a.out_dir;
    io::write_file(&dir.join("replicates.csv"), &reps.to_csv())?;
    io::write_file(&dir.join("cdf.csv"), &cdf.to_csv())?;
    io::write_file(&dir.join("summary.json"), &io::to_sorted_json(&summary)?)?;
    write_manifest(&dir.join("manifest.json"), "mc", inputs, Some(a.seed))
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    inputs.insert("gram".into(), a.gram.display().to_string());
    let s = spectrum_from_gram(&io::read_matrix(&a.gram)?, a.distinct_tol)?;
    eprintln!("condition number: {:.6}", s.condition_number());
    emit(&a.out, &io::vector_csv(s.values()), "spectrum", inputs, None)
}

fn cmd_exp_corr(a: ExpCorrArgs) -> Result<()> {
    let mut inputs = Inputs::new();
    inputs.insert("m".into(), a.m.to_string());
    inputs.insert("rate".into(), a.rate.to_string());
    let g = exp_correlation(a.m, a.rate)?;
    emit(&a.out, &io::matrix_csv(&g), "exp-corr", inputs, None)
}
