//! Command-line front end.
//!
//! Every subcommand takes `--format csv|json`, `--output PATH` and
//! `--config PATH`; the config file is a flat JSON object whose keys are
//! the long flag names in snake_case. Flags override the file.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::constants::{atomic_scale, codata_defaults, PhysicalConstants};
use crate::error::{Error, Result};
use crate::galilean::{accelerated_hamiltonian, frame_check, frame_discrepancy, FrameCheckSpec};
use crate::ionization::{compare_lifetimes, lifetime_eq7, ComparisonReport, Lifetime};
use crate::mass::{derive_composites, MassModel};
use crate::oracle::manifold::MAX_MANIFOLD_N;
use crate::oracle::{degenerate_pt, richardson_energies, stabilization_scan, RadialGrid, StabilizationSpec};
use crate::parabolic::{evaluate_levels, splitting_table};
use crate::report::{emit_record, emit_table, num, Format, Table};
use crate::separation::{separate_gravitational, verify_separability, FieldSpec, SurrogateGrid};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

pub const DEFAULT_G: f64 = 9.8;

#[derive(Debug, Parser)]
#[command(name = "gravstark", version, about = "Hydrogen with independent inertial and gravitational masses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Physical constants in use.
    Constants(Common),
    /// CM and internal coefficients of the separated Hamiltonian.
    Separate(SeparateCmd),
    /// Bohr levels against the finite-difference radial oracle.
    Spectrum(SpectrumCmd),
    /// First-order splitting of level n, closed form and matrix oracle.
    Split(SplitCmd),
    /// Resonance lifetime from the closed form and from WKB.
    Lifetime(LifetimeCmd),
    /// Box-size stabilization scan of the 1D model.
    Stability(StabilityCmd),
    /// Numerical check of the accelerated-frame transformation.
    FrameCheck(FrameCheckCmd),
    /// Difference between a gravitational field and an accelerated frame.
    FrameDiff(FrameDiffCmd),
}

#[derive(Debug, Args, Default)]
struct Common {
    /// Output format: csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Output file (default: standard output).
    #[arg(long)]
    output: Option<PathBuf>,
    /// JSON file with default values for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FileCommon {
    format: Option<String>,
    output: Option<PathBuf>,
}

#[derive(Debug, Args, Deserialize, Default, Clone)]
#[serde(default)]
pub struct MassArgs {
    /// Electron inertial mass (kg).
    #[arg(long)]
    pub m_e: Option<f64>,
    /// Proton inertial mass (kg).
    #[arg(long)]
    pub m_p: Option<f64>,
    /// Electron gravitational mass (kg).
    #[arg(long)]
    pub mbar_e: Option<f64>,
    /// Proton gravitational mass (kg).
    #[arg(long)]
    pub mbar_p: Option<f64>,
    /// Electron inertial mass as a multiple of the CODATA electron mass.
    #[arg(long)]
    pub m_e_ratio: Option<f64>,
    /// Proton inertial mass as a multiple of the CODATA proton mass.
    #[arg(long)]
    pub m_p_ratio: Option<f64>,
    /// Electron gravitational mass as a multiple of the CODATA electron mass.
    #[arg(long)]
    pub mbar_e_ratio: Option<f64>,
    /// Proton gravitational mass as a multiple of the CODATA proton mass.
    #[arg(long)]
    pub mbar_p_ratio: Option<f64>,
    /// Asymmetry coupling 𝓜 (kg); sets the electron gravitational mass.
    #[arg(long)]
    pub script_m: Option<f64>,
    /// 𝓜 as a multiple of the CODATA electron mass.
    #[arg(long)]
    pub script_m_ratio: Option<f64>,
    /// Gravitational masses equal to inertial masses.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub equivalence: Option<bool>,
}

#[derive(Debug, Args, Deserialize, Default, Clone)]
#[serde(default)]
pub struct FieldArgs {
    /// Field magnitude (m/s²).
    #[arg(long)]
    pub g: Option<f64>,
    /// Field direction: x, y, z, -x, -y, -z or "ax,ay,az".
    #[arg(long, allow_hyphen_values = true)]
    pub axis: Option<String>,
}

#[derive(Debug, Args)]
struct SeparateCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    mass: MassArgs,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    params: SeparateParams,
}

#[derive(Debug, Args, Deserialize, Default)]
#[serde(default)]
struct SeparateParams {
    /// Also report the numerical separability residual.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    verify: Option<bool>,
}

#[derive(Debug, Args)]
struct SpectrumCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    mass: MassArgs,
    #[command(flatten)]
    params: SpectrumParams,
}

#[derive(Debug, Args, Deserialize, Default)]
#[serde(default)]
struct SpectrumParams {
    /// Highest principal quantum number (1..=10).
    #[arg(long)]
    n_max: Option<u32>,
    /// Radial box length (Bohr).
    #[arg(long = "box")]
    #[serde(rename = "box")]
    box_len: Option<f64>,
    /// Grid spacing (Bohr).
    #[arg(long)]
    spacing: Option<f64>,
}

#[derive(Debug, Args)]
struct SplitCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    mass: MassArgs,
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    params: SplitParams,
}

#[derive(Debug, Args, Deserialize, Default)]
#[serde(default)]
struct SplitParams {
    /// Principal quantum number.
    #[arg(long)]
    n: Option<u32>,
    /// List every parabolic state instead of the sublevel table.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    levels: Option<bool>,
}

#[derive(Debug, Args)]
struct LifetimeCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    mass: MassArgs,
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Debug, Args)]
struct StabilityCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    params: StabilityParams,
}

#[derive(Debug, Args, Deserialize, Default)]
#[serde(default)]
struct StabilityParams {
    /// Box lengths (Bohr), comma separated.
    #[arg(long, value_delimiter = ',')]
    boxes: Option<Vec<f64>>,
    /// Field strength F (atomic units).
    #[arg(long, allow_hyphen_values = true)]
    force: Option<f64>,
    /// Energy window "lo,hi" (Hartree).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    window: Option<Vec<f64>>,
    /// Grid spacing (Bohr).
    #[arg(long)]
    spacing: Option<f64>,
}

#[derive(Debug, Args)]
struct FrameCheckCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    params: FrameCheckParams,
}

#[derive(Debug, Args, Deserialize, Default)]
#[serde(default)]
struct FrameCheckParams {
    /// Frame acceleration (dimensionless units).
    #[arg(long, allow_hyphen_values = true)]
    accel: Option<f64>,
    /// Propagation time.
    #[arg(long)]
    duration: Option<f64>,
    /// Grid points (power of two, >= 256).
    #[arg(long)]
    points: Option<usize>,
    /// Time steps.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    /// Initial packet width.
    #[arg(long)]
    sigma: Option<f64>,
    /// Initial packet centre.
    #[arg(long, allow_hyphen_values = true)]
    center: Option<f64>,
    /// Initial mean wavenumber.
    #[arg(long, allow_hyphen_values = true)]
    k0: Option<f64>,
}

#[derive(Debug, Args)]
struct FrameDiffCmd {
    #[command(flatten)]
    common: Common,
    #[command(flatten)]
    mass: MassArgs,
    #[command(flatten)]
    field: FieldArgs,
}

/// Fills unset fields of `self` from `file`.
trait Merge {
    fn merge(self, file: Self) -> Self;
}

macro_rules! merge_fields {
    ($t:ty { $($f:ident),* $(,)? }) => {
        impl Merge for $t {
            fn merge(self, file: Self) -> Self {
                Self { $($f: self.$f.or(file.$f)),* }
            }
        }
    };
}

merge_fields!(FileCommon { format, output });
merge_fields!(MassArgs { m_e, m_p, mbar_e, mbar_p, m_e_ratio, m_p_ratio, mbar_e_ratio, mbar_p_ratio, script_m, script_m_ratio, equivalence });
merge_fields!(FieldArgs { g, axis });
merge_fields!(SeparateParams { verify });
merge_fields!(SpectrumParams { n_max, box_len, spacing });
merge_fields!(SplitParams { n, levels });
merge_fields!(StabilityParams { boxes, force, window, spacing });
merge_fields!(FrameCheckParams { accel, duration, points, steps, x_min, x_max, sigma, center, k0 });

struct Config(Option<Value>);

impl Config {
    fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else { return Ok(Config(None)) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("config {}: {e}", path.display())))?;
        if !value.is_object() {
            return Err(Error::InvalidInput("config file must hold a JSON object".into()));
        }
        Ok(Config(Some(value)))
    }

    fn get<T: DeserializeOwned + Default>(&self) -> Result<T> {
        match &self.0 {
            None => Ok(T::default()),
            Some(v) => serde_json::from_value(strip_common(v))
                .map_err(|e| Error::InvalidInput(format!("config: {e}"))),
        }
    }

    fn common(&self) -> Result<FileCommon> {
        match &self.0 {
            None => Ok(FileCommon::default()),
            Some(Value::Object(map)) => {
                let picked: serde_json::Map<String, Value> = map
                    .iter()
                    .filter(|(k, _)| k.as_str() == "format" || k.as_str() == "output")
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect();
                serde_json::from_value(Value::Object(picked)).map_err(|e| Error::InvalidInput(format!("config: {e}")))
            }
            Some(_) => unreachable!("checked on load"),
        }
    }
}

fn strip_common(v: &Value) -> Value {
    let mut v = v.clone();
    if let Value::Object(map) = &mut v {
        map.remove("format");
        map.remove("output");
    }
    v
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::InvalidInput(format!("{what} must be positive and finite, got {v}")))
    }
}

/// Builds the mass model from absolute masses, CODATA ratios, a target 𝓜
/// or the equivalence shortcut.
pub fn resolve_masses(args: &MassArgs, k: &PhysicalConstants) -> Result<MassModel> {
    fn pick(what: &str, abs: Option<f64>, ratio: Option<f64>, reference: f64) -> Result<Option<f64>> {
        match (abs, ratio) {
            (Some(_), Some(_)) => Err(Error::InvalidInput(format!("--{what} and --{what}-ratio are mutually exclusive"))),
            (Some(v), None) => Ok(Some(v)),
            (None, Some(r)) => Ok(Some(r * reference)),
            (None, None) => Ok(None),
        }
    }
    let m_e = pick("m-e", args.m_e, args.m_e_ratio, k.m_e_ref)?.unwrap_or(k.m_e_ref);
    let m_p = pick("m-p", args.m_p, args.m_p_ratio, k.m_p_ref)?.unwrap_or(k.m_p_ref);
    let mbar_e = pick("mbar-e", args.mbar_e, args.mbar_e_ratio, k.m_e_ref)?;
    let mbar_p = pick("mbar-p", args.mbar_p, args.mbar_p_ratio, k.m_p_ref)?;
    let script_m = pick("script-m", args.script_m, args.script_m_ratio, k.m_e_ref)?;
    let gravitational_given = mbar_e.is_some() || mbar_p.is_some() || script_m.is_some();

    if args.equivalence == Some(true) {
        if gravitational_given {
            return Err(Error::InvalidInput("--equivalence excludes gravitational-mass flags".into()));
        }
        return MassModel::new(m_e, m_p, m_e, m_p);
    }
    if let Some(sm) = script_m {
        if mbar_e.is_some() || mbar_p.is_some() {
            return Err(Error::InvalidInput("--script-m excludes --mbar-e/--mbar-p".into()));
        }
        return MassModel::from_script_m(m_e, m_p, sm);
    }
    MassModel::new(m_e, m_p, mbar_e.unwrap_or(m_e), mbar_p.unwrap_or(m_p))
}

fn parse_axis(s: &str) -> Result<[f64; 3]> {
    let v = match s.trim() {
        "x" | "+x" => [1.0, 0.0, 0.0],
        "y" | "+y" => [0.0, 1.0, 0.0],
        "z" | "+z" => [0.0, 0.0, 1.0],
        "-x" => [-1.0, 0.0, 0.0],
        "-y" => [0.0, -1.0, 0.0],
        "-z" => [0.0, 0.0, -1.0],
        other => {
            let parts: Vec<f64> = other
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("cannot parse axis '{other}'")))?;
            <[f64; 3]>::try_from(parts)
                .map_err(|_| Error::InvalidInput(format!("axis '{other}' needs three components")))?
        }
    };
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::InvalidInput(format!("axis '{s}' has no direction")));
    }
    Ok([v[0] / n, v[1] / n, v[2] / n])
}

pub fn resolve_field(args: &FieldArgs) -> Result<FieldSpec> {
    let g = args.g.unwrap_or(DEFAULT_G);
    let axis = match &args.axis {
        Some(s) => parse_axis(s)?,
        None => [0.0, 0.0, 1.0],
    };
    FieldSpec::new(g, axis)
}

struct Sink {
    format: Format,
    output: Option<PathBuf>,
}

impl Sink {
    fn new(common: &Common, config: &Config) -> Result<Self> {
        let merged = FileCommon {
            format: common.format.clone(),
            output: common.output.clone(),
        }
        .merge(config.common()?);
        let format = match merged.format {
            Some(f) => f.parse()?,
            None => Format::Csv,
        };
        Ok(Sink {
            format,
            output: merged.output,
        })
    }

    fn write(&self, stdout: &mut dyn Write, body: impl FnOnce(Format, &mut dyn Write) -> Result<()>) -> Result<()> {
        match &self.output {
            None => body(self.format, stdout),
            Some(path) => {
                let file = File::create(path)
                    .map_err(|e| Error::InvalidInput(format!("cannot create {}: {e}", path.display())))?;
                let mut w = BufWriter::new(file);
                body(self.format, &mut w)?;
                w.flush().map_err(|e| Error::Output(e.to_string()))
            }
        }
    }

    fn table(&self, stdout: &mut dyn Write, table: &Table) -> Result<()> {
        self.write(stdout, |f, w| emit_table(table, f, w))
    }

    fn record(&self, stdout: &mut dyn Write, columns: &[&str], values: Vec<Value>) -> Result<()> {
        self.write(stdout, |f, w| emit_record(columns, values, f, w))
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit code. Diagnostics go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(rendered.as_bytes());
                    EXIT_CONFIG
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if e.is_config() {
                EXIT_CONFIG
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<()> {
    let k = codata_defaults();
    match command {
        Command::Constants(common) => {
            let config = Config::load(common.config.as_deref())?;
            let sink = Sink::new(&common, &config)?;
            sink.record(
                out,
                &["hbar", "c", "alpha", "e_charge", "eps0", "m_e", "m_p", "alpha_self_consistency"],
                vec![
                    num(k.hbar),
                    num(k.c),
                    num(k.alpha),
                    num(k.e_charge),
                    num(k.eps0),
                    num(k.m_e_ref),
                    num(k.m_p_ref),
                    num(k.self_consistency()),
                ],
            )
        }
        Command::Separate(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let model = resolve_masses(&cmd.mass.merge(config.get()?), &k)?;
            let field = resolve_field(&cmd.field.merge(config.get()?))?;
            let params = cmd.params.merge(config.get()?);
            let c = derive_composites(&model)?;
            let h = separate_gravitational(&model, &field)?;
            let mut columns = vec![
                "M_kg",
                "mu_kg",
                "Mbar_kg",
                "M_script_kg",
                "g",
                "cm_coupling_N",
                "internal_coupling_N",
                "coulomb_present",
                "axis_x",
                "axis_y",
                "axis_z",
            ];
            let mut values = vec![
                num(c.total),
                num(c.reduced),
                num(c.total_grav),
                num(c.script_m),
                num(field.magnitude),
                num(h.cm_coupling),
                num(h.internal_coupling),
                json!(h.coulomb_present),
                num(h.axis[0]),
                num(h.axis[1]),
                num(h.axis[2]),
            ];
            if params.verify == Some(true) {
                columns.push("separability_residual");
                values.push(num(verify_separability(&model, &field, &k, &SurrogateGrid::default())?));
            }
            sink.record(out, &columns, values)
        }
        Command::Spectrum(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let model = resolve_masses(&cmd.mass.merge(config.get()?), &k)?;
            let p = cmd.params.merge(config.get()?);
            let n_max = p.n_max.unwrap_or(5);
            if !(1..=10).contains(&n_max) {
                return Err(Error::out_of_range("n_max", n_max, "1..=10"));
            }
            let box_len = positive("box", p.box_len.unwrap_or(default_spectrum_box(n_max)))?;
            let spacing = positive("spacing", p.spacing.unwrap_or(0.005))?;
            let c = derive_composites(&model)?;
            let scale = atomic_scale(&k, c.reduced)?;
            let grid = RadialGrid::with_spacing(box_len, spacing)?;
            let energies = richardson_energies(&grid, 0, n_max as usize)?;
            let mut table = Table::new(&["n", "E_bohr_hartree", "E_oracle_hartree", "rel_error", "E_bohr_J"]);
            for (i, e) in energies.iter().enumerate() {
                let n = i as u32 + 1;
                let exact = -0.5 / f64::from(n * n);
                table.push(vec![
                    json!(n),
                    num(exact),
                    num(*e),
                    num(((e - exact) / exact).abs()),
                    num(scale.bohr_energy(n)),
                ])?;
            }
            sink.table(out, &table)
        }
        Command::Split(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let model = resolve_masses(&cmd.mass.merge(config.get()?), &k)?;
            let field = resolve_field(&cmd.field.merge(config.get()?))?;
            let p = cmd.params.merge(config.get()?);
            let n = p.n.unwrap_or(2);
            let c = derive_composites(&model)?;
            if p.levels == Some(true) {
                let mut table = Table::new(&["n", "n1", "n2", "m", "k", "E0_J", "shift_J", "E_J"]);
                for l in evaluate_levels(n, &c, &field, &k)? {
                    table.push(vec![
                        json!(l.n),
                        json!(l.n1),
                        json!(l.n2),
                        json!(l.m),
                        json!(l.k),
                        num(l.e0),
                        num(l.shift),
                        num(l.energy()),
                    ])?;
                }
                return sink.table(out, &table);
            }
            let split = splitting_table(n, &c, &field, &k)?;
            let oracle = if n <= MAX_MANIFOLD_N {
                Some(degenerate_pt(n, &c, &field, &k)?)
            } else {
                None
            };
            let mut table = Table::new(&[
                "n",
                "k",
                "multiplicity",
                "shift_J",
                "E_J",
                "spacing_J",
                "oracle_shift_J",
                "oracle_multiplicity",
                "rel_diff",
            ]);
            for s in &split.sublevels {
                // pair each sublevel with the oracle group closest in shift
                let matched = oracle.as_ref().and_then(|groups| {
                    groups
                        .iter()
                        .min_by(|a, b| (a.shift - s.shift).abs().total_cmp(&(b.shift - s.shift).abs()))
                });
                let (o_shift, o_mult, rel) = match matched {
                    Some(g) => {
                        let rel = if s.shift == 0.0 && g.shift == 0.0 {
                            0.0
                        } else {
                            (g.shift - s.shift).abs() / s.shift.abs().max(split.spacing)
                        };
                        (num(g.shift), json!(g.multiplicity), num(rel))
                    }
                    None => (Value::Null, Value::Null, Value::Null),
                };
                table.push(vec![
                    json!(split.n),
                    json!(s.k),
                    json!(s.multiplicity),
                    num(s.shift),
                    num(s.energy),
                    num(split.spacing),
                    o_shift,
                    o_mult,
                    rel,
                ])?;
            }
            sink.table(out, &table)
        }
        Command::Lifetime(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let model = resolve_masses(&cmd.mass.merge(config.get()?), &k)?;
            let field = resolve_field(&cmd.field.merge(config.get()?))?;
            let c = derive_composites(&model)?;
            let columns = [
                "M_script_kg",
                "g",
                "stable",
                "F_atomic",
                "exponent_eq7",
                "log10_tau_eq7_s",
                "wkb_exponent",
                "log10_tau_wkb_s",
                "ratio",
                "ratio_outside_window",
            ];
            let values = match compare_lifetimes(&c, &field, &k)? {
                ComparisonReport::Stable { script_m, g } => {
                    debug_assert!(matches!(lifetime_eq7(&c, &field, &k), Ok(Lifetime::Stable)));
                    let mut v = vec![num(script_m), num(g), json!(true)];
                    v.extend(std::iter::repeat_n(Value::Null, columns.len() - 3));
                    v
                }
                ComparisonReport::Compared(r) => vec![
                    num(r.script_m),
                    num(r.g),
                    json!(false),
                    num(r.force_atomic),
                    num(r.exponent_eq7),
                    num(r.log10_tau_eq7),
                    num(r.wkb_exponent),
                    num(r.log10_tau_wkb),
                    num(r.ratio),
                    json!(r.ratio_outside_window),
                ],
            };
            sink.record(out, &columns, values)
        }
        Command::Stability(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let p = cmd.params.merge(config.get()?);
            let defaults = StabilizationSpec::default();
            let window = match p.window {
                None => defaults.window,
                Some(w) if w.len() == 2 => (w[0], w[1]),
                Some(w) => return Err(Error::InvalidInput(format!("window needs two values, got {}", w.len()))),
            };
            let spec = StabilizationSpec {
                box_sizes: p.boxes.unwrap_or(defaults.box_sizes),
                force: p.force.unwrap_or(defaults.force),
                window,
                spacing: p.spacing.unwrap_or(defaults.spacing),
            };
            let mut table = Table::new(&["box_size", "eigenvalue", "local_level_spacing", "spacing_times_box"]);
            for pt in stabilization_scan(&spec)? {
                table.push(vec![
                    num(pt.box_size),
                    num(pt.eigenvalue),
                    num(pt.local_level_spacing),
                    num(pt.local_level_spacing * pt.box_size),
                ])?;
            }
            sink.table(out, &table)
        }
        Command::FrameCheck(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let p = cmd.params.merge(config.get()?);
            let d = FrameCheckSpec::default();
            let spec = FrameCheckSpec {
                acceleration: p.accel.unwrap_or(d.acceleration),
                duration: p.duration.unwrap_or(d.duration),
                points: p.points.unwrap_or(d.points),
                steps: p.steps.unwrap_or(d.steps),
                x_min: p.x_min.unwrap_or(d.x_min),
                x_max: p.x_max.unwrap_or(d.x_max),
                center: p.center.unwrap_or(d.center),
                sigma: p.sigma.unwrap_or(d.sigma),
                wavenumber: p.k0.unwrap_or(d.wavenumber),
                ..d
            };
            let r = frame_check(&spec)?;
            sink.record(
                out,
                &["fidelity", "max_pointwise_error", "grid", "steps"],
                vec![num(r.fidelity), num(r.max_pointwise_error), json!(r.grid), json!(r.steps)],
            )
        }
        Command::FrameDiff(cmd) => {
            let config = Config::load(cmd.common.config.as_deref())?;
            let sink = Sink::new(&cmd.common, &config)?;
            let model = resolve_masses(&cmd.mass.merge(config.get()?), &k)?;
            let field = resolve_field(&cmd.field.merge(config.get()?))?;
            let c = derive_composites(&model)?;
            let d = frame_discrepancy(&model, field.magnitude)?;
            let acc = accelerated_hamiltonian(&model, field.vector())?;
            sink.record(
                out,
                &[
                    "M_script_kg",
                    "g",
                    "cm_mass_ratio",
                    "internal_coupling_difference",
                    "accelerated_internal_coupling",
                    "effective_grav_mass_kg",
                ],
                vec![
                    num(c.script_m),
                    num(field.magnitude),
                    num(d.cm_mass_ratio),
                    num(d.internal_coupling_difference),
                    num(acc.internal_coupling),
                    num(acc.effective_grav_mass),
                ],
            )
        }
    }
}

/// Box long enough for the ns tail to vanish at the default spacing.
fn default_spectrum_box(n_max: u32) -> f64 {
    (12.0 * f64::from(n_max * n_max)).max(60.0)
}
