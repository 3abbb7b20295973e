//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::entanglement::wootters_concurrence;
use crate::error::{Error, Result};
use crate::format::{format_number, round_sig};
use crate::linalg::RealMatrix;
use crate::model::{build_full_hamiltonian, Couplings, QubitParams};
use crate::sweep::{
    compare_experiments, figure_dataset, run_sweep, AxisValues, FigureDataset, FigureId,
    FigureOverrides, GridSpec, Param,
};
use crate::thermal::{
    closed_form_density, gibbs_state, zero_temperature_state, zero_temperature_state_of,
    Temperature, ThermalState,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const BASIS: [&str; 4] = ["00", "01", "10", "11"];

#[derive(Debug, Parser)]
#[command(
    name = "qubit-ent",
    version,
    about = "Entanglement of two capacitively coupled charge qubits"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Concurrence at one parameter point (T -> 0 when --t is omitted)
    Concurrence(PointArgs),
    /// Dump the 4x4 density matrix in the basis |00>, |01>, |10>, |11>
    Density(DensityArgs),
    /// Concurrence over a 1- or 2-axis grid
    Sweep(SweepArgs),
    /// Write the fig1..fig5 datasets
    Figures(FiguresArgs),
    /// Recompute the two published experiment comparison points
    Verify,
}

#[derive(Debug, Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Csv,
    Json,
}

fn finite_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{s} is not a finite number"))
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("josephson").required(true).args(["ej", "ej1"])))]
struct PointArgs {
    /// Josephson energy of both qubits
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, conflicts_with_all = ["ej1", "ej2"])]
    ej: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, requires = "ej2")]
    ej1: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, requires = "ej1")]
    ej2: Option<f64>,
    /// Mutual coupling energy (the energy unit)
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, default_value_t = 1.0)]
    em: f64,
    /// Temperature in units of E_m/k; omit for the T -> 0 limit
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    t: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, default_value_t = 0.5)]
    ng1: f64,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, default_value_t = 0.5)]
    ng2: f64,
    /// Charging energies; only matter away from n_g = 0.5
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, default_value_t = 1.0)]
    ec1: f64,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true, default_value_t = 1.0)]
    ec2: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    /// Output file (default stdout)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl PointArgs {
    fn params(&self) -> Result<QubitParams> {
        let (e_j1, e_j2) = match self.ej {
            Some(ej) => (ej, ej),
            None => (self.ej1.unwrap_or_default(), self.ej2.unwrap_or_default()),
        };
        Ok(
            QubitParams::at_degeneracy(Couplings::new(e_j1, e_j2, self.em)?)
                .with_charging(self.ec1, self.ec2)
                .with_gate_charges(self.ng1, self.ng2),
        )
    }

    fn temperature(&self) -> Result<Option<Temperature>> {
        self.t.map(Temperature::new).transpose()
    }
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Also print the closed-form matrix and the max element-wise difference
    #[arg(long)]
    check: bool,
}

/// `name:start:stop:count` or `name=v1,v2,...`
#[derive(Debug, Clone)]
struct AxisArg(Param, AxisValues);

fn parse_axis(s: &str) -> std::result::Result<AxisArg, String> {
    let bad = || format!("expected name:start:stop:count or name=v1,v2,..., got {s:?}");
    if let Some((name, list)) = s.split_once('=') {
        let p: Param = name.parse().map_err(|e: Error| e.to_string())?;
        let values = list
            .split(',')
            .map(finite_f64)
            .collect::<std::result::Result<Vec<_>, _>>()?;
        return Ok(AxisArg(p, AxisValues::list(values)));
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let p: Param = parts[0].parse().map_err(|e: Error| e.to_string())?;
    let start = finite_f64(parts[1])?;
    let stop = finite_f64(parts[2])?;
    let count: usize = parts[3].parse().map_err(|_| bad())?;
    Ok(AxisArg(p, AxisValues::linear(start, stop, count)))
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Grid axis, repeatable (at most two)
    #[arg(long = "axis", value_parser = parse_axis, required = true)]
    axes: Vec<AxisArg>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    ej: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    ej1: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    ej2: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    em: Option<f64>,
    #[arg(long, value_parser = finite_f64, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Physical temperature in mK; only used to warn above 450 mK
    #[arg(long, value_parser = finite_f64)]
    physical_mk: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Directory for fig<N>.csv / fig<N>.json
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Generate a single figure
    #[arg(long, value_parser = ["fig1", "fig2", "fig3", "fig4", "fig5"])]
    only: Option<String>,
    /// Evaluate the "T = 20 mK" figures at t = 20 instead of t = 0.01
    #[arg(long)]
    literal_t: bool,
    #[arg(long, value_parser = finite_f64)]
    em: Option<f64>,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{rendered}");
            } else {
                let _ = write!(stderr, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Concurrence(a) => cmd_concurrence(&a, stdout),
        Command::Density(a) => cmd_density(&a, stdout),
        Command::Sweep(a) => cmd_sweep(&a, stdout),
        Command::Figures(a) => cmd_figures(&a, stdout),
        Command::Verify => cmd_verify(stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::InvalidGrid(_) | Error::UnknownFigure(_) => EXIT_USAGE,
                _ => EXIT_DOMAIN,
            }
        }
    }
}

fn emit(out: Option<&Path>, stdout: &mut dyn Write, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn state_for(a: &PointArgs) -> Result<ThermalState> {
    let p = a.params()?;
    let t = a.temperature()?;
    if p.is_degeneracy_point() {
        match t {
            Some(t) => gibbs_state(&crate::model::build_degenerate_hamiltonian(&p.couplings), t),
            None => Ok(zero_temperature_state(&p.couplings)),
        }
    } else {
        let h = build_full_hamiltonian(&p)?;
        match t {
            Some(t) => gibbs_state(&h, t),
            None => zero_temperature_state_of(&h),
        }
    }
}

fn cmd_concurrence(a: &PointArgs, stdout: &mut dyn Write) -> Result<i32> {
    let p = a.params()?;
    let c = wootters_concurrence(&state_for(a)?)?.value();
    let cc = &p.couplings;
    let t_cell = a.t.map(format_number).unwrap_or_default();
    let mode = if a.t.is_some() { "thermal" } else { "ground" };
    let text = match a.format {
        Format::Csv => format!(
            "e_j1,e_j2,e_m,t,n_g1,n_g2,mode,concurrence\n{},{},{},{},{},{},{},{}\n",
            format_number(cc.e_j1()),
            format_number(cc.e_j2()),
            format_number(cc.e_m()),
            t_cell,
            format_number(p.n_g1),
            format_number(p.n_g2),
            mode,
            format_number(c)
        ),
        Format::Json => {
            let v = json!({
                "e_j1": round_sig(cc.e_j1()),
                "e_j2": round_sig(cc.e_j2()),
                "e_m": round_sig(cc.e_m()),
                "t": a.t.map(round_sig),
                "n_g1": round_sig(p.n_g1),
                "n_g2": round_sig(p.n_g2),
                "mode": mode,
                "concurrence": round_sig(c),
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(a.out.as_deref(), stdout, &text)?;
    Ok(EXIT_OK)
}

fn matrix_rows(m: &RealMatrix) -> Vec<Vec<f64>> {
    (0..4)
        .map(|i| m.row(i).iter().map(|&v| round_sig(v)).collect())
        .collect()
}

fn cmd_density(a: &DensityArgs, stdout: &mut dyn Write) -> Result<i32> {
    let spectral = state_for(&a.point)?;
    let closed = if a.check {
        let p = a.point.params()?;
        if !p.is_degeneracy_point() {
            return Err(Error::InvalidParameter {
                name: "n_g",
                value: p.n_g1,
                reason: "--check needs the degeneracy point n_g1 = n_g2 = 0.5",
            });
        }
        let t = a
            .point
            .temperature()?
            .ok_or(Error::NonPositiveTemperature(0.0))?;
        Some(closed_form_density(&p.couplings, t)?)
    } else {
        None
    };
    let diff = closed
        .as_ref()
        .map(|c| c.matrix().max_abs_diff(spectral.matrix()));

    let text = match a.point.format {
        Format::Csv => {
            let mut s = String::new();
            let mut block = |source: Option<&str>, m: &RealMatrix| {
                for (i, label) in BASIS.iter().enumerate() {
                    if let Some(src) = source {
                        s.push_str(src);
                        s.push(',');
                    }
                    s.push_str(label);
                    for v in m.row(i) {
                        s.push(',');
                        s.push_str(&format_number(*v));
                    }
                    s.push('\n');
                }
            };
            match &closed {
                None => {
                    block(None, spectral.matrix());
                    format!("basis,00,01,10,11\n{s}")
                }
                Some(c) => {
                    block(Some("spectral"), spectral.matrix());
                    block(Some("closed_form"), c.matrix());
                    format!(
                        "source,basis,00,01,10,11\n{s}check,max_abs_diff,{},,,\n",
                        format_number(diff.unwrap_or_default())
                    )
                }
            }
        }
        Format::Json => {
            let v = json!({
                "basis": BASIS,
                "t": a.point.t.map(round_sig),
                "spectral": matrix_rows(spectral.matrix()),
                "closed_form": closed.as_ref().map(|c| matrix_rows(c.matrix())),
                "max_abs_diff": diff,
            });
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(a.point.out.as_deref(), stdout, &text)?;
    Ok(EXIT_OK)
}

fn serialize(ds: &FigureDataset, format: Format) -> Result<String> {
    match format {
        Format::Csv => ds.to_csv(),
        Format::Json => ds.to_json(),
    }
}

fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<i32> {
    let mut spec = GridSpec {
        physical_mk: a.physical_mk,
        ..GridSpec::new()
    };
    for AxisArg(p, v) in &a.axes {
        spec = spec.axis(*p, v.clone());
    }
    for (p, v) in [
        (Param::EJ, a.ej),
        (Param::EJ1, a.ej1),
        (Param::EJ2, a.ej2),
        (Param::EM, a.em),
        (Param::T, a.t),
    ] {
        if let Some(v) = v {
            spec = spec.fix(p, v);
        }
    }
    let ds = run_sweep(&spec)?;
    emit(a.out.as_deref(), stdout, &serialize(&ds, a.format)?)?;
    Ok(EXIT_OK)
}

fn cmd_figures(a: &FiguresArgs, stdout: &mut dyn Write) -> Result<i32> {
    let ids: Vec<FigureId> = match &a.only {
        Some(name) => vec![name.parse()?],
        None => FigureId::ALL.to_vec(),
    };
    let overrides = FigureOverrides {
        literal_temperature: a.literal_t,
        e_m: a.em,
        physical_mk: None,
    };
    std::fs::create_dir_all(&a.out_dir)?;
    let ext = match a.format {
        Format::Csv => "csv",
        Format::Json => "json",
    };
    for id in ids {
        let ds = figure_dataset(id, &overrides)?;
        let path = a.out_dir.join(format!("{id}.{ext}"));
        std::fs::write(&path, serialize(&ds, a.format)?)?;
        writeln!(stdout, "wrote {} ({} rows)", path.display(), ds.rows.len())?;
        for w in &ds.metadata.warnings {
            writeln!(stdout, "warning: {w}")?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(stdout: &mut dyn Write) -> Result<i32> {
    let points = compare_experiments()?;
    writeln!(
        stdout,
        "{:<22} {:>7} {:>7} {:>5} {:>9} {:>9} {:>16} {:>7}  status",
        "point", "e_j1", "e_j2", "e_m", "measured", "reported", "computed", "tol"
    )?;
    for p in &points {
        writeln!(
            stdout,
            "{:<22} {:>7} {:>7} {:>5} {:>9} {:>9} {:>16} {:>7}  {}",
            p.label,
            format_number(p.e_j1),
            format_number(p.e_j2),
            format_number(p.e_m),
            format_number(p.reported_measured_c),
            format_number(p.reported_theory_c),
            format_number(p.computed_c),
            format_number(p.tolerance),
            if p.passes() { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(if points.iter().all(|p| p.passes()) {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qubit-ent").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parse_axis_forms() {
        let AxisArg(p, v) = parse_axis("t:0.001:0.002:2").unwrap();
        assert_eq!(p, Param::T);
        assert_eq!(v, AxisValues::linear(0.001, 0.002, 2));
        let AxisArg(p, v) = parse_axis("e_j=0,0.5").unwrap();
        assert_eq!(p, Param::EJ);
        assert_eq!(v, AxisValues::list(vec![0.0, 0.5]));
        assert!(parse_axis("q:0:1:2").is_err());
        assert!(parse_axis("t:0:1").is_err());
        assert!(parse_axis("t:0:nan:3").is_err());
    }

    #[test]
    fn concurrence_default_is_ground_state() {
        let (code, out, _) = run_capture(&["concurrence", "--ej1", "3.625", "--ej2", "3.625"]);
        assert_eq!(code, 0);
        assert!(out.contains(",ground,0.265928998126"), "{out}");
    }

    #[test]
    fn negative_values_parse() {
        let (code, out, err) =
            run_capture(&["concurrence", "--ej1", "1", "--ej2", "-1", "--t", "0.5"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("1,-1,1,0.5"));
    }

    #[test]
    fn density_without_check_has_basis_header() {
        let (code, out, _) = run_capture(&["density", "--ej", "1", "--t", "1e9"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "basis,00,01,10,11");
        assert_eq!(lines.len(), 5);
        let cells: Vec<f64> = lines[1]
            .split(',')
            .skip(1)
            .map(|c| c.parse().unwrap())
            .collect();
        assert!((cells[0] - 0.25).abs() < 1e-8);
        assert!(cells[1..].iter().all(|x| x.abs() < 1e-8));
    }
}
