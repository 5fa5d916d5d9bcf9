//! Command-line front end of `pdmwell`: potential and wavefunction curves,
//! level tables and verification reports.

// Plot ranges are compared as `!(hi > lo)` so that NaN bounds are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod render;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pdmwell::analytic::{spectrum, PdmEigenfunction};
use pdmwell::eigensolver::{solve, SolverConfig};
use pdmwell::model::{v_eff, validate, Violation};
use pdmwell::verification::{full_report, Fault, Verifier};
use pdmwell::{ExtensionKind, WellParams};

use render::{decimal_with_fraction, float, svg_plot, text_table, Table};

#[derive(Debug, Parser)]
#[command(name = "pdmwell", version, about = "Oscillator-shaped position-dependent-mass well: curves, spectra and verification")]
pub struct Cli {
    #[command(flatten)]
    pub params: ParamArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    /// Oscillator frequency.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    /// Left wall.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Right wall.
    #[arg(long, global = true, default_value_t = 3.0, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; each command has its own default.
    #[arg(long)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(long, value_parser = parse_kind, default_value = "x1")]
    pub kind: ExtensionKind,
    /// Number of sample points.
    #[arg(long, default_value_t = 600)]
    pub samples: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the effective potential between the walls.
    Potential(CurveArgs),
    /// Sample the closed-form wavefunctions ψ_0..ψ_nmax.
    Wavefunctions {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 2)]
        nmax: u32,
    },
    /// Closed-form levels, optionally with the numeric solver alongside.
    Spectrum {
        #[arg(long, value_parser = parse_kind, default_value = "x1")]
        kind: ExtensionKind,
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Also solve numerically and report deviations.
        #[arg(long)]
        numeric: bool,
        /// Grid subintervals of the numeric solver.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run every verification suite and emit the report.
    Verify {
        /// Grid subintervals of the numeric solver.
        #[arg(long, default_value_t = 2048)]
        grid: usize,
        /// Corrupt one quantity by 1% to exercise the checks.
        #[arg(long, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_kind(s: &str) -> Result<ExtensionKind, String> {
    s.parse()
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse()
}

/// Failure of a command, mapped to the process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parameter constraints violated:\n{}", list(.0))]
    Constraint(Vec<Violation>),
    #[error("{0}")]
    Usage(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error(transparent)]
    Library(#[from] pdmwell::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(|v| format!("  {v}")).collect::<Vec<_>>().join("\n")
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Constraint(_) | CliError::Usage(_) => 2,
            CliError::Library(pdmwell::Error::Constraint(_) | pdmwell::Error::Config(_)) => 2,
            CliError::ChecksFailed { .. } | CliError::Library(_) | CliError::Io(_) => 1,
        }
    }
}

fn params(args: &ParamArgs, kind: ExtensionKind) -> Result<WellParams, CliError> {
    let p = WellParams {
        omega: args.omega,
        a: args.a,
        b: args.b,
    };
    let v = validate(&p, kind);
    if v.is_empty() {
        Ok(p)
    } else {
        Err(CliError::Constraint(v))
    }
}

fn emit(output: &OutputArgs, body: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn format_of(output: &OutputArgs, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    let f = output.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(format!(
            "format {} is not available for `{command}`",
            f.to_possible_value().map_or("?".into(), |v| v.get_name().to_string())
        )))
    }
}

/// `samples` equally spaced points on `[a + ε, b − ε]`, `ε = 10⁻³ (b − a)`.
pub fn sample_points(p: &WellParams, samples: usize) -> Vec<f64> {
    let eps = 1e-3 * p.width();
    let (lo, hi) = (p.a + eps, p.b - eps);
    (0..samples)
        .map(|i| lo + (hi - lo) * i as f64 / (samples - 1) as f64)
        .collect()
}

#[derive(Serialize)]
struct CurveDoc<'a> {
    params: WellParams,
    kind: ExtensionKind,
    #[serde(flatten)]
    table: &'a Table,
}

fn render_curves(
    p: &WellParams,
    kind: ExtensionKind,
    table: &Table,
    format: Format,
    title: &str,
    y_label: &str,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => {
            let doc = CurveDoc {
                params: *p,
                kind,
                table,
            };
            serde_json::to_string_pretty(&doc).map_err(|e| CliError::Usage(e.to_string()))? + "\n"
        }
        Format::Svg => {
            let series: Vec<Vec<(f64, f64)>> = (1..table.columns.len())
                .map(|c| table.rows.iter().map(|r| (r[0], r[c])).collect())
                .collect();
            svg_plot(title, "x", y_label, &series)
        }
        Format::Table => unreachable!("rejected by format_of"),
    })
}

fn check_samples(samples: usize) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Usage(format!("--samples must be at least 2, got {samples}")));
    }
    Ok(())
}

/// `(x, V_eff(x))` on the sample grid.
pub fn potential_table(p: &WellParams, kind: ExtensionKind, samples: usize) -> Result<Table, CliError> {
    let rows = sample_points(p, samples)
        .into_iter()
        .map(|x| Ok(vec![x, v_eff(p, x, kind)?]))
        .collect::<Result<Vec<_>, pdmwell::Error>>()?;
    Ok(Table {
        columns: vec!["x".into(), "v_eff".into()],
        rows,
    })
}

/// `(x, ψ_0(x), …, ψ_nmax(x))` on the sample grid.
pub fn wavefunction_table(p: &WellParams, kind: ExtensionKind, nmax: u32, samples: usize) -> Result<Table, CliError> {
    if !kind.has_closed_form_states() {
        return Err(CliError::Usage(format!(
            "closed-form wavefunctions are available for base and x1 only, not {kind}"
        )));
    }
    let states = (0..=i64::from(nmax))
        .map(|n| PdmEigenfunction::new(p, n, kind))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = sample_points(p, samples)
        .into_iter()
        .map(|x| {
            let mut row = vec![x];
            for s in &states {
                row.push(s.eval(x)?.value);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, pdmwell::Error>>()?;
    let mut columns = vec!["x".to_string()];
    columns.extend((0..=nmax).map(|n| format!("psi{n}")));
    Ok(Table { columns, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRow {
    pub n: i64,
    pub energy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numeric: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimated_error: Option<f64>,
}

/// Closed-form levels sorted by energy, with the solver's values when
/// `numeric` is set.
pub fn spectrum_rows(
    p: &WellParams,
    kind: ExtensionKind,
    count: usize,
    numeric: Option<usize>,
) -> Result<Vec<SpectrumRow>, CliError> {
    let s = spectrum(p, kind, count)?;
    let mut rows: Vec<SpectrumRow> = s
        .entries
        .iter()
        .map(|l| SpectrumRow {
            n: l.label,
            energy: l.energy,
            numeric: None,
            relative_deviation: None,
            estimated_error: None,
        })
        .collect();
    rows.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    if let Some(grid) = numeric {
        let config = SolverConfig {
            grid_points: grid,
            levels: count,
            ..SolverConfig::default()
        };
        let r = solve(p, kind, &config)?;
        let errors = r.estimated_error.unwrap_or_default();
        for (k, row) in rows.iter_mut().enumerate() {
            let e = r.energies[k];
            row.numeric = Some(e);
            row.relative_deviation = Some((e - row.energy).abs() / row.energy.abs());
            row.estimated_error = errors.get(k).copied();
        }
    }
    Ok(rows)
}

fn render_spectrum(rows: &[SpectrumRow], format: Format, p: &WellParams, kind: ExtensionKind) -> Result<String, CliError> {
    let numeric = rows.first().is_some_and(|r| r.numeric.is_some());
    Ok(match format {
        Format::Table => {
            let mut header = vec!["n", "E_n"];
            if numeric {
                header.extend(["numeric", "rel. deviation", "est. error"]);
            }
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let mut cells = vec![r.n.to_string(), decimal_with_fraction(r.energy)];
                    if let (Some(e), Some(d)) = (r.numeric, r.relative_deviation) {
                        cells.push(format!("{e:.12}"));
                        cells.push(format!("{d:.2e}"));
                        cells.push(r.estimated_error.map_or("-".into(), |v| format!("{v:.2e}")));
                    }
                    cells
                })
                .collect();
            format!("# {p}, kind {kind}\n") + &text_table(&header, &body)
        }
        Format::Csv => {
            let mut out = String::from(if numeric {
                "n,energy,numeric,relative_deviation,estimated_error\n"
            } else {
                "n,energy\n"
            });
            for r in rows {
                out.push_str(&format!("{},{}", r.n, float(r.energy)));
                if numeric {
                    let opt = |v: Option<f64>| v.map_or(String::new(), float);
                    out.push_str(&format!(
                        ",{},{},{}",
                        opt(r.numeric),
                        opt(r.relative_deviation),
                        opt(r.estimated_error)
                    ));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                params: WellParams,
                kind: ExtensionKind,
                levels: &'a [SpectrumRow],
            }
            serde_json::to_string_pretty(&Doc { params: *p, kind, levels: rows })
                .map_err(|e| CliError::Usage(e.to_string()))?
                + "\n"
        }
        Format::Svg => unreachable!("rejected by format_of"),
    })
}

fn verify(args: &ParamArgs, grid: usize, fault: Option<Fault>, output: &OutputArgs) -> Result<(), CliError> {
    let format = format_of(output, Format::Json, &[Format::Json, Format::Csv], "verify")?;
    let p = WellParams {
        omega: args.omega,
        a: args.a,
        b: args.b,
    };
    let invalid = validate(&p, ExtensionKind::Base);
    let verifier = Verifier {
        solver: SolverConfig {
            grid_points: grid,
            ..SolverConfig::default()
        },
        ..Verifier::default()
    }
    .with_fault(fault);
    verifier.solver.validate()?;
    let report = full_report(&p, &verifier);
    let body = match format {
        Format::Json => serde_json::to_string_pretty(&report).map_err(|e| CliError::Usage(e.to_string()))? + "\n",
        _ => {
            let mut out = String::from("check_name,kind,status,observed,expected,tolerance\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "\"{}\",{},{},{},{},{}\n",
                    c.check_name.replace('"', "\"\""),
                    c.kind,
                    if c.passed() { "pass" } else { "fail" },
                    float(c.observed),
                    float(c.expected),
                    float(c.tolerance)
                ));
            }
            out
        }
    };
    emit(output, &body)?;

    let s = report.summary;
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "{}: {} checks, {} passed, {} failed", p, s.total, s.passed, s.failed);
    for k in &report.skipped {
        let _ = writeln!(err, "skipped {}: {}", k.kind, k.violations.join("; "));
    }
    for c in report.failures() {
        let _ = writeln!(
            err,
            "FAIL {} [{}]: observed {:e}, expected {:e}, tolerance {:e}",
            c.check_name, c.kind, c.observed, c.expected, c.tolerance
        );
    }
    if !invalid.is_empty() {
        return Err(CliError::Constraint(invalid));
    }
    if s.failed > 0 {
        return Err(CliError::ChecksFailed {
            failed: s.failed,
            total: s.total,
        });
    }
    Ok(())
}

/// Executes one parsed command.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Potential(c) => {
            let format = format_of(&c.output, Format::Csv, &[Format::Csv, Format::Json, Format::Svg], "potential")?;
            check_samples(c.samples)?;
            let p = params(&cli.params, c.kind)?;
            let table = potential_table(&p, c.kind, c.samples)?;
            let title = format!("effective potential, {p}, kind {}", c.kind);
            emit(&c.output, &render_curves(&p, c.kind, &table, format, &title, "V_eff(x)")?)
        }
        Command::Wavefunctions { curve: c, nmax } => {
            let format = format_of(&c.output, Format::Csv, &[Format::Csv, Format::Json, Format::Svg], "wavefunctions")?;
            check_samples(c.samples)?;
            let p = params(&cli.params, c.kind)?;
            let table = wavefunction_table(&p, c.kind, *nmax, c.samples)?;
            let title = format!("wavefunctions ψ_0..ψ_{nmax}, {p}, kind {}", c.kind);
            emit(&c.output, &render_curves(&p, c.kind, &table, format, &title, "ψ_n(x)")?)
        }
        Command::Spectrum {
            kind,
            count,
            numeric,
            grid,
            output,
        } => {
            let format = format_of(output, Format::Table, &[Format::Table, Format::Csv, Format::Json], "spectrum")?;
            if *count == 0 {
                return Err(CliError::Usage("--count must be at least 1".into()));
            }
            let p = params(&cli.params, *kind)?;
            let rows = spectrum_rows(&p, *kind, *count, numeric.then_some(*grid))?;
            emit(output, &render_spectrum(&rows, format, &p, *kind)?)
        }
        Command::Verify {
            grid,
            inject_fault,
            output,
        } => verify(&cli.params, *grid, *inject_fault, output),
    }
}
