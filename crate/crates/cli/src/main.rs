use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use symgate::report;
use symgate::{
    analyze_gate_with, analyze_point_with, chamber_fraction_perfect, chordal_distance, concurrence, ep_closed_form,
    ep_monte_carlo, ep_of_gate, entropy_sphere, gate_from_point, oplane_grid, state_from_stars, stars_of, sweep,
    Constellation, FractionMode, GateFile, GeometricPoint, MajoranaStar, Model, SymgateError, SymmetricGate,
    SymmetricState,
};

#[derive(Parser)]
#[command(name = "symgate", version, about = "Nonlocality analysis of symmetric two-qubit gates")]
struct Cli {
    /// Seed for Monte Carlo estimates.
    #[arg(long, global = true, env = "SYMGATE_SEED", default_value_t = 0)]
    seed: u64,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Boundary tolerance used by `analyze`; the default leaves room for
    /// points typed with 7 decimals.
    #[arg(long, global = true, default_value_t = 1e-7)]
    tol: f64,

    /// Read angles given on the command line as degrees.
    #[arg(long, global = true)]
    degrees: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
struct GateInput {
    /// Gate JSON file (3x3 symmetric block or reducible 4x4).
    #[arg(conflicts_with = "point")]
    gate: Option<PathBuf>,

    /// Geometric point c1,c2,c3.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical point, |G|, ep and perfect-entangler classification.
    Analyze(GateInput),
    /// Entangling power, optionally with a Monte Carlo estimate.
    Ep {
        #[command(flatten)]
        input: GateInput,
        /// Monte Carlo sample count (at least 100).
        #[arg(long)]
        mc: Option<usize>,
    },
    /// O-plane raster of arg Tr m, |G|, ep and classification.
    Heatmap {
        #[arg(long, default_value_t = 101)]
        resolution: usize,
    },
    /// Linear entropy after the gate over product inputs |u,u>.
    Sphere {
        #[command(flatten)]
        input: GateInput,
        /// Grid as N_THETAxN_PHI.
        #[arg(long, default_value = "91x181")]
        grid: String,
    },
    /// Time sweep of a physical model.
    Model {
        /// heisenberg, lmg or crosskerr.
        name: String,
        /// fig6a, fig6b or fig6c.
        #[arg(long)]
        preset: Option<String>,
        /// Parameter override key=value; repeatable.
        #[arg(long = "param", allow_hyphen_values = true)]
        params: Vec<String>,
        /// START:END:STEPS
        #[arg(long, default_value = "0:3.141592653589793:101", allow_hyphen_values = true)]
        t_range: String,
    },
    /// Fraction of the Weyl chamber occupied by perfect entanglers.
    Fraction {
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
    },
    /// Majorana star conversions.
    Majorana {
        #[command(subcommand)]
        direction: MajoranaCommand,
    },
}

#[derive(Subcommand)]
enum MajoranaCommand {
    /// Stars of a state given as a0_re,a0_im,a1_re,a1_im,a2_re,a2_im.
    Stars {
        #[arg(long, allow_hyphen_values = true)]
        state: String,
    },
    /// State with stars theta1,phi1,theta2,phi2.
    State {
        #[arg(long, allow_hyphen_values = true)]
        stars: String,
    },
}

enum CliError {
    Usage(String),
    Lib(SymgateError),
}

impl From<SymgateError> for CliError {
    fn from(e: SymgateError) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_numerical() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_list(field: &str, text: &str, len: usize) -> CliResult<Vec<f64>> {
    let values: Vec<f64> = text
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{field}: {e}")))?;
    if values.len() != len {
        return Err(CliError::Usage(format!(
            "{field}: expected {len} comma-separated numbers, got {}",
            values.len()
        )));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Usage(format!("{field}: values must be finite")));
    }
    Ok(values)
}

fn angle(x: f64, degrees: bool) -> f64 {
    if degrees {
        x.to_radians()
    } else {
        x
    }
}

enum Gate {
    Point(GeometricPoint),
    Matrix(SymmetricGate),
}

impl Gate {
    fn symmetric(&self) -> SymmetricGate {
        match self {
            Gate::Point(c) => gate_from_point(*c),
            Gate::Matrix(g) => g.clone(),
        }
    }
}

fn read_gate(input: &GateInput, degrees: bool) -> CliResult<Gate> {
    match (&input.gate, &input.point) {
        (_, Some(p)) => {
            let v = parse_list("--point", p, 3)?;
            Ok(Gate::Point(GeometricPoint::new(
                angle(v[0], degrees),
                angle(v[1], degrees),
                angle(v[2], degrees),
            )))
        }
        (Some(path), None) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            Ok(Gate::Matrix(GateFile::from_json(&text)?.symmetric_gate()?))
        }
        (None, None) => Err(CliError::Usage("a gate file or --point is required".into())),
    }
}

fn parse_grid(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("--grid: expected N_THETAxN_PHI, got '{text}'"));
    let (a, b) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_range(text: &str) -> CliResult<(f64, f64, usize)> {
    let bad = || CliError::Usage(format!("--t-range: expected START:END:STEPS, got '{text}'"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok((
        parts[0].trim().parse().map_err(|_| bad())?,
        parts[1].trim().parse().map_err(|_| bad())?,
        parts[2].trim().parse().map_err(|_| bad())?,
    ))
}

fn build_model(name: &str, preset: Option<&str>, params: &[String]) -> CliResult<Model> {
    let mut model = match preset {
        Some(p) => {
            let m = Model::preset(p)?;
            if m.name() != name {
                return Err(CliError::Usage(format!("--preset: {p} is a {} preset, not {name}", m.name())));
            }
            m
        }
        None => Model::by_name(name)?,
    };
    for kv in params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--param: expected key=value, got '{kv}'")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--param {k}: '{v}' is not a number")))?;
        model.set_param(k.trim(), value)?;
    }
    Ok(model)
}

fn run(cli: &Cli) -> CliResult<String> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Analyze(input) => {
            let a = match read_gate(input, cli.degrees)? {
                Gate::Point(c) => analyze_point_with(c, cli.tol)?,
                Gate::Matrix(g) => analyze_gate_with(&g, cli.tol)?,
            };
            Ok(match fmt(Format::Json) {
                Format::Json => report::classification_json(&a),
                Format::Csv => report::classification_csv(&a),
            })
        }
        Command::Ep { input, mc } => {
            let gate = read_gate(input, cli.degrees)?;
            let closed = match &gate {
                Gate::Point(c) => ep_closed_form(*c)?,
                Gate::Matrix(g) => ep_of_gate(g)?,
            };
            let mc = match mc {
                Some(n) => Some(ep_monte_carlo(&gate.symmetric(), *n, cli.seed)?),
                None => None,
            };
            Ok(match fmt(Format::Json) {
                Format::Json => report::ep_json(&closed, mc.as_ref()),
                Format::Csv => report::ep_csv(&closed, mc.as_ref()),
            })
        }
        Command::Heatmap { resolution } => {
            let grid = oplane_grid(*resolution)?;
            Ok(match fmt(Format::Csv) {
                Format::Json => report::grid_json(&grid),
                Format::Csv => report::grid_csv(&grid),
            })
        }
        Command::Sphere { input, grid } => {
            let (nt, np) = parse_grid(grid)?;
            let g = read_gate(input, cli.degrees)?.symmetric();
            let sphere = entropy_sphere(&g, nt, np)?;
            Ok(match fmt(Format::Csv) {
                Format::Json => report::sphere_json(&sphere),
                Format::Csv => report::sphere_csv(&sphere),
            })
        }
        Command::Model {
            name,
            preset,
            params,
            t_range,
        } => {
            let model = build_model(name, preset.as_deref(), params)?;
            let (t0, t1, n) = parse_range(t_range)?;
            let recs = sweep(&model, t0, t1, n)?;
            Ok(match fmt(Format::Csv) {
                Format::Json => report::sweep_json(&recs),
                Format::Csv => report::sweep_csv(&recs),
            })
        }
        Command::Fraction { samples } => {
            let analytic = chamber_fraction_perfect(FractionMode::Analytic, 0, cli.seed)?;
            let mc = chamber_fraction_perfect(FractionMode::MonteCarlo, *samples, cli.seed)?;
            Ok(match fmt(Format::Json) {
                Format::Json => report::fraction_json(analytic, mc, *samples, cli.seed),
                Format::Csv => report::fraction_csv(analytic, mc, *samples, cli.seed),
            })
        }
        Command::Majorana { direction } => {
            let (state, stars) = match direction {
                MajoranaCommand::Stars { state } => {
                    let v = parse_list("--state", state, 6)?;
                    let amps = [0, 2, 4].map(|k| Complex64::new(v[k], v[k + 1]));
                    let state = SymmetricState::new(amps)?;
                    let stars = stars_of(&state)?;
                    (state, stars)
                }
                MajoranaCommand::State { stars } => {
                    let v: Vec<f64> = parse_list("--stars", stars, 4)?
                        .into_iter()
                        .map(|x| angle(x, cli.degrees))
                        .collect();
                    let c = Constellation::new(MajoranaStar::new(v[0], v[1])?, MajoranaStar::new(v[2], v[3])?);
                    (state_from_stars(&c), c)
                }
            };
            let conc = concurrence(&state);
            let d = chordal_distance(&stars);
            Ok(match fmt(Format::Json) {
                Format::Json => report::majorana_json(&state, &stars, conc, d),
                Format::Csv => report::majorana_csv(&state, &stars, conc, d),
            })
        }
    }
}

fn emit(cli: &Cli, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Usage(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|text| emit(&cli, &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
