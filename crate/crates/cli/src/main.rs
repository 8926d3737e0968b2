mod failure;
mod parse;
mod settings;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use scaling_witness::formats::{csv_string, json_string, read_diagram, render_pgm, tomogram_csv};
use scaling_witness::maps::{partial_scaling, PartialScalingSpec};
use scaling_witness::scan::{run_scan, ScanConfig, ScanFamily};
use scaling_witness::tomography::eigenbasis_tomogram;
use scaling_witness::witness::{measure_m_with, witness_with, WitnessReport};
use scaling_witness::{ComplexMatrix, DensityMatrix, Execution, Solver, StateFamily};

use failure::{CliResult, Failure};
use settings::{FamilyName, OutputFormat, ScanSettings};

#[derive(Parser)]
#[command(
    name = "scalewit",
    version,
    about = "Partial scaling transforms as entanglement witnesses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the density matrix of a state family at one mixing weight.
    State(StateArgs),
    /// Apply one partial scaling spec and report the spectrum.
    Witness(WitnessArgs),
    /// Maximize the negativity over a grid of specs.
    Measure(MeasureArgs),
    /// Sweep a parameter grid into a phase diagram.
    Scan(ScanArgs),
    /// Turn a CSV or JSON phase diagram into a PGM heatmap.
    Render(RenderArgs),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Local dimension for ghz_werner.
    #[arg(long)]
    d: Option<usize>,
    /// Number of factors for ghz_werner.
    #[arg(long)]
    n: Option<usize>,
    /// Pure-state amplitudes for custom_pure_werner, `re` or `re:im`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    amplitudes: Option<String>,
    /// Factor dimensions for custom_pure_werner, comma separated.
    #[arg(long)]
    dims: Option<String>,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Mixing weight with white noise.
    #[arg(long, allow_hyphen_values = true)]
    p: String,
    /// Angle of the theta_werner family.
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    point: PointArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverArg {
    Jacobi,
    Sturm,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Jacobi => Solver::Jacobi,
            SolverArg::Sturm => Solver::SturmBisection,
        }
    }
}

#[derive(Args)]
struct WitnessArgs {
    #[command(flatten)]
    point: PointArgs,
    /// One scaling parameter per factor, comma separated, e.g. `1,-1`.
    #[arg(long, allow_hyphen_values = true)]
    spec: String,
    #[arg(long, value_enum, default_value = "jacobi")]
    solver: SolverArg,
    /// Accept scaling parameters outside [-1, 1].
    #[arg(long)]
    allow_out_of_range: bool,
    /// Also write the report as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write the eigenbasis tomogram of the mapped matrix as CSV.
    #[arg(long)]
    tomogram: Option<PathBuf>,
}

#[derive(Args)]
struct MeasureArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Grid points per swept factor.
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ScanArgs {
    /// File of `key = value` lines; flags given here take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[command(flatten)]
    family: FamilyArgs,
    /// Value or `min:max:steps`.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    /// Value or `min:max:steps` (theta_werner only).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<String>,
    /// One axis per factor, comma separated, e.g. `1,-1:1:101`.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Destination file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Witnessed when the least eigenvalue is below minus this value.
    #[arg(long, allow_hyphen_values = true)]
    tolerance: Option<String>,
    #[arg(long)]
    allow_out_of_range: bool,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct RenderArgs {
    /// Phase diagram in CSV or JSON.
    input: PathBuf,
    /// Destination PGM; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn entry(m: &ComplexMatrix, i: usize, j: usize) -> String {
    let z = m[(i, j)];
    // Avoid printing "-0.000000".
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if z.im.abs() < 1e-15 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{:+.6}i", z.im)
    }
}

fn flag<T>(name: &str, parsed: Result<T, String>) -> CliResult<T> {
    parsed.map_err(|e| Failure::usage(format!("{name}: {e}")))
}

fn family_name(name: FamilyName) -> &'static str {
    match name {
        FamilyName::Werner2 => "werner2",
        FamilyName::GhzWerner => "ghz_werner",
        FamilyName::ThetaWerner => "theta_werner",
        FamilyName::WWerner => "w_werner",
        FamilyName::CustomPureWerner => "custom_pure_werner",
    }
}

/// Amplitudes and factor dimensions of a custom pure state.
type CustomParts = (Vec<(f64, f64)>, Vec<usize>);

struct Family {
    name: FamilyName,
    d: Option<usize>,
    n: Option<usize>,
    amplitudes: Option<Vec<(f64, f64)>>,
    dims: Option<Vec<usize>>,
}

impl Family {
    fn build(args: &FamilyArgs) -> CliResult<Self> {
        let name = args.family.ok_or_else(|| Failure::usage("--family is required"))?;
        Ok(Family {
            name,
            d: args.d,
            n: args.n,
            amplitudes: args
                .amplitudes
                .as_deref()
                .map(|s| flag("--amplitudes", parse::amplitudes(s)))
                .transpose()?,
            dims: args
                .dims
                .as_deref()
                .map(|s| flag("--dims", parse::dims(s)))
                .transpose()?,
        })
    }

    fn ghz_shape(&self) -> CliResult<(usize, usize)> {
        match (self.d, self.n) {
            (Some(d), Some(n)) => Ok((d, n)),
            _ => Err(Failure::usage("ghz_werner needs both --d and --n")),
        }
    }

    fn custom(&self) -> CliResult<CustomParts> {
        match (&self.amplitudes, &self.dims) {
            (Some(a), Some(d)) => Ok((a.clone(), d.clone())),
            _ => Err(Failure::usage("custom_pure_werner needs both --amplitudes and --dims")),
        }
    }

    fn state_family(&self, theta: Option<f64>) -> CliResult<StateFamily> {
        if theta.is_some() && self.name != FamilyName::ThetaWerner {
            return Err(Failure::usage("--theta only applies to theta_werner"));
        }
        Ok(match self.name {
            FamilyName::Werner2 => StateFamily::werner2(),
            FamilyName::GhzWerner => {
                let (d, n) = self.ghz_shape()?;
                StateFamily::GhzWerner { d, n }
            }
            FamilyName::ThetaWerner => StateFamily::ThetaWerner {
                theta: theta.ok_or_else(|| Failure::usage("theta_werner needs --theta"))?,
            },
            FamilyName::WWerner => StateFamily::WWerner,
            FamilyName::CustomPureWerner => {
                let (amplitudes, dims) = self.custom()?;
                StateFamily::CustomPureWerner { amplitudes, dims }
            }
        })
    }

    fn scan_family(&self) -> CliResult<ScanFamily> {
        Ok(match self.name {
            FamilyName::Werner2 => ScanFamily::GhzWerner { d: 2, n: 2 },
            FamilyName::GhzWerner => {
                let (d, n) = self.ghz_shape()?;
                ScanFamily::GhzWerner { d, n }
            }
            FamilyName::ThetaWerner => ScanFamily::ThetaWerner,
            FamilyName::WWerner => ScanFamily::WWerner,
            FamilyName::CustomPureWerner => {
                let (amplitudes, dims) = self.custom()?;
                ScanFamily::CustomPureWerner { amplitudes, dims }
            }
        })
    }

    fn describe(&self) -> String {
        let mut s = family_name(self.name).to_string();
        if self.name == FamilyName::GhzWerner {
            if let (Some(d), Some(n)) = (self.d, self.n) {
                s.push_str(&format!(" (d={d}, n={n})"));
            }
        }
        s
    }
}

struct Point {
    family: Family,
    p: f64,
    rho: DensityMatrix,
}

fn build_point(args: &PointArgs) -> CliResult<Point> {
    let family = Family::build(&args.family)?;
    let p = flag("--p", parse::real(&args.p))?;
    let theta = args
        .theta
        .as_deref()
        .map(|t| flag("--theta", parse::real(t)))
        .transpose()?;
    let rho = family
        .state_family(theta)?
        .state(p)
        .map_err(|e| Failure::core("--p/--family", e))?;
    Ok(Point { family, p, rho })
}

fn dims_label(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
}

fn spec_label(spec: &PartialScalingSpec) -> String {
    let parts: Vec<String> = spec.lambdas().iter().map(|l| format!("{l}")).collect();
    format!("({})", parts.join(", "))
}

fn num(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io(Path::new("<stdout>"), e))
        }
    }
}

fn cmd_state(args: &StateArgs) -> CliResult<()> {
    let point = build_point(&args.point)?;
    let m = point.rho.matrix();
    println!("family: {}", point.family.describe());
    println!("p: {}", point.p);
    println!("dims: {}", dims_label(point.rho.dims()));
    let n = m.dim();
    let cells: Vec<Vec<String>> = (0..n).map(|i| (0..n).map(|j| entry(m, i, j)).collect()).collect();
    let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
    for row in cells {
        let row: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        println!("{}", row.join(" "));
    }
    Ok(())
}

fn print_report(report: &WitnessReport) {
    let eigs: Vec<String> = report.eigenvalues.iter().map(|&e| num(e)).collect();
    println!("spec: {}", spec_label(&report.spec));
    if report.lambda_out_of_range {
        println!("note: spec leaves [-1, 1]; the map is then not positive on product states");
    }
    println!("eigenvalues: {}", eigs.join(" "));
    println!("min eigenvalue: {}", num(report.min_eigenvalue));
    println!("m: {}", num(report.negativity_m));
    if report.entangled_witnessed {
        println!("verdict: entanglement witnessed");
    } else {
        println!("verdict: not witnessed (no negative eigenvalue found; separability is not implied)");
    }
}

fn cmd_witness(args: &WitnessArgs) -> CliResult<()> {
    let point = build_point(&args.point)?;
    let lambdas = flag("--spec", parse::reals(&args.spec))?;
    let spec = PartialScalingSpec::new(lambdas).map_err(|e| Failure::core("--spec", e))?;
    if spec.out_of_range() && !args.allow_out_of_range {
        return Err(Failure::usage(
            "--spec: values outside [-1, 1] need --allow-out-of-range",
        ));
    }
    let report = witness_with(&point.rho, &spec, args.solver.into()).map_err(|e| Failure::core("--spec", e))?;

    println!("family: {}", point.family.describe());
    println!("p: {}", point.p);
    println!("dims: {}", dims_label(point.rho.dims()));
    print_report(&report);

    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "family": family_name(point.family.name),
            "p": point.p,
            "dims": point.rho.dims(),
            "report": report,
        });
        let text = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
        write_output(Some(path), text.as_bytes())?;
    }
    if let Some(path) = &args.tomogram {
        let mapped = partial_scaling(&point.rho, &spec).map_err(|e| Failure::core("--spec", e))?;
        let t = eigenbasis_tomogram(&mapped).map_err(|e| Failure::core("tomogram", e))?;
        let text = tomogram_csv(&t, point.rho.dims()).map_err(|e| Failure::core("tomogram", e))?;
        write_output(Some(path), text.as_bytes())?;
    }
    Ok(())
}

fn cmd_measure(args: &MeasureArgs) -> CliResult<()> {
    let point = build_point(&args.point)?;
    if args.grid < 2 {
        return Err(Failure::usage("--grid: need at least 2 points per axis"));
    }
    let exec = Execution::from_threads(args.threads);
    let result =
        measure_m_with(&point.rho, args.grid, exec, Solver::Jacobi).map_err(|e| Failure::core("measure", e))?;
    let jacobi =
        witness_with(&point.rho, &result.argmax_spec, Solver::Jacobi).map_err(|e| Failure::core("measure", e))?;
    let sturm = witness_with(&point.rho, &result.argmax_spec, Solver::SturmBisection)
        .map_err(|e| Failure::core("measure", e))?;

    println!("family: {}", point.family.describe());
    println!("p: {}", point.p);
    println!("M: {}", num(result.value));
    println!("argmax spec: {}", spec_label(&result.argmax_spec));
    println!(
        "grid: {} points per axis, {} specs evaluated",
        result.grid_resolution, result.evaluated
    );
    println!(
        "cross-check at argmax: jacobi m = {}, sturm m = {}, |difference| = {:.3e}",
        num(jacobi.negativity_m),
        num(sturm.negativity_m),
        (jacobi.negativity_m - sturm.negativity_m).abs()
    );
    if point.family.name == FamilyName::WWerner {
        println!("reference: a value of about 1.47 has been quoted for p = 0.6; it is shown for comparison only");
    }
    Ok(())
}

fn scan_settings_from_flags(args: &ScanArgs) -> CliResult<ScanSettings> {
    Ok(ScanSettings {
        family: args.family.family,
        d: args.family.d,
        n: args.family.n,
        amplitudes: args
            .family
            .amplitudes
            .as_deref()
            .map(|s| flag("--amplitudes", parse::amplitudes(s)))
            .transpose()?,
        dims: args
            .family
            .dims
            .as_deref()
            .map(|s| flag("--dims", parse::dims(s)))
            .transpose()?,
        p: args.p.as_deref().map(|s| flag("--p", parse::axis(s))).transpose()?,
        theta: args
            .theta
            .as_deref()
            .map(|s| flag("--theta", parse::axis(s)))
            .transpose()?,
        lambdas: args
            .lambda
            .as_deref()
            .map(|s| flag("--lambda", parse::axes(s)))
            .transpose()?,
        format: args.format,
        output: args.output.clone(),
        tolerance: args
            .tolerance
            .as_deref()
            .map(|s| flag("--tolerance", parse::real(s)))
            .transpose()?,
        allow_out_of_range: args.allow_out_of_range.then_some(true),
        threads: args.threads,
    })
}

fn cmd_scan(args: &ScanArgs) -> CliResult<()> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
            ScanSettings::from_config(&text, &path.display().to_string())?
        }
        None => ScanSettings::default(),
    };
    let s = file.overridden_by(scan_settings_from_flags(args)?);

    let family = Family {
        name: s
            .family
            .ok_or_else(|| Failure::usage("--family is required (flag or config)"))?,
        d: s.d,
        n: s.n,
        amplitudes: s.amplitudes.clone(),
        dims: s.dims.clone(),
    };
    let config = ScanConfig {
        family: family.scan_family()?,
        p: s.p.ok_or_else(|| Failure::usage("--p is required (flag or config)"))?,
        theta: s.theta,
        lambdas: s
            .lambdas
            .ok_or_else(|| Failure::usage("--lambda is required (flag or config)"))?,
        allow_out_of_range: s.allow_out_of_range.unwrap_or(false),
        tolerance: s.tolerance,
    };
    let diagram = run_scan(&config, Execution::from_threads(s.threads)).map_err(|e| Failure::core("scan", e))?;

    let format = s
        .format
        .or_else(|| s.output.as_deref().map(OutputFormat::from_extension))
        .unwrap_or(OutputFormat::Csv);
    let bytes = match format {
        OutputFormat::Csv => csv_string(&diagram).map_err(|e| Failure::core("scan", e))?.into_bytes(),
        OutputFormat::Json => json_string(&diagram)
            .map_err(|e| Failure::core("scan", e))?
            .into_bytes(),
        OutputFormat::Pgm => render_pgm(&diagram),
    };
    write_output(s.output.as_deref(), &bytes)
}

fn cmd_render(args: &RenderArgs) -> CliResult<()> {
    let bytes = std::fs::read(&args.input).map_err(|e| Failure::io(&args.input, e))?;
    let diagram = read_diagram(&bytes).map_err(|e| Failure::core(&args.input.display().to_string(), e))?;
    write_output(args.output.as_deref(), &render_pgm(&diagram))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::State(a) => cmd_state(a),
        Command::Witness(a) => cmd_witness(a),
        Command::Measure(a) => cmd_measure(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Render(a) => cmd_render(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("scalewit: {f}");
            ExitCode::from(f.code)
        }
    }
}
