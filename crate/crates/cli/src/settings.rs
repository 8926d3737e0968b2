//! Scan settings gathered from a `key = value` file and from flags.

use std::path::PathBuf;

use scaling_witness::scan::AxisSpec;

use crate::failure::{CliResult, Failure};
use crate::parse;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FamilyName {
    #[value(name = "werner2")]
    Werner2,
    #[value(name = "ghz_werner")]
    GhzWerner,
    #[value(name = "theta_werner")]
    ThetaWerner,
    #[value(name = "w_werner")]
    WWerner,
    #[value(name = "custom_pure_werner")]
    CustomPureWerner,
}

impl FamilyName {
    fn parse(s: &str) -> Option<Self> {
        <Self as clap::ValueEnum>::from_str(s, false).ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Pgm,
}

impl OutputFormat {
    pub fn from_extension(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            Some("pgm") => OutputFormat::Pgm,
            _ => OutputFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanSettings {
    pub family: Option<FamilyName>,
    pub d: Option<usize>,
    pub n: Option<usize>,
    pub amplitudes: Option<Vec<(f64, f64)>>,
    pub dims: Option<Vec<usize>>,
    pub p: Option<AxisSpec>,
    pub theta: Option<AxisSpec>,
    pub lambdas: Option<Vec<AxisSpec>>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
    pub tolerance: Option<f64>,
    pub allow_out_of_range: Option<bool>,
    pub threads: Option<usize>,
}

impl ScanSettings {
    /// Blank lines and `#` comments are skipped; unknown keys are an error.
    pub fn from_config(text: &str, origin: &str) -> CliResult<Self> {
        let mut s = ScanSettings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |msg: String| Failure::malformed(format!("{origin}:{}: {msg}", i + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at(format!("expected key = value, found `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "family" => {
                    s.family = Some(FamilyName::parse(value).ok_or_else(|| at(format!("unknown family `{value}`")))?)
                }
                "d" => {
                    s.d = Some(
                        value
                            .parse()
                            .map_err(|_| at(format!("d: `{value}` is not an integer")))?,
                    )
                }
                "n" => {
                    s.n = Some(
                        value
                            .parse()
                            .map_err(|_| at(format!("n: `{value}` is not an integer")))?,
                    )
                }
                "amplitudes" => s.amplitudes = Some(parse::amplitudes(value).map_err(at)?),
                "dims" => s.dims = Some(parse::dims(value).map_err(at)?),
                "p" => s.p = Some(parse::axis(value).map_err(at)?),
                "theta" => s.theta = Some(parse::axis(value).map_err(at)?),
                "lambda" | "lambdas" => s.lambdas = Some(parse::axes(value).map_err(at)?),
                "format" => {
                    s.format = Some(
                        <OutputFormat as clap::ValueEnum>::from_str(value, true)
                            .map_err(|_| at(format!("unknown format `{value}`")))?,
                    )
                }
                "output" => s.output = Some(PathBuf::from(value)),
                "tolerance" => s.tolerance = Some(parse::real(value).map_err(at)?),
                "allow_out_of_range" => {
                    s.allow_out_of_range = Some(value.parse().map_err(|_| at(format!("`{value}` is not true/false")))?)
                }
                "threads" => {
                    s.threads = Some(
                        value
                            .parse()
                            .map_err(|_| at(format!("threads: `{value}` is not an integer")))?,
                    )
                }
                other => return Err(at(format!("unknown key `{other}`"))),
            }
        }
        Ok(s)
    }

    /// Fields set in `flags` win.
    pub fn overridden_by(self, flags: ScanSettings) -> ScanSettings {
        ScanSettings {
            family: flags.family.or(self.family),
            d: flags.d.or(self.d),
            n: flags.n.or(self.n),
            amplitudes: flags.amplitudes.or(self.amplitudes),
            dims: flags.dims.or(self.dims),
            p: flags.p.or(self.p),
            theta: flags.theta.or(self.theta),
            lambdas: flags.lambdas.or(self.lambdas),
            format: flags.format.or(self.format),
            output: flags.output.or(self.output),
            tolerance: flags.tolerance.or(self.tolerance),
            allow_out_of_range: flags.allow_out_of_range.or(self.allow_out_of_range),
            threads: flags.threads.or(self.threads),
        }
    }
}
