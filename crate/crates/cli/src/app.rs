//! Argument parsing and subcommand execution.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use pwl_density::{fit, FitRequest, ModeConvention, ModeLocus, PiecewiseLinearDensity, QuantileRule};

use crate::error::CliError;
use crate::format::Num;
use crate::lcg::Lcg;
use crate::spec::{parse_spec, write_spec, Model};

#[derive(Debug, Parser)]
#[command(name = "pwl", version, about = "Piecewise-linear probability densities")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Print 17 significant digits instead of 12.
    #[arg(long, global = true)]
    exact: bool,
    /// Rescale unnormalized input instead of refusing it.
    #[arg(long, global = true)]
    autonormalize: bool,
    /// Write the result to FILE instead of standard output.
    #[arg(short = 'o', long = "output", value_name = "FILE", global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a spec file and report its mass.
    Validate { spec: PathBuf },
    /// Rescale a spec to unit mass and print the new spec.
    Normalize { spec: PathBuf },
    /// Mass, moments, median and modes.
    Stats {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::LimitsOnly)]
        convention: Convention,
    },
    /// Tabulate the pdf or cdf as `x,value` CSV.
    Eval {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Pdf)]
        what: What,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        /// Number of intervals; STEPS + 1 points are printed.
        #[arg(long, default_value_t = 100)]
        steps: usize,
    },
    /// Preimage of a probability level and the selected quantile.
    Quantile {
        spec: PathBuf,
        #[arg(short = 'p', allow_negative_numbers = true)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Rule::Mid)]
        rule: Rule,
    },
    /// Median set.
    Median { spec: PathBuf },
    /// Mode set under a supremum convention.
    Mode {
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Convention::LimitsOnly)]
        convention: Convention,
    },
    /// Inverse-transform samples as `index,value` CSV.
    Sample {
        spec: PathBuf,
        #[arg(short = 'n')]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Fit a polygonal density through `x,y` CSV samples.
    Fit {
        samples: PathBuf,
        /// Keep nonzero end samples as jumps instead of forcing them to 0.
        #[arg(long)]
        no_clamp: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum What {
    Pdf,
    Cdf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Inf,
    Sup,
    Mid,
}

impl From<Rule> for QuantileRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Inf => QuantileRule::Inf,
            Rule::Sup => QuantileRule::Sup,
            Rule::Mid => QuantileRule::Mid,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Convention {
    PointAndLimits,
    PointAndMeanLimits,
    LimitsOnly,
    MeanLimitsOnly,
}

impl From<Convention> for ModeConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::PointAndLimits => ModeConvention::PointAndLimits,
            Convention::PointAndMeanLimits => ModeConvention::PointAndMeanLimits,
            Convention::LimitsOnly => ModeConvention::LimitsOnly,
            Convention::MeanLimitsOnly => ModeConvention::MeanLimitsOnly,
        }
    }
}

/// Runs one invocation and returns its exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => match &cli.global.output {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => 0,
                Err(source) => report(
                    stderr,
                    CliError::Io {
                        path: path.display().to_string(),
                        source,
                    },
                ),
            },
            None => {
                let _ = stdout.write_all(text.as_bytes());
                0
            }
        },
        Err(e) => report(stderr, e),
    }
}

fn report(stderr: &mut dyn Write, e: CliError) -> i32 {
    let _ = writeln!(stderr, "pwl: {e}");
    1
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<Model, CliError> {
    parse_spec(&read(path)?)?.to_model()
}

/// Loads a spec that must be normalized, or is rescaled when allowed.
fn load_normalized(path: &Path, global: &Global) -> Result<PiecewiseLinearDensity, CliError> {
    let model = load(path)?;
    if model.is_normalized() {
        return Ok(model.density());
    }
    if global.autonormalize {
        return Ok(model.normalized()?.0.density());
    }
    let mass = model.raw_mass();
    let num = Num::new(global.exact);
    Err(CliError::NotNormalized {
        mass: num.fmt(mass),
        k: num.fmt(1.0 / mass),
    })
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let g = &cli.global;
    let num = Num::new(g.exact);
    let mut out = String::new();
    match &cli.command {
        Command::Validate { spec } => {
            let text = read(spec)?;
            let parsed = parse_spec(&text)?;
            let model = parsed.to_model()?;
            let _ = writeln!(out, "kind = {}", parsed.kind());
            let _ = writeln!(out, "pieces = {}", model.pieces());
            let _ = writeln!(out, "mass = {}", num.fmt(model.raw_mass()));
            let _ = writeln!(out, "normalized = {}", model.is_normalized());
        }
        Command::Normalize { spec } => {
            let (model, _) = load(spec)?.normalized()?;
            out = write_spec(&model.to_spec());
        }
        Command::Stats { spec, convention } => {
            let d = load_normalized(spec, g)?;
            let s = d.summary()?;
            for (name, v) in [
                ("mass", s.mass),
                ("mean", s.mean),
                ("variance", s.variance),
                ("std", s.std_dev),
                ("skewness", s.skewness),
                ("excess", s.excess),
            ] {
                let _ = writeln!(out, "{name} = {}", num.fmt(v));
            }
            let m = d.median_set()?;
            if m.is_single() {
                let _ = writeln!(out, "median = {}", num.fmt(m.v_min));
            } else {
                let _ = writeln!(out, "median = [{}, {}]", num.fmt(m.v_min), num.fmt(m.v_max));
            }
            for locus in d.mode_set((*convention).into()).loci {
                let _ = writeln!(out, "mode = {}", locus_text(&locus, num));
            }
        }
        Command::Eval {
            spec,
            what,
            from,
            to,
            steps,
        } => {
            let d = load_normalized(spec, g)?;
            let (a, b) = d.support();
            let (lo, hi) = (from.unwrap_or(a), to.unwrap_or(b));
            let steps = (*steps).max(1);
            out.push_str("x,value\n");
            for i in 0..=steps {
                let x = if i == steps {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / steps as f64
                };
                let v = match what {
                    What::Pdf => d.pdf(x),
                    What::Cdf => d.cdf(x),
                };
                let _ = writeln!(out, "{},{}", num.fmt(x), num.fmt(v));
            }
        }
        Command::Quantile { spec, p, rule } => {
            let d = load_normalized(spec, g)?;
            let pre = d.quantile_preimage(*p)?;
            let _ = writeln!(out, "p = {}", num.fmt(*p));
            let _ = writeln!(
                out,
                "preimage = [{}, {}]",
                num.fmt(pre.lower),
                num.fmt(pre.upper)
            );
            let _ = writeln!(out, "rule = {}", rule_name(*rule));
            let _ = writeln!(out, "value = {}", num.fmt(pre.select((*rule).into())));
        }
        Command::Median { spec } => {
            let d = load_normalized(spec, g)?;
            let m = d.median_set()?;
            let _ = writeln!(out, "v_min = {}", num.fmt(m.v_min));
            let _ = writeln!(out, "v_max = {}", num.fmt(m.v_max));
            let _ = writeln!(out, "min_attained = {}", m.min_attained);
            let _ = writeln!(out, "max_attained = {}", m.max_attained);
        }
        Command::Mode { spec, convention } => {
            let d = load_normalized(spec, g)?;
            let m = d.mode_set((*convention).into());
            let _ = writeln!(out, "f_sup = {}", num.fmt(m.f_sup));
            let _ = writeln!(out, "convention = {}", m.convention);
            for locus in &m.loci {
                let _ = writeln!(out, "{}", locus_text(locus, num));
            }
        }
        Command::Sample { spec, n, seed } => {
            let d = load_normalized(spec, g)?;
            let uniforms: Vec<f64> = Lcg::new(*seed).take(*n).collect();
            out.push_str("index,value\n");
            for (i, x) in d.sample(&uniforms)?.into_iter().enumerate() {
                let _ = writeln!(out, "{i},{}", num.fmt(x));
            }
        }
        Command::Fit { samples, no_clamp } => {
            let points = read_samples(samples)?;
            let req = FitRequest::from_samples(&points)?.with_clamped_endpoints(!no_clamp);
            let p = fit(&req)?;
            out = write_spec(&Model::Polygonal(p).to_spec());
        }
    }
    Ok(out)
}

fn rule_name(rule: Rule) -> &'static str {
    match rule {
        Rule::Inf => "inf",
        Rule::Sup => "sup",
        Rule::Mid => "mid",
    }
}

fn locus_text(locus: &ModeLocus, num: Num) -> String {
    match *locus {
        ModeLocus::Point(x) => format!("point {}", num.fmt(x)),
        ModeLocus::LeftLimit(x) => format!("left-limit {}", num.fmt(x)),
        ModeLocus::RightLimit(x) => format!("right-limit {}", num.fmt(x)),
        ModeLocus::HalfHalfPair(x) => format!("half-half {}", num.fmt(x)),
        ModeLocus::OpenInterval(a, b) => {
            format!("open-interval ({}, {})", num.fmt(a), num.fmt(b))
        }
        ModeLocus::ClosedInterval(a, b) => {
            format!("closed-interval [{}, {}]", num.fmt(a), num.fmt(b))
        }
    }
}

/// Reads `x,y` rows; a header row is required.
fn read_samples(path: &Path) -> Result<Vec<(f64, f64)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)?;
    reader
        .deserialize::<(f64, f64)>()
        .map(|row| row.map_err(CliError::from))
        .collect()
}
