//! Command-line front end. Every artifact starts with a `#` block holding
//! the resolved configuration, so a file is enough to replay it.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::chaos::escape::escape_experiment;
use crate::chaos::horseshoe::{build_horseshoe, cone_hyperbolicity};
use crate::chaos::itinerary::realize_itinerary;
use crate::config::{parse_config, write_config};
use crate::dynamics::{eta_with_gain, iterate, parse_word};
use crate::error::Error;
use crate::manifold::UnstableArc;
use crate::model::{validate, ModelConfig, SectionPoint};
use crate::numeric::linspace;
use crate::tangency::{find_periodic_sinks_with, find_tangencies, fold_point, SinkSearch};

#[derive(Debug, Parser)]
#[command(name = "bykov", version, about = "Return-map experiments on a Bykov heteroclinic network")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Configuration file (`key = value` lines); the reference configuration when absent.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Overrides the unfolding amplitude.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Output directory; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Overrides the random seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Checks the standing hypotheses; exit code 1 on any failure.
    Validate,
    /// Samples g, h, the first-hit image of the h-curve and the fold point.
    Curves {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Iterates the first-return map from one point of In(v).
    Orbit {
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, default_value_t = 10)]
        steps: usize,
    },
    /// Builds and certifies horseshoe rectangles.
    Horseshoe {
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        n_range: Vec<usize>,
        #[arg(long, default_value_t = 0.05)]
        tau: f64,
        #[arg(long, default_value_t = 1.0)]
        cone_slope: f64,
        #[arg(long, default_value_t = 50)]
        grid: usize,
    },
    /// Monte-Carlo survival in the union of horseshoe rectangles.
    Escape {
        #[arg(long, value_delimiter = ',', default_value = "0,1")]
        n_range: Vec<usize>,
        #[arg(long, default_value_t = 0.05)]
        tau: f64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        horizon: usize,
    },
    /// Locates heteroclinic tangencies in a range of λ.
    Tangency {
        #[arg(long, default_value_t = 1e-1)]
        lambda_hi: f64,
        #[arg(long, default_value_t = 1e-5)]
        lambda_lo: f64,
    },
    /// Searches for periodic sinks near one located tangency.
    Sinks {
        #[arg(long, default_value_t = 1e-1)]
        lambda_hi: f64,
        #[arg(long, default_value_t = 1e-5)]
        lambda_lo: f64,
        /// Index of the tangency, largest λ first.
        #[arg(long, default_value_t = 0)]
        record: usize,
        #[arg(long, default_value_t = 8)]
        period_max: usize,
        /// Scans the whole λ neighbourhood instead of stopping at the first sink.
        #[arg(long)]
        full_scan: bool,
    },
    /// Finds a point realizing a symbol word such as `1+,2+,1-`.
    Itinerary {
        #[arg(long)]
        word: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Curves { .. } => "curves",
            Command::Orbit { .. } => "orbit",
            Command::Horseshoe { .. } => "horseshoe",
            Command::Escape { .. } => "escape",
            Command::Tangency { .. } => "tangency",
            Command::Sinks { .. } => "sinks",
            Command::Itinerary { .. } => "itinerary",
        }
    }
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn header(command: &str, config: &ModelConfig) -> String {
    let mut s = format!("# bykov {command}\n");
    for line in write_config(config).lines() {
        let _ = writeln!(s, "# {line}");
    }
    s
}

struct Sink<'a> {
    out_dir: Option<PathBuf>,
    stdout: &'a mut dyn Write,
    header: String,
}

impl Sink<'_> {
    fn emit(&mut self, file: &str, body: &str) -> Result<(), Failure> {
        let text = format!("{}{}", self.header, body);
        match &self.out_dir {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
                let path = dir.join(file);
                std::fs::write(&path, text).map_err(|e| io_failure(&path, e))
            }
            None => self.stdout.write_all(text.as_bytes()).map_err(|e| Failure::Usage(e.to_string())),
        }
    }
}

fn load_config(g: &GlobalArgs) -> Result<ModelConfig, Failure> {
    let mut c = match &g.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            parse_config(&text)?
        }
        None => ModelConfig::default(),
    };
    if let Some(l) = g.lambda {
        c = c.with_lambda(l);
    }
    if let Some(s) = g.seed {
        c.seed = s;
    }
    Ok(c)
}

fn curves(c: &ModelConfig, samples: usize, sink: &mut Sink<'_>) -> Result<(), Failure> {
    if sink.out_dir.is_none() {
        return Err(Failure::Usage("curves writes four files and needs --out".into()));
    }
    if samples < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: samples }.into());
    }
    let u = &c.unfolding;
    let xs = linspace(0.0, std::f64::consts::TAU, samples);
    let mut g = String::from("x,g\n");
    let mut h = String::from("x,h\n");
    for &x in &xs {
        let _ = writeln!(g, "{x:.16e},{:.16e}", u.g(x));
        let _ = writeln!(h, "{x:.16e},{:.16e}", u.h(x));
    }
    sink.emit("g.csv", &g)?;
    sink.emit("h.csv", &h)?;
    if !(c.lambda() > 0.0) {
        sink.emit("eta_h.csv", "s,x_unwrapped,y\n# h vanishes identically; no image to sample\n")?;
        sink.emit("fold.csv", "x_unwrapped,y\n# no fold without unfolding\n")?;
        return Ok(());
    }
    let arc = UnstableArc::new(c);
    let (a, b) = arc.domain();
    let mut eta_h = String::from("s,x_unwrapped,y\n");
    for s in linspace(a, b, samples + 2).into_iter().skip(1).take(samples) {
        if let Ok(p) = eta_with_gain(&SectionPoint::in_v(s, u.h(s)), &c.saddles, c.psi_vw_gain, c.y_floor) {
            let _ = writeln!(eta_h, "{s:.16e},{:.16e},{:.16e}", p.a, p.b);
        }
    }
    sink.emit("eta_h.csv", &eta_h)?;
    let f = fold_point(c.lambda(), c)?;
    sink.emit("fold.csv", &format!("x_unwrapped,y\n{:.16e},{:.16e}\n", f.a, f.b))
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<i32, Failure> {
    let c = load_config(&cli.global)?;
    let name = cli.command.name();
    let mut sink = Sink { out_dir: cli.global.out.clone(), stdout, header: header(name, &c) };
    match &cli.command {
        Command::Validate => {
            let report = validate(&c);
            sink.emit("validate.txt", &format!("{report}\n"))?;
            return Ok(if report.is_valid() { 0 } else { 1 });
        }
        Command::Curves { samples } => curves(&c, *samples, &mut sink)?,
        Command::Orbit { x, y, steps } => {
            let orbit = iterate(&SectionPoint::in_v(*x, *y), &c, *steps)?;
            sink.emit("orbit.csv", &orbit.to_csv())?;
        }
        Command::Horseshoe { n_range, tau, cone_slope, grid } => {
            let h = build_horseshoe(n_range, *tau, &c)?;
            let cone = cone_hyperbolicity(&h.rects, *cone_slope, *grid, &c)?;
            let mut s = format!("first_index={}\n", h.first_index);
            for r in &h.rects {
                let _ = writeln!(s, "{r}");
            }
            for cert in &h.certificates {
                let _ = writeln!(s, "{cert}");
            }
            s.push_str("matrix\n");
            s.push_str(&h.matrix.to_string());
            let _ = writeln!(s, "{cone}");
            sink.emit("horseshoe.txt", &s)?;
        }
        Command::Escape { n_range, tau, samples, horizon } => {
            let h = crate::chaos::horseshoe::horseshoe_rectangles(n_range, *tau, &c)?.0;
            let curve = escape_experiment(&h, *samples, *horizon, &c)?;
            let mut s = String::new();
            match curve.decay {
                Some(d) => {
                    let _ = writeln!(s, "# decay_rate={:.16e} ci95=[{:.16e}, {:.16e}] trials={}", d.rate, d.ci_lo, d.ci_hi, d.trials);
                }
                None => s.push_str("# decay_rate=none\n"),
            }
            s.push_str(&curve.to_csv());
            sink.emit("escape.csv", &s)?;
        }
        Command::Tangency { lambda_hi, lambda_lo } => {
            let recs = find_tangencies(*lambda_hi, *lambda_lo, &c)?;
            let mut s = String::new();
            for r in &recs {
                let _ = writeln!(s, "{r}");
            }
            sink.emit("tangency.txt", &s)?;
        }
        Command::Sinks { lambda_hi, lambda_lo, record, period_max, full_scan } => {
            let recs = find_tangencies(*lambda_hi, *lambda_lo, &c)?;
            let rec = recs.get(*record).ok_or_else(|| {
                Error::InvalidInput(format!("record {record} requested but only {} tangencies located", recs.len()))
            })?;
            let search = SinkSearch { stop_at_first: !full_scan, ..SinkSearch::default() };
            let orbits = find_periodic_sinks_with(rec, *period_max, &search, &c);
            let mut s = format!("# tangency {rec}\n");
            for o in &orbits {
                let _ = writeln!(s, "{o}");
            }
            sink.emit("sinks.txt", &s)?;
        }
        Command::Itinerary { word } => {
            let w = parse_word(word)?;
            let r = realize_itinerary(&w, &c)?;
            sink.emit("itinerary.txt", &r.transcript())?;
        }
    }
    Ok(0)
}

/// Runs the command line `args` (program name first), writing results to
/// `stdout` unless `--out` is given. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            eprint!("{e}");
            return 2;
        }
    };
    match execute(&cli, stdout) {
        Ok(code) => code,
        Err(Failure::Domain(e)) => {
            eprintln!("error: {}: {e}", e.name());
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("bykov").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn validate_reference() {
        let (code, out) = run_str(&["validate"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("# bykov validate\n# C_v = 2.0\n"));
    }

    #[test]
    fn missing_config_is_usage_error() {
        assert_eq!(run_str(&["validate", "--config", "/nonexistent/x.cfg"]).0, 2);
        assert_eq!(run_str(&["orbit", "--x", "nope"]).0, 2);
    }

    #[test]
    fn domain_errors_exit_one() {
        assert_eq!(run_str(&["orbit", "--x", "0", "--y", "0", "--steps", "0"]).0, 1);
        assert_eq!(run_str(&["horseshoe", "--lambda", "0"]).0, 1);
    }

    #[test]
    fn zero_horizon_escape() {
        let (code, out) = run_str(&["escape", "--samples", "50", "--horizon", "0"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("returns,survivors,fraction\n0,50,1.0000000000000000e0\n"), "{out}");
    }

    #[test]
    fn orbit_csv() {
        let (code, out) = run_str(&["orbit", "--x", "1.0", "--y", "0.01", "--steps", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("step,x_unwrapped,y,sheet,symbol,winding,status\n"));
    }
}
