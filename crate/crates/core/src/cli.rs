//! Command-line front end: `generalize`, `metrics`, `sweep` and `serve`.

use std::ffi::OsString;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::config::EngineConfig;
use crate::geometry::Size;
use crate::model::{parse_chart_spec, ChartSpec};
use crate::pipeline::{generalize, measure, size_sweep, PipelineError};
use crate::render::render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_LAYOUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "chartgen", version, about = "Resize line charts by generalizing them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generalize a chart for one target size and write SVG + JSON.
    Generalize(GeneralizeArgs),
    /// Print clutter metrics of the plain layout as JSON.
    Metrics(MetricsArgs),
    /// Generalize for several sizes at once.
    Sweep(SweepArgs),
    /// Serve the engine over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Engine config JSON; every field optional.
    #[arg(long, env = "CHARTGEN_CONFIG")]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GeneralizeArgs {
    pub input: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub width: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub height: i64,
    #[command(flatten)]
    pub config: ConfigArgs,
    /// SVG output path; the chart JSON goes next to it. Defaults to
    /// `<input stem>-<W>x<H>.svg` beside the input.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    pub input: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub width: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub height: i64,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub input: PathBuf,
    /// Comma-separated `WxH` list.
    #[arg(long, default_value = "1536x2048,750x1334,324x394")]
    pub sizes: String,
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: std::net::IpAddr,
    #[command(flatten)]
    pub config: ConfigArgs,
}

struct Failure(i32, String);

fn load_spec(path: &Path) -> Result<ChartSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    parse_chart_spec(&text).map_err(|e| Failure(EXIT_PARSE, format!("{}: {e}", path.display())))
}

fn load_config(args: &ConfigArgs, seed: Option<u64>) -> Result<EngineConfig, Failure> {
    let mut config = match &args.config {
        Some(p) => EngineConfig::from_path(p).map_err(|e| Failure(EXIT_PARSE, e.to_string()))?,
        None => EngineConfig::default(),
    };
    if let Some(s) = seed {
        config.seed = s;
    }
    Ok(config)
}

fn target(width: i64, height: i64) -> Result<Size, Failure> {
    if width <= 0 || height <= 0 {
        return Err(Failure(
            EXIT_LAYOUT,
            format!("width and height must be positive integers, got {width}x{height}"),
        ));
    }
    Ok(Size::new(width as f64, height as f64))
}

fn pipeline_failure(e: PipelineError) -> Failure {
    match e {
        PipelineError::Spec(_) => Failure(EXIT_PARSE, e.to_string()),
        _ => Failure(EXIT_LAYOUT, e.to_string()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    let fail = |e: std::io::Error| Failure(EXIT_IO, format!("cannot write {}: {e}", path.display()));
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(fail)?;
    }
    std::fs::write(path, contents).map_err(fail)
}

fn default_out(input: &Path, size: Size, dir: Option<&Path>) -> PathBuf {
    let stem = input.file_stem().and_then(|s| s.to_str()).unwrap_or("chart");
    let name = format!("{stem}-{}x{}.svg", size.width, size.height);
    match dir {
        Some(d) => d.join(name),
        None => input.with_file_name(name),
    }
}

fn cmd_generalize(args: &GeneralizeArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let size = target(args.width, args.height)?;
    let spec = load_spec(&args.input)?;
    let config = load_config(&args.config, args.seed)?;
    let chart = generalize(&spec, size, &config).map_err(pipeline_failure)?;
    let out = args.out.clone().unwrap_or_else(|| default_out(&args.input, size, None));
    write_file(&out, &render(&chart))?;
    let json_path = out.with_extension("json");
    write_file(&json_path, &chart.to_json())?;
    let _ = writeln!(
        stdout,
        "{} -> {} ({} visible, {} operators, satisfied={})",
        args.input.display(),
        out.display(),
        chart.visible_count(),
        chart.log.len(),
        chart.report.satisfied
    );
    Ok(())
}

fn cmd_metrics(args: &MetricsArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let size = target(args.width, args.height)?;
    let spec = load_spec(&args.input)?;
    let config = load_config(&args.config, None)?;
    let summary = measure(&spec, size, &config).map_err(pipeline_failure)?;
    let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&summary).expect("summary serializes"));
    Ok(())
}

fn parse_sizes(list: &str) -> Result<Vec<Size>, Failure> {
    list.split(',')
        .map(|item| {
            let (w, h) = item
                .trim()
                .split_once(['x', 'X'])
                .ok_or_else(|| Failure(EXIT_LAYOUT, format!("size `{item}` is not WxH")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Failure(EXIT_LAYOUT, format!("size `{item}` is not WxH")))
            };
            target(parse(w)?, parse(h)?)
        })
        .collect()
}

fn cmd_sweep(args: &SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let sizes = parse_sizes(&args.sizes)?;
    let spec = load_spec(&args.input)?;
    let config = load_config(&args.config, args.seed)?;
    let mut failed = false;
    for (size, result) in sizes.iter().zip(size_sweep(&spec, &sizes, &config)) {
        match result {
            Ok(chart) => {
                let out = default_out(&args.input, *size, args.out_dir.as_deref());
                write_file(&out, &render(&chart))?;
                write_file(&out.with_extension("json"), &chart.to_json())?;
                let _ = writeln!(
                    stdout,
                    "{size}\tvisible={}\toperators={}\tsatisfied={}\tsparkline={}",
                    chart.visible_count(),
                    chart.log.len(),
                    chart.report.satisfied,
                    chart.sparkline
                );
            }
            Err(e) => {
                failed = true;
                let _ = writeln!(stderr, "{size}: {e}");
            }
        }
    }
    if failed {
        Err(Failure(EXIT_LAYOUT, "some sizes failed".into()))
    } else {
        Ok(())
    }
}

fn cmd_serve(args: &ServeArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let config = load_config(&args.config, None)?;
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure(EXIT_IO, e.to_string()))?;
    let _ = writeln!(stdout, "listening on http://{addr}");
    let _ = stdout.flush();
    runtime
        .block_on(crate::service::serve(addr, config))
        .map_err(|e| Failure(EXIT_IO, format!("server error: {e}")))
}

/// Runs the CLI with explicit arguments and streams; returns the exit code.
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
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generalize(a) => cmd_generalize(a, stdout),
        Command::Metrics(a) => cmd_metrics(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout, stderr),
        Command::Serve(a) => cmd_serve(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure(code, message)) => {
            let _ = writeln!(stderr, "error: {message}");
            code
        }
    }
}
