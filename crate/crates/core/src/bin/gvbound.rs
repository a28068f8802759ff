use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gvbound::report::{self, format_g, Channel, CurveSpec, Sweep};
use gvbound::verify::{self, Suite, VerifyConfig};
use gvbound::{sticky, synthesis, Error, Result};

#[derive(Parser)]
#[command(
    name = "gvbound",
    version,
    about = "Rate bounds for the sticky-insertion and DNA synthesis channels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate or plot bounds over a sweep of the error fraction.
    Curve {
        #[arg(long)]
        channel: Channel,
        /// Comma-separated subset of gv, sp, lb, capacity.
        #[arg(long, default_value = "gv,lb")]
        bounds: String,
        /// Sticky: fix the run density instead of optimizing GV over it.
        #[arg(long)]
        rho: Option<f64>,
        /// Synthesis: cycles per symbol.
        #[arg(long)]
        tau: Option<f64>,
        /// Sticky sweep, `lo:hi:steps`.
        #[arg(long)]
        beta_range: Option<Sweep>,
        /// Synthesis sweep, `lo:hi:steps`.
        #[arg(long)]
        delta_range: Option<Sweep>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the self-check suites.
    Verify {
        #[arg(default_value = "all")]
        suite: Suite,
        /// Word length for the exact count tables.
        #[arg(long, default_value_t = 8)]
        n_budget: usize,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Print the critical point and every bound at one parameter choice.
    Point {
        #[arg(long)]
        channel: Channel,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Curve {
            channel,
            bounds,
            rho,
            tau,
            beta_range,
            delta_range,
            format,
            output,
        } => curve(
            channel,
            &bounds,
            rho,
            tau,
            beta_range,
            delta_range,
            format,
            output,
        ),
        Command::Verify {
            suite,
            n_budget,
            tolerance,
        } => {
            let outcomes = verify::run_suite(
                suite,
                &VerifyConfig {
                    n_budget,
                    tolerance,
                },
            );
            print!("{}", verify::render_report(&outcomes));
            Ok(outcomes.iter().all(|o| o.passed))
        }
        Command::Point {
            channel,
            rho,
            beta,
            tau,
            delta,
        } => point(channel, rho, beta, tau, delta).map(|text| {
            print!("{text}");
            true
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("gvbound: {e}");
            ExitCode::from(2)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn curve(
    channel: Channel,
    bounds: &str,
    rho: Option<f64>,
    tau: Option<f64>,
    beta_range: Option<Sweep>,
    delta_range: Option<Sweep>,
    format: Format,
    output: Option<PathBuf>,
) -> Result<bool> {
    let sweep = match (channel, beta_range, delta_range) {
        (Channel::Sticky, Some(s), None) => s,
        (Channel::Synthesis, None, Some(s)) => s,
        (Channel::Sticky, None, None) => Sweep::new(0.0, 0.49, 50)?,
        (Channel::Synthesis, None, None) => Sweep::new(0.0, 1.0, 101)?,
        (Channel::Sticky, _, Some(_)) => {
            return Err(Error::InvalidSpec(
                "use --beta-range for the sticky channel".into(),
            ))
        }
        (Channel::Synthesis, Some(_), _) => {
            return Err(Error::InvalidSpec(
                "use --delta-range for the synthesis channel".into(),
            ))
        }
    };
    let spec = CurveSpec {
        channel,
        bounds: report::parse_bounds(bounds)?,
        rho,
        tau,
        sweep,
    };
    let curves = report::build_curves(&spec)?;
    let mut out: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        Format::Csv => report::write_csv(&mut out, channel.sweep_param(), &curves)?,
        Format::Svg => {
            out.write_all(report::render_svg(&curves, &report::chart_labels(&spec)).as_bytes())?
        }
    }
    out.flush()?;
    Ok(true)
}

fn line(out: &mut String, key: &str, value: f64) {
    out.push_str(&format!("{key} = {}\n", format_g(value)));
}

fn point(
    channel: Channel,
    rho: Option<f64>,
    beta: Option<f64>,
    tau: Option<f64>,
    delta: f64,
) -> Result<String> {
    let mut out = String::new();
    match channel {
        Channel::Sticky => {
            let beta = beta.ok_or_else(|| Error::InvalidSpec("--beta is required".into()))?;
            let best = sticky::gv_rate(beta)?;
            let rho = rho.unwrap_or(best.rho);
            let p = sticky::StickyParams::new(rho, beta)?;
            line(&mut out, "rho", rho);
            line(&mut out, "beta", beta);
            line(&mut out, "beta_max", sticky::beta_max(rho)?);
            if let Ok(cp) = sticky::critical_point_closed_form(&p) {
                line(&mut out, "x", cp.x);
                line(&mut out, "y", cp.y);
                line(&mut out, "z", cp.z);
                line(&mut out, "max_residual", cp.max_residual());
            }
            let ball = sticky::ball_rate(&p);
            line(&mut out, "ball_rate", ball.value);
            line(&mut out, "capacity", sticky::capacity_runs(rho)?);
            line(
                &mut out,
                "gv_fixed_rho",
                sticky::gv_objective(rho, beta)?.max(0.0),
            );
            line(&mut out, "gv", best.rate.max(0.0));
            line(&mut out, "gv_rho", best.rho);
            line(&mut out, "sp", sticky::sp_rate(beta)?);
            let lb = sticky::simple_lb_rate(beta)?;
            line(&mut out, "lb", lb.value);
            out.push_str(&format!("ball_flags = {}\n", ball.flags));
            out.push_str(&format!("lb_flags = {}\n", lb.flags));
        }
        Channel::Synthesis => {
            let tau = tau.ok_or_else(|| Error::InvalidSpec("--tau is required".into()))?;
            synthesis::SynthesisParams::new(tau, delta)?;
            line(&mut out, "tau", tau);
            line(&mut out, "delta", delta);
            line(&mut out, "capacity", synthesis::capacity(tau)?);
            if let Ok((dm, y_min)) = synthesis::delta_max(tau) {
                line(&mut out, "delta_max", dm);
                line(&mut out, "y_min", y_min);
                if delta > 0.0 && delta < dm {
                    let cp = synthesis::critical_point(tau, delta)?;
                    line(&mut out, "x", cp.x_hat);
                    line(&mut out, "y", cp.y_hat);
                    line(&mut out, "z", cp.z_hat);
                    line(&mut out, "max_residual", cp.max_residual());
                }
            }
            let ball = synthesis::ball_rate_upper(tau, delta)?;
            let gv = synthesis::gv_rate(tau, delta)?;
            let lb = synthesis::simple_lb_rate(tau, delta)?;
            line(&mut out, "ball_rate", ball.value);
            line(&mut out, "gv", gv.value);
            line(&mut out, "lb", lb.value);
            out.push_str(&format!("ball_flags = {}\n", ball.flags));
            out.push_str(&format!("gv_flags = {}\n", gv.flags));
            out.push_str(&format!("lb_flags = {}\n", lb.flags));
        }
    }
    Ok(out)
}
