//! Curves over a parameter sweep and their CSV and SVG renderings.

mod curve;
mod format;
mod svg;
mod table;

pub use curve::{
    build_curves, parse_bounds, Bound, Channel, CurvePoint, CurveSpec, RateCurve, Sweep,
    PARALLEL_THRESHOLD,
};
pub use format::{format_g, format_g_with};
pub use svg::{render_svg, ChartLabels};
pub use table::{read_csv, write_csv};

/// Default chart labels for a spec.
pub fn chart_labels(spec: &CurveSpec) -> ChartLabels {
    let title = match (spec.channel, spec.tau, spec.rho) {
        (Channel::Synthesis, Some(tau), _) => format!("synthesis channel, tau = {}", format_g(tau)),
        (Channel::Sticky, _, Some(rho)) => {
            format!("sticky-insertion channel, rho = {}", format_g(rho))
        }
        (channel, _, _) => format!("{channel} channel"),
    };
    ChartLabels {
        title,
        x: spec.channel.sweep_param().to_string(),
        y: "rate (bits per symbol)".to_string(),
    }
}
