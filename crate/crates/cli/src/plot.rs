//! Static SVG line charts for sweep tables and run time series.
//!
//! Output is a pure function of the input table and comment lines: no
//! timestamps, no map iteration order, fixed float formatting.

use anyhow::{bail, Result};
use std::fmt::Write as _;

use crate::csvio::DataTable;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 520.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 58.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

/// Which measured quantity a chart shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Fitness,
    Diversity,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Fitness => "fitness",
            Metric::Diversity => "diversity",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

/// Builds a chart from a parsed CSV, recognizing the sweep and series
/// layouts by their columns.
pub fn chart_from_table(table: &DataTable, metric: Metric) -> Result<Chart> {
    if table.columns.iter().any(|c| c == "invent_rate") {
        sweep_chart(table, metric)
    } else if table.columns.iter().any(|c| c == "iteration") {
        series_chart(table, metric)
    } else {
        bail!("input is neither a sweep table nor a run time series");
    }
}

/// One line per invent rate, creator percentage on the x axis.
pub fn sweep_chart(table: &DataTable, metric: Metric) -> Result<Chart> {
    let rate_col = table.column("invent_rate")?;
    let fraction_col = table.column("creator_fraction")?;
    let value_col = match metric {
        Metric::Fitness => table.column("mean_fitness_avg")?,
        Metric::Diversity => table.column("diversity_avg")?,
    };

    let mut series: Vec<Series> = Vec::new();
    for row in &table.rows {
        let rate = row[rate_col];
        let point = (row[fraction_col] * 100.0, row[value_col]);
        let label = format!("invent rate {rate}");
        match series.last_mut() {
            Some(last) if last.label == label => last.points.push(point),
            _ => series.push(Series {
                label,
                points: vec![point],
            }),
        }
    }
    let y_label = match metric {
        Metric::Fitness => "mean fitness",
        Metric::Diversity => "distinct actions",
    };
    Ok(Chart {
        title: format!("{y_label} vs creator percentage"),
        x_label: "creators in population (%)".to_string(),
        y_label: y_label.to_string(),
        series,
    })
}

/// A single line over iterations.
pub fn series_chart(table: &DataTable, metric: Metric) -> Result<Chart> {
    let iteration_col = table.column("iteration")?;
    let value_col = match metric {
        Metric::Fitness => table.column("mean_fitness")?,
        Metric::Diversity => table.column("diversity")?,
    };
    let points = table
        .rows
        .iter()
        .map(|row| (row[iteration_col], row[value_col]))
        .collect();
    let y_label = match metric {
        Metric::Fitness => "mean fitness",
        Metric::Diversity => "distinct actions",
    };
    Ok(Chart {
        title: format!("{y_label} over iterations"),
        x_label: "iteration".to_string(),
        y_label: y_label.to_string(),
        series: vec![Series {
            label: y_label.to_string(),
            points,
        }],
    })
}

/// Renders the chart as a standalone SVG document, preceded by the comment
/// lines (provenance carried over from the source CSV).
pub fn render_svg(chart: &Chart, comments: &[String]) -> Result<String> {
    if chart.series.is_empty() || chart.series.iter().all(|s| s.points.is_empty()) {
        bail!("nothing to plot: empty input");
    }

    let points = chart.series.iter().flat_map(|s| s.points.iter());
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y_max = f64::NEG_INFINITY;
    for &(x, y) in points {
        x_min = x_min.min(x);
        x_max = x_max.max(x);
        y_max = y_max.max(y);
    }
    if x_min == x_max {
        x_min -= 0.5;
        x_max += 0.5;
    }
    // Metrics are non-negative; anchor the y axis at zero.
    let y_ticks = ticks(0.0, if y_max > 0.0 { y_max } else { 1.0 });
    let y_top = *y_ticks.last().expect("at least one tick");
    let x_ticks = ticks(x_min, x_max);

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let to_x = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let to_y = |y: f64| MARGIN_TOP + (1.0 - y / y_top) * plot_h;

    let mut svg = String::new();
    for line in comments {
        // "--" is not allowed inside an XML comment.
        writeln!(svg, "<!-- {} -->", line.replace("--", "- -")).expect("string write");
    }
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    )
    .expect("string write");
    writeln!(svg, "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>").expect("ok");
    writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"26\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        escape(&chart.title)
    )
    .expect("ok");

    // Gridlines and tick labels.
    for &tick in &y_ticks {
        let y = to_y(tick);
        writeln!(
            svg,
            "  <line x1=\"{MARGIN_LEFT}\" y1=\"{y:.2}\" x2=\"{:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_LEFT + plot_w
        )
        .expect("ok");
        writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{}</text>",
            MARGIN_LEFT - 6.0,
            y + 4.0,
            format_tick(tick)
        )
        .expect("ok");
    }
    for &tick in &x_ticks {
        let x = to_x(tick);
        writeln!(
            svg,
            "  <line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_TOP,
            MARGIN_TOP + plot_h
        )
        .expect("ok");
        writeln!(
            svg,
            "  <text x=\"{x:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            MARGIN_TOP + plot_h + 16.0,
            format_tick(tick)
        )
        .expect("ok");
    }

    // Axes.
    writeln!(
        svg,
        "  <line x1=\"{MARGIN_LEFT}\" y1=\"{MARGIN_TOP}\" x2=\"{MARGIN_LEFT}\" y2=\"{:.2}\" stroke=\"black\"/>",
        MARGIN_TOP + plot_h
    )
    .expect("ok");
    writeln!(
        svg,
        "  <line x1=\"{MARGIN_LEFT}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\"/>",
        MARGIN_TOP + plot_h,
        MARGIN_LEFT + plot_w,
        MARGIN_TOP + plot_h
    )
    .expect("ok");
    writeln!(
        svg,
        "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">{}</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        escape(&chart.x_label)
    )
    .expect("ok");
    writeln!(
        svg,
        "  <text x=\"18\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.2})\">{}</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        escape(&chart.y_label)
    )
    .expect("ok");

    // Data lines and legend.
    for (index, series) in chart.series.iter().enumerate() {
        let color = PALETTE[index % PALETTE.len()];
        let points: Vec<String> = series
            .points
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", to_x(x), to_y(y.min(y_top))))
            .collect();
        writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1.8\" points=\"{}\"/>",
            points.join(" ")
        )
        .expect("ok");
        let legend_y = MARGIN_TOP + 12.0 + index as f64 * 18.0;
        writeln!(
            svg,
            "  <line x1=\"{:.2}\" y1=\"{legend_y:.2}\" x2=\"{:.2}\" y2=\"{legend_y:.2}\" stroke=\"{color}\" stroke-width=\"1.8\"/>",
            WIDTH - MARGIN_RIGHT + 12.0,
            WIDTH - MARGIN_RIGHT + 34.0
        )
        .expect("ok");
        writeln!(
            svg,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            WIDTH - MARGIN_RIGHT + 40.0,
            legend_y + 4.0,
            escape(&series.label)
        )
        .expect("ok");
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn format_tick(value: f64) -> String {
    if value == value.trunc() {
        return format!("{}", value as i64);
    }
    let trimmed = format!("{value:.4}");
    let trimmed = trimmed.trim_end_matches('0').trim_end_matches('.');
    if trimmed.is_empty() || trimmed == "-" {
        "0".to_string()
    } else {
        trimmed.to_string()
    }
}

/// Round tick positions covering `min..=max` with a 1/2/5-scaled step.
fn ticks(min: f64, max: f64) -> Vec<f64> {
    let span = (max - min).max(f64::MIN_POSITIVE);
    let raw_step = span / 5.0;
    let magnitude = 10f64.powf(raw_step.log10().floor());
    let normalized = raw_step / magnitude;
    let step = if normalized <= 1.0 {
        1.0
    } else if normalized <= 2.0 {
        2.0
    } else if normalized <= 5.0 {
        5.0
    } else {
        10.0
    } * magnitude;
    let start = (min / step).floor() * step;
    let mut ticks = Vec::new();
    let mut tick = start;
    while tick < max + step * 0.999 {
        if tick >= min - step * 1e-9 {
            ticks.push(tick);
        }
        tick += step;
    }
    ticks
}
