//! SVG plot and text summary of a coverage profile.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use fglab::negligibility::{CoverageProfile, Method, ProfileRow};
use plotters::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("profile has no rows")]
    EmptyProfile,
    #[error("plot: {0}")]
    Plot(String),
}

const SIZE: (u32, u32) = (800, 500);

type SeriesKey = (usize, Method);

fn series(profile: &CoverageProfile) -> BTreeMap<SeriesKey, Vec<&ProfileRow>> {
    let mut map: BTreeMap<SeriesKey, Vec<&ProfileRow>> = BTreeMap::new();
    for row in &profile.rows {
        map.entry((row.max_pairs, row.method)).or_default().push(row);
    }
    for rows in map.values_mut() {
        rows.sort_by_key(|r| r.n);
    }
    map
}

/// Renders uncovered fraction against `n`, one series per `(N, method)`, as
/// a standalone SVG document. Values are plotted as stored in the profile.
pub fn render_report(profile: &CoverageProfile) -> Result<String, ReportError> {
    if profile.is_empty() {
        return Err(ReportError::EmptyProfile);
    }
    let all = series(profile);
    let n_min = profile.rows.iter().map(|r| r.n).min().unwrap_or(0);
    let n_max = profile.rows.iter().map(|r| r.n).max().unwrap_or(0).max(n_min + 1);
    let title = title(&profile.rows[0]);
    let plot_err = |e: &dyn std::fmt::Display| ReportError::Plot(e.to_string());

    let mut svg = String::new();
    {
        let root = SVGBackend::with_string(&mut svg, SIZE).into_drawing_area();
        root.fill(&WHITE).map_err(|e| plot_err(&e))?;
        let mut chart = ChartBuilder::on(&root)
            .caption(title, ("sans-serif", 20))
            .margin(15)
            .x_label_area_size(40)
            .y_label_area_size(55)
            .build_cartesian_2d(n_min..n_max, 0f64..1f64)
            .map_err(|e| plot_err(&e))?;
        chart.configure_mesh().x_desc("n").y_desc("uncovered fraction").draw().map_err(|e| plot_err(&e))?;
        for (index, ((max_pairs, method), rows)) in all.iter().enumerate() {
            let color = Palette99::pick(index).to_rgba();
            let points: Vec<(u64, f64)> = rows.iter().map(|r| (r.n, r.fraction)).collect();
            let style = ShapeStyle::from(color).stroke_width(2);
            chart
                .draw_series(LineSeries::new(points.clone(), style))
                .map_err(|e| plot_err(&e))?
                .label(format!("N={max_pairs} {method}"))
                .legend(move |(x, y)| PathElement::new(vec![(x, y), (x + 20, y)], style));
            chart.draw_series(points.iter().map(|&p| Circle::new(p, 3, color.filled()))).map_err(|e| plot_err(&e))?;
        }
        chart
            .configure_series_labels()
            .background_style(WHITE.mix(0.8))
            .border_style(BLACK)
            .draw()
            .map_err(|e| plot_err(&e))?;
        root.present().map_err(|e| plot_err(&e))?;
    }
    Ok(svg)
}

fn title(row: &ProfileRow) -> String {
    if row.params.is_empty() {
        row.family.clone()
    } else {
        format!("{} {}", row.family, row.params)
    }
}

/// Fixed-width table of the profile, one line per row, ordered like the CSV.
pub fn summary_table(profile: &CoverageProfile) -> Result<String, ReportError> {
    let first = profile.rows.first().ok_or(ReportError::EmptyProfile)?;
    let mut out = String::new();
    writeln!(out, "family: {}", title(first)).unwrap();
    writeln!(out, "{:>6} {:>3} {:<12} {:>7} {:>9} {:>9}", "n", "N", "method", "length", "uncovered", "fraction")
        .unwrap();
    for r in &profile.rows {
        let method = if r.budget_exhausted { format!("{}-budget", r.method) } else { r.method.to_string() };
        writeln!(
            out,
            "{:>6} {:>3} {:<12} {:>7} {:>9} {:>9.6}",
            r.n, r.max_pairs, method, r.length, r.uncovered, r.fraction
        )
        .unwrap();
    }
    for ((max_pairs, method), rows) in series(profile) {
        let min = rows.iter().map(|r| r.fraction).fold(f64::INFINITY, f64::min);
        let last = rows.last().expect("series are nonempty");
        writeln!(
            out,
            "N={max_pairs} {method}: min fraction {min:.6}, at largest n={} fraction {:.6}",
            last.n, last.fraction
        )
        .unwrap();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(csv: &str) -> CoverageProfile {
        format!("family,params,n,length,N,method,uncovered,fraction,ms\n{csv}").parse().unwrap()
    }

    #[test]
    fn empty_profile_is_an_error() {
        assert!(matches!(render_report(&CoverageProfile::default()), Err(ReportError::EmptyProfile)));
        assert!(matches!(summary_table(&CoverageProfile::default()), Err(ReportError::EmptyProfile)));
    }

    #[test]
    fn one_row_gives_one_point() {
        let p = profile("Y,k=2,3,12,1,exact,6,0.500000,0\n");
        let svg = render_report(&p).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(svg.contains("N=1 exact"));
        assert_eq!(svg, render_report(&p).unwrap());
    }

    #[test]
    fn summary_lists_rows_and_series() {
        let p = profile(
            "Y,k=2,3,12,1,exact,6,0.500000,0\nY,k=2,3,12,2,exact,3,0.250000,0\nY,k=2,4,20,1,exact,11,0.550000,0\n",
        );
        let text = summary_table(&p).unwrap();
        assert!(text.starts_with("family: Y k=2\n"));
        assert!(text.contains("     3   2 exact             12         3  0.250000"));
        assert!(text.contains("N=1 exact: min fraction 0.500000, at largest n=4 fraction 0.550000"));
        let svg = render_report(&p).unwrap();
        assert_eq!(svg.matches("<circle").count(), 3);
    }
}
