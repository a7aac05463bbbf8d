//! Minimal deterministic SVG line plots of CSV columns.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::table::Table;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

fn numeric(t: &Table, name: &str) -> Result<Vec<f64>> {
    let c = t
        .column(name)
        .ok_or_else(|| Error::Usage(format!("no column named {name:?}")))?;
    t.rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r[c].trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| {
                    Error::Usage(format!(
                        "row {}: column {name:?} is not numeric: {:?}",
                        i + 1,
                        r[c]
                    ))
                })
        })
        .collect()
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
        (a.min(x), b.max(x))
    });
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Plots each column of `ys` against `x`. Rows keep file order.
pub fn plot_svg(t: &Table, x: &str, ys: &[String]) -> Result<String> {
    if ys.is_empty() {
        return Err(Error::Usage("no y columns given".into()));
    }
    if t.rows.is_empty() {
        return Err(Error::Usage("table has no rows".into()));
    }
    let xs = numeric(t, x)?;
    let series: Vec<Vec<f64>> = ys.iter().map(|y| numeric(t, y)).collect::<Result<_>>()?;
    let (x0, x1) = span(xs.iter().copied());
    let (y0, y1) = span(series.iter().flatten().copied());
    let sx = |v: f64| MARGIN + (v - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |v: f64| HEIGHT - MARGIN - (v - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    let (l, r, b, top) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    writeln!(
        s,
        r#"<path d="M{l} {top} L{l} {b} L{r} {b}" stroke="black" fill="none"/>"#
    )
    .unwrap();
    for (v, px) in [(x0, l), (x1, r)] {
        writeln!(
            s,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{v:.4}</text>"#,
            b + 16.0
        )
        .unwrap();
    }
    for (v, py) in [(y0, b), (y1, top)] {
        writeln!(
            s,
            r#"<text x="{:.2}" y="{py:.2}" text-anchor="end">{v:.4}</text>"#,
            l - 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        WIDTH / 2.0,
        HEIGHT - 10.0,
        escape(x)
    )
    .unwrap();
    for (k, (name, ys)) in ys.iter().zip(&series).enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = xs
            .iter()
            .zip(ys)
            .map(|(&a, &b)| format!("{:.2},{:.2}", sx(a), sy(b)))
            .collect();
        writeln!(
            s,
            r#"<polyline points="{}" stroke="{color}" fill="none" stroke-width="1.5"/>"#,
            pts.join(" ")
        )
        .unwrap();
        for p in &pts {
            let (cx, cy) = p.split_once(',').unwrap();
            writeln!(s, r#"<circle cx="{cx}" cy="{cy}" r="2.5" fill="{color}"/>"#).unwrap();
        }
        let ly = top + 14.0 * k as f64;
        writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" fill="{color}">{}</text>"#,
            r - 120.0,
            escape(name)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Table {
        let mut t = Table::new(&["p", "frac_rigid", "status"]);
        t.push(vec!["0.1".into(), "0.0".into(), "ok".into()]);
        t.push(vec!["0.2".into(), "1.0".into(), "ok".into()]);
        t
    }

    #[test]
    fn output_is_deterministic() {
        let a = plot_svg(&table(), "p", &["frac_rigid".into()]).unwrap();
        assert_eq!(a, plot_svg(&table(), "p", &["frac_rigid".into()]).unwrap());
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 2);
    }

    #[test]
    fn bad_columns_are_errors() {
        assert!(plot_svg(&table(), "q", &["frac_rigid".into()]).is_err());
        assert!(plot_svg(&table(), "p", &["status".into()]).is_err());
        assert!(plot_svg(&table(), "p", &[]).is_err());
    }
}
