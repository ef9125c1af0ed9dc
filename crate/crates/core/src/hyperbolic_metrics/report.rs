//! CSV and SVG output of verification rows.

use std::io::Write;

use crate::error::{Error, Result};

use super::verify::BoundRow;

/// Write `rows` as CSV with a header line.
pub fn write_csv<W: Write>(rows: &[BoundRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Json(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Json(e.to_string()))?;
    Ok(())
}

/// Histogram of the allowance ratios, one bar per tenth, as an SVG string.
/// Ratios above one (failures) land in the last bar, drawn in red.
pub fn svg_histogram(rows: &[BoundRow]) -> String {
    const BINS: usize = 11;
    let mut counts = [0usize; BINS];
    for r in rows {
        let k = if r.ratio.is_finite() {
            ((r.ratio.max(0.0) * 10.0).floor() as usize).min(BINS - 1)
        } else {
            BINS - 1
        };
        counts[k] += 1;
    }
    let max = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let (w, h, bar) = (40 * BINS + 40, 240.0, 40);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{}\">\n",
        h + 40.0
    );
    for (k, &c) in counts.iter().enumerate() {
        let bh = h * c as f64 / max;
        let x = 20 + k * bar;
        let colour = if k == BINS - 1 { "#c0392b" } else { "#2e86c1" };
        s.push_str(&format!(
            "  <rect x=\"{x}\" y=\"{:.1}\" width=\"{}\" height=\"{bh:.1}\" fill=\"{colour}\"><title>{c}</title></rect>\n",
            h - bh + 10.0,
            bar - 4
        ));
        let tick = if k == BINS - 1 { ">1".to_string() } else { format!("{:.1}", k as f64 / 10.0) };
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"middle\">{tick}</text>\n",
            x + bar / 2 - 2,
            h + 28.0
        ));
    }
    s.push_str("</svg>\n");
    s
}
