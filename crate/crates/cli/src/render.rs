//! Newton polygon pictures: an 80-column ASCII grid and deterministic,
//! integer-only SVG.

use std::fmt::Write as _;

use puremono::arith::Prime;
use puremono::fp::DEFAULT_SEED;
use puremono::monogenity::pure_reports;
use puremono::newton::{lower_convex_hull, principal_part, NewtonPolygon, ValuedPoint};
use puremono::zpoly::pure_polynomial;
use puremono::PureFieldParams;

use crate::cli::{RenderFormat, RenderRequest};
use crate::error::{CliError, CliResult};

pub const ASCII_WIDTH: usize = 80;
const ASCII_MARGIN: usize = 6;
const ASCII_MAX_ROWS: u64 = 40;

const SVG_WIDTH: u64 = 800;
const SVG_PANEL: u64 = 420;
const SVG_LEFT: u64 = 60;
const SVG_TOP: u64 = 40;
const SVG_PLOT_W: u64 = 700;
const SVG_PLOT_H: u64 = 330;
/// Abscissa past which the default SVG axis turns logarithmic.
pub const LOG_THRESHOLD: u64 = 32;

/// One polygon to draw.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plot {
    pub title: String,
    pub points: Vec<ValuedPoint>,
    pub hull: NewtonPolygon,
    pub principal: NewtonPolygon,
    /// Lattice points counted by the phi-index (`x, y >= 1`, on or under
    /// the principal part).
    pub index_points: Vec<ValuedPoint>,
}

impl Plot {
    pub fn from_points(title: impl Into<String>, points: Vec<ValuedPoint>) -> CliResult<Plot> {
        let hull = lower_convex_hull(&points)?;
        let principal = principal_part(&hull);
        let index_points = index_points(&principal);
        Ok(Plot {
            title: title.into(),
            points,
            hull,
            principal,
            index_points,
        })
    }

    fn x_max(&self) -> u64 {
        self.points.iter().map(|q| q.x).max().unwrap_or(0).max(1)
    }

    fn y_max(&self) -> u64 {
        self.points.iter().map(|q| q.y).max().unwrap_or(0).max(1)
    }
}

pub fn index_points(principal: &NewtonPolygon) -> Vec<ValuedPoint> {
    let v = principal.vertices();
    let mut out = Vec::new();
    if v.len() < 2 {
        return out;
    }
    if v[0].x >= 1 {
        out.extend((1..=v[0].y).map(|y| ValuedPoint::new(v[0].x, y)));
    }
    for side in principal.sides() {
        for x in side.start.x + 1..=side.end.x {
            let top = side.floor_at(x).max(0) as u64;
            out.extend((1..=top).map(|y| ValuedPoint::new(x, y)));
        }
    }
    out
}

/// Polygons of `x^(p^r) - m` at `q`, one per factor with a non-trivial polygon.
pub fn plots_for(params: &PureFieldParams, q: Prime) -> CliResult<Vec<Plot>> {
    let f = pure_polynomial(params);
    pure_reports(params, q, DEFAULT_SEED)?
        .into_iter()
        .filter(|r| !r.points.is_empty())
        .map(|r| Plot::from_points(format!("{f} at {q}, phi = {}", r.phi), r.points))
        .collect()
}

fn ascii_col(x: u64, x_max: u64) -> usize {
    let cols = (ASCII_WIDTH - ASCII_MARGIN - 1) as u64;
    let col = if x_max <= cols {
        x * (cols / x_max).min(4)
    } else {
        x * cols / x_max
    };
    col as usize
}

fn ascii_row(y: u64, y_max: u64) -> usize {
    let rows = y_max.min(ASCII_MAX_ROWS);
    (rows - y * rows / y_max) as usize
}

fn pad(mut line: String) -> String {
    let n = line.chars().count();
    if n < ASCII_WIDTH {
        line.extend(std::iter::repeat_n(' ', ASCII_WIDTH - n));
    }
    line.chars().take(ASCII_WIDTH).collect()
}

fn ascii_panel(plot: &Plot, out: &mut String) {
    let (x_max, y_max) = (plot.x_max(), plot.y_max());
    let width = ASCII_WIDTH - ASCII_MARGIN;
    let height = y_max.min(ASCII_MAX_ROWS) as usize + 1;
    let mut grid = vec![vec![' '; width]; height];
    let mut put = |x: u64, y: u64, c: char| {
        grid[ascii_row(y, y_max)][ascii_col(x, x_max)] = c;
    };
    for side in plot.hull.sides() {
        for x in side.start.x..=side.end.x {
            // nearest lattice ordinate on the side
            let num = side.start.y as i128 * side.length() as i128
                - side.height() as i128 * (x - side.start.x) as i128;
            let den = side.length() as i128;
            let y = (2 * num + den).div_euclid(2 * den).max(0) as u64;
            put(x, y, '.');
        }
    }
    for q in &plot.index_points {
        put(q.x, q.y, '+');
    }
    for q in &plot.points {
        put(q.x, q.y, '*');
    }
    for q in plot.hull.vertices() {
        put(q.x, q.y, 'O');
    }

    out.push_str(&pad(plot.title.clone()));
    out.push('\n');
    for (i, row) in grid.iter().enumerate() {
        let rows = y_max.min(ASCII_MAX_ROWS) as usize;
        let label = if y_max <= ASCII_MAX_ROWS || i == 0 || i == rows {
            ((rows - i) as u64 * y_max / rows.max(1) as u64).to_string()
        } else {
            String::new()
        };
        out.push_str(&pad(format!("{label:>4} |{}", row.iter().collect::<String>())));
        out.push('\n');
    }
    out.push_str(&pad(format!("{:>4} +{}", "", "-".repeat(width))));
    out.push('\n');
    let mut labels = vec![' '; width];
    for v in plot.hull.vertices() {
        let text = v.x.to_string();
        let col = ascii_col(v.x, x_max);
        if col + text.len() <= width && labels[col..col + text.len()].iter().all(|c| *c == ' ') {
            for (k, ch) in text.chars().enumerate() {
                labels[col + k] = ch;
            }
        }
    }
    out.push_str(&pad(format!("{:>4}  {}", "", labels.iter().collect::<String>())));
    out.push('\n');
    out.push_str(&pad("O vertex  * valued point  + index point  . polygon".into()));
    out.push('\n');
    for side in plot.hull.sides() {
        out.push_str(&pad(format!("side {}-{} slope {}", side.start, side.end, side.slope())));
        out.push('\n');
    }
    out.push_str(&pad(format!("index points: {}", plot.index_points.len())));
    out.push('\n');
}

pub fn ascii(plots: &[Plot], empty_note: &str) -> String {
    let mut out = String::new();
    if plots.is_empty() {
        out.push_str(&pad(empty_note.to_string()));
        out.push('\n');
    }
    for (i, plot) in plots.iter().enumerate() {
        if i > 0 {
            out.push_str(&pad(String::new()));
            out.push('\n');
        }
        ascii_panel(plot, &mut out);
    }
    out
}

/// `floor(256 * log2 x)` for `x >= 1`, in integers only.
pub fn log2_q8(x: u64) -> u64 {
    assert!(x >= 1);
    let k = 63 - x.leading_zeros() as u64;
    // mantissa x / 2^k in [1, 2), Q32
    let mut m: u128 = ((x as u128) << 32) >> k;
    let mut frac = 0;
    for _ in 0..8 {
        m = (m * m) >> 32;
        frac <<= 1;
        if m >= 2 << 32 {
            m >>= 1;
            frac |= 1;
        }
    }
    k * 256 + frac
}

/// Abscissa in 1/256 units: linear up to the threshold, then
/// `32 + 32 log2(x / 32)`.
pub fn axis_units(x: u64, linear: bool) -> u64 {
    if linear || x <= LOG_THRESHOLD {
        x * 256
    } else {
        LOG_THRESHOLD * 256 + LOG_THRESHOLD * (log2_q8(x) - log2_q8(LOG_THRESHOLD))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

struct Frame {
    x_max: u64,
    y_max: u64,
    linear: bool,
}

impl Frame {
    fn px(&self, x: u64) -> u64 {
        SVG_LEFT + axis_units(x, self.linear) * SVG_PLOT_W / axis_units(self.x_max, self.linear)
    }

    fn py(&self, y: u64) -> u64 {
        SVG_TOP + (self.y_max - y) * SVG_PLOT_H / self.y_max
    }
}

fn svg_panel(plot: &Plot, offset: u64, linear: bool, out: &mut String) {
    let fr = Frame {
        x_max: plot.x_max(),
        y_max: plot.y_max(),
        linear: linear || plot.x_max() <= LOG_THRESHOLD,
    };
    let _ = writeln!(out, r#"<g class="panel" transform="translate(0,{offset})">"#);
    let _ = writeln!(
        out,
        r#"<text x="{SVG_LEFT}" y="24" font-family="monospace" font-size="14">{}</text>"#,
        escape(&plot.title)
    );
    let (x0, y0) = (fr.px(0), fr.py(0));
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{}" y2="{y0}" stroke="black"/>"#,
        SVG_LEFT + SVG_PLOT_W
    );
    let _ = writeln!(out, r#"<line class="axis" x1="{x0}" y1="{y0}" x2="{x0}" y2="{SVG_TOP}" stroke="black"/>"#);

    let mut xs: Vec<u64> = plot.hull.vertices().iter().map(|v| v.x).collect();
    xs.push(0);
    xs.sort_unstable();
    xs.dedup();
    for x in xs {
        let px = fr.px(x);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{px}" y1="{y0}" x2="{px}" y2="{}" stroke="black"/><text x="{px}" y="{}" font-family="monospace" font-size="11" text-anchor="middle">{x}</text>"#,
            y0 + 5,
            y0 + 18
        );
    }
    let mut ys: Vec<u64> = if fr.y_max <= 20 {
        (0..=fr.y_max).collect()
    } else {
        plot.hull.vertices().iter().map(|v| v.y).chain([0, fr.y_max]).collect()
    };
    ys.sort_unstable();
    ys.dedup();
    for y in ys {
        let py = fr.py(y);
        let _ = writeln!(
            out,
            r#"<line class="tick" x1="{}" y1="{py}" x2="{x0}" y2="{py}" stroke="black"/><text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="end">{y}</text>"#,
            x0 - 5,
            x0 - 8,
            py + 4
        );
    }

    let chain = |poly: &NewtonPolygon| {
        poly.vertices()
            .iter()
            .map(|v| format!("{},{}", fr.px(v.x), fr.py(v.y)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(
        out,
        r##"<polyline class="hull" points="{}" fill="none" stroke="#888888" stroke-dasharray="4 3"/>"##,
        chain(&plot.hull)
    );
    if !plot.principal.is_empty() {
        let _ = writeln!(
            out,
            r#"<polyline class="principal" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            chain(&plot.principal)
        );
    }
    for q in &plot.index_points {
        let _ = writeln!(
            out,
            r##"<rect class="index" x="{}" y="{}" width="6" height="6" fill="#2a9d4a"/>"##,
            fr.px(q.x) - 3,
            fr.py(q.y) - 3
        );
    }
    for q in &plot.points {
        let _ = writeln!(
            out,
            r##"<circle class="point" cx="{}" cy="{}" r="3" fill="#1f5fbf"/>"##,
            fr.px(q.x),
            fr.py(q.y)
        );
    }
    for v in plot.hull.vertices() {
        let _ = writeln!(
            out,
            r##"<circle class="vertex" cx="{}" cy="{}" r="6" fill="none" stroke="#c03020" stroke-width="2"/>"##,
            fr.px(v.x),
            fr.py(v.y)
        );
    }
    for side in plot.hull.sides() {
        let mx = (fr.px(side.start.x) + fr.px(side.end.x)) / 2;
        let my = (fr.py(side.start.y) + fr.py(side.end.y)) / 2;
        let _ = writeln!(
            out,
            r#"<text class="slope" x="{}" y="{}" font-family="monospace" font-size="11">{}</text>"#,
            mx + 4,
            my.saturating_sub(6),
            side.slope()
        );
    }
    if !fr.linear {
        let _ = writeln!(
            out,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="end">log scale past x = {LOG_THRESHOLD}</text>"#,
            SVG_LEFT + SVG_PLOT_W,
            SVG_TOP - 6
        );
    }
    out.push_str("</g>\n");
}

pub fn svg(plots: &[Plot], linear: bool, empty_note: &str) -> String {
    let panels = plots.len().max(1) as u64;
    let height = panels * SVG_PANEL;
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{height}" viewBox="0 0 {SVG_WIDTH} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="{SVG_WIDTH}" height="{height}" fill="white"/>"#);
    if plots.is_empty() {
        let _ = writeln!(
            out,
            r#"<text x="{SVG_LEFT}" y="{SVG_TOP}" font-family="monospace" font-size="14">{}</text>"#,
            escape(empty_note)
        );
    }
    for (i, plot) in plots.iter().enumerate() {
        svg_panel(plot, i as u64 * SVG_PANEL, linear, &mut out);
    }
    out.push_str("</svg>\n");
    out
}

pub fn cmd_render(req: &RenderRequest) -> CliResult<String> {
    let params = PureFieldParams::new(&req.p, req.r, req.m.clone())?;
    let q = Prime::from_bigint(&req.at)?;
    let plots = plots_for(&params, q)?;
    let note = format!("{} is squarefree mod {q}: no polygon", pure_polynomial(&params));
    let text = match req.format {
        RenderFormat::Ascii => ascii(&plots, &note),
        RenderFormat::Svg => svg(&plots, req.linear, &note),
    };
    std::fs::write(&req.out, &text).map_err(|e| CliError::io(req.out.display(), e))?;
    Ok(text)
}
