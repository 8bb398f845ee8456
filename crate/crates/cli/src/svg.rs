//! Static SVG rendering: heatmaps with overlaid polylines, and line plots.
//! Coordinates are printed with fixed precision so output is byte-stable.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;

const SERIES_COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

/// Anchors of a perceptually ordered colour ramp, blended linearly.
const RAMP: [[f64; 3]; 5] = [
    [68.0, 1.0, 84.0],
    [59.0, 82.0, 139.0],
    [33.0, 145.0, 140.0],
    [94.0, 201.0, 98.0],
    [253.0, 231.0, 37.0],
];

pub type Rgb = [u8; 3];

/// Linear colour map on `[0, 1]`, quantized to 256 steps.
pub fn ramp(u: f64) -> Rgb {
    let u = if u.is_finite() { u.clamp(0.0, 1.0) } else { 0.0 };
    let q = (u * 255.0).round() / 255.0;
    let x = q * (RAMP.len() - 1) as f64;
    let i = (x.floor() as usize).min(RAMP.len() - 2);
    let f = x - i as f64;
    let mut out = [0u8; 3];
    for k in 0..3 {
        out[k] = (RAMP[i][k] + f * (RAMP[i + 1][k] - RAMP[i][k])).round() as u8;
    }
    out
}

pub fn category_color(i: usize) -> Rgb {
    const PALETTE: [Rgb; 8] = [
        [166, 206, 227],
        [251, 154, 153],
        [178, 223, 138],
        [253, 191, 111],
        [202, 178, 214],
        [255, 255, 153],
        [31, 120, 180],
        [227, 26, 28],
    ];
    PALETTE[i % PALETTE.len()]
}

fn hex(c: Rgb) -> String {
    format!("#{:02x}{:02x}{:02x}", c[0], c[1], c[2])
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        let pad = |a: f64, b: f64| if b > a { (a, b) } else { (a - 0.5, a + 0.5) };
        let (x0, x1) = pad(x0, x1);
        let (y0, y1) = pad(y0, y1);
        Self { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

fn header(out: &mut String, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="24" text-anchor="middle" font-size="14">{}</text>"#,
        (LEFT + WIDTH - RIGHT) / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn axes(out: &mut String, fr: &Frame, x_label: &str, y_label: &str) {
    let (l, r) = (LEFT, WIDTH - RIGHT);
    let (t, b) = (TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        out,
        r#"<rect x="{l:.1}" y="{t:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black"/>"#,
        r - l,
        b - t
    );
    for k in 0..=4 {
        let u = k as f64 / 4.0;
        let xv = fr.x0 + u * (fr.x1 - fr.x0);
        let yv = fr.y0 + u * (fr.y1 - fr.y0);
        let (px, py) = (fr.px(xv), fr.py(yv));
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{b:.1}" x2="{px:.2}" y2="{:.1}" stroke="black"/><text x="{px:.2}" y="{:.1}" text-anchor="middle">{}</text>"#,
            b + 5.0,
            b + 20.0,
            tick(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{py:.2}" x2="{l:.1}" y2="{py:.2}" stroke="black"/><text x="{:.1}" y="{:.2}" text-anchor="end">{}</text>"#,
            l - 5.0,
            l - 8.0,
            py + 4.0,
            tick(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        (l + r) / 2.0,
        HEIGHT - 15.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{:.1}" text-anchor="middle" transform="rotate(-90 20 {:.1})">{}</text>"#,
        (t + b) / 2.0,
        (t + b) / 2.0,
        escape(y_label)
    );
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn polyline(out: &mut String, fr: &Frame, pts: &[(f64, f64)], color: &str, width: f64) {
    if pts.len() < 2 {
        return;
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", fr.px(x), fr.py(y)))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="{width}"/>"#,
        coords.join(" ")
    );
}

/// Cell edges halfway between samples, clamped to the axis ends.
fn cell_edges(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    let mut edges = Vec::with_capacity(n + 1);
    edges.push(axis[0]);
    for w in axis.windows(2) {
        edges.push(0.5 * (w[0] + w[1]));
    }
    edges.push(axis[n - 1]);
    edges
}

pub enum Legend {
    ColorBar { min: f64, max: f64, label: String },
    Categories(Vec<(String, Rgb)>),
}

/// Heatmap of `color(ix, iy)` on the sample grid, with polylines on top.
pub fn heatmap(
    title: &str,
    x_label: &str,
    y_label: &str,
    x: &[f64],
    y: &[f64],
    color: impl Fn(usize, usize) -> Rgb,
    overlays: &[Vec<(f64, f64)>],
    legend: Legend,
) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let fr = Frame::new(x[0], x[x.len() - 1], y[0], y[y.len() - 1]);
    let xe = cell_edges(x);
    let ye = cell_edges(y);
    for iy in 0..y.len() {
        let (top, bottom) = (fr.py(ye[iy + 1]), fr.py(ye[iy]));
        // merge horizontal runs of equal colour
        let mut ix = 0;
        while ix < x.len() {
            let c = color(ix, iy);
            let mut end = ix + 1;
            while end < x.len() && color(end, iy) == c {
                end += 1;
            }
            let (left, right) = (fr.px(xe[ix]), fr.px(xe[end]));
            let _ = writeln!(
                out,
                r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                right - left + 0.3,
                bottom - top + 0.3,
                hex(c)
            );
            ix = end;
        }
    }
    for line in overlays {
        polyline(&mut out, &fr, line, "black", 1.0);
    }
    axes(&mut out, &fr, x_label, y_label);
    let lx = WIDTH - RIGHT + 20.0;
    match legend {
        Legend::ColorBar { min, max, label } => {
            let (t, b) = (TOP, HEIGHT - BOTTOM);
            let steps = 64;
            let h = (b - t) / steps as f64;
            for k in 0..steps {
                let u = (k as f64 + 0.5) / steps as f64;
                let _ = writeln!(
                    out,
                    r#"<rect x="{lx:.1}" y="{:.2}" width="18" height="{:.2}" fill="{}"/>"#,
                    b - (k + 1) as f64 * h,
                    h + 0.3,
                    hex(ramp(u))
                );
            }
            let _ = writeln!(
                out,
                r#"<text x="{:.1}" y="{:.1}">{}</text><text x="{:.1}" y="{:.1}">{}</text><text x="{:.1}" y="{:.1}">{}</text>"#,
                lx + 24.0,
                t + 10.0,
                tick(max),
                lx + 24.0,
                b,
                tick(min),
                lx,
                t - 8.0,
                escape(&label)
            );
        }
        Legend::Categories(items) => {
            for (k, (name, c)) in items.iter().enumerate() {
                let y = TOP + 22.0 * k as f64;
                let _ = writeln!(
                    out,
                    r#"<rect x="{lx:.1}" y="{y:.1}" width="14" height="14" fill="{}" stroke="black"/><text x="{:.1}" y="{:.1}">{}</text>"#,
                    hex(*c),
                    lx + 20.0,
                    y + 11.0,
                    escape(name)
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Line plot of named series sharing one pair of axes.
pub fn line_plot(title: &str, x_label: &str, y_label: &str, series: &[(String, Vec<(f64, f64)>)]) -> String {
    let mut out = String::new();
    header(&mut out, title);
    let all = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let fr = Frame::new(x0, x1, y0, y1);
    for (k, (name, pts)) in series.iter().enumerate() {
        let color = SERIES_COLORS[k % SERIES_COLORS.len()];
        polyline(&mut out, &fr, pts, color, 1.5);
        let ly = TOP + 20.0 * k as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{color}" stroke-width="2"/><text x="{:.1}" y="{:.1}">{}</text>"#,
            ly + 6.0,
            lx + 20.0,
            ly + 6.0,
            lx + 25.0,
            ly + 10.0,
            escape(name)
        );
    }
    axes(&mut out, &fr, x_label, y_label);
    out.push_str("</svg>\n");
    out
}
