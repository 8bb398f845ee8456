use std::path::Path;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use dimer_core::caloric::{
    caloric_curve, isentrope_electric, isentrope_magnetic, refrigerant_capacity, CaloricMode, RcMode,
};
use dimer_core::phases::{phase_diagram as build_phase_diagram, PhaseLabel};
use dimer_core::scan::{delta_s_map, entropy_map as build_entropy_map, entropy_map_electric, extract_isolines, Grid2D};
use dimer_core::validation::{run_validation, ValidationConfig, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_THERMO_SAMPLES};
use dimer_core::{analytic_spectrum, thermo_point, Fields};
use serde::{Deserialize, Serialize};

use crate::config::{merge, range, Format, ModelArgs, OutputArgs};
use crate::output::{emit, Product};
use crate::svg::{category_color, heatmap, line_plot, ramp, Legend};
use crate::table::{Cell, Table};

const MAP_RANGE: &str = "0:3:400";
const MAP_T_RANGE: &str = "0.01:3:400";
const CURVE_RANGE: &str = "0:3:200";
const CURVE_T_RANGE: &str = "0.01:3:200";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    B,
    E,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldAxis {
    B,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Magnetic,
    Electric,
}

impl From<Mode> for CaloricMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Magnetic => CaloricMode::Magnetic,
            Mode::Electric => CaloricMode::Electric,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Conventional,
    Inverse,
}

fn svg_requested(out: &OutputArgs) -> bool {
    out.format() == Format::Svg
}

fn check_fields(b: f64, e: f64) -> Result<Fields> {
    let f = Fields::new(b, e);
    f.validate()?;
    Ok(f)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct SpectrumArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Magnetic field energy mu_B B.
    #[arg(long)]
    pub b: Option<f64>,
    /// Electric field energy E.
    #[arg(long)]
    pub e: Option<f64>,
    /// Sweep b over lo:hi:n instead of a single value.
    #[arg(long)]
    pub b_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn spectrum(flags: &SpectrumArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let e = a.e.unwrap_or(0.0);
    let bs = match &a.b_range {
        Some(_) => range(&a.b_range, CURVE_RANGE)?.samples(),
        None => vec![a.b.unwrap_or(0.0)],
    };
    let mut t = Table::new(&[
        "b_over_J", "e_over_J", "eps1_over_J", "eps2_over_J", "eps3_over_J", "eps4_over_J",
        "eps5_over_J", "eps6_over_J", "c1_plus", "c1_minus", "c2_plus", "c2_minus", "phi_rad",
    ]);
    let mut levels: Vec<Vec<(f64, f64)>> = vec![Vec::new(); 6];
    for &b in &bs {
        let s = analytic_spectrum(&p, &check_fields(b, e)?);
        let mut row: Vec<Cell> = vec![b.into(), e.into()];
        row.extend(s.eps.iter().map(|&v| Cell::from(v)));
        row.extend([s.c1_plus, s.c1_minus, s.c2_plus, s.c2_minus, s.phi].map(Cell::from));
        t.push(row)?;
        for (k, &v) in s.eps.iter().enumerate() {
            levels[k].push((b, v));
        }
    }
    let mut product = Product::new(t);
    if svg_requested(&a.output) {
        if bs.len() < 2 {
            bail!("SVG output of the spectrum needs --b-range");
        }
        let series: Vec<(String, Vec<(f64, f64)>)> = levels
            .into_iter()
            .enumerate()
            .map(|(k, pts)| (format!("eps{}", k + 1), pts))
            .collect();
        product.svg = Some(line_plot(&format!("Energy levels at E/J = {e}"), "b/J", "energy/J", &series));
    }
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct PhaseDiagramArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Electric field axis lo:hi:n.
    #[arg(long)]
    pub e_range: Option<String>,
    /// Magnetic field axis lo:hi:n.
    #[arg(long)]
    pub b_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn phase_diagram(flags: &PhaseDiagramArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let er = range(&a.e_range, MAP_RANGE)?;
    let br = range(&a.b_range, MAP_RANGE)?;
    if er.lo < 0.0 || br.lo < 0.0 {
        bail!("field ranges must be non-negative");
    }
    let pd = build_phase_diagram(&p, er, br);
    let mut t = Table::new(&["e_over_J", "b_over_J", "phase"]);
    for (ib, &b) in pd.b_axis.iter().enumerate() {
        for (ie, &e) in pd.e_axis.iter().enumerate() {
            t.push(vec![e.into(), b.into(), pd.label(ie, ib).to_string().into()])?;
        }
    }
    let mut bt = Table::new(&["boundary", "e_over_J", "b_over_J"]);
    for c in &pd.boundaries {
        for &(e, b) in &c.samples {
            bt.push(vec![c.kind.name().into(), e.into(), b.into()])?;
        }
    }
    let mut product = Product::new(t);
    if svg_requested(&a.output) {
        let mut names: Vec<PhaseLabel> = pd.distinct_phases();
        names.sort_by_key(|l| l.to_string());
        let index = |l: &PhaseLabel| names.iter().position(|n| n == l).unwrap_or(0);
        let overlays: Vec<Vec<(f64, f64)>> = pd.boundaries.iter().map(|c| c.samples.clone()).collect();
        let legend = names
            .iter()
            .enumerate()
            .map(|(i, l)| (l.to_string(), category_color(i)))
            .collect();
        product.svg = Some(heatmap(
            "Ground-state phases",
            "E/J",
            "b/J",
            &pd.e_axis,
            &pd.b_axis,
            |ie, ib| category_color(index(pd.label(ie, ib))),
            &overlays,
            Legend::Categories(legend),
        ));
    }
    product.extras.push(("boundaries", bt));
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ThermoArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Swept variable.
    #[arg(long, value_enum)]
    pub axis: Option<Axis>,
    /// Magnetic field energy (fixed unless sweeping b).
    #[arg(long)]
    pub b: Option<f64>,
    /// Electric field energy (fixed unless sweeping e).
    #[arg(long)]
    pub e: Option<f64>,
    /// Temperature(s), comma separated (fixed unless sweeping t).
    #[arg(long, value_delimiter = ',')]
    pub t: Option<Vec<f64>>,
    #[arg(long)]
    pub b_range: Option<String>,
    #[arg(long)]
    pub e_range: Option<String>,
    #[arg(long)]
    pub t_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn thermo(flags: &ThermoArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let axis = a.axis.unwrap_or(Axis::B);
    let b0 = a.b.unwrap_or(0.0);
    let e0 = a.e.unwrap_or(0.0);
    let temps = a.t.clone().unwrap_or_else(|| vec![0.01]);
    if temps.is_empty() {
        bail!("--t needs at least one temperature");
    }
    // (b, e, t) triples grouped by curve
    let curves: Vec<(String, Vec<(f64, f64, f64)>)> = match axis {
        Axis::B => {
            let xs = range(&a.b_range, CURVE_RANGE)?.samples();
            temps
                .iter()
                .map(|&t| (format!("T/J={t}"), xs.iter().map(|&b| (b, e0, t)).collect()))
                .collect()
        }
        Axis::E => {
            let xs = range(&a.e_range, CURVE_RANGE)?.samples();
            temps
                .iter()
                .map(|&t| (format!("T/J={t}"), xs.iter().map(|&e| (b0, e, t)).collect()))
                .collect()
        }
        Axis::T => {
            let xs = range(&a.t_range, CURVE_T_RANGE)?.samples();
            vec![(String::new(), xs.iter().map(|&t| (b0, e0, t)).collect())]
        }
    };
    let mut table = Table::new(&["b_over_J", "e_over_J", "t_over_J", "m_over_ms", "p", "s_over_kB"]);
    let mut series = Vec::new();
    for (name, pts) in &curves {
        let mut m = Vec::new();
        let mut pol = Vec::new();
        let mut s = Vec::new();
        for &(b, e, t) in pts {
            let tp = thermo_point(&p, &check_fields(b, e)?, t)?;
            table.push(vec![b.into(), e.into(), t.into(), tp.m_over_ms.into(), tp.p.into(), tp.s.into()])?;
            let x = match axis {
                Axis::B => b,
                Axis::E => e,
                Axis::T => t,
            };
            m.push((x, tp.m_over_ms));
            pol.push((x, tp.p));
            s.push((x, tp.s));
        }
        let tag = |q: &str| if name.is_empty() { q.to_string() } else { format!("{q} {name}") };
        series.push((tag("m/m_s"), m));
        series.push((tag("P"), pol));
        series.push((tag("S/k_B"), s));
    }
    let mut product = Product::new(table);
    if svg_requested(&a.output) {
        let x_label = match axis {
            Axis::B => "b/J",
            Axis::E => "E/J",
            Axis::T => "T/J",
        };
        product.svg = Some(line_plot("Magnetization, polarization, entropy", x_label, "value", &series));
    }
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct MapArgs {
    /// Contour levels, comma separated; written as an isolines table.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<f64>>,
    #[arg(long)]
    pub t_range: Option<String>,
}

fn grid_product(grid: &Grid2D, levels: &[f64], title: &str, want_svg: bool) -> Result<Product> {
    if levels.iter().any(|l| !l.is_finite()) {
        bail!("contour levels must be finite");
    }
    let mut t = Table::new(&[&grid.x_label, &grid.y_label, &grid.value_label]);
    for iy in 0..grid.ny() {
        for ix in 0..grid.nx() {
            t.push(vec![grid.x[ix].into(), grid.y[iy].into(), grid.at(ix, iy).into()])?;
        }
    }
    let lines = extract_isolines(grid, levels);
    let mut it = Table::new(&["level", "line", &grid.x_label, &grid.y_label]);
    for (k, l) in lines.iter().enumerate() {
        for &(x, y) in &l.points {
            it.push(vec![l.level.into(), (k as u64).into(), x.into(), y.into()])?;
        }
    }
    let mut product = Product::new(t);
    if want_svg {
        let (lo, hi) = (grid.min(), grid.max());
        let span = if hi > lo { hi - lo } else { 1.0 };
        let overlays: Vec<Vec<(f64, f64)>> = lines.iter().map(|l| l.points.clone()).collect();
        product.svg = Some(heatmap(
            title,
            &grid.x_label,
            &grid.y_label,
            &grid.x,
            &grid.y,
            |ix, iy| ramp((grid.at(ix, iy) - lo) / span),
            &overlays,
            Legend::ColorBar {
                min: lo,
                max: hi,
                label: grid.value_label.clone(),
            },
        ));
    }
    if !levels.is_empty() {
        product.extras.push(("isolines", it));
    }
    Ok(product)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct EntropyMapArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Field on the horizontal axis; the other one is held fixed.
    #[arg(long, value_enum)]
    pub axis: Option<FieldAxis>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub e: Option<f64>,
    #[arg(long)]
    pub b_range: Option<String>,
    #[arg(long)]
    pub e_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn entropy_map(flags: &EntropyMapArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let tr = range(&a.map.t_range, MAP_T_RANGE)?;
    let grid = match a.axis.unwrap_or(FieldAxis::B) {
        FieldAxis::B => {
            let e = a.e.unwrap_or(0.0);
            check_fields(0.0, e)?;
            build_entropy_map(&p, e, range(&a.b_range, MAP_RANGE)?, tr)?
        }
        FieldAxis::E => {
            let b = a.b.unwrap_or(0.0);
            check_fields(b, 0.0)?;
            entropy_map_electric(&p, b, range(&a.e_range, MAP_RANGE)?, tr)?
        }
    };
    if grid.x[0] < 0.0 {
        bail!("field ranges must be non-negative");
    }
    let levels = a.map.levels.clone().unwrap_or_default();
    let product = grid_product(&grid, &levels, "Entropy S/k_B", svg_requested(&a.output))?;
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct DeltaSArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Which field is switched on.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Fixed electric field (magnetic mode).
    #[arg(long)]
    pub e: Option<f64>,
    /// Fixed magnetic field (electric mode).
    #[arg(long)]
    pub b: Option<f64>,
    /// Magnetic field spans lo:hi:n (magnetic mode).
    #[arg(long)]
    pub b_range: Option<String>,
    /// Electric field spans lo:hi:n (electric mode).
    #[arg(long)]
    pub e_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub map: MapArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn delta_s(flags: &DeltaSArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let tr = range(&a.map.t_range, MAP_T_RANGE)?;
    let mode = a.mode.unwrap_or(Mode::Magnetic);
    let (fixed, spans) = match mode {
        Mode::Magnetic => (a.e.unwrap_or(0.0), range(&a.b_range, MAP_RANGE)?),
        Mode::Electric => (a.b.unwrap_or(0.0), range(&a.e_range, MAP_RANGE)?),
    };
    if fixed < 0.0 {
        bail!("fixed field must be non-negative");
    }
    let grid = delta_s_map(&p, mode.into(), fixed, spans, tr)?;
    let levels = a.map.levels.clone().unwrap_or_default();
    let product = grid_product(&grid, &levels, "Isothermal entropy change -ΔS/k_B", svg_requested(&a.output))?;
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct IsentropeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Field along which T is traced; the other one is held fixed.
    #[arg(long, value_enum)]
    pub axis: Option<FieldAxis>,
    /// Target entropies S/k_B in (0, ln 6), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub target_s: Option<Vec<f64>>,
    #[arg(long)]
    pub b: Option<f64>,
    #[arg(long)]
    pub e: Option<f64>,
    #[arg(long)]
    pub b_range: Option<String>,
    #[arg(long)]
    pub e_range: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn isentrope(flags: &IsentropeArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let axis = a.axis.unwrap_or(FieldAxis::B);
    let targets = a.target_s.clone().unwrap_or_else(|| vec![2f64.ln()]);
    let field_col = match axis {
        FieldAxis::B => "b_over_J",
        FieldAxis::E => "e_over_J",
    };
    let mut t = Table::new(&["target_s_over_kB", field_col, "t_over_J"]);
    let mut gaps = Table::new(&["target_s_over_kB", field_col]);
    let mut series = Vec::new();
    for &target in &targets {
        let line = match axis {
            FieldAxis::B => {
                let e = a.e.unwrap_or(0.0);
                check_fields(0.0, e)?;
                isentrope_magnetic(&p, e, target, &range(&a.b_range, CURVE_RANGE)?.samples())?
            }
            FieldAxis::E => {
                let b = a.b.unwrap_or(0.0);
                check_fields(b, 0.0)?;
                isentrope_electric(&p, b, target, &range(&a.e_range, CURVE_RANGE)?.samples())?
            }
        };
        for &(x, temp) in &line.samples {
            check_fields(x, 0.0)?;
            t.push(vec![target.into(), x.into(), temp.into()])?;
        }
        for &x in &line.gaps {
            gaps.push(vec![target.into(), x.into()])?;
        }
        if !line.gaps.is_empty() {
            eprintln!("note: S = {target} is unreachable at {} field values", line.gaps.len());
        }
        series.push((format!("S/k_B={target:.4}"), line.samples));
    }
    let mut product = Product::new(t);
    if svg_requested(&a.output) {
        product.svg = Some(line_plot("Isentropes", &field_col.replace("_over_J", "/J"), "T/J", &series));
    }
    product.extras.push(("gaps", gaps));
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct RcArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Which field is switched on.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Lobe of -ΔS(T) to integrate.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Fixed electric field (magnetic mode).
    #[arg(long)]
    pub e: Option<f64>,
    /// Fixed magnetic field (electric mode).
    #[arg(long)]
    pub b: Option<f64>,
    /// Magnetic field spans lo:hi:n (magnetic mode).
    #[arg(long)]
    pub b_range: Option<String>,
    /// Electric field spans lo:hi:n (electric mode).
    #[arg(long)]
    pub e_range: Option<String>,
    #[arg(long)]
    pub t_range: Option<String>,
    /// Fixed upper integration limit instead of the half-maximum point.
    #[arg(long)]
    pub fixed_t2: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn rc(flags: &RcArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    let p = a.model.params()?;
    let mode = a.mode.unwrap_or(Mode::Magnetic);
    let kind = match a.kind.unwrap_or(Kind::Conventional) {
        Kind::Conventional => RcMode::Conventional,
        Kind::Inverse => RcMode::Inverse,
    };
    let (base, spans) = match mode {
        Mode::Magnetic => (a.e.unwrap_or(0.0), range(&a.b_range, "0.2:3:15")?),
        Mode::Electric => (a.b.unwrap_or(0.0), range(&a.e_range, "0.2:3:15")?),
    };
    if base < 0.0 || spans.lo < 0.0 {
        bail!("fields must be non-negative");
    }
    let t_grid = range(&a.t_range, "0.01:5:400")?.samples();
    let mut t = Table::new(&[
        "span_over_J", "rc_abs", "t1_over_J", "t2_over_J", "t_peak_over_J", "peak_abs_delta_s",
        "t1_clamped", "t2_clamped",
    ]);
    let mut curve_pts = Vec::new();
    for span in spans.samples() {
        let curve = caloric_curve(&p, mode.into(), base, span, &t_grid)?;
        match refrigerant_capacity(&curve, kind, a.fixed_t2) {
            Ok(r) => {
                t.push(vec![
                    span.into(), r.rc_abs.into(), r.t1.into(), r.t2.into(), r.t_peak.into(),
                    r.peak.into(), r.t1_clamped.into(), r.t2_clamped.into(),
                ])?;
                curve_pts.push((span, r.rc_abs));
            }
            Err(dimer_core::Error::NoExtremumOfRequestedSign) => {
                eprintln!("note: no {kind:?} lobe at span {span}; skipped");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if t.rows.is_empty() {
        bail!("no span produced a {kind:?} lobe");
    }
    let mut product = Product::new(t);
    if svg_requested(&a.output) {
        product.svg = Some(line_plot("Refrigerant capacity", "field span/J", "|Rc|", &[("|Rc|".into(), curve_pts)]));
    }
    emit(&a.output, product)?;
    Ok(true)
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
pub struct ValidateArgs {
    /// Random seed for the parameter sample.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random parameter points.
    #[arg(long)]
    pub sample: Option<usize>,
    /// Replace every per-check tolerance.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub output: OutputArgs,
}

pub fn validate(flags: &ValidateArgs, cfg: Option<&Path>) -> Result<bool> {
    let a = merge(flags, cfg)?;
    if a.output.format() == Format::Svg {
        bail!("validate has no SVG rendering");
    }
    let samples = a.sample.unwrap_or(DEFAULT_SAMPLES);
    if samples == 0 {
        bail!("--sample must be positive");
    }
    if let Some(tol) = a.tolerance {
        if !(tol >= 0.0) {
            bail!("--tolerance must be non-negative");
        }
    }
    let config = ValidationConfig {
        seed: a.seed.unwrap_or(DEFAULT_SEED),
        samples,
        thermo_samples: samples.min(DEFAULT_THERMO_SAMPLES),
        tolerance: a.tolerance,
    };
    let report = run_validation(&config);
    let mut t = Table::new(&["check", "samples", "max_deviation", "tolerance", "passed"]);
    for c in &report.checks {
        let dev = if c.max_deviation.is_finite() {
            Cell::Num(c.max_deviation)
        } else {
            Cell::Text("inf".into())
        };
        t.push(vec![c.name.as_str().into(), (c.samples as u64).into(), dev, c.tolerance.into(), c.passed.into()])?;
        eprintln!(
            "{:<4} {:<44} max dev {:.3e}  tol {:.1e}",
            if c.passed { "ok" } else { "FAIL" },
            c.name,
            c.max_deviation,
            c.tolerance
        );
    }
    eprintln!(
        "validation {} (seed {})",
        if report.passed { "passed" } else { "FAILED" },
        report.seed
    );
    emit(&a.output, Product::new(t))?;
    Ok(report.passed)
}
