//! Grid sweeps and isoline extraction for density maps.

use std::collections::HashMap;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caloric::{delta_s_electric, delta_s_magnetic, CaloricMode};
use crate::error::{Error, Result};
use crate::model::{Fields, ModelParams};
use crate::thermo::entropy;

/// Default samples per axis for density maps.
pub const DEFAULT_MAP_RESOLUTION: usize = 400;
/// Default samples for one-dimensional curves.
pub const DEFAULT_CURVE_RESOLUTION: usize = 200;

/// Evenly spaced samples `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range1D {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Range1D {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        let r = Self { lo, hi, n };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || !(self.lo < self.hi) || self.n < 2 {
            return Err(Error::InvalidRange(format!(
                "need finite lo < hi and n >= 2, got {}:{}:{}",
                self.lo, self.hi, self.n
            )));
        }
        Ok(())
    }

    pub fn samples(&self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

impl FromStr for Range1D {
    type Err = Error;

    /// Parses `lo:hi:n`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidRange(format!("expected lo:hi:n, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        Range1D::new(lo, hi, n)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64) / last
                    }
                })
                .collect()
        }
    }
}

/// Scalar field sampled on a rectilinear grid. `values` is row-major with
/// `y` as the row index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid2D {
    pub x_label: String,
    pub y_label: String,
    pub value_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid2D {
    pub fn nx(&self) -> usize {
        self.x.len()
    }

    pub fn ny(&self) -> usize {
        self.y.len()
    }

    pub fn at(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.x.len() + ix]
    }

    pub fn column(&self, ix: usize) -> Vec<f64> {
        (0..self.ny()).map(|iy| self.at(ix, iy)).collect()
    }

    pub fn row(&self, iy: usize) -> &[f64] {
        let nx = self.nx();
        &self.values[iy * nx..(iy + 1) * nx]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Bilinear interpolation; `None` outside the grid.
    pub fn interpolate(&self, x: f64, y: f64) -> Option<f64> {
        let (ix, tx) = locate(&self.x, x)?;
        let (iy, ty) = locate(&self.y, y)?;
        let v00 = self.at(ix, iy);
        let v10 = self.at(ix + 1, iy);
        let v01 = self.at(ix, iy + 1);
        let v11 = self.at(ix + 1, iy + 1);
        Some(
            v00 * (1.0 - tx) * (1.0 - ty)
                + v10 * tx * (1.0 - ty)
                + v01 * (1.0 - tx) * ty
                + v11 * tx * ty,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let increasing = |a: &[f64]| a.windows(2).all(|w| w[0] < w[1]);
        if self.values.len() != self.x.len() * self.y.len() {
            return Err(Error::InvalidRange("grid value count mismatch".into()));
        }
        if !increasing(&self.x) || !increasing(&self.y) {
            return Err(Error::InvalidRange("grid axes must increase".into()));
        }
        Ok(())
    }
}

/// Cell index and fractional offset of `v` on an increasing axis.
fn locate(axis: &[f64], v: f64) -> Option<(usize, f64)> {
    let n = axis.len();
    if n < 2 || v < axis[0] || v > axis[n - 1] {
        return None;
    }
    let i = match axis.partition_point(|&a| a <= v) {
        0 => 0,
        k => (k - 1).min(n - 2),
    };
    Some((i, (v - axis[i]) / (axis[i + 1] - axis[i])))
}

/// Evaluates `f(x, y)` on the grid, rows in parallel when `parallel` is set.
/// The result does not depend on the degree of parallelism.
pub fn evaluate_grid<F>(x: &[f64], y: &[f64], f: F, parallel: bool) -> Vec<f64>
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let row = |&yv: &f64| x.iter().map(|&xv| f(xv, yv)).collect::<Vec<f64>>();
    let rows: Vec<Vec<f64>> = if parallel {
        y.par_iter().map(row).collect()
    } else {
        y.iter().map(row).collect()
    };
    rows.concat()
}

fn check_temperature_axis(t_range: &Range1D) -> Result<()> {
    t_range.validate()?;
    if t_range.lo <= 0.0 {
        return Err(Error::NonPositiveTemperature(t_range.lo));
    }
    Ok(())
}

/// `S/k_B` over the `(b, T)` plane at fixed `e`.
pub fn entropy_map(
    params: &ModelParams,
    e_fixed: f64,
    b_range: Range1D,
    t_range: Range1D,
) -> Result<Grid2D> {
    b_range.validate()?;
    check_temperature_axis(&t_range)?;
    let x = b_range.samples();
    let y = t_range.samples();
    let values = evaluate_grid(
        &x,
        &y,
        |b, t| entropy(params, &Fields::new(b, e_fixed), t).unwrap_or(f64::NAN),
        true,
    );
    Ok(Grid2D {
        x_label: "b_over_J".into(),
        y_label: "t_over_J".into(),
        value_label: "s_over_kB".into(),
        x,
        y,
        values,
    })
}

/// `S/k_B` over the `(e, T)` plane at fixed `b`.
pub fn entropy_map_electric(
    params: &ModelParams,
    b_fixed: f64,
    e_range: Range1D,
    t_range: Range1D,
) -> Result<Grid2D> {
    e_range.validate()?;
    check_temperature_axis(&t_range)?;
    let x = e_range.samples();
    let y = t_range.samples();
    let values = evaluate_grid(
        &x,
        &y,
        |e, t| entropy(params, &Fields::new(b_fixed, e), t).unwrap_or(f64::NAN),
        true,
    );
    Ok(Grid2D {
        x_label: "e_over_J".into(),
        y_label: "t_over_J".into(),
        value_label: "s_over_kB".into(),
        x,
        y,
        values,
    })
}

/// `−ΔS/k_B` over the (field span, `T`) plane.
pub fn delta_s_map(
    params: &ModelParams,
    mode: CaloricMode,
    fixed_field: f64,
    span_range: Range1D,
    t_range: Range1D,
) -> Result<Grid2D> {
    span_range.validate()?;
    check_temperature_axis(&t_range)?;
    if span_range.lo < 0.0 {
        return Err(Error::InvalidRange("field spans must be >= 0".into()));
    }
    let x = span_range.samples();
    let y = t_range.samples();
    let values = evaluate_grid(
        &x,
        &y,
        |span, t| {
            let ds = match mode {
                CaloricMode::Magnetic => delta_s_magnetic(params, fixed_field, t, span),
                CaloricMode::Electric => delta_s_electric(params, fixed_field, t, span),
            };
            ds.map(|v| -v).unwrap_or(f64::NAN)
        },
        true,
    );
    let x_label = match mode {
        CaloricMode::Magnetic => "delta_b_over_J",
        CaloricMode::Electric => "delta_e_over_J",
    };
    Ok(Grid2D {
        x_label: x_label.into(),
        y_label: "t_over_J".into(),
        value_label: "minus_delta_s_over_kB".into(),
        x,
        y,
        values,
    })
}

/// One connected contour. Closed contours repeat their first point at the end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    pub level: f64,
    pub points: Vec<(f64, f64)>,
}

impl Polyline {
    pub fn is_closed(&self) -> bool {
        self.points.len() > 2 && self.points.first() == self.points.last()
    }
}

#[derive(Clone, Copy)]
enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

/// Marching squares with linear interpolation along cell edges. Saddle cells
/// are resolved by the average of their four corners.
pub fn extract_isolines(grid: &Grid2D, levels: &[f64]) -> Vec<Polyline> {
    levels
        .iter()
        .filter(|l| l.is_finite())
        .flat_map(|&level| isolines_at(grid, level))
        .collect()
}

fn isolines_at(grid: &Grid2D, level: f64) -> Vec<Polyline> {
    let (nx, ny) = (grid.nx(), grid.ny());
    if nx < 2 || ny < 2 {
        return vec![];
    }
    let above = |ix: usize, iy: usize| grid.at(ix, iy) >= level;

    // horizontal edge (ix,iy)-(ix+1,iy) -> 2k, vertical edge (ix,iy)-(ix,iy+1) -> 2k+1
    let edge_id = |ix: usize, iy: usize, side: Side| -> usize {
        match side {
            Side::Bottom => 2 * (iy * nx + ix),
            Side::Top => 2 * ((iy + 1) * nx + ix),
            Side::Left => 2 * (iy * nx + ix) + 1,
            Side::Right => 2 * (iy * nx + ix + 1) + 1,
        }
    };
    let edge_point = |id: usize| -> (f64, f64) {
        let k = id / 2;
        let (ix, iy) = (k % nx, k / nx);
        if id % 2 == 0 {
            let (v0, v1) = (grid.at(ix, iy), grid.at(ix + 1, iy));
            let t = (level - v0) / (v1 - v0);
            (grid.x[ix] + t * (grid.x[ix + 1] - grid.x[ix]), grid.y[iy])
        } else {
            let (v0, v1) = (grid.at(ix, iy), grid.at(ix, iy + 1));
            let t = (level - v0) / (v1 - v0);
            (grid.x[ix], grid.y[iy] + t * (grid.y[iy + 1] - grid.y[iy]))
        }
    };

    let mut segments: Vec<(usize, usize)> = Vec::new();
    for iy in 0..ny - 1 {
        for ix in 0..nx - 1 {
            let corners = [
                grid.at(ix, iy),
                grid.at(ix + 1, iy),
                grid.at(ix + 1, iy + 1),
                grid.at(ix, iy + 1),
            ];
            if corners.iter().any(|v| v.is_nan()) {
                continue;
            }
            let case = above(ix, iy) as u8
                | (above(ix + 1, iy) as u8) << 1
                | (above(ix + 1, iy + 1) as u8) << 2
                | (above(ix, iy + 1) as u8) << 3;
            let e = |s: Side| edge_id(ix, iy, s);
            use Side::*;
            match case {
                0 | 15 => {}
                1 | 14 => segments.push((e(Bottom), e(Left))),
                2 | 13 => segments.push((e(Bottom), e(Right))),
                3 | 12 => segments.push((e(Right), e(Left))),
                4 | 11 => segments.push((e(Right), e(Top))),
                6 | 9 => segments.push((e(Bottom), e(Top))),
                7 | 8 => segments.push((e(Top), e(Left))),
                5 | 10 => {
                    let center_above = corners.iter().sum::<f64>() / 4.0 >= level;
                    if (case == 5) == center_above {
                        segments.push((e(Bottom), e(Right)));
                        segments.push((e(Top), e(Left)));
                    } else {
                        segments.push((e(Bottom), e(Left)));
                        segments.push((e(Right), e(Top)));
                    }
                }
                _ => unreachable!(),
            }
        }
    }

    let mut by_edge: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &(a, b)) in segments.iter().enumerate() {
        by_edge.entry(a).or_default().push(i);
        by_edge.entry(b).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();

    let walk = |start_edge: usize, first_seg: usize, used: &mut Vec<bool>| {
        let mut points = vec![edge_point(start_edge)];
        let mut edge = start_edge;
        let mut seg = first_seg;
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            edge = if a == edge { b } else { a };
            points.push(edge_point(edge));
            match by_edge[&edge].iter().find(|&&s| !used[s]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        Polyline { level, points }
    };

    // open chains start at edges touched by a single segment; iterate segments
    // in order so the output is deterministic
    for i in 0..segments.len() {
        if used[i] {
            continue;
        }
        let (a, b) = segments[i];
        for end in [a, b] {
            if by_edge[&end].len() == 1 {
                out.push(walk(end, i, &mut used));
                break;
            }
        }
    }
    for i in 0..segments.len() {
        if !used[i] {
            out.push(walk(segments[i].0, i, &mut used));
        }
    }
    out
}
