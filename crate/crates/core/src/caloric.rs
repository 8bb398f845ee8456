//! Magnetocaloric and electrocaloric figures of merit.
//!
//! Sign convention: `−ΔS > 0` is the conventional effect, `−ΔS < 0` the
//! inverse one. `ΔS = S(field span) − S(zero field)` at fixed temperature.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Fields, ModelParams};
use crate::thermo::{entropy, T_FLOOR};

/// Upper end of the temperature search, in units of `J`.
pub const T_CEILING: f64 = 1e3;
/// Dead band for the sign of `ΔS`.
pub const NULL_BAND: f64 = 1e-12;
/// Minimum number of samples for a refrigerant-capacity evaluation.
pub const MIN_CURVE_SAMPLES: usize = 8;

/// Field that is varied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaloricMode {
    Magnetic,
    Electric,
}

/// Axis along which an isentrope is traced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldAxis {
    B,
    E,
}

/// Constant-entropy line in a field–temperature plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Isentrope {
    pub target_s: f64,
    pub axis: FieldAxis,
    pub fixed_field: f64,
    /// `(field, T)` pairs.
    pub samples: Vec<(f64, f64)>,
    /// Field values where no temperature in `[T_FLOOR, T_CEILING]` reaches
    /// the target.
    pub gaps: Vec<f64>,
}

/// Solves `S(T) = target` by bisection in `ln T`.
///
/// `None` when `S(T_CEILING) < target` or when the residual entropy at
/// `T_FLOOR` already exceeds the target.
pub fn temperature_for_entropy(params: &ModelParams, f: &Fields, target: f64) -> Option<f64> {
    let s = |t: f64| entropy(params, f, t).ok();
    let t_lo = T_FLOOR * params.j;
    let t_hi = T_CEILING * params.j;
    let s_lo = s(t_lo)?;
    let s_hi = s(t_hi)?;
    if s_hi < target {
        return None;
    }
    if s_lo >= target {
        return (s_lo - target <= 1e-12).then_some(t_lo);
    }
    let (mut lo, mut hi) = (t_lo.ln(), t_hi.ln());
    // stop once hi/lo - 1 < 1e-13
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if s(mid.exp())? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some((0.5 * (lo + hi)).exp())
}

fn check_target(target_s: f64) -> Result<()> {
    if target_s > 0.0 && target_s < 6f64.ln() {
        Ok(())
    } else {
        Err(Error::TargetOutOfRange(target_s))
    }
}

fn isentrope(
    params: &ModelParams,
    axis: FieldAxis,
    fixed_field: f64,
    target_s: f64,
    grid: &[f64],
) -> Result<Isentrope> {
    check_target(target_s)?;
    let solved: Vec<(f64, Option<f64>)> = grid
        .par_iter()
        .map(|&x| {
            let f = match axis {
                FieldAxis::B => Fields::new(x, fixed_field),
                FieldAxis::E => Fields::new(fixed_field, x),
            };
            (x, temperature_for_entropy(params, &f, target_s))
        })
        .collect();
    let mut samples = Vec::new();
    let mut gaps = Vec::new();
    for (x, t) in solved {
        match t {
            Some(t) => samples.push((x, t)),
            None => gaps.push(x),
        }
    }
    Ok(Isentrope {
        target_s,
        axis,
        fixed_field,
        samples,
        gaps,
    })
}

/// Isentrope `T(b)` at fixed electric field.
pub fn isentrope_magnetic(
    params: &ModelParams,
    e_fixed: f64,
    target_s: f64,
    b_grid: &[f64],
) -> Result<Isentrope> {
    isentrope(params, FieldAxis::B, e_fixed, target_s, b_grid)
}

/// Isentrope `T(e)` at fixed magnetic field.
pub fn isentrope_electric(
    params: &ModelParams,
    b_fixed: f64,
    target_s: f64,
    e_grid: &[f64],
) -> Result<Isentrope> {
    isentrope(params, FieldAxis::E, b_fixed, target_s, e_grid)
}

/// `ΔS_T^M = S(T, b = span, e) − S(T, b = 0, e)`.
pub fn delta_s_magnetic(params: &ModelParams, e: f64, t: f64, span_b: f64) -> Result<f64> {
    Ok(entropy(params, &Fields::new(span_b, e), t)? - entropy(params, &Fields::new(0.0, e), t)?)
}

/// `ΔS_T^E = S(T, b, e = span) − S(T, b, e = 0)`.
pub fn delta_s_electric(params: &ModelParams, b: f64, t: f64, span_e: f64) -> Result<f64> {
    Ok(entropy(params, &Fields::new(b, span_e), t)? - entropy(params, &Fields::new(b, 0.0), t)?)
}

/// `−ΔS(T)` for one field span.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaloricCurve {
    pub mode: CaloricMode,
    pub span: f64,
    /// The other, fixed field (`e` for magnetic mode, `b` for electric).
    pub base: f64,
    /// `(T, −ΔS/k_B)` pairs ordered by `T`.
    pub samples: Vec<(f64, f64)>,
}

pub fn caloric_curve(
    params: &ModelParams,
    mode: CaloricMode,
    base: f64,
    span: f64,
    t_grid: &[f64],
) -> Result<CaloricCurve> {
    let samples = t_grid
        .iter()
        .map(|&t| {
            let ds = match mode {
                CaloricMode::Magnetic => delta_s_magnetic(params, base, t, span)?,
                CaloricMode::Electric => delta_s_electric(params, base, t, span)?,
            };
            Ok((t, -ds))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CaloricCurve {
        mode,
        span,
        base,
        samples,
    })
}

/// Sign class of an isothermal entropy change.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaloricEffect {
    Conventional,
    Inverse,
    Null,
}

pub fn classify_caloric(delta_s: f64) -> CaloricEffect {
    if delta_s.abs() < NULL_BAND {
        CaloricEffect::Null
    } else if delta_s < 0.0 {
        CaloricEffect::Conventional
    } else {
        CaloricEffect::Inverse
    }
}

/// Which lobe of `−ΔS(T)` the refrigerant capacity is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RcMode {
    Conventional,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RcResult {
    pub rc_abs: f64,
    pub t1: f64,
    pub t2: f64,
    pub mode: RcMode,
    /// Temperature and `|ΔS|` at the refined extremum.
    pub t_peak: f64,
    pub peak: f64,
    /// Set when the half-maximum crossing fell outside the sampled range.
    pub t1_clamped: bool,
    pub t2_clamped: bool,
}

/// Vertex of the parabola through three points; `None` if degenerate.
fn parabola_vertex(p0: (f64, f64), p1: (f64, f64), p2: (f64, f64)) -> Option<(f64, f64)> {
    let (x0, y0) = p0;
    let (x1, y1) = p1;
    let (x2, y2) = p2;
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let a = (d12 - d01) / (x2 - x0);
    if !(a < 0.0) {
        return None;
    }
    let b = d01 - a * (x0 + x1);
    let xv = -b / (2.0 * a);
    if !(xv > x0 && xv < x2) {
        return None;
    }
    let yv = y1 + (xv - x1) * (d01 + a * (xv - x0));
    Some((xv, yv))
}

fn lerp_crossing(p: (f64, f64), q: (f64, f64), level: f64) -> f64 {
    if q.1 == p.1 {
        return p.0;
    }
    p.0 + (level - p.1) * (q.0 - p.0) / (q.1 - p.1)
}

/// Piecewise-quadratic integral of samples over `[a, b]`, where `a` and `b`
/// lie inside the sampled range. Whole grid pairs use composite Simpson;
/// partial cells at either end use the local three-point interpolant.
fn integrate_samples(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    const SNAP: f64 = 1e-12;
    let n = xs.len();
    let scale = (xs[n - 1] - xs[0]).abs().max(1.0);

    // first/last native samples inside [a, b], snapping near-coincident ends
    let mut first = xs.partition_point(|&x| x < a - SNAP * scale);
    let mut last = xs.partition_point(|&x| x <= b + SNAP * scale);
    if last == 0 || first >= n || first >= last {
        return quad_piece(xs, ys, a, b);
    }
    last -= 1;
    let mut total = 0.0;
    if (xs[first] - a).abs() > SNAP * scale {
        total += quad_piece(xs, ys, a, xs[first]);
    } else {
        first = first.min(last);
    }
    if (b - xs[last]).abs() > SNAP * scale {
        total += quad_piece(xs, ys, xs[last], b);
    }
    total + simpson_irregular(&xs[first..=last], &ys[first..=last])
}

/// Integral over `[a, b]` of the quadratic through the three samples nearest
/// to the interval.
fn quad_piece(xs: &[f64], ys: &[f64], a: f64, b: f64) -> f64 {
    let n = xs.len();
    if n < 3 {
        let ya = interp(xs, ys, a);
        let yb = interp(xs, ys, b);
        return 0.5 * (ya + yb) * (b - a);
    }
    let mid = 0.5 * (a + b);
    let k = xs.partition_point(|&x| x < mid).clamp(1, n - 2);
    let (x0, x1, x2) = (xs[k - 1], xs[k], xs[k + 1]);
    let (y0, y1, y2) = (ys[k - 1], ys[k], ys[k + 1]);
    // Lagrange basis integrated with 3-point Gauss–Legendre (exact for quadratics)
    let p = |x: f64| {
        y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2))
            + y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2))
            + y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1))
    };
    let h = 0.5 * (b - a);
    let r = (0.6f64).sqrt();
    h * (5.0 * p(mid - r * h) + 8.0 * p(mid) + 5.0 * p(mid + r * h)) / 9.0
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let k = xs.partition_point(|&v| v < x).clamp(1, n - 1);
    let (x0, x1) = (xs[k - 1], xs[k]);
    ys[k - 1] + (x - x0) * (ys[k] - ys[k - 1]) / (x1 - x0)
}

/// Composite Simpson for irregular spacing (odd interval count handled with
/// the standard end correction).
fn simpson_irregular(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    if n == 2 {
        return 0.5 * (ys[0] + ys[1]) * (xs[1] - xs[0]);
    }
    let intervals = n - 1;
    let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
    let mut total = 0.0;
    let mut i = 0;
    while i + 1 < intervals {
        let (h0, h1) = (h[i], h[i + 1]);
        total += (h0 + h1) / 6.0
            * ((2.0 - h1 / h0) * ys[i]
                + (h0 + h1).powi(2) / (h0 * h1) * ys[i + 1]
                + (2.0 - h0 / h1) * ys[i + 2]);
        i += 2;
    }
    if intervals % 2 == 1 {
        let (hm, hl) = (h[intervals - 2], h[intervals - 1]);
        let alpha = (2.0 * hl * hl + 3.0 * hl * hm) / (6.0 * (hm + hl));
        let beta = (hl * hl + 3.0 * hl * hm) / (6.0 * hm);
        let eta = hl.powi(3) / (6.0 * hm * (hm + hl));
        total += alpha * ys[n - 1] + beta * ys[n - 2] - eta * ys[n - 3];
    }
    total
}

/// Refrigerant capacity `|∫_{T1}^{T2} ΔS dT|` between the half-extremum
/// temperatures of the requested lobe.
///
/// The extremum is refined by a three-point parabola around the best sample.
/// `fixed_t2` replaces the upper limit. Crossings outside the sampled range
/// are clamped to its ends and flagged.
pub fn refrigerant_capacity(
    curve: &CaloricCurve,
    mode: RcMode,
    fixed_t2: Option<f64>,
) -> Result<RcResult> {
    let n = curve.samples.len();
    if n < MIN_CURVE_SAMPLES {
        return Err(Error::TooFewSamples {
            needed: MIN_CURVE_SAMPLES,
            got: n,
        });
    }
    let sign = match mode {
        RcMode::Conventional => 1.0,
        RcMode::Inverse => -1.0,
    };
    let ts: Vec<f64> = curve.samples.iter().map(|s| s.0).collect();
    // oriented so the requested lobe is positive
    let ys: Vec<f64> = curve.samples.iter().map(|s| sign * s.1).collect();

    let (k, &y_best) = ys
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("non-empty");
    if !(y_best > NULL_BAND) {
        return Err(Error::NoExtremumOfRequestedSign);
    }
    let (t_peak, peak) = if k > 0 && k + 1 < n {
        parabola_vertex((ts[k - 1], ys[k - 1]), (ts[k], ys[k]), (ts[k + 1], ys[k + 1]))
            .filter(|&(_, y)| y >= y_best)
            .unwrap_or((ts[k], y_best))
    } else {
        (ts[k], y_best)
    };
    let half = 0.5 * peak;

    let mut t1 = ts[0];
    let mut t1_clamped = true;
    for i in (0..k).rev() {
        if ys[i] <= half {
            t1 = lerp_crossing((ts[i], ys[i]), (ts[i + 1], ys[i + 1]), half);
            t1_clamped = false;
            break;
        }
    }

    let (t2, t2_clamped) = match fixed_t2 {
        Some(t) if t > ts[n - 1] => (ts[n - 1], true),
        Some(t) if t <= t1 => {
            return Err(Error::InvalidRange(format!(
                "fixed T2 = {t} must exceed T1 = {t1}"
            )))
        }
        Some(t) => (t, false),
        None => {
            let mut out = (ts[n - 1], true);
            for i in (k + 1)..n {
                if ys[i] <= half {
                    out = (lerp_crossing((ts[i - 1], ys[i - 1]), (ts[i], ys[i]), half), false);
                    break;
                }
            }
            out
        }
    };

    let rc = integrate_samples(&ts, &ys, t1, t2);
    Ok(RcResult {
        rc_abs: rc.abs(),
        t1,
        t2,
        mode,
        t_peak,
        peak,
        t1_clamped,
        t2_clamped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scan::linspace;

    fn triangle() -> CaloricCurve {
        let samples = linspace(0.0, 2.0, 401)
            .into_iter()
            .map(|t| (t, 1.0 - (t - 1.0).abs()))
            .collect();
        CaloricCurve {
            mode: CaloricMode::Magnetic,
            span: 1.0,
            base: 0.0,
            samples,
        }
    }

    #[test]
    fn classify_sign_rule() {
        assert_eq!(classify_caloric(-0.3), CaloricEffect::Conventional);
        assert_eq!(classify_caloric(0.2), CaloricEffect::Inverse);
        assert_eq!(classify_caloric(0.0), CaloricEffect::Null);
    }

    #[test]
    fn triangle_capacity() {
        let rc = refrigerant_capacity(&triangle(), RcMode::Conventional, None).unwrap();
        assert!((rc.t1 - 0.5).abs() < 1e-12);
        assert!((rc.t2 - 1.5).abs() < 1e-12);
        assert!((rc.rc_abs - 0.75).abs() < 1e-12, "{}", rc.rc_abs);
        assert!(!rc.t1_clamped && !rc.t2_clamped);
    }

    #[test]
    fn triangle_inverse_mode_has_no_lobe() {
        assert_eq!(
            refrigerant_capacity(&triangle(), RcMode::Inverse, None),
            Err(Error::NoExtremumOfRequestedSign)
        );
    }

    #[test]
    fn zero_curve_has_no_extremum() {
        let mut c = triangle();
        c.samples.iter_mut().for_each(|s| s.1 = 0.0);
        assert_eq!(
            refrigerant_capacity(&c, RcMode::Conventional, None),
            Err(Error::NoExtremumOfRequestedSign)
        );
    }

    #[test]
    fn too_few_samples() {
        let mut c = triangle();
        c.samples.truncate(5);
        assert!(matches!(
            refrigerant_capacity(&c, RcMode::Conventional, None),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn fixed_upper_limit() {
        // closed form: ∫_{0.5}^{1.8} (1 - |t - 1|) dt = 0.375 + 0.5 - 0.8²/2 + 0.5 = ...
        let rc = refrigerant_capacity(&triangle(), RcMode::Conventional, Some(1.8)).unwrap();
        let exact = 0.375 + (0.8 - 0.8 * 0.8 / 2.0);
        assert!((rc.rc_abs - exact).abs() < 1e-12, "{} vs {exact}", rc.rc_abs);
    }

    #[test]
    fn simpson_on_quadratic_with_irregular_grid() {
        let f = |x: f64| 3.0 * x * x - 2.0 * x + 0.5;
        let exact = |b: f64| b * b * b - b * b + 0.5 * b;
        // odd and even interval counts
        for xs in [&[0.0, 0.3, 0.7, 1.0, 1.6, 2.0][..], &[0.0, 0.3, 0.7, 1.0, 1.6][..]] {
            let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
            let b = *xs.last().unwrap();
            assert!((simpson_irregular(xs, &ys) - exact(b)).abs() < 1e-12);
        }
    }

    #[test]
    fn partial_cells_are_exact_for_quadratics() {
        let xs = linspace(0.0, 1.0, 11);
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x * x).collect();
        let v = integrate_samples(&xs, &ys, 0.137, 0.861);
        let exact = 0.861f64.powi(3) - 0.137f64.powi(3);
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn delta_s_trivia() {
        let p = ModelParams::default();
        assert_eq!(delta_s_magnetic(&p, 0.3, 0.7, 0.0).unwrap(), 0.0);
        assert_eq!(delta_s_electric(&p, 0.3, 0.7, 0.0).unwrap(), 0.0);
        assert!(delta_s_magnetic(&p, 0.0, 1e3, 1.0).unwrap().abs() < 1e-3);
        assert!(delta_s_magnetic(&p, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn entropy_inversion_round_trips() {
        let p = ModelParams::default();
        let f = Fields::new(0.4, 0.2);
        let t = temperature_for_entropy(&p, &f, 0.1).unwrap();
        assert!((entropy(&p, &f, t).unwrap() - 0.1).abs() < 1e-10);
        // residual entropy ln 2 at zero field sits above the target
        assert_eq!(temperature_for_entropy(&p, &Fields::default(), 0.1), None);
        assert!(isentrope_magnetic(&p, 0.0, 2.0, &[0.1]).is_err());
        assert!(isentrope_magnetic(&p, 0.0, 0.0, &[0.1]).is_err());
    }
}
