//! Ground-state classification and zero-temperature phase boundaries.
//!
//! Classification always compares level energies directly. The closed-form
//! boundary expressions are used for plotting and cross-checks only.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{analytic_spectrum, zeeman_terms, Fields, ModelParams, Spectrum};
use crate::scan::Range1D;
use crate::thermo::TOL_DEG;

/// Ground-state identity.
///
/// `|F−⟩` is never a ground state for `J > 0` and `b ≥ 0`: at `b = 0` the
/// `|QF±⟩` pair lies at least `J` below the ferromagnetic doublet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseLabel {
    FPlus,
    QfPlus,
    QfMinus,
    Degenerate(Vec<PhaseLabel>),
}

impl PhaseLabel {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, PhaseLabel::Degenerate(_))
    }

    /// True if `self` is `other` or a degenerate set containing it.
    pub fn contains(&self, other: &PhaseLabel) -> bool {
        match self {
            PhaseLabel::Degenerate(v) => v.contains(other),
            l => l == other,
        }
    }

    fn level_energy(&self, s: &Spectrum) -> f64 {
        match self {
            PhaseLabel::FPlus => s.e_f_plus(),
            PhaseLabel::QfPlus => s.e_qf_plus(),
            PhaseLabel::QfMinus => s.e_qf_minus(),
            PhaseLabel::Degenerate(v) => v
                .iter()
                .map(|l| l.level_energy(s))
                .fold(f64::INFINITY, f64::min),
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhaseLabel::FPlus => write!(f, "F+"),
            PhaseLabel::QfPlus => write!(f, "QF+"),
            PhaseLabel::QfMinus => write!(f, "QF-"),
            PhaseLabel::Degenerate(v) => {
                let parts: Vec<String> = v.iter().map(|l| l.to_string()).collect();
                write!(f, "{}", parts.join("|"))
            }
        }
    }
}

const CANDIDATES: [PhaseLabel; 3] = [
    PhaseLabel::FPlus,
    PhaseLabel::QfPlus,
    PhaseLabel::QfMinus,
];

/// Ground state and its energy by direct comparison of `ε_F±`, `ε_QF±`.
pub fn classify_ground_state(params: &ModelParams, f: &Fields) -> (PhaseLabel, f64) {
    let s = analytic_spectrum(params, f);
    let energies: Vec<f64> = CANDIDATES.iter().map(|l| l.level_energy(&s)).collect();
    let ground = energies.iter().copied().fold(f64::INFINITY, f64::min);
    let tol = TOL_DEG * params.j;
    let mut hits: Vec<PhaseLabel> = CANDIDATES
        .iter()
        .zip(&energies)
        .filter(|(_, &e)| e - ground <= tol)
        .map(|(l, _)| l.clone())
        .collect();
    let label = if hits.len() == 1 {
        hits.pop().unwrap()
    } else {
        PhaseLabel::Degenerate(hits)
    };
    (label, ground)
}

/// `|QF+⟩`–`|F+⟩` transition field.
pub fn boundary_qfp_fp(params: &ModelParams, e: f64) -> f64 {
    let ModelParams { j, d, g1, g2, .. } = *params;
    let u = (j + 2.0 * d) / g2;
    let v = 2.0 * j / g1;
    0.25 * ((u + v) + ((u - v).powi(2) + 8.0 * params.mixing_sq(e) / (g1 * g2)).sqrt())
}

/// `|QF−⟩`–`|QF+⟩` transition field.
///
/// `None` unless `g1 > 2 g2`, `J > 2D` and the root is a genuine crossing
/// rather than an artifact of squaring (`b ≤ (J − 2D)(g1 − g2) / 4g2²`).
pub fn boundary_qfm_qfp(params: &ModelParams, e: f64) -> Option<f64> {
    let ModelParams { j, d, g1, g2, .. } = *params;
    let x = j - 2.0 * d;
    let denom = g1 * (g1 - 2.0 * g2);
    if denom <= 0.0 || x <= 0.0 {
        return None;
    }
    let radicand = (x / g2).powi(2) - 8.0 * params.mixing_sq(e) / denom;
    if radicand < 0.0 {
        return None;
    }
    let b = 0.5 * radicand.sqrt();
    (b <= x * (g1 - g2) / (4.0 * g2 * g2)).then_some(b)
}

/// `|QF−⟩`–`|F+⟩` transition field.
pub fn boundary_qfm_fp(params: &ModelParams, e: f64) -> f64 {
    let ModelParams { j, d, g1, g2, .. } = *params;
    let u = (j + 2.0 * d) / (g1 + g2);
    let v = j / g2;
    0.25 * ((u + v) + ((u - v).powi(2) + 4.0 * params.mixing_sq(e) / (g2 * (g1 + g2))).sqrt())
}

/// Largest `g2/g1` for which `|QF−⟩` can become a ground state.
pub fn critical_g_ratio(params: &ModelParams, e: f64) -> Result<f64> {
    let x = params.j - 2.0 * params.d;
    if x.abs() < 1e-12 {
        return Err(Error::SingularAnisotropy);
    }
    Ok(1.0 / (1.0 + (1.0 + 8.0 * params.mixing_sq(e) / (x * x)).sqrt()))
}

/// `ε_QF− ≤ min(ε_F+, ε_QF+)`, by direct evaluation.
pub fn qfm_exists(params: &ModelParams, f: &Fields) -> bool {
    let s = analytic_spectrum(params, f);
    s.e_qf_minus() <= s.e_f_plus().min(s.e_qf_plus())
}

/// Closed-form test for `ε_QF− ≤ ε_F+` phrased as an upper bound on `D`.
///
/// Only meaningful while `2 h2 < J` and `2h1 + 6h2 − 3J − 2D > 0`; returns
/// `None` elsewhere.
pub fn qfm_below_fp_closed_form(params: &ModelParams, f: &Fields) -> Option<bool> {
    let (h1, h2) = zeeman_terms(params, f.b);
    let ModelParams { j, d, .. } = *params;
    let k = params.mixing_sq(f.e);
    let lever = 2.0 * h1 + 6.0 * h2 - 3.0 * j - 2.0 * d;
    if 2.0 * h2 >= j || lever <= 0.0 {
        return None;
    }
    Some(d <= 0.5 * (2.0 * (h1 + h2) - j - k / (2.0 * h2 - j)))
}

/// Closed-form test for `ε_QF− ≤ ε_QF+`; `None` unless `h1 > 2 h2 > 0`.
/// For `J ≤ 2D` the `|QF−⟩` level always lies above `|QF+⟩`.
pub fn qfm_below_qfp_closed_form(params: &ModelParams, f: &Fields) -> Option<bool> {
    let (h1, h2) = zeeman_terms(params, f.b);
    if !(h2 > 0.0 && h1 > 2.0 * h2) {
        return None;
    }
    let k = params.mixing_sq(f.e);
    let x = params.j - 2.0 * params.d;
    Some(x >= 2.0 * h2 * (1.0 + 2.0 * k / (h1 * (h1 - 2.0 * h2))).sqrt())
}

/// Which pair of phases a boundary separates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    QfpFp,
    QfmFp,
    QfmQfp,
}

impl BoundaryKind {
    fn from_pair(a: &PhaseLabel, b: &PhaseLabel) -> Option<Self> {
        use PhaseLabel::*;
        match (a, b) {
            (QfPlus, FPlus) | (FPlus, QfPlus) => Some(Self::QfpFp),
            (QfMinus, FPlus) | (FPlus, QfMinus) => Some(Self::QfmFp),
            (QfMinus, QfPlus) | (QfPlus, QfMinus) => Some(Self::QfmQfp),
            _ => None,
        }
    }

    /// Closed-form transition field at electric field `e`, where defined.
    pub fn closed_form(&self, params: &ModelParams, e: f64) -> Option<f64> {
        match self {
            Self::QfpFp => Some(boundary_qfp_fp(params, e)),
            Self::QfmFp => Some(boundary_qfm_fp(params, e)),
            Self::QfmQfp => boundary_qfm_qfp(params, e),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::QfpFp => "QF+/F+",
            Self::QfmFp => "QF-/F+",
            Self::QfmQfp => "QF-/QF+",
        }
    }
}

/// A traced zero-temperature transition line, samples `(e, b)` ordered by `e`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub kind: BoundaryKind,
    pub samples: Vec<(f64, f64)>,
}

/// Label grid over the `(e, b)` plane; row-major with `b` as the row index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub e_axis: Vec<f64>,
    pub b_axis: Vec<f64>,
    pub labels: Vec<PhaseLabel>,
    pub boundaries: Vec<BoundaryCurve>,
}

impl PhaseDiagram {
    pub fn label(&self, ie: usize, ib: usize) -> &PhaseLabel {
        &self.labels[ib * self.e_axis.len() + ie]
    }

    /// Distinct non-degenerate labels present in the grid.
    pub fn distinct_phases(&self) -> Vec<PhaseLabel> {
        let mut out: Vec<PhaseLabel> = Vec::new();
        for l in &self.labels {
            if !l.is_degenerate() && !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }
}

/// Pure label of a cell, or `None` on a degenerate cell.
fn side_label(l: &PhaseLabel) -> Option<&PhaseLabel> {
    match l {
        PhaseLabel::Degenerate(_) => None,
        other => Some(other),
    }
}

/// Locates the field where the ground state stops being `left` in `[lo, hi]`.
/// Returns the transition field and the phase on the high side.
///
/// The classifier bisection only reaches the edge of the degeneracy band, so
/// the result is polished by bisecting the energy gap of the two levels.
fn refine_transition(
    params: &ModelParams,
    e: f64,
    left: &PhaseLabel,
    lo: f64,
    hi: f64,
) -> (f64, PhaseLabel) {
    let is_left = |b: f64| {
        let (l, _) = classify_ground_state(params, &Fields::new(b, e));
        l == *left
    };
    let (mut a, mut z) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + z);
        if mid <= a || mid >= z {
            break;
        }
        if is_left(mid) {
            a = mid;
        } else {
            z = mid;
        }
    }
    let (right, _) = classify_ground_state(params, &Fields::new(z, e));
    let right = match right {
        PhaseLabel::Degenerate(v) => v
            .into_iter()
            .find(|l| l != left)
            .unwrap_or(PhaseLabel::FPlus),
        l => l,
    };
    let b = crossing_field(params, e, left, &right, lo, hi).unwrap_or(0.5 * (a + z));
    (b, right)
}

/// Ground-state phase diagram in the `(e, b)` plane with traced boundaries.
///
/// Boundaries are found by bisecting the classifier along `b` for every `e`
/// column; a sample is snapped onto the closed-form line when the two agree
/// to `1e-8 J`.
pub fn phase_diagram(params: &ModelParams, e_range: Range1D, b_range: Range1D) -> PhaseDiagram {
    let e_axis = e_range.samples();
    let b_axis = b_range.samples();
    let ne = e_axis.len();

    let labels: Vec<PhaseLabel> = b_axis
        .par_iter()
        .flat_map_iter(|&b| {
            e_axis
                .iter()
                .map(move |&e| classify_ground_state(params, &Fields::new(b, e)).0)
        })
        .collect();

    let mut curves: Vec<BoundaryCurve> = Vec::new();
    let per_column: Vec<Vec<(BoundaryKind, f64, f64)>> = (0..ne)
        .into_par_iter()
        .map(|ie| {
            let e = e_axis[ie];
            let mut found = Vec::new();
            let mut last: Option<(usize, &PhaseLabel)> = None;
            for ib in 0..b_axis.len() {
                let Some(cur) = side_label(&labels[ib * ne + ie]) else {
                    continue;
                };
                if let Some((jb, prev)) = last {
                    if prev != cur {
                        let (b_star, right) =
                            refine_transition(params, e, prev, b_axis[jb], b_axis[ib]);
                        if let Some(kind) = BoundaryKind::from_pair(prev, &right) {
                            let b_final = match kind.closed_form(params, e) {
                                Some(cf) if (cf - b_star).abs() < 1e-8 * params.j => cf,
                                _ => b_star,
                            };
                            found.push((kind, e, b_final));
                        }
                    }
                }
                last = Some((ib, cur));
            }
            found
        })
        .collect();

    for (kind, e, b) in per_column.into_iter().flatten() {
        match curves.iter_mut().find(|c| c.kind == kind) {
            Some(c) => c.samples.push((e, b)),
            None => curves.push(BoundaryCurve {
                kind,
                samples: vec![(e, b)],
            }),
        }
    }
    for c in &mut curves {
        c.samples
            .sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    }
    curves.sort_by_key(|c| c.kind as u8);

    PhaseDiagram {
        e_axis,
        b_axis,
        labels,
        boundaries: curves,
    }
}

/// Bisection on the energy difference of two named levels along `b`.
pub fn crossing_field(
    params: &ModelParams,
    e: f64,
    a: &PhaseLabel,
    b: &PhaseLabel,
    mut lo: f64,
    mut hi: f64,
) -> Option<f64> {
    let gap = |x: f64| {
        let s = analytic_spectrum(params, &Fields::new(x, e));
        a.level_energy(&s) - b.level_energy(&s)
    };
    let (mut g_lo, g_hi) = (gap(lo), gap(hi));
    if g_lo == 0.0 {
        return Some(lo);
    }
    if g_hi == 0.0 {
        return Some(hi);
    }
    if g_lo.signum() == g_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g = gap(mid);
        if g == 0.0 {
            return Some(mid);
        }
        if g.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn classify_isotropic() {
        let p = iso();
        assert_eq!(
            classify_ground_state(&p, &Fields::new(2.0, 0.0)).0,
            PhaseLabel::FPlus
        );
        assert_eq!(
            classify_ground_state(&p, &Fields::new(0.2, 0.0)).0,
            PhaseLabel::QfPlus
        );
        let (l, e) = classify_ground_state(&p, &Fields::new(0.75, 0.0));
        assert_eq!(
            l,
            PhaseLabel::Degenerate(vec![PhaseLabel::FPlus, PhaseLabel::QfPlus])
        );
        assert!((e + 1.75).abs() < 1e-14);
        assert_eq!(
            classify_ground_state(&p, &Fields::new(0.0, 0.0)).0,
            PhaseLabel::Degenerate(vec![PhaseLabel::QfPlus, PhaseLabel::QfMinus])
        );
    }

    #[test]
    fn f_doublet_never_wins_at_zero_field() {
        for d in [-10.0, -3.0, -0.5, 0.0, 2.0] {
            for delta in [0.0, 1.0] {
                let p = iso().with_d(d).with_delta(delta);
                let s = analytic_spectrum(&p, &Fields::default());
                assert!(s.e_f_plus() - s.ground_energy() >= p.j - 1e-12);
            }
        }
    }

    #[test]
    fn qfp_fp_values() {
        let p = iso();
        assert!((boundary_qfp_fp(&p, 0.0) - 0.75).abs() < 1e-15);
        assert!((boundary_qfp_fp(&p, 1.0) - 0.8903882032022076).abs() < 1e-12);
        let lo = boundary_qfp_fp(&p.with_d(-0.5), 0.7);
        let hi = boundary_qfp_fp(&p.with_d(0.5), 0.7);
        assert!(hi > lo);
    }

    #[test]
    fn qfm_qfp_values() {
        let p = iso().with_d(-1.0).with_g(2.0, 0.8);
        let b = boundary_qfm_qfp(&p, 0.0).unwrap();
        assert!((b - 1.0077822185373).abs() < 1e-9);
        assert_eq!(boundary_qfm_qfp(&iso().with_g(2.0, 1.0), 0.0), None);
        assert_eq!(boundary_qfm_qfp(&p, 10.0), None);
    }

    #[test]
    fn critical_ratio() {
        assert!((critical_g_ratio(&iso(), 0.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(critical_g_ratio(&iso(), 1e9).unwrap() < 1e-8);
        assert_eq!(
            critical_g_ratio(&iso().with_d(0.5), 0.0),
            Err(Error::SingularAnisotropy)
        );
        let near = critical_g_ratio(&iso().with_d(0.5 - 1e-7), 0.0).unwrap();
        assert!(near < 1e-6);
    }

    #[test]
    fn qfm_existence() {
        let p = iso().with_d(-1.0).with_g(2.0, 0.8);
        assert!(qfm_exists(&p, &Fields::new(0.5, 0.0)));
        let bc = boundary_qfm_fp(&p, 0.0);
        assert!(!qfm_exists(&p, &Fields::new(bc + 1e-3, 0.0)));
        for b in [0.01, 0.3, 1.0, 2.5] {
            assert!(!qfm_exists(&iso(), &Fields::new(b, 0.4)));
        }
    }

    #[test]
    fn label_display() {
        let l = PhaseLabel::Degenerate(vec![PhaseLabel::QfMinus, PhaseLabel::FPlus]);
        assert_eq!(l.to_string(), "QF-|F+");
    }
}
