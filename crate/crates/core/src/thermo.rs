//! Closed-form thermodynamics.
//!
//! The six levels group into three doublets `c ∓ w`: the `|±½, ±1⟩` pair and
//! the two entangled 2×2 blocks. The partition function is
//! `Z = Σ 2 e^{−βc} cosh(βw)`, and magnetization, polarization and entropy
//! follow from the derivatives of `c` and `w`. Every sum is evaluated with the
//! ground energy factored out so nothing overflows at low temperature.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{block_terms, ratio, zeeman_terms, Fields, ModelParams};

/// Below this temperature (in units of `J`) the functions return their exact
/// ground-state limits.
pub const T_FLOOR: f64 = 1e-6;
/// Levels closer than this (in units of `J`) count as degenerate.
pub const TOL_DEG: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
struct Doublet {
    center: f64,
    half_gap: f64,
    d_center_db: f64,
    d_half_gap_db: f64,
    d_half_gap_de: f64,
}

impl Doublet {
    fn lower(&self) -> f64 {
        self.center - self.half_gap
    }
    fn upper(&self) -> f64 {
        self.center + self.half_gap
    }
}

fn doublets(params: &ModelParams, f: &Fields) -> [Doublet; 3] {
    let (h1, h2) = zeeman_terms(params, f.b);
    let (g1, g2) = (params.g1, params.g2);
    let x = params.j - 2.0 * params.d;
    let ((a_p, r_p), (a_m, r_m)) = block_terms(params, f);
    let de = |r: f64| if r > 0.0 { 2.0 * f.e / r } else { 0.0 };
    [
        Doublet {
            center: 0.5 * (params.j + 2.0 * params.d),
            half_gap: 0.5 * (h1 + 2.0 * h2),
            d_center_db: 0.0,
            d_half_gap_db: 0.5 * (g1 + 2.0 * g2),
            d_half_gap_de: 0.0,
        },
        Doublet {
            center: -0.25 * (x + 2.0 * h2),
            half_gap: 0.25 * r_p,
            d_center_db: -0.5 * g2,
            d_half_gap_db: -0.5 * (g1 - g2) * ratio(a_p, r_p),
            d_half_gap_de: de(r_p),
        },
        Doublet {
            center: -0.25 * (x - 2.0 * h2),
            half_gap: 0.25 * r_m,
            d_center_db: 0.5 * g2,
            d_half_gap_db: 0.5 * (g1 - g2) * ratio(a_m, r_m),
            d_half_gap_de: de(r_m),
        },
    ]
}

/// Thermodynamic state at one `(b, e, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    /// Partition function with `exp(−ε_min/t)` divided out.
    pub z: f64,
    /// Ground energy `ε_min` used as the shift.
    pub ground: f64,
    pub f: f64,
    pub s: f64,
    pub m_over_ms: f64,
    pub p: f64,
}

impl ThermoPoint {
    /// `ln Z` of the unshifted partition function.
    pub fn ln_z(&self, t: f64) -> f64 {
        self.z.ln() - self.ground / t
    }
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature(t))
    }
}

/// Ground-state limit: degenerate ground levels weighted equally.
fn ground_state_point(params: &ModelParams, ds: &[Doublet; 3]) -> ThermoPoint {
    let ground = ds
        .iter()
        .map(Doublet::lower)
        .fold(f64::INFINITY, f64::min);
    let tol = TOL_DEG * params.j;
    let mut n = 0usize;
    let mut moment = 0.0;
    let mut pol = 0.0;
    for d in ds {
        if d.lower() - ground <= tol {
            n += 1;
            moment += -(d.d_center_db - d.d_half_gap_db);
            pol += d.d_half_gap_de;
        }
        if d.upper() - ground <= tol {
            n += 1;
            moment += -(d.d_center_db + d.d_half_gap_db);
            pol += -d.d_half_gap_de;
        }
    }
    let n_f = n as f64;
    ThermoPoint {
        z: n_f,
        ground,
        f: ground,
        s: n_f.ln(),
        m_over_ms: moment / n_f / params.saturation_moment(),
        p: params.mu * pol / n_f,
    }
}

/// All thermodynamic quantities at once.
pub fn thermo_point(params: &ModelParams, f: &Fields, t: f64) -> Result<ThermoPoint> {
    check_t(t)?;
    let ds = doublets(params, f);
    if t <= T_FLOOR * params.j {
        return Ok(ground_state_point(params, &ds));
    }
    let beta = 1.0 / t;
    let ground = ds
        .iter()
        .map(Doublet::lower)
        .fold(f64::INFINITY, f64::min);

    let mut z = 0.0;
    let mut moment = 0.0;
    let mut pol = 0.0;
    let mut excess = 0.0;
    for d in &ds {
        // 2e^{-βc}cosh(βw) = A(1+q), 2e^{-βc}sinh(βw) = A(1-q), shifted by ε_min
        let lo = d.lower() - ground;
        let hi = d.upper() - ground;
        let a = (-beta * lo).exp();
        let q = (-2.0 * beta * d.half_gap).exp();
        let cosh2 = a * (1.0 + q);
        let sinh2 = a * (1.0 - q);
        z += cosh2;
        moment += -d.d_center_db * cosh2 + d.d_half_gap_db * sinh2;
        pol += d.d_half_gap_de * sinh2;
        excess += a * (lo + q * hi);
    }
    let s = z.ln() + beta * excess / z;
    Ok(ThermoPoint {
        z,
        ground,
        f: ground - t * z.ln(),
        s,
        m_over_ms: moment / z / params.saturation_moment(),
        p: params.mu * pol / z,
    })
}

/// Partition function `Z`. Overflows to infinity when `ε_min/t` is large and
/// negative; [`log_partition_function`] is the safe form.
pub fn partition_function(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    log_partition_function(params, f, t).map(f64::exp)
}

pub fn log_partition_function(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    thermo_point(params, f, t).map(|tp| tp.ln_z(t))
}

pub fn free_energy(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    thermo_point(params, f, t).map(|tp| tp.f)
}

/// `m/m_s = −(∂F/∂b)/(g1/2 + g2)`.
pub fn magnetization(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    thermo_point(params, f, t).map(|tp| tp.m_over_ms)
}

/// `P = −μ ∂F/∂E`.
pub fn polarization(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    thermo_point(params, f, t).map(|tp| tp.p)
}

/// `S/k_B = −∂F/∂T`.
pub fn entropy(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    thermo_point(params, f, t).map(|tp| tp.s)
}

/// Which quantum ferrimagnetic level: `|QF+⟩` or `|QF−⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

fn branch_block(params: &ModelParams, f: &Fields, branch: Branch) -> (f64, f64) {
    let ((a_p, r_p), (a_m, r_m)) = block_terms(params, f);
    match branch {
        Branch::Plus => (a_p, r_p),
        Branch::Minus => (a_m, r_m),
    }
}

/// Zero-temperature `m/m_s` of `|QF±⟩`:
/// `[±g2 ∓ (g1 − g2) A±/R±] / (g1 + 2 g2)`.
pub fn gs_magnetization_qf(params: &ModelParams, f: &Fields, branch: Branch) -> f64 {
    let (a, r) = branch_block(params, f, branch);
    let sg = branch.sign();
    (sg * params.g2 - sg * (params.g1 - params.g2) * ratio(a, r)) / (params.g1 + 2.0 * params.g2)
}

/// Zero-temperature polarization of `|QF±⟩`: `2E / R±` (times `μ`).
pub fn gs_polarization_qf(params: &ModelParams, f: &Fields, branch: Branch) -> f64 {
    let (_, r) = branch_block(params, f, branch);
    if r > 0.0 {
        params.mu * 2.0 * f.e / r
    } else {
        0.0
    }
}
