//! Seeded cross-checks of the closed forms against the numerical oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{analytic_spectrum, hamiltonian_matrix, Fields, ModelParams};
use crate::oracle::{eigensystem, fd_derivative, numeric_free_energy, numeric_log_partition, FdAxis, DEFAULT_STEP};
use crate::phases::{boundary_qfm_fp, boundary_qfm_qfp, boundary_qfp_fp};
use crate::thermo::{magnetization, polarization, thermo_point};

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const DEFAULT_SAMPLES: usize = 1000;
/// Points used by the (slower) thermodynamic checks, each at five temperatures.
pub const DEFAULT_THERMO_SAMPLES: usize = 200;
pub const THERMO_TEMPERATURES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationConfig {
    pub seed: u64,
    pub samples: usize,
    pub thermo_samples: usize,
    /// Replaces every per-check tolerance when set.
    pub tolerance: Option<f64>,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            thermo_samples: DEFAULT_THERMO_SAMPLES,
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// One random point of the parameter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub params: ModelParams,
    pub fields: Fields,
}

/// `J = 1`, `Δ ∈ [0, 2]`, `D ∈ [−2, 2]`, `g1, g2 ∈ [0.5, 4]`, `b, e ∈ [0, 4]`.
pub fn random_points(seed: u64, n: usize) -> Vec<SamplePoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let params = ModelParams {
                j: 1.0,
                delta: rng.gen_range(0.0..=2.0),
                d: rng.gen_range(-2.0..=2.0),
                g1: rng.gen_range(0.5..=4.0),
                g2: rng.gen_range(0.5..=4.0),
                mu: 1.0,
            };
            let fields = Fields::new(rng.gen_range(0.0..=4.0), rng.gen_range(0.0..=4.0));
            SamplePoint { params, fields }
        })
        .collect()
}

/// Temperatures drawn log-uniformly from `[0.05, 5]·J`.
pub fn random_temperatures(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9E37_79B9_7F4A_7C15);
    let (lo, hi) = (0.05f64.ln(), 5f64.ln());
    (0..n).map(|_| rng.gen_range(lo..=hi).exp()).collect()
}

fn max_of<I: IntoIterator<Item = Result<f64>>>(it: I) -> (f64, bool) {
    let mut worst = 0.0f64;
    let mut ok = true;
    for r in it {
        match r {
            Ok(v) if v.is_finite() => worst = worst.max(v),
            _ => ok = false,
        }
    }
    (worst, ok)
}

struct Collector {
    override_tol: Option<f64>,
    checks: Vec<CheckResult>,
}

impl Collector {
    fn push(&mut self, name: &str, samples: usize, tol: f64, deviations: Vec<Result<f64>>) {
        let tolerance = self.override_tol.unwrap_or(tol);
        let (max_deviation, ok) = max_of(deviations);
        let max_deviation = if ok { max_deviation } else { f64::INFINITY };
        self.checks.push(CheckResult {
            name: name.to_string(),
            samples,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
        });
    }
}

pub fn run_validation(config: &ValidationConfig) -> ValidationReport {
    let points = random_points(config.seed, config.samples);
    let n_thermo = config.thermo_samples.min(points.len());
    let thermo_pts = &points[..n_thermo];
    let temps = random_temperatures(config.seed, n_thermo * THERMO_TEMPERATURES);
    let thermo_jobs: Vec<(SamplePoint, f64)> = thermo_pts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            temps[i * THERMO_TEMPERATURES..(i + 1) * THERMO_TEMPERATURES]
                .iter()
                .map(move |&t| (*p, t))
        })
        .collect();

    let mut c = Collector {
        override_tol: config.tolerance,
        checks: Vec::new(),
    };
    let n = points.len();

    c.push(
        "spectrum vs eigensolver",
        n,
        1e-10,
        points
            .par_iter()
            .map(|p| {
                let m = hamiltonian_matrix(&p.params, &p.fields);
                let num = eigensystem(&m)?.eigenvalues;
                let ana = analytic_spectrum(&p.params, &p.fields).sorted();
                Ok(ana.iter().zip(num.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            })
            .collect(),
    );
    c.push(
        "eigenvalue sum = 4D",
        n,
        1e-12,
        points
            .iter()
            .map(|p| {
                let s = analytic_spectrum(&p.params, &p.fields);
                Ok((s.eps.iter().sum::<f64>() - 4.0 * p.params.d).abs())
            })
            .collect(),
    );
    c.push(
        "coefficient normalization",
        n,
        1e-12,
        points
            .iter()
            .map(|p| {
                let s = analytic_spectrum(&p.params, &p.fields);
                let d1 = (s.c1_plus.powi(2) + s.c1_minus.powi(2) - 1.0).abs();
                let d2 = (s.c2_plus.powi(2) + s.c2_minus.powi(2) - 1.0).abs();
                Ok(d1.max(d2))
            })
            .collect(),
    );
    c.push(
        "eigenvector reconstruction",
        n,
        1e-11,
        points
            .par_iter()
            .map(|p| {
                let m = hamiltonian_matrix(&p.params, &p.fields);
                let r = eigensystem(&m)?.reconstruct();
                let mut worst = 0.0f64;
                for i in 0..6 {
                    for k in 0..6 {
                        worst = worst.max((r.get(i, k) - m.get(i, k)).norm());
                    }
                }
                Ok(worst / m.frobenius_norm().max(f64::MIN_POSITIVE))
            })
            .collect(),
    );
    c.push(
        "transition fields are level crossings",
        n,
        1e-9,
        points
            .iter()
            .map(|p| {
                let e = p.fields.e;
                let gap = |b: f64, pick: fn(&crate::model::Spectrum) -> (f64, f64)| {
                    let (x, y) = pick(&analytic_spectrum(&p.params, &Fields::new(b, e)));
                    (x - y).abs()
                };
                let mut worst = gap(boundary_qfp_fp(&p.params, e), |s| (s.e_qf_plus(), s.e_f_plus()));
                worst = worst.max(gap(boundary_qfm_fp(&p.params, e), |s| (s.e_qf_minus(), s.e_f_plus())));
                if let Some(b) = boundary_qfm_qfp(&p.params, e) {
                    worst = worst.max(gap(b, |s| (s.e_qf_minus(), s.e_qf_plus())));
                }
                Ok(worst)
            })
            .collect(),
    );
    c.push(
        "zero-field magnetization and polarization",
        n,
        1e-12,
        points
            .iter()
            .map(|p| {
                let t = 0.05 + p.fields.b;
                let m0 = magnetization(&p.params, &Fields::new(0.0, p.fields.e), t)?;
                let p0 = polarization(&p.params, &Fields::new(p.fields.b, 0.0), t)?;
                Ok(m0.abs().max(p0.abs()))
            })
            .collect(),
    );
    c.push(
        "saturation m/m_s -> 1",
        n,
        1e-9,
        points
            .iter()
            .map(|p| {
                let b = 200.0 * (1.0 + p.params.d.abs()) / p.params.g1.min(p.params.g2);
                Ok((magnetization(&p.params, &Fields::new(b, p.fields.e), 1.0)? - 1.0).abs())
            })
            .collect(),
    );

    let nt = thermo_jobs.len();
    c.push(
        "ln Z vs eigenvalue sum",
        nt,
        1e-10,
        thermo_jobs
            .par_iter()
            .map(|&(p, t)| {
                let tp = thermo_point(&p.params, &p.fields, t)?;
                let (e0, ln_sum) = numeric_log_partition(&p.params, &p.fields, t)?;
                let exact = ln_sum - e0 / t;
                Ok((tp.ln_z(t) - exact).abs() / exact.abs().max(1.0))
            })
            .collect(),
    );
    c.push(
        "free energy vs eigenvalue sum",
        nt,
        1e-10,
        thermo_jobs
            .par_iter()
            .map(|&(p, t)| {
                let f = thermo_point(&p.params, &p.fields, t)?.f;
                let exact = numeric_free_energy(&p.params, &p.fields, t)?;
                Ok((f - exact).abs() / exact.abs().max(1.0))
            })
            .collect(),
    );
    for (name, axis) in [
        ("m/m_s vs finite difference", FdAxis::B),
        ("P vs finite difference", FdAxis::E),
        ("S vs finite difference", FdAxis::T),
    ] {
        c.push(
            name,
            nt,
            1e-6,
            thermo_jobs
                .par_iter()
                .map(|&(p, t)| {
                    let tp = thermo_point(&p.params, &p.fields, t)?;
                    let fd = fd_derivative(&p.params, &p.fields, t, axis, DEFAULT_STEP)?;
                    let closed = match axis {
                        FdAxis::B => tp.m_over_ms,
                        FdAxis::E => tp.p / p.params.mu,
                        FdAxis::T => tp.s,
                    };
                    Ok((closed - fd).abs())
                })
                .collect(),
        );
    }

    let passed = c.checks.iter().all(|r| r.passed);
    ValidationReport {
        seed: config.seed,
        checks: c.checks,
        passed,
    }
}
