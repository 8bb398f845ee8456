//! Independent numerical route to the spectrum and thermodynamics.
//!
//! Nothing here touches the closed-form spectrum: eigenvalues come from a
//! cyclic complex Jacobi eigensolver applied to [`hamiltonian_matrix`], and
//! derivatives of the free energy come from Richardson-extrapolated central
//! differences.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{hamiltonian_matrix, Fields, HermitianMatrix6, ModelParams};

const HERMITIAN_TOL: f64 = 1e-12;
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 64;
/// Smallest finite-difference step accepted by [`fd_derivative`].
pub const MIN_STEP: f64 = 1e-9;
/// Default finite-difference step, in units of `J`.
pub const DEFAULT_STEP: f64 = 1e-4;

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericSpectrum {
    pub eigenvalues: [f64; 6],
}

impl NumericSpectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Number of levels within `tol` of the ground level.
    pub fn ground_degeneracy(&self, tol: f64) -> usize {
        let e0 = self.eigenvalues[0];
        self.eigenvalues.iter().filter(|&&e| e - e0 <= tol).count()
    }
}

/// Eigenvalues plus the unitary whose columns are the eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigensystem {
    pub eigenvalues: [f64; 6],
    pub vectors: HermitianMatrix6,
}

impl Eigensystem {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> HermitianMatrix6 {
        let v = &self.vectors.0;
        let mut out = HermitianMatrix6::zeros();
        for i in 0..6 {
            for j in 0..6 {
                out.0[i][j] = (0..6)
                    .map(|k| v[i][k] * self.eigenvalues[k] * v[j][k].conj())
                    .sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(h: &[[Complex64; 6]; 6]) -> f64 {
    let mut acc = 0.0;
    for (i, row) in h.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            if i != j {
                acc += z.norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi diagonalization of a complex Hermitian 6×6 matrix.
///
/// Each pivot `(p, q)` is first rotated to a real entry by a diagonal phase
/// and then annihilated by an ordinary real Jacobi rotation.
pub fn eigensystem(m: &HermitianMatrix6) -> Result<Eigensystem> {
    let defect = m.hermiticity_defect();
    let scale = m.frobenius_norm();
    if defect > HERMITIAN_TOL * scale.max(1.0) {
        return Err(Error::NonHermitianInput(defect));
    }

    let mut h = m.0;
    for (i, row) in h.iter_mut().enumerate() {
        row[i] = Complex64::new(row[i].re, 0.0);
    }
    let mut v = HermitianMatrix6::from_real_diagonal([1.0; 6]).0;
    let threshold = OFF_DIAGONAL_TOL * scale;

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&h) <= threshold {
            converged = true;
            break;
        }
        for p in 0..5 {
            for q in (p + 1)..6 {
                let z = h[p][q];
                let r = z.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = z / r;
                let a = h[p][p].re;
                let b = h[q][q].re;
                let tau = (b - a) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // U restricted to (p, q): [[c, s], [-s e^{-iθ}, c e^{-iθ}]]
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -phase.conj() * s;
                let u_qq = phase.conj() * c;

                for row in h.iter_mut() {
                    let (hp, hq) = (row[p], row[q]);
                    row[p] = hp * u_pp + hq * u_qp;
                    row[q] = hp * u_pq + hq * u_qq;
                }
                for k in 0..6 {
                    let (hp, hq) = (h[p][k], h[q][k]);
                    h[p][k] = u_pp.conj() * hp + u_qp.conj() * hq;
                    h[q][k] = u_pq.conj() * hp + u_qq.conj() * hq;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = vp * u_pp + vq * u_qp;
                    row[q] = vp * u_pq + vq * u_qq;
                }
                h[p][q] = Complex64::new(0.0, 0.0);
                h[q][p] = Complex64::new(0.0, 0.0);
                h[p][p] = Complex64::new(h[p][p].re, 0.0);
                h[q][q] = Complex64::new(h[q][q].re, 0.0);
            }
        }
    }
    if !converged && off_diagonal_norm(&h) > threshold {
        return Err(Error::NotConverged(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..6).collect();
    order.sort_by(|&a, &b| h[a][a].re.total_cmp(&h[b][b].re));
    let mut eigenvalues = [0.0; 6];
    let mut vectors = HermitianMatrix6::zeros();
    for (dst, &src) in order.iter().enumerate() {
        eigenvalues[dst] = h[src][src].re;
        for row in 0..6 {
            vectors.0[row][dst] = v[row][src];
        }
    }
    Ok(Eigensystem {
        eigenvalues,
        vectors,
    })
}

pub fn numeric_spectrum(m: &HermitianMatrix6) -> Result<NumericSpectrum> {
    eigensystem(m).map(|es| NumericSpectrum {
        eigenvalues: es.eigenvalues,
    })
}

fn numeric_spectrum_at(params: &ModelParams, f: &Fields) -> Result<NumericSpectrum> {
    numeric_spectrum(&hamiltonian_matrix(params, f))
}

/// `(ε_min, ln Σ exp(−(ε_i − ε_min)/t))` from the numeric eigenvalues.
pub fn numeric_log_partition(params: &ModelParams, f: &Fields, t: f64) -> Result<(f64, f64)> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature(t));
    }
    let spec = numeric_spectrum_at(params, f)?;
    let e0 = spec.ground_energy();
    let sum: f64 = spec
        .eigenvalues
        .iter()
        .map(|e| (-(e - e0) / t).exp())
        .sum();
    Ok((e0, sum.ln()))
}

pub fn numeric_free_energy(params: &ModelParams, f: &Fields, t: f64) -> Result<f64> {
    let (e0, ln_sum) = numeric_log_partition(params, f, t)?;
    Ok(e0 - t * ln_sum)
}

/// Variable a finite-difference derivative is taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FdAxis {
    B,
    E,
    T,
}

/// Richardson-extrapolated central difference of `−F` with respect to `which`.
///
/// Returns `m/m_s` for [`FdAxis::B`] (raw moment divided by `g1/2 + g2`),
/// `P/μ` for [`FdAxis::E`] and `S/k_B` for [`FdAxis::T`]. The free energy is
/// even in `b` and in `e`, so stencils reaching below zero are mirrored.
pub fn fd_derivative(
    params: &ModelParams,
    f: &Fields,
    t: f64,
    which: FdAxis,
    step: f64,
) -> Result<f64> {
    if !(step >= MIN_STEP) {
        return Err(Error::StepUnderflow(step));
    }
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature(t));
    }
    if which == FdAxis::T && t - step <= 0.0 {
        return Err(Error::NonPositiveTemperature(t - step));
    }

    let free = |x: f64| -> Result<f64> {
        match which {
            FdAxis::B => numeric_free_energy(params, &Fields::new(x.abs(), f.e), t),
            FdAxis::E => numeric_free_energy(params, &Fields::new(f.b, x.abs()), t),
            FdAxis::T => numeric_free_energy(params, f, x),
        }
    };
    let x0 = match which {
        FdAxis::B => f.b,
        FdAxis::E => f.e,
        FdAxis::T => t,
    };
    let central = |h: f64| -> Result<f64> { Ok(-(free(x0 + h)? - free(x0 - h)?) / (2.0 * h)) };
    let coarse = central(step)?;
    let fine = central(0.5 * step)?;
    let d = (4.0 * fine - coarse) / 3.0;

    Ok(match which {
        FdAxis::B => d / params.saturation_moment(),
        FdAxis::E | FdAxis::T => d,
    })
}
