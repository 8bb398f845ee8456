//! Model parameters, the 6×6 Hamiltonian and its closed-form spectrum.
//!
//! The dimer couples a spin-1/2 (`S`) and a spin-1 (`μ`) ion along the x-axis.
//! The magnetic field points along z and the electric field along y, so the
//! electric field enters as the effective antisymmetric term
//! `E (S^x μ^y − S^y μ^x)`. Units: `k_B = μ_B = 1`.
//!
//! Basis order is `|S^z, μ^z⟩ ∈ {|½,1⟩, |½,0⟩, |½,−1⟩, |−½,1⟩, |−½,0⟩, |−½,−1⟩}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coupling constants of the dimer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Exchange coupling `J` (energy unit).
    pub j: f64,
    /// XXZ exchange anisotropy `Δ`.
    pub delta: f64,
    /// Uniaxial single-ion anisotropy `D` of the spin-1 ion.
    pub d: f64,
    /// Landé factor of the spin-1/2 ion.
    pub g1: f64,
    /// Landé factor of the spin-1 ion.
    pub g2: f64,
    /// Polarization scale constant.
    pub mu: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            delta: 1.0,
            d: 0.0,
            g1: 2.0,
            g2: 2.0,
            mu: 1.0,
        }
    }
}

impl ModelParams {
    pub fn new(j: f64, delta: f64, d: f64, g1: f64, g2: f64) -> Result<Self> {
        let p = Self {
            j,
            delta,
            d,
            g1,
            g2,
            mu: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_d(mut self, d: f64) -> Self {
        self.d = d;
        self
    }

    pub fn with_g(mut self, g1: f64, g2: f64) -> Self {
        self.g1 = g1;
        self.g2 = g2;
        self
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.j, self.delta, self.d, self.g1, self.g2, self.mu];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParams("all parameters must be finite".into()));
        }
        if self.j <= 0.0 {
            return Err(Error::InvalidParams(format!("J must be > 0, got {}", self.j)));
        }
        if self.g1 <= 0.0 || self.g2 <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "Landé factors must be > 0, got g1={} g2={}",
                self.g1, self.g2
            )));
        }
        if self.mu <= 0.0 {
            return Err(Error::InvalidParams(format!("mu must be > 0, got {}", self.mu)));
        }
        Ok(())
    }

    /// `(JΔ)² + E²`, the squared transverse mixing strength.
    pub fn mixing_sq(&self, e: f64) -> f64 {
        let jd = self.j * self.delta;
        jd * jd + e * e
    }

    /// Saturation moment `g1/2 + g2` in units of `μ_B`.
    pub fn saturation_moment(&self) -> f64 {
        0.5 * self.g1 + self.g2
    }
}

/// External field energies: `b = μ_B B` along z and `e = E` along y.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Fields {
    pub b: f64,
    pub e: f64,
}

impl Fields {
    pub fn new(b: f64, e: f64) -> Self {
        Self { b, e }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.b.is_finite() && self.e.is_finite()) {
            return Err(Error::InvalidFields("fields must be finite".into()));
        }
        if self.b < 0.0 || self.e < 0.0 {
            return Err(Error::InvalidFields(format!(
                "only b >= 0 and e >= 0 are modeled, got b={} e={}",
                self.b, self.e
            )));
        }
        Ok(())
    }
}

/// Zeeman energies `(h1, h2) = (g1 b, g2 b)`.
pub fn zeeman_terms(params: &ModelParams, b: f64) -> (f64, f64) {
    (params.g1 * b, params.g2 * b)
}

/// Dense 6×6 complex matrix in the fixed product basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix6(pub [[Complex64; 6]; 6]);

impl HermitianMatrix6 {
    pub fn zeros() -> Self {
        Self([[Complex64::new(0.0, 0.0); 6]; 6])
    }

    pub fn from_real_diagonal(diag: [f64; 6]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.iter().enumerate() {
            m.0[i][i] = Complex64::new(*d, 0.0);
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..6).map(|i| self.0[i][i]).sum()
    }

    /// Largest `|m_ij − conj(m_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..6 {
            for j in i..6 {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Builds the Hamiltonian matrix. Only `H24`, `H35` and their conjugates are
/// off-diagonal; `H24 = H35 = (JΔ + iE)/√2`.
pub fn hamiltonian_matrix(params: &ModelParams, f: &Fields) -> HermitianMatrix6 {
    let (h1, h2) = zeeman_terms(params, f.b);
    let j = params.j;
    let d = params.d;
    let diag = [
        0.5 * (j + 2.0 * d - (h1 + 2.0 * h2)),
        -0.5 * h1,
        -0.5 * (j - 2.0 * d + (h1 - 2.0 * h2)),
        -0.5 * (j - 2.0 * d - (h1 - 2.0 * h2)),
        0.5 * h1,
        0.5 * (j + 2.0 * d + (h1 + 2.0 * h2)),
    ];
    let mut m = HermitianMatrix6::from_real_diagonal(diag);
    let off = Complex64::from_polar(
        params.mixing_sq(f.e).sqrt() / std::f64::consts::SQRT_2,
        mixing_phase(params, f.e),
    );
    m.0[1][3] = off;
    m.0[2][4] = off;
    m.0[3][1] = off.conj();
    m.0[4][2] = off.conj();
    m
}

/// Complex phase `φ = arctan(E / JΔ)`; `atan2` keeps `Δ = 0` well defined.
pub fn mixing_phase(params: &ModelParams, e: f64) -> f64 {
    e.atan2(params.j * params.delta)
}

/// Closed-form eigen-spectrum.
///
/// `eps[0]`, `eps[1]` belong to `|±½, ±1⟩`; `eps[2] ≤ eps[3]` form the
/// `|½,0⟩`/`|−½,1⟩` block and `eps[4] ≤ eps[5]` the `|½,−1⟩`/`|−½,0⟩` block.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub eps: [f64; 6],
    pub c1_plus: f64,
    pub c1_minus: f64,
    pub c2_plus: f64,
    pub c2_minus: f64,
    pub phi: f64,
}

impl Spectrum {
    /// Energy of `|F+⟩ = |½, 1⟩`.
    pub fn e_f_plus(&self) -> f64 {
        self.eps[0]
    }

    /// Energy of `|F−⟩ = |−½, −1⟩`.
    pub fn e_f_minus(&self) -> f64 {
        self.eps[1]
    }

    /// Energy of the lower `S^z_tot = +½` entangled level `|QF+⟩`.
    pub fn e_qf_plus(&self) -> f64 {
        self.eps[2]
    }

    /// Energy of the lower `S^z_tot = −½` entangled level `|QF−⟩`.
    pub fn e_qf_minus(&self) -> f64 {
        self.eps[4]
    }

    pub fn ground_energy(&self) -> f64 {
        self.eps.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sorted(&self) -> [f64; 6] {
        let mut s = self.eps;
        s.sort_by(|a, b| a.total_cmp(b));
        s
    }
}

/// Shorthand for the two entangled 2×2 blocks: `A± = J − 2D ∓ 2(h1 − h2)`
/// and `R± = √(A±² + 8[(JΔ)² + E²])`. The `+` block hosts `|QF+⟩`.
pub(crate) fn block_terms(params: &ModelParams, f: &Fields) -> ((f64, f64), (f64, f64)) {
    let (h1, h2) = zeeman_terms(params, f.b);
    let x = params.j - 2.0 * params.d;
    let k8 = 8.0 * params.mixing_sq(f.e);
    let a_plus = x - 2.0 * (h1 - h2);
    let a_minus = x + 2.0 * (h1 - h2);
    (
        (a_plus, (a_plus * a_plus + k8).sqrt()),
        (a_minus, (a_minus * a_minus + k8).sqrt()),
    )
}

/// `A/R`, taken as 0 when the block is exactly degenerate (`R = 0`).
pub(crate) fn ratio(a: f64, r: f64) -> f64 {
    if r > 0.0 {
        a / r
    } else {
        0.0
    }
}

pub fn analytic_spectrum(params: &ModelParams, f: &Fields) -> Spectrum {
    let (h1, h2) = zeeman_terms(params, f.b);
    let j = params.j;
    let d = params.d;
    let ((a1, r1), (a2, r2)) = block_terms(params, f);

    let eps = [
        0.5 * (j + 2.0 * d - (h1 + 2.0 * h2)),
        0.5 * (j + 2.0 * d + (h1 + 2.0 * h2)),
        -0.25 * (j - 2.0 * d + 2.0 * h2) - 0.25 * r1,
        -0.25 * (j - 2.0 * d + 2.0 * h2) + 0.25 * r1,
        -0.25 * (j - 2.0 * d - 2.0 * h2) - 0.25 * r2,
        -0.25 * (j - 2.0 * d - 2.0 * h2) + 0.25 * r2,
    ];
    let q1 = ratio(a1, r1);
    let q2 = ratio(a2, r2);
    let modulus = |q: f64| (0.5 * (1.0 + q)).max(0.0).sqrt();
    Spectrum {
        eps,
        c1_plus: modulus(q1),
        c1_minus: modulus(-q1),
        c2_plus: modulus(q2),
        c2_minus: modulus(-q2),
        phi: mixing_phase(params, f.e),
    }
}
