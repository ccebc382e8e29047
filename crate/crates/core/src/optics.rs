//! Gordon optical metric and the equivalent anisotropic medium.
//!
//! A homogeneous isotropic medium `(ε, μ)` moving with 4-velocity `u` in a
//! spacetime `g` responds to light as if it lived in flat space filled with
//! an inhomogeneous bianisotropic medium. That medium is described by the
//! symmetric matrix `ξ^{ab}` (permittivity `λξ`, permeability `ξ/λ`) and a
//! gyration vector `G`, both read off the optical metric.

use nalgebra::{Matrix3, Matrix4, Vector4};

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::geometry::{Event, FourVelocity, MetricComponents, Vec3};

/// Relative permittivity and permeability of a homogeneous isotropic medium.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MediumParams {
    eps: f64,
    mu: f64,
}

impl MediumParams {
    pub fn new(eps: f64, mu: f64) -> Result<Self> {
        if eps.is_finite() && mu.is_finite() && eps > 0.0 && mu > 0.0 {
            Ok(Self { eps, mu })
        } else {
            Err(Error::InvalidInput(format!(
                "medium requires eps > 0 and mu > 0, got eps = {eps}, mu = {mu}"
            )))
        }
    }

    pub const fn vacuum() -> Self {
        Self { eps: 1.0, mu: 1.0 }
    }

    /// Nonmagnetic medium (`μ = 1`) with refractive index `n`.
    pub fn from_index(n: f64) -> Result<Self> {
        Self::new(n * n, 1.0)
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `εμ`
    pub fn eps_mu(&self) -> f64 {
        self.eps * self.mu
    }

    /// Refractive index `n = √(εμ)`.
    pub fn index(&self) -> f64 {
        self.eps_mu().sqrt()
    }
}

/// `λ = √(εε₀/(μμ₀))`, an inverse impedance [Ω⁻¹].
pub fn impedance_lambda(m: &MediumParams, k: &Constants) -> f64 {
    (m.eps * k.eps0() / (m.mu * k.mu0)).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OpticalMetric {
    /// `g_opt^{αβ}`
    pub contravariant: Matrix4<f64>,
    /// `g^opt_{αβ}`
    pub covariant: Matrix4<f64>,
    /// `√(−det g^opt_{αβ})`
    pub sqrt_neg_det: f64,
}

/// Builds `g_opt^{αβ} = g^{αβ} + (1 − εμ)u^αu^β/c²` and
/// `g^opt_{αβ} = g_{αβ} + (1 − 1/(εμ))u_αu_β/c²`.
pub fn optical_metric(
    g: &MetricComponents,
    u: &FourVelocity,
    m: &MediumParams,
    k: &Constants,
) -> Result<OpticalMetric> {
    let c2 = k.c * k.c;
    let inv = g.inverse()?;
    let up: Vector4<f64> = u.components();
    let down = g.matrix() * up;
    let n2 = m.eps_mu();
    let contravariant = inv + up * up.transpose() * ((1.0 - n2) / c2);
    let covariant = g.matrix() + down * down.transpose() * ((1.0 - 1.0 / n2) / c2);
    // The rank-one lemma gives det g_opt = det g · (1 + (1 − 1/εμ)u·u/c²) = det g/εμ
    // for a unit four-velocity. Evaluated this way it avoids the γ⁴ cancellation
    // in the determinant of the stored matrix.
    let norm = up.dot(&down) / c2;
    let bound = (up.abs().transpose() * g.matrix().abs() * up.abs())[(0, 0)] / c2;
    if !((norm + 1.0).abs() <= 1e3 * f64::EPSILON * bound) {
        return Err(Error::InvalidInput(format!("four-velocity is not unit timelike: u·u/c² = {norm}")));
    }
    let det = g.determinant() / n2;
    if !(det < 0.0) {
        return Err(Error::Singular);
    }
    Ok(OpticalMetric {
        contravariant: symmetrize(contravariant),
        covariant: symmetrize(covariant),
        sqrt_neg_det: (-det).sqrt(),
    })
}

fn symmetrize(m: Matrix4<f64>) -> Matrix4<f64> {
    (m + m.transpose()) * 0.5
}

/// Effective medium: `D = λξE − G×H`, `B = ξH/λ + G×E`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstitutiveTensors {
    /// `ξ^{ab}` [s/m]
    pub xi: Matrix3<f64>,
    /// Gyration vector `G` (dimensionless).
    pub gyration: Vec3,
    /// `λ` [Ω⁻¹]
    pub lambda: f64,
}

impl ConstitutiveTensors {
    /// Homogeneous isotropic medium at rest in flat space.
    pub fn isotropic(m: &MediumParams, k: &Constants) -> Self {
        Self {
            xi: Matrix3::identity() * (m.index() / k.c),
            gyration: Vec3::zeros(),
            lambda: impedance_lambda(m, k),
        }
    }

    /// Permittivity tensor density `ε^{ab} = λξ^{ab}` [F/m].
    pub fn eps_tensor(&self) -> Matrix3<f64> {
        self.xi * self.lambda
    }

    /// Permeability tensor density `μ^{ab} = ξ^{ab}/λ` [H/m].
    pub fn mu_tensor(&self) -> Matrix3<f64> {
        self.xi / self.lambda
    }
}

/// `ξ^{ab} = −√(−g_opt) g_opt^{ab}/g^opt_00`, `G_a = −g^opt_{0a}/g^opt_00`.
pub fn constitutive_from_optical(
    om: &OpticalMetric,
    m: &MediumParams,
    k: &Constants,
) -> Result<ConstitutiveTensors> {
    let g00 = om.covariant[(0, 0)];
    // g^opt_00 >= 0 means the medium is dragged at or beyond the phase speed
    // of light in it (optical light cylinder).
    if !(g00 < -1e-12 * k.c * k.c / m.eps_mu()) {
        return Err(Error::SingularMedium { g00 });
    }
    let spatial = om.contravariant.fixed_view::<3, 3>(1, 1).into_owned();
    let xi = spatial * (-om.sqrt_neg_det / g00);
    let gyration = Vec3::new(om.covariant[(0, 1)], om.covariant[(0, 2)], om.covariant[(0, 3)]) * (-1.0 / g00);
    Ok(ConstitutiveTensors {
        xi: (xi + xi.transpose()) * 0.5,
        gyration,
        lambda: impedance_lambda(m, k),
    })
}

/// Closed-form medium of a homogeneous `(ε, μ)` comoving with axes rotating
/// at `Ω` about z, exact in `Ω`:
/// `ξ = χ²(n/c)[[1 − εμΩ²y²/c², εμΩ²xy/c², 0], [·, 1 − εμΩ²x²/c², 0], [0, 0, 1]]`,
/// `G = −χ²(εμ/c)K`, with `χ⁻² = 1 − εμΩ²(x² + y²)/c²`.
pub fn rotating_constitutive_exact(
    omega_z: f64,
    m: &MediumParams,
    at: &Event,
    k: &Constants,
) -> Result<ConstitutiveTensors> {
    let c = k.c;
    let em = m.eps_mu();
    let (x, y) = (at.x, at.y);
    let w2 = em * omega_z * omega_z / (c * c);
    let chi_inv_sq = 1.0 - w2 * (x * x + y * y);
    if !(chi_inv_sq > 0.0) {
        return Err(Error::OutsideOpticalCylinder { chi_inv_sq });
    }
    let chi2 = 1.0 / chi_inv_sq;
    let pre = chi2 * m.index() / c;
    let xy = w2 * x * y;
    let xi = Matrix3::new(
        1.0 - w2 * y * y, xy, 0.0,
        xy, 1.0 - w2 * x * x, 0.0,
        0.0, 0.0, 1.0,
    ) * pre;
    let shift = Vec3::new(omega_z * y / c, -omega_z * x / c, 0.0);
    Ok(ConstitutiveTensors {
        xi,
        gyration: shift * (-chi2 * em / c),
        lambda: impedance_lambda(m, k),
    })
}

/// First order in `Ω`: isotropic `ξ = (n/c)δ` and `G = (εμ/c²)(Ω × r)`.
pub fn rotating_constitutive_linear(
    omega: &Vec3,
    m: &MediumParams,
    at: &Event,
    k: &Constants,
) -> ConstitutiveTensors {
    let mut t = ConstitutiveTensors::isotropic(m, k);
    t.gyration = omega.cross(&at.position()) * (m.eps_mu() / (k.c * k.c));
    t
}
