//! Helicity modes of a slowly rotating medium, their finite-difference
//! residuals, and numerical recovery of the dispersion relation.
//!
//! The field equations are linear in the rotation rate, so tests and
//! examples may use `Ω/ω` far above physical values (up to `1e-3`): every
//! first-order quantity scales linearly, and the neglected second-order terms
//! stay below the tolerances as long as `(Ω/ω)²` does.

mod golden;
mod grid;

use num_complex::Complex64;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::fields::{rs_constitutive, CVec3, Helicity, I};
use crate::geometry::{Event, Vec3};
use crate::optics::{rotating_constitutive_linear, MediumParams};

pub use golden::{golden_section_minimize, GoldenResult};
pub use grid::{curl_residual, divergence_residual, GridSpec, ResidualReport, MIN_POINTS, ROTATION_GRID_LIMIT};

/// Beyond this `|Ω|/ω` the first-order dispersion relation is suspect.
pub const SLOW_ROTATION_WARN: f64 = 1e-3;

/// Relative width below which the golden-section bracket stops shrinking.
pub const RECOVERY_BRACKET_TOL: f64 = 1e-12;

/// Circularly polarized mode propagating along the rotation axis:
/// `F± = η(e_x ± ie_y)e^{ikz} + e_z ζ(x, y)e^{ikz}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HelicityMode {
    helicity: Helicity,
    omega: f64,
    wavenumber: f64,
    eta: Complex64,
    medium: MediumParams,
    omega_z: f64,
}

impl HelicityMode {
    pub fn new(
        helicity: Helicity,
        omega: f64,
        wavenumber: f64,
        eta: Complex64,
        medium: MediumParams,
        omega_z: f64,
    ) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::InvalidInput(format!("angular frequency must be positive, got {omega}")));
        }
        if !wavenumber.is_finite() || !eta.re.is_finite() || !eta.im.is_finite() || !omega_z.is_finite() {
            return Err(Error::InvalidInput("mode parameters must be finite".into()));
        }
        Ok(Self { helicity, omega, wavenumber, eta, medium, omega_z })
    }

    /// Mode with the wavenumber fixed by [`dispersion_axial`].
    pub fn axial(
        helicity: Helicity,
        omega: f64,
        omega_z: f64,
        medium: MediumParams,
        eta: Complex64,
        k: &Constants,
    ) -> Result<Self> {
        let wavenumber = dispersion_axial(omega, omega_z, &medium, helicity, k)?;
        Self::new(helicity, omega, wavenumber, eta, medium, omega_z)
    }

    /// Same mode with a different wavenumber.
    pub fn with_wavenumber(&self, wavenumber: f64) -> Result<Self> {
        Self::new(self.helicity, self.omega, wavenumber, self.eta, self.medium, self.omega_z)
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn wavenumber(&self) -> f64 {
        self.wavenumber
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }

    pub fn medium(&self) -> MediumParams {
        self.medium
    }

    pub fn omega_z(&self) -> f64 {
        self.omega_z
    }
}

/// Longitudinal amplitude `ζ± = ±i(nΩ/c)η(x ± iy)`.
pub fn zeta_profile(mode: &HelicityMode, x: f64, y: f64, k: &Constants) -> Complex64 {
    let s = mode.helicity.sign();
    let n = mode.medium.index();
    I * s * (n * mode.omega_z / k.c) * mode.eta * Complex64::new(x, s * y)
}

/// `F±` of `mode` at the spatial point `r`.
pub fn ansatz_field(mode: &HelicityMode, r: &Vec3, k: &Constants) -> CVec3 {
    let s = mode.helicity.sign();
    let phase = Complex64::from_polar(1.0, mode.wavenumber * r.z);
    let zeta = zeta_profile(mode, r.x, r.y, k);
    CVec3::new(mode.eta * phase, I * s * mode.eta * phase, zeta * phase)
}

/// `F±` at an event; the time-harmonic factor is not included.
pub fn ansatz_field_at(mode: &HelicityMode, at: &Event, k: &Constants) -> CVec3 {
    ansatz_field(mode, &at.position(), k)
}

fn check_frequency(omega: f64, rotation: f64) -> Result<()> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidInput(format!("angular frequency must be positive, got {omega}")));
    }
    if !rotation.is_finite() {
        return Err(Error::InvalidInput(format!("rotation rate must be finite, got {rotation}")));
    }
    if rotation.abs() / omega > SLOW_ROTATION_WARN {
        log::warn!(
            "|Omega|/omega = {:.3e} exceeds {SLOW_ROTATION_WARN:e}; first-order dispersion may be inaccurate",
            rotation.abs() / omega
        );
    }
    Ok(())
}

/// `k± = n(ω ± Ω)/c` for propagation along the rotation axis.
pub fn dispersion_axial(
    omega: f64,
    omega_z: f64,
    m: &MediumParams,
    helicity: Helicity,
    k: &Constants,
) -> Result<f64> {
    check_frequency(omega, omega_z)?;
    Ok(m.index() * (omega + helicity.sign() * omega_z) / k.c)
}

/// `k⁺ − k⁻ = 2nΩ/c`, evaluated directly rather than as a difference.
pub fn wavenumber_splitting(omega_z: f64, m: &MediumParams, k: &Constants) -> f64 {
    2.0 * m.index() * omega_z / k.c
}

/// Vacuum dispersion to first order in `Ω` for propagation along `n̂`:
/// `ck± = ω ± n̂·Ω`.
pub fn dispersion_oblique(
    omega: f64,
    rotation: &Vec3,
    n_hat: &Vec3,
    helicity: Helicity,
    k: &Constants,
) -> Result<f64> {
    if !((n_hat.norm() - 1.0).abs() < 1e-9) {
        return Err(Error::InvalidInput(format!(
            "propagation direction must be a unit vector, |n| = {}",
            n_hat.norm()
        )));
    }
    check_frequency(omega, rotation.norm())?;
    Ok((omega + helicity.sign() * n_hat.dot(rotation)) / k.c)
}

/// `R = ∇×F± ∓ ωξF± − iωG×F±` of `mode` with the first-order rotating
/// medium tensors.
pub fn mode_curl_residual(mode: &HelicityMode, grid: &GridSpec, k: &Constants) -> Result<ResidualReport> {
    grid.check_rotation_limit(mode.omega_z, k.c)?;
    let rotation = Vec3::new(0.0, 0.0, mode.omega_z);
    let field = |r: &Vec3| ansatz_field(mode, r, k);
    let tensors = |r: &Vec3| {
        let at = Event { t: 0.0, x: r.x, y: r.y, z: r.z };
        rotating_constitutive_linear(&rotation, &mode.medium, &at, k)
    };
    curl_residual(&field, mode.helicity, mode.omega, &tensors, grid)
}

/// `∇·Z±` of `mode` with the first-order rotating medium tensors.
pub fn mode_divergence_residual(mode: &HelicityMode, grid: &GridSpec, k: &Constants) -> Result<ResidualReport> {
    grid.check_rotation_limit(mode.omega_z, k.c)?;
    let rotation = Vec3::new(0.0, 0.0, mode.omega_z);
    let z = |r: &Vec3| {
        let at = Event { t: 0.0, x: r.x, y: r.y, z: r.z };
        let ct = rotating_constitutive_linear(&rotation, &mode.medium, &at, k);
        rs_constitutive(&ansatz_field(mode, r, k), mode.helicity, &ct)
    };
    divergence_residual(&z, grid)
}

/// Grid for [`dispersion_recover`]: 17³ points, ten wavelengths across in x
/// and y, and a short z extent with `k·h_z = 10⁻³`.
///
/// Central differences see `sin(kh)/h` instead of `k`, which biases the
/// recovered wavenumber by `(kh)²/6`. Transverse derivatives of the ansatz
/// are exact (`ζ` is linear in x and y), so only the z spacing matters.
pub fn recovery_grid(omega: f64, m: &MediumParams, k: &Constants) -> Result<GridSpec> {
    recovery_grid_sized(omega, m, RECOVERY_POINTS, k)
}

/// Default number of grid points per axis for [`recovery_grid`].
pub const RECOVERY_POINTS: usize = 17;

/// [`recovery_grid`] with `points` nodes per axis.
pub fn recovery_grid_sized(omega: f64, m: &MediumParams, points: usize, k: &Constants) -> Result<GridSpec> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(Error::InvalidInput(format!("angular frequency must be positive, got {omega}")));
    }
    if points < MIN_POINTS {
        return Err(Error::InvalidGrid(format!("need at least {MIN_POINTS} points per axis, got {points}")));
    }
    const KH_Z: f64 = 1e-3;
    let k0 = m.index() * omega / k.c;
    let wavelength = 2.0 * std::f64::consts::PI / k0;
    let h_z = KH_Z / k0;
    let half_z = h_z * (points - 1) as f64 / 2.0;
    GridSpec::new(
        Vec3::zeros(),
        Vec3::new(5.0 * wavelength, 5.0 * wavelength, half_z),
        [points; 3],
    )
}

/// Result of [`dispersion_recover`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Recovery {
    pub wavenumber: f64,
    /// RMS curl residual at the recovered wavenumber.
    pub residual: f64,
    pub window: (f64, f64),
    pub iterations: usize,
}

/// Search window `n(ω ∓ w)/c` with `w = max(4|Ω|, 10⁻⁴ω)`; the floor keeps
/// the window open at `Ω = 0` and wider than the finite-difference bias.
pub fn recovery_window(omega: f64, omega_z: f64, m: &MediumParams, k: &Constants) -> (f64, f64) {
    let w = (4.0 * omega_z.abs()).max(1e-4 * omega);
    let n = m.index();
    (n * (omega - w) / k.c, n * (omega + w) / k.c)
}

/// Wavenumber minimizing the RMS curl residual of the ansatz on `grid`.
pub fn dispersion_recover(
    omega: f64,
    omega_z: f64,
    m: &MediumParams,
    helicity: Helicity,
    grid: &GridSpec,
    k: &Constants,
) -> Result<Recovery> {
    check_frequency(omega, omega_z)?;
    grid.check_rotation_limit(omega_z, k.c)?;
    let (lo, hi) = recovery_window(omega, omega_z, m, k);
    let base = HelicityMode::new(helicity, omega, lo, Complex64::new(1.0, 0.0), *m, omega_z)?;
    let mut failure = None;
    let mut objective = |kz: f64| {
        let res = base
            .with_wavenumber(kz)
            .and_then(|mode| mode_curl_residual(&mode, grid, k));
        match res {
            Ok(r) => r.l2_norm,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let found = golden_section_minimize(&mut objective, lo, hi, RECOVERY_BRACKET_TOL, 400);
    if let Some(e) = failure {
        return Err(e);
    }
    if !found.converged {
        return Err(Error::Sampling(format!(
            "golden-section search did not converge in {} iterations",
            found.iterations
        )));
    }
    let margin = 1e-6 * (hi - lo);
    if found.x - lo < margin || hi - found.x < margin {
        return Err(Error::WindowBoundary { lo, hi, at: found.x });
    }
    Ok(Recovery {
        wavenumber: found.x,
        residual: found.value,
        window: (lo, hi),
        iterations: found.iterations,
    })
}

/// Relative agreement required between recovered and closed-form wavenumbers.
pub fn recovery_tolerance(omega: f64, omega_z: f64) -> f64 {
    let r = omega_z / omega;
    (10.0 * r * r).max(1e-6)
}
