//! Electromagnetic fields, definite-helicity plane waves and the generalized
//! Riemann–Silberstein combinations `F± = λE ± iH`, `Z± = D ± iλB`.
//!
//! Complex fields use the `e^{−iωt}` time convention; only real parts are
//! physical. Positive helicity is the upper sign throughout. (In the
//! language of the spin-of-light gyroscope proposal, positive helicity is
//! their left circular polarization.)

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::geometry::{Event, Vec3};
use crate::optics::{impedance_lambda, ConstitutiveTensors, MediumParams};
use crate::solver::{curl_residual, GridSpec, ResidualReport};

pub type CVec3 = Vector3<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn complexify(v: &Vec3) -> CVec3 {
    v.map(|x| Complex64::new(x, 0.0))
}

/// `a × b` for a real `a` and complex `b`.
pub fn cross_rc(a: &Vec3, b: &CVec3) -> CVec3 {
    complexify(a).cross(b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Helicity {
    Positive,
    Negative,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::Positive, Helicity::Negative];

    /// `+1.0` or `−1.0`.
    pub fn sign(self) -> f64 {
        match self {
            Helicity::Positive => 1.0,
            Helicity::Negative => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Helicity::Positive => Helicity::Negative,
            Helicity::Negative => Helicity::Positive,
        }
    }

    pub fn from_sign(s: i64) -> Result<Self> {
        match s {
            1 => Ok(Helicity::Positive),
            -1 => Ok(Helicity::Negative),
            _ => Err(Error::InvalidInput(format!("helicity must be +1 or -1, got {s}"))),
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Helicity::Positive => 1,
            Helicity::Negative => -1,
        }
    }
}

/// `E` and `H` are covectors, `B` and `D` vector densities; in Cartesian
/// coordinates the distinction is bookkeeping only.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldTriplets {
    pub e: CVec3,
    pub b: CVec3,
    pub d: CVec3,
    pub h: CVec3,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RSVectors {
    pub f_plus: CVec3,
    pub f_minus: CVec3,
    pub z_plus: CVec3,
    pub z_minus: CVec3,
}

impl RSVectors {
    pub fn f(&self, h: Helicity) -> &CVec3 {
        match h {
            Helicity::Positive => &self.f_plus,
            Helicity::Negative => &self.f_minus,
        }
    }

    pub fn z(&self, h: Helicity) -> &CVec3 {
        match h {
            Helicity::Positive => &self.z_plus,
            Helicity::Negative => &self.z_minus,
        }
    }
}

/// Monochromatic vacuum plane wave of definite helicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneWave {
    omega0: f64,
    amplitude: Complex64,
    helicity: Helicity,
    axis: Vec3,
}

impl PlaneWave {
    pub fn new(omega0: f64, amplitude: Complex64, helicity: Helicity, axis: Vec3) -> Result<Self> {
        if !(omega0.is_finite() && omega0 > 0.0) {
            return Err(Error::InvalidInput(format!("omega0 must be positive, got {omega0}")));
        }
        if !((axis.norm() - 1.0).abs() < 1e-12) {
            return Err(Error::InvalidInput(format!(
                "propagation axis must be a unit vector, |axis| = {}",
                axis.norm()
            )));
        }
        if !(amplitude.re.is_finite() && amplitude.im.is_finite()) {
            return Err(Error::InvalidInput("amplitude must be finite".into()));
        }
        Ok(Self { omega0, amplitude, helicity, axis })
    }

    /// Wave along `e_z`.
    pub fn along_z(omega0: f64, amplitude: Complex64, helicity: Helicity) -> Result<Self> {
        Self::new(omega0, amplitude, helicity, Vec3::z())
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn helicity(&self) -> Helicity {
        self.helicity
    }

    pub fn axis(&self) -> Vec3 {
        self.axis
    }

    /// `k₀ = (ω₀/c)·axis`
    pub fn wave_vector(&self, k: &Constants) -> Vec3 {
        self.axis * (self.omega0 / k.c)
    }

    /// Helicity vector `±axis`.
    pub fn helicity_vector(&self) -> Vec3 {
        self.axis * self.helicity.sign()
    }
}

/// Completes `axis` to a right-handed orthonormal triad `(e1, e2, axis)`.
/// `e1` is built from the coordinate axis along which `axis` has its
/// smallest component, so `e_z` maps to `(e_x, e_y)`.
pub fn orthonormal_triad(axis: &Vec3) -> (Vec3, Vec3) {
    let a = axis.abs();
    let seed = if a.x <= a.y && a.x <= a.z {
        Vec3::x()
    } else if a.y <= a.z {
        Vec3::y()
    } else {
        Vec3::z()
    };
    let e1 = (seed - axis * axis.dot(&seed)).normalize();
    let e2 = axis.cross(&e1);
    (e1, e2)
}

/// Vacuum fields of a plane wave:
/// `E± = a(e1 ± ie2)e^{−iω₀(t − s/c)}`, `B± = (∓ia/c)(e1 ± ie2)e^{−iω₀(t − s/c)}`,
/// `D = ε₀E`, `H = B/μ₀`, where `s` is the coordinate along the axis.
pub fn plane_wave_fields(w: &PlaneWave, at: &Event, k: &Constants) -> FieldTriplets {
    let (e1, e2) = orthonormal_triad(&w.axis);
    let s = w.helicity.sign();
    let along = w.axis.dot(&at.position());
    let phase = Complex64::from_polar(1.0, -w.omega0 * (at.t - along / k.c));
    let pol = complexify(&e1) + complexify(&e2) * (I * s);
    let e = pol * (w.amplitude * phase);
    let b = pol * (-I * s * w.amplitude * phase / k.c);
    FieldTriplets {
        e,
        b,
        d: e * Complex64::from(k.eps0()),
        h: b / Complex64::from(k.mu0),
    }
}

pub fn rs_compose(f: &FieldTriplets, lambda: f64) -> Result<RSVectors> {
    check_lambda(lambda)?;
    Ok(RSVectors {
        f_plus: f.e * Complex64::from(lambda) + f.h * I,
        f_minus: f.e * Complex64::from(lambda) - f.h * I,
        z_plus: f.d + f.b * (I * lambda),
        z_minus: f.d - f.b * (I * lambda),
    })
}

pub fn rs_decompose(rs: &RSVectors, lambda: f64) -> Result<FieldTriplets> {
    check_lambda(lambda)?;
    Ok(FieldTriplets {
        e: (rs.f_plus + rs.f_minus) / Complex64::from(2.0 * lambda),
        h: (rs.f_plus - rs.f_minus) / (2.0 * I),
        d: (rs.z_plus + rs.z_minus) / Complex64::from(2.0),
        b: (rs.z_plus - rs.z_minus) / (2.0 * I * lambda),
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda.is_finite() && lambda > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("lambda must be positive, got {lambda}")))
    }
}

/// `Z±^a = ξ^{ab}F±_b ± i(G × F±)^a`
pub fn rs_constitutive(f: &CVec3, helicity: Helicity, ct: &ConstitutiveTensors) -> CVec3 {
    let xi = ct.xi.map(|x| Complex64::new(x, 0.0));
    xi * f + cross_rc(&ct.gyration, f) * (I * helicity.sign())
}

/// Finite-difference residual of the vacuum eigen-relation
/// `∇ × F± = ±(ω₀/c)F±` for the Riemann–Silberstein vector of a plane wave.
pub fn vacuum_curl_eigen_residual(
    w: &PlaneWave,
    grid: &GridSpec,
    k: &Constants,
) -> Result<ResidualReport> {
    let vacuum = ConstitutiveTensors::isotropic(&MediumParams::vacuum(), k);
    let lambda = impedance_lambda(&MediumParams::vacuum(), k);
    let helicity = w.helicity;
    let field = |r: &Vec3| {
        let e = Event { t: 0.0, x: r.x, y: r.y, z: r.z };
        let rs = rs_compose(&plane_wave_fields(w, &e, k), lambda).expect("vacuum lambda is positive");
        *rs.f(helicity)
    };
    curl_residual(&field, helicity, w.omega0, &|_: &Vec3| vacuum, grid)
}

/// Largest magnitude of the opposite-helicity RS vector of `w` over the grid,
/// relative to the magnitude of the matching one.
pub fn helicity_leakage(w: &PlaneWave, grid: &GridSpec, k: &Constants) -> f64 {
    let lambda = impedance_lambda(&MediumParams::vacuum(), k);
    grid.points()
        .map(|r| {
            let e = Event { t: 0.0, x: r.x, y: r.y, z: r.z };
            let rs = rs_compose(&plane_wave_fields(w, &e, k), lambda).expect("vacuum lambda is positive");
            rs.f(w.helicity.flip()).norm() / rs.f(w.helicity).norm()
        })
        .fold(0.0, f64::max)
}
