//! Stationary spacetimes in lapse/shift/spatial-metric form, the rigid
//! rotation of Cartesian coordinates about the z axis, observer tetrads and
//! Lorentz factors.
//!
//! Coordinates are `x^μ = (t, x, y, z)` with `t` in seconds, so `g_00`
//! carries `c²` and `ds²` is in m². All spatial charts are Cartesian and the
//! coordinate rotation has unit Jacobian determinant, so tensor densities and
//! tensors coincide numerically.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::constants::{Constants, NumericPolicy};
use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

/// A spacetime event `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Event {
    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        if [t, x, y, z].iter().all(|v| v.is_finite()) {
            Ok(Self { t, x, y, z })
        } else {
            Err(Error::InvalidInput(format!(
                "event components must be finite: ({t}, {x}, {y}, {z})"
            )))
        }
    }

    /// Event at time `t` and spatial position `r`.
    pub fn at(t: f64, r: &Vec3) -> Result<Self> {
        Self::new(t, r.x, r.y, r.z)
    }

    pub fn position(&self) -> Vec3 {
        Vec3::new(self.x, self.y, self.z)
    }

    /// Distance from the z axis.
    pub fn cylindrical_radius(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// Lapse `V`, shift `K^a` (dimensionless) and spatial metric `ĝ_ab` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmPoint {
    pub lapse: f64,
    pub shift: Vec3,
    pub spatial_metric: Matrix3<f64>,
}

impl AdmPoint {
    pub fn minkowski() -> Self {
        Self {
            lapse: 1.0,
            shift: Vec3::zeros(),
            spatial_metric: Matrix3::identity(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lapse.is_finite() && self.lapse > 0.0) {
            return Err(Error::InvalidInput(format!(
                "lapse must be positive, got {}",
                self.lapse
            )));
        }
        if self.shift.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("shift must be finite".into()));
        }
        let g = &self.spatial_metric;
        let scale = g.amax();
        if (g - g.transpose()).amax() > 1e-14 * scale {
            return Err(Error::InvalidInput("spatial metric is not symmetric".into()));
        }
        if g.iter().any(|v| !v.is_finite()) || g.cholesky().is_none() {
            return Err(Error::InvalidInput(
                "spatial metric is not positive definite".into(),
            ));
        }
        Ok(())
    }
}

/// A stationary spacetime in ADM form: `ds² = −V²c²dt² + ĝ_ab(dx^a − K^a c dt)(dx^b − K^b c dt)`.
pub trait AdmForm: Send + Sync {
    fn at(&self, e: &Event) -> AdmPoint;

    /// Region restriction beyond the pointwise ADM invariants, such as the
    /// light cylinder of a rotating frame.
    fn check_region(&self, _e: &Event, _policy: &NumericPolicy) -> Result<()> {
        Ok(())
    }
}

/// ADM fields that do not vary with position.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformAdm(pub AdmPoint);

impl UniformAdm {
    pub fn minkowski() -> Self {
        Self(AdmPoint::minkowski())
    }
}

impl AdmForm for UniformAdm {
    fn at(&self, _e: &Event) -> AdmPoint {
        self.0
    }
}

/// Minkowski spacetime seen from axes rotating with angular velocity `Ω`:
/// `V = 1`, `ĝ = δ`, `K = −(Ω × r)/c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotatingFrameAdm {
    pub omega: Vec3,
    pub c: f64,
}

pub fn rotating_frame_adm(omega: Vec3, k: &Constants) -> RotatingFrameAdm {
    RotatingFrameAdm { omega, c: k.c }
}

impl RotatingFrameAdm {
    /// `|K| = |Ω × r|/c`; coordinates are admissible only where this is below 1.
    pub fn shift_magnitude(&self, e: &Event) -> f64 {
        self.omega.cross(&e.position()).norm() / self.c
    }
}

impl AdmForm for RotatingFrameAdm {
    fn at(&self, e: &Event) -> AdmPoint {
        AdmPoint {
            lapse: 1.0,
            shift: -self.omega.cross(&e.position()) / self.c,
            spatial_metric: Matrix3::identity(),
        }
    }

    fn check_region(&self, e: &Event, policy: &NumericPolicy) -> Result<()> {
        let k = self.shift_magnitude(e);
        if k >= policy.light_cylinder_fraction {
            Err(Error::OutOfRegion(format!(
                "|K| = {k:.6} reaches the light cylinder (limit {})",
                policy.light_cylinder_fraction
            )))
        } else {
            Ok(())
        }
    }
}

/// Covariant metric components `g_μν` in `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricComponents {
    g: Matrix4<f64>,
}

impl MetricComponents {
    /// Wraps a 4×4 matrix after checking symmetry, `det g < 0` and the
    /// `(−,+,+,+)` signature. `c` is used to make the time row dimensionless
    /// before the eigenvalue test.
    pub fn new(g: Matrix4<f64>, c: f64) -> Result<Self> {
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("metric has non-finite entries".into()));
        }
        if g != g.transpose() {
            return Err(Error::InvalidInput("metric is not symmetric".into()));
        }
        let m = Self { g };
        if m.determinant() >= 0.0 {
            return Err(Error::OutOfRegion(format!(
                "metric determinant {:.6e} is not negative",
                m.determinant()
            )));
        }
        let eig = m.dimensionless(c).symmetric_eigenvalues();
        let negative = eig.iter().filter(|&&v| v < 0.0).count();
        let positive = eig.iter().filter(|&&v| v > 0.0).count();
        if negative != 1 || positive != 3 {
            return Err(Error::OutOfRegion(format!(
                "metric signature is not (-,+,+,+): eigenvalues {:?}",
                eig.as_slice()
            )));
        }
        Ok(m)
    }

    /// `η_μν = diag(−c², 1, 1, 1)`.
    pub fn minkowski(c: f64) -> Self {
        Self {
            g: Matrix4::from_diagonal(&Vector4::new(-c * c, 1.0, 1.0, 1.0)),
        }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.g
    }

    pub fn determinant(&self) -> f64 {
        self.g.determinant()
    }

    pub fn inverse(&self) -> Result<Matrix4<f64>> {
        self.g.try_inverse().ok_or(Error::Singular)
    }

    pub fn inner(&self, a: &Vector4<f64>, b: &Vector4<f64>) -> f64 {
        (a.transpose() * self.g * b)[(0, 0)]
    }

    /// The metric with the time row and column divided by `c`.
    pub fn dimensionless(&self, c: f64) -> Matrix4<f64> {
        let d = Matrix4::from_diagonal(&Vector4::new(1.0 / c, 1.0, 1.0, 1.0));
        d * self.g * d
    }
}

/// Assembles `g_μν` from ADM data at one event:
/// `g_00 = −V²c² + c² ĝ_ab K^a K^b`, `g_0a = −c ĝ_ab K^b`, `g_ab = ĝ_ab`.
pub fn adm_to_metric(
    adm: &dyn AdmForm,
    at: &Event,
    k: &Constants,
    policy: &NumericPolicy,
) -> Result<MetricComponents> {
    adm.check_region(at, policy)?;
    let p = adm.at(at);
    p.validate()?;
    let c = k.c;
    let gk = p.spatial_metric * p.shift;
    let mut g = Matrix4::zeros();
    g[(0, 0)] = -p.lapse * p.lapse * c * c + c * c * p.shift.dot(&gk);
    for a in 0..3 {
        g[(0, a + 1)] = -c * gk[a];
        g[(a + 1, 0)] = -c * gk[a];
        for b in 0..3 {
            g[(a + 1, b + 1)] = p.spatial_metric[(a, b)];
        }
    }
    // Symmetrize the spatial block exactly; ĝ may carry rounding asymmetry.
    let g = (g + g.transpose()) * 0.5;
    MetricComponents::new(g, c)
}

/// Recovers `(V, K, ĝ)` from metric components; the inverse of [`adm_to_metric`].
pub fn adm_from_metric(g: &MetricComponents, c: f64) -> Result<AdmPoint> {
    let m = g.matrix();
    let spatial = m.fixed_view::<3, 3>(1, 1).into_owned();
    let g0a = Vec3::new(m[(0, 1)], m[(0, 2)], m[(0, 3)]);
    let inv = spatial.try_inverse().ok_or(Error::Singular)?;
    let shift = -(inv * g0a) / c;
    let lapse_sq = (-m[(0, 0)] + c * c * shift.dot(&(spatial * shift))) / (c * c);
    if lapse_sq <= 0.0 {
        return Err(Error::OutOfRegion(format!("lapse^2 = {lapse_sq:.6e}")));
    }
    Ok(AdmPoint {
        lapse: lapse_sq.sqrt(),
        shift,
        spatial_metric: spatial,
    })
}

/// Inertial `(t₀, x₀, y₀, z₀)` to axes rotating at `Ω` about z:
/// `x = x₀cosΩt + y₀sinΩt`, `y = −x₀sinΩt + y₀cosΩt`.
pub fn inertial_to_rotating(e: &Event, omega_z: f64) -> Event {
    let (s, c) = (omega_z * e.t).sin_cos();
    Event {
        t: e.t,
        x: e.x * c + e.y * s,
        y: -e.x * s + e.y * c,
        z: e.z,
    }
}

pub fn rotating_to_inertial(e: &Event, omega_z: f64) -> Event {
    let (s, c) = (omega_z * e.t).sin_cos();
    Event {
        t: e.t,
        x: e.x * c - e.y * s,
        y: e.x * s + e.y * c,
        z: e.z,
    }
}

/// Jacobian `∂x₀^μ/∂x^ν` of [`rotating_to_inertial`] at a rotating-frame event.
/// Its determinant is exactly 1.
pub fn rotation_jacobian(omega_z: f64, e: &Event) -> Matrix4<f64> {
    let (s, c) = (omega_z * e.t).sin_cos();
    let inertial = rotating_to_inertial(e, omega_z);
    Matrix4::new(
        1.0, 0.0, 0.0, 0.0,
        -omega_z * inertial.y, c, -s, 0.0,
        omega_z * inertial.x, s, c, 0.0,
        0.0, 0.0, 0.0, 1.0,
    )
}

/// Four frame vectors `e^μ_α̂` in coordinate components.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tetrad {
    pub legs: [Vector4<f64>; 4],
}

impl Tetrad {
    pub fn coordinate_frame() -> Self {
        Self {
            legs: [
                Vector4::new(1.0, 0.0, 0.0, 0.0),
                Vector4::new(0.0, 1.0, 0.0, 0.0),
                Vector4::new(0.0, 0.0, 1.0, 0.0),
                Vector4::new(0.0, 0.0, 0.0, 1.0),
            ],
        }
    }

    /// Largest deviation of the frame Gram matrix from `diag(−c², 1, 1, 1)`,
    /// each entry scaled to be dimensionless (time legs divided by `c`).
    pub fn orthonormality_defect(&self, g: &MetricComponents, c: f64) -> f64 {
        let scale = [c, 1.0, 1.0, 1.0];
        let target = [-1.0, 1.0, 1.0, 1.0];
        let mut worst = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                let gram = g.inner(&self.legs[i], &self.legs[j]) / (scale[i] * scale[j]);
                let want = if i == j { target[i] } else { 0.0 };
                worst = worst.max((gram - want).abs());
            }
        }
        worst
    }

    pub fn check_orthonormal(
        &self,
        g: &MetricComponents,
        c: f64,
        policy: &NumericPolicy,
    ) -> Result<()> {
        let d = self.orthonormality_defect(g, c);
        if d > policy.orthonormality {
            Err(Error::InvalidInput(format!("tetrad is not orthonormal (defect {d:.3e})")))
        } else {
            Ok(())
        }
    }
}

/// Frame of the observer at the origin whose spatial axes rotate at `Ω`
/// about z, in inertial coordinates.
pub fn rotating_observer_tetrad(omega_z: f64, t: f64) -> Tetrad {
    let (s, c) = (omega_z * t).sin_cos();
    Tetrad {
        legs: [
            Vector4::new(1.0, 0.0, 0.0, 0.0),
            Vector4::new(0.0, c, s, 0.0),
            Vector4::new(0.0, -s, c, 0.0),
            Vector4::new(0.0, 0.0, 0.0, 1.0),
        ],
    }
}

/// Fermi-transported frame in rotating coordinates:
/// `ẽ_t̂ = ∂_t + cK^a∂_a`, `ẽ_â = ∂_a`.
///
/// Only defined for ADM data with `V = 1` and `ĝ = δ`.
pub fn fermi_tetrad(
    adm: &dyn AdmForm,
    at: &Event,
    k: &Constants,
    policy: &NumericPolicy,
) -> Result<Tetrad> {
    adm.check_region(at, policy)?;
    let p = adm.at(at);
    if (p.lapse - 1.0).abs() > policy.orthonormality
        || (p.spatial_metric - Matrix3::identity()).amax() > policy.orthonormality
    {
        return Err(Error::UnsupportedMetric(
            "Fermi frame requires unit lapse and flat Cartesian spatial metric".into(),
        ));
    }
    if p.shift.norm() >= 1.0 {
        return Err(Error::OutOfRegion(format!("|K| = {} >= 1", p.shift.norm())));
    }
    let mut t = Tetrad::coordinate_frame();
    let ck = p.shift * k.c;
    t.legs[0] = Vector4::new(1.0, ck.x, ck.y, ck.z);
    Ok(t)
}

/// `γ⁻² = V² − ĝ_ab(v^a − cK^a)(v^b − cK^b)/c²` for coordinate velocity `v`.
pub fn lorentz_factor(adm: &dyn AdmForm, v: &Vec3, at: &Event, k: &Constants) -> Result<f64> {
    let p = adm.at(at);
    let rel = v - p.shift * k.c;
    let gamma_inv_sq = p.lapse * p.lapse - rel.dot(&(p.spatial_metric * rel)) / (k.c * k.c);
    if !(gamma_inv_sq > 0.0) {
        return Err(Error::Superluminal { gamma_inv_sq });
    }
    Ok(gamma_inv_sq.sqrt().recip())
}

/// `u^μ = γ(1, v)` normalized to `g_μν u^μ u^ν = −c²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVelocity {
    pub gamma: f64,
    pub v: Vec3,
}

impl FourVelocity {
    pub fn new(adm: &dyn AdmForm, v: Vec3, at: &Event, k: &Constants) -> Result<Self> {
        let gamma = lorentz_factor(adm, &v, at, k)?;
        Ok(Self { gamma, v })
    }

    /// Matter at rest relative to the Fermi frame, `v = cK`.
    pub fn comoving(adm: &dyn AdmForm, at: &Event, k: &Constants) -> Result<Self> {
        let v = adm.at(at).shift * k.c;
        Self::new(adm, v, at, k)
    }

    pub fn components(&self) -> Vector4<f64> {
        Vector4::new(self.gamma, self.gamma * self.v.x, self.gamma * self.v.y, self.gamma * self.v.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    const C: f64 = crate::constants::SPEED_OF_LIGHT;

    fn k() -> Constants {
        Constants::codata2018()
    }

    fn ev(t: f64, x: f64, y: f64, z: f64) -> Event {
        Event::new(t, x, y, z).unwrap()
    }

    #[test]
    fn event_rejects_nan() {
        assert!(Event::new(0.0, f64::NAN, 0.0, 0.0).is_err());
        assert!(Event::new(f64::INFINITY, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn minkowski_from_trivial_adm() {
        let g = adm_to_metric(&UniformAdm::minkowski(), &ev(0.0, 1.0, 2.0, 3.0), &k(), &NumericPolicy::default())
            .unwrap();
        assert_eq!(*g.matrix(), *MetricComponents::minkowski(C).matrix());
    }

    #[test]
    fn rotating_metric_matches_closed_form() {
        let omega = 1.0e3;
        let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
        let e = ev(0.2, 1.5e4, -2.0e4, 7.0);
        let g = adm_to_metric(&adm, &e, &k(), &NumericPolicy::default()).unwrap();
        let kv = Vec3::new(omega * e.y / C, -omega * e.x / C, 0.0);
        let m = g.matrix();
        let g00 = -C * C * (1.0 - kv.norm_squared());
        assert!((m[(0, 0)] - g00).abs() <= 1e-15 * C * C);
        for a in 0..3 {
            assert!((m[(0, a + 1)] + C * kv[a]).abs() <= 1e-12 * C * kv.norm().max(1e-300));
            for b in 0..3 {
                assert_eq!(m[(a + 1, b + 1)], if a == b { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn rotating_shift_components() {
        let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, 2.0), &k());
        let p = adm.at(&ev(0.0, 3.0, 5.0, 0.0));
        assert!((p.shift - Vec3::new(2.0 * 5.0 / C, -2.0 * 3.0 / C, 0.0)).norm() < 1e-24);
        let still = rotating_frame_adm(Vec3::zeros(), &k());
        assert_eq!(still.at(&ev(0.0, 3.0, 5.0, 1.0)).shift, Vec3::zeros());
    }

    #[test]
    fn shift_reaches_unity_at_light_cylinder() {
        let omega = 10.0;
        let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
        let rho = C / omega;
        let e = ev(0.0, rho * 0.6, rho * 0.8, 0.0);
        assert!((adm.shift_magnitude(&e) - 1.0).abs() < 1e-15);
        let err = adm_to_metric(&adm, &e, &k(), &NumericPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::OutOfRegion(_)));
        let inside = ev(0.0, rho * 0.5, 0.0, 0.0);
        assert!(adm_to_metric(&adm, &inside, &k(), &NumericPolicy::default()).is_ok());
        let edge = ev(0.0, rho * 0.9995, 0.0, 0.0);
        assert!(adm_to_metric(&adm, &edge, &k(), &NumericPolicy::default()).is_err());
    }

    #[test]
    fn invalid_adm_rejected() {
        let mut p = AdmPoint::minkowski();
        p.lapse = 0.0;
        let e = ev(0.0, 0.0, 0.0, 0.0);
        let pol = NumericPolicy::default();
        assert!(matches!(adm_to_metric(&UniformAdm(p), &e, &k(), &pol), Err(Error::InvalidInput(_))));
        let mut p = AdmPoint::minkowski();
        p.spatial_metric[(2, 2)] = -1.0;
        assert!(matches!(adm_to_metric(&UniformAdm(p), &e, &k(), &pol), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn quarter_turn() {
        let omega = 3.0;
        let e = ev(FRAC_PI_2 / omega, 1.0, 0.0, 4.0);
        let r = inertial_to_rotating(&e, omega);
        assert!(r.x.abs() < 1e-15 && (r.y + 1.0).abs() < 1e-15 && r.z == 4.0);
        let at_zero = inertial_to_rotating(&ev(0.0, 1.0, 2.0, 3.0), omega);
        assert_eq!((at_zero.x, at_zero.y, at_zero.z), (1.0, 2.0, 3.0));
    }

    #[test]
    fn observer_tetrad_quarter_turn() {
        let t = rotating_observer_tetrad(2.0, FRAC_PI_2 / 2.0);
        assert!((t.legs[1] - Vector4::new(0.0, 0.0, 1.0, 0.0)).amax() < 1e-15);
        assert_eq!(rotating_observer_tetrad(2.0, 0.0), Tetrad::coordinate_frame());
    }

    #[test]
    fn fermi_tetrad_components() {
        let omega = 50.0;
        let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
        let e = ev(0.0, 1.0e5, 2.0e5, 0.0);
        let t = fermi_tetrad(&adm, &e, &k(), &NumericPolicy::default()).unwrap();
        let want = Vector4::new(1.0, omega * e.y, -omega * e.x, 0.0);
        assert!((t.legs[0] - want).amax() < 1e-14 * want.amax());
        let still = rotating_frame_adm(Vec3::zeros(), &k());
        assert_eq!(
            fermi_tetrad(&still, &e, &k(), &NumericPolicy::default()).unwrap(),
            Tetrad::coordinate_frame()
        );
    }

    #[test]
    fn fermi_tetrad_rejects_general_metric() {
        let mut p = AdmPoint::minkowski();
        p.lapse = 1.1;
        let err = fermi_tetrad(&UniformAdm(p), &ev(0.0, 0.0, 0.0, 0.0), &k(), &NumericPolicy::default())
            .unwrap_err();
        assert!(matches!(err, Error::UnsupportedMetric(_)));
    }

    #[test]
    fn lorentz_factor_cases() {
        let mink = UniformAdm::minkowski();
        let e = ev(0.0, 0.0, 0.0, 0.0);
        let g = lorentz_factor(&mink, &Vec3::new(0.6 * C, 0.0, 0.0), &e, &k()).unwrap();
        assert!((g - 1.25).abs() < 1e-14);
        assert!(matches!(
            lorentz_factor(&mink, &Vec3::new(C, 0.0, 0.0), &e, &k()),
            Err(Error::Superluminal { .. })
        ));

        let omega = 1.0e3;
        let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
        let e = ev(0.0, 3.0e4, 4.0e4, 0.0);
        let comoving = FourVelocity::comoving(&adm, &e, &k()).unwrap();
        assert!((comoving.gamma - 1.0).abs() < 1e-15);
        // At rest in the rotating chart: γ = (1 − Ω²ρ²/c²)^(−1/2).
        let rho = 5.0e4;
        let g = lorentz_factor(&adm, &Vec3::zeros(), &e, &k()).unwrap();
        let want = (1.0 - (omega * rho / C).powi(2)).powf(-0.5);
        assert!((g - want).abs() < 1e-14);
    }

    #[test]
    fn rotation_jacobian_unimodular() {
        let j = rotation_jacobian(0.7, &ev(1.3, 2.0, -1.0, 5.0));
        assert!((j.determinant() - 1.0).abs() < 1e-14);
    }

    fn random_adm() -> impl Strategy<Value = AdmPoint> {
        (
            0.5f64..2.0,
            prop::array::uniform3(-0.3f64..0.3),
            prop::array::uniform3(-0.3f64..0.3),
            prop::array::uniform3(0.5f64..2.0),
        )
            .prop_map(|(lapse, k, off, diag)| {
                let a = Matrix3::new(diag[0], off[0], off[1], 0.0, diag[1], off[2], 0.0, 0.0, diag[2]);
                AdmPoint {
                    lapse,
                    shift: Vec3::from(k),
                    spatial_metric: a.transpose() * a,
                }
            })
    }

    proptest! {
        #[test]
        fn adm_round_trip(p in random_adm(), x in prop::array::uniform3(-1e3f64..1e3)) {
            let e = ev(0.0, x[0], x[1], x[2]);
            let g = adm_to_metric(&UniformAdm(p), &e, &k(), &NumericPolicy::default()).unwrap();
            let back = adm_from_metric(&g, C).unwrap();
            prop_assert!((back.lapse - p.lapse).abs() <= 1e-12 * p.lapse);
            prop_assert!((back.shift - p.shift).amax() <= 1e-12 * p.shift.amax().max(1e-3));
            prop_assert!((back.spatial_metric - p.spatial_metric).amax() <= 1e-12 * p.spatial_metric.amax());
        }

        #[test]
        fn coordinate_round_trip(t in -1e3f64..1e3, omega in -10.0f64..10.0,
                                 x in prop::array::uniform3(-1e6f64..1e6)) {
            let e = ev(t, x[0], x[1], x[2]);
            let back = rotating_to_inertial(&inertial_to_rotating(&e, omega), omega);
            let scale = 1e-14 * x[0].abs().max(x[1].abs()).max(1.0);
            prop_assert!((back.x - e.x).abs() <= 4.0 * scale);
            prop_assert!((back.y - e.y).abs() <= 4.0 * scale);
            prop_assert_eq!(back.z, e.z);
            prop_assert_eq!(back.t, e.t);
        }

        #[test]
        fn rotating_metric_is_pulled_back_minkowski(t in -1.0f64..1.0, omega in -5.0f64..5.0,
                                                   x in prop::array::uniform3(-1e6f64..1e6)) {
            let e = ev(t, x[0], x[1], x[2]);
            let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
            let g = adm_to_metric(&adm, &e, &k(), &NumericPolicy::default()).unwrap();
            let j = rotation_jacobian(omega, &e);
            let pulled = j.transpose() * MetricComponents::minkowski(C).matrix() * j;
            let scale = Matrix4::from_diagonal(&Vector4::new(1.0 / C, 1.0, 1.0, 1.0));
            let d = scale * (pulled - g.matrix()) * scale;
            prop_assert!(d.amax() <= 1e-10);
            prop_assert!((j.determinant() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn observer_tetrad_orthonormal(omega in -1e3f64..1e3, t in -1e2f64..1e2) {
            let tet = rotating_observer_tetrad(omega, t);
            prop_assert!(tet.orthonormality_defect(&MetricComponents::minkowski(C), C) <= 1e-12);
        }

        #[test]
        fn fermi_tetrad_orthonormal(omega in 1.0f64..1e3, frac in 0.0f64..0.99, phi in 0.0f64..std::f64::consts::TAU, z in -1e3f64..1e3) {
            let rho = frac * C / omega;
            let e = ev(0.0, rho * phi.cos(), rho * phi.sin(), z);
            let adm = rotating_frame_adm(Vec3::new(0.0, 0.0, omega), &k());
            let pol = NumericPolicy::default();
            let g = adm_to_metric(&adm, &e, &k(), &pol).unwrap();
            let tet = fermi_tetrad(&adm, &e, &k(), &pol).unwrap();
            prop_assert!(tet.orthonormality_defect(&g, C) <= 1e-12);
        }

        #[test]
        fn four_velocity_normalized(p in random_adm(), v in prop::array::uniform3(-0.2f64..0.2)) {
            let e = ev(0.0, 0.0, 0.0, 0.0);
            let adm = UniformAdm(p);
            let u = FourVelocity::new(&adm, Vec3::from(v) * C, &e, &k());
            prop_assume!(u.is_ok());
            let u = u.unwrap();
            let g = adm_to_metric(&adm, &e, &k(), &NumericPolicy::default()).unwrap();
            let norm = g.inner(&u.components(), &u.components());
            prop_assert!((norm + C * C).abs() <= 1e-12 * C * C);
        }
    }
}
