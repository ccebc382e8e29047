//! C ABI over `spinlight-core`.
//!
//! Every fallible function returns a [`SpinlightStatus`] and writes its
//! result through an out-pointer. On failure a message is kept per thread
//! and can be read with [`spinlight_last_error`]. Contexts and catalogs are
//! opaque handles owned by the caller and released with their `_free`
//! function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use num_complex::Complex64;
use spinlight_core::constants::{Constants, ConstantsOverride};
use spinlight_core::fields::Helicity;
use spinlight_core::gem::{self, GEMSource, SourceCatalog};
use spinlight_core::geometry::{Event, Vec3};
use spinlight_core::kinematics::{self, MeasuredSignal, RayState};
use spinlight_core::optics::{self, MediumParams};
use spinlight_core::solver;
use spinlight_core::{Error, ErrorClass};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpinlightStatus {
    Ok = 0,
    /// A required pointer argument was null or a string was not UTF-8.
    NullArgument = 1,
    /// Invalid input or configuration.
    Config = 2,
    /// Outside the physical domain of the model.
    Domain = 3,
    /// A numerical procedure failed.
    Numerical = 4,
    /// Internal error; the call was abandoned.
    Panic = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: &Error) -> SpinlightStatus {
    set_error(e.to_string());
    match e.class() {
        ErrorClass::Config => SpinlightStatus::Config,
        ErrorClass::Domain => SpinlightStatus::Domain,
        ErrorClass::Numerical => SpinlightStatus::Numerical,
    }
}

/// Runs `f`, storing its value in `out`.
fn guard<T, F>(out: *mut T, f: F) -> SpinlightStatus
where
    F: FnOnce() -> Result<T, Error>,
{
    if out.is_null() {
        set_error("output pointer is null".into());
        return SpinlightStatus::NullArgument;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is
            // valid for writes of `T`.
            unsafe { out.write(v) };
            SpinlightStatus::Ok
        }
        Ok(Err(e)) => fail(&e),
        Err(_) => {
            set_error("internal panic".into());
            SpinlightStatus::Panic
        }
    }
}

fn helicity(sign: i32) -> Result<Helicity, Error> {
    Helicity::from_sign(sign.into())
}

fn medium(eps: f64, mu: f64) -> Result<MediumParams, Error> {
    MediumParams::new(eps, mu)
}

/// Last error message on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn spinlight_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn spinlight_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Three-vector.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpinlightVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<SpinlightVec3> for Vec3 {
    fn from(v: SpinlightVec3) -> Self {
        Vec3::new(v.x, v.y, v.z)
    }
}

impl From<Vec3> for SpinlightVec3 {
    fn from(v: Vec3) -> Self {
        Self { x: v.x, y: v.y, z: v.z }
    }
}

/// Physical constants used by every computation.
pub struct SpinlightContext {
    constants: Constants,
}

/// Context with CODATA 2018 constants. Never null.
#[no_mangle]
pub extern "C" fn spinlight_context_new() -> *mut SpinlightContext {
    Box::into_raw(Box::new(SpinlightContext { constants: Constants::default() }))
}

/// Context with constants overridden by a TOML string with keys
/// `speed_of_light_m_per_s`, `vacuum_permeability_h_per_m`,
/// `gravitational_constant_m3_per_kg_s2` and `reduced_planck_j_s`.
///
/// # Safety
/// `toml` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_context_from_toml(
    toml: *const c_char,
    out: *mut *mut SpinlightContext,
) -> SpinlightStatus {
    let Some(text) = (unsafe { str_arg(toml) }) else {
        return SpinlightStatus::NullArgument;
    };
    guard(out, || {
        let o = ConstantsOverride::from_toml_str(text)?;
        let constants = Constants::default().with_overrides(&o)?;
        Ok(Box::into_raw(Box::new(SpinlightContext { constants })))
    })
}

/// Speed of light held by `ctx` [m/s], or NaN for a null context.
///
/// # Safety
/// `ctx` must be null or a live context.
#[no_mangle]
pub unsafe extern "C" fn spinlight_context_speed_of_light(ctx: *const SpinlightContext) -> f64 {
    unsafe { ctx.as_ref() }.map_or(f64::NAN, |c| c.constants.c)
}

/// # Safety
/// `ctx` must be null or a context not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spinlight_context_free(ctx: *mut SpinlightContext) {
    if !ctx.is_null() {
        drop(unsafe { Box::from_raw(ctx) });
    }
}

/// # Safety
/// `s` must be null or NUL-terminated.
unsafe fn str_arg<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        set_error("string argument is null".into());
        return None;
    }
    let r = unsafe { CStr::from_ptr(s) }.to_str().ok();
    if r.is_none() {
        set_error("string argument is not UTF-8".into());
    }
    r
}

/// # Safety
/// `ctx` must be null or a live context.
unsafe fn constants<'a>(ctx: *const SpinlightContext) -> Option<&'a Constants> {
    let c = unsafe { ctx.as_ref() }.map(|c| &c.constants);
    if c.is_none() {
        set_error("context is null".into());
    }
    c
}

macro_rules! ctx_or_return {
    ($ctx:expr) => {
        match unsafe { constants($ctx) } {
            Some(k) => k,
            None => return SpinlightStatus::NullArgument,
        }
    };
}

/// `k± = n(ω ± Ω)/c` along the rotation axis [rad/m].
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_dispersion_axial(
    ctx: *const SpinlightContext,
    omega: f64,
    omega_z: f64,
    eps: f64,
    mu: f64,
    helicity_sign: i32,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || solver::dispersion_axial(omega, omega_z, &medium(eps, mu)?, helicity(helicity_sign)?, k))
}

/// Wavenumber recovered by minimizing the curl residual of the mode ansatz
/// on a grid of `points` nodes per axis [rad/m].
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_dispersion_recover(
    ctx: *const SpinlightContext,
    omega: f64,
    omega_z: f64,
    eps: f64,
    mu: f64,
    helicity_sign: i32,
    points: usize,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || {
        let m = medium(eps, mu)?;
        let grid = solver::recovery_grid_sized(omega, &m, points, k)?;
        Ok(solver::dispersion_recover(omega, omega_z, &m, helicity(helicity_sign)?, &grid, k)?.wavenumber)
    })
}

/// Sagnac phase `4ω₀Ω·A/c²` [rad].
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_sagnac_phase(
    ctx: *const SpinlightContext,
    omega0: f64,
    rotation: SpinlightVec3,
    area: SpinlightVec3,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || Ok(kinematics::sagnac_phase(omega0, &rotation.into(), &area.into(), k)))
}

/// Rotational Doppler frequency of a vacuum ray seen by an observer at
/// `position` co-rotating at `rotation` [rad/s].
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_doppler_frequency(
    ctx: *const SpinlightContext,
    omega0: f64,
    direction: SpinlightVec3,
    position: SpinlightVec3,
    rotation: SpinlightVec3,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || {
        let ray = RayState::vacuum(omega0, &direction.into(), position.into(), rotation.into(), None, k)?;
        kinematics::doppler_frequency(&ray, k)
    })
}

/// Total photon energy including the spin-rotation term [J].
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_energy_total(
    ctx: *const SpinlightContext,
    omega0: f64,
    direction: SpinlightVec3,
    position: SpinlightVec3,
    rotation: SpinlightVec3,
    helicity_sign: i32,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || {
        let h = helicity(helicity_sign)?;
        let ray = RayState::vacuum(omega0, &direction.into(), position.into(), rotation.into(), Some(h), k)?;
        kinematics::energy_total(&ray, k)
    })
}

/// `ω = ω₀ − (±k̂)·Ω` [rad/s].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_helicity_frequency(
    omega0: f64,
    wave_vector: SpinlightVec3,
    rotation: SpinlightVec3,
    helicity_sign: i32,
    out: *mut f64,
) -> SpinlightStatus {
    guard(out, || {
        kinematics::helicity_frequency(omega0, &wave_vector.into(), &rotation.into(), helicity(helicity_sign)?)
            .map(|(w, _)| w)
    })
}

/// Constitutive tensors of a medium: `xi` row-major [s/m], gyration
/// vector `G` [s/m] and inverse impedance `lambda = √(εε₀/(μμ₀))` [Ω⁻¹].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpinlightConstitutive {
    pub xi: [f64; 9],
    pub gyration: SpinlightVec3,
    pub lambda: f64,
}

/// Exact constitutive tensors of a medium `(ε, μ)` co-rotating at `Ω`
/// about z, at the event `(t, x, y, z)`.
///
/// # Safety
/// `ctx` must be a live context and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_rotating_constitutive_exact(
    ctx: *const SpinlightContext,
    omega_z: f64,
    eps: f64,
    mu: f64,
    t: f64,
    position: SpinlightVec3,
    out: *mut SpinlightConstitutive,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    guard(out, || {
        let at = Event::new(t, position.x, position.y, position.z)?;
        let ct = optics::rotating_constitutive_exact(omega_z, &medium(eps, mu)?, &at, k)?;
        let mut xi = [0.0; 9];
        for (i, v) in xi.iter_mut().enumerate() {
            *v = ct.xi[(i / 3, i % 3)];
        }
        Ok(SpinlightConstitutive { xi, gyration: ct.gyration.into(), lambda: ct.lambda })
    })
}

/// Spinning gravitating body.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpinlightSource {
    pub mass_kg: f64,
    pub angular_momentum_kg_m2_per_s: SpinlightVec3,
    pub radius_m: f64,
}

impl SpinlightSource {
    fn to_core(self) -> Result<GEMSource, Error> {
        GEMSource::new(self.mass_kg, self.angular_momentum_kg_m2_per_s.into(), self.radius_m)
    }
}

/// Named gravitating bodies.
pub struct SpinlightCatalog {
    catalog: SourceCatalog,
}

/// Catalog shipped with the library. Never null.
#[no_mangle]
pub extern "C" fn spinlight_catalog_builtin() -> *mut SpinlightCatalog {
    Box::into_raw(Box::new(SpinlightCatalog { catalog: SourceCatalog::builtin() }))
}

/// Loads a catalog TOML file with `[sources.<name>]` tables.
///
/// # Safety
/// `path` must be NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_catalog_load(
    path: *const c_char,
    out: *mut *mut SpinlightCatalog,
) -> SpinlightStatus {
    let Some(path) = (unsafe { str_arg(path) }) else {
        return SpinlightStatus::NullArgument;
    };
    guard(out, || {
        let catalog = SourceCatalog::load(Path::new(path))?;
        Ok(Box::into_raw(Box::new(SpinlightCatalog { catalog })))
    })
}

/// Looks up `name`; unknown names are a configuration error.
///
/// # Safety
/// `catalog` must be a live catalog, `name` NUL-terminated and `out` valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_catalog_get(
    catalog: *const SpinlightCatalog,
    name: *const c_char,
    out: *mut SpinlightSource,
) -> SpinlightStatus {
    let Some(cat) = (unsafe { catalog.as_ref() }) else {
        set_error("catalog is null".into());
        return SpinlightStatus::NullArgument;
    };
    let Some(name) = (unsafe { str_arg(name) }) else {
        return SpinlightStatus::NullArgument;
    };
    guard(out, || {
        let s = cat.catalog.get(name)?;
        Ok(SpinlightSource {
            mass_kg: s.mass(),
            angular_momentum_kg_m2_per_s: s.angular_momentum().into(),
            radius_m: s.body_radius(),
        })
    })
}

/// # Safety
/// `catalog` must be null or a catalog not yet freed.
#[no_mangle]
pub unsafe extern "C" fn spinlight_catalog_free(catalog: *mut SpinlightCatalog) {
    if !catalog.is_null() {
        drop(unsafe { Box::from_raw(catalog) });
    }
}

/// Gravitoelectric and gravitomagnetic fields [m/s²].
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpinlightGemFields {
    pub e: SpinlightVec3,
    pub b: SpinlightVec3,
}

/// Exterior fields of `source` at `position`.
///
/// # Safety
/// `ctx` must be a live context, `source` readable and `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_gem_fields(
    ctx: *const SpinlightContext,
    source: *const SpinlightSource,
    position: SpinlightVec3,
    out: *mut SpinlightGemFields,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    let Some(src) = (unsafe { source.as_ref() }).copied() else {
        set_error("source is null".into());
        return SpinlightStatus::NullArgument;
    };
    guard(out, || {
        let f = gem::gem_fields(&src.to_core()?, &position.into(), k)?;
        Ok(SpinlightGemFields { e: f.e.into(), b: f.b.into() })
    })
}

/// Closed-form gravitational Faraday rotation along the rotation axis from
/// `z_i` to `z_f` [rad].
///
/// # Safety
/// `ctx` must be a live context, `source` readable and `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_faraday_rotation_axial(
    ctx: *const SpinlightContext,
    source: *const SpinlightSource,
    z_i: f64,
    z_f: f64,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    let Some(src) = (unsafe { source.as_ref() }).copied() else {
        set_error("source is null".into());
        return SpinlightStatus::NullArgument;
    };
    guard(out, || gem::faraday_rotation_axial(&src.to_core()?, z_i, z_f, k))
}

/// Faraday rotation by quadrature of the helicity wavenumber difference
/// [rad].
///
/// # Safety
/// `ctx` must be a live context, `source` readable and `out` valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_faraday_rotation_numeric(
    ctx: *const SpinlightContext,
    source: *const SpinlightSource,
    z_i: f64,
    z_f: f64,
    omega: f64,
    out: *mut f64,
) -> SpinlightStatus {
    let k = ctx_or_return!(ctx);
    let Some(src) = (unsafe { source.as_ref() }).copied() else {
        set_error("source is null".into());
        return SpinlightStatus::NullArgument;
    };
    guard(out, || gem::faraday_rotation_numeric(&src.to_core()?, z_i, z_f, omega, k))
}

/// Dominant frequency of a uniformly sampled complex signal.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpinlightFrequency {
    /// Angular frequency of the `e^{−iωt}` component [rad/s].
    pub omega: f64,
    /// Width of one transform bin [rad/s].
    pub bin_width: f64,
}

/// Frequency of `count` samples stored as interleaved `(re, im)` pairs at
/// spacing `dt`.
///
/// # Safety
/// `samples` must point to `2 * count` readable doubles and `out` be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn spinlight_measured_frequency(
    samples: *const f64,
    count: usize,
    dt: f64,
    out: *mut SpinlightFrequency,
) -> SpinlightStatus {
    if samples.is_null() {
        set_error("samples pointer is null".into());
        return SpinlightStatus::NullArgument;
    }
    let Some(len) = count.checked_mul(2) else {
        set_error("sample count overflows".into());
        return SpinlightStatus::Config;
    };
    // SAFETY: the caller guarantees `2 * count` readable doubles.
    let raw = unsafe { std::slice::from_raw_parts(samples, len) };
    guard(out, || {
        let data = raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect();
        let est = kinematics::measured_frequency(&MeasuredSignal::new(data, dt)?)?;
        Ok(SpinlightFrequency { omega: est.omega, bin_width: est.bin_width })
    })
}
