//! Calls through the C ABI, as a C caller would.

use std::ffi::{CStr, CString};
use std::ptr;

use spinlight_ffi::*;

fn last_error() -> String {
    let p = spinlight_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn v(x: f64, y: f64, z: f64) -> SpinlightVec3 {
    SpinlightVec3 { x, y, z }
}

struct Ctx(*mut SpinlightContext);

impl Ctx {
    fn new() -> Self {
        Ctx(spinlight_context_new())
    }
}

impl Drop for Ctx {
    fn drop(&mut self) {
        unsafe { spinlight_context_free(self.0) }
    }
}

#[test]
fn dispersion_and_recovery() {
    let ctx = Ctx::new();
    let mut k = 0.0;
    let s = unsafe { spinlight_dispersion_axial(ctx.0, 1e15, 1e5, 2.25, 1.0, 1, &mut k) };
    assert_eq!(s, SpinlightStatus::Ok);
    assert!((k - 5_003_461.428_472_627).abs() < 1e-15 * k);

    let mut rec = 0.0;
    let s = unsafe { spinlight_dispersion_recover(ctx.0, 1e15, 1e3, 1.0, 1.0, -1, 17, &mut rec) };
    assert_eq!(s, SpinlightStatus::Ok);
    let mut want = 0.0;
    unsafe { spinlight_dispersion_axial(ctx.0, 1e15, 1e3, 1.0, 1.0, -1, &mut want) };
    assert!((rec - want).abs() < 1e-6 * want);

    let s = unsafe { spinlight_dispersion_axial(ctx.0, 1e15, 0.0, 1.0, 1.0, 0, &mut k) };
    assert_eq!(s, SpinlightStatus::Config);
    assert!(last_error().contains("helicity"), "{}", last_error());
}

#[test]
fn null_pointers_are_reported() {
    let mut k = 0.0;
    let s = unsafe { spinlight_dispersion_axial(ptr::null(), 1e15, 0.0, 1.0, 1.0, 1, &mut k) };
    assert_eq!(s, SpinlightStatus::NullArgument);
    let ctx = Ctx::new();
    let s = unsafe { spinlight_sagnac_phase(ctx.0, 1e15, v(0.0, 0.0, 1.0), v(0.0, 0.0, 1.0), ptr::null_mut()) };
    assert_eq!(s, SpinlightStatus::NullArgument);
    assert!(last_error().contains("null"));
    unsafe { spinlight_context_free(ptr::null_mut()) };
    unsafe { spinlight_catalog_free(ptr::null_mut()) };
    assert!(unsafe { spinlight_context_speed_of_light(ptr::null()) }.is_nan());
}

#[test]
fn kinematics_through_the_boundary() {
    let ctx = Ctx::new();
    let mut phase = 0.0;
    let lambda = 633e-9;
    let omega0 = 2.0 * std::f64::consts::PI * 299_792_458.0 / lambda;
    let s = unsafe { spinlight_sagnac_phase(ctx.0, omega0, v(0.0, 0.0, 7.292_115_9e-5), v(0.0, 0.0, 1.0), &mut phase) };
    assert_eq!(s, SpinlightStatus::Ok);
    assert!((phase - 9.657_595_455_614_35e-6).abs() < 1e-15);

    let mut w = 0.0;
    let s = unsafe { spinlight_helicity_frequency(100.0, v(0.0, 0.0, 2.0), v(0.0, 0.0, 1.0), 1, &mut w) };
    assert_eq!(s, SpinlightStatus::Ok);
    assert_eq!(w, 99.0);

    let mut d = 0.0;
    let s = unsafe {
        spinlight_doppler_frequency(ctx.0, 1e15, v(1.0, 0.0, 0.0), v(0.0, 1e9, 0.0), v(0.0, 0.0, 1.0), &mut d)
    };
    assert_eq!(s, SpinlightStatus::Domain);

    let (mut ep, mut em) = (0.0, 0.0);
    unsafe {
        spinlight_energy_total(ctx.0, 100.0, v(0.0, 0.0, 1.0), v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), 1, &mut ep);
        spinlight_energy_total(ctx.0, 100.0, v(0.0, 0.0, 1.0), v(0.0, 0.0, 0.0), v(0.0, 0.0, 1.0), -1, &mut em);
    }
    let hbar = 1.054_571_817e-34;
    assert!(((em - ep) - 2.0 * hbar).abs() < 1e-12 * hbar);
}

#[test]
fn constitutive_tensors() {
    let ctx = Ctx::new();
    let mut out = SpinlightConstitutive::default();
    let s = unsafe { spinlight_rotating_constitutive_exact(ctx.0, 0.0, 2.0, 1.0, 0.0, v(1.0, 2.0, 3.0), &mut out) };
    assert_eq!(s, SpinlightStatus::Ok);
    let n_over_c = 2f64.sqrt() / 299_792_458.0;
    assert!((out.xi[0] - n_over_c).abs() < 1e-15 * n_over_c);
    assert_eq!(out.xi[1], 0.0);
    assert_eq!(out.gyration, v(0.0, 0.0, 0.0));

    let s = unsafe { spinlight_rotating_constitutive_exact(ctx.0, 1.0, 1.0, 1.0, 0.0, v(3e8, 0.0, 0.0), &mut out) };
    assert_eq!(s, SpinlightStatus::Domain);
}

#[test]
fn catalog_and_gravitomagnetism() {
    let ctx = Ctx::new();
    let cat = spinlight_catalog_builtin();
    let name = CString::new("earth").unwrap();
    let mut earth = SpinlightSource::default();
    assert_eq!(unsafe { spinlight_catalog_get(cat, name.as_ptr(), &mut earth) }, SpinlightStatus::Ok);
    assert_eq!(earth.radius_m, 6.371e6);

    let mut f = SpinlightGemFields::default();
    let s = unsafe { spinlight_gem_fields(ctx.0, &earth, v(0.0, 0.0, earth.radius_m), &mut f) };
    assert_eq!(s, SpinlightStatus::Ok);
    let ev = 1.054_571_817e-34 * f.b.z / 299_792_458.0 / 1.602_176_634e-19;
    assert!((ev - 2.215_311_9e-29).abs() < 1e-6 * ev);

    let (mut closed, mut numeric) = (0.0, 0.0);
    unsafe {
        assert_eq!(spinlight_faraday_rotation_axial(ctx.0, &earth, 6.371e6, 1.2742e7, &mut closed), SpinlightStatus::Ok);
        assert_eq!(
            spinlight_faraday_rotation_numeric(ctx.0, &earth, 6.371e6, 1.2742e7, 1e15, &mut numeric),
            SpinlightStatus::Ok
        );
    }
    assert!((closed - 2.682_176_073_962_152e-16).abs() < 1e-15 * closed);
    assert!((numeric - closed).abs() < 1e-9 * closed);
    let s = unsafe { spinlight_gem_fields(ctx.0, &earth, v(0.0, 0.0, 1e6), &mut f) };
    assert_eq!(s, SpinlightStatus::Domain);

    let vega = CString::new("vega").unwrap();
    assert_eq!(unsafe { spinlight_catalog_get(cat, vega.as_ptr(), &mut earth) }, SpinlightStatus::Config);
    unsafe { spinlight_catalog_free(cat) };
}

#[test]
fn catalog_and_constants_from_files() {
    let dir = std::env::temp_dir().join(format!("spinlight-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cat.toml");
    std::fs::write(
        &path,
        "[sources.probe]\nmass_kg = 1.0e20\nangular_momentum_kg_m2_per_s = [0.0, 0.0, 1.0e25]\nradius_m = 1.0e3\n",
    )
    .unwrap();
    let cpath = CString::new(path.to_str().unwrap()).unwrap();
    let mut cat = ptr::null_mut();
    assert_eq!(unsafe { spinlight_catalog_load(cpath.as_ptr(), &mut cat) }, SpinlightStatus::Ok);
    let name = CString::new("probe").unwrap();
    let mut src = SpinlightSource::default();
    assert_eq!(unsafe { spinlight_catalog_get(cat, name.as_ptr(), &mut src) }, SpinlightStatus::Ok);
    assert_eq!(src.mass_kg, 1.0e20);
    unsafe { spinlight_catalog_free(cat) };
    std::fs::remove_dir_all(&dir).unwrap();

    let toml = CString::new("speed_of_light_m_per_s = 1.0e8\n").unwrap();
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { spinlight_context_from_toml(toml.as_ptr(), &mut ctx) }, SpinlightStatus::Ok);
    assert_eq!(unsafe { spinlight_context_speed_of_light(ctx) }, 1.0e8);
    unsafe { spinlight_context_free(ctx) };
    let bad = CString::new("speed_of_light = 1.0\n").unwrap();
    let mut ctx = ptr::null_mut();
    assert_eq!(unsafe { spinlight_context_from_toml(bad.as_ptr(), &mut ctx) }, SpinlightStatus::Config);
    assert!(ctx.is_null());
}

#[test]
fn frequency_of_interleaved_samples() {
    let omega = 2.0 * std::f64::consts::PI * 50.0;
    let dt = 1e-3;
    let data: Vec<f64> = (0..1000)
        .flat_map(|j| {
            let phase = -omega * j as f64 * dt;
            [phase.cos(), phase.sin()]
        })
        .collect();
    let mut est = SpinlightFrequency::default();
    let s = unsafe { spinlight_measured_frequency(data.as_ptr(), 1000, dt, &mut est) };
    assert_eq!(s, SpinlightStatus::Ok);
    assert!((est.omega - omega).abs() < 0.5 * est.bin_width);

    let s = unsafe { spinlight_measured_frequency(data.as_ptr(), 16, dt, &mut est) };
    assert_eq!(s, SpinlightStatus::Numerical);
    let s = unsafe { spinlight_measured_frequency(ptr::null(), 16, dt, &mut est) };
    assert_eq!(s, SpinlightStatus::NullArgument);
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(spinlight_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/spinlight.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 18, "{exports:?}");
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    for ty in ["SpinlightStatus", "SpinlightContext", "SpinlightCatalog", "SpinlightVec3", "SPINLIGHT_STATUS_NUMERICAL = 4"] {
        assert!(header.contains(ty), "{ty} missing from header");
    }
}
