//! Scenario runner behind the `spinlight` binary: one function per command,
//! each turning a parsed scenario into a [`Table`].

pub mod config;
pub mod table;

use std::path::Path;

use num_complex::Complex64;

use crate::constants::{Constants, ELECTRON_VOLT};
use crate::error::{Error, Result};
use crate::fields::PlaneWave;
use crate::gem::{
    faraday_rotation_axial, faraday_rotation_numeric, gem_fields, gem_potentials,
    gravitomagnetic_scalar_potential, larmor_frequency, SourceCatalog,
};
use crate::geometry::Vec3;
use crate::kinematics::{
    doppler_frequency, energy_total, helicity_frequency, measured_frequency, projected_signal, sagnac_phase,
    MeasuredSignal, RayState,
};
use crate::optics::MediumParams;
use crate::solver::{
    dispersion_axial, dispersion_recover, mode_curl_residual, mode_divergence_residual, recovery_grid_sized,
    wavenumber_splitting, GridSpec, HelicityMode, RECOVERY_POINTS,
};

pub use config::ScenarioFile;
pub use table::{Cell, Format, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Dispersion,
    Residual,
    Doppler,
    Sagnac,
    GemField,
    Faraday,
    GyroSignal,
}

impl Command {
    /// Name of the scenario table read by this command.
    pub fn section(self) -> &'static str {
        match self {
            Command::Dispersion => "dispersion",
            Command::Residual => "residual",
            Command::Doppler => "doppler",
            Command::Sagnac => "sagnac",
            Command::GemField => "gem_field",
            Command::Faraday => "faraday",
            Command::GyroSignal => "gyro_signal",
        }
    }
}

/// Everything a command needs besides its own scenario table.
pub struct Context<'a> {
    pub constants: Constants,
    pub catalog: &'a SourceCatalog,
    /// Directory against which relative paths in the scenario resolve.
    pub base_dir: &'a Path,
}

fn missing(command: Command) -> Error {
    Error::Config(format!("scenario has no [{}] table", command.section()))
}

fn medium(n: f64, field: &str) -> Result<MediumParams> {
    MediumParams::from_index(n).map_err(|e| Error::Config(format!("{field}: {e}")))
}

fn positive(v: f64, field: &str) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Config(format!("{field} must be positive and finite, got {v}")))
    }
}

fn finite3(v: [f64; 3], field: &str) -> Result<Vec3> {
    if v.iter().all(|x| x.is_finite()) {
        Ok(Vec3::from(v))
    } else {
        Err(Error::Config(format!("{field} must be finite, got {v:?}")))
    }
}

pub fn run(command: Command, scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    match command {
        Command::Dispersion => run_dispersion(scenario, ctx),
        Command::Residual => run_residual(scenario, ctx),
        Command::Doppler => run_doppler(scenario, ctx),
        Command::Sagnac => run_sagnac(scenario, ctx),
        Command::GemField => run_gem_field(scenario, ctx),
        Command::Faraday => run_faraday(scenario, ctx),
        Command::GyroSignal => run_gyro_signal(scenario, ctx),
    }
}

pub fn run_dispersion(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.dispersion.as_ref().ok_or_else(|| missing(Command::Dispersion))?;
    let k = &ctx.constants;
    let hs = config::helicities(&cfg.helicity, "dispersion.helicity")?;
    let mut t = Table::new(vec![
        "helicity",
        "omega_rad_per_s",
        "rotation_rad_per_s",
        "refractive_index",
        "k_closed_rad_per_m",
        "k_recovered_rad_per_m",
        "rel_diff",
    ]);
    for omega in cfg.omega_rad_per_s.to_vec() {
        let omega = positive(omega, "dispersion.omega_rad_per_s")?;
        for rot in cfg.rotation_rad_per_s.to_vec() {
            for n in cfg.refractive_index.to_vec() {
                let m = medium(n, "dispersion.refractive_index")?;
                for &h in &hs {
                    let closed = dispersion_axial(omega, rot, &m, h, k)?;
                    let recovered = match &cfg.grid {
                        Some(g) => {
                            let points = g.points.unwrap_or(RECOVERY_POINTS);
                            let grid = recovery_grid_sized(omega, &m, points, k)?;
                            Some(dispersion_recover(omega, rot, &m, h, &grid, k)?.wavenumber)
                        }
                        None => None,
                    };
                    let rel = recovered.map(|r| ((r - closed) / closed).abs());
                    t.push(vec![
                        h.as_i32().into(),
                        omega.into(),
                        rot.into(),
                        n.into(),
                        closed.into(),
                        recovered.into(),
                        rel.into(),
                    ]);
                }
            }
        }
    }
    Ok(t)
}

pub fn run_residual(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.residual.as_ref().ok_or_else(|| missing(Command::Residual))?;
    let k = &ctx.constants;
    let omega = positive(cfg.omega_rad_per_s, "residual.omega_rad_per_s")?;
    let m = medium(cfg.refractive_index, "residual.refractive_index")?;
    let h = config::helicities(&config::OneOrMany::One(cfg.helicity), "residual.helicity")?[0];
    let eta = Complex64::new(cfg.amplitude_a_per_m, 0.0);
    let mut mode = HelicityMode::axial(h, omega, cfg.rotation_rad_per_s, m, eta, k)?;
    if let Some(kz) = cfg.wavenumber_rad_per_m {
        mode = mode.with_wavenumber(kz)?;
    }
    let center = finite3(cfg.center_m, "residual.center_m")?;
    let half = finite3(cfg.half_extent_m, "residual.half_extent_m")?;
    let mut t = Table::new(vec![
        "points",
        "spacing_x_m",
        "spacing_y_m",
        "spacing_z_m",
        "wavenumber_rad_per_m",
        "curl_max_norm",
        "curl_l2_norm",
        "curl_order",
        "div_max_norm",
        "div_l2_norm",
        "div_order",
    ]);
    for n in cfg.points.to_vec() {
        let grid = GridSpec::new(center, half, [n; 3])?;
        let curl = mode_curl_residual(&mode, &grid, k)?;
        let div = mode_divergence_residual(&mode, &grid, k)?;
        let s = grid.spacing();
        t.push(vec![
            n.into(),
            s.x.into(),
            s.y.into(),
            s.z.into(),
            mode.wavenumber().into(),
            curl.max_norm.into(),
            curl.l2_norm.into(),
            curl.order_estimate.into(),
            div.max_norm.into(),
            div.l2_norm.into(),
            div.order_estimate.into(),
        ]);
    }
    Ok(t)
}

pub fn run_doppler(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.doppler.as_ref().ok_or_else(|| missing(Command::Doppler))?;
    let k = &ctx.constants;
    let omega0 = positive(cfg.omega0_rad_per_s, "doppler.omega0_rad_per_s")?;
    let direction = finite3(cfg.direction, "doppler.direction")?;
    let position = finite3(cfg.position_m, "doppler.position_m")?;
    let rotation = finite3(cfg.rotation_rad_per_s, "doppler.rotation_rad_per_s")?;
    let hs = config::helicities(&cfg.helicity, "doppler.helicity")?;
    let mut t = Table::new(vec![
        "source",
        "helicity",
        "doppler_frequency_rad_per_s",
        "helicity_frequency_rad_per_s",
        "energy_total_j",
        "energy_total_ev",
        "measured_frequency_rad_per_s",
        "bin_width_rad_per_s",
    ]);
    let synth = match &cfg.measurement {
        Some(mc) => match (mc.sample_interval_s, mc.samples) {
            (Some(dt), Some(count)) => Some((positive(dt, "doppler.measurement.sample_interval_s")?, count, mc.height_m)),
            (None, None) => None,
            _ => {
                return Err(Error::Config(
                    "doppler.measurement: sample_interval_s and samples must be given together".into(),
                ))
            }
        },
        None => None,
    };
    for h in hs {
        let ray = RayState::vacuum(omega0, &direction, position, rotation, Some(h), k)?;
        let wd = doppler_frequency(&ray, k)?;
        let (wh, _) = helicity_frequency(omega0, &ray.k0, &rotation, h)?;
        let e = energy_total(&ray, k)?;
        let measured = match synth {
            Some((dt, count, z0)) => {
                if position.x != 0.0 || position.y != 0.0 || rotation.x != 0.0 || rotation.y != 0.0 {
                    return Err(Error::Config(
                        "doppler.measurement needs an observer on the z axis rotating about it".into(),
                    ));
                }
                let wave = PlaneWave::new(omega0, Complex64::new(1.0, 0.0), h, direction.normalize())?;
                let sig = projected_signal(&wave, rotation.z, z0, dt, count, k)?;
                Some(measured_frequency(&sig)?)
            }
            None => None,
        };
        t.push(vec![
            "model".into(),
            h.as_i32().into(),
            wd.into(),
            wh.into(),
            e.into(),
            (e / ELECTRON_VOLT).into(),
            measured.map(|m| m.omega).into(),
            measured.map(|m| m.bin_width).into(),
        ]);
    }
    if let Some(path) = cfg.measurement.as_ref().and_then(|m| m.signal_csv.as_ref()) {
        let full = ctx.base_dir.join(path);
        let file = std::fs::File::open(&full)
            .map_err(|e| Error::Config(format!("cannot open signal file {}: {e}", full.display())))?;
        let est = measured_frequency(&MeasuredSignal::from_csv(file)?)?;
        t.push(vec![
            "file".into(),
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            Cell::Empty,
            est.omega.into(),
            est.bin_width.into(),
        ]);
    }
    Ok(t)
}

pub fn run_sagnac(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.sagnac.as_ref().ok_or_else(|| missing(Command::Sagnac))?;
    let k = &ctx.constants;
    let omega0 = match (cfg.omega0_rad_per_s, cfg.wavelength_m) {
        (Some(w), None) => positive(w, "sagnac.omega0_rad_per_s")?,
        (None, Some(l)) => 2.0 * std::f64::consts::PI * k.c / positive(l, "sagnac.wavelength_m")?,
        _ => {
            return Err(Error::Config(
                "sagnac: give exactly one of omega0_rad_per_s and wavelength_m".into(),
            ))
        }
    };
    let rotation = finite3(cfg.rotation_rad_per_s, "sagnac.rotation_rad_per_s")?;
    let mut t = Table::new(vec![
        "omega0_rad_per_s",
        "area_x_m2",
        "area_y_m2",
        "area_z_m2",
        "rotation_dot_area_m2_per_s",
        "phase_rad",
    ]);
    for a in cfg.area_m2.to_vec() {
        let area = finite3(a, "sagnac.area_m2")?;
        t.push(vec![
            omega0.into(),
            area.x.into(),
            area.y.into(),
            area.z.into(),
            rotation.dot(&area).into(),
            sagnac_phase(omega0, &rotation, &area, k).into(),
        ]);
    }
    Ok(t)
}

pub fn run_gem_field(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.gem_field.as_ref().ok_or_else(|| missing(Command::GemField))?;
    let k = &ctx.constants;
    let src = cfg.source.resolve(ctx.catalog)?;
    let mut t = Table::new(vec![
        "x_m",
        "y_m",
        "z_m",
        "phi_g_m2_per_s2",
        "a_g_x_m2_per_s2",
        "a_g_y_m2_per_s2",
        "a_g_z_m2_per_s2",
        "e_g_x_m_per_s2",
        "e_g_y_m_per_s2",
        "e_g_z_m_per_s2",
        "b_g_x_m_per_s2",
        "b_g_y_m_per_s2",
        "b_g_z_m_per_s2",
        "b_g_norm_m_per_s2",
        "chi_g_m2_per_s2",
        "larmor_rad_per_s",
        "spin_gravity_energy_ev",
    ]);
    for p in cfg.positions_m.to_vec() {
        let x = finite3(p, "gem_field.positions_m")?;
        let pot = gem_potentials(&src, &x, k)?;
        let f = gem_fields(&src, &x, k)?;
        let chi = gravitomagnetic_scalar_potential(&src, &x, k)?;
        let larmor = larmor_frequency(&f.b, k).norm();
        t.push(vec![
            x.x.into(),
            x.y.into(),
            x.z.into(),
            pot.phi.into(),
            pot.a.x.into(),
            pot.a.y.into(),
            pot.a.z.into(),
            f.e.x.into(),
            f.e.y.into(),
            f.e.z.into(),
            f.b.x.into(),
            f.b.y.into(),
            f.b.z.into(),
            f.b.norm().into(),
            chi.into(),
            larmor.into(),
            (k.hbar * f.b.norm() / k.c / ELECTRON_VOLT).into(),
        ]);
    }
    Ok(t)
}

pub fn run_faraday(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.faraday.as_ref().ok_or_else(|| missing(Command::Faraday))?;
    let k = &ctx.constants;
    let src = cfg.source.resolve(ctx.catalog)?;
    let omega = positive(cfg.omega_rad_per_s, "faraday.omega_rad_per_s")?;
    let mut t = Table::new(vec!["z_initial_m", "z_final_m", "closed_rad", "numeric_rad", "rel_diff"]);
    for [zi, zf] in cfg.paths_m.to_vec() {
        let closed = faraday_rotation_axial(&src, zi, zf, k)?;
        let numeric = faraday_rotation_numeric(&src, zi, zf, omega, k)?;
        let rel = if closed == 0.0 { (numeric - closed).abs() } else { ((numeric - closed) / closed).abs() };
        t.push(vec![zi.into(), zf.into(), closed.into(), numeric.into(), rel.into()]);
    }
    Ok(t)
}

pub fn run_gyro_signal(scenario: &ScenarioFile, ctx: &Context) -> Result<Table> {
    let cfg = scenario.gyro_signal.as_ref().ok_or_else(|| missing(Command::GyroSignal))?;
    let k = &ctx.constants;
    let mut t = Table::new(vec![
        "path_length_m",
        "refractive_index",
        "rotation_rad_per_s",
        "delta_k_rad_per_m",
        "phase_rad",
        "polarization_rotation_rad",
    ]);
    for l in cfg.path_length_m.to_vec() {
        let l = positive(l, "gyro_signal.path_length_m")?;
        for n in cfg.refractive_index.to_vec() {
            let m = medium(n, "gyro_signal.refractive_index")?;
            for rot in cfg.rotation_rad_per_s.to_vec() {
                if !rot.is_finite() {
                    return Err(Error::Config(format!("gyro_signal.rotation_rad_per_s must be finite, got {rot}")));
                }
                let dk = wavenumber_splitting(rot, &m, k);
                t.push(vec![
                    l.into(),
                    n.into(),
                    rot.into(),
                    dk.into(),
                    (dk * l).into(),
                    (-0.5 * dk * l).into(),
                ]);
            }
        }
    }
    Ok(t)
}
