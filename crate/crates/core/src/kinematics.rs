//! Frequencies and energies measured by rotating observers: Doppler shift,
//! helicity-rotation coupling, Sagnac phase, and a spectral pipeline that
//! recovers the observed frequency from tetrad-projected field samples.
//!
//! The matter-wave Sagnac effect (de Broglie frequency in place of the
//! optical one) follows from [`sagnac_phase`] by substitution and is not
//! provided separately.

use std::io::{Read, Write};

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::constants::Constants;
use crate::error::{Error, Result};
use crate::fields::{plane_wave_fields, Helicity, PlaneWave};
use crate::geometry::{rotating_observer_tetrad, Event, Vec3};

/// Beyond this `|Ω|/ω₀` the eikonal treatment of helicity coupling is suspect.
pub const EIKONAL_WARN: f64 = 1e-3;

/// Minimum number of samples accepted by [`measured_frequency`].
pub const MIN_SAMPLES: usize = 16;

/// Minimum number of signal periods spanned by a usable record.
pub const MIN_PERIODS: f64 = 8.0;

/// Photon of inertial frequency `ω₀` and wave vector `k₀` seen by an
/// observer at `r` rotating with angular velocity `Ω`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RayState {
    pub omega0: f64,
    pub k0: Vec3,
    pub r: Vec3,
    pub rotation: Vec3,
    pub helicity: Option<Helicity>,
}

impl RayState {
    pub fn new(omega0: f64, k0: Vec3, r: Vec3, rotation: Vec3, helicity: Option<Helicity>) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::InvalidInput(format!("frequency must be positive, got {omega0}")));
        }
        let finite = |v: &Vec3| v.iter().all(|x| x.is_finite());
        if !finite(&k0) || !finite(&r) || !finite(&rotation) {
            return Err(Error::InvalidInput("ray vectors must be finite".into()));
        }
        if k0.norm() == 0.0 {
            return Err(Error::InvalidInput("wave vector must be nonzero".into()));
        }
        Ok(Self { omega0, k0, r, rotation, helicity })
    }

    /// Vacuum ray: `k₀ = (ω₀/c) n̂`.
    pub fn vacuum(
        omega0: f64,
        direction: &Vec3,
        r: Vec3,
        rotation: Vec3,
        helicity: Option<Helicity>,
        k: &Constants,
    ) -> Result<Self> {
        let n = direction.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidInput("propagation direction must be nonzero".into()));
        }
        Self::new(omega0, direction * (omega0 / (k.c * n)), r, rotation, helicity)
    }

    /// `ℓ = r × k₀` [1]
    pub fn orbital_wavenumber_moment(&self) -> Vec3 {
        self.r.cross(&self.k0)
    }

    /// `L = ħ r × k₀` [J·s]
    pub fn orbital_angular_momentum(&self, k: &Constants) -> Vec3 {
        self.orbital_wavenumber_moment() * k.hbar
    }

    /// `S = ±ħ k̂₀` [J·s]; `None` without a helicity.
    pub fn spin(&self, k: &Constants) -> Option<Vec3> {
        self.helicity.map(|h| photon_spin(&self.k0, h, k))
    }

    /// Lorentz factor of the observer, moving with `v = Ω × r`.
    pub fn observer_gamma(&self, k: &Constants) -> Result<f64> {
        let v = self.rotation.cross(&self.r);
        let gamma_inv_sq = 1.0 - v.norm_squared() / (k.c * k.c);
        if gamma_inv_sq <= 0.0 {
            return Err(Error::Superluminal { gamma_inv_sq });
        }
        Ok(1.0 / gamma_inv_sq.sqrt())
    }
}

/// `S = ±ħ k/|k|`
pub fn photon_spin(k0: &Vec3, helicity: Helicity, k: &Constants) -> Vec3 {
    k0.normalize() * (helicity.sign() * k.hbar)
}

/// `ω_D = γ(ω₀ − Ω·(r × k₀))`
pub fn doppler_frequency(s: &RayState, k: &Constants) -> Result<f64> {
    let gamma = s.observer_gamma(k)?;
    Ok(gamma * (s.omega0 - s.rotation.dot(&s.orbital_wavenumber_moment())))
}

/// `E_D = γ(ħω₀ − Ω·L)` [J]
pub fn doppler_energy(s: &RayState, k: &Constants) -> Result<f64> {
    let gamma = s.observer_gamma(k)?;
    Ok(gamma * (k.hbar * s.omega0 - s.rotation.dot(&s.orbital_angular_momentum(k))))
}

/// `E = γ(ħω₀ − Ω·L − Ω·S)` [J]
pub fn energy_total(s: &RayState, k: &Constants) -> Result<f64> {
    let spin = s
        .spin(k)
        .ok_or_else(|| Error::InvalidInput("total energy needs a helicity".into()))?;
    let gamma = s.observer_gamma(k)?;
    Ok(gamma * (k.hbar * s.omega0 - s.rotation.dot(&s.orbital_angular_momentum(k)) - s.rotation.dot(&spin)))
}

/// `ω = ω₀ − (±k̂)·Ω`; the wave vector is returned unchanged.
pub fn helicity_frequency(omega0: f64, k0: &Vec3, rotation: &Vec3, helicity: Helicity) -> Result<(f64, Vec3)> {
    if !(omega0 > 0.0 && omega0.is_finite()) {
        return Err(Error::InvalidInput(format!("frequency must be positive, got {omega0}")));
    }
    let n = k0.norm();
    if !(n > 0.0 && n.is_finite()) || !rotation.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidInput("wave vector must be nonzero and rotation finite".into()));
    }
    if rotation.norm() / omega0 > EIKONAL_WARN {
        log::warn!(
            "|Omega|/omega0 = {:.3e} exceeds {EIKONAL_WARN:e}; helicity coupling is an eikonal result",
            rotation.norm() / omega0
        );
    }
    let shift = helicity.sign() * k0.dot(rotation) / n;
    Ok((omega0 - shift, *k0))
}

/// `ΔΦ = 4ω₀ Ω·A/c²` for an interferometer of oriented area `A`.
pub fn sagnac_phase(omega0: f64, rotation: &Vec3, area: &Vec3, k: &Constants) -> f64 {
    4.0 * omega0 * rotation.dot(area) / (k.c * k.c)
}

/// `H = −S·Ω` (no Lorentz factor).
pub fn spin_rotation_energy(spin: &Vec3, rotation: &Vec3) -> f64 {
    -spin.dot(rotation)
}

/// Field-strength components in the frame of an observer on the z axis,
/// rotating about it: electric `(F_0̂1̂, F_0̂2̂, F_0̂3̂)` and magnetic
/// `(F_2̂3̂, F_3̂1̂, F_1̂2̂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectedComponents {
    pub electric: [Complex64; 3],
    pub magnetic: [Complex64; 3],
}

/// Projects the inertial field of `w` onto the rotating observer's frame at
/// time `t0` and height `z0` on the rotation axis.
///
/// `F_{0i} = −E_i` and `F_{ij} = ε_{ijk}B_k` in coordinates `(t, x, y, z)`.
pub fn tetrad_projected_wave(
    w: &PlaneWave,
    omega_z: f64,
    t0: f64,
    z0: f64,
    k: &Constants,
) -> Result<ProjectedComponents> {
    if (w.axis() - Vec3::z()).norm() > 1e-12 {
        return Err(Error::InvalidInput(
            "tetrad projection is only available for propagation along the rotation axis".into(),
        ));
    }
    if !omega_z.is_finite() {
        return Err(Error::InvalidInput(format!("rotation rate must be finite, got {omega_z}")));
    }
    let at = Event::new(t0, 0.0, 0.0, z0)?;
    let f = plane_wave_fields(w, &at, k);
    let zero = Complex64::new(0.0, 0.0);
    let (e, b) = (f.e, f.b);
    #[rustfmt::skip]
    let faraday = Matrix4::new(
        zero,  -e.x,  -e.y,  -e.z,
        e.x,   zero,  b.z,   -b.y,
        e.y,   -b.z,  zero,  b.x,
        e.z,   b.y,   -b.x,  zero,
    );
    let legs = rotating_observer_tetrad(omega_z, t0).legs;
    let frame = Matrix4::from_columns(&legs.map(|l: Vector4<f64>| l.map(Complex64::from)));
    let p = frame.transpose() * faraday * frame;
    Ok(ProjectedComponents {
        electric: [p[(0, 1)], p[(0, 2)], p[(0, 3)]],
        magnetic: [p[(2, 3)], p[(3, 1)], p[(1, 2)]],
    })
}

/// Uniformly sampled complex time series.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredSignal {
    samples: Vec<Complex64>,
    dt: f64,
}

impl MeasuredSignal {
    pub fn new(samples: Vec<Complex64>, dt: f64) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(Error::InvalidInput(format!("sample interval must be positive, got {dt}")));
        }
        if samples.len() < MIN_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "need at least {MIN_SAMPLES} samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|s| !s.re.is_finite() || !s.im.is_finite()) {
            return Err(Error::InvalidInput("samples must be finite".into()));
        }
        Ok(Self { samples, dt })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Reads `dt_s,<interval>` on the first line, a `re,im` header, then one
    /// sample per row.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let bad = |msg: String| Error::InvalidInput(format!("signal CSV: {msg}"));
        let mut records = rdr.records();
        let mut next = || -> Result<Option<csv::StringRecord>> {
            records.next().transpose().map_err(|e| bad(e.to_string()))
        };
        let first = next()?.ok_or_else(|| bad("empty file".into()))?;
        if first.len() != 2 || &first[0] != "dt_s" {
            return Err(bad("first line must be `dt_s,<seconds>`".into()));
        }
        let dt: f64 = first[1].parse().map_err(|_| bad(format!("invalid dt_s `{}`", &first[1])))?;
        let header = next()?.ok_or_else(|| bad("missing `re,im` header".into()))?;
        if header.len() != 2 || &header[0] != "re" || &header[1] != "im" {
            return Err(bad("second line must be the header `re,im`".into()));
        }
        let mut samples = Vec::new();
        let mut line = 3;
        while let Some(rec) = next()? {
            if rec.len() != 2 {
                return Err(bad(format!("line {line}: expected 2 columns, got {}", rec.len())));
            }
            let parse = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("line {line}: invalid number `{s}`")));
            samples.push(Complex64::new(parse(&rec[0])?, parse(&rec[1])?));
            line += 1;
        }
        Self::new(samples, dt)
    }

    /// Writes the format read by [`MeasuredSignal::from_csv`], with 17
    /// significant digits.
    pub fn to_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "dt_s,{:.16e}", self.dt)?;
        writeln!(out, "re,im")?;
        for s in &self.samples {
            writeln!(out, "{:.16e},{:.16e}", s.re, s.im)?;
        }
        Ok(())
    }
}

/// `F_0̂1̂` of a tetrad-projected plane wave sampled at `t_j = j·dt` on the
/// axis at height `z0`.
pub fn projected_signal(
    w: &PlaneWave,
    omega_z: f64,
    z0: f64,
    dt: f64,
    count: usize,
    k: &Constants,
) -> Result<MeasuredSignal> {
    let samples = (0..count)
        .map(|j| tetrad_projected_wave(w, omega_z, j as f64 * dt, z0, k).map(|p| p.electric[0]))
        .collect::<Result<Vec<_>>>()?;
    MeasuredSignal::new(samples, dt)
}

/// Frequency estimate with its resolution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrequencyEstimate {
    /// Angular frequency `ω` of the dominant `e^{−iωt}` component [rad/s].
    pub omega: f64,
    /// Angular width of one transform bin, `2π/(N dt)` [rad/s].
    pub bin_width: f64,
}

/// Dominant angular frequency of a signal with time dependence `e^{−iωt}`:
/// Hann window, discrete Fourier transform, and a parabola through the peak
/// bin and its neighbours.
pub fn measured_frequency(sig: &MeasuredSignal) -> Result<FrequencyEstimate> {
    let n = sig.samples.len();
    let mut buf: Vec<Complex64> = sig
        .samples
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let w = 0.5 * (1.0 - (2.0 * std::f64::consts::PI * j as f64 / n as f64).cos());
            s * w
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mag: Vec<f64> = buf.iter().map(|c| c.norm()).collect();
    let (peak, &top) = mag
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("signal is non-empty");
    if top == 0.0 {
        return Err(Error::Sampling("signal has no spectral content".into()));
    }
    let signed = if peak <= n / 2 { peak as isize } else { peak as isize - n as isize };
    if signed.unsigned_abs() + 1 >= n / 2 {
        return Err(Error::Sampling(format!(
            "spectral peak at bin {signed} of {n} sits at the Nyquist edge; the signal is likely aliased"
        )));
    }
    let (a, b, c) = (mag[(peak + n - 1) % n], top, mag[(peak + 1) % n]);
    let denom = a - 2.0 * b + c;
    let delta = if denom == 0.0 { 0.0 } else { 0.5 * (a - c) / denom };
    let duration = n as f64 * sig.dt;
    let frequency = (signed as f64 + delta) / duration;
    let omega = -2.0 * std::f64::consts::PI * frequency;
    if frequency.abs() * duration < MIN_PERIODS {
        return Err(Error::Sampling(format!(
            "record spans {:.3} periods of the dominant frequency, need at least {MIN_PERIODS}",
            frequency.abs() * duration
        )));
    }
    Ok(FrequencyEstimate {
        omega,
        bin_width: 2.0 * std::f64::consts::PI / duration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn k() -> Constants {
        Constants::default()
    }

    #[test]
    fn doppler_cases() {
        let k = k();
        let still = RayState::vacuum(1e15, &Vec3::x(), Vec3::new(1.0, 2.0, 3.0), Vec3::zeros(), None, &k).unwrap();
        assert_eq!(doppler_frequency(&still, &k).unwrap(), 1e15);
        let rot = Vec3::new(0.0, 0.0, 1e6);
        let radial = RayState::vacuum(1e15, &Vec3::x(), Vec3::new(30.0, 0.0, 0.0), rot, None, &k).unwrap();
        let v = 3e7;
        let gamma = 1.0 / (1.0 - v * v / (k.c * k.c)).sqrt();
        assert!((doppler_frequency(&radial, &k).unwrap() - gamma * 1e15).abs() < 1e15 * 1e-15);
        let fast = RayState::vacuum(1e15, &Vec3::x(), Vec3::new(300.0, 0.0, 0.0), rot, None, &k).unwrap();
        assert!(matches!(doppler_frequency(&fast, &k), Err(Error::Superluminal { .. })));
    }

    #[test]
    fn on_axis_energy_matches_helicity_shift() {
        let k = k();
        let rot = Vec3::new(0.0, 0.0, 3e3);
        for h in Helicity::BOTH {
            let s = RayState::vacuum(1e15, &Vec3::z(), Vec3::zeros(), rot, Some(h), &k).unwrap();
            let e = energy_total(&s, &k).unwrap();
            let want = k.hbar * (1e15 - h.sign() * 3e3);
            assert!((e - want).abs() <= 1e-15 * want);
            let spin_term = -rot.dot(&s.spin(&k).unwrap());
            if h == Helicity::Positive {
                assert_eq!(spin_term, -k.hbar * 3e3);
            }
        }
    }

    #[test]
    fn total_energy_needs_helicity() {
        let k = k();
        let s = RayState::vacuum(1e15, &Vec3::z(), Vec3::zeros(), Vec3::z(), None, &k).unwrap();
        assert!(matches!(energy_total(&s, &k), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn helicity_frequency_cases() {
        let k0 = Vec3::new(0.0, 0.0, 2.5);
        let rot = Vec3::new(0.0, 0.0, 7.0);
        let (w, kk) = helicity_frequency(1e6, &k0, &rot, Helicity::Positive).unwrap();
        assert_eq!((w, kk), (1e6 - 7.0, k0));
        let (w, _) = helicity_frequency(1e6, &Vec3::x(), &rot, Helicity::Negative).unwrap();
        assert_eq!(w, 1e6);
    }

    #[test]
    fn sagnac_reference_value() {
        let k = k();
        let omega0 = 2.0 * PI * k.c / 633e-9;
        let phase = sagnac_phase(omega0, &Vec3::new(0.0, 0.0, 7.292e-5), &Vec3::new(0.0, 0.0, 1.0), &k);
        assert!((phase - 9.657_441_958_971e-6).abs() < 1e-17);
    }

    #[test]
    fn earth_spin_rotation_energy() {
        let k = k();
        let omega = 2.0 * PI * 11.6e-6;
        let e = spin_rotation_energy(&Vec3::new(0.0, 0.0, k.hbar), &Vec3::new(0.0, 0.0, omega));
        let ev = -e / crate::constants::ELECTRON_VOLT;
        assert!((ev - 4.797_374_525e-20).abs() < 1e-28);
    }

    #[test]
    fn projection_at_origin_time_is_inertial() {
        let k = Constants::natural();
        let a = Complex64::new(0.7, 0.2);
        for h in Helicity::BOTH {
            let w = PlaneWave::along_z(3.0, a, h).unwrap();
            let p = tetrad_projected_wave(&w, 0.4, 0.0, 0.0, &k).unwrap();
            let s = h.sign();
            assert!((p.electric[0] + a).norm() < 1e-15);
            assert!((p.electric[1] + Complex64::new(0.0, s) * a).norm() < 1e-15);
            assert_eq!(p.electric[2].norm(), 0.0);
            assert!((p.magnetic[0] - Complex64::new(0.0, -s) * a).norm() < 1e-15);
            assert!((p.magnetic[1] - a).norm() < 1e-15);
        }
    }

    #[test]
    fn projection_closed_form() {
        let k = k();
        let (w0, rot, t0, z0) = (2e3, 37.0, 0.0123, 4.0e3);
        let a = Complex64::new(-0.3, 1.1);
        for h in Helicity::BOTH {
            let s = h.sign();
            let w = PlaneWave::along_z(w0, a, h).unwrap();
            let p = tetrad_projected_wave(&w, rot, t0, z0, &k).unwrap();
            let phase = Complex64::from_polar(1.0, -(w0 - s * rot) * t0 + w0 / k.c * z0);
            let e_want = [-a * phase, -a * Complex64::new(0.0, s) * phase, Complex64::new(0.0, 0.0)];
            let b_want = [
                a / k.c * Complex64::new(0.0, -s) * phase,
                a / k.c * phase,
                Complex64::new(0.0, 0.0),
            ];
            for i in 0..3 {
                assert!((p.electric[i] - e_want[i]).norm() < 1e-12, "{h:?} E{i}");
                assert!((p.magnetic[i] - b_want[i]).norm() < 1e-12 / k.c, "{h:?} B{i}");
            }
        }
    }

    #[test]
    fn off_axis_propagation_rejected() {
        let w = PlaneWave::new(1.0, Complex64::new(1.0, 0.0), Helicity::Positive, Vec3::x()).unwrap();
        assert!(tetrad_projected_wave(&w, 0.1, 0.0, 0.0, &k()).is_err());
    }

    #[test]
    fn pure_tone_frequency() {
        let omega = 2.0 * PI * 37.3;
        let dt = 1.0 / 500.0;
        let samples = (0..700).map(|j| Complex64::from_polar(1.0, -omega * j as f64 * dt)).collect();
        let est = measured_frequency(&MeasuredSignal::new(samples, dt).unwrap()).unwrap();
        assert!((est.omega - omega).abs() < 0.5 * est.bin_width);
    }

    #[test]
    fn rotating_observer_sees_shifted_frequency() {
        let k = Constants::natural();
        let (w0, rot) = (2.0 * PI * 100.0, 2.0 * PI * 1.0);
        for h in Helicity::BOTH {
            let w = PlaneWave::along_z(w0, Complex64::new(1.0, 0.0), h).unwrap();
            let sig = projected_signal(&w, rot, 0.0, 1.0 / 1000.0, 2000, &k).unwrap();
            let est = measured_frequency(&sig).unwrap();
            let want = w0 - h.sign() * rot;
            assert!((est.omega - want).abs() < 0.5 * est.bin_width, "{h:?}: {}", est.omega);
        }
    }

    #[test]
    fn aliased_and_short_signals_rejected() {
        let dt = 1.0;
        let nyquist: Vec<_> = (0..64).map(|j| Complex64::from_polar(1.0, PI * j as f64)).collect();
        assert!(matches!(
            measured_frequency(&MeasuredSignal::new(nyquist, dt).unwrap()),
            Err(Error::Sampling(_))
        ));
        let slow: Vec<_> = (0..64).map(|j| Complex64::from_polar(1.0, -0.05 * j as f64)).collect();
        assert!(matches!(
            measured_frequency(&MeasuredSignal::new(slow, dt).unwrap()),
            Err(Error::Sampling(_))
        ));
        assert!(MeasuredSignal::new(vec![Complex64::new(1.0, 0.0); 15], dt).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let samples: Vec<_> = (0..20).map(|j| Complex64::new(j as f64 * 0.1, -(j as f64).sqrt())).collect();
        let sig = MeasuredSignal::new(samples, 1.25e-3).unwrap();
        let mut buf = Vec::new();
        sig.to_csv(&mut buf).unwrap();
        let back = MeasuredSignal::from_csv(buf.as_slice()).unwrap();
        assert_eq!(back, sig);
        assert!(MeasuredSignal::from_csv("re,im\n1,2\n".as_bytes()).is_err());
        assert!(MeasuredSignal::from_csv("dt_s,1e-3\nre,im\n1,x\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn sagnac_linear_and_helicity_free(w in 1.0f64..1e16, o in prop::array::uniform3(-1.0f64..1.0),
                                           a in prop::array::uniform3(-10.0f64..10.0), s in 0.1f64..10.0) {
            let k = k();
            let (o, a) = (Vec3::from(o), Vec3::from(a));
            let base = sagnac_phase(w, &o, &a, &k);
            let tol = 1e-14 * (4.0 * w * o.norm() * a.norm() / (k.c * k.c));
            prop_assert!((sagnac_phase(s * w, &o, &a, &k) - s * base).abs() <= s * tol);
            prop_assert!((sagnac_phase(w, &(o * s), &a, &k) - s * base).abs() <= s * tol);
            prop_assert!((sagnac_phase(w, &o, &(a * s), &k) - s * base).abs() <= s * tol);
            let in_plane = o - a * (o.dot(&a) / a.norm_squared());
            prop_assert!(sagnac_phase(w, &in_plane, &a, &k).abs() <= tol);
        }

        #[test]
        fn spin_couplings_flip_with_helicity(kv in prop::array::uniform3(-5.0f64..5.0),
                                             o in prop::array::uniform3(-1e3f64..1e3)) {
            let k = k();
            let (kv, o) = (Vec3::from(kv), Vec3::from(o));
            prop_assume!(kv.norm() > 1e-3);
            let sp = photon_spin(&kv, Helicity::Positive, &k);
            let sm = photon_spin(&kv, Helicity::Negative, &k);
            prop_assert_eq!(spin_rotation_energy(&sp, &o), -spin_rotation_energy(&sm, &o));
            let (wp, _) = helicity_frequency(1e7, &kv, &o, Helicity::Positive).unwrap();
            let (wm, _) = helicity_frequency(1e7, &kv, &o, Helicity::Negative).unwrap();
            prop_assert!(((wp - 1e7) + (wm - 1e7)).abs() <= 1e-9);
        }

        #[test]
        fn energy_reduces_to_doppler_without_spin_coupling(r in prop::array::uniform3(-1e3f64..1e3),
                                                          dir in prop::array::uniform3(-1.0f64..1.0),
                                                          wz in -1e3f64..1e3) {
            let k = k();
            let dir = Vec3::from(dir);
            prop_assume!(dir.norm() > 1e-3);
            // Rotation perpendicular to the propagation direction.
            let perp = dir.cross(&Vec3::new(0.3, -0.7, 0.2));
            prop_assume!(perp.norm() > 1e-3);
            let rot = perp.normalize() * wz;
            let s = RayState::vacuum(1e15, &dir, Vec3::from(r), rot, Some(Helicity::Positive), &k).unwrap();
            let e = energy_total(&s, &k).unwrap();
            let d = k.hbar * doppler_frequency(&s, &k).unwrap();
            prop_assert!((e - d).abs() <= 1e-12 * d.abs());
            prop_assert!((doppler_energy(&s, &k).unwrap() - d).abs() <= 1e-12 * d.abs());
        }
    }
}
