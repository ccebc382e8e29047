//! Uniform Cartesian grids and finite-difference residual norms.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{rs_constitutive, CVec3, Helicity};
use crate::geometry::Vec3;
use crate::optics::ConstitutiveTensors;

/// Fewer points than this per axis leaves no room for an interior.
pub const MIN_POINTS: usize = 5;

/// Fraction of the light-cylinder radius `c/Ω` a residual grid may reach.
pub const ROTATION_GRID_LIMIT: f64 = 0.1;

/// Box `center ± half_extent` sampled with `points[a]` nodes along axis `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    center: Vec3,
    half_extent: Vec3,
    points: [usize; 3],
}

impl GridSpec {
    pub fn new(center: Vec3, half_extent: Vec3, points: [usize; 3]) -> Result<Self> {
        if points.iter().any(|&n| n < MIN_POINTS) {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_POINTS} points per axis, got {points:?}"
            )));
        }
        if center.iter().chain(half_extent.iter()).any(|v| !v.is_finite())
            || half_extent.iter().any(|&v| v <= 0.0)
        {
            return Err(Error::InvalidGrid(format!(
                "half extents must be positive and finite, got {:?}",
                half_extent.as_slice()
            )));
        }
        Ok(Self { center, half_extent, points })
    }

    pub fn cube(center: Vec3, half_side: f64, n: usize) -> Result<Self> {
        Self::new(center, Vec3::repeat(half_side), [n; 3])
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    pub fn half_extent(&self) -> Vec3 {
        self.half_extent
    }

    pub fn shape(&self) -> [usize; 3] {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self) -> Vec3 {
        Vec3::new(
            2.0 * self.half_extent.x / (self.points[0] - 1) as f64,
            2.0 * self.half_extent.y / (self.points[1] - 1) as f64,
            2.0 * self.half_extent.z / (self.points[2] - 1) as f64,
        )
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.points[0] * (j + self.points[1] * k)
    }

    fn unindex(&self, idx: usize) -> [usize; 3] {
        let i = idx % self.points[0];
        let j = (idx / self.points[0]) % self.points[1];
        let k = idx / (self.points[0] * self.points[1]);
        [i, j, k]
    }

    pub fn position(&self, i: usize, j: usize, k: usize) -> Vec3 {
        let h = self.spacing();
        let lo = self.center - self.half_extent;
        Vec3::new(lo.x + i as f64 * h.x, lo.y + j as f64 * h.y, lo.z + k as f64 * h.z)
    }

    /// All nodes, x fastest.
    pub fn points(&self) -> impl Iterator<Item = Vec3> + '_ {
        (0..self.len()).map(move |idx| {
            let [i, j, k] = self.unindex(idx);
            self.position(i, j, k)
        })
    }

    fn is_interior(&self, [i, j, k]: [usize; 3]) -> bool {
        let [nx, ny, nz] = self.points;
        (1..nx - 1).contains(&i) && (1..ny - 1).contains(&j) && (1..nz - 1).contains(&k)
    }

    /// Same box with every other node dropped. Only defined for odd point
    /// counts, so the coarse nodes are a subset of these nodes.
    pub fn coarsened(&self) -> Option<Self> {
        if self.points.iter().any(|n| n % 2 == 0) {
            return None;
        }
        let points = self.points.map(|n| n.div_ceil(2));
        Self::new(self.center, self.half_extent, points).ok()
    }

    /// Same box with twice the resolution.
    pub fn refined(&self) -> Self {
        Self {
            points: self.points.map(|n| 2 * n - 1),
            ..*self
        }
    }

    /// Largest distance of any node from the z axis.
    pub fn max_cylindrical_radius(&self) -> f64 {
        let x = (self.center.x - self.half_extent.x).abs().max((self.center.x + self.half_extent.x).abs());
        let y = (self.center.y - self.half_extent.y).abs().max((self.center.y + self.half_extent.y).abs());
        x.hypot(y)
    }

    /// Rejects grids reaching beyond `0.1 c/|Ω|` from the rotation axis.
    pub fn check_rotation_limit(&self, omega_z: f64, c: f64) -> Result<()> {
        if omega_z == 0.0 {
            return Ok(());
        }
        let limit = ROTATION_GRID_LIMIT * c / omega_z.abs();
        let rho = self.max_cylindrical_radius();
        if rho >= limit {
            Err(Error::InvalidGrid(format!(
                "grid reaches rho = {rho:.6e} m, beyond {ROTATION_GRID_LIMIT} c/Omega = {limit:.6e} m"
            )))
        } else {
            Ok(())
        }
    }

    fn sample<T, F>(&self, f: &F) -> Vec<T>
    where
        T: Send,
        F: Fn(&Vec3) -> T + Sync,
    {
        (0..self.len())
            .into_par_iter()
            .map(|idx| {
                let [i, j, k] = self.unindex(idx);
                f(&self.position(i, j, k))
            })
            .collect()
    }

    /// Derivative of sampled values along `axis` at node `at`: second-order
    /// central differences inside, second-order one-sided at the faces.
    fn derivative(&self, values: &[CVec3], axis: usize, at: [usize; 3]) -> CVec3 {
        let n = self.points[axis];
        let h = self.spacing()[axis];
        let shifted = |offset: isize| {
            let mut p = at;
            p[axis] = (at[axis] as isize + offset) as usize;
            values[self.index(p[0], p[1], p[2])]
        };
        let (three, four) = (Complex64::from(3.0), Complex64::from(4.0));
        let diff = match at[axis] {
            0 => -shifted(0) * three + shifted(1) * four - shifted(2),
            i if i == n - 1 => shifted(0) * three - shifted(-1) * four + shifted(-2),
            _ => shifted(1) - shifted(-1),
        };
        diff / Complex64::from(2.0 * h)
    }

    /// `[∂_x F, ∂_y F, ∂_z F]` at a node.
    fn jacobian(&self, values: &[CVec3], at: [usize; 3]) -> [CVec3; 3] {
        [
            self.derivative(values, 0, at),
            self.derivative(values, 1, at),
            self.derivative(values, 2, at),
        ]
    }
}

fn curl(d: &[CVec3; 3]) -> CVec3 {
    CVec3::new(d[1].z - d[2].y, d[2].x - d[0].z, d[0].y - d[1].x)
}

/// Norms of a residual evaluated on the interior nodes of a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResidualReport {
    /// Largest residual magnitude.
    pub max_norm: f64,
    /// Root-mean-square residual magnitude (discrete L2 norm normalized by
    /// node count, so grids of different resolution compare directly).
    pub l2_norm: f64,
    /// `log(‖R_2h‖/‖R_h‖)/log 2` over the nodes shared with the coarsened
    /// grid; `None` when the grid cannot be coarsened.
    pub order_estimate: Option<f64>,
    pub spacing: Vec3,
    pub shape: [usize; 3],
}

/// Residual magnitudes on every node; `None` on boundary nodes.
fn residual_magnitudes<S, R>(grid: &GridSpec, sample: &S, residual: &R) -> Vec<Option<f64>>
where
    S: Fn(&Vec3) -> CVec3 + Sync,
    R: Fn(&Vec3, &CVec3, &[CVec3; 3]) -> f64 + Sync,
{
    let values = grid.sample(sample);
    (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let at = grid.unindex(idx);
            grid.is_interior(at).then(|| {
                let r = grid.position(at[0], at[1], at[2]);
                residual(&r, &values[idx], &grid.jacobian(&values, at))
            })
        })
        .collect()
}

fn rms(values: impl Iterator<Item = f64>) -> f64 {
    let (sum, count) = values.fold((0.0, 0usize), |(s, n), v| (s + v * v, n + 1));
    (sum / count as f64).sqrt()
}

fn report<S, R>(grid: &GridSpec, sample: &S, residual: &R) -> ResidualReport
where
    S: Fn(&Vec3) -> CVec3 + Sync,
    R: Fn(&Vec3, &CVec3, &[CVec3; 3]) -> f64 + Sync,
{
    let fine = residual_magnitudes(grid, sample, residual);
    let max_norm = fine.iter().flatten().fold(0.0, |m: f64, &v| m.max(v));
    let l2_norm = rms(fine.iter().flatten().copied());
    let order_estimate = grid.coarsened().map(|coarse| {
        let rc = residual_magnitudes(&coarse, sample, residual);
        let mut shared = Vec::new();
        let mut coarse_vals = Vec::new();
        for (idx, v) in rc.iter().enumerate() {
            if let Some(v) = v {
                let [i, j, k] = coarse.unindex(idx);
                shared.push(fine[grid.index(2 * i, 2 * j, 2 * k)].expect("coarse interior is fine interior"));
                coarse_vals.push(*v);
            }
        }
        (rms(coarse_vals.into_iter()) / rms(shared.into_iter())).log2()
    });
    ResidualReport {
        max_norm,
        l2_norm,
        order_estimate,
        spacing: grid.spacing(),
        shape: grid.shape(),
    }
}

/// Residual of the time-harmonic helicity equation `∇ × F± = ±ω Z±(F±)`,
/// with `Z±` from the local constitutive tensors:
/// `R = ∇ × F± ∓ ω ξF± − iω G × F±`.
pub fn curl_residual<F, C>(
    field: &F,
    helicity: Helicity,
    omega: f64,
    constitutive: &C,
    grid: &GridSpec,
) -> Result<ResidualReport>
where
    F: Fn(&Vec3) -> CVec3 + Sync,
    C: Fn(&Vec3) -> ConstitutiveTensors + Sync,
{
    let s = helicity.sign();
    let residual = |r: &Vec3, f: &CVec3, d: &[CVec3; 3]| {
        let z = rs_constitutive(f, helicity, &constitutive(r));
        (curl(d) - z * Complex64::from(s * omega)).norm()
    };
    Ok(report(grid, field, &residual))
}

/// Finite-difference `∇·Z` norms.
pub fn divergence_residual<F>(field: &F, grid: &GridSpec) -> Result<ResidualReport>
where
    F: Fn(&Vec3) -> CVec3 + Sync,
{
    let residual = |_: &Vec3, _: &CVec3, d: &[CVec3; 3]| (d[0].x + d[1].y + d[2].z).norm();
    Ok(report(grid, field, &residual))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::cube(Vec3::zeros(), 1.0, 4).is_err());
        assert!(GridSpec::cube(Vec3::zeros(), 0.0, 9).is_err());
        assert!(GridSpec::cube(Vec3::zeros(), f64::NAN, 9).is_err());
        let g = GridSpec::cube(Vec3::zeros(), 1.0, 9).unwrap();
        assert_eq!(g.len(), 729);
        assert_eq!(g.spacing(), Vec3::repeat(0.25));
        assert_eq!(g.position(0, 0, 0), Vec3::repeat(-1.0));
        assert_eq!(g.position(8, 8, 8), Vec3::repeat(1.0));
        assert_eq!(g.coarsened().unwrap().shape(), [5, 5, 5]);
        assert!(g.coarsened().unwrap().coarsened().is_none());
        assert_eq!(g.refined().shape(), [17, 17, 17]);
        assert!(GridSpec::cube(Vec3::zeros(), 1.0, 10).unwrap().coarsened().is_none());
    }

    #[test]
    fn rotation_limit() {
        let g = GridSpec::new(Vec3::new(0.0, 0.0, 5.0), Vec3::new(3.0, 4.0, 1.0), [5; 3]).unwrap();
        assert_eq!(g.max_cylindrical_radius(), 5.0);
        assert!(g.check_rotation_limit(0.0, 1.0).is_ok());
        assert!(g.check_rotation_limit(0.019, 1.0).is_ok());
        assert!(matches!(g.check_rotation_limit(0.021, 1.0), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn derivatives_exact_for_quadratics() {
        // Second-order stencils, central and one-sided, differentiate
        // quadratics exactly.
        let g = GridSpec::new(Vec3::new(0.3, -0.2, 0.1), Vec3::new(1.0, 0.7, 0.4), [7, 6, 5]).unwrap();
        let f = |r: &Vec3| {
            CVec3::new(
                Complex64::new(r.x * r.x + 2.0 * r.y, r.z * r.z),
                Complex64::new(r.x * r.y, -r.z),
                Complex64::new(r.y * r.y - r.x * r.z, 0.0),
            )
        };
        let values = g.sample(&f);
        for idx in 0..g.len() {
            let at = g.unindex(idx);
            let r = g.position(at[0], at[1], at[2]);
            let d = g.jacobian(&values, at);
            let want_div = Complex64::new(2.0 * r.x + r.x - r.x, 0.0);
            let want_curl = CVec3::new(
                Complex64::new(2.0 * r.y, 1.0),
                Complex64::new(r.z * 0.0 - (-r.z), 2.0 * r.z),
                Complex64::new(r.y - 2.0, 0.0),
            );
            assert!((d[0].x + d[1].y + d[2].z - want_div).norm() < 1e-12);
            assert!((curl(&d) - want_curl).norm() < 1e-12, "at {at:?}: {:?}", curl(&d));
        }
    }
}
