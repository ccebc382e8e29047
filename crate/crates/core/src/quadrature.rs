//! Adaptive 15-point Gauss–Kronrod quadrature.

use crate::error::{Error, Result};

const KRONROD_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const KRONROD_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

/// Weights of the embedded 7-point Gauss rule, at the odd Kronrod nodes.
const GAUSS_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Subdivision depth at which a panel is declared non-convergent.
pub const MAX_DEPTH: usize = 48;

/// Integral estimate and an upper bound on its absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let center = f(mid);
    let mut kronrod = center * KRONROD_WEIGHTS[7];
    let mut gauss = center * GAUSS_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * KRONROD_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += KRONROD_WEIGHTS[i] * pair;
        if i % 2 == 1 {
            gauss += GAUSS_WEIGHTS[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// `∫_a^b f` to relative accuracy `rel_tol`, bisecting panels whose
/// Kronrod–Gauss difference is too large.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, rel_tol: f64) -> Result<Integral> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Quadrature(format!("non-finite interval [{a}, {b}]")));
    }
    if a == b {
        return Ok(Integral { value: 0.0, error: 0.0, evaluations: 0 });
    }
    let (whole, _) = panel(&mut f, a, b);
    let mut evaluations = 15;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut stack = vec![(a, b, 0usize)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = panel(&mut f, lo, hi);
        evaluations += 15;
        if !v.is_finite() {
            return Err(Error::Quadrature(format!("integrand not finite on [{lo}, {hi}]")));
        }
        let share = (hi - lo).abs() / (b - a).abs();
        if e <= rel_tol * whole.abs() * share || e <= f64::EPSILON * v.abs() {
            value += v;
            error += e;
        } else if depth >= MAX_DEPTH {
            return Err(Error::Quadrature(format!(
                "no convergence on [{lo}, {hi}] after {depth} bisections"
            )));
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(Integral { value, error, evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_exact() {
        let r = integrate(|x| 3.0 * x.powi(10) - x + 2.0, -1.0, 2.0, 1e-14).unwrap();
        let want = 3.0 * (2f64.powi(11) + 1.0) / 11.0 - 1.5 + 6.0;
        assert!((r.value - want).abs() < 1e-12 * want);
    }

    #[test]
    fn smooth_and_peaked() {
        let r = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
        let r = integrate(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10).unwrap();
        let want = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!((r.value - want).abs() < 1e-9 * want);
        let r = integrate(|x| x.powi(-3), 1.0, 100.0, 1e-12).unwrap();
        assert!((r.value - 0.5 * (1.0 - 1e-4)).abs() < 1e-12);
    }

    #[test]
    fn reversed_and_degenerate() {
        let f = integrate(|x| x * x, 0.0, 3.0, 1e-12).unwrap().value;
        let r = integrate(|x| x * x, 3.0, 0.0, 1e-12).unwrap().value;
        assert!((f + r).abs() < 1e-13);
        assert_eq!(integrate(|x| x, 1.0, 1.0, 1e-12).unwrap().value, 0.0);
    }

    #[test]
    fn singular_integrand_fails() {
        assert!(integrate(|x| 1.0 / x, 0.0, 1.0, 1e-12).is_err());
    }
}
