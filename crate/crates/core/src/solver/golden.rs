//! Golden-section search for the minimum of a unimodal function.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GoldenResult {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Shrinks `[lo, hi]` until its width falls below `rel_tol·|x|` (or
/// `rel_tol` when the bracket straddles zero), or `max_iter` is hit.
pub fn golden_section_minimize<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64, max_iter: usize) -> GoldenResult
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let mid = 0.5 * (a + b);
        if b - a <= rel_tol * mid.abs().max(f64::MIN_POSITIVE) || c >= d {
            converged = true;
            break;
        }
        iterations += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let (x, value) = if fc <= fd { (c, fc) } else { (d, fd) };
    GoldenResult { x, value, iterations, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_minimum() {
        let r = golden_section_minimize(|x| (x - 1.234_567).powi(2) + 3.0, -10.0, 10.0, 1e-12, 500);
        assert!(r.converged);
        assert!((r.x - 1.234_567).abs() < 1e-6);
        assert!((r.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn finds_kink_minimum_tightly() {
        let target = 5.003_461_428_472_627e6;
        let r = golden_section_minimize(|x| (x - target).abs(), target * 0.999, target * 1.0004, 1e-12, 500);
        assert!(r.converged);
        assert!((r.x - target).abs() / target < 2e-12);
    }

    #[test]
    fn monotone_function_ends_at_edge() {
        let r = golden_section_minimize(|x| x, 2.0, 3.0, 1e-10, 500);
        assert!((r.x - 2.0).abs() < 1e-9);
    }
}
