//! Small one-dimensional helpers shared by the refinement steps.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, Schur};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Chebyshev extreme points `cos(πj/(m−1))`, `j = 0..m`, mapped to `[lo, hi]`.
/// Ordered descending, endpoints included exactly.
pub fn cheb_grid(m: usize, lo: f64, hi: f64) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => {
            let mid = 0.5 * (lo + hi);
            let half = 0.5 * (hi - lo);
            let mut g: Vec<f64> = (0..m)
                .map(|j| mid + half * (PI * j as f64 / (m - 1) as f64).cos())
                .collect();
            g[0] = hi;
            g[m - 1] = lo;
            g
        }
    }
}

/// Root of `f` on `[a, b]` given a sign change, by bisection to full precision.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a.min(b) || m >= a.max(b) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Golden-section search for a local maximum of `f` on `[a, b]`.
/// Returns the best point seen, including the bracket ends.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut best = (lo, f(lo));
    let fh = f(hi);
    if fh > best.1 {
        best = (hi, fh);
    }
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    for (x, v) in [(x1, f1), (x2, f2)] {
        if v > best.1 {
            best = (x, v);
        }
    }
    best
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Eigenvalues of a companion-type matrix. Shifted QR is capped; when it
/// stalls (it can on root sets symmetric under `z ↦ −z`), the roots are
/// found by Aberth iteration on `eval`, which returns `(p(z), p′(z))`.
pub fn companion_roots<F>(m: DMatrix<f64>, eval: F, radius: f64) -> Vec<Complex<f64>>
where
    F: Fn(Complex<f64>) -> (Complex<f64>, Complex<f64>),
{
    let d = m.nrows();
    match Schur::try_new(m, f64::EPSILON, 200 * d.max(1)) {
        Some(s) => s.complex_eigenvalues().iter().copied().collect(),
        None => aberth(d, eval, radius),
    }
}

/// Aberth–Ehrlich simultaneous iteration for the `d` roots of `p`.
pub fn aberth<F>(d: usize, eval: F, radius: f64) -> Vec<Complex<f64>>
where
    F: Fn(Complex<f64>) -> (Complex<f64>, Complex<f64>),
{
    let mut z: Vec<Complex<f64>> = (0..d)
        .map(|k| Complex::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + 0.4))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..1000 {
        for k in 0..d {
            if done[k] {
                continue;
            }
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                done[k] = true;
                continue;
            }
            let w = p / dp;
            let s: Complex<f64> = (0..d)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = w / (Complex::new(1.0, 0.0) - w * s);
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[k] -= step;
            done[k] = step.norm() <= 4.0 * f64::EPSILON * (1.0 + z[k].norm());
        }
        if done.iter().all(|&b| b) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aberth_finds_symmetric_quartic_roots() {
        // z⁴ + z² + 1: primitive 6th and 3rd roots of unity
        let eval = |z: Complex<f64>| (z.powi(4) + z * z + 1.0, 4.0 * z.powi(3) + 2.0 * z);
        let roots = aberth(4, eval, 1.0);
        for r in &roots {
            assert!(eval(*r).0.norm() < 1e-14, "{r}");
            assert!((r.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn grid_is_descending_with_exact_ends() {
        let g = cheb_grid(5, -1.0, 1.0);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[4], -1.0);
        assert!(g.windows(2).all(|w| w[0] > w[1]));
        assert!(g[2].abs() < 1e-16);
    }

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, v) = golden_max(|x| 1.0 - (x - 0.3) * (x - 0.3), -1.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn slope_of_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * x - 1.0).collect();
        assert!((ls_slope(&xs, &ys) - 2.5).abs() < 1e-14);
    }
}
