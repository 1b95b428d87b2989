//! Polynomials in the Chebyshev basis `{T_0, T_1, …}` on `[−1, 1]`.
//!
//! Everything downstream (snakes, Lagrange bases, `τ_n(·, t)`) is stored as a
//! [`ChebPoly`]; values are immutable and all operations return new values.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::numeric::{bisect, cheb_grid, companion_roots};

/// Trailing coefficients below this fraction of the largest one are dropped.
pub const TRIM_TOL: f64 = 1e-13;

/// Two roots closer than `CLUSTER_RADIUS · (1 + |x|)` are merged.
pub const CLUSTER_RADIUS: f64 = 1e-7;

/// Eigenvalues with `|Im z| ≤ IMAG_TOL · (1 + |z|)` are treated as real.
const IMAG_TOL: f64 = 1e-6;

/// Slack around `[−1, 1]` when collecting roots.
const ROOT_EPS: f64 = 1e-8;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { lo: -1.0, hi: 1.0 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidArgument(format!(
                "interval [{lo}, {hi}] has lo > hi"
            )));
        }
        Ok(Interval { lo, hi })
    }
}

/// A real root with its clustered multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub x: f64,
    pub multiplicity: usize,
}

/// `Σ c_j T_j(x)`. The coefficient vector is never empty and its last entry is
/// nonzero unless the polynomial is the constant zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ChebPoly {
    coeffs: Vec<f64>,
}

impl ChebPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        let max = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
        while coeffs.len() > 1 && coeffs.last().unwrap().abs() <= TRIM_TOL * max {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        if coeffs.len() == 1 && coeffs[0].abs() == 0.0 {
            coeffs[0] = 0.0;
        }
        ChebPoly { coeffs }
    }

    pub fn zero() -> Self {
        ChebPoly { coeffs: vec![0.0] }
    }

    pub fn constant(c: f64) -> Self {
        ChebPoly::new(vec![c])
    }

    /// The basis element `T_n`.
    pub fn basis(n: usize) -> Self {
        let mut c = vec![0.0; n + 1];
        c[n] = 1.0;
        ChebPoly { coeffs: c }
    }

    /// `Σ a_i T_{offset+i}`.
    pub fn shifted(offset: usize, a: &[f64]) -> Self {
        let mut c = vec![0.0; offset + a.len()];
        c[offset..].copy_from_slice(a);
        ChebPoly::new(c)
    }

    /// Monic-free product `Π (x − r_i)`.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(ChebPoly::constant(1.0), |p, &r| {
            let xp = p.mul_x();
            &xp - &p.scale(r)
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn l1_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Clenshaw recurrence; valid for any real `x`.
    pub fn eval(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        let n = c.len();
        if n == 1 {
            return c[0];
        }
        let two_x = 2.0 * x;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &ck in c[1..].iter().rev() {
            let b0 = two_x * b1 - b2 + ck;
            b2 = b1;
            b1 = b0;
        }
        x * b1 - b2 + c[0]
    }

    pub fn derivative(&self) -> ChebPoly {
        let c = &self.coeffs;
        let d = c.len() - 1;
        if d == 0 {
            return ChebPoly::zero();
        }
        // b_{k-1} = b_{k+1} + 2k c_k, with b_0 halved at the end.
        let mut b = vec![0.0; d + 1];
        for k in (1..=d).rev() {
            let upper = if k + 1 <= d { b[k + 1] } else { 0.0 };
            b[k - 1] = upper + 2.0 * k as f64 * c[k];
        }
        b[0] *= 0.5;
        b.truncate(d);
        ChebPoly::new(b)
    }

    pub fn nth_derivative(&self, k: usize) -> ChebPoly {
        (0..k).fold(self.clone(), |p, _| p.derivative())
    }

    /// Product via `T_i T_j = ½ (T_{i+j} + T_{|i−j|})`.
    pub fn multiply(&self, other: &ChebPoly) -> ChebPoly {
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut out = vec![0.0; a.len() + b.len() - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0.0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let h = 0.5 * ai * bj;
                out[i + j] += h;
                out[i.abs_diff(j)] += h;
            }
        }
        ChebPoly::new(out)
    }

    pub fn scale(&self, s: f64) -> ChebPoly {
        ChebPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// `x · p(x)`.
    pub fn mul_x(&self) -> ChebPoly {
        let c = &self.coeffs;
        let mut out = vec![0.0; c.len() + 1];
        out[1] += c[0];
        for (j, &cj) in c.iter().enumerate().skip(1) {
            out[j + 1] += 0.5 * cj;
            out[j - 1] += 0.5 * cj;
        }
        ChebPoly::new(out)
    }

    /// Synthetic division `p(x) = (x − a) q(x) + r`; the remainder equals `p(a)`.
    pub fn divide_linear(&self, a: f64) -> (ChebPoly, f64) {
        let c = &self.coeffs;
        let d = c.len() - 1;
        if d == 0 {
            return (ChebPoly::zero(), c[0]);
        }
        let mut b = vec![0.0; d + 2];
        if d == 1 {
            b[0] = c[1];
        } else {
            b[d - 1] = 2.0 * c[d];
            for k in (2..d).rev() {
                b[k - 1] = 2.0 * (c[k] - 0.5 * b[k + 1] + a * b[k]);
            }
            b[0] = c[1] - 0.5 * b[2] + a * b[1];
        }
        let r = c[0] - 0.5 * b[1] + a * b[0];
        b.truncate(d);
        (ChebPoly::new(b), r)
    }

    /// Monomial coefficients `m_0 + m_1 x + …` to the Chebyshev basis (Horner in `x`).
    pub fn from_monomial(m: &[f64]) -> ChebPoly {
        if m.is_empty() {
            return ChebPoly::zero();
        }
        let mut p = ChebPoly::constant(*m.last().unwrap());
        for &mi in m.iter().rev().skip(1) {
            let mut q = p.mul_x().coeffs;
            q[0] += mi;
            p = ChebPoly::new(q);
        }
        p
    }

    pub fn to_monomial(&self) -> Vec<f64> {
        let d = self.degree();
        let mut out = vec![0.0; d + 1];
        let mut prev = vec![0.0; d + 1];
        let mut cur = vec![0.0; d + 1];
        prev[0] = 1.0;
        out[0] += self.coeffs[0];
        if d >= 1 {
            cur[1] = 1.0;
        }
        for j in 1..=d {
            for i in 0..=d {
                out[i] += self.coeffs[j] * cur[i];
            }
            if j < d {
                let mut next = vec![0.0; d + 1];
                for i in 0..d {
                    next[i + 1] += 2.0 * cur[i];
                }
                for i in 0..=d {
                    next[i] -= prev[i];
                }
                prev = std::mem::replace(&mut cur, next);
            }
        }
        out
    }

    /// Degree-`n` interpolant of values at `cos(πj/n)`, `j = 0..=n` (DCT-I).
    pub fn interpolate_extrema(values: &[f64]) -> ChebPoly {
        let n = values.len() - 1;
        if n == 0 {
            return ChebPoly::constant(values[0]);
        }
        let cos_tab: Vec<f64> = (0..2 * n)
            .map(|m| (PI * m as f64 / n as f64).cos())
            .collect();
        let mut c = vec![0.0; n + 1];
        for (k, ck) in c.iter_mut().enumerate() {
            let mut s = 0.0;
            for (j, &v) in values.iter().enumerate() {
                let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                s += w * v * cos_tab[(j * k) % (2 * n)];
            }
            *ck = 2.0 * s / n as f64;
        }
        c[0] *= 0.5;
        c[n] *= 0.5;
        ChebPoly::new(c)
    }

    /// Interpolant of `f` at the `n + 1` Chebyshev extreme points.
    pub fn interpolate_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> ChebPoly {
        let vals: Vec<f64> = cheb_grid(n + 1, -1.0, 1.0).into_iter().map(f).collect();
        ChebPoly::interpolate_extrema(&vals)
    }

    /// Real roots in `[−1−ε, 1+ε]`, clustered, sorted descending.
    pub fn roots(&self) -> Result<Vec<Root>> {
        self.real_roots_in(-1.0 - ROOT_EPS, 1.0 + ROOT_EPS)
    }

    /// Real roots in `[lo, hi]` from the colleague-matrix eigenvalues,
    /// clustered with radius [`CLUSTER_RADIUS`]; simple roots are polished by Newton.
    pub fn real_roots_in(&self, lo: f64, hi: f64) -> Result<Vec<Root>> {
        let d = self.degree();
        if d == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let c = &self.coeffs;
        let mut cand: Vec<f64> = if d == 1 {
            vec![-c[0] / c[1]]
        } else {
            let lead = c[d];
            let mut m = DMatrix::<f64>::zeros(d, d);
            m[(0, 1)] = 1.0;
            for j in 1..d - 1 {
                m[(j, j - 1)] = 0.5;
                m[(j, j + 1)] = 0.5;
            }
            m[(d - 1, d - 2)] += 0.5;
            for j in 0..d {
                m[(d - 1, j)] -= c[j] / (2.0 * lead);
            }
            let dp = self.derivative();
            let eval = |z| (clenshaw_complex(c, z), clenshaw_complex(dp.coeffs(), z));
            companion_roots(m, eval, 1.0)
                .iter()
                .filter(|z| z.im.abs() <= IMAG_TOL * (1.0 + z.norm()))
                .map(|z| z.re)
                .collect()
        };
        cand.sort_by(|a, b| b.total_cmp(a));

        let mut clusters: Vec<Vec<f64>> = Vec::new();
        for x in cand {
            match clusters.last_mut() {
                Some(cl) if (cl[0] - x).abs() <= CLUSTER_RADIUS * (1.0 + x.abs()) => cl.push(x),
                _ => clusters.push(vec![x]),
            }
        }

        let dp = self.derivative();
        let mut out = Vec::with_capacity(clusters.len());
        for cl in clusters {
            let mut x = cl.iter().sum::<f64>() / cl.len() as f64;
            if cl.len() == 1 {
                x = self.newton_polish(&dp, x);
            }
            if x >= lo && x <= hi {
                out.push(Root {
                    x,
                    multiplicity: cl.len(),
                });
            }
        }
        out.sort_by(|a, b| b.x.total_cmp(&a.x));
        Ok(out)
    }

    fn newton_polish(&self, dp: &ChebPoly, x0: f64) -> f64 {
        let mut best = (x0, self.eval(x0).abs());
        let mut x = x0;
        for _ in 0..8 {
            let d = dp.eval(x);
            if d == 0.0 {
                break;
            }
            x -= self.eval(x) / d;
            let v = self.eval(x).abs();
            if !(v < best.1) {
                break;
            }
            best = (x, v);
            if v == 0.0 {
                break;
            }
        }
        best.0
    }

    /// Maximum of `sign · p` on `iv` with its location: dense Chebyshev grid of
    /// `16 (d + 1)` points, then the top brackets are refined at roots of `p′`.
    /// Ties go to the larger `x`.
    fn peak(&self, iv: Interval, sign: f64) -> (f64, f64) {
        let d = self.degree();
        if d == 0 || iv.lo == iv.hi {
            return (sign * self.eval(iv.hi), iv.hi);
        }
        let m = 16 * (d + 1);
        let g = cheb_grid(m, iv.lo, iv.hi);
        let v: Vec<f64> = g.iter().map(|&x| sign * self.eval(x)).collect();
        let mut cand: Vec<usize> = (0..m)
            .filter(|&j| (j == 0 || v[j] >= v[j - 1]) && (j + 1 == m || v[j] >= v[j + 1]))
            .collect();
        cand.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
        cand.truncate(16);

        let dp = self.derivative();
        let mut best = (f64::NEG_INFINITY, iv.hi);
        let consider = |val: f64, x: f64, best: &mut (f64, f64)| {
            if !best.0.is_finite() {
                *best = (val, x);
                return;
            }
            let tol = 1e-14 * best.0.abs().max(val.abs()).max(f64::MIN_POSITIVE);
            if val > best.0 + tol || ((val - best.0).abs() <= tol && x > best.1) {
                *best = (val, x);
            }
        };
        for j in cand {
            consider(v[j], g[j], &mut best);
            let lo_i = (j + 1).min(m - 1);
            let hi_i = j.saturating_sub(1);
            for (a, b) in [(g[lo_i], g[j]), (g[j], g[hi_i])] {
                if a < b && dp.eval(a) * dp.eval(b) < 0.0 {
                    let r = bisect(|x| dp.eval(x), a, b);
                    consider(sign * self.eval(r), r, &mut best);
                }
            }
        }
        best
    }

    /// Signed maximum of `p` on `iv`, with argmax.
    pub fn max_on(&self, iv: Interval) -> (f64, f64) {
        self.peak(iv, 1.0)
    }

    /// Signed minimum of `p` on `iv`, with argmin.
    pub fn min_on(&self, iv: Interval) -> (f64, f64) {
        let (v, x) = self.peak(iv, -1.0);
        (-v, x)
    }

    /// `max |p|` on `iv` with its argmax (larger `x` wins ties).
    pub fn supnorm(&self, iv: Interval) -> (f64, f64) {
        let (a, xa) = self.peak(iv, 1.0);
        let (b, xb) = self.peak(iv, -1.0);
        let tol = 1e-14 * a.abs().max(b.abs());
        if a > b + tol || ((a - b).abs() <= tol && xa >= xb) {
            (a.abs(), xa)
        } else {
            (b.abs(), xb)
        }
    }
}

fn clenshaw_complex(c: &[f64], z: Complex<f64>) -> Complex<f64> {
    let zero = Complex::new(0.0, 0.0);
    let (mut b1, mut b2) = (zero, zero);
    for &ck in c.iter().skip(1).rev() {
        let b0 = z * b1 * 2.0 - b2 + ck;
        b2 = b1;
        b1 = b0;
    }
    z * b1 - b2 + c.first().copied().unwrap_or(0.0)
}

impl Add for &ChebPoly {
    type Output = ChebPoly;
    fn add(self, rhs: &ChebPoly) -> ChebPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let c = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + rhs.coeffs.get(i).unwrap_or(&0.0))
            .collect();
        ChebPoly::new(c)
    }
}

impl Sub for &ChebPoly {
    type Output = ChebPoly;
    fn sub(self, rhs: &ChebPoly) -> ChebPoly {
        self + &(-rhs)
    }
}

impl Neg for &ChebPoly {
    type Output = ChebPoly;
    fn neg(self) -> ChebPoly {
        ChebPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &ChebPoly {
    type Output = ChebPoly;
    fn mul(self, rhs: &ChebPoly) -> ChebPoly {
        self.multiply(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn assert_coeffs(p: &ChebPoly, want: &[f64]) {
        assert_eq!(
            p.coeffs().len(),
            want.len(),
            "{:?} vs {:?}",
            p.coeffs(),
            want
        );
        for (a, b) in p.coeffs().iter().zip(want) {
            assert!((a - b).abs() < 1e-14, "{:?} vs {:?}", p.coeffs(), want);
        }
    }

    #[test]
    fn eval_basis_elements() {
        assert_eq!(ChebPoly::basis(0).eval(0.73), 1.0);
        assert_relative_eq!(ChebPoly::basis(3).eval(0.5), -1.0, epsilon = 1e-15);
        assert_relative_eq!(ChebPoly::basis(6).eval(1.0), 1.0, epsilon = 1e-15);
        // outside [-1, 1]: T_2(2) = 7
        assert_relative_eq!(ChebPoly::basis(2).eval(2.0), 7.0, epsilon = 1e-14);
    }

    #[test]
    fn derivative_examples() {
        assert_coeffs(&ChebPoly::basis(1).derivative(), &[1.0]);
        assert_coeffs(&ChebPoly::basis(3).derivative(), &[3.0, 0.0, 6.0]);
        assert_relative_eq!(
            ChebPoly::basis(4).derivative().eval(1.0),
            16.0,
            epsilon = 1e-13
        );
        assert!(ChebPoly::constant(3.0).derivative().is_zero());
    }

    #[test]
    fn multiply_examples() {
        assert_coeffs(
            &ChebPoly::basis(2).multiply(&ChebPoly::basis(3)),
            &[0.0, 0.5, 0.0, 0.0, 0.0, 0.5],
        );
        let p = ChebPoly::new(vec![0.3, -1.0, 2.0]);
        assert_eq!(ChebPoly::basis(0).multiply(&p), p);
        assert_coeffs(
            &ChebPoly::basis(1).multiply(&ChebPoly::basis(1)),
            &[0.5, 0.0, 0.5],
        );
    }

    #[test]
    fn from_monomial_examples() {
        assert_coeffs(
            &ChebPoly::from_monomial(&[0.0, 0.0, 0.0, 1.0]),
            &[0.0, 0.75, 0.0, 0.25],
        );
        assert_coeffs(&ChebPoly::from_monomial(&[5.0]), &[5.0]);
        assert_coeffs(
            &ChebPoly::from_monomial(&[-1.0, 0.0, 2.0]),
            &[0.0, 0.0, 1.0],
        );
    }

    #[test]
    fn trailing_coefficients_are_trimmed() {
        let p = ChebPoly::new(vec![1.0, 2.0, 1e-15]);
        assert_eq!(p.degree(), 1);
        assert!(ChebPoly::new(vec![]).is_zero());
    }

    #[test]
    fn symmetric_complex_roots_terminate() {
        // 1 − x² + x⁴ has four non-real roots ±z, ±z̄
        let p = ChebPoly::from_monomial(&[1.0, 0.0, -1.0, 0.0, 1.0]);
        assert!(p.roots().unwrap().is_empty());
        let q = p.multiply(&ChebPoly::basis(1));
        let r = q.roots().unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].x.abs() < 1e-14);
    }

    #[test]
    fn roots_examples() {
        let r = ChebPoly::basis(3).roots().unwrap();
        let s = 3f64.sqrt() / 2.0;
        assert_eq!(r.len(), 3);
        for (root, want) in r.iter().zip([s, 0.0, -s]) {
            assert!((root.x - want).abs() < 1e-14);
            assert_eq!(root.multiplicity, 1);
        }
        let r = ChebPoly::basis(1).roots().unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].x.abs() < 1e-16);
        let r = ChebPoly::new(vec![0.5, 0.0, -0.5]).roots().unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].x - 1.0).abs() < 1e-14 && (r[1].x + 1.0).abs() < 1e-14);
    }

    #[test]
    fn roots_of_constant_is_an_error() {
        assert_eq!(
            ChebPoly::constant(2.0).roots(),
            Err(Error::ConstantPolynomial)
        );
    }

    #[test]
    fn double_roots_cluster() {
        // (x - 0.3)^2 (x + 0.5)
        let p = ChebPoly::from_roots(&[0.3, 0.3, -0.5]);
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].multiplicity, 2);
        assert!((r[0].x - 0.3).abs() < 1e-7);
        assert_eq!(r[1].multiplicity, 1);
    }

    #[test]
    fn supnorm_examples() {
        let (v, x) = ChebPoly::basis(5).supnorm(Interval::UNIT);
        assert_relative_eq!(v, 1.0, epsilon = 1e-14);
        assert_eq!(x, 1.0);
        let (v, x) = ChebPoly::basis(3).derivative().supnorm(Interval::UNIT);
        assert_relative_eq!(v, 9.0, epsilon = 1e-13);
        assert_eq!(x.abs(), 1.0);
        let (v, x) = ChebPoly::new(vec![0.5, 0.0, -0.5]).supnorm(Interval::UNIT);
        assert_relative_eq!(v, 1.0, epsilon = 1e-14);
        assert!(x.abs() < 1e-10);
    }

    #[test]
    fn supnorm_on_subinterval() {
        // x^2 on [-0.5, 0.25] peaks at -0.5
        let p = ChebPoly::from_monomial(&[0.0, 0.0, 1.0]);
        let (v, x) = p.supnorm(Interval::new(-0.5, 0.25).unwrap());
        assert_relative_eq!(v, 0.25, epsilon = 1e-15);
        assert_eq!(x, -0.5);
    }

    #[test]
    fn divide_linear_recovers_factor() {
        let p = ChebPoly::from_roots(&[0.2, -0.7, 0.9]);
        let (q, r) = p.divide_linear(0.2);
        assert!(r.abs() < 1e-15);
        let back = &q.multiply(&ChebPoly::new(vec![-0.2, 1.0])) - &p;
        assert!(back.max_abs_coeff() < 1e-15);
        let (_, r) = ChebPoly::basis(4).divide_linear(0.3);
        assert_relative_eq!(r, ChebPoly::basis(4).eval(0.3), epsilon = 1e-14);
    }

    #[test]
    fn interpolation_reproduces_polynomials() {
        let p = ChebPoly::new(vec![0.1, -0.4, 0.25, 0.7, -0.05]);
        let q = ChebPoly::interpolate_fn(4, |x| p.eval(x));
        assert!((&q - &p).max_abs_coeff() < 1e-14);
    }

    #[test]
    fn interval_rejects_reversed_bounds() {
        assert!(Interval::new(1.0, -1.0).is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn poly(max_deg: usize) -> impl Strategy<Value = ChebPoly> {
            prop::collection::vec(-1.0f64..1.0, 1..=max_deg + 1).prop_map(ChebPoly::new)
        }

        fn close(a: &ChebPoly, b: &ChebPoly, tol: f64) -> bool {
            let scale = a.max_abs_coeff().max(b.max_abs_coeff()).max(1.0);
            (a - b).max_abs_coeff() <= tol * scale
        }

        /// Monomial coefficients of `Π (x − r_j)`, expanded directly.
        fn monomial_from_roots(roots: &[f64]) -> Vec<f64> {
            let mut c = vec![1.0];
            for &r in roots {
                let mut next = vec![0.0; c.len() + 1];
                for (i, &ci) in c.iter().enumerate() {
                    next[i + 1] += ci;
                    next[i] -= r * ci;
                }
                c = next;
            }
            c
        }

        proptest! {
            #[test]
            fn basis_matches_trig_form(d in 0usize..=50, x in -1.0f64..=1.0) {
                let want = (d as f64 * x.acos()).cos();
                prop_assert!((ChebPoly::basis(d).eval(x) - want).abs() <= 1e-11);
            }

            #[test]
            fn derivative_is_linear(p in poly(20), q in poly(20), a in -3.0f64..3.0, b in -3.0f64..3.0) {
                let lhs = (&p.scale(a) + &q.scale(b)).derivative();
                let rhs = &p.derivative().scale(a) + &q.derivative().scale(b);
                prop_assert!(close(&lhs, &rhs, 1e-13));
            }

            #[test]
            fn leibniz_rule(p in poly(12), q in poly(12)) {
                let lhs = p.multiply(&q).derivative();
                let rhs = &p.derivative().multiply(&q) + &p.multiply(&q.derivative());
                prop_assert!(close(&lhs, &rhs, 1e-11));
            }

            #[test]
            fn wilkinson_roots_at_chebyshev_points(d in 1usize..=15) {
                let xs: Vec<f64> = (0..d)
                    .map(|j| (PI * (2 * j + 1) as f64 / (2 * d) as f64).cos())
                    .collect();
                let p = ChebPoly::from_monomial(&monomial_from_roots(&xs));
                let roots = p.roots().unwrap();
                prop_assert_eq!(roots.len(), d);
                for (r, x) in roots.iter().zip(&xs) {
                    prop_assert!((r.x - x).abs() <= 1e-8, "{} vs {}", r.x, x);
                }
            }

            #[test]
            fn supnorm_dominates_samples(p in poly(25), xs in prop::collection::vec(-1.0f64..=1.0, 50)) {
                let (sup, _) = p.supnorm(Interval::UNIT);
                for x in xs {
                    prop_assert!(sup >= p.eval(x).abs() * (1.0 - 1e-14));
                }
            }

            #[test]
            fn monomial_round_trip(p in poly(16)) {
                // the basis change amplifies errors by the monomial coefficient size
                let m = p.to_monomial();
                let growth = m.iter().fold(1.0f64, |a, c| a.max(c.abs()));
                let back = ChebPoly::from_monomial(&m);
                prop_assert!(close(&back, &p, 1e-14 * growth));
            }

            #[test]
            fn divide_linear_remainder_is_value(p in poly(20), a in -1.0f64..=1.0) {
                let (q, rem) = p.divide_linear(a);
                prop_assert!((rem - p.eval(a)).abs() <= 1e-13 * p.l1_norm().max(1.0));
                let back = &q.multiply(&ChebPoly::new(vec![-a, 1.0])) + &ChebPoly::constant(rem);
                prop_assert!(close(&back, &p, 1e-13));
            }
        }
    }
}
