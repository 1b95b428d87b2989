//! Sweeps of `τ_n(x, t) = (1 − xt)(T_n(x) − T_n(t))/(x − t)` and the
//! auxiliary inequalities behind `max |τ_n′| = T_n′(1) = n²`.
//!
//! `τ(·, t)` is always expanded as a polynomial in `x` (synthetic division
//! by `x − t`, then multiplication by `1 − xt`), so `x = t` needs no special
//! casing and derivatives come from [`ChebPoly::derivative`].

use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::chebcore::{ChebPoly, Interval, Root};
use crate::error::{Error, Result};
use crate::numeric::{cheb_grid, golden_max};

/// `(1 − xt)(p(x) − p(t))/(x − t)` as a polynomial in `x`.
pub fn tau_of(p: &ChebPoly, t: f64) -> ChebPoly {
    let (q, _) = p.divide_linear(t);
    q.multiply(&ChebPoly::new(vec![1.0, -t]))
}

pub fn tau_poly(n: usize, t: f64) -> ChebPoly {
    tau_of(&ChebPoly::basis(n), t)
}

pub fn tau(n: usize, x: f64, t: f64) -> f64 {
    tau_poly(n, t).eval(x)
}

pub fn tau_dx(n: usize, x: f64, t: f64) -> f64 {
    tau_poly(n, t).derivative().eval(x)
}

pub fn tau_dxx(n: usize, x: f64, t: f64) -> f64 {
    tau_poly(n, t).nth_derivative(2).eval(x)
}

/// `τ″(1, t)` in closed form (valid for `t < 1`).
pub fn tau_dxx_at_one(n: usize, t: f64) -> f64 {
    let n2 = (n * n) as f64;
    let r = (1.0 + t) / (1.0 - t);
    let tn = ChebPoly::basis(n).eval(t);
    n2 * (n2 - 1.0) / 3.0 - 2.0 * r * n2 + 2.0 * r / (1.0 - t) * (1.0 - tn)
}

fn linspace(m: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut v: Vec<f64> = (0..m)
        .map(|j| lo + (hi - lo) * j as f64 / (m - 1) as f64)
        .collect();
    v[m - 1] = hi;
    v
}

/// Grid size used for an `n`-scan: 2001 up to `n = 20`, 4001 beyond.
pub fn default_grid(n: usize) -> usize {
    if n <= 20 {
        2001
    } else {
        4001
    }
}

/// `|τ_n′(1, t)| ≤ n²` on a 10001-point `t`-grid (and at `x = −1`), with
/// equality where `T_n(t) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EndpointReport {
    pub worst_margin: f64,
    pub attained: bool,
    pub pass: bool,
}

pub fn tau_endpoint_check(n: usize) -> Result<EndpointReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let n2 = (n * n) as f64;
    let worst = linspace(10001, -1.0, 1.0)
        .par_iter()
        .map(|&t| {
            let d = tau_poly(n, t).derivative();
            n2 - d.eval(1.0).abs().max(d.eval(-1.0).abs())
        })
        .reduce(|| f64::INFINITY, f64::min);
    let attained = (0..=n / 2).all(|j| {
        let t = (2.0 * PI * j as f64 / n as f64).cos();
        (tau_dx(n, 1.0, t).abs() - n2).abs() <= 1e-9 * n2
    });
    let pass = worst >= -1e-9 * n2 && attained;
    Ok(EndpointReport {
        worst_margin: worst,
        attained,
        pass,
    })
}

/// Outcome of a square sweep of `|τ_n′(x, t)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauScanResult {
    pub n: usize,
    pub global_max: f64,
    pub argmax: (f64, f64),
    pub boundary_max: f64,
    /// Over `|x| ≤ cos(π/n)`.
    pub interior_max: f64,
    pub interior_argmax: (f64, f64),
    /// Interior 2-D local maxima `(x, t, |τ′|)`, sorted by value.
    pub local_extrema: Vec<(f64, f64, f64)>,
}

#[derive(Clone, Copy)]
struct Best {
    v: f64,
    x: f64,
    t: f64,
}

impl Best {
    const NONE: Best = Best {
        v: f64::NEG_INFINITY,
        x: f64::NAN,
        t: f64::NAN,
    };

    /// Larger value wins; within `1e−10` relative, larger `x`, then larger `t`.
    fn better(self, o: Best) -> Best {
        if o.v.is_nan() || !self.v.is_finite() {
            return if self.v.is_finite() { self } else { o };
        }
        let tol = 1e-10 * self.v.abs().max(o.v.abs());
        if o.v > self.v + tol {
            return o;
        }
        if self.v > o.v + tol {
            return self;
        }
        if (o.x, o.t) > (self.x, self.t) {
            o
        } else {
            self
        }
    }
}

fn abs_dtau(n: usize, x: f64, t: f64) -> f64 {
    tau_dx(n, x, t).abs()
}

/// Coordinate-wise golden ascent of `|τ′|` in a box around `(x, t)`.
fn refine(n: usize, start: Best, hx: f64, ht: f64, xr: (f64, f64), tr: (f64, f64)) -> Best {
    let mut best = start;
    let (mut hx, mut ht) = (hx, ht);
    for _ in 0..8 {
        let (x, v) = golden_max(
            |x| abs_dtau(n, x, best.t),
            (best.x - hx).max(xr.0),
            (best.x + hx).min(xr.1),
            1e-14,
        );
        best = best.better(Best { v, x, t: best.t });
        let (t, v) = golden_max(
            |t| abs_dtau(n, best.x, t),
            (best.t - ht).max(tr.0),
            (best.t + ht).min(tr.1),
            1e-14,
        );
        best = best.better(Best { v, x: best.x, t });
        hx *= 0.5;
        ht *= 0.5;
    }
    best
}

/// Sweep of `|τ_n′|` over `[−1, 1]²` on an `nx × nt` uniform grid, with the
/// best cells refined.
pub fn tau_scan(n: usize, nx: usize, nt: usize) -> Result<TauScanResult> {
    if n == 0 || nx < 3 || nt < 3 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 1 and grids >= 3 (n = {n}, {nx}x{nt})"
        )));
    }
    let xs = linspace(nx, -1.0, 1.0);
    let ts = linspace(nt, -1.0, 1.0);
    let xin = if n >= 2 { (PI / n as f64).cos() } else { -1.0 };

    let rows: Vec<(Best, Best, Best)> = ts
        .par_iter()
        .map(|&t| {
            let d = tau_poly(n, t).derivative();
            let (mut all, mut bnd, mut inner) = (Best::NONE, Best::NONE, Best::NONE);
            for &x in &xs {
                let b = Best {
                    v: d.eval(x).abs(),
                    x,
                    t,
                };
                all = all.better(b);
                if x.abs() == 1.0 {
                    bnd = bnd.better(b);
                }
                if x.abs() <= xin {
                    inner = inner.better(b);
                }
            }
            (all, bnd, inner)
        })
        .collect();

    let (hx, ht) = (2.0 * 2.0 / (nx - 1) as f64, 2.0 * 2.0 / (nt - 1) as f64);
    let top = |sel: fn(&(Best, Best, Best)) -> Best| {
        let mut c: Vec<Best> = rows.iter().map(sel).filter(|b| b.v.is_finite()).collect();
        c.sort_by(|a, b| b.v.total_cmp(&a.v));
        c.truncate(16);
        c
    };

    let global = top(|r| r.0)
        .into_par_iter()
        .map(|b| {
            let xr = if b.x.abs() == 1.0 {
                (b.x, b.x)
            } else {
                (-1.0, 1.0)
            };
            refine(n, b, hx, ht, xr, (-1.0, 1.0))
        })
        .reduce(|| Best::NONE, Best::better);
    let boundary_max = rows.iter().map(|r| r.1.v).fold(f64::NEG_INFINITY, f64::max);
    let interior = if xin > 0.0 {
        top(|r| r.2)
            .into_par_iter()
            .map(|b| refine(n, b, hx, ht, (-xin, xin), (-1.0, 1.0)))
            .reduce(|| Best::NONE, Best::better)
    } else {
        Best {
            v: 0.0,
            x: 0.0,
            t: 0.0,
        }
    };

    Ok(TauScanResult {
        n,
        global_max: global.v,
        argmax: (global.x, global.t),
        boundary_max: boundary_max.max(if global.x.abs() == 1.0 { global.v } else { 0.0 }),
        interior_max: interior.v,
        interior_argmax: (interior.x, interior.t),
        local_extrema: local_maxima(n, (10 * n + 1).clamp(101, 401)),
    })
}

/// Strict interior 2-D local maxima of `|τ′|` on an `m × m` grid, refined
/// and de-duplicated.
fn local_maxima(n: usize, m: usize) -> Vec<(f64, f64, f64)> {
    if n < 3 {
        return Vec::new();
    }
    let g = linspace(m, -1.0, 1.0);
    let vals: Vec<Vec<f64>> = g
        .par_iter()
        .map(|&t| {
            let d = tau_poly(n, t).derivative();
            g.iter().map(|&x| d.eval(x).abs()).collect()
        })
        .collect();
    let mut seeds = Vec::new();
    for i in 1..m - 1 {
        for j in 1..m - 1 {
            let v = vals[i][j];
            let is_max = (-1i32..=1).all(|di| {
                (-1i32..=1).all(|dj| {
                    (di == 0 && dj == 0)
                        || v > vals[(i as i32 + di) as usize][(j as i32 + dj) as usize]
                })
            });
            if is_max {
                seeds.push(Best {
                    v,
                    x: g[j],
                    t: g[i],
                });
            }
        }
    }
    let h = 2.0 / (m - 1) as f64;
    let mut out: Vec<(f64, f64, f64)> = seeds
        .into_par_iter()
        .map(|b| refine(n, b, h, h, (-1.0 + h, 1.0 - h), (-1.0 + h, 1.0 - h)))
        .map(|b| (b.x, b.t, b.v))
        .collect();
    out.sort_by(|a, b| b.2.total_cmp(&a.2));
    let mut dedup: Vec<(f64, f64, f64)> = Vec::new();
    for p in out {
        if !dedup
            .iter()
            .any(|q| (q.0 - p.0).abs() < 1e-4 && (q.1 - p.1).abs() < 1e-4)
        {
            dedup.push(p);
        }
    }
    dedup
}

/// Subdomains of `x ∈ [0, 1]`, `t ∈ [−1, 1]` by `γ = (x − t)/(1 − xt)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DomainTag {
    D1,
    D2_1,
    D2_2,
    D2_3,
}

impl fmt::Display for DomainTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainTag::D1 => "D1",
            DomainTag::D2_1 => "D2_1",
            DomainTag::D2_2 => "D2_2",
            DomainTag::D2_3 => "D2_3",
        })
    }
}

/// Boundaries go to the lower-index region.
pub fn domain_classify(n: usize, x: f64, t: f64) -> Result<DomainTag> {
    if x < 0.0 {
        return Err(Error::NegativeX(x));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "domains are defined for n >= 3 (n = {n})"
        )));
    }
    let den = 1.0 - x * t;
    if den.abs() < 1e-15 {
        return Ok(DomainTag::D1);
    }
    let gamma = (x - t) / den;
    let nf = n as f64;
    Ok(if gamma <= 0.5 {
        DomainTag::D1
    } else if t >= (3.0 * PI / (2.0 * nf)).cos() {
        DomainTag::D2_1
    } else if x <= (PI / nf).cos() {
        DomainTag::D2_2
    } else {
        DomainTag::D2_3
    })
}

/// Residuals of `ψ₁ = φ′ + ½(x − t)φ″` and
/// `ψ₂ = φ′ + ½ (x − t)/(1 − xt) (1 − x²) φ″` at a root `t` of `ω`,
/// relative to the size of the terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PsiResiduals {
    pub psi1: f64,
    pub psi2: f64,
}

pub fn psi_identity_check(omega: &ChebPoly, t: f64) -> Result<PsiResiduals> {
    let scale = omega.l1_norm().max(f64::MIN_POSITIVE);
    let wt = omega.eval(t);
    if wt.abs() > 1e-8 * scale {
        return Err(Error::NotANode(wt.abs()));
    }
    let (q, _) = omega.divide_linear(t);
    let phi = q.multiply(&ChebPoly::new(vec![1.0, -t]));
    let (d1, d2) = (phi.derivative(), phi.nth_derivative(2));
    let (w1, w2) = (omega.derivative(), omega.nth_derivative(2));

    let mut res = [0.0f64; 2];
    let mut size = [f64::MIN_POSITIVE; 2];
    for x in linspace(2001, -1.0, 1.0) {
        let (p1, p2) = (d1.eval(x), d2.eval(x));
        let psi1 = 0.5 * (1.0 - x * t) * w2.eval(x) - t * w1.eval(x);
        let rhs1 = p1 + 0.5 * (x - t) * p2;
        res[0] = res[0].max((psi1 - rhs1).abs());
        size[0] = size[0]
            .max(psi1.abs())
            .max(p1.abs())
            .max((0.5 * (x - t) * p2).abs());

        let den = 1.0 - x * t;
        if den.abs() < 1e-6 {
            continue;
        }
        let g = (x - t) / den;
        let psi2 =
            0.5 * (1.0 - x * x) * w2.eval(x) + g * w1.eval(x) - x * (1.0 - t * t) / den * q.eval(x);
        let tail = 0.5 * g * (1.0 - x * x) * p2;
        res[1] = res[1].max((psi2 - (p1 + tail)).abs());
        size[1] = size[1].max(psi2.abs()).max(p1.abs()).max(tail.abs());
    }
    Ok(PsiResiduals {
        psi1: res[0] / size[0],
        psi2: res[1] / size[1],
    })
}

/// `F(x, γ)` bounding `|ψ₂|/n²` on `D2_2`.
pub fn f_bound(n: usize, x: f64, gamma: f64) -> f64 {
    let n2 = (n * n) as f64;
    let w = n2 * (1.0 - x * x);
    0.5 * (1.0 + (x + 2.0 * gamma).powi(2) / w).sqrt() + (1.0 - gamma * gamma) / gamma * 2.0 * x / w
}

/// `n`-independent majorant of `F(cos(π/n), γ)` for `n ≥ 4`.
pub fn g_bound(gamma: f64) -> f64 {
    0.5 * (1.0 + (1.0 + 2.0 * gamma).powi(2) / 8.0).sqrt() + (1.0 - gamma * gamma) / (4.0 * gamma)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FgReport {
    pub f_max: f64,
    pub g_max: f64,
    /// `F(x_n, γ) ≤ G(γ)` on the grid (checked for `n ≥ 4`).
    pub g_majorizes: Option<bool>,
    pub pass: bool,
}

pub fn fg_bound_check(n: usize) -> Result<FgReport> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 3 (n = {n})"
        )));
    }
    let xn = (PI / n as f64).cos();
    let gs = linspace(10001, 0.5, 1.0);
    let f_max = gs
        .iter()
        .map(|&g| f_bound(n, xn, g))
        .fold(f64::NEG_INFINITY, f64::max);
    let g_max = gs
        .iter()
        .map(|&g| g_bound(g))
        .fold(f64::NEG_INFINITY, f64::max);
    let g_majorizes = (n >= 4).then(|| gs.iter().all(|&g| f_bound(n, xn, g) <= g_bound(g) + 1e-15));
    let pass = f_max <= 1.0 && g_max <= 1.0 && g_majorizes.unwrap_or(true);
    Ok(FgReport {
        f_max,
        g_max,
        g_majorizes,
        pass,
    })
}

/// Left side of the explicit inequality at `t = cos(3π/2n)`.
pub fn tstar_lhs(n: usize) -> f64 {
    let nf = n as f64;
    let n2 = nf * nf;
    let u = 1.0 / (3.0 * PI / (4.0 * nf)).tan().powi(2);
    n2 * (n2 - 1.0) / 3.0 - 2.0 * n2 * u + 2.0 / (1.0 + (3.0 * PI / (2.0 * nf)).cos()) * u * u
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tau2Report {
    /// `min τ″(1, t)` over `t ∈ [−1, cos(3π/2n)]`.
    pub min_at_one: f64,
    /// Largest relative gap between the polynomial and closed-form `τ″(1, t)`.
    pub closed_form_gap: f64,
    /// `min τ″` over `[cos(π/n), 1] × [−1, cos(3π/2n)]`.
    pub min_rect: f64,
    /// The explicit inequality's left side (`n ≥ 7`).
    pub tstar: Option<f64>,
    pub pass: bool,
}

pub fn tau_second_deriv_check(n: usize) -> Result<Tau2Report> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 3 (n = {n})"
        )));
    }
    let nf = n as f64;
    let t_hi = (3.0 * PI / (2.0 * nf)).cos();
    let x_lo = (PI / nf).cos();
    let scale = (n * n) as f64 * ((n * n) as f64 - 1.0) / 3.0;

    let (min_at_one, gap) = linspace(10001, -1.0, t_hi)
        .par_iter()
        .map(|&t| {
            let v = tau_dxx(n, 1.0, t);
            (v, (v - tau_dxx_at_one(n, t)).abs() / scale)
        })
        .reduce(|| (f64::INFINITY, 0.0), |a, b| (a.0.min(b.0), a.1.max(b.1)));

    let xs = linspace(201, x_lo, 1.0);
    let min_rect = linspace(201, -1.0, t_hi)
        .par_iter()
        .map(|&t| {
            let d2 = tau_poly(n, t).nth_derivative(2);
            xs.iter().map(|&x| d2.eval(x)).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);

    let tstar = (n >= 7).then(|| tstar_lhs(n));
    let pass = min_at_one >= 0.0 && min_rect > 0.0 && gap < 1e-9 && tstar.map_or(true, |v| v > 0.0);
    Ok(Tau2Report {
        min_at_one,
        closed_form_gap: gap,
        min_rect,
        tstar,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterlaceReport {
    pub n: usize,
    pub t: f64,
    /// Reason when the input is degenerate and the check was not run.
    pub skipped: Option<String>,
    pub interlaces: bool,
    /// `τ(·, t)` has a root at `1/t` (vacuous for `t = 0`).
    pub reciprocal_root: bool,
    /// Sign of the leading coefficient of `τ(·, t)`.
    pub leading_sign: f64,
}

impl InterlaceReport {
    pub fn passes(&self) -> bool {
        self.skipped.is_some()
            || (self.interlaces
                && self.reciprocal_root
                && (self.t <= 0.0 || self.leading_sign < 0.0))
    }
}

fn expand(roots: &[Root]) -> Vec<f64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat(r.x).take(r.multiplicity))
        .collect()
}

/// Zeros `s_i` of `τ(·, t)` against zeros `t_i` of `T_n − T_n(t)`:
/// `s_i ≤ t_i ≤ s_{i−1}` for `t ≤ 0`, `s_{i+1} ≤ t_i ≤ s_i` for `t > 0`.
pub fn interlacing_check(n: usize, t: f64) -> Result<InterlaceReport> {
    if n < 2 || !(-1.0..=1.0).contains(&t) {
        return Err(Error::InvalidArgument(format!(
            "need n >= 2 and t in [-1,1] (n = {n}, t = {t})"
        )));
    }
    let mut report = InterlaceReport {
        n,
        t,
        skipped: None,
        interlaces: false,
        reciprocal_root: false,
        leading_sign: 0.0,
    };
    if t == 0.0 && n % 2 == 0 {
        report.skipped = Some("t = 0 is a double zero of T_n - T_n(0) for even n".into());
        return Ok(report);
    }
    let tn = ChebPoly::basis(n);
    let mut c = tn.coeffs().to_vec();
    c[0] -= tn.eval(t);
    let ti = expand(&ChebPoly::new(c).roots()?);
    let tp = tau_poly(n, t);
    report.leading_sign = tp.coeffs().last().copied().unwrap_or(0.0).signum();
    let reach = if t == 0.0 { 2.0 } else { 1.0 / t.abs() + 1.0 };
    let si = expand(&tp.real_roots_in(-reach, reach)?);
    let want_s = if t == 0.0 { n - 1 } else { n };
    if ti.len() != n || si.len() != want_s {
        return Ok(report);
    }
    report.reciprocal_root = t == 0.0
        || si
            .iter()
            .any(|&s| (s - 1.0 / t).abs() <= 1e-8 * (1.0 + 1.0 / t.abs()));

    let slack = 1e-8;
    let s = |i: usize| -> f64 {
        // 1-based; s_0 = +∞, s_{len+1} = −∞
        if i == 0 {
            f64::INFINITY
        } else if i > si.len() {
            f64::NEG_INFINITY
        } else {
            si[i - 1]
        }
    };
    report.interlaces = (1..=n).all(|i| {
        let x = ti[i - 1];
        if t <= 0.0 {
            s(i) <= x + slack && x <= s(i - 1) + slack
        } else {
            s(i + 1) <= x + slack && x <= s(i) + slack
        }
    });
    Ok(report)
}

/// Critical points of `τ(·, t)′` (roots of `τ″`) with `x ≥ 0`, by domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PropDdReport {
    pub n: usize,
    pub critical_points: usize,
    /// `max |τ′|/n²` over critical points outside `D2_3`.
    pub max_ratio_a: f64,
    /// Critical points found inside `D2_3` (expected none).
    pub d23_roots: usize,
    /// `max |τ′|` over all critical points and `x = ±1`.
    pub global_max: f64,
    pub pass: bool,
}

pub fn verify_prop_dd(n: usize, nt: usize) -> Result<PropDdReport> {
    if n < 3 || nt < 3 {
        return Err(Error::InvalidArgument(format!(
            "need n >= 3 and nt >= 3 (n = {n})"
        )));
    }
    let n2 = (n * n) as f64;
    let per_t: Vec<Result<(usize, f64, usize, f64)>> = linspace(nt, -1.0, 1.0)
        .par_iter()
        .map(|&t| {
            let p = tau_poly(n, t);
            let d1 = p.derivative();
            let d2 = d1.derivative();
            let mut count = 0;
            let mut ratio = 0.0f64;
            let mut d23 = 0;
            let mut gmax = d1.eval(1.0).abs().max(d1.eval(-1.0).abs());
            let crit = if d2.degree() == 0 {
                Vec::new()
            } else {
                d2.roots()?
            };
            for r in crit {
                let x = r.x.clamp(-1.0, 1.0);
                if x < 0.0 {
                    continue;
                }
                count += 1;
                let v = d1.eval(x).abs();
                gmax = gmax.max(v);
                match domain_classify(n, x, t)? {
                    DomainTag::D2_3 => d23 += 1,
                    _ => ratio = ratio.max(v / n2),
                }
            }
            Ok((count, ratio, d23, gmax))
        })
        .collect();
    let mut rep = PropDdReport {
        n,
        critical_points: 0,
        max_ratio_a: 0.0,
        d23_roots: 0,
        global_max: 0.0,
        pass: false,
    };
    for r in per_t {
        let (c, ratio, d23, g) = r?;
        rep.critical_points += c;
        rep.max_ratio_a = rep.max_ratio_a.max(ratio);
        rep.d23_roots += d23;
        rep.global_max = rep.global_max.max(g);
    }
    rep.pass = rep.max_ratio_a <= 1.0 + 1e-9
        && rep.d23_roots == 0
        && (rep.global_max - n2).abs() <= 1e-6 * n2;
    Ok(rep)
}

/// `n,x,t,tau,tau_dx,tau_dxx,domain_tag` rows on an `m × m` grid. Points
/// with `x < 0` are tagged by their mirror `(−x, −t)`.
pub fn write_tau_csv<W: Write>(n: usize, m: usize, out: &mut W) -> io::Result<()> {
    writeln!(out, "n,x,t,tau,tau_dx,tau_dxx,domain_tag")?;
    let g = linspace(m.max(2), -1.0, 1.0);
    let rows: Vec<String> = g
        .par_iter()
        .map(|&t| {
            let p = tau_poly(n, t);
            let (d1, d2) = (p.derivative(), p.nth_derivative(2));
            let mut s = String::new();
            for &x in &g {
                let tag = if x >= 0.0 {
                    domain_classify(n, x, t)
                } else {
                    domain_classify(n, -x, -t)
                };
                let tag = tag.map_or_else(|_| "NA".to_string(), |d| d.to_string());
                s.push_str(&format!(
                    "{n},{x},{t},{},{},{},{tag}\n",
                    p.eval(x),
                    d1.eval(x),
                    d2.eval(x)
                ));
            }
            s
        })
        .collect();
    for r in rows {
        out.write_all(r.as_bytes())?;
    }
    Ok(())
}

/// `max |τ′|` over `x` for fixed `t`, by sup-norm of the polynomial.
pub fn tau_dx_supnorm(n: usize, t: f64) -> (f64, f64) {
    tau_poly(n, t).derivative().supnorm(Interval::UNIT)
}

/// Chebyshev points on `[lo, hi]`, exposed for sweeps in other crates.
pub fn chebyshev_points(m: usize, lo: f64, hi: f64) -> Vec<f64> {
    cheb_grid(m, lo, hi)
}
