//! Markov and Duffin–Schaeffer quantities for snake-polynomials.
//!
//! `D*_{k,μ}` only constrains `p` at the oscillation nodes, so pointwise
//! `sup |p^{(k)}(x)| = Σ μ(τ_i) |ℓ_i^{(k)}(x)|` with `ℓ_i` the Lagrange
//! fundamental polynomials; [`ds_constant`] maximizes that over `x`.
//! [`brute_force_ds`] is an independent check by sign enumeration in the
//! monomial basis.

use std::fmt::{self, Write as _};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::chebcore::{ChebPoly, Interval};
use crate::error::{Error, Result};
use crate::numeric::{cheb_grid, golden_max, ls_slope};
use crate::scans::tau_of;
use crate::snake::catalog::{catalog_majorant, CatalogCase};
use crate::snake::Snake;

/// Relative tolerance for the Theorem-main equality `D* = ω^{(k)}(1)`.
pub const EQUALITY_TOL: f64 = 1e-7;
const DS_GRID: usize = 4096;
const DS_REFINE: usize = 16;
const MIN_NODE_SEPARATION: f64 = 1e-9;
const BRUTE_MAX_N: usize = 12;

/// Smallest `k` with a nonnegative Chebyshev expansion of `ω^{(k)}` (the
/// constant term is exempt), with the minimal nonconstant coefficient for
/// each `k = 0..=k0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PositivityProfile {
    pub k0: Option<usize>,
    pub margins: Vec<f64>,
}

pub fn positivity_profile(omega: &ChebPoly) -> PositivityProfile {
    let mut margins = Vec::new();
    let mut p = omega.clone();
    for k in 0..=omega.degree() {
        let c = p.coeffs();
        let margin = c.iter().skip(1).copied().fold(f64::INFINITY, f64::min);
        margins.push(margin);
        if c.len() == 1 || margin >= -1e-10 * p.max_abs_coeff() {
            return PositivityProfile {
                k0: Some(k),
                margins,
            };
        }
        p = p.derivative();
    }
    PositivityProfile { k0: None, margins }
}

/// Lagrange fundamental polynomials on distinct nodes, as Chebyshev series.
#[derive(Clone, Debug)]
pub struct LagrangeBasis {
    nodes: Vec<f64>,
    ell: Vec<ChebPoly>,
}

impl LagrangeBasis {
    pub fn new(nodes: &[f64]) -> Result<Self> {
        let n = nodes
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::InvalidArgument("at least one node required".into()))?;
        for i in 0..nodes.len() {
            for j in 0..i {
                if (nodes[i] - nodes[j]).abs() <= MIN_NODE_SEPARATION {
                    return Err(Error::BoundaryDegenerate);
                }
            }
        }
        let ys = cheb_grid(n + 1, -1.0, 1.0);
        let ell = (0..=n)
            .map(|i| {
                let vals: Vec<f64> = ys
                    .iter()
                    .map(|&y| {
                        (0..=n)
                            .filter(|&j| j != i)
                            .map(|j| (y - nodes[j]) / (nodes[i] - nodes[j]))
                            .product()
                    })
                    .collect();
                ChebPoly::interpolate_extrema(&vals)
            })
            .collect();
        Ok(LagrangeBasis {
            nodes: nodes.to_vec(),
            ell,
        })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn polys(&self) -> &[ChebPoly] {
        &self.ell
    }

    pub fn derivatives(&self, k: usize) -> Vec<ChebPoly> {
        self.ell.iter().map(|l| l.nth_derivative(k)).collect()
    }
}

fn weighted_abs_sum(dl: &[ChebPoly], muvals: &[f64], x: f64) -> f64 {
    dl.iter()
        .zip(muvals)
        .map(|(l, &m)| m * l.eval(x).abs())
        .sum()
}

fn check_k(n: usize, k: usize) -> Result<()> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "k = {k} exceeds degree n = {n}"
        )));
    }
    Ok(())
}

/// `Σ μ(τ_i) |ℓ_i^{(k)}(x)|` and the maximizing signs `sign ℓ_i^{(k)}(x)`
/// (`+1` where `|ℓ_i^{(k)}(x)|` is negligible).
pub fn ds_pointwise_signs(
    nodes: &[f64],
    muvals: &[f64],
    k: usize,
    x: f64,
) -> Result<(f64, Vec<i8>)> {
    check_k(nodes.len().saturating_sub(1), k)?;
    let dl = LagrangeBasis::new(nodes)?.derivatives(k);
    let vals: Vec<f64> = dl.iter().map(|l| l.eval(x)).collect();
    let scale = vals
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let signs = vals
        .iter()
        .map(|&v| {
            if v.abs() < 1e-12 * scale || v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    let value = vals.iter().zip(muvals).map(|(v, m)| m * v.abs()).sum();
    Ok((value, signs))
}

pub fn ds_pointwise(nodes: &[f64], muvals: &[f64], k: usize, x: f64) -> Result<f64> {
    ds_pointwise_signs(nodes, muvals, k, x).map(|(v, _)| v)
}

/// `max_x Σ μ_i |ℓ_i^{(k)}(x)|`: a 4096-point Chebyshev grid, then golden
/// refinement of the 16 best brackets. Ties go to the larger `x`.
pub fn ds_constant_nodes(nodes: &[f64], muvals: &[f64], k: usize) -> Result<(f64, f64)> {
    check_k(nodes.len().saturating_sub(1), k)?;
    let dl = LagrangeBasis::new(nodes)?.derivatives(k);
    let g = cheb_grid(DS_GRID, -1.0, 1.0);
    let v: Vec<f64> = g
        .par_iter()
        .map(|&x| weighted_abs_sum(&dl, muvals, x))
        .collect();
    let m = g.len();
    let mut cand: Vec<usize> = (0..m)
        .filter(|&j| (j == 0 || v[j] >= v[j - 1]) && (j + 1 == m || v[j] >= v[j + 1]))
        .collect();
    cand.sort_by(|&a, &b| v[b].total_cmp(&v[a]).then(g[b].total_cmp(&g[a])));
    cand.truncate(DS_REFINE);

    let refined: Vec<(f64, f64)> = cand
        .par_iter()
        .map(|&j| {
            let lo = g[(j + 1).min(m - 1)];
            let hi = g[j.saturating_sub(1)];
            let (x, fx) = golden_max(|x| weighted_abs_sum(&dl, muvals, x), lo, hi, 1e-13);
            if fx >= v[j] {
                (fx, x)
            } else {
                (v[j], g[j])
            }
        })
        .collect();
    let mut best = (f64::NEG_INFINITY, 1.0);
    for (val, x) in refined {
        let tol = 1e-14 * val.abs().max(best.0.abs());
        if !best.0.is_finite() || val > best.0 + tol || ((val - best.0).abs() <= tol && x > best.1)
        {
            best = (val, x);
        }
    }
    Ok(best)
}

/// `D*_{k,μ}` for a snake with simple nodes, with its argmax.
pub fn ds_constant(snake: &Snake, k: usize) -> Result<(f64, f64)> {
    if snake.is_boundary_degenerate() {
        return Err(Error::BoundaryDegenerate);
    }
    let nodes: Vec<f64> = snake.nodes.iter().map(|nd| nd.x).collect();
    let muvals: Vec<f64> = nodes.iter().map(|&x| snake.majorant.mu(x)).collect();
    ds_constant_nodes(&nodes, &muvals, k)
}

/// Where [`brute_force_ds`] evaluates `|p^{(k)}|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BruteTarget {
    At(f64),
    Norm,
}

fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci)
}

fn mono_derivative(c: &[f64], k: usize) -> Vec<f64> {
    if k >= c.len() {
        return vec![0.0];
    }
    (k..c.len())
        .map(|j| c[j] * ((j - k + 1)..=j).map(|f| f as f64).product::<f64>())
        .collect()
}

/// Exhaustive `max_ε |p_ε^{(k)}|` over `p_ε(τ_i) = ε_i μ_i`, using a
/// monomial Vandermonde solve; also returns the maximizing sign vector.
pub fn brute_force_ds_signs(
    nodes: &[f64],
    muvals: &[f64],
    k: usize,
    target: BruteTarget,
) -> Result<(f64, Vec<i8>)> {
    let n = nodes.len().saturating_sub(1);
    if n > BRUTE_MAX_N {
        return Err(Error::TooLarge(n));
    }
    check_k(n, k)?;
    let v = DMatrix::from_fn(n + 1, n + 1, |i, j| nodes[i].powi(j as i32));
    let lu = v.lu();
    // Column i: monomial coefficients of ℓ_i, differentiated k times.
    let cols: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            let e = DVector::from_fn(n + 1, |r, _| if r == i { 1.0 } else { 0.0 });
            let c = lu.solve(&e).ok_or(Error::BoundaryDegenerate)?;
            Ok(mono_derivative(c.as_slice(), k))
        })
        .collect::<Result<_>>()?;
    let len = cols[0].len();
    let grid: Vec<f64> = (0..2001).map(|j| -1.0 + 2.0 * j as f64 / 2000.0).collect();

    // ε_0 = +1 by the symmetry p ↦ −p.
    let patterns = 1usize << n;
    let (best, best_bits) = (0..patterns)
        .into_par_iter()
        .map(|bits| {
            let eps = |i: usize| {
                if i == 0 || bits & (1 << (i - 1)) == 0 {
                    1.0
                } else {
                    -1.0
                }
            };
            let mut c = vec![0.0; len];
            for (i, col) in cols.iter().enumerate() {
                let w = eps(i) * muvals[i];
                for (cj, &bj) in c.iter_mut().zip(col) {
                    *cj += w * bj;
                }
            }
            let val = match target {
                BruteTarget::At(x) => horner(&c, x).abs(),
                BruteTarget::Norm => {
                    let (j, _) = grid
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| (j, horner(&c, x).abs()))
                        .fold((0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
                    let lo = grid[j.saturating_sub(1)];
                    let hi = grid[(j + 1).min(grid.len() - 1)];
                    golden_max(|x| horner(&c, x).abs(), lo, hi, 1e-13).1
                }
            };
            (val, bits)
        })
        .reduce(
            || (f64::NEG_INFINITY, 0),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let signs = (0..=n)
        .map(|i| {
            if i == 0 || best_bits & (1 << (i - 1)) == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok((best, signs))
}

pub fn brute_force_ds(nodes: &[f64], muvals: &[f64], k: usize, target: BruteTarget) -> Result<f64> {
    brute_force_ds_signs(nodes, muvals, k, target).map(|(v, _)| v)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MarkovAttainment {
    pub norm: f64,
    pub argmax: f64,
    pub value_at_1: f64,
    pub attained_at_one: bool,
}

/// `‖ω^{(k)}‖` and whether it is attained at `x = 1`.
pub fn markov_attainment(snake: &Snake, k: usize) -> Result<MarkovAttainment> {
    check_k(snake.degree(), k)?;
    let d = snake.omega.nth_derivative(k);
    let (norm, argmax) = d.supnorm(Interval::UNIT);
    let value_at_1 = d.eval(1.0);
    let attained_at_one = value_at_1 >= norm - 1e-8 * norm.max(1.0);
    Ok(MarkovAttainment {
        norm,
        argmax,
        value_at_1,
        attained_at_one,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ConfirmsTheoremMain,
    PositivityFails,
    EqualityFails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConfirmsTheoremMain => "ConfirmsTheoremMain",
            Verdict::PositivityFails => "PositivityFails",
            Verdict::EqualityFails => "EqualityFails",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalReport {
    pub case: String,
    pub n: usize,
    pub k: usize,
    pub omega_k_at_1: f64,
    pub markov_norm: f64,
    pub markov_argmax: f64,
    /// `None` when the snake has a multiple boundary node.
    pub ds_constant: Option<(f64, f64)>,
    pub positivity_k0: Option<usize>,
    pub verdict: Verdict,
}

impl ExtremalReport {
    pub const CSV_HEADER: &'static str =
        "case,n,k,omega_k_at_1,markov_norm,markov_argmax,ds_constant,ds_argmax,positivity_k0,verdict";

    pub fn to_key_value(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<f64>| v.map_or("skipped".to_string(), |x| x.to_string());
        let _ = writeln!(s, "case={}", self.case);
        let _ = writeln!(s, "n={}", self.n);
        let _ = writeln!(s, "k={}", self.k);
        let _ = writeln!(s, "omega_k_at_1={}", self.omega_k_at_1);
        let _ = writeln!(s, "markov_norm={}", self.markov_norm);
        let _ = writeln!(s, "markov_argmax={}", self.markov_argmax);
        let _ = writeln!(s, "ds_constant={}", opt(self.ds_constant.map(|d| d.0)));
        let _ = writeln!(s, "ds_argmax={}", opt(self.ds_constant.map(|d| d.1)));
        let _ = writeln!(
            s,
            "positivity_k0={}",
            self.positivity_k0.map_or("none".into(), |k| k.to_string())
        );
        let _ = writeln!(s, "verdict={}", self.verdict);
        s
    }

    pub fn to_csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map_or(String::new(), |x| x.to_string());
        format!(
            "\"{}\",{},{},{},{},{},{},{},{},{}",
            self.case,
            self.n,
            self.k,
            self.omega_k_at_1,
            self.markov_norm,
            self.markov_argmax,
            opt(self.ds_constant.map(|d| d.0)),
            opt(self.ds_constant.map(|d| d.1)),
            self.positivity_k0.map_or(String::new(), |k| k.to_string()),
            self.verdict
        )
    }
}

/// Checks `M_{k,μ} = D*_{k,μ} = ω^{(k)}(1)` for a catalog majorant.
pub fn verify_theorem_main(case: &CatalogCase, n: usize, k: usize) -> Result<ExtremalReport> {
    let (_, snake) = catalog_majorant(case, n)?;
    verify_snake(&case.to_string(), &snake, k)
}

pub fn verify_snake(label: &str, snake: &Snake, k: usize) -> Result<ExtremalReport> {
    let n = snake.degree();
    check_k(n, k)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let profile = positivity_profile(&snake.omega);
    let markov = markov_attainment(snake, k)?;
    let ds = if snake.is_boundary_degenerate() {
        None
    } else {
        Some(ds_constant(snake, k)?)
    };
    let w1 = markov.value_at_1;
    let positive = profile.k0.is_some_and(|k0| k0 < k);
    let equal = markov.attained_at_one
        && ds.map_or(true, |(d, _)| {
            (d - w1).abs() <= EQUALITY_TOL * w1.abs().max(f64::MIN_POSITIVE)
        });
    let verdict = match (positive, equal) {
        (false, _) => Verdict::PositivityFails,
        (true, false) => Verdict::EqualityFails,
        (true, true) => Verdict::ConfirmsTheoremMain,
    };
    Ok(ExtremalReport {
        case: label.to_string(),
        n,
        k,
        omega_k_at_1: w1,
        markov_norm: markov.norm,
        markov_argmax: markov.argmax,
        ds_constant: ds,
        positivity_k0: profile.k0,
        verdict,
    })
}

/// The upper bound `max{ω^{(k)}(1), max |τ′_{ω̂}|}` with `ω̂ = ω^{(k−1)}`,
/// estimated on an `m × m` grid (t sampled, x by sup-norm).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DtauCheck {
    pub ds: f64,
    pub omega_k_at_1: f64,
    pub tau_max: f64,
    pub holds: bool,
}

pub fn dtau_consistency(snake: &Snake, k: usize, m: usize) -> Result<DtauCheck> {
    check_k(snake.degree(), k)?;
    let (ds, _) = ds_constant(snake, k)?;
    let hat = snake.omega.nth_derivative(k - 1);
    let w1 = hat.derivative().eval(1.0);
    let tau_max = cheb_grid(m, -1.0, 1.0)
        .par_iter()
        .map(|&t| tau_of(&hat, t).derivative().supnorm(Interval::UNIT).0)
        .reduce(|| 0.0, f64::max);
    let bound = w1.max(tau_max);
    Ok(DtauCheck {
        ds,
        omega_k_at_1: w1,
        tau_max,
        holds: ds <= bound * (1.0 + EQUALITY_TOL),
    })
}

/// Lower-bound witness for `D*_{k,μ_m}` at `x = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct MdBound {
    pub m: usize,
    pub k: usize,
    pub n: usize,
    /// `|[(x² − 1)^s q]^{(k)}(0)|`.
    pub value: f64,
    /// `max_i |q(t_i)| / bound_i − 1` over the constraint nodes (≤ 0 when feasible).
    pub constraint_excess: f64,
    /// `max | |q(t_i)| − bound_i |` over the nodes where the bound is attained.
    pub active_deviation: f64,
    /// `max |q(±1)|`.
    pub boundary_value: f64,
}

/// Whether the witness for `(m, k)` exists at degree `n`.
pub fn md_parity_ok(m: usize, k: usize, n: usize) -> bool {
    if m % 2 == 0 {
        n % 2 != k % 2
    } else {
        n % 2 == k % 2
    }
}

/// `D*_{k,μ_m} ≥ |[(x² − 1)^s q]^{(k)}(0)|` with `q = q₁` (`m = 2s`) or
/// `q = q₂` (`m = 2s − 1`).
pub fn md_lower_bound(m: usize, k: usize, n: usize) -> Result<MdBound> {
    if m == 0 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and n >= 2 (m = {m}, n = {n})"
        )));
    }
    if !md_parity_ok(m, k, n) {
        let rule = if m % 2 == 0 {
            "n ≢ k (mod 2)"
        } else {
            "n ≡ k (mod 2)"
        };
        return Err(Error::Parity(format!(
            "m = {m}, k = {k}, n = {n} requires {rule}"
        )));
    }
    let tn = ChebPoly::basis(n);
    let dtn = tn.derivative();
    let half = (n - 1) / 2;
    let x2m1 = ChebPoly::new(vec![-0.5, 0.0, 0.5]);
    let nf = n as f64;

    let (q, s, nodes, bounds, active): (ChebPoly, usize, Vec<f64>, Vec<f64>, Vec<usize>) =
        if m % 2 == 0 {
            let p = x2m1.multiply(&dtn);
            let t: Vec<f64> = (0..=n)
                .map(|i| (std::f64::consts::PI * i as f64 / nf).cos())
                .collect();
            let mut u = ChebPoly::zero();
            for &ti in &t[1..=half] {
                u = &(&u + &p.divide_linear(ti).0) - &p.divide_linear(-ti).0;
            }
            let active = (1..=half).chain((n - half)..n).collect();
            (u.scale(1.0 / (nf * nf)), m / 2, t, vec![1.0; n + 1], active)
        } else {
            let t: Vec<f64> = (1..=n)
                .map(|i| (std::f64::consts::PI * (i as f64 - 0.5) / nf).cos())
                .collect();
            let mut u = ChebPoly::zero();
            for &ti in &t[..half] {
                u = &(&u + &tn.divide_linear(ti).0) - &tn.divide_linear(-ti).0;
            }
            let bounds = t.iter().map(|&x| dtn.eval(x).abs() / nf).collect();
            let active = (0..half).chain((n - half)..n).collect();
            (u.scale(1.0 / nf), (m + 1) / 2, t, bounds, active)
        };

    let qv: Vec<f64> = nodes.iter().map(|&x| q.eval(x).abs()).collect();
    let constraint_excess = qv
        .iter()
        .zip(&bounds)
        .map(|(v, b)| {
            if *b > 0.0 {
                v / b - 1.0
            } else if *v > 0.0 {
                f64::INFINITY
            } else {
                -1.0
            }
        })
        .fold(f64::NEG_INFINITY, f64::max);
    let active_deviation = active
        .iter()
        .map(|&i| (qv[i] - bounds[i]).abs())
        .fold(0.0, f64::max);
    let boundary_value = q.eval(1.0).abs().max(q.eval(-1.0).abs());
    let f = (0..s).fold(q, |acc, _| acc.multiply(&x2m1));
    let value = f.nth_derivative(k).eval(0.0).abs();
    Ok(MdBound {
        m,
        k,
        n,
        value,
        constraint_excess,
        active_deviation,
        boundary_value,
    })
}

/// `ω^{(k)}(1)` for the snake `(x² − 1)^s T_n` (`m = 2s`) or
/// `(x² − 1)^s T_n′ / n` (`m = 2s − 1`).
pub fn md_markov_side(m: usize, k: usize, n: usize) -> f64 {
    let x2m1 = ChebPoly::new(vec![-0.5, 0.0, 0.5]);
    let (base, s) = if m % 2 == 0 {
        (ChebPoly::basis(n), m / 2)
    } else {
        (
            ChebPoly::basis(n).derivative().scale(1.0 / n as f64),
            (m + 1) / 2,
        )
    };
    let w = (0..s).fold(base, |acc, _| acc.multiply(&x2m1));
    w.nth_derivative(k).eval(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub m_side: f64,
    pub d_side: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub rows: Vec<GrowthRow>,
    pub m_exponent: f64,
    pub d_exponent: f64,
    /// `d/n^k` strictly increasing and `d/n^{k+½}` strictly decreasing.
    pub log_factor: bool,
}

/// Log–log growth exponents of both sides over `ns`.
pub fn md_growth_fit(m: usize, k: usize, ns: &[usize]) -> Result<GrowthFit> {
    if ns.len() < 4 || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "need an increasing list of at least 4 degrees".into(),
        ));
    }
    let rows: Vec<GrowthRow> = ns
        .par_iter()
        .map(|&n| {
            let d = md_lower_bound(m, k, n)?;
            Ok(GrowthRow {
                n,
                m_side: md_markov_side(m, k, n),
                d_side: d.value,
            })
        })
        .collect::<Result<_>>()?;
    let ln: Vec<f64> = rows.iter().map(|r| (r.n as f64).ln()).collect();
    let lm: Vec<f64> = rows.iter().map(|r| r.m_side.abs().ln()).collect();
    let ld: Vec<f64> = rows.iter().map(|r| r.d_side.ln()).collect();
    let kf = k as f64;
    let r1: Vec<f64> = rows
        .iter()
        .map(|r| r.d_side / (r.n as f64).powf(kf))
        .collect();
    let r2: Vec<f64> = rows
        .iter()
        .map(|r| r.d_side / (r.n as f64).powf(kf + 0.5))
        .collect();
    let log_factor = r1.windows(2).all(|w| w[1] > w[0]) && r2.windows(2).all(|w| w[1] < w[0]);
    Ok(GrowthFit {
        m_exponent: ls_slope(&ln, &lm),
        d_exponent: ls_slope(&ln, &ld),
        log_factor,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snake::{snake_construct, Majorant};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn extrema(n: usize) -> Vec<f64> {
        (0..=n).map(|i| (PI * i as f64 / n as f64).cos()).collect()
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(positivity_profile(&ChebPoly::basis(6)).k0, Some(0));
        let w = (&ChebPoly::basis(8) - &ChebPoly::basis(6)).scale(0.5);
        assert_eq!(positivity_profile(&w).k0, Some(1));
        let (_, s) = catalog_majorant(&CatalogCase::MuM { m: 2 }, 10).unwrap();
        assert_eq!(positivity_profile(&s.omega).k0, Some(2));
    }

    #[test]
    fn pointwise_hand_example() {
        let v = ds_pointwise(&[1.0, 0.0, -1.0], &[1.0; 3], 1, 1.0).unwrap();
        assert_relative_eq!(v, 4.0, epsilon = 1e-13);
        let nodes = extrema(5);
        let mu = vec![0.7, 1.0, 0.2, 0.9, 1.3, 0.5];
        for (j, &x) in nodes.iter().enumerate() {
            assert_relative_eq!(
                ds_pointwise(&nodes, &mu, 0, x).unwrap(),
                mu[j],
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn pointwise_matches_enumeration() {
        let nodes = extrema(5);
        let mu = [1.0; 6];
        let a = ds_pointwise(&nodes, &mu, 2, 0.3).unwrap();
        let b = brute_force_ds(&nodes, &mu, 2, BruteTarget::At(0.3)).unwrap();
        assert_relative_eq!(a, b, max_relative = 1e-11);
    }

    #[test]
    fn coincident_nodes_are_rejected() {
        assert_eq!(
            ds_pointwise(&[1.0, 1.0, 0.0], &[1.0; 3], 1, 0.0),
            Err(Error::BoundaryDegenerate)
        );
    }

    #[test]
    fn brute_force_examples() {
        let v = brute_force_ds(&[1.0, 0.0, -1.0], &[1.0; 3], 1, BruteTarget::At(1.0)).unwrap();
        assert_relative_eq!(v, 4.0, epsilon = 1e-12);
        let v = brute_force_ds(&extrema(4), &[1.0; 5], 1, BruteTarget::Norm).unwrap();
        assert_relative_eq!(v, 16.0, epsilon = 1e-10);
        let v = brute_force_ds(&extrema(3), &[0.0; 4], 1, BruteTarget::Norm).unwrap();
        assert_eq!(v, 0.0);
        assert_eq!(
            brute_force_ds(&extrema(13), &[1.0; 14], 1, BruteTarget::Norm),
            Err(Error::TooLarge(13))
        );
    }

    #[test]
    fn classical_ds_constant() {
        let s = snake_construct(&Majorant::unit(), 6).unwrap();
        let (v, x) = ds_constant(&s, 1).unwrap();
        assert_relative_eq!(v, 36.0, max_relative = 1e-10);
        assert_eq!(x, 1.0);
    }

    #[test]
    fn markov_examples() {
        let s = snake_construct(&Majorant::unit(), 4).unwrap();
        let m = markov_attainment(&s, 2).unwrap();
        assert_relative_eq!(m.norm, 80.0, max_relative = 1e-13);
        assert!(m.attained_at_one);
        let (_, s) = catalog_majorant(&CatalogCase::Sqrt1mx2, 10).unwrap();
        let m = markov_attainment(&s, 1).unwrap();
        assert_relative_eq!(m.value_at_1, 2.0 * 9.0, max_relative = 1e-12);
    }

    #[test]
    fn theorem_main_examples() {
        let r = verify_theorem_main(&CatalogCase::Unit, 7, 2).unwrap();
        assert_eq!(r.verdict, Verdict::ConfirmsTheoremMain);
        // T_7 = 64x⁷ − 112x⁵ + 56x³ − 7x
        let oracle = 64.0 * 42.0 - 112.0 * 20.0 + 56.0 * 6.0;
        assert_relative_eq!(r.omega_k_at_1, oracle, max_relative = 1e-12);
        let r = verify_theorem_main(&CatalogCase::Case1 { a: 1.0, b: 1.0 }, 8, 2).unwrap();
        assert_eq!(r.verdict, Verdict::ConfirmsTheoremMain);
        let r = verify_theorem_main(&CatalogCase::MuM { m: 2 }, 10, 1).unwrap();
        assert_eq!(r.verdict, Verdict::PositivityFails);
        assert!(r.ds_constant.is_none());
    }

    #[test]
    fn report_serializations() {
        let r = verify_theorem_main(&CatalogCase::Unit, 5, 1).unwrap();
        let kv = r.to_key_value();
        assert!(kv.contains("verdict=ConfirmsTheoremMain"));
        assert!(kv.contains("n=5"));
        let row = r.to_csv_row();
        assert_eq!(
            row.split(',').count(),
            ExtremalReport::CSV_HEADER.split(',').count()
        );
    }

    #[test]
    fn q1_node_constraints() {
        let b = md_lower_bound(2, 1, 20).unwrap();
        assert!(b.active_deviation < 1e-12);
        assert!(b.constraint_excess < 1e-12);
        assert!(b.boundary_value < 1e-12);
        assert!(b.value > 0.0);
    }

    #[test]
    fn q2_node_constraints() {
        let b = md_lower_bound(1, 1, 21).unwrap();
        assert!(b.active_deviation < 1e-10);
        assert!(b.constraint_excess < 1e-10);
    }

    #[test]
    fn parity_is_enforced() {
        assert!(matches!(md_lower_bound(2, 1, 21), Err(Error::Parity(_))));
        assert!(matches!(md_lower_bound(1, 1, 20), Err(Error::Parity(_))));
    }

    #[test]
    fn markov_side_exponent() {
        let fit = md_growth_fit(2, 2, &[21, 41, 81, 161, 321]).unwrap();
        assert!((fit.m_exponent - 2.0).abs() < 0.1);
    }

    #[test]
    fn dtau_bound_holds_for_chebyshev() {
        let s = snake_construct(&Majorant::unit(), 6).unwrap();
        let c = dtau_consistency(&s, 1, 201).unwrap();
        assert!(c.holds);
        assert_relative_eq!(c.tau_max, 36.0, max_relative = 1e-9);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;
        use std::f64::consts::PI;

        /// Perturbed Chebyshev extrema: distinct, descending, well separated.
        fn nodes_and_mu(max_n: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
            (2..=max_n).prop_flat_map(|n| {
                (
                    prop::collection::vec(-0.3f64..0.3, n + 1),
                    prop::collection::vec(0.2f64..2.0, n + 1),
                )
                    .prop_map(move |(d, mu)| {
                        let nodes = (0..=n)
                            .map(|j| {
                                let shift = if j == 0 || j == n { 0.0 } else { d[j] };
                                (PI * (j as f64 + shift) / n as f64).cos()
                            })
                            .collect();
                        (nodes, mu)
                    })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn pointwise_scales_linearly((nodes, mu) in nodes_and_mu(9), k in 0usize..4, x in -1.0f64..=1.0, lambda in 0.01f64..100.0) {
                let k = k.min(nodes.len() - 1);
                let base = ds_pointwise(&nodes, &mu, k, x).unwrap();
                let scaled: Vec<f64> = mu.iter().map(|m| lambda * m).collect();
                let v = ds_pointwise(&nodes, &scaled, k, x).unwrap();
                prop_assert!((v - lambda * base).abs() <= 1e-14 * (lambda * base).max(f64::MIN_POSITIVE));
            }

            #[test]
            fn enumeration_picks_derivative_signs((nodes, mu) in nodes_and_mu(7), k in 1usize..4, x in -1.0f64..=1.0) {
                let k = k.min(nodes.len() - 1);
                let basis = LagrangeBasis::new(&nodes).unwrap();
                let vals: Vec<f64> = basis.derivatives(k).iter().map(|l| l.eval(x)).collect();
                let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                prop_assume!(vals.iter().all(|v| v.abs() > 1e-9 * scale));
                let (best, signs) = brute_force_ds_signs(&nodes, &mu, k, BruteTarget::At(x)).unwrap();
                let flip = if vals[0] > 0.0 { 1 } else { -1 };
                for (s, v) in signs.iter().zip(&vals) {
                    prop_assert_eq!(*s, flip * if *v > 0.0 { 1 } else { -1 });
                }
                let pw = ds_pointwise(&nodes, &mu, k, x).unwrap();
                prop_assert!((best - pw).abs() <= 1e-9 * pw.max(1.0));
            }

            #[test]
            fn oracles_agree((nodes, mu) in nodes_and_mu(7), k in 1usize..4) {
                let k = k.min(nodes.len() - 1);
                let (ds, _) = ds_constant_nodes(&nodes, &mu, k).unwrap();
                let brute = brute_force_ds(&nodes, &mu, k, BruteTarget::Norm).unwrap();
                prop_assert!((ds - brute).abs() <= 1e-9 * ds.max(1.0), "{} vs {}", ds, brute);
            }

            #[test]
            fn feasibility_chain(idx in 0usize..10, extra in 0usize..10, k in 1usize..5) {
                let mut cases = CatalogCase::defaults();
                cases.push(CatalogCase::Unit);
                let case = &cases[idx % cases.len()];
                let n = case.r().unwrap().degree() + extra + 1;
                let k = k.min(n);
                let (_, snake) = catalog_majorant(case, n).unwrap();
                prop_assume!(!snake.is_boundary_degenerate());
                let m = markov_attainment(&snake, k).unwrap();
                let (ds, _) = ds_constant(&snake, k).unwrap();
                let tol = 1e-7 * ds.max(1.0);
                prop_assert!(m.value_at_1 <= m.norm + tol);
                prop_assert!(m.norm <= ds + tol, "‖ω^(k)‖ = {} > D* = {}", m.norm, ds);
            }
        }
    }
}
