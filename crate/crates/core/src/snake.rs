//! Majorants `μ = √R`, their Fejér–Riesz factors and snake-polynomials.
//!
//! For `R ≥ 0` of degree `s` write `R(cos θ) = |A(e^{iθ})|²` with `A` real of
//! degree `s` and all zeros in the closed unit disk. Then
//! `ω(cos θ) = Re(e^{iNθ} A(e^{iθ})) = Σ a_i T_{N+i}` satisfies `|ω| ≤ μ`, and
//! since the phase of `e^{iNθ}A(e^{iθ})` is monotone it touches `±μ`
//! alternately `N + s + 1` times.

pub mod catalog;

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Complex, DMatrix};

use crate::chebcore::{ChebPoly, Interval};
use crate::error::{Error, Result};
use crate::numeric::{cheb_grid, companion_roots};
use crate::snake::catalog::CatalogCase;

/// `R(x) ≥ −NONNEG_TOL · max|c_j|` counts as nonnegative.
const NONNEG_TOL: f64 = 1e-10;
/// Zeros of `R` at `±1` are deflated while `|R(±1)| ≤ BOUNDARY_TOL · ‖R‖₁`.
const BOUNDARY_TOL: f64 = 1e-10;
/// Half-width of the band around `|z| = 1` whose roots are split evenly.
const CIRCLE_BAND: f64 = 1e-6;
/// `|ω² − R| ≤ TOUCH_TOL · ‖R‖₁` at an oscillation node.
const TOUCH_TOL: f64 = 1e-8;
const VALIDATION_POINTS: usize = 4096;

/// `μ = √R` with `R` nonnegative on `[−1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Majorant {
    r: ChebPoly,
    tag: Option<CatalogCase>,
}

impl Majorant {
    pub fn new(r: ChebPoly) -> Result<Self> {
        let (min, _) = r.min_on(Interval::UNIT);
        if min < -NONNEG_TOL * r.max_abs_coeff() {
            return Err(Error::NotNonnegative { min });
        }
        Ok(Majorant { r, tag: None })
    }

    /// `μ ≡ 1`.
    pub fn unit() -> Self {
        Majorant {
            r: ChebPoly::constant(1.0),
            tag: None,
        }
    }

    pub fn with_tag(mut self, tag: CatalogCase) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn r(&self) -> &ChebPoly {
        &self.r
    }

    pub fn s(&self) -> usize {
        self.r.degree()
    }

    pub fn tag(&self) -> Option<&CatalogCase> {
        self.tag.as_ref()
    }

    pub fn mu(&self, x: f64) -> f64 {
        self.r.eval(x).max(0.0).sqrt()
    }

    /// Order of the zero of `R` at `e = ±1`.
    pub fn boundary_order(&self, e: f64) -> usize {
        deflate_boundary(&self.r, e).1
    }

    /// Multiplicity of the oscillation node at `e = ±1`: a zero of order `r`
    /// of `R` forces `ω` to vanish to order `⌈r/2⌉` as well, so the node
    /// absorbs `⌊r/2⌋ + 1` of the `n + 1` alternations.
    pub fn boundary_node_multiplicity(&self, e: f64) -> usize {
        self.boundary_order(e) / 2 + 1
    }

    /// Some boundary node is multiple; the Lagrange (simple-node) oracle does
    /// not apply.
    pub fn is_boundary_degenerate(&self) -> bool {
        [1.0, -1.0]
            .iter()
            .any(|&e| self.boundary_node_multiplicity(e) >= 2)
    }

    /// `μ₁ μ₂ = √(R₁ R₂)`.
    pub fn product(&self, other: &Majorant) -> Majorant {
        Majorant {
            r: self.r.multiply(&other.r),
            tag: None,
        }
    }
}

/// Divides out `(x − e)` while `R(e) ≈ 0`; returns `(R̃, order)` with
/// `R = (1 − x)^order R̃` for `e = 1` and `R = (1 + x)^order R̃` for `e = −1`.
fn deflate_boundary(r: &ChebPoly, e: f64) -> (ChebPoly, usize) {
    let mut p = r.clone();
    let mut order = 0;
    while p.degree() > 0 {
        let (q, rem) = p.divide_linear(e);
        if rem.abs() > BOUNDARY_TOL * p.l1_norm() {
            break;
        }
        // (x − 1) = −(1 − x), (x + 1) = (1 + x)
        p = if e > 0.0 { -&q } else { q };
        order += 1;
    }
    (p, order)
}

/// Real coefficients `a_0..a_s` of `A(z)` with `|A(e^{iθ})|² = R(cos θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FejerFactor {
    pub a: Vec<f64>,
}

impl FejerFactor {
    pub fn eval(&self, z: Complex<f64>) -> Complex<f64> {
        self.a
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `max_θ | |A(e^{iθ})|² − R(cos θ) |` over `m` equispaced `θ ∈ [0, π]`.
    pub fn residual(&self, r: &ChebPoly, m: usize) -> f64 {
        (0..m)
            .map(|j| {
                let th = PI * j as f64 / (m - 1) as f64;
                (self.eval(Complex::from_polar(1.0, th)).norm_sqr() - r.eval(th.cos())).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Coefficient convolution: the factor of `μ₁ μ₂`.
    pub fn convolve(&self, other: &FejerFactor) -> FejerFactor {
        let mut c = vec![0.0; self.a.len() + other.a.len() - 1];
        for (i, &x) in self.a.iter().enumerate() {
            for (j, &y) in other.a.iter().enumerate() {
                c[i + j] += x * y;
            }
        }
        FejerFactor { a: c }
    }
}

fn horner(p: &[Complex<f64>], z: Complex<f64>) -> Complex<f64> {
    p.iter()
        .rev()
        .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
}

fn poly_roots(p: &[f64]) -> Vec<Complex<f64>> {
    let d = p.len() - 1;
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -p[i] / p[d];
    }
    let pc: Vec<Complex<f64>> = p.iter().map(|&x| Complex::new(x, 0.0)).collect();
    let dpc: Vec<Complex<f64>> = (1..p.len())
        .map(|k| Complex::new(k as f64 * p[k], 0.0))
        .collect();
    let radius = 1.0 + p[..d].iter().map(|c| (c / p[d]).abs()).fold(0.0, f64::max);
    companion_roots(m, |z| (horner(&pc, z), horner(&dpc, z)), radius.min(4.0))
}

fn newton_complex(p: &[Complex<f64>], dp: &[Complex<f64>], z0: Complex<f64>) -> Complex<f64> {
    let mut z = z0;
    let mut res = horner(p, z).norm();
    for _ in 0..10 {
        let d = horner(dp, z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - horner(p, z) / d;
        let r = horner(p, next).norm();
        if !(r < res) {
            break;
        }
        z = next;
        res = r;
    }
    z
}

/// Spectral factorization of `R(cos θ)`.
pub fn fejer_riesz(mu: &Majorant) -> Result<FejerFactor> {
    let r = mu.r();
    let (min, _) = r.min_on(Interval::UNIT);
    if min < -NONNEG_TOL * r.max_abs_coeff() {
        return Err(Error::NotNonnegative { min });
    }
    let (r1, plus) = deflate_boundary(r, 1.0);
    let (rt, minus) = deflate_boundary(&r1, -1.0);
    let s = rt.degree();

    let inner: Vec<Complex<f64>> = if s == 0 {
        let c0 = rt.coeffs()[0];
        if c0 <= 0.0 {
            return Err(Error::NotNonnegative { min: c0 });
        }
        vec![Complex::new(c0.sqrt(), 0.0)]
    } else {
        // z^s R̃((z + 1/z)/2): T_j contributes (z^{s+j} + z^{s−j}) / 2.
        let c = rt.coeffs();
        let mut lp = vec![0.0; 2 * s + 1];
        lp[s] += c[0];
        for (j, &cj) in c.iter().enumerate().skip(1) {
            lp[s + j] += 0.5 * cj;
            lp[s - j] += 0.5 * cj;
        }
        let lpc: Vec<Complex<f64>> = lp.iter().map(|&x| Complex::new(x, 0.0)).collect();
        let dlpc: Vec<Complex<f64>> = (1..lp.len())
            .map(|k| Complex::new(k as f64 * lp[k], 0.0))
            .collect();

        let mut kept = Vec::with_capacity(s);
        let mut on_circle = Vec::new();
        for z in poly_roots(&lp) {
            let rad = z.norm();
            if (rad - 1.0).abs() <= CIRCLE_BAND {
                on_circle.push(z);
            } else if rad < 1.0 {
                kept.push(newton_complex(&lpc, &dlpc, z));
            }
        }
        // Unit-circle roots come in even clusters; keep one representative
        // per pair.
        let mut clusters: Vec<Vec<Complex<f64>>> = Vec::new();
        for z in on_circle {
            match clusters
                .iter_mut()
                .find(|cl| (cl[0] - z).norm() <= 10.0 * CIRCLE_BAND)
            {
                Some(cl) => cl.push(z),
                None => clusters.push(vec![z]),
            }
        }
        for cl in clusters {
            if cl.len() % 2 == 1 {
                return Err(Error::OddBoundaryMultiplicity);
            }
            let mean = cl.iter().sum::<Complex<f64>>() / cl.len() as f64;
            // a root of multiplicity m is simple for the (m − 1)-th derivative
            let mut d = lpc.clone();
            for _ in 1..cl.len() {
                d = (1..d.len()).map(|k| d[k] * k as f64).collect();
            }
            let dd: Vec<Complex<f64>> = (1..d.len()).map(|k| d[k] * k as f64).collect();
            let z = newton_complex(&d, &dd, mean);
            let unit = z / z.norm();
            kept.extend(std::iter::repeat(unit).take(cl.len() / 2));
        }
        if kept.len() != s {
            return Err(Error::ConstructionFailed(format!(
                "expected {s} roots inside the disk, found {}",
                kept.len()
            )));
        }

        let mut b = vec![Complex::new(1.0, 0.0)];
        for z in &kept {
            let mut next = vec![Complex::new(0.0, 0.0); b.len() + 1];
            for (i, &bi) in b.iter().enumerate() {
                next[i + 1] += bi;
                next[i] -= bi * z;
            }
            b = next;
        }
        // Least-squares scale: R̃(cos θ) ≈ c² |B(e^{iθ})|².
        let (mut num, mut den) = (0.0, 0.0);
        for j in 0..VALIDATION_POINTS {
            let th = PI * j as f64 / (VALIDATION_POINTS - 1) as f64;
            let w = horner(&b, Complex::from_polar(1.0, th)).norm_sqr();
            num += rt.eval(th.cos()) * w;
            den += w * w;
        }
        let c = (num / den).sqrt();
        b.iter().map(|z| z * c).collect()
    };

    let mut a: Vec<f64> = inner.iter().map(|z| z.re).collect();
    for (count, sign) in [(plus, -1.0), (minus, 1.0)] {
        for _ in 0..count {
            // (1 ∓ z)/√2
            let mut next = vec![0.0; a.len() + 1];
            for (i, &ai) in a.iter().enumerate() {
                next[i] += FRAC_1_SQRT_2 * ai;
                next[i + 1] += sign * FRAC_1_SQRT_2 * ai;
            }
            a = next;
        }
    }
    let f = FejerFactor { a };
    let scale = r.l1_norm().max(f64::MIN_POSITIVE);
    let res = f.residual(r, VALIDATION_POINTS);
    if res > 1e-8 * scale {
        return Err(Error::ConstructionFailed(format!(
            "|A(e^iθ)|² deviates from R by {res:e}"
        )));
    }
    Ok(f)
}

/// An oscillation point `τ*` with its sign and (boundary) multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub x: f64,
    pub sign: i8,
    pub multiplicity: usize,
}

/// A snake-polynomial `ω = Σ a_i T_{base+i}` for `μ`, normalized so that
/// `ω = +μ` at the largest node.
#[derive(Clone, Debug)]
pub struct Snake {
    pub omega: ChebPoly,
    pub nodes: Vec<Node>,
    pub majorant: Majorant,
    pub factor: FejerFactor,
    pub base: usize,
}

impl Snake {
    pub fn degree(&self) -> usize {
        self.omega.degree()
    }

    pub fn is_boundary_degenerate(&self) -> bool {
        self.nodes.iter().any(|nd| nd.multiplicity > 1)
    }

    /// `max (|ω(x)| − μ(x))` on a Chebyshev grid.
    pub fn bound_excess(&self, m: usize) -> f64 {
        cheb_grid(m, -1.0, 1.0)
            .into_iter()
            .map(|x| self.omega.eval(x).abs() - self.majorant.mu(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `ω = Σ_{i=0}^{s} a_i T_{N+i}` validated as a snake of degree `N + s`.
pub fn snake_construct(mu: &Majorant, n_base: usize) -> Result<Snake> {
    let factor = fejer_riesz(mu)?;
    finish(mu.clone(), factor, n_base)
}

/// The snake for `μ₁ μ₂`: factors convolved, bases added.
pub fn product_snake(s1: &Snake, s2: &Snake) -> Result<Snake> {
    let factor = s1.factor.convolve(&s2.factor);
    finish(s1.majorant.product(&s2.majorant), factor, s1.base + s2.base)
}

fn finish(mu: Majorant, factor: FejerFactor, base: usize) -> Result<Snake> {
    let mut omega = ChebPoly::shifted(base, &factor.a);
    let mut nodes = oscillation_nodes(&omega, &mu).map_err(|e| match e {
        Error::NotASnake(msg) => Error::ConstructionFailed(msg),
        other => other,
    })?;
    let mut factor = factor;
    if nodes[0].sign < 0 {
        omega = -&omega;
        factor.a.iter_mut().for_each(|a| *a = -*a);
        nodes.iter_mut().for_each(|nd| nd.sign = -nd.sign);
    }
    let snake = Snake {
        omega,
        nodes,
        majorant: mu,
        factor,
        base,
    };
    let tol = 1e-8 * snake.majorant.r().l1_norm().sqrt().max(1.0);
    let excess = snake.bound_excess(VALIDATION_POINTS);
    if excess > tol {
        return Err(Error::ConstructionFailed(format!(
            "|ω| exceeds μ by {excess:e}"
        )));
    }
    Ok(snake)
}

/// Touch points of `ω` against `±μ`: interior roots of `(ω² − R)′` where
/// `ω² = R`, plus `±1` when `ω² = R` there. Sorted descending with signs
/// `σ(−1)^i`, `i` counted with multiplicity.
pub fn oscillation_nodes(omega: &ChebPoly, mu: &Majorant) -> Result<Vec<Node>> {
    let r = mu.r();
    let f = &omega.multiply(omega) - r;
    let scale = r.l1_norm().max(omega.max_abs_coeff().powi(2));
    let touches = |x: f64| f.eval(x).abs() <= TOUCH_TOL * scale;

    if omega.degree() == 0 {
        // constant snake of a constant majorant: one node suffices
        if f.max_abs_coeff() > TOUCH_TOL * scale {
            return Err(Error::NotASnake("constant ω does not touch μ".into()));
        }
        let sign = if omega.eval(1.0) >= 0.0 { 1 } else { -1 };
        return Ok(vec![Node {
            x: 1.0,
            sign,
            multiplicity: 1,
        }]);
    }

    let mut raw: Vec<(f64, usize)> = Vec::new();
    if touches(1.0) {
        raw.push((1.0, mu.boundary_node_multiplicity(1.0)));
    }
    // F carries the boundary zeros of R; dividing them out keeps the
    // multiple root of F′ at ±1 from splitting into spurious candidates.
    let mut g = f.clone();
    for e in [1.0, -1.0] {
        for _ in 0..mu.boundary_order(e) {
            let (q, rem) = g.divide_linear(e);
            if rem.abs() > TOUCH_TOL * scale || q.degree() == 0 {
                break;
            }
            g = q;
        }
    }
    let g_scale = g.l1_norm().max(f64::MIN_POSITIVE);
    let interior_touch = |x: f64| g.eval(x).abs() <= TOUCH_TOL * g_scale;
    if g.degree() >= 2 {
        for root in g.derivative().roots()? {
            let x = root.x;
            if x > -1.0 + CIRCLE_BAND && x < 1.0 - CIRCLE_BAND && interior_touch(x) {
                raw.push((x, 1));
            }
        }
    }
    if touches(-1.0) {
        raw.push((-1.0, mu.boundary_node_multiplicity(-1.0)));
    }

    let count: usize = raw.iter().map(|&(_, m)| m).sum();
    if count != omega.degree() + 1 {
        return Err(Error::NotASnake(format!(
            "{count} oscillation points (with multiplicity) for degree {}",
            omega.degree()
        )));
    }

    let mu_floor = 1e-6 * scale.sqrt();
    let mut sigma: Option<i8> = None;
    let mut idx = 0usize;
    let mut nodes = Vec::with_capacity(raw.len());
    for &(x, m) in &raw {
        let parity: i8 = if idx % 2 == 0 { 1 } else { -1 };
        if mu.mu(x) > mu_floor {
            let s: i8 = if omega.eval(x) >= 0.0 { 1 } else { -1 };
            match sigma {
                None => sigma = Some(s * parity),
                Some(sg) if sg != s * parity => {
                    return Err(Error::NotASnake(format!("sign pattern breaks at x = {x}")))
                }
                _ => {}
            }
        }
        nodes.push(Node {
            x,
            sign: parity,
            multiplicity: m,
        });
        idx += m;
    }
    let sigma = sigma.ok_or_else(|| Error::NotASnake("μ vanishes at every node".into()))?;
    nodes.iter_mut().for_each(|nd| nd.sign *= sigma);
    Ok(nodes)
}
