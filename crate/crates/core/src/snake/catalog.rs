//! Majorants with known extremal behaviour, addressable by name.
//!
//! Each case knows its `R`, its parameter constraints, and the smallest `k`
//! from which `M_{k,μ} = D*_{k,μ} = ω^{(k)}(1)` is expected.

use std::fmt;

use crate::chebcore::{ChebPoly, Interval};
use crate::error::{Error, Result};
use crate::snake::{product_snake, snake_construct, Majorant, Snake};

#[derive(Clone, Debug, PartialEq)]
pub enum CatalogCase {
    /// `μ ≡ 1`.
    Unit,
    /// `√(a x² + b x + 1)`, `b ≥ 0`.
    Case1 { a: f64, b: f64 },
    /// `(1 + x)^{ℓ/2} (1 − x²)^{m/2}`.
    Case2 { l: usize, m: usize },
    /// `√(1 + (a² − 1) x²)`.
    Case3 { a: f64 },
    /// `√Π(1 + c_i² x²)`.
    Case4 { c: Vec<f64> },
    /// `√R_m(x²)`; `r` are the monomial coefficients of `R_m` in `y = x²`.
    Case5 { r: Vec<f64> },
    /// `√((1 + c² x²)(1 + (a² − 1) x²))`.
    Case7 { c: f64, a: f64 },
    /// `√(1 − a² x² + a² x⁴)`.
    Case8 { a: f64 },
    /// `(1 + x)^{ℓ/2} √Π(1 + c_i² x²)`, built as a product snake.
    Case9 { l: usize, c: Vec<f64> },
    /// `√Π(a_i x² + b_i x + 1)`, built as a product snake of case-1 factors.
    Case10 { factors: Vec<(f64, f64)> },
    /// `√(1 − x²)`.
    Sqrt1mx2,
    /// `μ_m = (1 − x²)^{m/2}`.
    MuM { m: usize },
}

impl fmt::Display for CatalogCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        match self {
            CatalogCase::Unit => write!(f, "unit"),
            CatalogCase::Case1 { a, b } => write!(f, "case1(a={a},b={b})"),
            CatalogCase::Case2 { l, m } => write!(f, "case2(l={l},m={m})"),
            CatalogCase::Case3 { a } => write!(f, "case3(a={a})"),
            CatalogCase::Case4 { c } => write!(f, "case4(c={})", list(c)),
            CatalogCase::Case5 { r } => write!(f, "case5(r={})", list(r)),
            CatalogCase::Case7 { c, a } => write!(f, "case7(c={c},a={a})"),
            CatalogCase::Case8 { a } => write!(f, "case8(a={a})"),
            CatalogCase::Case9 { l, c } => write!(f, "case9(l={l},c={})", list(c)),
            CatalogCase::Case10 { factors } => {
                let s: Vec<String> = factors.iter().map(|(a, b)| format!("{a}:{b}")).collect();
                write!(f, "case10(ab={})", s.join(";"))
            }
            CatalogCase::Sqrt1mx2 => write!(f, "sqrt1mx2"),
            CatalogCase::MuM { m } => write!(f, "mu_m(m={m})"),
        }
    }
}

fn quadratic(a: f64, b: f64) -> ChebPoly {
    ChebPoly::from_monomial(&[1.0, b, a])
}

fn one_plus_c2x2(c: f64) -> ChebPoly {
    ChebPoly::from_monomial(&[1.0, 0.0, c * c])
}

fn power(p: &ChebPoly, e: usize) -> ChebPoly {
    (0..e).fold(ChebPoly::constant(1.0), |acc, _| acc.multiply(p))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Catalog(msg()))
    }
}

fn finite(vals: &[f64]) -> Result<()> {
    check(vals.iter().all(|v| v.is_finite()), || {
        "parameters must be finite".into()
    })
}

fn nonneg_on_unit(r: &ChebPoly, what: &str) -> Result<()> {
    let (min, _) = r.min_on(Interval::UNIT);
    check(min >= -1e-10 * r.max_abs_coeff(), || {
        format!("{what} is negative on [-1,1]")
    })
}

impl CatalogCase {
    /// Checks parameters and expands `R` in the Chebyshev basis.
    pub fn r(&self) -> Result<ChebPoly> {
        let r = match self {
            CatalogCase::Unit => ChebPoly::constant(1.0),
            CatalogCase::Case1 { a, b } => {
                finite(&[*a, *b])?;
                check(*b >= 0.0, || format!("case1 requires b >= 0 (b = {b})"))?;
                let r = quadratic(*a, *b);
                nonneg_on_unit(&r, "a x^2 + b x + 1")?;
                r
            }
            CatalogCase::Case2 { l, m } => {
                let one_px = ChebPoly::new(vec![1.0, 1.0]);
                let one_mx2 = ChebPoly::new(vec![0.5, 0.0, -0.5]);
                power(&one_px, *l).multiply(&power(&one_mx2, *m))
            }
            CatalogCase::Case3 { a } => {
                finite(&[*a])?;
                ChebPoly::from_monomial(&[1.0, 0.0, a * a - 1.0])
            }
            CatalogCase::Case4 { c } => {
                finite(c)?;
                check(!c.is_empty(), || "case4 needs at least one c_i".into())?;
                c.iter().fold(ChebPoly::constant(1.0), |acc, &ci| {
                    acc.multiply(&one_plus_c2x2(ci))
                })
            }
            CatalogCase::Case5 { r } => {
                finite(r)?;
                check(!r.is_empty(), || "case5 needs coefficients of R_m".into())?;
                let mut mono = vec![0.0; 2 * r.len() - 1];
                for (i, &ri) in r.iter().enumerate() {
                    mono[2 * i] = ri;
                }
                let p = ChebPoly::from_monomial(&mono);
                nonneg_on_unit(&p, "R_m(x^2)")?;
                p
            }
            CatalogCase::Case7 { c, a } => {
                finite(&[*c, *a])?;
                one_plus_c2x2(*c).multiply(&ChebPoly::from_monomial(&[1.0, 0.0, a * a - 1.0]))
            }
            CatalogCase::Case8 { a } => {
                finite(&[*a])?;
                check(a.abs() <= 2.0, || {
                    format!("case8 requires |a| <= 2 (a = {a})")
                })?;
                let a2 = a * a;
                ChebPoly::from_monomial(&[1.0, 0.0, -a2, 0.0, a2])
            }
            CatalogCase::Case9 { l, c } => {
                let base = CatalogCase::Case2 { l: *l, m: 0 }.r()?;
                base.multiply(&CatalogCase::Case4 { c: c.clone() }.r()?)
            }
            CatalogCase::Case10 { factors } => {
                check(!factors.is_empty(), || {
                    "case10 needs at least one factor".into()
                })?;
                let mut acc = ChebPoly::constant(1.0);
                for &(a, b) in factors {
                    acc = acc.multiply(&CatalogCase::Case1 { a, b }.r()?);
                }
                acc
            }
            CatalogCase::Sqrt1mx2 => ChebPoly::new(vec![0.5, 0.0, -0.5]),
            CatalogCase::MuM { m } => {
                check(*m >= 1, || "mu_m requires m >= 1".into())?;
                power(&ChebPoly::new(vec![0.5, 0.0, -0.5]), *m)
            }
        };
        Ok(r)
    }

    pub fn majorant(&self) -> Result<Majorant> {
        Ok(Majorant::new(self.r()?)?.with_tag(self.clone()))
    }

    /// Smallest `k` for which the Duffin–Schaeffer-type equality is expected.
    pub fn ds_min_k(&self) -> usize {
        match self {
            CatalogCase::Unit => 1,
            CatalogCase::Case1 { .. } => 2,
            CatalogCase::Case2 { m, .. } => m + 1,
            CatalogCase::Case3 { .. } => 2,
            CatalogCase::Case4 { .. } => 1,
            CatalogCase::Case5 { r } => r.len(),
            CatalogCase::Case7 { .. } => 2,
            CatalogCase::Case8 { .. } => 1,
            CatalogCase::Case9 { .. } => 1,
            CatalogCase::Case10 { factors } => factors.len() + 1,
            CatalogCase::Sqrt1mx2 => 2,
            CatalogCase::MuM { m } => m + 1,
        }
    }

    /// Default parameters used throughout the tests and the CLI.
    pub fn defaults() -> Vec<CatalogCase> {
        vec![
            CatalogCase::Case1 { a: 1.0, b: 1.0 },
            CatalogCase::Case2 { l: 2, m: 0 },
            CatalogCase::Case2 { l: 1, m: 1 },
            CatalogCase::Case3 { a: 2.0 },
            CatalogCase::Case4 { c: vec![1.0, 2.0] },
            CatalogCase::Case7 { c: 1.0, a: 2.0 },
            CatalogCase::Case8 { a: 1.0 },
            CatalogCase::Case9 {
                l: 1,
                c: vec![1.0, 2.0],
            },
            CatalogCase::Case10 {
                factors: vec![(1.0, 1.0), (1.0, 1.0)],
            },
        ]
    }
}

/// The majorant of `case` and its snake of degree `n`.
pub fn catalog_majorant(case: &CatalogCase, n: usize) -> Result<(Majorant, Snake)> {
    let mu = case.majorant()?;
    let s = mu.s();
    if n < s {
        return Err(Error::Catalog(format!(
            "degree n = {n} is below deg R = {s}"
        )));
    }
    let mut snake = match case {
        CatalogCase::Case9 { l, c } => {
            let s1 = snake_construct(&CatalogCase::Case2 { l: *l, m: 0 }.majorant()?, 0)?;
            let m2 = CatalogCase::Case4 { c: c.clone() }.majorant()?;
            let s2 = snake_construct(&m2, n - s)?;
            product_snake(&s1, &s2)?
        }
        CatalogCase::Case10 { factors } => {
            let mut acc: Option<Snake> = None;
            let last = factors.len() - 1;
            for (i, &(a, b)) in factors.iter().enumerate() {
                let base = if i == last { n - s } else { 0 };
                let si = snake_construct(&CatalogCase::Case1 { a, b }.majorant()?, base)?;
                acc = Some(match acc {
                    None => si,
                    Some(prev) => product_snake(&prev, &si)?,
                });
            }
            acc.expect("at least one factor")
        }
        _ => snake_construct(&mu, n - s)?,
    };
    snake.majorant = mu.clone();
    Ok((mu, snake))
}
