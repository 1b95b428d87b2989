use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};

use anyhow::{Context, Result};
use rayon::prelude::*;

use snakeineq::extremal::{
    markov_attainment, md_growth_fit, md_parity_ok, positivity_profile, verify_theorem_main,
};
use snakeineq::scans::{
    default_grid, fg_bound_check, interlacing_check, psi_identity_check, tau_scan,
    tau_second_deriv_check, verify_prop_dd, write_tau_csv,
};
use snakeineq::{catalog_majorant, CatalogCase, ChebPoly, Verdict};

use crate::args::{
    parse_f64, parse_f64_list, parse_int_set, parse_usize, Format, IntSet, Opts, MAX_DEGREE,
    MIN_SCAN_GRID,
};
use crate::output::{num, Table};
use crate::{out, outln, UsageError};

/// `Ok(true)` when every check passed.
pub type Outcome = Result<bool>;

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn degrees(opts: &Opts, default: &str) -> Result<IntSet> {
    let set = parse_int_set("n", opts.n.as_deref().unwrap_or(default))?;
    if let Some(&n) = set.values.iter().find(|&&n| n > MAX_DEGREE) {
        return Err(usage(format!(
            "--n: degree {n} exceeds the cap of {MAX_DEGREE}"
        )));
    }
    Ok(set)
}

fn single_degree(opts: &Opts) -> Result<usize> {
    let set = degrees(opts, "")?;
    match set.values.as_slice() {
        [n] if !set.is_range => Ok(*n),
        _ => Err(usage("--n: expected a single degree")),
    }
}

fn t_values(opts: &Opts) -> Result<Vec<f64>> {
    match &opts.t {
        Some(t) => {
            let ts = parse_f64_list("t", t)?;
            if ts.iter().any(|t| t.abs() > 1.0) {
                return Err(usage("--t: values must lie in [-1, 1]"));
            }
            Ok(ts)
        }
        None => Ok((1..=9)
            .flat_map(|j| [0.1 * j as f64, -0.1 * j as f64])
            .collect()),
    }
}

fn emit(opts: &Opts, table: &Table) -> Result<()> {
    match &opts.out {
        Some(path) => {
            std::fs::write(path, table.csv())
                .with_context(|| format!("cannot write {}", path.display()))?;
        }
        None => out!("{}", table.render(opts.format())),
    }
    Ok(())
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn pass_fail(b: bool) -> String {
    if b { "PASS" } else { "FAIL" }.to_string()
}

fn footer(opts: &Opts, line: &str) -> Result<()> {
    if opts.format() == Format::Csv && opts.out.is_none() {
        eprintln!("{line}");
    } else {
        outln!("{line}");
    }
    Ok(())
}

fn finish(opts: &Opts, total: usize, failed: usize) -> Outcome {
    if failed == 0 {
        footer(opts, &format!("all {total} checks passed"))?;
    } else {
        footer(opts, &format!("{failed} of {total} checks FAILED"))?;
    }
    Ok(failed == 0)
}

pub fn parse_case(opts: &Opts) -> Result<Vec<CatalogCase>> {
    let name = opts
        .case
        .as_deref()
        .unwrap_or("defaults")
        .trim()
        .to_ascii_lowercase();
    let f = |key: &str, v: &Option<String>, default: f64| -> Result<f64> {
        Ok(match v {
            Some(v) => parse_f64(key, v)?,
            None => default,
        })
    };
    let u = |key: &str, v: &Option<String>, default: usize| -> Result<usize> {
        Ok(match v {
            Some(v) => parse_usize(key, v)?,
            None => default,
        })
    };
    let list = |key: &str, v: &Option<String>, default: &[f64]| -> Result<Vec<f64>> {
        Ok(match v {
            Some(v) => parse_f64_list(key, v)?,
            None => default.to_vec(),
        })
    };
    let case = match name.as_str() {
        "defaults" => return Ok(CatalogCase::defaults()),
        "unit" => CatalogCase::Unit,
        "case1" => CatalogCase::Case1 {
            a: f("a", &opts.a, 1.0)?,
            b: f("b", &opts.b, 1.0)?,
        },
        "case2" => CatalogCase::Case2 {
            l: u("l", &opts.l, 2)?,
            m: u("m", &opts.m, 0)?,
        },
        "case3" => CatalogCase::Case3 {
            a: f("a", &opts.a, 2.0)?,
        },
        "case4" => CatalogCase::Case4 {
            c: list("c", &opts.c, &[1.0, 2.0])?,
        },
        "case5" => CatalogCase::Case5 {
            r: list("r", &opts.r, &[1.0, 1.0])?,
        },
        "case7" => CatalogCase::Case7 {
            c: f("c", &opts.c, 1.0)?,
            a: f("a", &opts.a, 2.0)?,
        },
        "case8" => CatalogCase::Case8 {
            a: f("a", &opts.a, 1.0)?,
        },
        "case9" => CatalogCase::Case9 {
            l: u("l", &opts.l, 1)?,
            c: list("c", &opts.c, &[1.0, 2.0])?,
        },
        "case10" => {
            let factors = match &opts.factors {
                None => vec![(1.0, 1.0), (1.0, 1.0)],
                Some(s) => s
                    .split(';')
                    .map(|p| {
                        let (a, b) = p
                            .split_once(':')
                            .ok_or_else(|| usage(format!("--factors: `{p}` is not a:b")))?;
                        Ok((parse_f64("factors", a)?, parse_f64("factors", b)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            CatalogCase::Case10 { factors }
        }
        "sqrt1mx2" => CatalogCase::Sqrt1mx2,
        "mu_m" | "mum" => CatalogCase::MuM {
            m: u("m", &opts.m, 2)?,
        },
        other => return Err(usage(format!("unknown case `{other}`"))),
    };
    case.r()?;
    Ok(vec![case])
}

pub fn snake(opts: &Opts) -> Outcome {
    let mut cases = parse_case(opts)?;
    if opts.case.is_none() || cases.len() != 1 {
        return Err(usage("--case: name a single catalog case"));
    }
    let case = cases.remove(0);
    let n = single_degree(opts)?;
    let (mu, s) = catalog_majorant(&case, n)?;
    let prof = positivity_profile(&s.omega);
    let fmt = opts.format();

    outln!("case: {case}");
    outln!("degree: {}", s.degree());
    outln!("base: {}", s.base);
    outln!("bound_excess: {}", num(s.bound_excess(8 * s.degree() + 64)));

    let mut coeffs = Table::new(&["i", "coefficient"]);
    for (i, c) in s.omega.coeffs().iter().enumerate() {
        coeffs.push(vec![i.to_string(), num(*c)]);
    }
    outln!("\nChebyshev coefficients:");
    out!("{}", coeffs.render(fmt));

    let mut nodes = Table::new(&["x", "sign", "multiplicity", "mu", "omega"]);
    for nd in &s.nodes {
        nodes.push(vec![
            num(nd.x),
            nd.sign.to_string(),
            nd.multiplicity.to_string(),
            num(mu.mu(nd.x)),
            num(s.omega.eval(nd.x)),
        ]);
    }
    outln!("\nOscillation nodes:");
    out!("{}", nodes.render(fmt));

    let mut margins = Table::new(&["k", "min_coefficient"]);
    for (k, m) in prof.margins.iter().enumerate() {
        margins.push(vec![k.to_string(), num(*m)]);
    }
    outln!("\nPositivity profile:");
    out!("{}", margins.render(fmt));
    outln!("k0: {}", prof.k0.map_or("none".into(), |k| k.to_string()));
    Ok(true)
}

pub fn theorem_main(opts: &Opts) -> Outcome {
    let cases = parse_case(opts)?;
    let ns = degrees(opts, "6..14")?.values;
    let ks = opts
        .k
        .as_deref()
        .map(|k| parse_int_set("k", k))
        .transpose()?;
    let mut cells = Vec::new();
    for (ci, case) in cases.iter().enumerate() {
        for &n in &ns {
            let kr: Vec<usize> = match &ks {
                Some(ks) => ks.values.clone(),
                None => (case.ds_min_k()..=n).collect(),
            };
            for k in kr.into_iter().filter(|&k| k >= 1 && k <= n) {
                cells.push((ci, n, k));
            }
        }
    }
    if cells.is_empty() {
        return Err(usage("no (case, n, k) cells with 1 <= k <= n"));
    }
    let results: Vec<_> = cells
        .par_iter()
        .map(|&(ci, n, k)| -> Result<(String, bool)> {
            let case = &cases[ci];
            let r = verify_theorem_main(case, n, k)?;
            let expected = k >= case.ds_min_k();
            let ok = if r.ds_constant.is_some() {
                r.verdict == Verdict::ConfirmsTheoremMain
            } else {
                // Multiple boundary node: only positivity and Markov attainment apply.
                let (_, s) = catalog_majorant(case, n)?;
                r.positivity_k0.is_some_and(|k0| k0 < k)
                    && markov_attainment(&s, k)?.attained_at_one
            };
            let status = match (expected, ok) {
                (false, _) => "-",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            Ok((
                format!("{},{},{status}", r.to_csv_row(), yes_no(expected)),
                !expected || ok,
            ))
        })
        .collect::<Result<_>>()?;

    let header: Vec<&str> = snakeineq::ExtremalReport::CSV_HEADER
        .split(',')
        .chain(["expected", "status"])
        .collect();
    let mut table = Table::new(&header);
    let mut failed = 0;
    for (row, ok) in &results {
        let mut cells = split_csv(row);
        let status = cells.pop().unwrap_or_default();
        let expected = cells.pop().unwrap_or_default();
        cells.push(expected);
        cells.push(status);
        table.push(cells);
        failed += usize::from(!ok);
    }
    emit(opts, &table)?;
    finish(opts, results.len(), failed)
}

fn split_csv(row: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in row.chars() {
        match ch {
            '"' => quoted = !quoted,
            ',' if !quoted => out.push(std::mem::take(&mut cur)),
            c => cur.push(c),
        }
    }
    out.push(cur);
    out
}

fn scan_grid(opts: &Opts, n: usize) -> Result<usize> {
    let g = match &opts.grid {
        Some(g) => parse_usize("grid", g)?,
        None => default_grid(n),
    };
    if g < MIN_SCAN_GRID {
        return Err(usage(format!(
            "--grid must be at least {MIN_SCAN_GRID} (got {g})"
        )));
    }
    Ok(g)
}

pub fn tau_max(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "3..20")?.values;
    let mut table = Table::new(&[
        "n",
        "grid",
        "global_max",
        "n2",
        "argmax_x",
        "argmax_t",
        "interior_max",
        "interior_ratio",
        "status",
    ]);
    let mut failed = 0;
    for &n in &ns {
        if n == 0 {
            return Err(usage("--n: degrees must be positive"));
        }
        let g = scan_grid(opts, n)?;
        let r = tau_scan(n, g, g)?;
        let n2 = (n * n) as f64;
        let (x, t) = r.argmax;
        let ok = r.global_max >= n2 - 1e-5 && r.global_max <= n2 * (1.0 + 1e-9) && x.abs() == 1.0;
        failed += usize::from(!ok);
        table.push(vec![
            n.to_string(),
            g.to_string(),
            num(r.global_max),
            num(n2),
            num(x),
            num(t),
            num(r.interior_max),
            num(r.interior_max / n2),
            pass_fail(ok),
        ]);
    }
    emit(opts, &table)?;
    finish(opts, ns.len(), failed)
}

pub fn fg(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "3")?.values;
    let mut table = Table::new(&["n", "f_max", "g_max", "g_majorizes", "status"]);
    let mut failed = 0;
    for &n in &ns {
        let r = fg_bound_check(n)?;
        failed += usize::from(!r.pass);
        table.push(vec![
            n.to_string(),
            num(r.f_max),
            num(r.g_max),
            r.g_majorizes.map_or("-".into(), yes_no),
            pass_fail(r.pass),
        ]);
    }
    emit(opts, &table)?;
    finish(opts, ns.len(), failed)
}

pub fn tau2(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "3..50")?.values;
    let rows: Vec<_> = ns
        .par_iter()
        .map(|&n| tau_second_deriv_check(n).map(|r| (n, r)))
        .collect::<snakeineq::Result<_>>()?;
    let mut table = Table::new(&[
        "n",
        "min_at_one",
        "closed_form_gap",
        "min_rect",
        "tstar",
        "status",
    ]);
    let mut failed = 0;
    for (n, r) in &rows {
        failed += usize::from(!r.pass);
        table.push(vec![
            n.to_string(),
            num(r.min_at_one),
            num(r.closed_form_gap),
            num(r.min_rect),
            r.tstar.map_or("-".into(), num),
            pass_fail(r.pass),
        ]);
    }
    emit(opts, &table)?;
    finish(opts, rows.len(), failed)
}

pub fn prop_dd(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "3..16")?.values;
    let nt = match &opts.grid {
        Some(g) => parse_usize("grid", g)?,
        None => 2001,
    };
    let mut table = Table::new(&[
        "n",
        "critical_points",
        "max_ratio_a",
        "d23_roots",
        "global_max",
        "status",
    ]);
    let mut failed = 0;
    for &n in &ns {
        let r = verify_prop_dd(n, nt)?;
        failed += usize::from(!r.pass);
        table.push(vec![
            n.to_string(),
            r.critical_points.to_string(),
            num(r.max_ratio_a),
            r.d23_roots.to_string(),
            num(r.global_max),
            pass_fail(r.pass),
        ]);
    }
    emit(opts, &table)?;
    finish(opts, ns.len(), failed)
}

pub fn interlace(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "3..20")?.values;
    let ts = t_values(opts)?;
    let mut table = Table::new(&[
        "n",
        "t",
        "skipped",
        "interlaces",
        "reciprocal_root",
        "leading_sign",
        "status",
    ]);
    let mut failed = 0;
    for &n in &ns {
        for &t in &ts {
            let r = interlacing_check(n, t)?;
            let ok = r.passes();
            failed += usize::from(!ok);
            table.push(vec![
                n.to_string(),
                num(t),
                r.skipped.clone().unwrap_or_else(|| "-".into()),
                yes_no(r.interlaces),
                yes_no(r.reciprocal_root),
                num(r.leading_sign),
                pass_fail(ok),
            ]);
        }
    }
    emit(opts, &table)?;
    finish(opts, ns.len() * ts.len(), failed)
}

/// ψ-identities for `ω = T_n` at its zeros, or for `ω = T_n − T_n(t)` at
/// the given `t`.
pub fn psi(opts: &Opts) -> Outcome {
    let ns = degrees(opts, "2..12")?.values;
    let mut table = Table::new(&["n", "t", "psi1", "psi2", "status"]);
    let mut total = 0;
    let mut failed = 0;
    for &n in &ns {
        if n == 0 {
            return Err(usage("--n: degrees must be positive"));
        }
        let tn = ChebPoly::basis(n);
        let cells: Vec<(ChebPoly, f64)> = match &opts.t {
            Some(_) => t_values(opts)?
                .into_iter()
                .map(|t| (&tn - &ChebPoly::constant(tn.eval(t)), t))
                .collect(),
            None => (1..=n)
                .map(|j| (tn.clone(), (PI * (j as f64 - 0.5) / n as f64).cos()))
                .collect(),
        };
        for (omega, t) in cells {
            let r = psi_identity_check(&omega, t)?;
            let ok = r.psi1 <= 1e-9 && r.psi2 <= 1e-9;
            total += 1;
            failed += usize::from(!ok);
            table.push(vec![
                n.to_string(),
                num(t),
                num(r.psi1),
                num(r.psi2),
                pass_fail(ok),
            ]);
        }
    }
    emit(opts, &table)?;
    finish(opts, total, failed)
}

pub fn growth(opts: &Opts) -> Outcome {
    let m = parse_usize(
        "m",
        opts.m.as_deref().ok_or_else(|| usage("--m is required"))?,
    )?;
    let k = parse_usize("k", opts.k.as_deref().unwrap_or("1"))?;
    if m == 0 || k == 0 {
        return Err(usage("--m and --k must be positive"));
    }
    let set = degrees(opts, "")?;
    let ns: Vec<usize> = if set.is_range {
        set.values
            .iter()
            .copied()
            .filter(|&n| md_parity_ok(m, k, n))
            .collect()
    } else {
        let bad: Vec<usize> = set
            .values
            .iter()
            .copied()
            .filter(|&n| !md_parity_ok(m, k, n))
            .collect();
        if !bad.is_empty() {
            let rule = if m % 2 == 0 {
                "n ≢ k (mod 2)"
            } else {
                "n ≡ k (mod 2)"
            };
            let fix = |d: isize| {
                set.values
                    .iter()
                    .map(|&n| {
                        if md_parity_ok(m, k, n) {
                            n as isize
                        } else {
                            n as isize + d
                        }
                    })
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            return Err(usage(format!(
                "parity: m = {m}, k = {k} requires {rule}; n = {bad:?} violate it. Try --n {} or --n {}",
                fix(1),
                fix(-1)
            )));
        }
        set.values
    };
    let fit = md_growth_fit(m, k, &ns)?;
    let mut table = Table::new(&[
        "n",
        "m_side",
        "d_side",
        "d_over_m",
        "d_over_nk",
        "d_over_nk_ln_n",
    ]);
    let kf = k as f64;
    for r in &fit.rows {
        let nf = r.n as f64;
        table.push(vec![
            r.n.to_string(),
            num(r.m_side),
            num(r.d_side),
            num(r.d_side / r.m_side.abs()),
            num(r.d_side / nf.powf(kf)),
            num(r.d_side / (nf.powf(kf) * nf.ln())),
        ]);
    }
    emit(opts, &table)?;
    footer(opts, &format!("m_exponent: {:.4}", fit.m_exponent))?;
    footer(opts, &format!("d_exponent: {:.4}", fit.d_exponent))?;
    footer(opts, &format!("log_factor: {}", fit.log_factor))?;
    Ok(true)
}

pub fn scan_tau(opts: &Opts) -> Outcome {
    let n = single_degree(opts)?;
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let g = scan_grid(opts, n)?;
    let csv_grid = match &opts.csv_grid {
        Some(v) => parse_usize("csv-grid", v)?,
        None => 201,
    };
    if csv_grid < 2 {
        return Err(usage("--csv-grid must be at least 2"));
    }
    let r = tau_scan(n, g, g)?;
    if let Some(path) = &opts.out {
        let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut w = BufWriter::new(f);
        write_tau_csv(n, csv_grid, &mut w)?;
        w.flush()?;
    }
    let n2 = (n * n) as f64;
    let mut summary = Table::new(&["key", "value"]);
    for (k, v) in [
        ("n", n.to_string()),
        ("grid", g.to_string()),
        ("global_max", num(r.global_max)),
        ("global_max_over_n2", num(r.global_max / n2)),
        ("argmax_x", num(r.argmax.0)),
        ("argmax_t", num(r.argmax.1)),
        ("boundary_max", num(r.boundary_max)),
        ("interior_max", num(r.interior_max)),
        ("interior_max_over_n2", num(r.interior_max / n2)),
        ("interior_argmax_x", num(r.interior_argmax.0)),
        ("interior_argmax_t", num(r.interior_argmax.1)),
        ("local_extrema", r.local_extrema.len().to_string()),
    ] {
        summary.push(vec![k.to_string(), v]);
    }
    out!("{}", summary.render(opts.format()));
    if !r.local_extrema.is_empty() {
        let mut ext = Table::new(&["x", "t", "abs_tau_dx"]);
        for &(x, t, v) in &r.local_extrema {
            ext.push(vec![num(x), num(t), num(v)]);
        }
        outln!("");
        out!("{}", ext.render(opts.format()));
    }
    Ok(true)
}
