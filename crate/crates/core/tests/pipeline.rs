//! Public-API round trips: catalog → snake → constants → reports.

use approx::assert_relative_eq;

use snakeineq::extremal::{ds_constant, md_lower_bound, positivity_profile, verify_theorem_main};
use snakeineq::scans::{domain_classify, tau_scan, write_tau_csv};
use snakeineq::{
    catalog_majorant, CatalogCase, ChebPoly, DomainTag, Error, ExtremalReport, Verdict,
};

#[test]
fn unit_majorant_reproduces_chebyshev() {
    let (_, s) = catalog_majorant(&CatalogCase::Unit, 9).unwrap();
    let t9 = ChebPoly::basis(9);
    for (a, b) in s.omega.coeffs().iter().zip(t9.coeffs()) {
        assert!((a.abs() - b.abs()).abs() < 1e-12);
    }
    assert_eq!(s.nodes.len(), 10);
    let (ds, x) = ds_constant(&s, 2).unwrap();
    assert_relative_eq!(ds, t9.nth_derivative(2).eval(1.0), max_relative = 1e-9);
    assert_eq!(x, 1.0);
}

#[test]
fn report_serializations_agree() {
    let r = verify_theorem_main(&CatalogCase::Case4 { c: vec![1.0, 2.0] }, 8, 1).unwrap();
    assert_eq!(r.verdict, Verdict::ConfirmsTheoremMain);
    let kv = r.to_key_value();
    let csv = r.to_csv_row();
    let header: Vec<&str> = ExtremalReport::CSV_HEADER.split(',').collect();
    assert_eq!(header.len(), 10);
    assert!(kv
        .lines()
        .any(|l| l == format!("omega_k_at_1={}", r.omega_k_at_1)));
    assert!(csv.ends_with("ConfirmsTheoremMain"));
    assert!(positivity_profile(&case4_omega(8)).k0.is_some());
}

fn case4_omega(n: usize) -> ChebPoly {
    catalog_majorant(&CatalogCase::Case4 { c: vec![1.0, 2.0] }, n)
        .unwrap()
        .1
        .omega
}

#[test]
fn errors_are_typed() {
    assert!(matches!(md_lower_bound(2, 1, 21), Err(Error::Parity(_))));
    assert!(matches!(
        CatalogCase::Case1 { a: 1.0, b: -1.0 }.r(),
        Err(Error::Catalog(_))
    ));
    assert!(matches!(
        domain_classify(8, -0.5, 0.0),
        Err(Error::NegativeX(_))
    ));
}

#[test]
fn scan_and_csv_agree_on_maximum() {
    let r = tau_scan(5, 1001, 1001).unwrap();
    assert_relative_eq!(r.global_max, 25.0, max_relative = 1e-12);
    let mut buf = Vec::new();
    write_tau_csv(5, 21, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let max = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(4).unwrap().parse::<f64>().unwrap().abs())
        .fold(0.0, f64::max);
    assert_relative_eq!(max, 25.0, max_relative = 1e-12);
    assert!(text.lines().skip(1).all(|l| l.ends_with("D1")
        || l.ends_with("D2_1")
        || l.ends_with("D2_2")
        || l.ends_with("D2_3")));
    let t = (std::f64::consts::PI / 10.0).cos();
    assert_eq!(domain_classify(5, 1.0, t).unwrap(), DomainTag::D2_1);
}
