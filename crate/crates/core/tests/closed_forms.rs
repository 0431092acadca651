use compgf::closedform::{
    bits_for_digits, dominance_report, dominant_term, eval_closed, find_roots, partial_fractions,
    Complex, Fixed, UnitCircle, DEFAULT_DIGITS,
};
use compgf::{genfun, parse_setspec, IntPolynomial, RationalGF};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

fn poly(c: &[i64]) -> IntPolynomial {
    IntPolynomial::from_i64(c)
}

fn gf_of(spec: &str) -> RationalGF {
    genfun::composition_gf(&parse_setspec(spec).unwrap())
}

fn assert_roots(p: &[i64], real: f64, pair: (f64, f64)) {
    let roots = find_roots(&poly(p), DEFAULT_DIGITS).unwrap();
    assert_eq!(roots.len(), 3);
    let (re, im) = roots[0].value.to_f64();
    assert!((re - real).abs() < 1e-10 && im == 0.0, "{re} {im}");
    let (re, im) = roots[1].value.to_f64();
    assert!(
        (re - pair.0).abs() < 1e-10 && (im - pair.1).abs() < 1e-10,
        "{re} {im}"
    );
    assert_eq!(roots[2].value, roots[1].value.conj());
}

#[test]
fn printed_root_values() {
    assert_roots(&[1, 0, -1, -2], 0.6572981061, (-0.5786490531, 0.6525757633));
    assert_roots(&[1, -1, 0, -2], 0.5897545123, (-0.2948772562, 0.8722716255));
    assert_roots(
        &[1, -1, -1, -1],
        0.5436890127,
        (-0.7718445063, 1.1151425080),
    );
    let roots = find_roots(&poly(&[1, -1, -1]), DEFAULT_DIGITS).unwrap();
    assert!((roots[0].re().to_f64() - 0.6180339887).abs() < 1e-10);
    assert!((roots[1].re().to_f64() + 1.6180339887).abs() < 1e-10);
}

fn k(v: i64) -> Complex {
    Complex::real(Fixed::from_i64(v, bits_for_digits(DEFAULT_DIGITS)))
}

// (1 + a) / (2 + 6a)
fn residue_avoid_1_mod_3(a: &Complex) -> Complex {
    &(&k(1) + a) / &(&k(2) + &(&k(6) * a))
}

// (1 + a^2) / (1 + 6a^2)
fn residue_avoid_2_mod_3(a: &Complex) -> Complex {
    let a2 = a * a;
    &(&k(1) + &a2) / &(&k(1) + &(&k(6) * &a2))
}

// (1 + a) / (1 + 2a + 3a^2)
fn residue_avoid_0_mod_3(a: &Complex) -> Complex {
    &(&k(1) + a) / &(&(&k(1) + &(&k(2) * a)) + &(&k(3) * &(a * a)))
}

/// Each residue against the simplified form obtained from `D(a) = 0`.
#[test]
fn residues_match_simplified_forms() {
    type Residue = fn(&Complex) -> Complex;
    let cases: [(&str, Residue); 3] = [
        ("not:ap:1:3", residue_avoid_1_mod_3),
        ("not:ap:2:3", residue_avoid_2_mod_3),
        ("not:mod:3:0", residue_avoid_0_mod_3),
    ];
    for (spec, form) in cases {
        let pf = partial_fractions(&gf_of(spec), DEFAULT_DIGITS).unwrap();
        assert_eq!(pf.poles.len(), 3);
        for (pole, r) in pf.poles.iter().zip(&pf.residues) {
            let diff = (r - &form(&pole.value)).abs().to_f64();
            assert!(diff < 1e-40, "{spec}: {diff}");
        }
        // the constant part completes C(0) = 1
        assert!(pf.normalization_defect().abs().to_f64() < 1e-35);
    }
    let pf = partial_fractions(&gf_of("not:ap:1:3"), DEFAULT_DIGITS).unwrap();
    assert_eq!(pf.poly_part.len(), 1);
    assert_eq!(pf.poly_part[0].to_f64(), Some(0.5));
}

#[test]
fn reconstruction_matches_exact_counts() {
    for spec in [
        "not:ap:1:3",
        "not:ap:2:3",
        "not:mod:3:0",
        "mod:2:1",
        "ge:3",
        "not:ap:2:5",
    ] {
        let gf = gf_of(spec);
        let pf = partial_fractions(&gf, DEFAULT_DIGITS).unwrap();
        let exact = gf.series(40);
        for n in 0..=40u64 {
            let v = eval_closed(&pf, n);
            let want = exact.coeff(n as usize);
            assert_eq!(&v.value.round(), want, "{spec} n={n}");
            let scale = want.to_f64().unwrap().max(1.0);
            assert!(v.imag_residual.to_f64() <= 1e-35 * scale);
        }
    }
}

#[test]
fn dominance_classification() {
    let pf = partial_fractions(&gf_of("not:mod:3:0"), DEFAULT_DIGITS).unwrap();
    let report = dominance_report(&pf);
    assert!(report.nearest_integer_valid);
    assert!((report.poles[1].modulus - 1.3562030656).abs() < 1e-9);
    assert_eq!(report.poles[0].location, UnitCircle::Inside);
    assert_eq!(report.poles[1].location, UnitCircle::Outside);

    for spec in ["not:ap:1:3", "not:ap:2:3"] {
        let pf = partial_fractions(&gf_of(spec), DEFAULT_DIGITS).unwrap();
        let report = dominance_report(&pf);
        assert!(report.unique_dominant);
        assert!(!report.nearest_integer_valid);
        assert!(report
            .poles
            .iter()
            .all(|p| p.location == UnitCircle::Inside));
    }

    let term = dominant_term(&pf, &report, 10).unwrap();
    assert_eq!(term.round(), BigInt::from(230));
}

#[test]
fn vieta_product_of_moduli() {
    for p in [
        &[1, 0, -1, -2][..],
        &[1, -1, -1, -1],
        &[1, -1, 0, 0, -1],
        &[1, -2, 0, 3, 0, -5],
    ] {
        let p = poly(p);
        let roots = find_roots(&p, 40).unwrap();
        let product: f64 = roots.iter().map(|r| r.modulus().to_f64()).product();
        let expect =
            (p.coeffs()[0].to_f64().unwrap() / p.leading().unwrap().to_f64().unwrap()).abs();
        assert!((product - expect).abs() < 1e-12 * expect);
    }
}
