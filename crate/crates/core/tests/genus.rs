use mockchar::genus::{decompose_genus, topological_invariants, x2_admissible_range, GenusSpec};
use mockchar::mock::massive_stream;
use mockchar::Exp;
use num_rational::BigRational;

fn ints(v: &[BigRational]) -> Vec<i64> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer(), "{x}");
            i64::try_from(x.to_integer()).unwrap()
        })
        .collect()
}

fn int(x: &BigRational) -> i64 {
    ints(std::slice::from_ref(x))[0]
}

#[test]
fn k3_decomposes_into_level_one_characters() {
    let r = decompose_genus(&GenusSpec::k3(), Exp::from_integer(9)).unwrap();
    assert_eq!(ints(&r.massless_raw()), vec![20, -2]);
    assert_eq!(
        ints(&r.massive_for(1).unwrap().integer_coeffs()),
        vec![90, 462, 1540, 4554, 11592, 27830, 61686, 131100]
    );
    assert!(r.diagnostics.reconstruction_exact);
    assert!(r.diagnostics.index_ok);
}

#[test]
fn level_one_stream_from_half_period_sum() {
    // The raw three-point sum carries an overall 1/8 at P = 2.
    let s = &massive_stream(2, Exp::from_integer(9)).unwrap()[0];
    assert_eq!(s.constant, BigRational::new(1.into(), 4.into()));
    let eight = BigRational::from_integer(8.into());
    let scaled: Vec<_> = s.coeffs.iter().map(|c| c * &eight).collect();
    assert_eq!(ints(&scaled)[..8], [90, 462, 1540, 4554, 11592, 27830, 61686, 131100]);
    assert!(s.integer_grid && s.nonnegative);
}

#[test]
fn level_two_displays() {
    // Streams are the coefficients of q^{n - a²/4P} B^{(a)}.
    let order = Exp::from_integer(5);
    let r = decompose_genus(&GenusSpec::symmetric_power_sum(2), order).unwrap();
    assert_eq!(ints(&r.massless_raw()), vec![111, -12, 3]);
    assert_eq!(ints(&r.massive_for(1).unwrap().integer_basis_coeffs()), vec![1872, 26070, 213456, 1311420]);
    assert_eq!(ints(&r.massive_for(2).unwrap().integer_basis_coeffs()), vec![-510, -12804, -126360, -841176]);
    assert!(r.diagnostics.reconstruction_exact);

    let r = decompose_genus(&GenusSpec::mixed(1, 1, 0), order).unwrap();
    assert_eq!(ints(&r.massless_raw()), vec![4, -1, 0]);
    assert_eq!(ints(&r.massive_for(1).unwrap().integer_basis_coeffs()), vec![16, 55, 144, 330]);
    assert_eq!(ints(&r.massive_for(2).unwrap().integer_basis_coeffs()), vec![10, 44, 110, 280]);
    assert!(r.diagnostics.reconstruction_exact);
}

#[test]
fn x2_family_invariants() {
    let order = Exp::from_integer(3);
    for n in -6..=25 {
        let t = topological_invariants(&GenusSpec::x2(n), order).unwrap();
        assert_eq!(int(&t.euler), 12 * (n + 12), "n={n}");
    }
    let t = topological_invariants(&GenusSpec::x2(15), order).unwrap();
    assert_eq!((int(&t.euler), int(&t.signature()), int(&t.ahat())), (324, 156, 3));
    let t = topological_invariants(&GenusSpec::x2(-3), order).unwrap();
    assert_eq!((int(&t.euler), int(&t.signature()), int(&t.ahat())), (108, 84, 3));
    // Z(1/2) = 4(n+24) + 12288q + 294912q² + …, independent of n beyond q^0.
    for n in [-3, 0, 15] {
        let z = topological_invariants(&GenusSpec::x2(n), order).unwrap().signature_series;
        let c = |e: i64| z.coefficient(Exp::from_integer(e)).unwrap().constant_term();
        assert_eq!(ints(&[c(0), c(1), c(2)]), vec![4 * (n + 24), 12288, 294912]);
    }
}

#[test]
fn x2_admissible_range_is_minus_six_to_twenty_five() {
    let r = x2_admissible_range(Exp::from_integer(4)).unwrap();
    assert_eq!((r.lo, r.hi), (-6, 25));
}

#[test]
fn reports_serialize() {
    let r = decompose_genus(&GenusSpec::k3(), Exp::from_integer(3)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["massless"][0]["raw_mult"], "20");
    assert!(r.to_csv().starts_with("kind,label,n,value\nmassless,0,0,20\n"));
}
