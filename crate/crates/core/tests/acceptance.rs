//! One PASS/FAIL line per acceptance criterion, with its time budget.

use std::time::{Duration, Instant};

use mockchar::characters::{check_recursion, massless_iso0_rtilde};
use mockchar::genus::{decompose_genus, topological_invariants, GenusSpec};
use mockchar::mock::{
    coefficient_tables, compare_tables, degenerate_reconstruction, extract_h, gamma_closed, gamma_staircase_oracle,
    limit_theta, massive_stream, HSeries,
};
use mockchar::modular::{affine_character, eta_pow, psi, theta_ratio_power};
use mockchar::numerics::{
    default_samples, eval_massless_iso0, eval_series_at, is_finite_difference, run_identity_suite,
};
use mockchar::{Exec, Exp, SpecialPoint};
use num_complex::Complex64 as C;
use num_rational::BigRational;

const PRINTED: &str = include_str!("golden/half_period_h.json");
const TABLES: &str = include_str!("golden/tables.csv");

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);


fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn rs(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| r(x)).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn half_period_tables() -> Outcome {
    let printed = HSeries::many_from_json(PRINTED).map_err(e)?;
    let cmp = compare_tables(&printed, Exec::Parallel).map_err(e)?;
    let total: usize = cmp.iter().map(|c| c.compared).sum();
    let bad: Vec<String> = cmp
        .iter()
        .filter(|c| !c.matches())
        .map(|c| format!("P={} a={} {} ({} entries)", c.p, c.a, c.point, c.mismatches.len()))
        .collect();
    if bad.is_empty() {
        Ok(format!("{} tables, {total} coefficients", cmp.len()))
    } else {
        Err(format!("{} of {} tables differ: {}", bad.len(), cmp.len(), bad.join(", ")))
    }
}

fn level_one_stream() -> Outcome {
    let want = rs(&[90, 462, 1540, 4554, 11592, 27830, 61686, 131100]);
    let rep = decompose_genus(&GenusSpec::k3(), Exp::from_integer(9)).map_err(e)?;
    let got = rep.massive_for(1).ok_or("no a=1 stream")?.integer_coeffs();
    ensure(got[..8] == want[..], format!("decomposition stream {got:?}"))?;
    // Independent route: the three-point sum of H, normalized by its 1/8.
    let s = &massive_stream(2, Exp::from_integer(9)).map_err(e)?[0];
    let scaled: Vec<_> = s.coeffs.iter().map(|c| c * r(8)).collect();
    ensure(scaled[..8] == want[..], format!("half-period stream {scaled:?}"))?;
    Ok("A_1..A_8 exact by two routes".into())
}

fn coefficient_tables_match() -> Outcome {
    let t = coefficient_tables(10);
    ensure(t.gamma_csv() == TABLES, "gamma tables differ from golden CSV")?;
    for k in 1..=10 {
        for a in 0..=k {
            ensure(t.gamma[(k - 1) as usize][a as usize] == gamma_closed(k, a), format!("closed form k={k} a={a}"))?;
        }
    }
    for k in 1..=8u32 {
        for a in 1..=k {
            let g = &t.gamma[(k - 1) as usize][a as usize];
            ensure(*g == r(gamma_staircase_oracle(k, a) as i64), format!("staircase k={k} a={a}"))?;
        }
    }
    Ok("k<=10 bit-exact, staircase k<=8".into())
}

fn k3_decomposition() -> Outcome {
    let rep = decompose_genus(&GenusSpec::k3(), Exp::from_integer(8)).map_err(e)?;
    ensure(rep.massless_raw() == rs(&[20, -2]), format!("massless {:?}", rep.massless_raw()))?;
    let s = rep.massive_for(1).ok_or("no stream")?.integer_coeffs();
    ensure(s == rs(&[90, 462, 1540, 4554, 11592, 27830, 61686]), format!("stream {s:?}"))?;
    ensure(rep.diagnostics.reconstruction_exact, "reconstruction residual nonzero")?;
    Ok("(20, -2), residual 0 to q^8".into())
}

fn level_two_displays() -> Outcome {
    let order = Exp::from_integer(5);
    let a = decompose_genus(&GenusSpec::symmetric_power_sum(2), order).map_err(e)?;
    ensure(a.massless_raw() == rs(&[111, -12, 3]), format!("(2,0,0) massless {:?}", a.massless_raw()))?;
    let s1 = a.massive_for(1).ok_or("a=1")?.integer_basis_coeffs();
    let s2 = a.massive_for(2).ok_or("a=2")?.integer_basis_coeffs();
    ensure(s1 == rs(&[1872, 26070, 213456, 1311420]), format!("(2,0,0) a=1 {s1:?}"))?;
    ensure(s2 == rs(&[-510, -12804, -126360, -841176]), format!("(2,0,0) a=2 {s2:?}"))?;
    let b = decompose_genus(&GenusSpec::mixed(1, 1, 0), order).map_err(e)?;
    ensure(b.massless_raw()[..2] == rs(&[4, -1])[..], format!("(1,1,0) massless {:?}", b.massless_raw()))?;
    let t1 = b.massive_for(1).ok_or("a=1")?.integer_basis_coeffs();
    let t2 = b.massive_for(2).ok_or("a=2")?.integer_basis_coeffs();
    ensure(t1 == rs(&[16, 55, 144, 330]), format!("(1,1,0) a=1 {t1:?}"))?;
    ensure(t2 == rs(&[10, 44, 110, 280]), format!("(1,1,0) a=2 {t2:?}"))?;
    ensure(a.diagnostics.reconstruction_exact && b.diagnostics.reconstruction_exact, "reconstruction")?;
    Ok("(2,0,0) and (1,1,0) exact".into())
}

fn x2_invariants() -> Outcome {
    let order = Exp::from_integer(3);
    for n in -6..=25 {
        let t = topological_invariants(&GenusSpec::x2(n), order).map_err(e)?;
        ensure(t.euler == r(12 * (n + 12)), format!("Z(0) at n={n}: {}", t.euler))?;
    }
    for (n, want) in [(15, (324, 156, 3)), (-3, (108, 84, 3))] {
        let t = topological_invariants(&GenusSpec::x2(n), order).map_err(e)?;
        let got = (t.euler.clone(), t.signature(), t.ahat());
        ensure(got == (r(want.0), r(want.1), r(want.2)), format!("n={n}: {got:?}"))?;
        let c = |k: i64| {
            t.signature_series
                .coefficient(Exp::from_integer(k))
                .map(|p| p.constant_term())
                .map_err(e)
        };
        ensure(c(1)? == r(12288) && c(2)? == r(294912), format!("Z(1/2) at n={n}"))?;
    }
    Ok("Z(0)=12(n+12) on [-6,25], (324,156,3), (108,84,3)".into())
}

fn degenerate_identities() -> Outcome {
    let order = Exp::from_integer(4);
    for p in 2..=4 {
        for pt in SpecialPoint::ALL {
            let hs = extract_h(p, pt, order).map_err(e)?;
            let lhs = degenerate_reconstruction(p, &hs, order).map_err(e)?;
            let rhs = theta_ratio_power(limit_theta(pt), (p - 1) as u32, order).map_err(e)?;
            ensure(lhs.sub(&rhs).is_zero(), format!("P={p} at {pt}"))?;
        }
    }
    Ok("P<=4, three points, exact to q^4".into())
}

fn recursion_residuals() -> Outcome {
    let order = Exp::from_integer(8);
    for k in 1..=4 {
        for two_l in 1..=k {
            let c = check_recursion(k, two_l, order).map_err(e)?;
            ensure(c.holds(), format!("k={k} 2l={two_l}: {} terms", c.residual.len()))?;
        }
    }
    Ok("k<=4, all isospins, zero to q^8".into())
}

fn psi_identities() -> Outcome {
    let o20 = Exp::from_integer(20);
    ensure(psi(2, 1, o20).agrees_with(&eta_pow(3, o20).map_err(e)?), "Psi_2 != eta^3")?;
    let o10 = Exp::from_integer(10);
    let eta3 = eta_pow(3, o10).map_err(e)?;
    for p in 2..=6 {
        for a in 1..p {
            let chi0 = affine_character(p - 2, a - 1, o10).map_err(e)?.at_z_zero();
            ensure(psi(p, a, o10).agrees_with(&eta3.mul(&chi0)), format!("P={p} a={a}"))?;
        }
    }
    Ok("eta^3 to q^20, P<=6 to q^10".into())
}

fn numeric_suite() -> Outcome {
    let required = [
        "S_mu",
        "R_S",
        "mu_hat_modular",
        "k1_character_S",
        "fP_elliptic",
        "general_k_F",
        "Psi_S",
        "mordell_dual",
        "Mordell_and_Zwegers",
        "R_P_S",
        "differential_R_P_a",
        "differential_Maass",
    ];
    let rows = run_identity_suite(&[], &default_samples(), Exec::Parallel).map_err(e)?;
    for name in required {
        ensure(rows.iter().any(|r| r.identity_name.starts_with(name)), format!("{name} not registered"))?;
    }
    let mut worst = (0.0f64, 0.0f64);
    for row in &rows {
        let base = row.identity_name.split('[').next().unwrap_or_default().trim();
        let fd = is_finite_difference(base);
        let cap = if fd { 1e-4 } else { 1e-7 };
        ensure(
            row.error.is_none() && row.residual < cap,
            format!("{} residual {:e} {:?}", row.identity_name, row.residual, row.error),
        )?;
        let w = if fd { &mut worst.1 } else { &mut worst.0 };
        *w = w.max(row.residual);
    }
    Ok(format!("{} rows, worst {:.1e} (laws) {:.1e} (finite differences)", rows.len(), worst.0, worst.1))
}

fn symbolic_vs_numeric() -> Outcome {
    let mut worst = 0.0f64;
    for p in 2..=4 {
        let series = massless_iso0_rtilde(p - 1, Exp::from_integer(12)).map_err(e)?;
        for s in default_samples() {
            let (z, t): (C, C) = (s.z.into(), s.tau.into());
            let a = eval_series_at(&series, z, t).map_err(e)?;
            let b = eval_massless_iso0(p, z, t).map_err(e)?;
            let gap = (a - b).norm() / a.norm().max(b.norm()).max(1.0);
            ensure(gap < 1e-8, format!("P={p} tau={t}: {gap:e}"))?;
            worst = worst.max(gap);
        }
    }
    Ok(format!("P<=4 at q^12, worst {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("half-period H tables", 60, half_period_tables),
        ("level-1 massive stream", 5, level_one_stream),
        ("coefficient tables", 30, coefficient_tables_match),
        ("K3 decomposition", 30, k3_decomposition),
        ("level-2 decompositions", 60, level_two_displays),
        ("X_2(n) invariants", 30, x2_invariants),
        ("degenerate Jacobi identities", 60, degenerate_identities),
        ("isospin recursion", 30, recursion_residuals),
        ("Psi and affine characters", 10, psi_identities),
        ("numeric identity suite", 120, numeric_suite),
        ("series vs direct evaluation", 60, symbolic_vs_numeric),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let out = run();
        let dt = t0.elapsed();
        let over = dt > Duration::from_secs(*budget);
        let (tag, msg) = match (&out, over) {
            (Ok(m), false) => ("PASS", m.clone()),
            (Ok(m), true) => ("FAIL", format!("{m}; over budget")),
            (Err(m), _) => ("FAIL", m.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name} [{:.2}s/{budget}s]: {msg}", i + 1, dt.as_secs_f64());
    }
    println!("{} of {} criteria pass in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
}
