//! Symbolic and numeric self-checks behind `mockchar verify`.

use mockchar::characters::check_recursion;
use mockchar::genus::{decompose_genus, GenusSpec};
use mockchar::mock::{compare_tables, degenerate_reconstruction, extract_h, HSeries};
use mockchar::numerics::{run_identity_suite, IdentityCheckResult, SamplePoint};
use mockchar::{Exec, Exp, Result, SpecialPoint};
use serde::Serialize;

const PRINTED_TABLES: &str = include_str!("../../core/tests/golden/half_period_h.json");

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: String, pass: bool, detail: String) -> Check {
    Check { name, pass, detail }
}

pub fn symbolic(exec: Exec) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let printed = HSeries::many_from_json(PRINTED_TABLES)?;
    for c in compare_tables(&printed, exec)? {
        let detail = if c.matches() {
            format!("{} coefficients", c.compared)
        } else {
            c.mismatches
                .iter()
                .map(|m| format!("q^{}: printed {} computed {}", m.exponent, m.printed, m.computed))
                .collect::<Vec<_>>()
                .join("; ")
        };
        out.push(check(format!("H table P={} a={} at {}", c.p, c.a, c.point), c.matches(), detail));
    }
    let order = Exp::from_integer(6);
    for k in 1..=4 {
        for two_l in 1..=k {
            let r = check_recursion(k, two_l, order)?;
            out.push(check(
                format!("isospin recursion k={k} 2l={two_l}"),
                r.holds(),
                format!("residual {} terms below q^6", r.residual.len()),
            ));
        }
    }
    let order = Exp::from_integer(4);
    for p in 2..=5 {
        for pt in SpecialPoint::ALL {
            let hs = extract_h(p, pt, order)?;
            let res = degenerate_reconstruction(p, &hs, order)?;
            let limit = mockchar::modular::theta_ratio_power(mockchar::mock::limit_theta(pt), (p - 1) as u32, order)?;
            let ok = res.sub(&limit).is_zero();
            out.push(check(format!("degenerate identity P={p} at {pt}"), ok, "exact to q^4".into()));
        }
    }
    for spec in [GenusSpec::k3(), GenusSpec::symmetric_power_sum(2), GenusSpec::mixed(1, 1, 0), GenusSpec::x2(15)] {
        let r = decompose_genus(&spec, order)?;
        out.push(check(
            format!("decomposition {spec}"),
            r.diagnostics.reconstruction_exact,
            "characters re-sum to the genus".into(),
        ));
    }
    Ok(out)
}

pub fn numeric(samples: &[SamplePoint], exec: Exec) -> Result<Vec<IdentityCheckResult>> {
    run_identity_suite(&[], samples, exec)
}
