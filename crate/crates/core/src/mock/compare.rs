//! Comparison of printed `H` tables against fresh extractions.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::extract::{extract_h_all, HSeries};
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::series::{exp_string, rational_string, Exp, SpecialPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub exponent: String,
    pub printed: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    #[serde(rename = "P")]
    pub p: i64,
    pub a: i64,
    pub point: String,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl TableComparison {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Extracts every `(P, point)` that occurs in `printed` to one order past the
/// last printed exponent and compares entry by entry.
pub fn compare_tables(printed: &[HSeries], exec: Exec) -> Result<Vec<TableComparison>> {
    let levels: BTreeSet<i64> = printed.iter().map(|h| h.p).collect();
    let levels: Vec<i64> = levels.into_iter().collect();
    let computed = exec.map(&levels, |&p| {
        let top = printed
            .iter()
            .filter(|h| h.p == p)
            .map(|h| h.trunc())
            .max()
            .unwrap_or_else(Exp::zero);
        let order = Exp::from_integer(top.ceil().to_integer() + 1);
        extract_h_all(p, order, Exec::Sequential)
    });
    let mut out = Vec::with_capacity(printed.len());
    for h in printed {
        let idx = levels.iter().position(|&p| p == h.p).expect("level collected above");
        let per_point = computed[idx].as_ref().map_err(Clone::clone)?;
        let pt = SpecialPoint::ALL.iter().position(|&x| x == h.point).expect("known point");
        let fresh = per_point[pt]
            .iter()
            .find(|x| x.a == h.a)
            .ok_or_else(|| Error::InvalidSpec(format!("no H^({}) at P = {}", h.a, h.p)))?;
        let mut mismatches = Vec::new();
        for (i, want) in h.coeffs.iter().enumerate() {
            let e = h.offset + Exp::new(i as i64, 2);
            let got = fresh.coeff(e).unwrap_or_else(BigRational::zero);
            if &got != want {
                mismatches.push(Mismatch {
                    exponent: exp_string(e),
                    printed: rational_string(want),
                    computed: rational_string(&got),
                });
            }
        }
        out.push(TableComparison {
            p: h.p,
            a: h.a,
            point: h.point.label().to_string(),
            compared: h.coeffs.len(),
            mismatches,
        });
    }
    Ok(out)
}
