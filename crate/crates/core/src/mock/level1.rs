//! Level-one Lerch sums and the massive coefficient streams.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::extract::extract_h_all;
use crate::error::{Error, Result};
use crate::modular::{eta_pow, theta_null, ThetaKind};
use crate::par::Exec;
use crate::series::{Exp, QSeries, YPoly};

/// `Σ_{j ≥ first} (ratio·q^s)^{j−first}·sign·q^{base + s·j}`, below `order`.
fn push_geometric(terms: &mut Vec<(Exp, YPoly)>, base: Exp, s: Exp, first: i64, sign: i64, ratio: i64, order: Exp) {
    let mut j = first;
    loop {
        let e = base + s * j;
        if e >= order {
            break;
        }
        let c = if ratio < 0 && (j - first) % 2 != 0 { -sign } else { sign };
        terms.push((e, YPoly::from_int(c)));
        j += 1;
    }
}

/// `η·h_i` for `i = 2, 3, 4`; these are `μ` at the half-periods.
pub fn level1_eta_h(which: u8, order: Exp) -> Result<QSeries> {
    let eighth = Exp::new(1, 8);
    match which {
        2 => {
            // [1/2 + 2 Σ_{m>0} q^{m(m+1)/2}/(1 + q^m)] / θ_10(0)
            let t = order + eighth;
            let mut terms = vec![(Exp::zero(), YPoly::constant(BigRational::new(1.into(), 2.into())))];
            let mut m = 1i64;
            while Exp::from_integer(m * (m + 1) / 2) < t {
                push_geometric(&mut terms, Exp::from_integer(m * (m + 1) / 2), Exp::from_integer(m), 0, 2, -1, t);
                m += 1;
            }
            let num = QSeries::from_terms(terms, t);
            num.div(&theta_null(ThetaKind::T10, order + eighth + eighth))
        }
        3 | 4 => {
            // h_3: Σ_n q^{n²/2 − 1/8}/(1 + q^{n−1/2}) / θ_00(0).
            // h_4 is its image under τ → τ+1:
            //      Σ_n (−1)^n q^{n²/2 − 1/8}/(1 − q^{n−1/2}) / θ_01(0).
            let alt = which == 4;
            let ratio = if alt { 1 } else { -1 };
            let mut terms = Vec::new();
            let mut n = 0i64;
            loop {
                let mut any = false;
                for n in [n + 1, -n] {
                    let base = Exp::new(n * n, 2) - eighth;
                    if base >= order {
                        continue;
                    }
                    any = true;
                    let sign = if alt && n % 2 != 0 { -1 } else { 1 };
                    if n >= 1 {
                        push_geometric(&mut terms, base, Exp::new(2 * n - 1, 2), 0, sign, ratio, order);
                    } else {
                        // 1/(1 ∓ q^{−s}) = ∓q^s/(1 ∓ q^s), s = 1/2 − n
                        let sign = if alt { -sign } else { sign };
                        push_geometric(&mut terms, base, Exp::new(1 - 2 * n, 2), 1, sign, ratio, order);
                    }
                }
                if !any {
                    break;
                }
                n += 1;
            }
            let num = QSeries::from_terms(terms, order);
            let kind = if alt { ThetaKind::T01 } else { ThetaKind::T00 };
            num.div(&theta_null(kind, order))
        }
        _ => Err(Error::InvalidSpec(format!("h_{which} is not defined; use 2, 3 or 4"))),
    }
}

/// `h_i = (η·h_i)/η`.
pub fn level1_h(which: u8, order: Exp) -> Result<QSeries> {
    let lead = Exp::new(1, 24);
    let eh = level1_eta_h(which, order + lead)?;
    eh.div(&eta_pow(1, order + lead + lead)?).map(|s| s.truncate(order))
}

/// `A_{P,n}^{(a)}` read off the three-point sum
/// `Σ_w H^{(a)}(w) = q^{−a²/4P}(α − Σ_n A_n q^n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassiveStream {
    pub p: i64,
    pub a: i64,
    #[serde(serialize_with = "ser_rat")]
    pub constant: BigRational,
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<BigRational>,
    /// Every `A_n` is an integer.
    pub integral: bool,
    /// Every `A_n` is nonnegative.
    pub nonnegative: bool,
    /// No terms off the integer grid after the `q^{a²/4P}` shift.
    pub integer_grid: bool,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::series::rational_string(x))
}

fn ser_rats<S: serde::Serializer>(x: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(x.len()))?;
    for v in x {
        seq.serialize_element(&crate::series::rational_string(v))?;
    }
    seq.end()
}

pub fn massive_stream(p: i64, order: Exp) -> Result<Vec<MassiveStream>> {
    let per_point = extract_h_all(p, order, Exec::default())?;
    (1..p)
        .map(|a| {
            let shift = Exp::new(a * a, 4 * p);
            let sum = per_point
                .iter()
                .map(|hs| hs[(a - 1) as usize].to_qseries())
                .reduce(|x, y| x.add(&y))
                .expect("three points")
                .mul_q_power(shift);
            let integer_grid = sum.terms().all(|(e, _)| e.is_integer());
            let constant = sum.coefficient(Exp::zero())?.constant_term();
            let mut coeffs = Vec::new();
            let mut n = 1i64;
            while Exp::from_integer(n) < sum.trunc() {
                coeffs.push(-sum.coefficient(Exp::from_integer(n))?.constant_term());
                n += 1;
            }
            Ok(MassiveStream {
                p,
                a,
                integral: coeffs.iter().all(|c| c.is_integer()),
                nonnegative: coeffs.iter().all(|c| !c.is_negative()),
                integer_grid,
                constant,
                coeffs,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mock::extract_h;
    use crate::series::SpecialPoint;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn eta_h2_expansion() {
        let s = level1_eta_h(2, Exp::from_integer(4)).unwrap();
        let want = [1, 3, -7, 14];
        for (n, w) in want.iter().enumerate() {
            let e = Exp::new(8 * n as i64 - 1, 8);
            assert_eq!(s.coefficient(e).unwrap().constant_term(), q(*w, 4));
        }
    }

    #[test]
    fn eta_h3_h4_expansions() {
        let s3 = level1_eta_h(3, Exp::from_integer(2)).unwrap();
        let s4 = level1_eta_h(4, Exp::from_integer(2)).unwrap();
        for (i, (w3, w4)) in [(2, -2), (-6, -6), (14, -14)].iter().enumerate() {
            let e = Exp::new(3, 8) + Exp::new(i as i64, 2);
            assert_eq!(s3.coefficient(e).unwrap().constant_term(), q(*w3, 1));
            assert_eq!(s4.coefficient(e).unwrap().constant_term(), q(*w4, 1));
        }
    }

    #[test]
    fn level_one_sum_gives_k3_stream() {
        let order = Exp::from_integer(3);
        let sum = (2..=4u8)
            .map(|i| level1_eta_h(i, order).unwrap())
            .reduce(|a, b| a.add(&b))
            .unwrap()
            .scale_int(8);
        let at = |n: i64| sum.coefficient(Exp::new(8 * n - 1, 8)).unwrap().constant_term();
        assert_eq!(at(0), q(2, 1));
        assert_eq!(at(1), q(-90, 1));
        assert_eq!(at(2), q(-462, 1));
    }

    #[test]
    fn extraction_matches_level_one_sums() {
        let order = Exp::from_integer(3);
        let pts = [
            (SpecialPoint::Half, 2u8),
            (SpecialPoint::HalfPlusHalfTau, 3),
            (SpecialPoint::HalfTau, 4),
        ];
        for (pt, i) in pts {
            let h = extract_h(2, pt, order).unwrap()[0].to_qseries();
            let direct = level1_eta_h(i, order - Exp::new(1, 4)).unwrap();
            assert!(h.agrees_with(&direct), "{pt}");
        }
        let hq = level1_h(2, Exp::from_integer(2)).unwrap();
        assert_eq!(hq.lead(), Exp::new(-1, 6));
    }

    #[test]
    fn level_two_stream_is_k3_over_eight() {
        let s = massive_stream(2, Exp::from_integer(4)).unwrap();
        assert_eq!(s[0].constant, q(1, 4));
        assert_eq!(s[0].coeffs[..3], [q(90, 8), q(462, 8), q(1540, 8)]);
        assert!(s[0].integer_grid && s[0].nonnegative);
    }

    #[test]
    fn unknown_index_rejected() {
        assert!(level1_eta_h(5, Exp::one()).is_err());
    }
    use num_traits::One;
}
