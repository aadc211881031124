//! Coefficient functions `H_P^{(a)}(w)` at the three half-periods.
//!
//! At a half-period `w` the degenerate identity
//! `C_P(z) − Σ_a H^{(a)}(w) B^{(a)}(z) = (θ_x(z)/θ_x(0))^{2(P−1)}`
//! is linear in the unknown `q`-series `H^{(a)}(w)`. Writing
//! `H^{(a)} = q^{−a²/4P} G_a` and `b_a = q^{−a²/4P} B^{(a)}`, every `b_a`
//! starts at `q^0` with a distinct polynomial in `u`, so the `G_a` can be
//! peeled off one half-integer order at a time.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::linsolve::{solve_exact, SolveError};
use crate::characters::{basis_function, massless_iso0_rtilde};
use crate::error::{Error, Result};
use crate::modular::{theta_ratio_power, ThetaKind};
use crate::par::Exec;
use crate::series::{exp_string, parse_rational, rational_string, Exp, QSeries, SpecialPoint, YPoly};

/// Theta function whose normalized power is the degenerate limit at `w`.
pub fn limit_theta(point: SpecialPoint) -> ThetaKind {
    match point {
        SpecialPoint::Half => ThetaKind::T10,
        SpecialPoint::HalfPlusHalfTau => ThetaKind::T00,
        SpecialPoint::HalfTau => ThetaKind::T01,
    }
}

/// `H_P^{(a)}(w)` as coefficients on the grid `offset + n/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HSeries {
    pub p: i64,
    pub a: i64,
    pub point: SpecialPoint,
    pub offset: Exp,
    pub coeffs: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct HSeriesWire {
    #[serde(rename = "P")]
    p: i64,
    a: i64,
    point: String,
    offset_num: i64,
    offset_den: i64,
    grid_den: i64,
    coeffs: Vec<String>,
}

/// Exponent where `H_P^{(a)}(w)` starts.
pub fn h_offset(p: i64, a: i64, point: SpecialPoint) -> Exp {
    let base = -Exp::new(a * a, 4 * p);
    match point {
        SpecialPoint::Half => base,
        _ => base + Exp::new(a, 2),
    }
}

impl HSeries {
    pub fn trunc(&self) -> Exp {
        self.offset + Exp::new(self.coeffs.len() as i64, 2)
    }

    /// Coefficient of `q^e`; `None` above the truncation, zero off the grid.
    pub fn coeff(&self, e: Exp) -> Option<BigRational> {
        if e >= self.trunc() {
            return None;
        }
        let k = (e - self.offset) * 2;
        if !k.is_integer() || k < Exp::zero() {
            return Some(BigRational::zero());
        }
        Some(self.coeffs[k.to_integer() as usize].clone())
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.first()
    }

    pub fn to_qseries(&self) -> QSeries {
        QSeries::from_scalars(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (self.offset + Exp::new(i as i64, 2), c.clone())),
            self.trunc(),
        )
    }

    pub fn to_json(&self) -> String {
        let w = HSeriesWire {
            p: self.p,
            a: self.a,
            point: self.point.label().to_string(),
            offset_num: *self.offset.numer(),
            offset_den: *self.offset.denom(),
            grid_den: 2,
            coeffs: self.coeffs.iter().map(rational_string).collect(),
        };
        serde_json::to_string(&w).expect("plain struct serializes")
    }

    pub fn from_json(s: &str) -> Result<HSeries> {
        let w: HSeriesWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_wire(w)
    }

    /// Reads a JSON array of records.
    pub fn many_from_json(s: &str) -> Result<Vec<HSeries>> {
        let ws: Vec<HSeriesWire> = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        ws.into_iter().map(Self::from_wire).collect()
    }

    pub fn many_to_json(hs: &[HSeries]) -> String {
        let parts: Vec<String> = hs.iter().map(HSeries::to_json).collect();
        format!("[\n{}\n]\n", parts.join(",\n"))
    }

    fn from_wire(w: HSeriesWire) -> Result<HSeries> {
        if w.grid_den != 2 {
            return Err(Error::Parse(format!("grid_den {} (expected 2)", w.grid_den)));
        }
        if w.offset_den <= 0 {
            return Err(Error::Parse("nonpositive offset denominator".into()));
        }
        let point = SpecialPoint::parse(&w.point).ok_or_else(|| Error::Parse(format!("point {}", w.point)))?;
        let coeffs = w.coeffs.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?;
        Ok(HSeries {
            p: w.p,
            a: w.a,
            point,
            offset: Exp::new(w.offset_num, w.offset_den),
            coeffs,
        })
    }
}

/// `C_P − (θ_x/θ_x(0))^{2(P−1)}`.
pub fn degenerate_difference(p: i64, point: SpecialPoint, order: Exp) -> Result<QSeries> {
    let c = massless_iso0_rtilde(p - 1, order)?;
    let t = theta_ratio_power(limit_theta(point), (p - 1) as u32, order)?;
    Ok(c.sub(&t))
}

fn half_floor(e: Exp) -> Exp {
    Exp::new((e * 2).floor().to_integer(), 2)
}

/// Solves for `G_a = q^{a²/4P} H^{(a)}` to order `order`, `a = 1..P−1`.
pub fn solve_shifted(p: i64, point: SpecialPoint, order: Exp) -> Result<Vec<QSeries>> {
    if p < 2 {
        return Err(Error::InvalidSpec(format!("level index {p} must be at least 2")));
    }
    peel_basis(p, degenerate_difference(p, point, order)?, order)
}

/// Writes `rem = Σ_a G_a · q^{−a²/4P} B^{(a)}` with each `G_a` on the grid
/// `½ℤ`, one order at a time, failing on any residue the basis cannot absorb.
pub fn peel_basis(p: i64, mut rem: QSeries, order: Exp) -> Result<Vec<QSeries>> {
    let b: Vec<QSeries> = (1..p)
        .map(|a| {
            let s = Exp::new(a * a, 4 * p);
            Ok(basis_function(p, a, order + s)?.mul_q_power(-s))
        })
        .collect::<Result<_>>()?;
    let lead: Vec<YPoly> = b
        .iter()
        .map(|s| s.coefficient(Exp::zero()))
        .collect::<Result<_>>()?;
    let mut rows: Vec<i64> = lead.iter().flat_map(|l| l.terms().iter().map(|(m, _)| *m)).collect();
    rows.sort_unstable();
    rows.dedup();

    let mut g: Vec<Vec<(Exp, BigRational)>> = vec![Vec::new(); (p - 1) as usize];
    let mut r = half_floor(rem.lead().min(Exp::zero()));
    while r < order {
        let target = rem.coefficient(r)?;
        if !target.is_zero() {
            let extra: Vec<i64> = target
                .terms()
                .iter()
                .map(|(m, _)| *m)
                .filter(|m| rows.binary_search(m).is_err())
                .collect();
            if !extra.is_empty() {
                return Err(Error::InconsistentSystem(format!(
                    "q^{} carries u^{} outside the basis span",
                    exp_string(r),
                    extra[0]
                )));
            }
            let mat: Vec<Vec<BigRational>> = rows
                .iter()
                .map(|&m| lead.iter().map(|l| l.coeff(m)).collect())
                .collect();
            let rhs: Vec<BigRational> = rows.iter().map(|&m| target.coeff(m)).collect();
            let x = solve_exact(&mat, &rhs).map_err(|e| match e {
                SolveError::Singular => Error::SingularLeadingBlock,
                SolveError::Inconsistent => {
                    Error::InconsistentSystem(format!("nonzero residual at q^{}", exp_string(r)))
                }
            })?;
            for (i, xi) in x.into_iter().enumerate() {
                if !xi.is_zero() {
                    rem = rem.sub(&b[i].mul_q_power(r).scale(&xi));
                    g[i].push((r, xi));
                }
            }
            if !rem.coefficient(r)?.is_zero() {
                return Err(Error::InconsistentSystem(format!(
                    "residual survives at q^{}",
                    exp_string(r)
                )));
            }
        }
        r += Exp::new(1, 2);
    }
    if let Some((e, _)) = rem.terms().next() {
        return Err(Error::InconsistentSystem(format!(
            "off-grid residual at q^{}",
            exp_string(e)
        )));
    }
    Ok(g.into_iter().map(|t| QSeries::from_scalars(t, order)).collect())
}

/// `H_P^{(a)}(w)` for `a = 1..P−1`, with the `G_a` known below `order`.
pub fn extract_h(p: i64, point: SpecialPoint, order: Exp) -> Result<Vec<HSeries>> {
    let g = solve_shifted(p, point, order)?;
    g.iter()
        .enumerate()
        .map(|(i, gs)| {
            let a = i as i64 + 1;
            let shift = Exp::new(a * a, 4 * p);
            let offset = h_offset(p, a, point);
            let start = offset + shift;
            let mut coeffs = Vec::new();
            for (e, _) in gs.terms() {
                if e < start {
                    return Err(Error::InconsistentSystem(format!(
                        "H^({a}) has a term below its expected start at q^{}",
                        exp_string(e - shift)
                    )));
                }
                if point == SpecialPoint::Half && !e.is_integer() {
                    return Err(Error::InconsistentSystem(format!(
                        "H^({a})(1/2) has a half-integer step at q^{}",
                        exp_string(e - shift)
                    )));
                }
            }
            let mut e = start;
            while e < order {
                coeffs.push(gs.coefficient(e)?.constant_term());
                e += Exp::new(1, 2);
            }
            Ok(HSeries {
                p,
                a,
                point,
                offset,
                coeffs,
            })
        })
        .collect()
}

/// All three half-periods, one extraction per point.
pub fn extract_h_all(p: i64, order: Exp, exec: Exec) -> Result<Vec<Vec<HSeries>>> {
    exec.map(&SpecialPoint::ALL, |&pt| extract_h(p, pt, order))
        .into_iter()
        .collect()
}

/// `C_P − Σ_a H^{(a)}(w) B^{(a)}` assembled from given `H` series, to `order`.
pub fn degenerate_reconstruction(p: i64, hs: &[HSeries], order: Exp) -> Result<QSeries> {
    let mut acc = massless_iso0_rtilde(p - 1, order)?;
    for h in hs {
        let hq = h.to_qseries();
        let b = basis_function(p, h.a, order - h.offset)?;
        acc = acc.sub(&hq.mul(&b).truncate(order));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints_over(xs: &[i64], d: i64) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, d)).collect()
    }

    fn integer_steps(h: &HSeries) -> Vec<BigRational> {
        h.coeffs.iter().step_by(2).cloned().collect()
    }

    #[test]
    fn level_three_at_half() {
        let hs = extract_h(3, SpecialPoint::Half, Exp::from_integer(4)).unwrap();
        assert_eq!(hs[0].offset, Exp::new(-1, 12));
        assert_eq!(integer_steps(&hs[0])[..4], ints_over(&[3, 8, -25, 72], 8)[..]);
        assert_eq!(hs[1].offset, Exp::new(-1, 3));
        assert_eq!(integer_steps(&hs[1])[..4], ints_over(&[1, 10, -20, 40], 16)[..]);
    }

    #[test]
    fn level_two_points() {
        let hs = extract_h(2, SpecialPoint::HalfPlusHalfTau, Exp::from_integer(3)).unwrap();
        assert_eq!(hs[0].offset, Exp::new(3, 8));
        assert_eq!(hs[0].coeffs[..5], ints_over(&[2, -6, 14, -28, 54], 1)[..]);
        let hs = extract_h(2, SpecialPoint::HalfTau, Exp::from_integer(3)).unwrap();
        assert_eq!(hs[0].coeffs[..5], ints_over(&[-2, -6, -14, -28, -54], 1)[..]);
    }

    #[test]
    fn reconstruction_is_exact() {
        let order = Exp::from_integer(2);
        for pt in SpecialPoint::ALL {
            let hs = extract_h(3, pt, order + 1).unwrap();
            let rec = degenerate_reconstruction(3, &hs, order).unwrap();
            let t = theta_ratio_power(limit_theta(pt), 2, order).unwrap();
            assert!(rec.agrees_with(&t), "{pt}");
            assert_eq!(rec.trunc(), order);
        }
    }

    #[test]
    fn json_round_trip() {
        let hs = extract_h(2, SpecialPoint::Half, Exp::from_integer(2)).unwrap();
        let back = HSeries::many_from_json(&HSeries::many_to_json(&hs)).unwrap();
        assert_eq!(back, hs);
        assert!(HSeries::from_json("{\"P\":2}").is_err());
    }

    #[test]
    fn level_one_is_rejected() {
        assert!(matches!(
            extract_h(1, SpecialPoint::Half, Exp::from_integer(2)),
            Err(Error::InvalidSpec(_))
        ));
    }
}
