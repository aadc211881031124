//! Truncated Puiseux series in `q` whose coefficients are Laurent polynomials
//! in `u = e^{πiz}`.

mod serial;
mod tail;
mod ypoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Exec;

pub use serial::{parse_rational, rational_string, SeriesWire};
pub use tail::TailBound;
pub use ypoly::YPoly;

/// Exponents of `q`. Always small enough for machine integers.
pub type Exp = Ratio<i64>;

/// The three half-periods at which even series are specialised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpecialPoint {
    /// `z = 1/2`, i.e. `y = −1`.
    Half,
    /// `z = (1+τ)/2`, i.e. `y = −q^{1/2}`.
    HalfPlusHalfTau,
    /// `z = τ/2`, i.e. `y = q^{1/2}`.
    HalfTau,
}

impl SpecialPoint {
    pub const ALL: [SpecialPoint; 3] = [
        SpecialPoint::Half,
        SpecialPoint::HalfPlusHalfTau,
        SpecialPoint::HalfTau,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SpecialPoint::Half => "1/2",
            SpecialPoint::HalfPlusHalfTau => "(1+tau)/2",
            SpecialPoint::HalfTau => "tau/2",
        }
    }

    pub fn parse(s: &str) -> Option<SpecialPoint> {
        match s {
            "1/2" | "half" => Some(SpecialPoint::Half),
            "(1+tau)/2" | "half_plus_half_tau" => Some(SpecialPoint::HalfPlusHalfTau),
            "tau/2" | "half_tau" => Some(SpecialPoint::HalfTau),
            _ => None,
        }
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub(crate) fn exp_string(e: Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// `Σ_r c_r(u) q^r + O(q^trunc)`.
///
/// Exponents are stored as numerators over a common denominator `den`, which
/// is kept minimal for the stored exponents together with the truncation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    den: i64,
    trunc: i64,
    terms: Vec<(i64, YPoly)>,
}

impl QSeries {
    /// Builds a series from arbitrary terms; duplicates are combined and
    /// anything at or above `trunc` is dropped.
    pub fn from_terms<I>(terms: I, trunc: Exp) -> Self
    where
        I: IntoIterator<Item = (Exp, YPoly)>,
    {
        let terms: Vec<(Exp, YPoly)> = terms.into_iter().collect();
        let den = terms
            .iter()
            .fold(*trunc.denom(), |d, (e, _)| d.lcm(e.denom()));
        let raw = terms.into_iter().map(|(e, p)| (e.numer() * (den / e.denom()), p));
        Self::from_grid(den, trunc.numer() * (den / trunc.denom()), raw)
    }

    /// Terms on an explicit grid `1/den`; need not be sorted or distinct.
    fn from_grid<I>(den: i64, trunc: i64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, YPoly)>,
    {
        let mut v: Vec<(i64, YPoly)> = terms
            .into_iter()
            .filter(|(n, p)| *n < trunc && !p.is_zero())
            .collect();
        v.sort_by_key(|(n, _)| *n);
        let mut out: Vec<(i64, YPoly)> = Vec::with_capacity(v.len());
        for (n, p) in v {
            match out.last_mut() {
                Some((ln, lp)) if *ln == n => lp.add_assign_ref(&p),
                _ => out.push((n, p)),
            }
        }
        out.retain(|(_, p)| !p.is_zero());
        Self::canonical(den, trunc, out)
    }

    /// Reduces the denominator. `terms` must already be sorted and nonzero.
    fn canonical(den: i64, trunc: i64, terms: Vec<(i64, YPoly)>) -> Self {
        let g = terms
            .iter()
            .fold(den.gcd(&trunc), |g, (n, _)| g.gcd(n))
            .max(1);
        QSeries {
            den: den / g,
            trunc: trunc / g,
            terms: if g == 1 {
                terms
            } else {
                terms.into_iter().map(|(n, p)| (n / g, p)).collect()
            },
        }
    }

    pub fn zero(trunc: Exp) -> Self {
        Self::from_terms(std::iter::empty(), trunc)
    }

    pub fn one(trunc: Exp) -> Self {
        Self::constant(YPoly::one(), trunc)
    }

    pub fn constant(p: YPoly, trunc: Exp) -> Self {
        Self::monomial(Exp::zero(), p, trunc)
    }

    pub fn monomial(e: Exp, p: YPoly, trunc: Exp) -> Self {
        Self::from_terms(std::iter::once((e, p)), trunc)
    }

    /// A series with constant (u-free) rational coefficients.
    pub fn from_scalars<I>(it: I, trunc: Exp) -> Self
    where
        I: IntoIterator<Item = (Exp, BigRational)>,
    {
        Self::from_terms(it.into_iter().map(|(e, c)| (e, YPoly::constant(c))), trunc)
    }

    pub fn base_den(&self) -> i64 {
        self.den
    }

    pub fn trunc(&self) -> Exp {
        Exp::new(self.trunc, self.den)
    }

    /// First exponent with a nonzero coefficient; the truncation for a zero series.
    pub fn lead(&self) -> Exp {
        match self.terms.first() {
            Some((n, _)) => Exp::new(*n, self.den),
            None => self.trunc(),
        }
    }

    pub fn leading_coeff(&self) -> Option<&YPoly> {
        self.terms.first().map(|(_, p)| p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp, &YPoly)> + '_ {
        self.terms.iter().map(|(n, p)| (Exp::new(*n, self.den), p))
    }

    /// True when every coefficient involves only integer powers of `y`.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(_, p)| p.is_even())
    }

    /// The coefficient of `q^e`.
    pub fn coefficient(&self, e: Exp) -> Result<YPoly> {
        if e >= self.trunc() {
            return Err(Error::AboveTruncation {
                requested: exp_string(e),
                trunc: exp_string(self.trunc()),
            });
        }
        if (e * self.den).is_integer() {
            let n = (e * self.den).to_integer();
            if let Ok(i) = self.terms.binary_search_by_key(&n, |(m, _)| *m) {
                return Ok(self.terms[i].1.clone());
            }
        }
        Ok(YPoly::zero())
    }

    /// Rational coefficient of `u^m q^e`.
    pub fn coeff_at(&self, e: Exp, m: i64) -> Result<BigRational> {
        Ok(self.coefficient(e)?.coeff(m))
    }

    fn scaled_terms(&self, den: i64) -> impl Iterator<Item = (i64, &YPoly)> + '_ {
        let f = den / self.den;
        self.terms.iter().map(move |(n, p)| (n * f, p))
    }

    fn lead_num(&self, den: i64) -> i64 {
        let f = den / self.den;
        self.terms.first().map(|(n, _)| *n).unwrap_or(self.trunc) * f
    }

    pub fn truncate(&self, t: Exp) -> Self {
        let t = t.min(self.trunc());
        Self::from_terms(self.terms().map(|(e, p)| (e, p.clone())), t)
    }

    fn combine(&self, rhs: &QSeries, negate: bool) -> QSeries {
        let den = self.den.lcm(&rhs.den);
        let trunc = (self.trunc * (den / self.den)).min(rhs.trunc * (den / rhs.den));
        let mut out: Vec<(i64, YPoly)> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = self.scaled_terms(den).peekable();
        let mut b = rhs.scaled_terms(den).peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => {
                    let (n, p) = a.next().unwrap();
                    (n, p.clone())
                }
                (None, Some(_)) => {
                    let (n, p) = b.next().unwrap();
                    (n, if negate { -p } else { p.clone() })
                }
                (Some((na, _)), Some((nb, _))) => {
                    if na < nb {
                        let (n, p) = a.next().unwrap();
                        (n, p.clone())
                    } else if nb < na {
                        let (n, p) = b.next().unwrap();
                        (n, if negate { -p } else { p.clone() })
                    } else {
                        let (n, pa) = a.next().unwrap();
                        let (_, pb) = b.next().unwrap();
                        (n, if negate { pa - pb } else { pa + pb })
                    }
                }
            };
            if next.0 >= trunc {
                break;
            }
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        Self::canonical(den, trunc, out)
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, false)
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        self.combine(rhs, true)
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            den: self.den,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(n, p)| (*n, -p)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> QSeries {
        Self::from_grid(
            self.den,
            self.trunc,
            self.terms.iter().map(|(n, p)| (*n, p.scale(c))),
        )
    }

    pub fn scale_int(&self, c: i64) -> QSeries {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Multiplies by an exact Laurent polynomial; the truncation is unchanged.
    pub fn mul_ypoly(&self, p: &YPoly) -> QSeries {
        Self::from_grid(
            self.den,
            self.trunc,
            self.terms.iter().map(|(n, c)| (*n, c * p)),
        )
    }

    /// Multiplies by the exact monomial `q^e`, shifting the truncation too.
    pub fn mul_q_power(&self, e: Exp) -> QSeries {
        let den = self.den.lcm(e.denom());
        let f = den / self.den;
        let s = e.numer() * (den / e.denom());
        Self::canonical(
            den,
            self.trunc * f + s,
            self.terms.iter().map(|(n, p)| (n * f + s, p.clone())).collect(),
        )
    }

    /// Multiplies by `u^k`.
    pub fn mul_u_power(&self, k: i64) -> QSeries {
        QSeries {
            den: self.den,
            trunc: self.trunc,
            terms: self.terms.iter().map(|(n, p)| (*n, p.shift(k))).collect(),
        }
    }

    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        self.mul_with(rhs, Exec::default())
    }

    /// Cauchy product truncated at `min(T_a + lead_b, T_b + lead_a)`.
    pub fn mul_with(&self, rhs: &QSeries, exec: Exec) -> QSeries {
        let den = self.den.lcm(&rhs.den);
        let (la, lb) = (self.lead_num(den), rhs.lead_num(den));
        let (ta, tb) = (self.trunc * (den / self.den), rhs.trunc * (den / rhs.den));
        let trunc = (ta + lb).min(tb + la);
        let base = la + lb;
        if trunc <= base {
            return Self::canonical(den, trunc, Vec::new());
        }
        let a: Vec<(i64, &YPoly)> = self.scaled_terms(den).collect();
        let b: Vec<(i64, &YPoly)> = rhs.scaled_terms(den).collect();
        // Dense index of b by exponent offset from its lead.
        let mut bidx: Vec<Option<usize>> = vec![None; (tb - lb).max(0) as usize];
        for (i, (n, _)) in b.iter().enumerate() {
            bidx[(n - lb) as usize] = Some(i);
        }
        let len = (trunc - base) as usize;
        let mut hit = vec![false; len];
        for (na, _) in &a {
            for (nb, _) in &b {
                let e = na + nb;
                if e >= trunc {
                    break;
                }
                hit[(e - base) as usize] = true;
            }
        }
        let positions: Vec<i64> = (0..len)
            .filter(|&i| hit[i])
            .map(|i| base + i as i64)
            .collect();
        let coeff_at = |e: &i64| -> (i64, YPoly) {
            let mut acc = YPoly::zero();
            for (na, pa) in &a {
                let nb = e - na;
                if nb < lb {
                    break;
                }
                if let Some(Some(j)) = bidx.get((nb - lb) as usize) {
                    acc.add_assign_ref(&(*pa * b[*j].1));
                }
            }
            (*e, acc)
        };
        let terms: Vec<(i64, YPoly)> = exec
            .map(&positions, coeff_at)
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        Self::canonical(den, trunc, terms)
    }

    pub fn div(&self, rhs: &QSeries) -> Result<QSeries> {
        self.div_with(rhs, Exec::default())
    }

    /// Series division `N/D` by the recursion
    /// `c_r = (N_r − Σ_{s>0} D_s c_{r−s}) / D_0` with exact polynomial division.
    pub fn div_with(&self, rhs: &QSeries, exec: Exec) -> Result<QSeries> {
        let d_lead = rhs.leading_coeff().ok_or(Error::ZeroDivisor)?;
        let den = self.den.lcm(&rhs.den);
        let (tn, td) = (self.trunc * (den / self.den), rhs.trunc * (den / rhs.den));
        let n0 = self.lead_num(den);
        let d0 = rhs.lead_num(den);
        let trunc = (tn - d0).min(td + n0 - 2 * d0);
        let start = n0 - d0;
        if trunc <= start {
            return Ok(Self::canonical(den, trunc, Vec::new()));
        }
        let len = (trunc - start) as usize;
        let mut rem: Vec<YPoly> = vec![YPoly::zero(); len];
        for (n, p) in self.scaled_terms(den) {
            let i = n - d0 - start;
            if (i as usize) < len {
                rem[i as usize] = p.clone();
            }
        }
        let tail: Vec<(usize, &YPoly)> = rhs
            .scaled_terms(den)
            .skip(1)
            .map(|(n, p)| ((n - d0) as usize, p))
            .filter(|(off, _)| *off < len)
            .collect();
        let mut out: Vec<(i64, YPoly)> = Vec::new();
        for i in 0..len {
            if rem[i].is_zero() {
                continue;
            }
            let r = std::mem::take(&mut rem[i]);
            let c = r.div_exact(d_lead).ok_or_else(|| Error::InexactDivision {
                exponent: exp_string(Exp::new(start + i as i64, den)),
            })?;
            let live: Vec<&(usize, &YPoly)> =
                tail.iter().take_while(|(off, _)| i + off < len).collect();
            let updates = exec.map(&live, |(off, p)| (i + off, &c * *p));
            for (j, u) in updates {
                rem[j].sub_assign_ref(&u);
            }
            out.push((start + i as i64, c));
        }
        Ok(Self::canonical(den, trunc, out))
    }

    /// `self^n` for `n ≥ 0`. `self^0` is `1` known to the relative precision of `self`.
    pub fn pow(&self, n: u32) -> QSeries {
        if n == 0 {
            return QSeries::one(self.trunc() - self.lead());
        }
        let mut result: Option<QSeries> = None;
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result.unwrap()
    }

    /// Integer powers, negative ones via division.
    pub fn powi(&self, n: i32) -> Result<QSeries> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let p = self.pow((-n) as u32);
        let one = QSeries::one(p.trunc() + p.lead().abs());
        one.div(&p)
    }

    /// `D = (1/2πi) d/dz`, i.e. `u^m ↦ (m/2) u^m`.
    pub fn differentiate_z(&self) -> QSeries {
        Self::from_grid(
            self.den,
            self.trunc,
            self.terms.iter().map(|(n, p)| (*n, p.differentiate())),
        )
    }

    /// Value at `z = 0`: every coefficient summed at `u = 1`.
    pub fn at_z_zero(&self) -> QSeries {
        Self::from_grid(
            self.den,
            self.trunc,
            self.terms
                .iter()
                .map(|(n, p)| (*n, YPoly::constant(p.sum_at_one()))),
        )
    }

    fn require_even(&self) -> Result<()> {
        if self.is_even() {
            Ok(())
        } else {
            Err(Error::OddParity)
        }
    }

    /// `z → z + 1/2`: `y^j ↦ (−1)^j y^j`.
    pub fn shift_z_by_half(&self) -> Result<QSeries> {
        self.require_even()?;
        Ok(QSeries {
            den: self.den,
            trunc: self.trunc,
            terms: self
                .terms
                .iter()
                .map(|(n, p)| (*n, p.map_sign(|m| (m / 2) % 2 != 0)))
                .collect(),
        })
    }

    /// `z → z + c·τ` for any nonzero rational `c`: `u^m q^r ↦ u^m q^{r + c·m/2}`.
    ///
    /// The terms beyond the truncation are controlled by `tail`; every stored
    /// term is checked against it.
    pub fn shift_z_by_tau_multiple(&self, c: Exp, tail: &TailBound) -> Result<QSeries> {
        self.check_tail(tail)?;
        let trunc = tail.shifted_trunc(self.trunc(), self.den, c, self.is_even());
        let mut out: Vec<(Exp, YPoly)> = Vec::new();
        for (e, p) in self.terms() {
            for (m, coef) in p.terms() {
                let ne = e + c * Exp::from_integer(*m) / 2;
                out.push((ne, YPoly::monomial(*m, coef.clone())));
            }
        }
        Ok(Self::from_terms(out, trunc))
    }

    /// `z → z + τ/2`.
    pub fn shift_z_by_half_tau(&self, tail: &TailBound) -> Result<QSeries> {
        self.shift_z_by_tau_multiple(Exp::new(1, 2), tail)
    }

    pub fn check_tail(&self, tail: &TailBound) -> Result<()> {
        for (e, p) in self.terms() {
            for (m, _) in p.terms() {
                if !tail.admits(e, *m) {
                    return Err(Error::TailBoundViolated {
                        exponent: exp_string(e),
                        upow: *m,
                    });
                }
            }
        }
        Ok(())
    }

    /// Substitutes a half-period for `z`. The result has constant coefficients.
    ///
    /// The two `τ`-dependent points need a tail bound to fix the new truncation.
    pub fn specialize(&self, point: SpecialPoint, tail: Option<&TailBound>) -> Result<QSeries> {
        self.require_even()?;
        match point {
            SpecialPoint::Half => Ok(Self::from_grid(
                self.den,
                self.trunc,
                self.terms.iter().map(|(n, p)| {
                    let s = p.terms().iter().fold(BigRational::zero(), |acc, (m, c)| {
                        if (m / 2) % 2 == 0 {
                            acc + c
                        } else {
                            acc - c
                        }
                    });
                    (*n, YPoly::constant(s))
                }),
            )),
            SpecialPoint::HalfPlusHalfTau | SpecialPoint::HalfTau => {
                let tail = tail.ok_or(Error::MissingTailBound)?;
                let sign = point == SpecialPoint::HalfPlusHalfTau;
                let shifted = self.shift_z_by_half_tau(tail)?;
                let base = if sign {
                    shifted.shift_z_by_half()?
                } else {
                    shifted
                };
                Ok(base.at_z_zero())
            }
        }
    }

    /// True when both series agree below the smaller truncation.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.sub(other).is_zero()
    }

    /// Applies `f` to every coefficient polynomial.
    pub fn map_coeffs<F: Fn(&YPoly) -> YPoly>(&self, f: F) -> QSeries {
        Self::from_grid(
            self.den,
            self.trunc,
            self.terms.iter().map(|(n, p)| (*n, f(p))),
        )
    }

    /// Constant coefficients as a list `(exponent, value)`; fails if any
    /// coefficient still depends on `u`.
    pub fn scalar_terms(&self) -> Option<Vec<(Exp, BigRational)>> {
        self.terms()
            .map(|(e, p)| p.is_constant().then(|| (e, p.constant_term())))
            .collect()
    }

    /// Largest `|u|`-power appearing anywhere.
    pub fn max_abs_upow(&self) -> i64 {
        self.terms.iter().map(|(_, p)| p.max_abs_pow()).max().unwrap_or(0)
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, p)| p.terms().iter().all(|(_, c)| c.is_integer()))
    }

    /// Largest denominator among coefficients (for diagnostics).
    pub fn max_coeff_denom(&self) -> BigInt {
        self.terms
            .iter()
            .flat_map(|(_, p)| p.terms().iter().map(|(_, c)| c.denom().clone()))
            .max()
            .unwrap_or_else(BigInt::one)
    }

    /// True when no coefficient is negative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, p)| p.terms().iter().all(|(_, c)| !c.is_negative()))
    }
}

impl Add for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        QSeries::add(self, rhs)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        QSeries::sub(self, rhs)
    }
}

impl Mul for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        QSeries::mul(self, rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    fn ints(terms: &[(i64, i64, i64)], trunc: Exp) -> QSeries {
        // (exp numerator over 2, u-power, coefficient)
        QSeries::from_terms(
            terms
                .iter()
                .map(|&(n, m, c)| (e(n, 2), YPoly::term(m, c))),
            trunc,
        )
    }

    #[test]
    fn addition_cancels_and_keeps_truncation() {
        let a = ints(&[(0, 0, 1), (2, 0, 1)], e(5, 1));
        let b = ints(&[(0, 0, -1), (2, 0, 1)], e(3, 1));
        let s = &a + &b;
        assert_eq!(s, ints(&[(2, 0, 2)], e(3, 1)));
        assert_eq!(s.trunc(), e(3, 1));
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.trunc(), e(5, 1));
    }

    #[test]
    fn square_of_binomial() {
        let a = ints(&[(0, 0, 1), (1, 0, 1)], e(4, 1));
        let sq = &a * &a;
        assert_eq!(sq, ints(&[(0, 0, 1), (1, 0, 2), (2, 0, 1)], e(4, 1)));
    }

    #[test]
    fn geometric_series() {
        let one = QSeries::one(e(6, 1));
        let d = ints(&[(0, 0, 1), (2, 0, -1)], e(6, 1));
        let g = one.div(&d).unwrap();
        let want = ints(&[(0, 0, 1), (2, 0, 1), (4, 0, 1), (6, 0, 1), (8, 0, 1), (10, 0, 1)], e(6, 1));
        assert_eq!(g, want);
        assert_eq!(g.coefficient(e(0, 1)).unwrap(), YPoly::one());
    }

    #[test]
    fn truncation_of_product_follows_leads() {
        let a = QSeries::monomial(e(1, 8), YPoly::one(), e(3, 1));
        let b = QSeries::monomial(e(1, 4), YPoly::one(), e(2, 1));
        assert_eq!((&a * &b).trunc(), e(17, 8));
    }

    #[test]
    fn division_truncation() {
        // N known to q^3, D = q^{1/2}(1 + q) known to q^2.
        let n = QSeries::one(e(3, 1));
        let d = QSeries::from_terms(
            vec![(e(1, 2), YPoly::one()), (e(3, 2), YPoly::one())],
            e(2, 1),
        );
        let q = n.div(&d).unwrap();
        // min(3 - 1/2, 2 + 0 - 1) = 1
        assert_eq!(q.trunc(), e(1, 1));
        assert_eq!(q.lead(), e(-1, 2));
    }

    #[test]
    fn inexact_division_reported() {
        let n = QSeries::one(e(3, 1));
        let d = QSeries::constant(YPoly::from_int_terms(&[(0, 1), (2, -1)]), e(3, 1));
        assert!(matches!(n.div(&d), Err(Error::InexactDivision { .. })));
        assert_eq!(n.div(&QSeries::zero(e(3, 1))), Err(Error::ZeroDivisor));
    }

    #[test]
    fn cancel_common_factor() {
        let f = YPoly::from_int_terms(&[(-2, -1), (2, 1)]);
        let s = ints(&[(0, 2, 1), (1, -4, 3), (3, 0, -2)], e(4, 1));
        let prod = s.mul_ypoly(&f);
        let back = prod.div(&QSeries::constant(f, e(4, 1))).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn specialization_at_half_periods() {
        let p = YPoly::from_int_terms(&[(-2, 1), (2, 1)]);
        let s = QSeries::constant(p, e(4, 1));
        let h = s.specialize(SpecialPoint::Half, None).unwrap();
        assert_eq!(h, QSeries::constant(YPoly::from_int(-2), e(4, 1)));
        let tb = TailBound::weak_jacobi_int(1);
        let t = s.specialize(SpecialPoint::HalfTau, Some(&tb)).unwrap();
        let mut it = t.terms();
        assert_eq!(it.next().unwrap(), (e(-1, 2), &YPoly::one()));
        assert_eq!(it.next().unwrap(), (e(1, 2), &YPoly::one()));
        assert!(s
            .specialize(SpecialPoint::HalfTau, None)
            .is_err_and(|x| x == Error::MissingTailBound));
        let odd = QSeries::constant(YPoly::term(1, 1), e(1, 1));
        assert_eq!(odd.specialize(SpecialPoint::Half, None), Err(Error::OddParity));
    }

    #[test]
    fn half_shift_flips_odd_y_powers() {
        let s = QSeries::constant(YPoly::from_int_terms(&[(-2, 1), (0, -2), (2, 1)]), e(1, 1));
        let t = s.shift_z_by_half().unwrap();
        assert_eq!(
            t,
            QSeries::constant(YPoly::from_int_terms(&[(-2, -1), (0, -2), (2, -1)]), e(1, 1))
        );
        assert_eq!(t.shift_z_by_half().unwrap(), s);
    }

    #[test]
    fn tau_half_shift() {
        let s = QSeries::constant(YPoly::term(2, 1), e(4, 1));
        let t = s.shift_z_by_half_tau(&TailBound::weak_jacobi_int(1)).unwrap();
        assert_eq!(t.lead(), e(1, 2));
        assert_eq!(t.coefficient(e(1, 2)).unwrap(), YPoly::term(2, 1));
    }

    #[test]
    fn coefficient_above_truncation_rejected() {
        let s = QSeries::one(e(2, 1));
        assert!(matches!(
            s.coefficient(e(2, 1)),
            Err(Error::AboveTruncation { .. })
        ));
        assert_eq!(s.coefficient(e(1, 3)).unwrap(), YPoly::zero());
    }

    #[test]
    fn canonical_denominator_is_minimal() {
        let s = QSeries::from_terms(vec![(e(2, 4), YPoly::one())], e(6, 4));
        assert_eq!(s.base_den(), 2);
        let s = QSeries::from_terms(vec![(e(1, 1), YPoly::one())], e(3, 1));
        assert_eq!(s.base_den(), 1);
    }

    #[test]
    fn sequential_and_parallel_products_agree() {
        let a = ints(&[(0, 1, 1), (1, -1, 2), (3, 3, -1), (5, 0, 7)], e(5, 1));
        let b = ints(&[(1, -1, 1), (2, 1, -3), (4, 2, 5)], e(6, 1));
        assert_eq!(
            a.mul_with(&b, Exec::Sequential),
            a.mul_with(&b, Exec::Parallel)
        );
        let q1 = a.div_with(&b, Exec::Sequential);
        let q2 = a.div_with(&b, Exec::Parallel);
        assert_eq!(q1, q2);
    }

    #[test]
    fn powers() {
        let a = ints(&[(0, 0, 1), (1, 0, 1)], e(4, 1));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        let inv = a.powi(-1).unwrap();
        assert!((&inv * &a).agrees_with(&QSeries::one(e(4, 1))));
    }
}
