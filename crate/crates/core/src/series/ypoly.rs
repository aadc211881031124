//! Laurent polynomials in the half-fugacity `u = e^{πiz}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite Laurent polynomial `Σ c_m u^m` with exact rational coefficients.
///
/// Terms are kept sorted by strictly increasing `u`-power and never store a
/// zero coefficient, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct YPoly {
    terms: Vec<(i64, BigRational)>,
}

impl YPoly {
    pub fn zero() -> Self {
        YPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    pub fn monomial(upow: i64, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            YPoly { terms: vec![(upow, c)] }
        }
    }

    /// `c · u^upow` with an integer coefficient.
    pub fn term(upow: i64, c: i64) -> Self {
        Self::monomial(upow, BigRational::from_integer(c.into()))
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut v: Vec<(i64, BigRational)> = it.into_iter().collect();
        v.sort_by_key(|(m, _)| *m);
        let mut out: Vec<(i64, BigRational)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        YPoly { terms: out }
    }

    pub fn from_int_terms(it: &[(i64, i64)]) -> Self {
        Self::from_terms(
            it.iter()
                .map(|&(m, c)| (m, BigRational::from_integer(c.into()))),
        )
    }

    /// `u^{-1}`-symmetric building block `(u − u^{-1})^{2n}` expanded directly.
    pub fn u_minus_uinv_pow(n: u32) -> Self {
        let base = Self::from_int_terms(&[(-1, -1), (1, 1)]);
        let mut acc = Self::one();
        for _ in 0..2 * n {
            acc = &acc * &base;
        }
        acc
    }

    /// The Chebyshev sum `I_{j/2}(z) = Σ_{n=-j/2}^{j/2} y^{2n}` for `j = two_l`.
    pub fn chebyshev_sum(two_l: u32) -> Self {
        // y^{2n} = u^{4n}; n runs over -j/2, -j/2+1, ..., j/2.
        let j = two_l as i64;
        Self::from_terms((0..=j).map(|i| (2 * (2 * i - j), BigRational::one())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, upow: i64) -> BigRational {
        match self.terms.binary_search_by_key(&upow, |(m, _)| *m) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    pub fn min_pow(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| *m)
    }

    pub fn max_pow(&self) -> Option<i64> {
        self.terms.last().map(|(m, _)| *m)
    }

    /// Largest `|m|` among stored powers.
    pub fn max_abs_pow(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.abs()).max().unwrap_or(0)
    }

    /// True when every power of `u` is even, i.e. the polynomial is a function of `y = u²`.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(m, _)| m % 2 == 0)
    }

    /// Value at `u = 1` (that is, `z = 0`).
    pub fn sum_at_one(&self) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (_, c)| acc + c)
    }

    /// True when the polynomial is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == 0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        YPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        YPoly {
            terms: self.terms.iter().map(|(m, c)| (m + k, c.clone())).collect(),
        }
    }

    /// Substitutes `z → s·z`, i.e. `u^m ↦ u^{s m}` for `s > 0`.
    pub fn scale_z(&self, s: i64) -> Self {
        assert!(s > 0, "z scale must be positive");
        YPoly {
            terms: self.terms.iter().map(|(m, c)| (m * s, c.clone())).collect(),
        }
    }

    /// `(1/2πi) d/dz`: `u^m ↦ (m/2) u^m`.
    pub fn differentiate(&self) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        YPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, c * BigRational::from_integer((*m).into()) * &half)),
        )
    }

    /// Termwise map `u^m ↦ f(m)·u^m` keeping the powers.
    pub fn map_sign<F: Fn(i64) -> bool>(&self, negate: F) -> Self {
        YPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if negate(*m) { -c.clone() } else { c.clone() }))
                .collect(),
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &YPoly) -> Option<YPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(YPoly::zero());
        }
        let dlo = divisor.min_pow().unwrap();
        let dhi = divisor.max_pow().unwrap();
        let nlo = self.min_pow().unwrap();
        let nhi = self.max_pow().unwrap();
        if nhi - nlo < dhi - dlo {
            return None;
        }
        // Dense polynomial long division from the top degree.
        let mut rem: Vec<BigRational> = vec![BigRational::zero(); (nhi - nlo + 1) as usize];
        for (m, c) in &self.terms {
            rem[(m - nlo) as usize] = c.clone();
        }
        let dl = (dhi - dlo) as usize;
        let mut dv: Vec<BigRational> = vec![BigRational::zero(); dl + 1];
        for (m, c) in &divisor.terms {
            dv[(m - dlo) as usize] = c.clone();
        }
        let lead = dv[dl].clone();
        let qlen = rem.len() - dl;
        let mut quot: Vec<BigRational> = vec![BigRational::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + dl];
            if top.is_zero() {
                continue;
            }
            let c = top / &lead;
            for (j, d) in dv.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let shift = nlo - dlo;
        Some(YPoly::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c)),
        ))
    }

    pub fn pow(&self, n: u32) -> YPoly {
        let mut acc = YPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn add_assign_ref(&mut self, other: &YPoly) {
        if other.is_zero() {
            return;
        }
        *self = &*self + other;
    }

    pub(crate) fn sub_assign_ref(&mut self, other: &YPoly) {
        if other.is_zero() {
            return;
        }
        *self = &*self - other;
    }
}

fn merge(a: &YPoly, b: &YPoly, negate_b: bool) -> YPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let take_a = j >= b.terms.len() || (i < a.terms.len() && a.terms[i].0 < b.terms[j].0);
        let take_b = i >= a.terms.len() || (j < b.terms.len() && b.terms[j].0 < a.terms[i].0);
        if take_a {
            out.push(a.terms[i].clone());
            i += 1;
        } else if take_b {
            let (m, c) = &b.terms[j];
            out.push((*m, if negate_b { -c.clone() } else { c.clone() }));
            j += 1;
        } else {
            let m = a.terms[i].0;
            let c = if negate_b {
                &a.terms[i].1 - &b.terms[j].1
            } else {
                &a.terms[i].1 + &b.terms[j].1
            };
            if !c.is_zero() {
                out.push((m, c));
            }
            i += 1;
            j += 1;
        }
    }
    YPoly { terms: out }
}

impl Add for &YPoly {
    type Output = YPoly;
    fn add(self, rhs: &YPoly) -> YPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &YPoly {
    type Output = YPoly;
    fn sub(self, rhs: &YPoly) -> YPoly {
        merge(self, rhs, true)
    }
}

impl Neg for &YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        YPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Mul for &YPoly {
    type Output = YPoly;
    fn mul(self, rhs: &YPoly) -> YPoly {
        if self.is_zero() || rhs.is_zero() {
            return YPoly::zero();
        }
        let lo = self.min_pow().unwrap() + rhs.min_pow().unwrap();
        let hi = self.max_pow().unwrap() + rhs.max_pow().unwrap();
        let mut acc: Vec<BigRational> = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                acc[(ma + mb - lo) as usize] += ca * cb;
            }
        }
        YPoly::from_terms(
            acc.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + lo, c)),
        )
    }
}

impl Add for YPoly {
    type Output = YPoly;
    fn add(self, rhs: YPoly) -> YPoly {
        &self + &rhs
    }
}

impl Sub for YPoly {
    type Output = YPoly;
    fn sub(self, rhs: YPoly) -> YPoly {
        &self - &rhs
    }
}

impl Mul for YPoly {
    type Output = YPoly;
    fn mul(self, rhs: YPoly) -> YPoly {
        &self * &rhs
    }
}

impl Neg for YPoly {
    type Output = YPoly;
    fn neg(self) -> YPoly {
        -&self
    }
}

/// Canonical text: ascending powers, `c*u^m`, constants bare.
impl fmt::Display for YPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match *m {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => write!(f, "u^{m}")?,
                _ => write!(f, "{a}*u^{m}")?,
            }
        }
        Ok(())
    }
}
