//! N=4 superconformal characters at level `k` in the four sectors.
//!
//! Everything is built in the `R̃` sector, where the theta prefactor is
//! `θ_11²/η³`, and moved to the other sectors by half-period shifts and
//! spectral flow.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{affine_character, eta_pow, jacobi_theta, ThetaKind};
use crate::series::{Exp, QSeries, TailBound, YPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sector {
    R,
    RTilde,
    NS,
    NSTilde,
}

impl Sector {
    pub const ALL: [Sector; 4] = [Sector::R, Sector::RTilde, Sector::NS, Sector::NSTilde];

    pub fn code(self) -> &'static str {
        match self {
            Sector::R => "R",
            Sector::RTilde => "Rt",
            Sector::NS => "NS",
            Sector::NSTilde => "NSt",
        }
    }

    pub fn parse(s: &str) -> Option<Sector> {
        Sector::ALL.into_iter().find(|x| x.code() == s)
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// A representation of the level-`k` algebra, labelled by its Ramond-sector
/// weight `h` and isospin `two_l/2`, viewed in `sector`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CharacterSpec {
    pub sector: Sector,
    pub k: i64,
    pub h: Exp,
    pub two_l: i64,
}

impl CharacterSpec {
    pub fn massless(sector: Sector, k: i64, two_l: i64) -> Self {
        CharacterSpec {
            sector,
            k,
            h: Exp::new(k, 4),
            two_l,
        }
    }

    pub fn is_massless(&self) -> bool {
        self.h == Exp::new(self.k, 4)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidSpec(format!("level {} must be positive", self.k)));
        }
        if self.two_l < 0 || self.two_l > self.k {
            return Err(Error::InvalidSpec(format!(
                "isospin {}/2 outside [0, {}/2]",
                self.two_l, self.k
            )));
        }
        if self.h < Exp::new(self.k, 4) {
            return Err(Error::InvalidSpec(format!(
                "weight {} below the unitarity bound {}/4",
                self.h, self.k
            )));
        }
        if !self.is_massless() && self.two_l == 0 {
            return Err(Error::InvalidSpec(
                "massive representations need isospin at least 1/2".into(),
            ));
        }
        Ok(())
    }
}

/// Support bound shared by all level-`k` characters in every sector.
pub fn character_tail(k: i64) -> TailBound {
    TailBound::weak_jacobi_int(k)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn theta_sq_over_eta3(kind: ThetaKind, order: Exp) -> Result<QSeries> {
    let th = jacobi_theta(kind, 1, order);
    th.mul(&th).div(&eta_pow(3, order)?)
}

/// `θ_11(z)²/η³ = −θ̃_11(z)²/η³`.
pub fn theta11_sq_over_eta3(order: Exp) -> Result<QSeries> {
    Ok(theta_sq_over_eta3(ThetaKind::T11, order)?.neg())
}

/// `θ_10(z)²/η³`.
pub fn theta10_sq_over_eta3(order: Exp) -> Result<QSeries> {
    theta_sq_over_eta3(ThetaKind::T10, order)
}

/// `B_P^{(a)} = θ_11²/η³ · χ_{P−2,(a−1)/2}`, leading term
/// `−(u − u^{-1})² I_{(a−1)/2} q^{a²/4P}`.
pub fn basis_function(p: i64, a: i64, order: Exp) -> Result<QSeries> {
    if !(1..p).contains(&a) {
        return Err(Error::InvalidSpec(format!("basis index {a} outside 1..{}", p - 1)));
    }
    let pre = theta11_sq_over_eta3(order + Exp::new(1, 8))?;
    let chi = affine_character(p - 2, a - 1, order)?;
    Ok(pre.mul(&chi).truncate(order))
}

/// `A'_P = (1 − y)·Σ_m q^{Pm²} y^{2Pm} (1 + q^m y)/(1 − q^m y)` expanded
/// termwise; the `m = 0` pole is absorbed by the `(1 − y)` factor.
fn appell_numerator(p: i64, order: Exp) -> QSeries {
    let one_minus_y = YPoly::from_int_terms(&[(0, 1), (2, -1)]);
    let mut terms: Vec<(Exp, YPoly)> = vec![(Exp::zero(), YPoly::from_int_terms(&[(0, 1), (2, 1)]))];
    let mut m = 1i64;
    while Exp::from_integer(p * m * m) < order {
        for sgn in [1i64, -1] {
            // m > 0: q^{Pm²} y^{2Pm} (1 + 2 Σ_j q^{mj} y^j)
            // m < 0: −q^{Pm²} y^{−2Pm} (1 + 2 Σ_j q^{mj} y^{−j})
            let base_u = sgn * 4 * p * m;
            let mut body = vec![(Exp::from_integer(p * m * m), YPoly::term(base_u, sgn))];
            let mut j = 1i64;
            while Exp::from_integer(p * m * m + m * j) < order {
                body.push((
                    Exp::from_integer(p * m * m + m * j),
                    YPoly::term(base_u + sgn * 2 * j, 2 * sgn),
                ));
                j += 1;
            }
            terms.extend(body.into_iter().map(|(e, c)| (e, &c * &one_minus_y)));
        }
        m += 1;
    }
    QSeries::from_terms(terms, order)
}

/// The isospin-0 massless character `C_P` (`P = k+1`) in the `R̃` sector,
/// from the Appell sum.
pub fn massless_iso0_rtilde(k: i64, order: Exp) -> Result<QSeries> {
    if k < 1 {
        return Err(Error::InvalidSpec(format!("level {k} must be positive")));
    }
    let p = k + 1;
    let eighth = Exp::new(1, 8);
    let th = jacobi_theta(ThetaKind::T11, 1, order + eighth);
    let num = th.mul(&th).mul(&appell_numerator(p, order)).neg();
    let den = eta_pow(3, order + eighth)?
        .mul(&jacobi_theta(ThetaKind::T11, 2, order + eighth))
        .mul_ypoly(&YPoly::from_int_terms(&[(0, 1), (2, -1)]));
    Ok(num.div(&den)?.truncate(order))
}

/// Massless Ramond character evaluated straight from its double-pole sum,
/// with the `(1 + y)²` pole at `z = 1/2` multiplied through. Independent of
/// the recursion and of the Appell route.
pub fn massless_direct_r(k: i64, two_l: i64, order: Exp) -> Result<QSeries> {
    CharacterSpec::massless(Sector::R, k, two_l).validate()?;
    let p = k + 1;
    let l2 = Exp::new(two_l, 1); // 2ℓ
    let one_plus_y_sq = YPoly::from_int_terms(&[(0, 1), (2, 2), (4, 1)]);
    let mut terms: Vec<(Exp, YPoly)> = Vec::new();
    // m = 0, both ε: y^{2ℓ+2} − y^{−2ℓ}
    terms.push((
        Exp::zero(),
        YPoly::from_int_terms(&[(2 * two_l + 4, 1), (-2 * two_l, -1)]),
    ));
    let mut m = 1i64;
    loop {
        let mut any = false;
        for mm in [m, -m] {
            let base = Exp::from_integer(p * mm * mm) + l2 * mm;
            for eps in [1i64, -1] {
                // prefactor ε y^{2ε(Pm+ℓ)} q^{Pm²+2ℓm}, u-power 4ε(Pm+ℓ)
                let u0 = eps * (4 * p * mm + 2 * two_l);
                let mut j = 0i64;
                loop {
                    // 1/(1 + y^{−ε} q^{−m})² expanded in the small variable
                    let (e, upow) = if mm < 0 {
                        (base + Exp::from_integer(-mm * j), u0 - 2 * eps * j)
                    } else {
                        (base + Exp::from_integer(mm * (j + 2)), u0 + 2 * eps * (j + 2))
                    };
                    if e >= order {
                        break;
                    }
                    any = true;
                    let c = eps * sign(j) * (j + 1);
                    terms.push((e, &YPoly::term(upow, c) * &one_plus_y_sq));
                    j += 1;
                }
            }
        }
        if !any {
            break;
        }
        m += 1;
    }
    let sum = QSeries::from_terms(terms, order);
    let eighth = Exp::new(1, 8);
    let th = jacobi_theta(ThetaKind::T10, 1, order + eighth);
    let num = th.mul(&th).mul(&sum);
    let den = eta_pow(3, order + eighth)?
        .mul(&jacobi_theta(ThetaKind::T11, 2, order + eighth))
        .mul_ypoly(&one_plus_y_sq);
    Ok(num.div(&den)?.truncate(order))
}

/// `(−1)^{2ℓ+1} q^{−ℓ²/(k+1)} θ_11²/η³ χ_{k−1,ℓ−1/2}`: the `h → k/4` limit of
/// the massive `R̃` character.
pub fn massive_limit_rtilde(k: i64, two_l: i64, order: Exp) -> Result<QSeries> {
    let p = k + 1;
    let shift = Exp::new(-two_l * two_l, 4 * p);
    let b = basis_function(p, two_l, order - shift)?;
    Ok(b.mul_q_power(shift).scale_int(sign(two_l + 1)))
}

/// Memo of `R̃` massless characters keyed by `(k, 2ℓ, order)`.
#[derive(Default)]
pub struct CharacterBook {
    massless: Mutex<HashMap<(i64, i64, Exp), QSeries>>,
}

impl CharacterBook {
    pub fn new() -> Self {
        Self::default()
    }

    /// `R̃` massless character of isospin `two_l/2` by the recursion
    /// `ch_ℓ = (−1)^{2ℓ+1} q^{−ℓ²/(k+1)} θ_11²/η³ χ_{k−1,ℓ−1/2} − 2ch_{ℓ−1/2} − ch_{ℓ−1}`.
    pub fn massless_rtilde(&self, k: i64, two_l: i64, order: Exp) -> Result<QSeries> {
        CharacterSpec::massless(Sector::RTilde, k, two_l).validate()?;
        let key = (k, two_l, order);
        if let Some(s) = self.massless.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = if two_l == 0 {
            massless_iso0_rtilde(k, order)?
        } else {
            let mut acc = massive_limit_rtilde(k, two_l, order)?;
            acc = acc.sub(&self.massless_rtilde(k, two_l - 1, order)?.scale_int(2));
            if two_l >= 2 {
                acc = acc.sub(&self.massless_rtilde(k, two_l - 2, order)?);
            }
            acc
        };
        self.massless.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    pub fn character(&self, spec: &CharacterSpec, order: Exp) -> Result<QSeries> {
        spec.validate()?;
        if spec.is_massless() {
            let rt = self.massless_rtilde(spec.k, spec.two_l, order + flow_margin(spec, order))?;
            sector_transform(&rt, Sector::RTilde, spec.sector, spec.k).map(|s| s.truncate(order))
        } else {
            massive_character(spec, order)
        }
    }
}

/// Extra order needed before a spectral flow so the result reaches `order`.
fn flow_margin(spec: &CharacterSpec, order: Exp) -> Exp {
    match spec.sector {
        Sector::R | Sector::RTilde => Exp::zero(),
        // Under z → z + τ/2 order T drops to about T − √(kT + k²/4);
        // δ solves δ² − kδ − k·order − k²/4 = 0.
        Sector::NS | Sector::NSTilde => {
            let k = spec.k as f64;
            let t = (*order.numer() as f64 / *order.denom() as f64).max(0.0);
            let d = (k + (2.0 * k * k + 4.0 * k * t).sqrt()) / 2.0;
            Exp::from_integer(d.ceil() as i64 + 1)
        }
    }
}

fn massive_rtilde(spec: &CharacterSpec, order: Exp) -> Result<QSeries> {
    let p = spec.k + 1;
    let shift = spec.h - Exp::new(spec.two_l * spec.two_l, 4 * p) - Exp::new(spec.k, 4);
    let b = basis_function(p, spec.two_l, order - shift)?;
    Ok(b.mul_q_power(shift).scale_int(sign(spec.two_l + 1)))
}

/// Massive character `q^{h−ℓ²/(k+1)−k/4} θ_10²/η³ χ_{k−1,ℓ−1/2}` (Ramond), in any sector.
pub fn massive_character(spec: &CharacterSpec, order: Exp) -> Result<QSeries> {
    spec.validate()?;
    if spec.is_massless() {
        return Err(Error::InvalidSpec("weight at the unitarity bound is massless".into()));
    }
    let rt = massive_rtilde(spec, order + flow_margin(spec, order))?;
    Ok(sector_transform(&rt, Sector::RTilde, spec.sector, spec.k)?.truncate(order))
}

pub fn massless_character_iso0(k: i64, sector: Sector, order: Exp) -> Result<QSeries> {
    CharacterBook::new().character(&CharacterSpec::massless(sector, k, 0), order)
}

pub fn massless_character(spec: &CharacterSpec, order: Exp) -> Result<QSeries> {
    if !spec.is_massless() {
        return Err(Error::InvalidSpec("massless characters need h = k/4".into()));
    }
    CharacterBook::new().character(spec, order)
}

fn to_ramond(s: &QSeries, from: Sector, k: i64) -> Result<QSeries> {
    let tail = character_tail(k);
    match from {
        Sector::R => Ok(s.clone()),
        Sector::RTilde => s.shift_z_by_half(),
        // R(w) = q^{k/4} y^{−k} NS(w − τ/2)
        Sector::NS => Ok(s
            .shift_z_by_tau_multiple(Exp::new(-1, 2), &tail)?
            .mul_q_power(Exp::new(k, 4))
            .mul_u_power(-2 * k)),
        Sector::NSTilde => to_ramond(&s.shift_z_by_half()?, Sector::NS, k),
    }
}

fn from_ramond(r: &QSeries, to: Sector, k: i64) -> Result<QSeries> {
    let tail = character_tail(k);
    match to {
        Sector::R => Ok(r.clone()),
        Sector::RTilde => r.shift_z_by_half(),
        // NS(z) = q^{k/4} y^k R(z + τ/2)
        Sector::NS => Ok(r
            .shift_z_by_half_tau(&tail)?
            .mul_q_power(Exp::new(k, 4))
            .mul_u_power(2 * k)),
        Sector::NSTilde => from_ramond(r, Sector::NS, k)?.shift_z_by_half(),
    }
}

/// Moves a level-`k` character between sectors.
pub fn sector_transform(s: &QSeries, from: Sector, to: Sector, k: i64) -> Result<QSeries> {
    if from == to {
        return Ok(s.clone());
    }
    from_ramond(&to_ramond(s, from, k)?, to, k)
}

/// Outcome of checking
/// `ch_ℓ + 2ch_{ℓ−1/2} + ch_{ℓ−1} = q^{−ℓ²/(k+1)} θ_10²/η³ χ_{k−1,ℓ−1/2}` (Ramond).
#[derive(Clone, Debug)]
pub struct RecursionCheck {
    pub k: i64,
    pub two_l: i64,
    pub residual: QSeries,
    /// Left side built from the double-pole sum rather than the recursion.
    pub independent: bool,
}

impl RecursionCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Residual of the Ramond recursion with the left side taken from the
/// double-pole sum. `rhs_sign` is `+1` for the true identity; `−1` is a
/// negative control.
pub fn recursion_residual(k: i64, two_l: i64, order: Exp, rhs_sign: i64) -> Result<RecursionCheck> {
    if two_l < 1 || two_l > k {
        return Err(Error::InvalidSpec(format!("need 1 ≤ 2ℓ ≤ k, got 2ℓ = {two_l}")));
    }
    let mut lhs = massless_direct_r(k, two_l, order)?;
    lhs = lhs.add(&massless_direct_r(k, two_l - 1, order)?.scale_int(2));
    if two_l >= 2 {
        lhs = lhs.add(&massless_direct_r(k, two_l - 2, order)?);
    }
    let p = k + 1;
    let shift = Exp::new(-two_l * two_l, 4 * p);
    let t = order - shift;
    let rhs = theta10_sq_over_eta3(t + Exp::new(1, 8))?
        .mul(&affine_character(k - 1, two_l - 1, t)?)
        .truncate(t)
        .mul_q_power(shift)
        .scale_int(rhs_sign);
    Ok(RecursionCheck {
        k,
        two_l,
        residual: lhs.sub(&rhs),
        independent: true,
    })
}

pub fn check_recursion(k: i64, two_l: i64, order: Exp) -> Result<RecursionCheck> {
    recursion_residual(k, two_l, order, 1)
}

/// Coefficient of `u^m q^e` as a rational, for tests and reports.
pub fn coefficient(s: &QSeries, e: Exp, m: i64) -> BigRational {
    s.coeff_at(e, m).unwrap_or_else(|_| BigRational::zero())
}
