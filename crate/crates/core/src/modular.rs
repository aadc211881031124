//! Eta, Jacobi theta functions, level-P theta functions, affine SU(2)
//! characters and the weight-3/2 forms built from them.

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::series::{Exp, QSeries, YPoly};

/// The four classical theta functions. `T11` is stored in the real
/// normalisation `−iθ_11`, so every series has rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    T11,
    T10,
    T00,
    T01,
}

impl ThetaKind {
    pub fn name(self) -> &'static str {
        match self {
            ThetaKind::T11 => "theta11",
            ThetaKind::T10 => "theta10",
            ThetaKind::T00 => "theta00",
            ThetaKind::T01 => "theta01",
        }
    }

    /// Lowest `q`-exponent of the defining sum.
    pub fn lead(self) -> Exp {
        match self {
            ThetaKind::T11 | ThetaKind::T10 => Exp::new(1, 8),
            ThetaKind::T00 | ThetaKind::T01 => Exp::zero(),
        }
    }
}

fn rint(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn exp_f(e: Exp) -> f64 {
    *e.numer() as f64 / *e.denom() as f64
}

/// `Π(1 − q^n)` by Euler's pentagonal-number theorem.
fn euler_product(trunc: Exp) -> QSeries {
    let mut terms = Vec::new();
    let mut k = 0i64;
    loop {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = Exp::from_integer(kk * (3 * kk - 1) / 2);
            if e < trunc {
                any = true;
                let s = if kk % 2 == 0 { 1 } else { -1 };
                terms.push((e, YPoly::from_int(s)));
            }
        }
        if !any && k > 0 {
            break;
        }
        k += 1;
    }
    QSeries::from_terms(terms, trunc)
}

/// `Π(1 − q^n)³ = Σ_{n≥0} (−1)^n (2n+1) q^{n(n+1)/2}`.
fn euler_product_cubed(trunc: Exp) -> QSeries {
    let mut terms = Vec::new();
    let mut n = 0i64;
    while Exp::from_integer(n * (n + 1) / 2) < trunc {
        let s = if n % 2 == 0 { 1 } else { -1 };
        terms.push((Exp::from_integer(n * (n + 1) / 2), YPoly::from_int(s * (2 * n + 1))));
        n += 1;
    }
    QSeries::from_terms(terms, trunc)
}

/// `η(τ)^power`, known below `q^order`.
pub fn eta_pow(power: i64, order: Exp) -> Result<QSeries> {
    if power == 0 {
        return Ok(QSeries::one(order));
    }
    let off = Exp::new(power, 24);
    let t = order - off;
    if t <= Exp::zero() {
        return Ok(QSeries::zero(order));
    }
    let k = power.unsigned_abs() as u32;
    let positive = if k.is_multiple_of(3) {
        euler_product_cubed(t).pow(k / 3)
    } else {
        euler_product(t).pow(k)
    };
    let body = if power > 0 {
        positive
    } else {
        QSeries::one(t).div(&positive)?
    };
    Ok(body.mul_q_power(off))
}

/// `θ(s·z; τ)` for `s = z_scale`, from the defining sum.
pub fn jacobi_theta(kind: ThetaKind, z_scale: i64, order: Exp) -> QSeries {
    assert!(z_scale > 0, "z scale must be positive");
    let mut terms = Vec::new();
    let nmax = (2.0 * exp_f(order).max(0.0)).sqrt() as i64 + 2;
    for n in -nmax..=nmax {
        let sign = if n.rem_euclid(2) == 0 { 1 } else { -1 };
        let (e, m, c) = match kind {
            ThetaKind::T11 => (Exp::new((2 * n + 1).pow(2), 8), 2 * n + 1, sign),
            ThetaKind::T10 => (Exp::new((2 * n + 1).pow(2), 8), 2 * n + 1, 1),
            ThetaKind::T00 => (Exp::new(n * n, 2), 2 * n, 1),
            ThetaKind::T01 => (Exp::new(n * n, 2), 2 * n, sign),
        };
        if e < order {
            terms.push((e, YPoly::term(m * z_scale, c)));
        }
    }
    QSeries::from_terms(terms, order)
}

/// `θ(0; τ)`, obtained by summing each coefficient at `u = 1`.
pub fn theta_null(kind: ThetaKind, order: Exp) -> QSeries {
    jacobi_theta(kind, 1, order).at_z_zero()
}

/// `ϑ_{P,a}(z;τ) = Σ_n q^{(2Pn+a)²/4P} y^{2Pn+a}`.
pub fn level_theta(p: i64, a: i64, order: Exp) -> QSeries {
    assert!(p >= 1, "level must be positive");
    let a = a.rem_euclid(2 * p);
    let nmax = (exp_f(order).max(0.0) / p as f64).sqrt() as i64 + 2;
    let terms = (-nmax..=nmax).filter_map(|n| {
        let m = 2 * p * n + a;
        let e = Exp::new(m * m, 4 * p);
        (e < order).then(|| (e, YPoly::term(2 * m, 1)))
    });
    QSeries::from_terms(terms.collect::<Vec<_>>(), order)
}

/// `ϑ_{2,1} − ϑ_{2,−1}`, which equals `−iθ_11(2z)`.
pub fn weyl_denominator(order: Exp) -> QSeries {
    level_theta(2, 1, order).sub(&level_theta(2, -1, order))
}

/// Level-`k` SU(2) affine character of isospin `two_l/2`:
/// `(ϑ_{k+2,2ℓ+1} − ϑ_{k+2,−2ℓ−1}) / (ϑ_{2,1} − ϑ_{2,−1})`.
pub fn affine_character(k: i64, two_l: i64, order: Exp) -> Result<QSeries> {
    assert!(k >= 0 && (0..=k).contains(&two_l), "isospin out of range");
    let margin = Exp::new(1, 8);
    let num = level_theta(k + 2, two_l + 1, order + margin)
        .sub(&level_theta(k + 2, -two_l - 1, order + margin));
    let den = weyl_denominator(order + margin + margin);
    Ok(num.div(&den)?.truncate(order))
}

/// `Ψ_P^{(a)} = Σ_{n>0, n≡a} n q^{n²/4P} − Σ_{n>0, n≡−a} n q^{n²/4P}` (mod 2P).
pub fn psi(p: i64, a: i64, order: Exp) -> QSeries {
    assert!(0 < a && a < p, "need 0 < a < P");
    let mut terms = Vec::new();
    let mut n = 1i64;
    while Exp::new(n * n, 4 * p) < order {
        let r = n.rem_euclid(2 * p);
        let c = if r == a {
            n
        } else if r == 2 * p - a {
            -n
        } else {
            0
        };
        if c != 0 {
            terms.push((Exp::new(n * n, 4 * p), YPoly::from_int(c)));
        }
        n += 1;
    }
    QSeries::from_terms(terms, order)
}

/// `(θ_x(z)/θ_x(0))^{2k}` for `x ≠ 11`; equal to 1 at `z = 0`.
pub fn theta_ratio_power(kind: ThetaKind, k: u32, order: Exp) -> Result<QSeries> {
    assert!(kind != ThetaKind::T11, "θ_11 vanishes at z = 0");
    let t = order + kind.lead();
    let th = jacobi_theta(kind, 1, t);
    let ratio = th.div(&th.at_z_zero())?;
    Ok(ratio.pow(2 * k).truncate(order))
}

/// Index-`m` elliptic law `s(z+τ) = phase · q^{−m} y^{−2m} s(z)`.
///
/// In coefficients this reads `c(r, j) = phase · c(r + j/2 + m, j + 4m)` for
/// the coefficient of `u^j q^r`; every pair with both orders below the
/// truncation is compared, so no assumption about unseen terms is needed.
pub fn check_elliptic_index_with_phase(s: &QSeries, m: Exp, phase: i64) -> bool {
    let four_m = m * 4;
    if !four_m.is_integer() {
        return false;
    }
    let dj = four_m.to_integer();
    let t = s.trunc();
    let ph = rint(phase);
    let mut compared = 0usize;
    for (r, p) in s.terms() {
        for (j, c) in p.terms() {
            let fwd = r + Exp::new(*j, 2) + m;
            if fwd < t {
                if s.coeff_at(fwd, j + dj).unwrap() * &ph != *c {
                    return false;
                }
                compared += 1;
            }
            let back = r - Exp::new(*j, 2) + m;
            if back < t && s.coeff_at(back, j - dj).unwrap() * &ph != *c {
                return false;
            }
        }
    }
    compared > 0
}

pub fn check_elliptic_index(s: &QSeries, m: Exp) -> bool {
    check_elliptic_index_with_phase(s, m, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: i64, d: i64) -> Exp {
        Exp::new(n, d)
    }

    /// `Π_{n≥1}(1−q^n)^p` by direct multiplication of binomials.
    fn brute_product(p: u32, t: i64) -> QSeries {
        let trunc = Exp::from_integer(t);
        let mut acc = QSeries::one(trunc);
        for n in 1..t {
            let f = QSeries::from_terms(
                vec![
                    (Exp::zero(), YPoly::one()),
                    (Exp::from_integer(n), YPoly::from_int(-1)),
                ],
                trunc,
            );
            for _ in 0..p {
                acc = acc.mul(&f);
            }
        }
        acc
    }

    #[test]
    fn eta_cubed_matches_product() {
        let eta3 = eta_pow(3, e(10, 1) + e(1, 8)).unwrap();
        let brute = brute_product(3, 10).mul_q_power(e(1, 8));
        assert!(eta3.agrees_with(&brute));
        assert_eq!(eta3.trunc(), e(81, 8));
        let lead: Vec<_> = eta3.terms().take(4).map(|(x, p)| (x, p.constant_term())).collect();
        assert_eq!(
            lead,
            vec![
                (e(1, 8), rint(1)),
                (e(9, 8), rint(-3)),
                (e(25, 8), rint(5)),
                (e(49, 8), rint(-7))
            ]
        );
    }

    #[test]
    fn eta_powers() {
        let a = eta_pow(1, e(8, 1)).unwrap();
        let b = eta_pow(-1, e(8, 1)).unwrap();
        assert!(a.mul(&b).agrees_with(&QSeries::one(e(7, 1))));
        let e24 = eta_pow(24, e(5, 1)).unwrap();
        assert_eq!(e24.lead(), e(1, 1));
        let e5 = eta_pow(5, e(6, 1)).unwrap();
        assert!(e5.agrees_with(&brute_product(5, 7).mul_q_power(e(5, 24))));
    }

    #[test]
    fn theta_leading_terms() {
        let t = jacobi_theta(ThetaKind::T11, 1, e(3, 1));
        let mut it = t.terms();
        assert_eq!(
            it.next().unwrap(),
            (e(1, 8), &YPoly::from_int_terms(&[(-1, -1), (1, 1)]))
        );
        assert_eq!(
            it.next().unwrap(),
            (e(9, 8), &YPoly::from_int_terms(&[(-3, 1), (3, -1)]))
        );
        let t = jacobi_theta(ThetaKind::T00, 1, e(3, 1));
        assert_eq!(t.coefficient(e(1, 2)).unwrap(), YPoly::from_int_terms(&[(-2, 1), (2, 1)]));
        assert_eq!(t.coefficient(e(2, 1)).unwrap(), YPoly::from_int_terms(&[(-4, 1), (4, 1)]));
    }

    #[test]
    fn macdonald_weyl_identity() {
        let t = e(12, 1);
        assert_eq!(weyl_denominator(t), jacobi_theta(ThetaKind::T11, 2, t));
    }

    #[test]
    fn level_theta_periodic_and_leading() {
        let t = e(6, 1);
        assert_eq!(level_theta(3, 2, t), level_theta(3, 8, t));
        assert_eq!(level_theta(3, 2, t).lead(), e(1, 3));
        assert_eq!(level_theta(3, 2, t).leading_coeff().unwrap(), &YPoly::term(4, 1));
    }

    #[test]
    fn affine_character_low_cases() {
        assert_eq!(affine_character(0, 0, e(6, 1)).unwrap(), QSeries::one(e(6, 1)));
        let chi = affine_character(1, 1, e(6, 1)).unwrap();
        assert_eq!(chi.lead(), e(5, 24));
        assert_eq!(chi.leading_coeff().unwrap(), &YPoly::chebyshev_sum(1));
        for k in 1..5 {
            for two_l in 0..=k {
                let chi = affine_character(k, two_l, e(4, 1)).unwrap();
                assert_eq!(chi.leading_coeff().unwrap(), &YPoly::chebyshev_sum(two_l as u32));
                assert_eq!(chi.lead(), e((two_l + 1).pow(2), 4 * (k + 2)) - e(1, 8));
            }
        }
    }

    #[test]
    fn psi_low_cases() {
        let t = e(20, 1);
        assert!(psi(2, 1, t).agrees_with(&eta_pow(3, t).unwrap()));
        let p3 = psi(3, 1, e(5, 1));
        let c: Vec<_> = p3.terms().map(|(x, p)| (x, p.constant_term())).collect();
        // n = 1, 5, 7, 11 : +1, -5, +7, -11 at n²/12
        assert_eq!(c[0], (e(1, 12), rint(1)));
        assert_eq!(c[1], (e(25, 12), rint(-5)));
        assert_eq!(c[2], (e(49, 12), rint(7)));
    }

    #[test]
    fn theta_ratio_expansions() {
        let r = theta_ratio_power(ThetaKind::T00, 1, e(3, 1)).unwrap();
        let x2 = YPoly::u_minus_uinv_pow(1);
        assert_eq!(r.coefficient(e(0, 1)).unwrap(), YPoly::one());
        assert_eq!(r.coefficient(e(1, 2)).unwrap(), x2.scale(&rint(2)));
        let r = theta_ratio_power(ThetaKind::T01, 1, e(3, 1)).unwrap();
        assert_eq!(r.coefficient(e(1, 2)).unwrap(), x2.scale(&rint(-2)));
        for kind in [ThetaKind::T10, ThetaKind::T00, ThetaKind::T01] {
            for k in 1..4 {
                let r = theta_ratio_power(kind, k, e(3, 1)).unwrap();
                assert_eq!(r.at_z_zero(), QSeries::one(e(3, 1)));
            }
        }
    }

    #[test]
    fn elliptic_index_checks() {
        let th = jacobi_theta(ThetaKind::T00, 1, e(12, 1));
        assert!(check_elliptic_index(&th, e(1, 2)));
        assert!(!check_elliptic_index(&th, e(1, 1)));
        let t11 = jacobi_theta(ThetaKind::T11, 1, e(12, 1));
        assert!(check_elliptic_index_with_phase(&t11, e(1, 2), -1));
        assert!(!check_elliptic_index_with_phase(&t11, e(1, 2), 1));
        let r = theta_ratio_power(ThetaKind::T01, 2, e(8, 1)).unwrap();
        assert!(check_elliptic_index(&r, e(2, 1)));
    }
}
