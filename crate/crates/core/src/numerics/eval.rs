//! Direct complex evaluation of theta functions, Lerch sums, the
//! non-holomorphic R-functions and Mordell integrals.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use num_traits::ToPrimitive;

use super::special::{e_func, erfc_parts, integrate_line};
use crate::error::{Error, Result};
use crate::modular::ThetaKind;
use crate::series::QSeries;

const I: C = C { re: 0.0, im: 1.0 };
/// Relative size below which a summand ends a sum.
const TAIL: f64 = 1e-16;
const MAX_TERMS: i64 = 10_000;
const POLE_GUARD: f64 = 1e-8;
/// Quadrature tolerance shared by every Mordell form.
const QUAD_TOL: f64 = 1e-13;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// `e^{πi w}`.
fn epi(w: C) -> C {
    (I * PI * w).exp()
}

fn guard(d: C) -> Result<C> {
    if d.norm() < POLE_GUARD {
        Err(Error::NearPole { distance: d.norm() })
    } else {
        Ok(d)
    }
}

fn check_tau(tau: C) -> Result<()> {
    if tau.im > 0.0 && tau.re.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("Im tau must be positive, got {tau}")))
    }
}

/// `Σ_{n∈ℤ} f(n)`, summed outward from `n = 0` until three consecutive
/// shells are below `TAIL` times the largest summand seen.
pub(crate) fn bilateral<F: FnMut(i64) -> Result<C>>(mut f: F) -> Result<C> {
    let mut sum = f(0)?;
    let mut peak = sum.norm();
    let mut quiet = 0;
    for n in 1..=MAX_TERMS {
        let a = f(n)?;
        let b = f(-n)?;
        sum += a + b;
        let shell = a.norm().max(b.norm());
        peak = peak.max(shell);
        if !sum.re.is_finite() || !sum.im.is_finite() {
            return Err(Error::NonConvergent { terms: n as usize });
        }
        if shell <= TAIL * peak && n >= 3 {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergent { terms: MAX_TERMS as usize })
}

/// `η(τ) = Σ (−1)^n q^{(6n+1)²/24}`.
pub fn eval_eta(tau: C) -> Result<C> {
    check_tau(tau)?;
    bilateral(|n| {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let m = (6 * n + 1) as f64;
        Ok(s * epi(tau * (m * m / 12.0)))
    })
}

/// Jacobi theta functions in their defining normalisation (so `θ_11` here is
/// `i` times the real-coefficient series of the same name).
pub fn eval_theta(kind: ThetaKind, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let (shift, twist) = match kind {
        ThetaKind::T11 => (0.5, 0.5),
        ThetaKind::T10 => (0.5, 0.0),
        ThetaKind::T00 => (0.0, 0.0),
        ThetaKind::T01 => (0.0, 0.5),
    };
    bilateral(|n| {
        let m = n as f64 + shift;
        Ok(epi(tau * (m * m) + (z + twist) * (2.0 * m)))
    })
}

/// Evaluate a truncated series at `u = e^{πiz}`, `q = e^{2πiτ}`.
pub fn eval_series_at(s: &QSeries, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let mut acc = c(0.0);
    for (e, p) in s.terms() {
        let ef = *e.numer() as f64 / *e.denom() as f64;
        for (m, coef) in p.terms() {
            let cf = coef
                .to_f64()
                .ok_or_else(|| Error::InvalidSpec("coefficient overflows f64".into()))?;
            acc += cf * epi(tau * (2.0 * ef) + z * (*m as f64));
        }
    }
    Ok(acc)
}

/// `ϑ_{P,a}(z;τ) = Σ_{n ≡ a (2P)} q^{n²/4P} e^{2πinz}`.
pub fn eval_level_theta(p: i64, a: i64, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let pf = p as f64;
    bilateral(|m| {
        let n = (2 * p * m + a) as f64;
        Ok(epi(tau * (n * n / (2.0 * pf)) + z * (2.0 * n)))
    })
}

/// `χ_{k,ℓ}(z;τ)` as the theta quotient; at `z = 0` the quotient of
/// `z`-derivatives is used.
pub fn eval_affine_character(k: i64, two_l: i64, z: C, tau: C) -> Result<C> {
    let p = k + 2;
    let a = two_l + 1;
    if z.norm() < 1e-6 {
        let num = eval_level_theta_slope(p, a, tau)?;
        let den = eval_level_theta_slope(2, 1, tau)?;
        return Ok(num / guard(den)?);
    }
    let num = eval_level_theta(p, a, z, tau)? - eval_level_theta(p, -a, z, tau)?;
    let den = eval_level_theta(2, 1, z, tau)? - eval_level_theta(2, -1, z, tau)?;
    Ok(num / guard(den)?)
}

/// `Σ_{n ≡ a (2P)} n q^{n²/4P}`, the `z`-slope of `ϑ_{P,a} − ϑ_{P,−a}` at 0
/// up to the common factor `4πi`.
fn eval_level_theta_slope(p: i64, a: i64, tau: C) -> Result<C> {
    let pf = p as f64;
    bilateral(|m| {
        let n = (2 * p * m + a) as f64;
        Ok(n * epi(tau * (n * n / (2.0 * pf))))
    })
}

/// `Ψ_P^{(a)}(τ) = ½ Σ_n n ψ_{2P}^{(a)}(n) q^{n²/4P}`.
pub fn eval_psi(p: i64, a: i64, tau: C) -> Result<C> {
    check_tau(tau)?;
    eval_level_theta_slope(p, a, tau)
}

/// Zwegers' Lerch sum
/// `μ(u,v;τ) = e^{πiu}/θ_11(v) Σ (−1)^n e^{πi(n²+n)τ + 2πinv}/(1 − e^{2πiu}q^n)`.
pub fn eval_mu(u: C, v: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let th = guard(eval_theta(ThetaKind::T11, v, tau)?)?;
    let s = bilateral(|n| {
        let nf = n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let d = guard(c(1.0) - epi(u * 2.0 + tau * (2.0 * nf)))?;
        Ok(sign * epi(tau * (nf * nf + nf) + v * (2.0 * nf)) / d)
    })?;
    Ok(I * epi(u) / th * s)
}

/// Sign-minus-`E` bracket times `e^{phase}`, with the Gaussian tail of the
/// bracket folded into the exponent. `x` is the argument of `E` and
/// `upper` says whether the sign is `+1`.
fn bracket_times_exp(upper: bool, x: f64, phase: C) -> C {
    let sq = PI.sqrt() * x;
    if upper {
        let (m, e) = erfc_parts(sq);
        m * (phase + e).exp()
    } else {
        let (m, e) = erfc_parts(-sq);
        -m * (phase + e).exp()
    }
}

/// `R(z;τ) = Σ (−1)^n [sgn(n+½) − E((n+½+Im z/Im τ)√(2Im τ))] e^{−2πi(n+½)z} q^{−(n+½)²/2}`.
pub fn eval_r(z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let shift = z.im / tau.im;
    let scale = (2.0 * tau.im).sqrt();
    bilateral(|n| {
        let m = n as f64 + 0.5;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let phase = I * PI * (-(z * (2.0 * m)) - tau * (m * m));
        Ok(sign * bracket_times_exp(n >= 0, (m + shift) * scale, phase))
    })
}

/// `R_{P,a}(u;τ) = Σ_{n ≡ a (2P)} [sgn(n+½) − E((n + 2P Im u/Im τ)√(Im τ/P))] q^{−n²/4P} e^{−2πinu}`.
pub fn eval_rpa(p: i64, a: i64, u: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let pf = p as f64;
    let shift = 2.0 * pf * u.im / tau.im;
    let scale = (tau.im / pf).sqrt();
    bilateral(|m| {
        let n = 2 * p * m + a;
        let nf = n as f64;
        let phase = I * PI * (-(tau * (nf * nf / (2.0 * pf))) - u * (2.0 * nf));
        Ok(bracket_times_exp(n >= 0, (nf + shift) * scale, phase))
    })
}

/// `R_P^{(a)}(τ) = i√(2P) R_{P,a}(0;τ)`.
pub fn eval_rp(p: i64, a: i64, tau: C) -> Result<C> {
    Ok(I * (2.0 * p as f64).sqrt() * eval_rpa(p, a, c(0.0), tau)?)
}

/// The level-`P` Lerch sum `f_P(u,z;τ) = Σ q^{Pn²} e^{4πiPnz}/(1 − q^n e^{2πi(z−u)})`.
pub fn eval_fp(p: i64, u: C, z: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let pf = p as f64;
    bilateral(|n| {
        let nf = n as f64;
        let d = guard(c(1.0) - epi(tau * (2.0 * nf) + (z - u) * 2.0))?;
        Ok(epi(tau * (2.0 * pf * nf * nf) + z * (4.0 * pf * nf)) / d)
    })
}

/// `Σ q^{Pn²} e^{4πiPnz} (1 + q^n e^{2πiz})/(1 − q^n e^{2πiz})`.
fn appell_sum(p: i64, z: C, tau: C) -> Result<C> {
    let pf = p as f64;
    bilateral(|n| {
        let nf = n as f64;
        let w = epi(tau * (2.0 * nf) + z * 2.0);
        let d = guard(c(1.0) - w)?;
        Ok(epi(tau * (2.0 * pf * nf * nf) + z * (4.0 * pf * nf)) * (c(1.0) + w) / d)
    })
}

/// `F_P(z;τ) = i/(η θ_11(2z)) · Σ q^{Pn²} e^{4πiPnz}(1 + q^n y)/(1 − q^n y)`.
pub fn eval_big_f(p: i64, z: C, tau: C) -> Result<C> {
    let th = guard(eval_theta(ThetaKind::T11, z * 2.0, tau)?)?;
    Ok(I / (eval_eta(tau)? * th) * appell_sum(p, z, tau)?)
}

/// The isospin-0 massless character `C_P(z;τ)` from its Appell-sum form:
/// `θ_11(z)²/η³ · i/θ_11(2z) · Σ …`.
pub fn eval_massless_iso0(p: i64, z: C, tau: C) -> Result<C> {
    let th = eval_theta(ThetaKind::T11, z, tau)?;
    let th2 = guard(eval_theta(ThetaKind::T11, z * 2.0, tau)?)?;
    let eta = eval_eta(tau)?;
    Ok(th * th / (eta * eta * eta) * I / th2 * appell_sum(p, z, tau)?)
}

/// `√(i/τ)` on the principal branch.
pub fn sqrt_i_over_tau(tau: C) -> C {
    (I / tau).sqrt()
}

/// Level-1 Mordell integral `M(x;τ) = ∫ e^{πiτw² − 2πxw}/cosh(πw) dw`.
pub fn mordell_level1(x: C, tau: C) -> Result<C> {
    check_tau(tau)?;
    let a = PI * tau.im;
    let b = PI + 2.0 * PI * x.re.abs();
    integrate_line(
        |w| (I * PI * tau * (w * w) - 2.0 * PI * x * w).exp() / (PI * w).cosh(),
        a,
        b,
        QUAD_TOL,
    )
}

fn check_pa(p: i64, a: i64) -> Result<()> {
    if p >= 2 && 0 < a && a < p {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("need 0 < a < P, got P={p}, a={a}")))
    }
}

/// `M_P^{(a)}(τ) = (i/√(2P)) ∫ e^{πiτz²/2P} sin(π(P−a)/P)/(cosh(πz/P) + cos(π(P−a)/P)) dz`.
pub fn mordell_cosh(p: i64, a: i64, tau: C) -> Result<C> {
    check_tau(tau)?;
    check_pa(p, a)?;
    let pf = p as f64;
    let ang = PI * (pf - a as f64) / pf;
    let (s, co) = ang.sin_cos();
    let v = integrate_line(
        |z| (I * PI * tau * (z * z / (2.0 * pf))).exp() * (s / ((PI * z / pf).cosh() + co)),
        PI * tau.im / (2.0 * pf),
        0.0,
        QUAD_TOL,
    )?;
    Ok(I / (2.0 * pf).sqrt() * v)
}

/// `M_P^{(a)}(τ) = i√(i/τ) ∫ e^{−πix²/(2Pτ)} sinh(π(P−a)x/P)/sinh(πx) dx`.
pub fn mordell_sinh(p: i64, a: i64, tau: C) -> Result<C> {
    check_tau(tau)?;
    check_pa(p, a)?;
    let pf = p as f64;
    let ratio = (pf - a as f64) / pf;
    let dual = -tau.inv();
    let v = integrate_line(
        |x| {
            let r = if x.abs() < 1e-9 {
                ratio
            } else {
                (PI * ratio * x).sinh() / (PI * x).sinh()
            };
            (I * PI * dual * (x * x / (2.0 * pf))).exp() * r
        },
        PI * dual.im / (2.0 * pf),
        0.0,
        QUAD_TOL,
    )?;
    Ok(I * sqrt_i_over_tau(tau) * v)
}

/// `M_P^{(a)}(τ) = −1/(2√(2P)) ∫ e^{πiτz²/2P}[tanh(π(z + i(a−P))/2P) − tanh(π(z − i(a−P))/2P)] dz`.
pub fn mordell_tanh(p: i64, a: i64, tau: C) -> Result<C> {
    check_tau(tau)?;
    check_pa(p, a)?;
    let pf = p as f64;
    let off = I * (a as f64 - pf);
    let v = integrate_line(
        |z| {
            let zc = c(z);
            let k = PI / (2.0 * pf);
            (I * PI * tau * (z * z / (2.0 * pf))).exp() * (((zc + off) * k).tanh() - ((zc - off) * k).tanh())
        },
        PI * tau.im / (2.0 * pf),
        0.0,
        QUAD_TOL,
    )?;
    Ok(-v / (2.0 * (2.0 * pf).sqrt()))
}

/// Zwegers' `M_{P,b}(0;τ) = i e^{−πib²τ/2P} ∫_{ℝ−i0} e^{2πiPτx² − 2πbτx}/(1 − e^{2πx}) dx`.
///
/// The integrand's poles sit at `x ∈ iℤ`, so the contour is moved to
/// `ℝ − i/2`, where `1 − e^{2πx} = 1 + e^{2πt}` never vanishes. `b` is any
/// integer; indices differing by `2P` differ by a residue.
pub fn zwegers_mordell_at_zero(p: i64, b: i64, tau: C) -> Result<C> {
    check_tau(tau)?;
    if p < 1 {
        return Err(Error::InvalidSpec(format!("level {p} must be positive")));
    }
    let pf = p as f64;
    let bf = b as f64;
    let v = integrate_line(
        |t| {
            let x = C::new(t, -0.5);
            (I * 2.0 * PI * pf * tau * x * x - 2.0 * PI * bf * tau * x).exp() / (1.0 + (2.0 * PI * t).exp())
        },
        2.0 * PI * pf * tau.im,
        2.0 * PI * (pf - bf).abs() * tau.norm() + 2.0 * PI,
        QUAD_TOL,
    )?;
    Ok(I * (-(I * PI * tau * (bf * bf / (2.0 * pf)))).exp() * v)
}

/// The Mordell integral `M_P^{(a)}(τ)`, computed in the cosh form and
/// cross-checked against the sinh form.
pub fn mordell(p: i64, a: i64, tau: C) -> Result<C> {
    let x = mordell_cosh(p, a, tau)?;
    let y = mordell_sinh(p, a, tau)?;
    let gap = (x - y).norm() / x.norm().max(1.0);
    if gap > 1e-9 {
        return Err(Error::QuadratureDivergence(gap));
    }
    Ok(x)
}

/// `E(x) = erf(√π x)`.
pub fn eval_e(x: f64) -> f64 {
    e_func(x)
}

/// `S(P)_{ab} = √(2/P) sin(abπ/P)`.
pub fn s_matrix(p: i64, a: i64, b: i64) -> f64 {
    let pf = p as f64;
    (2.0 / pf).sqrt() * (PI * (a * b) as f64 / pf).sin()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{jacobi_theta, eta_pow};
    use crate::series::Exp;

    const TAU: C = C { re: 0.11, im: 0.83 };

    #[test]
    fn theta_values() {
        let v = eval_theta(ThetaKind::T00, c(0.0), I).unwrap();
        // θ_00(0;i) = π^{1/4}/Γ(3/4).
        assert!((v.re - 1.086_434_811_213_308).abs() < 1e-14, "{v}");
        assert!(eval_theta(ThetaKind::T11, c(0.0), TAU).unwrap().norm() < 1e-14);
    }

    #[test]
    fn jacobi_triple_relation() {
        // θ_11'(0) = −2π η³ in this normalisation is awkward to test; use
        // θ_00⁴ = θ_01⁴ + θ_10⁴ instead.
        let t = |k| eval_theta(k, c(0.0), TAU).unwrap().powi(4);
        let r = t(ThetaKind::T00) - t(ThetaKind::T01) - t(ThetaKind::T10);
        assert!(r.norm() < 1e-13);
    }

    #[test]
    fn series_and_direct_agree() {
        let z = c(0.13);
        let order = Exp::from_integer(12);
        let s = jacobi_theta(ThetaKind::T00, 1, order);
        let a = eval_series_at(&s, z, TAU).unwrap();
        let b = eval_theta(ThetaKind::T00, z, TAU).unwrap();
        assert!((a - b).norm() < 1e-10);
        let e3 = eval_series_at(&eta_pow(3, order).unwrap(), z, TAU).unwrap();
        assert!((e3 - eval_eta(TAU).unwrap().powi(3)).norm() < 1e-10);
        let t11 = eval_series_at(&jacobi_theta(ThetaKind::T11, 1, order), z, TAU).unwrap();
        assert!((I * t11 - eval_theta(ThetaKind::T11, z, TAU).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn mu_is_symmetric() {
        let (u, v) = (c(0.13), c(0.21));
        let a = eval_mu(u, v, TAU).unwrap();
        let b = eval_mu(v, u, TAU).unwrap();
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn near_pole_reported() {
        assert!(matches!(eval_mu(c(0.2), c(0.0), TAU), Err(Error::NearPole { .. })));
    }

    #[test]
    fn mordell_forms_agree() {
        let tau = C::new(0.2, 0.9);
        let x = mordell_cosh(3, 1, tau).unwrap();
        let y = mordell_sinh(3, 1, tau).unwrap();
        let z = mordell_tanh(3, 1, tau).unwrap();
        assert!((x - y).norm() < 1e-9, "{x} {y}");
        assert!((x - z).norm() < 1e-9, "{x} {z}");
        assert!(mordell(3, 1, tau).is_ok());
        assert!(mordell(3, 3, tau).is_err());
    }

    #[test]
    fn zwegers_pair_reproduces_mordell() {
        for (p, a) in [(2, 1), (3, 2), (4, 3)] {
            let pair = zwegers_mordell_at_zero(p, a, TAU).unwrap() - zwegers_mordell_at_zero(p, 2 * p - a, TAU).unwrap();
            let m = mordell_cosh(p, a, TAU).unwrap();
            assert!((I * (2.0 * p as f64).sqrt() * pair - m).norm() < 1e-10);
        }
    }

    #[test]
    fn massless_character_series_matches_appell_sum() {
        let z = c(0.13);
        for p in 2..=4 {
            let s = crate::characters::massless_iso0_rtilde(p - 1, Exp::from_integer(12)).unwrap();
            let a = eval_series_at(&s, z, TAU).unwrap();
            let b = eval_massless_iso0(p, z, TAU).unwrap();
            assert!((a - b).norm() < 1e-8, "P={p}: {a} vs {b}");
        }
    }

    #[test]
    fn r_is_real_on_the_imaginary_axis() {
        // R(0;τ) is real when τ is purely imaginary.
        let r = eval_r(c(0.0), I).unwrap();
        assert!(r.im.abs() < 1e-14);
    }
}
