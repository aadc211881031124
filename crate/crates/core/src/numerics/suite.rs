//! Registry of modular-transformation identities checked numerically at
//! sample points.

use std::f64::consts::PI;

use num_complex::Complex64 as C;
use serde::{Deserialize, Serialize};

use super::eval::*;
use crate::characters::massless_iso0_rtilde;
use crate::error::{Error, Result};
use crate::modular::ThetaKind;
use crate::par::Exec;
use crate::series::Exp;

const I: C = C { re: 0.0, im: 1.0 };
const SUM_TOL: f64 = 1e-8;
const FD_TOL: f64 = 1e-4;

/// Complex number in the `{re, im}` wire shape.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexNumber {
    pub re: f64,
    pub im: f64,
}

impl From<C> for ComplexNumber {
    fn from(z: C) -> Self {
        ComplexNumber { re: z.re, im: z.im }
    }
}

impl From<ComplexNumber> for C {
    fn from(z: ComplexNumber) -> Self {
        C::new(z.re, z.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub tau: ComplexNumber,
    pub z: ComplexNumber,
    pub u: ComplexNumber,
    pub v: ComplexNumber,
}

impl SamplePoint {
    pub fn new(tau: C, z: C, u: C, v: C) -> Result<Self> {
        if tau.im.is_nan() || tau.im < 0.05 {
            return Err(Error::InvalidSpec(format!("sample needs Im tau >= 0.05, got {tau}")));
        }
        Ok(SamplePoint {
            tau: tau.into(),
            z: z.into(),
            u: u.into(),
            v: v.into(),
        })
    }

    /// A sample at `τ` with the default elliptic arguments.
    pub fn at_tau(tau: C) -> Result<Self> {
        Self::new(tau, C::new(0.17, 0.0), C::new(0.13, 0.0), C::new(0.21, 0.0))
    }

    fn t(&self) -> C {
        self.tau.into()
    }
    fn z(&self) -> C {
        self.z.into()
    }
    fn u(&self) -> C {
        self.u.into()
    }
    fn v(&self) -> C {
        self.v.into()
    }
}

/// The three standard samples.
pub fn default_samples() -> Vec<SamplePoint> {
    [C::new(0.11, 0.83), C::new(0.0, 1.0), C::new(-0.37, 1.21)]
        .into_iter()
        .map(|t| SamplePoint::at_tau(t).expect("standard samples are valid"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheckResult {
    pub identity_name: String,
    pub sample: SamplePoint,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

/// Scale-relative residual `|l − r| / max(1, |l|, |r|)`.
fn gap(l: C, r: C) -> f64 {
    (l - r).norm() / 1f64.max(l.norm()).max(r.norm())
}

type Check = fn(&SamplePoint) -> Result<Vec<(String, f64)>>;

struct Identity {
    name: &'static str,
    tolerance: f64,
    check: Check,
}

fn one(res: f64) -> Result<Vec<(String, f64)>> {
    Ok(vec![(String::new(), res)])
}

/// Runs `f` for `P = 2..=4`, labelling each residual.
fn per_level(f: impl Fn(i64) -> Result<f64>) -> Result<Vec<(String, f64)>> {
    (2..=4).map(|p| Ok((format!("P={p}"), f(p)?))).collect()
}

/// Runs `f` for `P = 2..=4` and `0 < a < P`.
fn per_level_index(f: impl Fn(i64, i64) -> Result<f64>) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for p in 2..=4 {
        for a in 1..p {
            out.push((format!("P={p}:a={a}"), f(p, a)?));
        }
    }
    Ok(out)
}

fn s_dual(tau: C) -> C {
    -tau.inv()
}

fn mu_hat1(z: C, tau: C) -> Result<C> {
    Ok(eval_mu(z, z, tau)? - 0.5 * eval_r(C::new(0.0, 0.0), tau)?)
}

fn mu_hat2(u: C, v: C, tau: C) -> Result<C> {
    Ok(eval_mu(u, v, tau)? - 0.5 * eval_r(u - v, tau)?)
}

fn check_mu_symmetry(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    one(gap(eval_mu(s.u(), s.v(), s.t())?, eval_mu(s.v(), s.u(), s.t())?))
}

fn check_s_mu(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (u, v, t) = (s.u(), s.v(), s.t());
    let d = u - v;
    let lhs = eval_mu(u, v, t)?
        + sqrt_i_over_tau(t) * (I * PI * d * d / t).exp() * eval_mu(u / t, v / t, s_dual(t))?;
    one(gap(lhs, 0.5 * mordell_level1(d, t)?))
}

fn check_r_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (u, t) = (s.u(), s.t());
    let lhs = eval_r(u, t)? + sqrt_i_over_tau(t) * (I * PI * u * u / t).exp() * eval_r(u / t, s_dual(t))?;
    one(gap(lhs, mordell_level1(u, t)?))
}

fn check_mu_hat_modular(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, u, v, t) = (s.z(), s.u(), s.v(), s.t());
    let r = sqrt_i_over_tau(t);
    let single = mu_hat1(z, t)? + r * mu_hat1(z / t, s_dual(t))?;
    let d = u - v;
    let pair = mu_hat2(u, v, t)? + r * (I * PI * d * d / t).exp() * mu_hat2(u / t, v / t, s_dual(t))?;
    let scale = |x: C| x.norm().max(1.0);
    Ok(vec![
        ("z".into(), single.norm() / scale(mu_hat1(z, t)?)),
        ("u,v".into(), pair.norm() / scale(mu_hat2(u, v, t)?)),
    ])
}

fn check_mu_hat_t(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    one(gap(mu_hat1(z, t + 1.0)?, (-I * PI / 4.0).exp() * mu_hat1(z, t)?))
}

fn check_k1_character_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    let lhs = eval_mu(z, z, t)? / eval_eta(t)? + eval_mu(z / t, z / t, s_dual(t))? / eval_eta(s_dual(t))?;
    // ∫ e^{πiτx²}/(2 cosh πx) dx = M(0;τ)/2.
    one(gap(lhs, 0.5 * mordell_level1(C::new(0.0, 0.0), t)? / eval_eta(t)?))
}

fn check_c2_mu(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    let th = eval_theta(ThetaKind::T11, z, t)?;
    let lhs = th * th / eval_eta(t)?.powi(3) * eval_mu(z, z, t)?;
    one(gap(lhs, eval_massless_iso0(2, z, t)?))
}

fn check_fp_elliptic(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (u, z, t) = (s.u(), s.z(), s.t());
    per_level(|p| {
        let pf = p as f64;
        let lhs = eval_fp(p, u, z, t)? - (-I * PI * (t * (2.0 * pf) + u * (4.0 * pf))).exp() * eval_fp(p, u + t, z, t)?;
        let mut rhs = C::new(0.0, 0.0);
        for a in 0..2 * p {
            let af = a as f64;
            rhs += (-I * PI * (t * (af * af / (2.0 * pf)) + u * (2.0 * af))).exp() * eval_level_theta(p, a, z, t)?;
        }
        Ok(gap(lhs, rhs))
    })
}

fn check_fp_t(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (u, z, t) = (s.u(), s.z(), s.t());
    per_level(|p| Ok(gap(eval_fp(p, u, z, t + 1.0)?, eval_fp(p, u, z, t)?)))
}

/// `(1/(i√(2P))) Σ_a M_P^{(a)}(τ) · f_a(τ)` for a per-index factor `f_a`.
fn mordell_sum(p: i64, t: C, f: impl Fn(i64) -> Result<C>) -> Result<C> {
    let mut acc = C::new(0.0, 0.0);
    for a in 1..p {
        acc += mordell(p, a, t)? * f(a)?;
    }
    Ok(acc / (I * (2.0 * p as f64).sqrt()))
}

fn check_general_k_f(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    per_level(|p| {
        let pf = p as f64;
        let lhs = eval_big_f(p, z, t)?
            + (-I * 2.0 * PI * (pf - 2.0) * z * z / t).exp() * eval_big_f(p, z / t, s_dual(t))?;
        let eta = eval_eta(t)?;
        let rhs = mordell_sum(p, t, |a| Ok(eval_affine_character(p - 2, a - 1, z, t)? / eta))?;
        Ok(gap(lhs, rhs))
    })
}

fn theta_diff(p: i64, a: i64, z: C, t: C) -> Result<C> {
    Ok(eval_level_theta(p, a, z, t)? - eval_level_theta(p, -a, z, t)?)
}

fn check_general_r_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    per_level(|p| {
        let pf = p as f64;
        let dual = s_dual(t);
        let mut lhs = C::new(0.0, 0.0);
        let mut here = C::new(0.0, 0.0);
        let mut there = C::new(0.0, 0.0);
        for a in 1..p {
            lhs += mordell(p, a, t)? * theta_diff(p, a, z, t)?;
            here += eval_rp(p, a, t)? * theta_diff(p, a, z, t)?;
            there += eval_rp(p, a, dual)? * theta_diff(p, a, z / t, dual)?;
        }
        let rhs = here - (-I * 2.0 * PI * pf * z * z / t).exp() / t * there;
        Ok(gap(lhs, rhs))
    })
}

fn check_psi_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let mut rhs = C::new(0.0, 0.0);
        for b in 1..p {
            rhs += s_matrix(p, a, b) * eval_psi(p, b, s_dual(t))?;
        }
        Ok(gap(eval_psi(p, a, t)?, (I / t).powf(1.5) * rhs))
    })
}

fn check_psi_t(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let ph = (I * PI * ((a * a) as f64 / (2 * p) as f64)).exp();
        Ok(gap(eval_psi(p, a, t + 1.0)?, ph * eval_psi(p, a, t)?))
    })
}

fn check_psi_dual(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let viachi = eval_eta(t)?.powi(3) * eval_affine_character(p - 2, a - 1, C::new(0.0, 0.0), t)?;
        Ok(gap(eval_psi(p, a, t)?, viachi))
    })
}

fn check_mordell_dual(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let x = mordell_cosh(p, a, t)?;
        Ok(gap(x, mordell_sinh(p, a, t)?).max(gap(x, mordell_tanh(p, a, t)?)))
    })
}

fn check_mordell_zwegers(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        // The index −a is read mod 2P.
        let pair = zwegers_mordell_at_zero(p, a, t)? - zwegers_mordell_at_zero(p, 2 * p - a, t)?;
        let rhs = I * (2.0 * p as f64).sqrt() * pair;
        Ok(gap(mordell_tanh(p, a, t)?, rhs))
    })
}

fn check_mordell_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let mut lhs = C::new(0.0, 0.0);
        for b in 1..p {
            lhs += s_matrix(p, a, b) * mordell(p, b, t)?;
        }
        Ok(gap(lhs, sqrt_i_over_tau(t) * mordell(p, a, s_dual(t))?))
    })
}

fn check_r_p_s(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let mut acc = C::new(0.0, 0.0);
        for b in 1..p {
            acc += s_matrix(p, a, b) * eval_rp(p, b, s_dual(t))?;
        }
        let lhs = sqrt_i_over_tau(t) * acc + eval_rp(p, a, t)?;
        Ok(gap(lhs, mordell(p, a, t)?))
    })
}

fn check_r_p_t(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let ph = (-I * PI * ((a * a) as f64 / (2 * p) as f64)).exp();
        Ok(gap(eval_rp(p, a, t + 1.0)?, ph * eval_rp(p, a, t)?))
    })
}

/// `Ĉ_P = C_P − (1/(i√(2P))) Σ_a R_P^{(a)} B_P^{(a)}`.
fn c_hat(p: i64, z: C, t: C) -> Result<C> {
    let th = eval_theta(ThetaKind::T11, z, t)?;
    let pre = th * th / eval_eta(t)?.powi(3);
    let mut acc = C::new(0.0, 0.0);
    for a in 1..p {
        acc += eval_rp(p, a, t)? * pre * eval_affine_character(p - 2, a - 1, z, t)?;
    }
    Ok(eval_massless_iso0(p, z, t)? - acc / (I * (2.0 * p as f64).sqrt()))
}

fn check_c_hat_modular(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    per_level(|p| {
        let ph = (-I * 2.0 * PI * (p as f64 - 1.0) * z * z / t).exp();
        Ok(gap(c_hat(p, z, t)?, ph * c_hat(p, z / t, s_dual(t))?))
    })
}

/// Symbolic `C_P` to `q^12` evaluated numerically against the Appell sum.
fn check_c_p_series(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    per_level(|p| {
        let series = massless_iso0_rtilde(p - 1, Exp::from_integer(12))?;
        Ok(gap(eval_series_at(&series, z, t)?, eval_massless_iso0(p, z, t)?))
    })
}

/// `∂/∂τ̄ = ½(∂_x + i∂_y)` by central differences.
fn d_taubar(f: impl Fn(C) -> Result<C>, t: C, h: f64) -> Result<C> {
    let dx = (f(t + h)? - f(t - h)?) / (2.0 * h);
    let dy = (f(t + I * h)? - f(t - I * h)?) / (2.0 * h);
    Ok(0.5 * (dx + I * dy))
}

fn check_differential_r_p_a(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let t = s.t();
    per_level_index(|p, a| {
        let lhs = d_taubar(|w| eval_rp(p, a, w), t, 1e-5)?;
        let rhs = eval_psi(p, a, -t.conj())? / (2.0 * t.im).sqrt();
        Ok(gap(lhs, rhs))
    })
}

fn check_mu_hat_shadow(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    let lhs = d_taubar(|w| mu_hat1(z, w), t, 1e-5)?;
    let rhs = 0.5 * I * eval_eta(-t.conj())?.powi(3) / (2.0 * t.im).sqrt();
    one(gap(lhs, rhs))
}

fn check_differential_maass(s: &SamplePoint) -> Result<Vec<(String, f64)>> {
    let (z, t) = (s.z(), s.t());
    let h = 1e-4;
    let f = |w: C| mu_hat1(z, w);
    let f0 = f(t)?;
    let (fxp, fxm) = (f(t + h)?, f(t - h)?);
    let (fyp, fym) = (f(t + I * h)?, f(t - I * h)?);
    let lap = (fxp + fxm + fyp + fym - 4.0 * f0) / (h * h);
    let grad = (fxp - fxm) / (2.0 * h) + I * (fyp - fym) / (2.0 * h);
    let y = t.im;
    let op = -y * y * lap + 0.5 * I * y * grad;
    // Compare against the size of the individual terms.
    let scale = (y * y * lap.norm()).max(y * grad.norm()).max(1.0);
    one(op.norm() / scale)
}

fn registry() -> Vec<Identity> {
    let id = |name, tolerance, check: Check| Identity { name, tolerance, check };
    vec![
        id("mu_symmetry", 1e-10, check_mu_symmetry),
        id("S_mu", SUM_TOL, check_s_mu),
        id("R_S", SUM_TOL, check_r_s),
        id("mu_hat_modular", SUM_TOL, check_mu_hat_modular),
        id("mu_hat_T", SUM_TOL, check_mu_hat_t),
        id("k1_character_S", SUM_TOL, check_k1_character_s),
        id("C2_mu", SUM_TOL, check_c2_mu),
        id("fP_elliptic", SUM_TOL, check_fp_elliptic),
        id("fP_T", SUM_TOL, check_fp_t),
        id("general_k_F", SUM_TOL, check_general_k_f),
        id("general_R_S", SUM_TOL, check_general_r_s),
        id("Psi_S", SUM_TOL, check_psi_s),
        id("Psi_T", SUM_TOL, check_psi_t),
        id("Psi_dual", SUM_TOL, check_psi_dual),
        id("mordell_dual", 1e-9, check_mordell_dual),
        id("Mordell_and_Zwegers", SUM_TOL, check_mordell_zwegers),
        id("mordell_S", SUM_TOL, check_mordell_s),
        id("R_P_S", SUM_TOL, check_r_p_s),
        id("R_P_T", SUM_TOL, check_r_p_t),
        id("C_hat_modular", SUM_TOL, check_c_hat_modular),
        id("C_P_series", SUM_TOL, check_c_p_series),
        id("differential_R_P_a", FD_TOL, check_differential_r_p_a),
        id("mu_hat_shadow", FD_TOL, check_mu_hat_shadow),
        id("differential_Maass", FD_TOL, check_differential_maass),
    ]
}

/// Names of every registered identity, in registry order.
pub fn identity_names() -> Vec<&'static str> {
    registry().iter().map(|i| i.name).collect()
}

/// Whether the identity is a finite-difference check.
pub fn is_finite_difference(name: &str) -> bool {
    registry().iter().any(|i| i.name == name && i.tolerance == FD_TOL)
}

/// Evaluate each named identity (all when `names` is empty) at each sample.
/// Evaluation failures become failing results with the error attached.
pub fn run_identity_suite(names: &[&str], samples: &[SamplePoint], exec: Exec) -> Result<Vec<IdentityCheckResult>> {
    let reg = registry();
    let chosen: Vec<&Identity> = if names.is_empty() {
        reg.iter().collect()
    } else {
        names
            .iter()
            .map(|n| {
                reg.iter()
                    .find(|i| i.name == *n)
                    .ok_or_else(|| Error::UnknownObject(n.to_string()))
            })
            .collect::<Result<_>>()?
    };
    let jobs: Vec<(&Identity, SamplePoint)> = chosen
        .iter()
        .flat_map(|i| samples.iter().map(move |s| (*i, *s)))
        .collect();
    let rows = exec.map(&jobs, |(ident, sample)| match (ident.check)(sample) {
        Ok(parts) => parts
            .into_iter()
            .map(|(label, residual)| {
                let identity_name = if label.is_empty() {
                    ident.name.to_string()
                } else {
                    format!("{}[{label}]", ident.name)
                };
                IdentityCheckResult {
                    identity_name,
                    sample: *sample,
                    residual,
                    tolerance: ident.tolerance,
                    pass: residual <= ident.tolerance,
                    error: None,
                }
            })
            .collect::<Vec<_>>(),
        Err(e) => vec![IdentityCheckResult {
            identity_name: ident.name.to_string(),
            sample: *sample,
            residual: f64::INFINITY,
            tolerance: ident.tolerance,
            pass: false,
            error: Some(e.to_string()),
        }],
    });
    Ok(rows.into_iter().flatten().collect())
}
