//! Error functions and adaptive Gauss–Kronrod quadrature.

use num_complex::Complex64;

use crate::error::{Error, Result};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// `erf(x)·e^{x²}·√π/2 = Σ 2^n x^{2n+1}/(2n+1)!!`; all terms positive.
fn erf_series_scaled(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    while term.abs() > 1e-18 * sum.abs() {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
    }
    sum
}

/// `erfcx(x) = e^{x²} erfc(x)` for `x ≥ 2.5` by Lentz's continued fraction
/// `1/(x + (1/2)/(x + 1/(x + (3/2)/(x + …))))·/√π`.
fn erfcx_cf(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = k as f64 / 2.0;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    FRAC_1_SQRT_PI / f
}

pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < 2.5 {
        std::f64::consts::FRAC_2_SQRT_PI * (-ax * ax).exp() * erf_series_scaled(ax)
    } else {
        1.0 - erfcx_cf(ax) * (-ax * ax).exp()
    };
    v.copysign(x)
}

pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        2.0 - erfc(-x)
    } else if x < 2.5 {
        1.0 - erf(x)
    } else {
        erfcx_cf(x) * (-x * x).exp()
    }
}

/// `e^{x²} erfc(x)` for `x ≥ 0`, without overflow or underflow.
pub fn erfcx(x: f64) -> f64 {
    assert!(x >= 0.0, "erfcx is only used on the nonnegative axis");
    if x < 2.5 {
        (x * x).exp() * (1.0 - erf(x))
    } else {
        erfcx_cf(x)
    }
}

/// `erfc(y)` as `(m, e)` with `erfc(y) = m·e^{e}`, so large-argument tails can
/// be folded into other exponentials.
pub fn erfc_parts(y: f64) -> (f64, f64) {
    if y >= 0.0 {
        (erfcx(y), -y * y)
    } else {
        (erfc(y), 0.0)
    }
}

/// `E(x) = 2∫_0^x e^{−πu²} du = erf(√π x)`.
pub fn e_func(x: f64) -> f64 {
    erf(std::f64::consts::PI.sqrt() * x)
}

// Gauss–Kronrod 7/15 nodes and weights on [−1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let pair = f(c - x) + f(c + x);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    ((kron * h), ((kron - gauss) * h).norm())
}

/// Adaptive GK15 on `[a, b]` to absolute-or-relative tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let mut evals = 0usize;
    // Seed the scale so relative acceptance is meaningful from the start.
    let (whole, _) = gk15(&f, a, b);
    scale = scale.max(whole.norm());
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, err) = gk15(&f, lo, hi);
        evals += 15;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::QuadratureDivergence(f64::NAN));
        }
        let width_share = (hi - lo) / (b - a);
        if err <= (tol * scale.max(1e-300)).max(1e-300) * width_share.max(1e-6) || depth > 40 {
            if depth > 40 {
                return Err(Error::QuadratureDivergence(err));
            }
            total += v;
            scale = scale.max(total.norm());
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
        if evals > 5_000_000 {
            return Err(Error::QuadratureDivergence(err));
        }
    }
    Ok(total)
}

/// Half-width `L` beyond which `e^{−a x² + b|x|}` is below `1e−18`.
pub fn gaussian_cutoff(a: f64, b: f64) -> f64 {
    let target = 18.0 * std::f64::consts::LN_10;
    (b + (b * b + 4.0 * a * target).sqrt()) / (2.0 * a)
}

/// `∫_ℝ f` for a Gaussian-damped integrand with decay `e^{−a x² + b|x|}`.
/// The interval is split at the origin and at ±1 so that peaks near the
/// centre are resolved.
pub fn integrate_line<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let l = gaussian_cutoff(a, b).max(2.0);
    let cuts = [-l, -1.0, 0.0, 1.0, l];
    let mut acc = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        acc += integrate(&f, w[0], w[1], tol)?;
    }
    Ok(acc)
}
