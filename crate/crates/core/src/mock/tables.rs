//! The α, β, γ coefficients governing leading terms and massless
//! multiplicities, with a brute-force combinatorial check.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::series::YPoly;

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n || n < 0 {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// `α_P^{(a)} = Σ_{m=a}^{P−1} (−1)^{m+a} 2^{1−2m} · a/(m+a) · C(P−1,m) C(2m−1,m−a)`,
/// zero for `a ≥ P`. `a = 0` is convention dependent; see [`gamma_from_alpha`].
pub fn alpha(p: i64, a: i64) -> BigRational {
    assert!(a >= 1, "alpha is defined for a ≥ 1");
    let mut acc = BigRational::zero();
    for m in a..p {
        let sign = if (m + a) % 2 == 0 { 1 } else { -1 };
        let num = BigInt::from(sign * a) * binom(p - 1, m) * binom(2 * m - 1, m - a);
        let den = BigInt::from(2).pow((2 * m - 1) as u32) * BigInt::from(m + a);
        acc += BigRational::new(num, den);
    }
    acc
}

/// `β_{n,k} = 2(k+1)/(n+k+2) · C(2n+1, n−k)`.
pub fn beta(n: i64, k: i64) -> BigRational {
    BigRational::new(BigInt::from(2 * (k + 1)) * binom(2 * n + 1, n - k), BigInt::from(n + k + 2))
}

pub fn catalan(n: i64) -> BigInt {
    binom(2 * n, n) / BigInt::from(n + 1)
}

/// `γ_{k,a} = 2^{2k}(α^{(a)} − 2α^{(a+1)} + α^{(a+2)})` at `P = k+1`, with
/// `α^{(0)} = alpha0` (3 for the three-point sum, 1 for a single product).
pub fn gamma_from_alpha(k: i64, a: i64, alpha0: i64) -> BigRational {
    let p = k + 1;
    let al = |i: i64| {
        if i == 0 {
            BigRational::from_integer(alpha0.into())
        } else {
            alpha(p, i)
        }
    };
    let four_k = rat(BigInt::from(2).pow((2 * k) as u32));
    four_k * (al(a) - al(a + 1) * BigRational::from_integer(2.into()) + al(a + 2))
}

/// Closed form: `β_{k,a}` for `a ≥ 1` and `C_{k+1} + 2^{2k+1}` at `a = 0`.
pub fn gamma_closed(k: i64, a: i64) -> BigRational {
    if a == 0 {
        rat(catalan(k + 1) + BigInt::from(2).pow((2 * k + 1) as u32))
    } else {
        beta(k, a)
    }
}

/// Number of 0/1 words of length `2k+1` with `k+2` ones whose largest prefix
/// excess `#1 − #0` equals `a + 2`.
pub fn gamma_staircase_oracle(k: u32, a: u32) -> u64 {
    assert!(k <= 12, "brute force limited to k ≤ 12");
    let len = 2 * k + 1;
    let ones = k + 2;
    let target = (a + 2) as i32;
    let mut count = 0u64;
    // Gosper's hack over all words with `ones` bits set.
    let mut w: u64 = (1u64 << ones) - 1;
    let limit = 1u64 << len;
    while w < limit {
        let (mut run, mut best) = (0i32, 0i32);
        for i in 0..len {
            run += if w >> i & 1 == 1 { 1 } else { -1 };
            best = best.max(run);
        }
        if best == target {
            count += 1;
        }
        let c = w & w.wrapping_neg();
        let r = w + c;
        w = (((r ^ w) >> 2) / c) | r;
    }
    count
}

/// Coefficients `c_k` with `(u − u^{-1})^{2n} = Σ_{k=0}^{n} c_k I_{k/2}`,
/// `c_k = (−1)^{n+k} β_{n,k}`.
pub fn chebyshev_expand(n: u32) -> Vec<BigRational> {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            let b = beta(n, k);
            if (n + k) % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect()
}

/// Re-sums a Chebyshev expansion into a Laurent polynomial in `u`.
pub fn chebyshev_resum(c: &[BigRational]) -> YPoly {
    c.iter()
        .enumerate()
        .fold(YPoly::zero(), |acc, (k, ck)| &acc + &YPoly::chebyshev_sum(k as u32).scale(ck))
}

/// Tables of α, β and γ up to `kmax`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientTables {
    pub kmax: i64,
    /// `alpha[P−2][a−1] = α_P^{(a)}`, `P = 2..kmax+1`.
    pub alpha: Vec<Vec<BigRational>>,
    /// `beta[n][k] = β_{n,k}`, `n = 0..kmax`.
    pub beta: Vec<Vec<BigRational>>,
    /// `gamma[k−1][a] = γ_{k,a}` with `α^{(0)} = 3`.
    pub gamma: Vec<Vec<BigRational>>,
}

pub fn coefficient_tables(kmax: i64) -> CoefficientTables {
    assert!(kmax >= 1, "kmax must be positive");
    CoefficientTables {
        kmax,
        alpha: (2..=kmax + 1).map(|p| (1..p).map(|a| alpha(p, a)).collect()).collect(),
        beta: (0..=kmax).map(|n| (0..=n).map(|k| beta(n, k)).collect()).collect(),
        gamma: (1..=kmax).map(|k| (0..=k).map(|a| gamma_from_alpha(k, a, 3)).collect()).collect(),
    }
}

impl CoefficientTables {
    /// `(k+1)/(a+1) γ_{k,a}`, the multiplicities in the NS normalization.
    pub fn gamma_ns(&self) -> Vec<Vec<BigRational>> {
        self.gamma
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let k = i as i64 + 1;
                row.iter()
                    .enumerate()
                    .map(|(a, g)| g * BigRational::new((k + 1).into(), (a as i64 + 1).into()))
                    .collect()
            })
            .collect()
    }

    /// Long-format CSV `table,k,a,value` with the `gamma` and `gamma_ns`
    /// rows only.
    pub fn gamma_csv(&self) -> String {
        let full = self.to_csv();
        full.lines()
            .filter(|l| !l.starts_with("alpha,") && !l.starts_with("beta,"))
            .map(|l| format!("{l}\n"))
            .collect()
    }

    /// Long-format CSV `table,k,a,value`; for `alpha` the row key is `P`,
    /// for `beta` it is `n`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("table,k,a,value\n");
        let mut emit = |name: &str, rows: &[Vec<BigRational>], first: i64, col0: i64| {
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    out.push_str(&format!(
                        "{name},{},{},{}\n",
                        first + i as i64,
                        col0 + j as i64,
                        crate::series::rational_string(v)
                    ));
                }
            }
        };
        emit("gamma", &self.gamma, 1, 0);
        emit("gamma_ns", &self.gamma_ns(), 1, 0);
        emit("alpha", &self.alpha, 2, 1);
        emit("beta", &self.beta, 0, 0);
        out
    }
}
