//! Bounds on the unseen part of a series, needed whenever `z` is shifted by a
//! multiple of `τ` and high `u`-powers migrate to low `q`-orders.

use num_integer::Roots;
use num_traits::{Signed, Zero};

use super::Exp;

/// Support condition `l² ≤ 4·index·r + polar` on every term `y^l q^r`.
///
/// Weak Jacobi forms of index `M` satisfy it with `polar = M²`. The bound is
/// what lets a shift `z → z + cτ` assign a provable truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailBound {
    pub index: Exp,
    pub polar: Exp,
}

impl TailBound {
    pub fn weak_jacobi(index: Exp) -> Self {
        TailBound {
            index,
            polar: index * index,
        }
    }

    pub fn weak_jacobi_int(index: i64) -> Self {
        Self::weak_jacobi(Exp::from_integer(index))
    }

    /// `16·index·r + 4·polar`, the bound on `m²` for `u`-power `m = 2l`.
    fn upow_sq_bound(&self, r: Exp) -> Exp {
        Exp::from_integer(16) * self.index * r + Exp::from_integer(4) * self.polar
    }

    /// True when `u^m q^r` is allowed.
    pub fn admits(&self, r: Exp, m: i64) -> bool {
        Exp::from_integer(m * m) <= self.upow_sq_bound(r)
    }

    /// Largest admissible `|m|` at order `r`, if any term is admissible there.
    pub fn max_upow(&self, r: Exp) -> Option<i64> {
        let b = self.upow_sq_bound(r);
        if b.is_negative() {
            return None;
        }
        let fl = b.numer().div_euclid(*b.denom());
        Some(fl.sqrt())
    }

    /// Lowest exponent reachable from unseen terms (orders `r ≥ trunc` on the
    /// grid `1/den`) after `u^m q^r ↦ u^m q^{r + c·m/2}`, `c ≠ 0`.
    /// With `even` only even `m` are considered. The bound is symmetric in
    /// `m`, so a negative `c` behaves like `|c|`.
    pub(crate) fn shifted_trunc(&self, trunc: Exp, den: i64, c: Exp, even: bool) -> Exp {
        let c = c.abs();
        assert!(c > Exp::zero());
        let cf = *c.numer() as f64 / *c.denom() as f64;
        let mf = *self.index.numer() as f64 / *self.index.denom() as f64;
        let pf = *self.polar.numer() as f64 / *self.polar.denom() as f64;
        let step = Exp::new(1, den);
        let mut r = trunc;
        let mut best: Option<Exp> = None;
        for _ in 0..1_000_000 {
            if let Some(mut mm) = self.max_upow(r) {
                if even && mm % 2 != 0 {
                    mm -= 1;
                }
                let v = r - c * Exp::from_integer(mm) / 2;
                if best.is_none_or(|b| v < b) {
                    best = Some(v);
                }
            }
            if let Some(b) = best {
                // Past the minimum of r - c·sqrt(16Mr + 4P)/2 the continuous
                // bound is increasing and dominates every later grid value.
                let rf = *r.numer() as f64 / *r.denom() as f64;
                let s = (16.0 * mf * rf + 4.0 * pf).max(0.0).sqrt();
                let bf = *b.numer() as f64 / *b.denom() as f64;
                if (mf == 0.0 || s > 4.0 * cf * mf + 1.0) && rf - cf * s / 2.0 > bf + 1e-9 {
                    return b;
                }
            }
            r += step;
        }
        best.unwrap_or(trunc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_support_admitted() {
        // θ_00 = Σ q^{n²/2} y^n has index 1/2.
        let tb = TailBound::weak_jacobi(Exp::new(1, 2));
        for n in -6i64..=6 {
            assert!(tb.admits(Exp::new(n * n, 2), 2 * n));
        }
        assert!(!tb.admits(Exp::new(1, 2), 4));
    }

    #[test]
    fn shifted_trunc_of_index_one() {
        // Index 1, polar 1: at r the largest y-power is floor(sqrt(4r+1)).
        // Shift by τ/2 lowers by l/2; from r = 3: l=3 → 3/2, r=4: l=4 → 2.
        let tb = TailBound::weak_jacobi_int(1);
        let t = tb.shifted_trunc(Exp::from_integer(3), 1, Exp::new(1, 2), true);
        assert_eq!(t, Exp::new(3, 2));
        // Odd u-powers allowed: m = 7 at r = 3 gives 3 - 7/4.
        let t = tb.shifted_trunc(Exp::from_integer(3), 1, Exp::new(1, 2), false);
        assert_eq!(t, Exp::new(5, 4));
    }

    #[test]
    fn zero_index_only_shifts_by_polar() {
        let tb = TailBound::weak_jacobi_int(0);
        let t = tb.shifted_trunc(Exp::from_integer(5), 2, Exp::new(1, 2), true);
        assert_eq!(t, Exp::from_integer(5));
    }
}
