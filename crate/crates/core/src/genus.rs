//! Elliptic genera of K3 and of four-dimensional hyper-Kähler manifolds,
//! their decomposition into N=4 characters, and topological invariants.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::characters::{massive_character, massless_iso0_rtilde, CharacterBook, CharacterSpec, Sector};
use crate::error::{Error, Result};
use crate::mock::{extract_h_all, peel_basis};
use crate::modular::{check_elliptic_index, theta_ratio_power, ThetaKind};
use crate::par::Exec;
use crate::series::{rational_string, Exp, QSeries, SpecialPoint, TailBound};

const RATIOS: [ThetaKind; 3] = [ThetaKind::T10, ThetaKind::T00, ThetaKind::T01];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenusKind {
    K3,
    /// `c_k 2^{2k} Σ_x (θ_x/θ_x(0))^{2k}` with `c_k = k+1`.
    SymmetricPowerSum(i64),
    /// Symmetrized `Π_x (θ_x/θ_x(0))^{2k_x}` over distinct permutations.
    Mixed(i64, i64, i64),
    /// `48 Σ_x ratio_x^4 + 4n Σ_{x<y} (ratio_x ratio_y)^2`.
    X2(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GenusSpec {
    pub kind: GenusKind,
    pub normalization: BigRational,
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(num_bigint::BigInt::from(2).pow(e as u32))
    } else {
        BigRational::new(1.into(), num_bigint::BigInt::from(2).pow((-e) as u32))
    }
}

impl GenusSpec {
    pub fn k3() -> Self {
        GenusSpec {
            kind: GenusKind::K3,
            normalization: BigRational::from_integer(8.into()),
        }
    }

    pub fn symmetric_power_sum(k: i64) -> Self {
        GenusSpec {
            kind: GenusKind::SymmetricPowerSum(k),
            normalization: BigRational::from_integer((k + 1).into()) * pow2(2 * k),
        }
    }

    /// Normalization `2^{2·max−1}`, or `2^{2k}` when all three exponents agree.
    pub fn mixed(k2: i64, k3: i64, k4: i64) -> Self {
        let top = k2.max(k3).max(k4);
        let norm = if k2 == k3 && k3 == k4 { pow2(2 * k2) } else { pow2(2 * top - 1) };
        GenusSpec {
            kind: GenusKind::Mixed(k2, k3, k4),
            normalization: norm,
        }
    }

    pub fn x2(n: i64) -> Self {
        GenusSpec {
            kind: GenusKind::X2(n),
            normalization: BigRational::one(),
        }
    }

    /// Level `k`, i.e. index `c/6`.
    pub fn level(&self) -> i64 {
        match self.kind {
            GenusKind::K3 => 1,
            GenusKind::SymmetricPowerSum(k) => k,
            GenusKind::Mixed(a, b, c) => a + b + c,
            GenusKind::X2(_) => 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.kind {
            GenusKind::SymmetricPowerSum(k) if k < 1 => {
                Err(Error::InvalidSpec(format!("power {k} must be positive")))
            }
            GenusKind::Mixed(a, b, c) if a < 0 || b < 0 || c < 0 || a + b + c < 1 => Err(
                Error::InvalidSpec(format!("exponents ({a},{b},{c}) must be nonnegative with positive sum")),
            ),
            _ => Ok(()),
        }
    }

    /// `true` when the genus is a combination of single ratio powers, so the
    /// coefficient functions can also be read from the half-period extraction.
    fn point_weights(&self) -> Option<BigRational> {
        match self.kind {
            GenusKind::K3 | GenusKind::SymmetricPowerSum(_) => Some(self.normalization.clone()),
            GenusKind::Mixed(a, b, c) if [a, b, c].iter().filter(|&&x| x > 0).count() == 1 => {
                Some(self.normalization.clone())
            }
            _ => None,
        }
    }
}

impl fmt::Display for GenusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenusKind::K3 => write!(f, "k3"),
            GenusKind::SymmetricPowerSum(k) => write!(f, "sym:{k}"),
            GenusKind::Mixed(a, b, c) => write!(f, "mixed:{a}:{b}:{c}"),
            GenusKind::X2(n) => write!(f, "x2:{n}"),
        }
    }
}

fn ratio_products(exps: [i64; 3], order: Exp) -> Result<QSeries> {
    let mut acc: Option<QSeries> = None;
    for (kind, e) in RATIOS.iter().zip(exps) {
        if e == 0 {
            continue;
        }
        let r = theta_ratio_power(*kind, e as u32, order)?;
        acc = Some(match acc {
            None => r,
            Some(a) => a.mul(&r),
        });
    }
    Ok(acc.unwrap_or_else(|| QSeries::one(order)))
}

/// Distinct permutations of `(k2, k3, k4)`.
fn distinct_perms(k: [i64; 3]) -> Vec<[i64; 3]> {
    let idx = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [0, 2, 1], [2, 1, 0], [1, 0, 2]];
    let mut out: Vec<[i64; 3]> = Vec::new();
    for p in idx {
        let v = [k[p[0]], k[p[1]], k[p[2]]];
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn build_genus(spec: &GenusSpec, order: Exp) -> Result<QSeries> {
    spec.validate()?;
    let body = match spec.kind {
        GenusKind::K3 => sum_of(&distinct_perms([1, 0, 0]), order)?,
        GenusKind::SymmetricPowerSum(k) => sum_of(&distinct_perms([k, 0, 0]), order)?,
        GenusKind::Mixed(a, b, c) => sum_of(&distinct_perms([a, b, c]), order)?,
        GenusKind::X2(n) => {
            let fourth = sum_of(&distinct_perms([2, 0, 0]), order)?;
            let pair = sum_of(&distinct_perms([1, 1, 0]), order)?;
            fourth.scale_int(48).add(&pair.scale_int(4 * n))
        }
    };
    Ok(body.scale(&spec.normalization))
}

fn sum_of(perms: &[[i64; 3]], order: Exp) -> Result<QSeries> {
    let parts = Exec::default().map(perms, |p| ratio_products(*p, order));
    let mut acc = QSeries::zero(order);
    for p in parts {
        acc = acc.add(&p?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MasslessEntry {
    pub two_l: i64,
    #[serde(serialize_with = "ser_rat")]
    pub raw_mult: BigRational,
    /// `(−1)^{2ℓ} raw/(2ℓ+1)`: the NS-sector count after the right-moving
    /// degeneracy `2ℓ+1` is divided out.
    #[serde(serialize_with = "ser_rat")]
    pub ns_weighted_mult: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MassiveEntry {
    pub a: i64,
    /// Offsets `n` (in `h = k/4 + n`), on the half-integer grid.
    #[serde(serialize_with = "ser_exps")]
    pub weights: Vec<Exp>,
    /// Multiplicities of the massive `R̃` characters at those weights.
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<BigRational>,
    /// Coefficients of `q^{n − a²/4P} B^{(a)}`; equal to `(−1)^{a+1}` times
    /// the multiplicities.
    #[serde(serialize_with = "ser_rats")]
    pub basis_coeffs: Vec<BigRational>,
}

impl MassiveEntry {
    /// Multiplicity at integer offset `n`.
    pub fn at(&self, n: Exp) -> BigRational {
        self.weights
            .iter()
            .position(|w| *w == n)
            .map(|i| self.coeffs[i].clone())
            .unwrap_or_else(BigRational::zero)
    }

    /// Basis coefficients at `n = 1, 2, …` (integer offsets only).
    pub fn integer_basis_coeffs(&self) -> Vec<BigRational> {
        self.weights
            .iter()
            .zip(&self.basis_coeffs)
            .filter(|(w, _)| w.is_integer())
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// Multiplicities at `n = 1, 2, …` (integer offsets only).
    pub fn integer_coeffs(&self) -> Vec<BigRational> {
        self.weights
            .iter()
            .zip(&self.coeffs)
            .filter(|(w, _)| w.is_integer())
            .map(|(_, c)| c.clone())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Diagnostics {
    pub reconstruction_exact: bool,
    pub index_ok: bool,
    /// Agreement of the coefficient functions with the half-period
    /// extraction, where the genus is a sum of single ratio powers.
    pub extraction_agrees: Option<bool>,
    pub massless_integral: bool,
    pub massive_integral: bool,
    /// All NS-view multiplicities are nonnegative.
    pub ns_nonnegative: bool,
    #[serde(serialize_with = "ser_rat")]
    pub witten_index: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub genus: String,
    pub k: i64,
    #[serde(serialize_with = "ser_rat")]
    pub normalization: BigRational,
    #[serde(serialize_with = "ser_exp")]
    pub order: Exp,
    pub massless: Vec<MasslessEntry>,
    pub massive: Vec<MassiveEntry>,
    pub diagnostics: Diagnostics,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(x))
}

fn ser_rats<S: serde::Serializer>(x: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(rational_string))
}

fn ser_exp<S: serde::Serializer>(x: &Exp, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::series::exp_string(*x))
}

fn ser_exps<S: serde::Serializer>(x: &[Exp], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(|e| crate::series::exp_string(*e)))
}

impl DecompositionReport {
    pub fn massless_raw(&self) -> Vec<BigRational> {
        self.massless.iter().map(|m| m.raw_mult.clone()).collect()
    }

    pub fn massive_for(&self, a: i64) -> Option<&MassiveEntry> {
        self.massive.iter().find(|m| m.a == a)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `kind,a_or_two_l,n,value` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,label,n,value\n");
        for m in &self.massless {
            out.push_str(&format!("massless,{},0,{}\n", m.two_l, rational_string(&m.raw_mult)));
        }
        for m in &self.massive {
            for (w, c) in m.weights.iter().zip(&m.coeffs) {
                out.push_str(&format!("massive,{},{},{}\n", m.a, crate::series::exp_string(*w), rational_string(c)));
            }
        }
        out
    }
}

fn retain_mask<T>(v: &mut Vec<T>, keep: &[bool]) {
    let mut it = keep.iter();
    v.retain(|_| *it.next().unwrap());
}

fn sgn(a: i64) -> i64 {
    if a % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Decomposes into `R̃` massless and massive characters of level `k`.
///
/// `Z = c_0 C_P + Σ_a F_a B^{(a)}` with `c_0 = Z(z=0)`, then the leading
/// coefficient of each `F_a` is traded for massless characters through
/// `(−1)^{a+1} q^{−a²/4P} B^{(a)} = ch_{a/2} + 2ch_{(a−1)/2} + ch_{(a−2)/2}`.
pub fn decompose_genus(spec: &GenusSpec, order: Exp) -> Result<DecompositionReport> {
    let z = build_genus(spec, order)?;
    decompose_series(spec, &z, order)
}

pub(crate) fn decompose_series(spec: &GenusSpec, z: &QSeries, order: Exp) -> Result<DecompositionReport> {
    let k = spec.level();
    let p = k + 1;
    let euler = witten_index(z)?;
    let rem = z.sub(&massless_iso0_rtilde(k, order)?.scale(&euler));
    let f = peel_basis(p, rem, order)?;

    let mut massless = vec![BigRational::zero(); (k + 1) as usize];
    massless[0] += &euler;
    let mut massive = Vec::new();
    for (i, fa) in f.iter().enumerate() {
        let a = i as i64 + 1;
        let s = BigRational::from_integer(sgn(a + 1).into());
        let lead = fa.coefficient(Exp::zero())?.constant_term();
        for (j, w) in [(a, 1), (a - 1, 2), (a - 2, 1)] {
            if j >= 0 {
                massless[j as usize] += &lead * &s * BigRational::from_integer(w.into());
            }
        }
        let mut weights = Vec::new();
        let mut coeffs = Vec::new();
        let mut basis = Vec::new();
        let mut r = Exp::new(1, 2);
        while r < order {
            weights.push(r);
            let c = fa.coefficient(r)?.constant_term();
            coeffs.push(&c * &s);
            basis.push(c);
            r += Exp::new(1, 2);
        }
        if fa.terms().any(|(e, _)| e < Exp::zero()) {
            return Err(Error::InconsistentSystem(format!(
                "negative-order basis coefficient for a = {a}"
            )));
        }
        massive.push(MassiveEntry {
            a,
            weights,
            coeffs,
            basis_coeffs: basis,
        });
    }
    // Drop half-integer offsets that are identically zero, so integer-grid
    // streams read naturally.
    for m in &mut massive {
        let keep: Vec<bool> = m
            .weights
            .iter()
            .enumerate()
            .map(|(i, w)| w.is_integer() || !m.coeffs[i].is_zero())
            .collect();
        retain_mask(&mut m.weights, &keep);
        retain_mask(&mut m.coeffs, &keep);
        retain_mask(&mut m.basis_coeffs, &keep);
    }

    let massless: Vec<MasslessEntry> = massless
        .into_iter()
        .enumerate()
        .map(|(two_l, raw)| {
            let d = BigRational::from_integer((sgn(two_l as i64) * (two_l as i64 + 1)).into());
            MasslessEntry {
                two_l: two_l as i64,
                ns_weighted_mult: &raw / d,
                raw_mult: raw,
            }
        })
        .collect();

    let recon = reconstruct(k, &massless, &massive, order)?;
    let reconstruction_exact = recon.sub(z).is_zero() && recon.trunc() == z.trunc();
    if !reconstruction_exact {
        return Err(Error::InconsistentSystem(format!(
            "reconstruction of {spec} leaves a residual starting at q^{}",
            crate::series::exp_string(recon.sub(z).lead())
        )));
    }
    let extraction_agrees = match spec.point_weights() {
        Some(w) => Some(extraction_matches(p, &f, &w, order)?),
        None => None,
    };
    let massless_integral = massless.iter().all(|m| m.raw_mult.is_integer() && m.ns_weighted_mult.is_integer());
    let massive_integral = massive.iter().all(|m| m.coeffs.iter().all(|c| c.is_integer()));
    let ns_nonnegative = massless.iter().all(|m| !m.ns_weighted_mult.is_negative())
        && massive.iter().all(|m| m.coeffs.iter().all(|c| !c.is_negative()));
    Ok(DecompositionReport {
        genus: spec.to_string(),
        k,
        normalization: spec.normalization.clone(),
        order,
        massless,
        massive,
        diagnostics: Diagnostics {
            reconstruction_exact,
            index_ok: check_elliptic_index(z, Exp::from_integer(k)),
            extraction_agrees,
            massless_integral,
            massive_integral,
            ns_nonnegative,
            witten_index: euler,
        },
    })
}

/// `F_a = −w Σ_points H^{(a)}(point)` when `Z = w Σ_x ratio_x^{2k}`.
fn extraction_matches(p: i64, f: &[QSeries], w: &BigRational, order: Exp) -> Result<bool> {
    let per_point = extract_h_all(p, order, Exec::default())?;
    Ok(f.iter().enumerate().all(|(i, fa)| {
        let a = i as i64 + 1;
        let shift = Exp::new(a * a, 4 * p);
        let sum = per_point
            .iter()
            .map(|hs| hs[i].to_qseries())
            .reduce(|x, y| x.add(&y))
            .expect("three points")
            .mul_q_power(shift)
            .scale(&-w.clone());
        sum.truncate(fa.trunc()).sub(&fa.truncate(sum.trunc())).is_zero()
    }))
}

/// Re-sums the multiplicities against independently built characters.
pub fn reconstruct(k: i64, massless: &[MasslessEntry], massive: &[MassiveEntry], order: Exp) -> Result<QSeries> {
    let book = CharacterBook::new();
    let mut acc = QSeries::zero(order);
    for m in massless {
        if !m.raw_mult.is_zero() {
            acc = acc.add(&book.massless_rtilde(k, m.two_l, order)?.scale(&m.raw_mult));
        }
    }
    let jobs: Vec<(CharacterSpec, BigRational)> = massive
        .iter()
        .flat_map(|m| {
            m.weights.iter().zip(&m.coeffs).filter(|(_, c)| !c.is_zero()).map(move |(w, c)| {
                (
                    CharacterSpec {
                        sector: Sector::RTilde,
                        k,
                        h: Exp::new(k, 4) + *w,
                        two_l: m.a,
                    },
                    c.clone(),
                )
            })
        })
        .collect();
    let parts = Exec::default().map(&jobs, |(spec, c)| massive_character(spec, order).map(|s| s.scale(c)));
    for p in parts {
        acc = acc.add(&p?);
    }
    Ok(acc)
}

/// The `q^0`, `u`-summed value `Z(z=0)`, checked to be constant in `q`.
fn witten_index(z: &QSeries) -> Result<BigRational> {
    let at0 = z.at_z_zero();
    let c = at0.coefficient(Exp::zero())?.constant_term();
    if at0.terms().any(|(e, _)| e != Exp::zero()) {
        return Err(Error::InconsistentSystem("Z(z=0) is not constant in q".into()));
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopologicalInvariants {
    pub euler: BigRational,
    /// `Z(1/2)`; its constant term is the signature.
    pub signature_series: QSeries,
    /// `q^{k/2} Z((1+τ)/2)`; its constant term is `Â`.
    pub ahat_series: QSeries,
}

impl TopologicalInvariants {
    pub fn signature(&self) -> BigRational {
        self.signature_series
            .coefficient(Exp::zero())
            .map(|p| p.constant_term())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn ahat(&self) -> BigRational {
        self.ahat_series
            .coefficient(Exp::zero())
            .map(|p| p.constant_term())
            .unwrap_or_else(|_| BigRational::zero())
    }
}

pub fn topological_invariants(spec: &GenusSpec, order: Exp) -> Result<TopologicalInvariants> {
    let k = spec.level();
    let tail = TailBound::weak_jacobi_int(k);
    // The τ-shift lowers the reachable order; build enough to cover `order`.
    let mut work = order;
    let z = loop {
        let z = build_genus(spec, work)?;
        let probe = z.specialize(SpecialPoint::HalfPlusHalfTau, Some(&tail))?;
        if probe.trunc() + Exp::new(k, 2) >= order {
            break z;
        }
        work += 1;
    };
    if !z.is_even() {
        return Err(Error::OddParity);
    }
    let euler = witten_index(&z)?;
    let signature_series = z.specialize(SpecialPoint::Half, None)?.truncate(order);
    let ahat_series = z
        .specialize(SpecialPoint::HalfPlusHalfTau, Some(&tail))?
        .mul_q_power(Exp::new(k, 2))
        .truncate(order);
    Ok(TopologicalInvariants {
        euler,
        signature_series,
        ahat_series,
    })
}

/// Which coefficient fixes an end of the admissible `n` range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Binding {
    /// `"massless"` or `"massive"`.
    pub kind: String,
    /// `2ℓ` for massless, `a` for massive.
    pub label: i64,
    #[serde(serialize_with = "ser_exp")]
    pub weight: Exp,
    /// The offending NS-view coefficient just outside the range.
    #[serde(serialize_with = "ser_rat")]
    pub value_outside: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdmissibleRange {
    pub lo: i64,
    pub hi: i64,
    pub lo_binding: Binding,
    pub hi_binding: Binding,
}

/// NS-view coefficients keyed by (kind, label, weight).
fn ns_coefficients(r: &DecompositionReport) -> Vec<((String, i64, Exp), BigRational)> {
    let mut out: Vec<((String, i64, Exp), BigRational)> = r
        .massless
        .iter()
        .map(|m| (("massless".to_string(), m.two_l, Exp::zero()), m.ns_weighted_mult.clone()))
        .collect();
    for m in &r.massive {
        for (w, c) in m.weights.iter().zip(&m.coeffs) {
            out.push((("massive".to_string(), m.a, *w), c.clone()));
        }
    }
    out
}

fn violation(r: &DecompositionReport) -> Option<Binding> {
    ns_coefficients(r)
        .into_iter()
        .find(|(_, v)| v.is_negative() || !v.is_integer())
        .map(|((kind, label, weight), v)| Binding {
            kind,
            label,
            weight,
            value_outside: v,
        })
}

/// Largest interval of `n` for which every NS-view multiplicity of the
/// `X_2(n)` decomposition is a nonnegative integer below `order`.
///
/// Multiplicities are affine in `n`, so the interval is read off the two
/// family members `n = 0, 1` and then confirmed by decomposing the end points
/// and their outer neighbours directly.
pub fn x2_admissible_range(order: Exp) -> Result<AdmissibleRange> {
    let r0 = decompose_genus(&GenusSpec::x2(0), order)?;
    let r1 = decompose_genus(&GenusSpec::x2(1), order)?;
    let c0 = ns_coefficients(&r0);
    let c1 = ns_coefficients(&r1);
    let (mut lo, mut hi) = (i64::MIN, i64::MAX);
    for ((_, v0), (_, v1)) in c0.iter().zip(&c1) {
        // v(n) = v0 + n·d ≥ 0
        let d = v1 - v0;
        if d.is_positive() {
            let bound = (-v0 / &d).ceil().to_integer();
            lo = lo.max(i64::try_from(bound).unwrap_or(i64::MIN));
        } else if d.is_negative() {
            let bound = (-v0 / &d).floor().to_integer();
            hi = hi.min(i64::try_from(bound).unwrap_or(i64::MAX));
        } else if v0.is_negative() {
            return Err(Error::InconsistentSystem("a fixed NS coefficient is negative".into()));
        }
    }
    if lo > hi {
        return Err(Error::InconsistentSystem("no admissible n".into()));
    }
    for n in [lo, hi] {
        if let Some(b) = violation(&decompose_genus(&GenusSpec::x2(n), order)?) {
            return Err(Error::InconsistentSystem(format!(
                "n = {n} unexpectedly violates at {} {}",
                b.kind, b.label
            )));
        }
    }
    let outside = |n: i64| -> Result<Binding> {
        violation(&decompose_genus(&GenusSpec::x2(n), order)?)
            .ok_or_else(|| Error::InconsistentSystem(format!("n = {n} should violate")))
    };
    Ok(AdmissibleRange {
        lo,
        hi,
        lo_binding: outside(lo - 1)?,
        hi_binding: outside(hi + 1)?,
    })
}

/// Decomposes a batch of genera; independent specs run concurrently.
pub fn decompose_many(specs: &[GenusSpec], order: Exp, exec: Exec) -> Vec<Result<DecompositionReport>> {
    exec.map(specs, |s| decompose_genus(s, order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigRational]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect()
    }

    #[test]
    fn k3_genus_basics() {
        let z = build_genus(&GenusSpec::k3(), Exp::from_integer(3)).unwrap();
        assert!(z.is_even());
        assert!(check_elliptic_index(&z, Exp::one()));
        assert_eq!(witten_index(&z).unwrap(), BigRational::from_integer(24.into()));
    }

    #[test]
    fn k3_decomposition() {
        let r = decompose_genus(&GenusSpec::k3(), Exp::from_integer(4)).unwrap();
        assert_eq!(ints(&r.massless_raw()), vec![20, -2]);
        assert_eq!(ints(&r.massive[0].integer_coeffs()), vec![90, 462, 1540]);
        assert_eq!(r.massless[1].ns_weighted_mult, BigRational::one());
        assert_eq!(r.diagnostics.extraction_agrees, Some(true));
        assert!(r.diagnostics.reconstruction_exact && r.diagnostics.index_ok);
    }

    #[test]
    fn mixed_normalizations() {
        assert_eq!(GenusSpec::mixed(1, 1, 0).normalization, BigRational::from_integer(2.into()));
        assert_eq!(GenusSpec::mixed(1, 1, 1).normalization, BigRational::from_integer(4.into()));
        assert_eq!(GenusSpec::symmetric_power_sum(2).normalization, BigRational::from_integer(48.into()));
        assert_eq!(distinct_perms([1, 1, 0]).len(), 3);
        assert_eq!(distinct_perms([2, 1, 0]).len(), 6);
    }

    #[test]
    fn invalid_specs() {
        assert!(build_genus(&GenusSpec::symmetric_power_sum(0), Exp::one()).is_err());
        assert!(build_genus(&GenusSpec::mixed(0, 0, 0), Exp::one()).is_err());
    }
}
