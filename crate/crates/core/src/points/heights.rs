//! Naive and canonical heights on `E: y^2 = x^3 - 2Nx`, by two
//! independent routes.
//!
//! * `Limit`: `lim h([2^n]P) / 4^n` over an exact doubling chain, with a
//!   Richardson-style fit that removes the constant and the linear-in-n
//!   parts of the defect (the 2-adic denominator of `x([2^n]P)` grows
//!   linearly in `n`, every other local contribution stabilizes).
//! * `LocalSum`: the archimedean local height from Tate's series plus the
//!   finite local heights
//!   `1/2 max(0, -ord_t x) log t + 1/12 ord_t(Delta) log t`, corrected by
//!   `-1/4 ord_t(2N) log t` at places where the point misses the identity
//!   component.
//!
//! The two must agree to 1e-6; a larger gap is surfaced as an error, not
//! absorbed. All algebra on points is exact; only the logarithms are
//! floating point.

use crate::arith::{self, ln_big, ln_rat_abs, Rat};
use crate::curve::{CurveE, CurvePoint};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HeightError {
    #[error("canonical height is defined only for non-torsion points")]
    TorsionPoint,
    #[error("height methods disagree: limit {limit} vs local sum {local_sum}")]
    MethodDisagreement { limit: f64, local_sum: f64 },
    #[error("cannot determine the bad primes of the curve: {0}")]
    UnknownBadPrimes(String),
    #[error("numeric instability in the archimedean series")]
    NumericInstability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightMethod {
    Limit,
    LocalSum,
}

/// The decomposition of one canonical-height computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeightReport {
    /// `h(P) = 1/2 log max(|a|, e^2)` for `x(P) = a/e^2` in lowest terms.
    pub naive: f64,
    /// The value of the selected method.
    pub canonical: f64,
    pub method: HeightMethod,
    /// Archimedean local height (Tate series).
    pub archimedean_local: f64,
    /// Local heights at 2 and the odd primes dividing `N`.
    pub finite_locals: BTreeMap<u64, f64>,
    /// `1/2 log` of the leftover denominator at good primes.
    pub unramified_log: f64,
    /// The value of the doubling-limit route.
    pub limit_value: f64,
    /// The value of the local-sum route.
    pub local_sum_value: f64,
}

/// `1/2 log max(|a|, e^2)`; zero for the point at infinity.
pub fn naive_height(p: &CurvePoint) -> f64 {
    match p.x() {
        None => 0.0,
        Some(x) => naive_height_of_x(x),
    }
}

fn naive_height_of_x(x: &Rat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let ln_num = ln_big(x.numer());
    let ln_den = ln_big(x.denom());
    0.5 * ln_num.max(ln_den)
}

/// The x-only duplication map on `y^2 = x^3 + Ax` as an integer fraction:
/// `num' = (num^2 - A den^2)^2`, `den' = 4 num den (num^2 + A den^2)`.
///
/// For coprime inputs the new common factor divides a power of `2A`, so
/// stripping the small bad primes keeps the fraction exactly reduced
/// without ever running a full big-integer gcd.
struct DoublingChain {
    a_coeff: BigInt,
    strip: Vec<u64>,
    num: BigInt,
    den: BigInt,
}

impl DoublingChain {
    fn new(curve: &CurveE, bad_odd_primes: &[u64], x: &Rat) -> Self {
        let mut strip = vec![2u64];
        strip.extend_from_slice(bad_odd_primes);
        DoublingChain {
            a_coeff: curve.a().clone(),
            strip,
            num: x.numer().clone(),
            den: x.denom().clone(),
        }
    }

    fn step(&mut self) {
        let n2 = &self.num * &self.num;
        let ad2 = &self.a_coeff * &self.den * &self.den;
        let minus = &n2 - &ad2;
        let plus = &n2 + &ad2;
        let mut num = &minus * &minus;
        let mut den = BigInt::from(4) * &self.num * &self.den * &plus;
        for &t in &self.strip {
            let tb = BigInt::from(t);
            loop {
                let (qn, rn) = num.div_rem(&tb);
                if !rn.is_zero() {
                    break;
                }
                let (qd, rd) = den.div_rem(&tb);
                if !rd.is_zero() {
                    break;
                }
                num = qn;
                den = qd;
            }
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        self.num = num;
        self.den = den;
    }

    fn x_rational(&self) -> Rat {
        Rat::new(self.num.clone(), self.den.clone())
    }

    /// `1/2 log max(|num|, den)` of the reduced fraction.
    fn naive(&self) -> f64 {
        0.5 * ln_big(&self.num).max(ln_big(&self.den))
    }

    /// `log|x|`
    fn ln_x(&self) -> f64 {
        ln_big(&self.num) - ln_big(&self.den)
    }
}

/// `lim h([2^n]P)/4^n`, accelerated by the exact tail identity
///
/// `4^n hhat(P) = h([2^n]P) + 1/4 theta_n + R_n`, `R_n in (0, log2/12]`,
///
/// where `theta_n = log(1 + 2N/x([2^n]P)^2)`. The identity holds for
/// `n >= 1` because every double lies on the identity component at every
/// place (all Tamagawa numbers here are 2) and on the unbounded real
/// component. Taking the band's midpoint makes the error at n = 8 at most
/// `log2/24 / 4^8 < 4.5e-7` — within tolerance by construction, which the
/// raw sequence `h([2^n]P)/4^n` would only reach around n = 15.
fn limit_height(curve: &CurveE, bad_odd_primes: &[u64], p: &CurvePoint) -> f64 {
    let two_n = -curve.a();
    let ln_2n = ln_big(&two_n);
    let mut chain = DoublingChain::new(curve, bad_odd_primes, p.x().expect("affine point"));
    let mut prev: Option<f64> = None;
    let mut est = f64::NAN;
    for n in 1..=8u32 {
        chain.step();
        let h = chain.naive();
        let u = 2.0 * chain.ln_x() - ln_2n; // >= 0 on the unbounded component
        let theta = (-u).exp().ln_1p();
        est = (h + 0.25 * theta + std::f64::consts::LN_2 / 24.0) / 4f64.powi(n as i32);
        // The guaranteed tail bound only drops inside the tolerance at
        // n = 8, so stability this early would still not justify stopping
        // sooner; the check mirrors the bound instead of a raw delta.
        if let Some(p_est) = prev {
            if (est - p_est).abs() < 1e-8 && n >= 8 {
                break;
            }
        }
        prev = Some(est);
    }
    est
}

/// Archimedean local height by Tate's series, normalized so that
/// `0 <= lambda_inf(P) - 1/4 log(x^2 + 2N) + 1/12 log|Delta| <= 1/12 log 2`.
///
/// With `theta(Q) = log(1 + 2N/x(Q)^2)`,
/// `lambda_inf(P) = 1/2 log|x(P)| + sum_{n>=0} 4^{-n-1} theta([2^n]P)
///                  - 1/12 log|Delta|`.
/// From `n = 1` on, `x([2^n]P) >= sqrt(2N)`, so the series runs in log
/// space on `y_n = x([2^n]P)/sqrt(2N) > 1`.
fn archimedean_local(
    curve: &CurveE,
    bad_odd_primes: &[u64],
    p: &CurvePoint,
) -> Result<f64, HeightError> {
    let two_n = -curve.a(); // A = -2N on E
    assert!(two_n.is_positive(), "archimedean series is for the E form");
    let ln_2n = ln_big(&two_n);
    let ln_disc = ln_big(&curve.discriminant().abs());

    let x0 = p.x().expect("affine point");
    let ln_x0 = ln_rat_abs(x0);
    // theta_0 = log(1 + 2N/x0^2), stably in both regimes.
    let u0 = 2.0 * ln_x0 - ln_2n;
    let theta0 = if u0 >= 0.0 { (-u0).exp().ln_1p() } else { -u0 + u0.exp().ln_1p() };

    // One exact doubling lands on the unbounded component.
    let mut chain = DoublingChain::new(curve, bad_odd_primes, x0);
    chain.step();
    let x1 = chain.x_rational();
    assert!(x1.is_positive());
    let mut v = ln_rat_abs(&x1) - 0.5 * ln_2n; // log(y_1), y_1 > 1
    let mut sum = 0.25 * theta0;
    let mut weight = 0.25;
    for k in 1..=200u32 {
        if v <= 0.0 {
            return Err(HeightError::NumericInstability);
        }
        weight *= 0.25;
        let theta = (-2.0 * v).exp().ln_1p();
        sum += weight * theta;
        if k >= 40 && weight * theta < 1e-18 {
            break;
        }
        // y' = (y^2 + 1)^2 / (4 (y^3 - y)) in log space.
        let e = (-2.0 * v).exp();
        v = v - 4f64.ln() + 2.0 * e.ln_1p() - (-e).ln_1p();
    }
    Ok(ln_x0 * 0.5 + sum - ln_disc / 12.0)
}

/// Local heights at the finite places, plus the aggregated good-reduction
/// part (which needs no factorization of the denominator).
///
/// On this model `ord_2(Delta) = 9`, `ord_t(Delta) = 3` and
/// `ord_t(2N) = 1` at every bad place.
fn finite_locals(bad_odd_primes: &[u64], p: &CurvePoint) -> (BTreeMap<u64, f64>, f64) {
    let x = p.x().expect("affine point");
    let mut locals = BTreeMap::new();
    let mut accounted = BigInt::from(1);
    for (&t, v_disc) in std::iter::once(&2u64)
        .chain(bad_odd_primes.iter())
        .zip(std::iter::once(9i64).chain(std::iter::repeat(3)))
    {
        let v = arith::val(x, t).finite();
        // Off the identity component exactly when v_t(x) >= 1; the
        // component correction is -1/4 ord_t(2N) log t = -1/4 log t.
        let correction = if v >= 1 { -0.25 } else { 0.0 };
        let lambda = (0.5 * (-v).max(0) as f64 + v_disc as f64 / 12.0 + correction)
            * (t as f64).ln();
        locals.insert(t, lambda);
        if v < 0 {
            accounted *= BigInt::from(t).pow((-v) as u32);
        }
    }
    let leftover = x.denom() / accounted;
    (locals, 0.5 * ln_big(&leftover))
}

/// Canonical height with explicit bad primes (the odd primes dividing N).
pub fn canonical_height_with_primes(
    curve: &CurveE,
    bad_odd_primes: &[u64],
    p: &CurvePoint,
    method: HeightMethod,
) -> Result<HeightReport, HeightError> {
    if p.is_torsion() {
        return Err(HeightError::TorsionPoint);
    }
    let limit_value = limit_height(curve, bad_odd_primes, p);
    let archimedean = archimedean_local(curve, bad_odd_primes, p)?;
    let (locals, unramified_log) = finite_locals(bad_odd_primes, p);
    let local_sum_value =
        archimedean + locals.values().sum::<f64>() + unramified_log;
    if (limit_value - local_sum_value).abs() > 1e-6 {
        return Err(HeightError::MethodDisagreement {
            limit: limit_value,
            local_sum: local_sum_value,
        });
    }
    let canonical = match method {
        HeightMethod::Limit => limit_value,
        HeightMethod::LocalSum => local_sum_value,
    };
    Ok(HeightReport {
        naive: naive_height(p),
        canonical,
        method,
        archimedean_local: archimedean,
        finite_locals: locals,
        unramified_log,
        limit_value,
        local_sum_value,
    })
}

/// Canonical height, factoring `N` to find the bad primes.
pub fn canonical_height(
    curve: &CurveE,
    p: &CurvePoint,
    method: HeightMethod,
) -> Result<HeightReport, HeightError> {
    let odd: Vec<u64> = bad_odd_primes(curve)?;
    canonical_height_with_primes(curve, &odd, p, method)
}

fn bad_odd_primes(curve: &CurveE) -> Result<Vec<u64>, HeightError> {
    let factors = arith::factor_with_known(curve.n(), &[])
        .map_err(|e| HeightError::UnknownBadPrimes(e.to_string()))?;
    Ok(factors
        .iter()
        .map(|(p, _)| p.to_u64().expect("bad primes fit in u64 at this scale"))
        .filter(|&p| p != 2)
        .collect())
}

/// The printed two-sided bounds for a point with `x = a/e^2`:
/// the Lang-type floor, the sandwich around `1/4 log(a^2 + 2N e^4)`, and
/// the difference from the Weil height.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaperBounds {
    pub canonical: f64,
    pub naive: f64,
    /// `1/16 log(4N)`
    pub lower_bound: f64,
    /// `1/4 log((a^2 + 2N e^4)/(2N))`
    pub sandwich_lo: f64,
    /// `1/4 log(a^2 + 2N e^4) + 1/12 log 2`
    pub sandwich_hi: f64,
    /// `-1/4 log(4N)`
    pub weil_diff_lo: f64,
    /// `1/4 log(2N + 1) + 1/12 log 2`
    pub weil_diff_hi: f64,
}

impl PaperBounds {
    pub fn lower_holds(&self) -> bool {
        self.canonical >= self.lower_bound - 1e-9
    }

    pub fn sandwich_holds(&self) -> bool {
        self.sandwich_lo - 1e-9 <= self.canonical && self.canonical <= self.sandwich_hi + 1e-9
    }

    /// The two-sided bound on the defect between the canonical height and
    /// `1/2 log max(|a|, e^2)`. (That quantity is the naive height as
    /// defined here; the factor 1/2 is already inside it.)
    pub fn weil_difference_holds(&self) -> bool {
        let diff = self.canonical - self.naive;
        self.weil_diff_lo - 1e-9 <= diff && diff <= self.weil_diff_hi + 1e-9
    }

    pub fn all_hold(&self) -> bool {
        self.lower_holds() && self.sandwich_holds() && self.weil_difference_holds()
    }
}

/// Evaluate the printed bounds for a point whose canonical height is
/// already known.
pub fn paper_bounds(curve: &CurveE, p: &CurvePoint, canonical: f64) -> PaperBounds {
    let two_n = -curve.a();
    let ln_2n = ln_big(&two_n);
    let x = p.x().expect("affine point");
    let a = x.numer();
    let e2 = x.denom();
    // a^2 + 2N e^4 with e^4 = (e^2)^2.
    let core = a * a + &two_n * e2 * e2;
    let ln_core = ln_big(&core);
    let ln2 = std::f64::consts::LN_2;
    PaperBounds {
        canonical,
        naive: naive_height(p),
        lower_bound: (ln2 + ln_2n) / 16.0,
        sandwich_lo: 0.25 * (ln_core - ln_2n),
        sandwich_hi: 0.25 * ln_core + ln2 / 12.0,
        weil_diff_lo: -0.25 * (ln2 + ln_2n),
        weil_diff_hi: 0.25 * (two_n.to_f64().map_or(ln_2n, |v| (v + 1.0).ln())) + ln2 / 12.0,
    }
}

/// True iff `-1/4 log(4N) <= hhat(P) - 1/2 h(P) <= 1/4 log(2N+1) + 1/12 log 2`.
pub fn height_difference_check(curve: &CurveE, p: &CurvePoint) -> Result<bool, HeightError> {
    let report = canonical_height(curve, p, HeightMethod::LocalSum)?;
    Ok(paper_bounds(curve, p, report.canonical).weil_difference_holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, rat_int};

    fn toy() -> CurveE {
        CurveE::e(BigInt::from(5)) // y^2 = x^3 - 10x
    }

    fn p0() -> CurvePoint {
        CurvePoint::affine(rat_int(-1), rat_int(3))
    }

    #[test]
    fn both_methods_agree_on_the_toy_point() {
        let e = toy();
        let lim = canonical_height(&e, &p0(), HeightMethod::Limit).unwrap();
        let ls = canonical_height(&e, &p0(), HeightMethod::LocalSum).unwrap();
        assert!((lim.canonical - ls.canonical).abs() < 1e-6);
        assert!((lim.limit_value - lim.local_sum_value).abs() < 1e-6);
        assert!(lim.canonical > 0.0);
        // Lower bound 1/16 log 40.
        assert!(lim.canonical >= (40f64).ln() / 16.0);
    }

    #[test]
    fn quadraticity_under_doubling_and_tripling() {
        let e = toy();
        let p = p0();
        let h1 = canonical_height(&e, &p, HeightMethod::LocalSum).unwrap().canonical;
        let p2 = e.double(&p);
        let h2 = canonical_height(&e, &p2, HeightMethod::LocalSum).unwrap().canonical;
        assert!((h2 - 4.0 * h1).abs() < 1e-6, "h(2P) = {h2}, 4h(P) = {}", 4.0 * h1);
        let p3 = e.mul(3, &p);
        let h3 = canonical_height(&e, &p3, HeightMethod::LocalSum).unwrap().canonical;
        assert!((h3 - 9.0 * h1).abs() < 1e-5);
    }

    #[test]
    fn naive_height_examples() {
        assert_eq!(naive_height(&p0()), 0.0); // max(1, 1) = 1
        let p = CurvePoint::affine(rat(121, 36), rat(451, 216));
        assert!((naive_height(&p) - 0.5 * 121f64.ln()).abs() < 1e-12);
        assert_eq!(naive_height(&CurvePoint::Infinity), 0.0);
    }

    #[test]
    fn torsion_is_rejected() {
        let e = toy();
        assert_eq!(
            canonical_height(&e, &e.t_point(), HeightMethod::Limit),
            Err(HeightError::TorsionPoint)
        );
        assert_eq!(
            canonical_height(&e, &CurvePoint::Infinity, HeightMethod::LocalSum),
            Err(HeightError::TorsionPoint)
        );
    }

    #[test]
    fn sandwich_and_weil_difference_bounds() {
        let e = toy();
        for p in [p0(), e.double(&p0()), e.add(&p0(), &e.t_point()), e.mul(3, &p0())] {
            let h = canonical_height(&e, &p, HeightMethod::LocalSum).unwrap().canonical;
            let bounds = paper_bounds(&e, &p, h);
            assert!(bounds.all_hold(), "bounds fail at {p}: {bounds:?}");
        }
        assert!(height_difference_check(&e, &p0()).unwrap());
    }

    #[test]
    fn archimedean_part_sits_in_the_stated_window() {
        // 0 <= lambda_inf - 1/4 log(x^2 + 2N) + 1/12 log|Delta| <= 1/12 log 2.
        let e = toy();
        for p in [p0(), e.double(&p0()), e.add(&p0(), &e.t_point())] {
            let lam = archimedean_local(&e, &[5], &p).unwrap();
            let x = p.x().unwrap();
            let xf = x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap();
            let anchor = 0.25 * (xf * xf + 10.0).ln() - ln_big(&e.discriminant().abs()) / 12.0;
            let slack = lam - anchor;
            assert!(
                (-1e-12..=std::f64::consts::LN_2 / 12.0 + 1e-12).contains(&slack),
                "slack {slack} out of window at {p}"
            );
        }
    }

    #[test]
    fn larger_point_heights_stay_consistent() {
        // 4P and 5P on the toy curve already have sizable coordinates;
        // the two routes must still agree tightly.
        let e = toy();
        for k in [3i64, 4, 5] {
            let p = e.mul(k, &p0());
            let rep = canonical_height(&e, &p, HeightMethod::Limit).unwrap();
            assert!(
                (rep.limit_value - rep.local_sum_value).abs() < 1e-6,
                "k = {k}: {} vs {}",
                rep.limit_value,
                rep.local_sum_value
            );
        }
    }
}
