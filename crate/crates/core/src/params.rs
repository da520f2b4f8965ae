//! Classification of `(p, q)` into the five congruence cases, membership
//! testing and minimal search for the auxiliary parameter `r`, and the
//! statistics table backing the `r = O(log^4 D)` observation.
//!
//! The case table is asymmetric in `p` and `q`: cases 1-3 need the prime
//! called `p` to satisfy `p != 1 (mod 8)` and case 4 needs `p == 1
//! (mod 8)`. `classify` therefore swaps the roles silently when required
//! and records the swap; when both orderings qualify the input order is
//! kept, so results are deterministic in the input.

use crate::arith::{self, ArithError};
use crate::certificate::{big_to_string, Check, CheckRecord};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("p and q must be distinct")]
    NotDistinct,
    #[error("r = {r} is not in A_D: {reason}")]
    NotInAD { r: u64, reason: String },
    #[error("no member of A_D found up to the search bound {bound}")]
    Exhausted { bound: u64 },
    #[error("unsupported case: the class a_m is undefined for m = 1 (mod 8) (case {0:?})")]
    UnsupportedCase(CaseTag),
    #[error("invalid curve parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The five mutually exclusive congruence cases for `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    /// `D = 7 (mod 8)`, `p != 1 (mod 8)`; r is a single prime.
    C1,
    /// `D = 3, 5 (mod 8)`, `p != 1 (mod 8)`; r is a single prime.
    C2,
    /// `D = 1 (mod 8)`, `p != 1 (mod 8)`; r is a single prime.
    C3,
    /// `D != 1 (mod 8)`, `p = 1 (mod 8)`; r is a single prime.
    C4,
    /// `D = 1 (mod 8)`, `p = 1 (mod 8)`; r is a product of two primes.
    C5,
}

/// The shape of an admissible parameter `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RShape {
    SinglePrime,
    /// `l1 * l2` with `l1 = 3 (mod 8)` and `l2 = 7 (mod 8)`.
    ProductOfTwo,
}

/// Outcome of classification: the case tag plus the role assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ADCase {
    pub tag: CaseTag,
    /// The prime playing the role of `p` in the case conditions.
    pub p_role: u64,
    /// The prime playing the role of `q`.
    pub q_role: u64,
    /// Whether the roles are swapped relative to the input order.
    pub swapped: bool,
}

impl ADCase {
    pub fn shape(&self) -> RShape {
        match self.tag {
            CaseTag::C5 => RShape::ProductOfTwo,
            _ => RShape::SinglePrime,
        }
    }
}

/// A replayable certificate that `r` belongs to `A_D`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RCertificate {
    pub r: u64,
    pub case: ADCase,
    pub checks: Vec<CheckRecord>,
}

/// The residue map `a`: 3 -> 5, 7 -> 5, 5 -> 3. Undefined at 1.
pub fn abar(c: u64) -> Result<u64, ParamsError> {
    match c {
        3 | 7 => Ok(5),
        5 => Ok(3),
        _ => Err(ParamsError::InvalidParameter(format!(
            "a_m is defined only for m in {{3, 5, 7}} mod 8, got {c}"
        ))),
    }
}

fn require_odd_prime(n: u64) -> Result<(), ParamsError> {
    if n == 2 || !arith::is_prime(n) {
        return Err(ParamsError::NotAnOddPrime(n));
    }
    Ok(())
}

/// Classify `(p, q)` into its case, fixing the role assignment.
pub fn classify(p: u64, q: u64) -> Result<ADCase, ParamsError> {
    require_odd_prime(p)?;
    require_odd_prime(q)?;
    if p == q {
        return Err(ParamsError::NotDistinct);
    }
    let d8 = ((p % 8) * (q % 8)) % 8;
    let p8 = p % 8;
    let q8 = q % 8;
    let case = if p8 == 1 && q8 == 1 {
        // Then D = 1 (mod 8) automatically.
        ADCase { tag: CaseTag::C5, p_role: p, q_role: q, swapped: false }
    } else if p8 == 1 || q8 == 1 {
        // Exactly one of the two is 1 mod 8; it takes the p role, and
        // D = q_role != 1 (mod 8) automatically.
        debug_assert_ne!(d8, 1);
        let swapped = p8 != 1;
        let (pr, qr) = if swapped { (q, p) } else { (p, q) };
        ADCase { tag: CaseTag::C4, p_role: pr, q_role: qr, swapped }
    } else {
        // Neither prime is 1 mod 8, so either ordering satisfies the
        // case-1..3 role condition; the input order is kept.
        let tag = match d8 {
            7 => CaseTag::C1,
            3 | 5 => CaseTag::C2,
            1 => CaseTag::C3,
            _ => unreachable!("odd D has odd residue mod 8"),
        };
        ADCase { tag, p_role: p, q_role: q, swapped: false }
    };
    // The class a_m is undefined at m = 1 mod 8. For cases 3 and 4 the
    // congruences force q_role != 1 mod 8, so this is unreachable; it is
    // checked anyway rather than silently guessing a value.
    if matches!(case.tag, CaseTag::C3 | CaseTag::C4) && case.q_role % 8 == 1 {
        return Err(ParamsError::UnsupportedCase(case.tag));
    }
    Ok(case)
}

struct ConditionSet {
    checks: Vec<CheckRecord>,
    failure: Option<String>,
}

impl ConditionSet {
    fn new() -> Self {
        ConditionSet { checks: Vec::new(), failure: None }
    }

    fn require(&mut self, ok: bool, description: &str, check: Check) {
        self.checks.push(CheckRecord::new(description, check));
        if self.failure.is_none() && !ok {
            self.failure = Some(description.to_string());
        }
    }
}

fn jacobi_check(set: &mut ConditionSet, desc: &str, a: &BigInt, n: u64, expected: i8) {
    let got = arith::jacobi(a, &BigInt::from(n)).expect("odd positive modulus");
    set.require(
        got == expected,
        desc,
        Check::Jacobi { a: big_to_string(a), n: n.to_string(), expected },
    );
}

fn congruence_check(set: &mut ConditionSet, desc: &str, value: &BigInt, modulus: u64, residue: u64) {
    let got = value.mod_floor(&BigInt::from(modulus)).to_u64() == Some(residue);
    set.require(
        got,
        desc,
        Check::CongruenceMod { value: big_to_string(value), modulus, residue },
    );
}

/// Test whether `r` is an admissible parameter for `(p, q)`, producing a
/// replayable certificate on success and the first failing condition
/// otherwise.
pub fn is_in_ad(p: u64, q: u64, r: u64) -> Result<RCertificate, ParamsError> {
    let case = classify(p, q)?;
    let d = BigInt::from(p) * BigInt::from(q);
    let reject = |reason: String| ParamsError::NotInAD { r, reason };

    if r < 3 || r % 2 == 0 {
        return Err(reject("r must be an odd integer >= 3".into()));
    }
    let rb = BigInt::from(r);
    if !rb.gcd(&(BigInt::from(2) * &d)).is_one() {
        return Err(reject("r must be coprime to 2D".into()));
    }

    let mut set = ConditionSet::new();
    set.require(
        true,
        "gcd(r, 2D) = 1",
        Check::Coprime { a: r.to_string(), b: big_to_string(&(BigInt::from(2) * &d)) },
    );

    match case.tag {
        CaseTag::C1 | CaseTag::C2 | CaseTag::C3 | CaseTag::C4 => {
            if !arith::is_prime(r) {
                return Err(reject("r must be a single prime in this case".into()));
            }
            set.require(true, "r is prime", Check::IsPrime { n: r.to_string(), expected: true });
            match case.tag {
                CaseTag::C1 => {
                    congruence_check(&mut set, "l = q (mod 8)", &rb, 8, case.q_role % 8);
                    jacobi_check(&mut set, "(D/l) = -1", &d, r, -1);
                    jacobi_check(&mut set, "(l/p) = +1", &rb, case.p_role, 1);
                }
                CaseTag::C2 => {
                    congruence_check(&mut set, "Dl = 1 (mod 8)", &(&d * &rb), 8, 1);
                    jacobi_check(&mut set, "(D/l) = -1", &d, r, -1);
                    jacobi_check(&mut set, "(l/p) = +1", &rb, case.p_role, 1);
                }
                CaseTag::C3 => {
                    let target = abar(case.q_role % 8)?;
                    congruence_check(&mut set, "l = a_q (mod 8)", &rb, 8, target);
                    jacobi_check(&mut set, "(D/l) = -1", &d, r, -1);
                }
                CaseTag::C4 => {
                    let target = abar(case.q_role % 8)?;
                    congruence_check(&mut set, "l = a_q (mod 8)", &rb, 8, target);
                    jacobi_check(&mut set, "(D/l) = -1", &d, r, -1);
                    jacobi_check(&mut set, "(p/l) = -1", &BigInt::from(case.p_role), r, -1);
                }
                CaseTag::C5 => unreachable!(),
            }
        }
        CaseTag::C5 => {
            let factors = arith::factor_with_known(&rb, &[])?;
            if factors.len() != 2 || factors.iter().any(|(_, e)| *e != 1) {
                return Err(reject("r must be a product of two distinct primes".into()));
            }
            let f0 = factors[0].0.to_u64().unwrap();
            let f1 = factors[1].0.to_u64().unwrap();
            // The labels are forced by the residues mod 8.
            let (l1, l2) = match (f0 % 8, f1 % 8) {
                (3, 7) => (f0, f1),
                (7, 3) => (f1, f0),
                _ => {
                    return Err(reject(
                        "the two primes must be 3 and 7 (mod 8) in some order".into(),
                    ))
                }
            };
            set.require(
                true,
                "r = l1 * l2 with l1, l2 prime",
                Check::ProductIs {
                    factors: vec![l1.to_string(), l2.to_string()],
                    expected: r.to_string(),
                },
            );
            congruence_check(&mut set, "l1 = 3 (mod 8)", &BigInt::from(l1), 8, 3);
            congruence_check(&mut set, "l2 = 7 (mod 8)", &BigInt::from(l2), 8, 7);
            jacobi_check(&mut set, "(D/l1) = -1", &d, l1, -1);
            jacobi_check(&mut set, "(D/l2) = -1", &d, l2, -1);
            jacobi_check(&mut set, "(l1*l2/p) = -1", &rb, case.p_role, -1);
        }
    }

    match set.failure {
        Some(reason) => Err(reject(reason)),
        None => Ok(RCertificate { r, case, checks: set.checks }),
    }
}

/// Quick pre-filter used by the search: the congruence part of the case
/// conditions, cheap enough to run before a primality test.
fn congruence_prefilter(case: &ADCase, l: u64) -> bool {
    match case.tag {
        CaseTag::C1 => l % 8 == case.q_role % 8,
        CaseTag::C2 => ((l % 8) * (case.p_role % 8) * (case.q_role % 8)) % 8 == 1,
        CaseTag::C3 | CaseTag::C4 => abar(case.q_role % 8).map(|t| l % 8 == t).unwrap_or(false),
        CaseTag::C5 => unreachable!("C5 is enumerated by products"),
    }
}

/// Find the smallest member of `A_D` by ascending enumeration: primes for
/// the single-prime cases, products `l1 * l2` in increasing product order
/// for case 5.
pub fn find_min_r(p: u64, q: u64, search_bound: u64) -> Result<RCertificate, ParamsError> {
    assert!(search_bound >= 3, "search bound must be at least 3");
    let case = classify(p, q)?;
    match case.shape() {
        RShape::SinglePrime => {
            let mut l = 3u64;
            while l <= search_bound {
                if congruence_prefilter(&case, l)
                    && p % l != 0
                    && q % l != 0
                    && arith::is_prime(l)
                {
                    if let Ok(cert) = is_in_ad(p, q, l) {
                        return Ok(cert);
                    }
                }
                l += 2;
            }
            Err(ParamsError::Exhausted { bound: search_bound })
        }
        RShape::ProductOfTwo => {
            let limit = search_bound / 3;
            let sieve = prime_sieve(limit.max(7));
            let p3: Vec<u64> = sieve.iter().copied().filter(|&l| l % 8 == 3 && l != p && l != q).collect();
            let p7: Vec<u64> = sieve.iter().copied().filter(|&l| l % 8 == 7 && l != p && l != q).collect();
            if p3.is_empty() || p7.is_empty() {
                return Err(ParamsError::Exhausted { bound: search_bound });
            }
            // Enumerate the grid of products in increasing order.
            let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
            heap.push(Reverse((p3[0] * p7[0], 0, 0)));
            while let Some(Reverse((prod, i, j))) = heap.pop() {
                if prod > search_bound {
                    break;
                }
                if let Ok(cert) = is_in_ad(p, q, prod) {
                    return Ok(cert);
                }
                if j + 1 < p7.len() {
                    heap.push(Reverse((p3[i] * p7[j + 1], i, j + 1)));
                }
                if j == 0 && i + 1 < p3.len() {
                    heap.push(Reverse((p3[i + 1] * p7[0], i + 1, 0)));
                }
            }
            Err(ParamsError::Exhausted { bound: search_bound })
        }
    }
}

fn prime_sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// One row of the minimal-r table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MinRRow {
    pub p: u64,
    pub q: u64,
    pub d: String,
    pub case: CaseTag,
    pub r_min: u64,
    pub log4_d: f64,
    /// `r_min / log^4 D`
    pub ratio: f64,
}

/// Minimal-r statistics over a sample of pairs.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MinRTable {
    pub rows: Vec<MinRRow>,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

/// Run [`find_min_r`] over a sample and normalize by `log^4 D`.
/// Propagates the first failure ("exhausted", invalid pair, ...).
pub fn min_r_statistics(sample: &[(u64, u64)], search_bound: u64) -> Result<MinRTable, ParamsError> {
    let mut rows = Vec::with_capacity(sample.len());
    for &(p, q) in sample {
        let cert = find_min_r(p, q, search_bound)?;
        let d = BigInt::from(p) * BigInt::from(q);
        let log4_d = arith::ln_big(&d).powi(4);
        rows.push(MinRRow {
            p,
            q,
            d: big_to_string(&d),
            case: cert.case.tag,
            r_min: cert.r,
            log4_d,
            ratio: cert.r as f64 / log4_d,
        });
    }
    let (mut max_ratio, mut sum) = (0f64, 0f64);
    for row in &rows {
        max_ratio = max_ratio.max(row.ratio);
        sum += row.ratio;
    }
    let mean_ratio = if rows.is_empty() { 0.0 } else { sum / rows.len() as f64 };
    Ok(MinRTable { rows, max_ratio, mean_ratio })
}

/// A place of the rationals relevant to the curve: the real place, 2, or
/// an odd prime dividing `rD`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Infinity,
    Finite(u64),
}

impl Place {
    pub fn as_finite(&self) -> Option<u64> {
        match self {
            Place::Infinity => None,
            Place::Finite(t) => Some(*t),
        }
    }
}

impl std::fmt::Display for Place {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Place::Infinity => write!(f, "inf"),
            Place::Finite(t) => write!(f, "{t}"),
        }
    }
}

/// The data defining the curve `E_{2N}: y^2 = x^3 - 2Nx` with `N = rD`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveParams {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    /// Prime factorization of `r` (one or two primes, each once).
    pub r_factors: Vec<u64>,
    /// `D = pq`
    pub d_value: BigInt,
    /// `N = rD`
    pub n_value: BigInt,
    /// `S = {infinity, 2} + the odd primes dividing rD`, each exactly once.
    pub places: Vec<Place>,
}

impl CurveParams {
    /// Validate and assemble curve parameters. `r` need not be a member
    /// of `A_D`; it must be odd, squarefree and coprime to `2D`.
    pub fn new(p: u64, q: u64, r: u64) -> Result<Self, ParamsError> {
        require_odd_prime(p)?;
        require_odd_prime(q)?;
        if p == q {
            return Err(ParamsError::NotDistinct);
        }
        if r == 0 || r % 2 == 0 {
            return Err(ParamsError::InvalidParameter(format!(
                "r = {r} must be a positive odd integer"
            )));
        }
        let d_value = BigInt::from(p) * BigInt::from(q);
        let rb = BigInt::from(r);
        if !rb.gcd(&d_value).is_one() {
            return Err(ParamsError::InvalidParameter(format!("r = {r} shares a factor with D")));
        }
        let r_factor_pairs = arith::factor_with_known(&rb, &[])?;
        if r_factor_pairs.iter().any(|(_, e)| *e != 1) {
            return Err(ParamsError::InvalidParameter(format!("r = {r} is not squarefree")));
        }
        let r_factors: Vec<u64> =
            r_factor_pairs.iter().map(|(f, _)| f.to_u64().expect("r fits in u64")).collect();
        let n_value = &rb * &d_value;
        let mut odd: Vec<u64> = r_factors.iter().copied().chain([p, q]).collect();
        odd.sort_unstable();
        let mut places = vec![Place::Infinity, Place::Finite(2)];
        places.extend(odd.into_iter().map(Place::Finite));
        Ok(CurveParams { p, q, r, r_factors, d_value, n_value, places })
    }

    /// Construct from a certified parameter.
    pub fn from_certificate(p: u64, q: u64, cert: &RCertificate) -> Result<Self, ParamsError> {
        Self::new(p, q, cert.r)
    }

    /// The odd primes dividing `rD`, ascending.
    pub fn odd_places(&self) -> impl Iterator<Item = u64> + '_ {
        self.places.iter().filter_map(|pl| pl.as_finite()).filter(|&t| t != 2)
    }

    /// `2N = 2rD`
    pub fn two_n(&self) -> BigInt {
        BigInt::from(2) * &self.n_value
    }

    pub fn curve(&self) -> crate::curve::CurveE {
        crate::curve::CurveE::e(self.n_value.clone())
    }

    pub fn curve_prime(&self) -> crate::curve::CurveE {
        crate::curve::CurveE::e_prime(self.n_value.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abar_values() {
        assert_eq!(abar(3).unwrap(), 5);
        assert_eq!(abar(7).unwrap(), 5);
        assert_eq!(abar(5).unwrap(), 3);
        assert!(abar(1).is_err());
    }

    #[test]
    fn classify_examples() {
        // D = 15 = 7 (mod 8), 3 != 1 (mod 8).
        let c = classify(3, 5).unwrap();
        assert_eq!(c.tag, CaseTag::C1);
        assert_eq!((c.p_role, c.q_role, c.swapped), (3, 5, false));
        // D = 21 = 5 (mod 8).
        assert_eq!(classify(3, 7).unwrap().tag, CaseTag::C2);
        // D = 51 = 3 (mod 8), 17 = 1 (mod 8): case 4 with p-role 17.
        let c = classify(17, 3).unwrap();
        assert_eq!(c.tag, CaseTag::C4);
        assert_eq!((c.p_role, c.q_role, c.swapped), (17, 3, false));
        let c = classify(3, 17).unwrap();
        assert_eq!(c.tag, CaseTag::C4);
        assert_eq!((c.p_role, c.q_role, c.swapped), (17, 3, true));
        // D = 33 = 1 (mod 8), 3 != 1: case 3.
        assert_eq!(classify(3, 11).unwrap().tag, CaseTag::C3);
        // Both 1 mod 8: case 5.
        assert_eq!(classify(17, 41).unwrap().tag, CaseTag::C5);
        // A prime = 1 (mod 8) always takes the p role: (17, 7) is case 4
        // even though D = 119 = 7 (mod 8) would fit the case-1 congruence.
        let c = classify(17, 7).unwrap();
        assert_eq!(c.tag, CaseTag::C4);
        assert_eq!((c.p_role, c.q_role, c.swapped), (17, 7, false));
        let c = classify(7, 17).unwrap();
        assert_eq!(c.tag, CaseTag::C4);
        assert_eq!((c.p_role, c.q_role, c.swapped), (17, 7, true));
    }

    #[test]
    fn classify_rejects_bad_input() {
        assert!(matches!(classify(4, 5), Err(ParamsError::NotAnOddPrime(4))));
        assert!(matches!(classify(2, 5), Err(ParamsError::NotAnOddPrime(2))));
        assert!(matches!(classify(5, 5), Err(ParamsError::NotDistinct)));
    }

    #[test]
    fn cases_3_and_4_never_need_abar_at_one() {
        // The congruences force q_role != 1 (mod 8) in cases 3 and 4; check
        // over everything classifiable below 500.
        let primes: Vec<u64> = (3..500).filter(|&n| arith::is_prime(n)).collect();
        for &p in &primes {
            for &q in &primes {
                if p == q {
                    continue;
                }
                let case = classify(p, q).unwrap();
                if matches!(case.tag, CaseTag::C3 | CaseTag::C4) {
                    assert_ne!(case.q_role % 8, 1, "({p}, {q})");
                }
            }
        }
    }

    #[test]
    fn membership_examples() {
        // (3, 5, 13): 13 = 5 = q (mod 8), (15/13) = -1, (13/3) = +1.
        let cert = is_in_ad(3, 5, 13).unwrap();
        assert_eq!(cert.r, 13);
        assert_eq!(cert.case.tag, CaseTag::C1);
        assert!(crate::certificate::replay_all(&cert.checks).unwrap().is_none());
        // (3, 5, 5): 5 divides D.
        assert!(matches!(is_in_ad(3, 5, 5), Err(ParamsError::NotInAD { .. })));
        // (3, 7, 13): 21 * 13 = 273 = 1 (mod 8), (21/13) = -1, (13/3) = +1.
        let cert = is_in_ad(3, 7, 13).unwrap();
        assert_eq!(cert.case.tag, CaseTag::C2);
        // Wrong residue class.
        assert!(is_in_ad(3, 5, 11).is_err());
        // Even and non-squarefree rejections.
        assert!(is_in_ad(3, 5, 9).is_err());
    }

    #[test]
    fn find_min_r_fixtures() {
        assert_eq!(find_min_r(3, 5, 10_000).unwrap().r, 13);
        assert_eq!(find_min_r(3, 7, 10_000).unwrap().r, 13);
        assert_eq!(find_min_r(17, 3, 10_000).unwrap().r, 37);
        assert_eq!(find_min_r(5, 7, 10_000).unwrap().r, 11);
        assert_eq!(find_min_r(3, 11, 10_000).unwrap().r, 5);
        // Case 5: products of two primes, enumerated by increasing product.
        assert_eq!(find_min_r(17, 41, 100_000).unwrap().r, 437); // 19 * 23
    }

    #[test]
    fn find_min_r_is_monotone() {
        // No smaller candidate of the correct shape passes is_in_ad.
        for (p, q) in [(3u64, 5u64), (3, 7), (17, 3), (5, 7), (3, 11)] {
            let r = find_min_r(p, q, 10_000).unwrap().r;
            for smaller in 3..r {
                assert!(
                    is_in_ad(p, q, smaller).is_err(),
                    "({p},{q}): {smaller} < {r} should not be admissible"
                );
            }
        }
        let r = find_min_r(17, 41, 100_000).unwrap().r;
        for smaller in 3..r {
            assert!(is_in_ad(17, 41, smaller).is_err());
        }
    }

    #[test]
    fn certified_r_keeps_2rd_squarefree() {
        for (p, q) in [(3u64, 5u64), (3, 7), (17, 3), (17, 41)] {
            let cert = find_min_r(p, q, 100_000).unwrap();
            let two_rd = BigInt::from(2) * BigInt::from(p) * BigInt::from(q) * BigInt::from(cert.r);
            assert!(arith::is_squarefree(&two_rd, &[p, q]).unwrap());
            assert!(BigInt::from(cert.r)
                .gcd(&(BigInt::from(2) * BigInt::from(p) * BigInt::from(q)))
                .is_one());
        }
    }

    #[test]
    fn case5_members_are_5_mod_8() {
        let cert = find_min_r(17, 41, 100_000).unwrap();
        assert_eq!(cert.r % 8, 5); // 3 * 7 = 21 = 5 (mod 8)
    }

    #[test]
    fn exhausted_is_reported() {
        assert!(matches!(
            find_min_r(3, 5, 11),
            Err(ParamsError::Exhausted { bound: 11 })
        ));
    }

    #[test]
    fn statistics_table() {
        let table = min_r_statistics(&[(3, 5)], 10_000).unwrap();
        assert_eq!(table.rows.len(), 1);
        let row = &table.rows[0];
        assert_eq!(row.r_min, 13);
        let expect = 13.0 / (15f64).ln().powi(4);
        assert!((row.ratio - expect).abs() < 1e-12);
        assert!(min_r_statistics(&[], 10_000).unwrap().rows.is_empty());
    }

    #[test]
    fn curve_params_validation() {
        let params = CurveParams::new(3, 5, 13).unwrap();
        assert_eq!(params.n_value, BigInt::from(195));
        assert_eq!(
            params.places,
            vec![
                Place::Infinity,
                Place::Finite(2),
                Place::Finite(3),
                Place::Finite(5),
                Place::Finite(13)
            ]
        );
        assert!(CurveParams::new(3, 5, 6).is_err()); // even r
        assert!(CurveParams::new(3, 5, 9).is_err()); // not squarefree
        assert!(CurveParams::new(3, 5, 15).is_err()); // shares factor with D
        // r = 1 is a valid curve even though A_D never contains it.
        let unit = CurveParams::new(3, 5, 1).unwrap();
        assert_eq!(unit.n_value, BigInt::from(15));
        assert_eq!(unit.r_factors, Vec::<u64>::new());
    }
}
