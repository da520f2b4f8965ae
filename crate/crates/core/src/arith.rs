//! Big-integer and exact-rational arithmetic primitives: Jacobi/Legendre
//! symbols, p-adic valuations, primality, and squarefreeness.
//!
//! Everything here is a pure function on immutable values. The bound for
//! trial division is fixed at 10^6: the pipeline only ever factors numbers
//! whose prime divisors are known in context or small, never a hard
//! unknown integer (recovering the one hard factorization is the point of
//! the whole artifact, not a utility concern).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational numbers, always stored in lowest terms with a positive
/// denominator. Zero is `0/1`.
pub type Rat = BigRational;

/// Trial-division bound used by [`factor_with_known`] and friends.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("jacobi symbol needs an odd positive modulus, got {0}")]
    BadJacobiModulus(BigInt),
    #[error("legendre symbol needs a prime modulus, got {0}")]
    BadLegendreModulus(BigInt),
    #[error("cannot fully factor {0}: cofactor {1} survives trial division to 10^6 and the known primes")]
    IncompleteFactorization(BigInt, BigInt),
}

/// A t-adic valuation; `Infinite` is the sentinel for `val(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    /// The finite value, panicking on the zero sentinel.
    pub fn finite(self) -> i64 {
        match self {
            Valuation::Finite(v) => v,
            Valuation::Infinite => panic!("valuation of zero has no finite value"),
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`, by the binary algorithm.
///
/// No factorization of either argument is needed. Equals the Legendre
/// symbol whenever `n` is prime.
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i8, ArithError> {
    if !n.is_positive() || n.is_even() {
        return Err(ArithError::BadJacobiModulus(n.clone()));
    }
    let mut num = a.mod_floor(n);
    let mut den = n.clone();
    let mut acc: i8 = 1;
    loop {
        num = num.mod_floor(&den);
        if num.is_zero() {
            return Ok(if den.is_one() { acc } else { 0 });
        }
        // Pull out factors of two; (2/den) depends on den mod 8.
        let twos = num.trailing_zeros().unwrap_or(0);
        if twos > 0 {
            num >>= twos;
            if twos % 2 == 1 {
                let d8 = (&den % 8u32).to_u8().unwrap();
                if d8 == 3 || d8 == 5 {
                    acc = -acc;
                }
            }
        }
        if num.is_one() {
            return Ok(acc);
        }
        // num and den odd: quadratic reciprocity.
        if (&num % 4u32).to_u8().unwrap() == 3 && (&den % 4u32).to_u8().unwrap() == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

/// Jacobi symbol with small operands.
pub fn jacobi_u64(a: i64, n: u64) -> Result<i8, ArithError> {
    jacobi(&BigInt::from(a), &BigInt::from(n))
}

/// Legendre symbol `(a/p)`. The modulus must be prime; this is checked.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8, ArithError> {
    if !is_prime(p) || p == 2 {
        return Err(ArithError::BadLegendreModulus(BigInt::from(p)));
    }
    jacobi(a, &BigInt::from(p))
}

/// t-adic valuation of a nonzero integer.
pub fn val_int(n: &BigInt, t: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero integer");
    let t = BigInt::from(t);
    let mut n = n.clone();
    let mut v = 0u32;
    loop {
        let (q, r) = n.div_rem(&t);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// t-adic valuation `v_t(x)` of a rational, with `val(0) = +infinity`.
///
/// Additive under multiplication: `val(xy) = val(x) + val(y)`.
pub fn val(x: &Rat, t: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(val_int(x.numer(), t) as i64 - val_int(x.denom(), t) as i64)
}

/// Deterministic Miller–Rabin for `n < 2^64`.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known
/// to be exact for all 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision integers: deterministic below 2^64,
/// Miller–Rabin with 40 fixed-seed rounds above.
pub fn is_prime_big(n: &BigInt) -> bool {
    if !n.is_positive() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let n_u = n.to_biguint().unwrap();
    if n_u.is_even() {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = &n_u - &one;
    let s = n_minus_1.trailing_zeros().unwrap();
    let d = &n_minus_1 >> s;
    // Deterministic base schedule: a simple LCG keeps runs reproducible.
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    'round: for _ in 0..40 {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = BigUint::from(2u64 + state % (u64::MAX - 3));
        let mut x = a.modpow(&d, &n_u);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % &n_u;
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Full factorization of a positive integer using the caller's known
/// primes plus trial division to 10^6.
///
/// Fails with [`ArithError::IncompleteFactorization`] if a composite
/// cofactor survives, rather than guessing.
pub fn factor_with_known(n: &BigInt, known: &[u64]) -> Result<Vec<(BigInt, u32)>, ArithError> {
    assert!(n.is_positive(), "factor_with_known wants a positive integer");
    let mut rest = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, e: u32, out: &mut Vec<(BigInt, u32)>| {
        if e > 0 {
            out.push((p, e));
        }
    };
    let divide_out = |rest: &mut BigInt, p: &BigInt| -> u32 {
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(p);
            if !r.is_zero() {
                return e;
            }
            *rest = q;
            e += 1;
        }
    };
    let mut known_sorted: Vec<u64> = known.iter().copied().filter(|&p| p > 1).collect();
    known_sorted.sort_unstable();
    known_sorted.dedup();
    for &p in &known_sorted {
        let pb = BigInt::from(p);
        let e = divide_out(&mut rest, &pb);
        push(pb, e, &mut out);
    }
    let mut t: u64 = 2;
    while t <= TRIAL_DIVISION_BOUND {
        if rest.is_one() {
            break;
        }
        let tb = BigInt::from(t);
        if (&tb * &tb) > rest {
            break;
        }
        if !known_sorted.contains(&t) {
            let e = divide_out(&mut rest, &tb);
            push(tb, e, &mut out);
        }
        t = if t == 2 { 3 } else { t + 2 };
    }
    if !rest.is_one() {
        if is_prime_big(&rest) {
            push(rest.clone(), 1, &mut out);
        } else {
            return Err(ArithError::IncompleteFactorization(n.clone(), rest));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    // Merge exponents in case a known prime was also hit by trial division.
    let mut merged: Vec<(BigInt, u32)> = Vec::with_capacity(out.len());
    for (p, e) in out {
        match merged.last_mut() {
            Some((lp, le)) if *lp == p => *le += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(merged)
}

/// True iff no prime divides `n` twice. `known_factors` supplements trial
/// division so the factorization always completes at the scales we run.
pub fn is_squarefree(n: &BigInt, known_factors: &[u64]) -> Result<bool, ArithError> {
    let factors = factor_with_known(n, known_factors)?;
    Ok(factors.iter().all(|(_, e)| *e == 1))
}

/// Integer square root of a non-negative integer via `BigUint::sqrt`,
/// returned only when exact.
pub fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational, if it is a perfect square.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = sqrt_exact(x.numer())?;
    let d = sqrt_exact(x.denom())?;
    Some(Rat::new(n, d))
}

/// Natural log of `|n|` for a nonzero big integer, accurate to roughly
/// f64 precision regardless of magnitude.
pub fn ln_big(n: &BigInt) -> f64 {
    assert!(!n.is_zero());
    let mag = n.magnitude();
    let bits = mag.bits();
    if bits <= 52 {
        return (mag.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 52;
    let top = (mag >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `|x|` for a nonzero rational.
pub fn ln_rat_abs(x: &Rat) -> f64 {
    ln_big(x.numer()) - ln_big(x.denom())
}

/// Convenience constructor for a rational from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Convenience constructor for an integral rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}
