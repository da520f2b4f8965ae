//! Exact group law and 2-isogeny arithmetic on the curve pair
//! `E: y^2 = x^3 - 2Nx` and `E': y^2 = x^3 + 8Nx` over the rationals.
//!
//! Affine coordinates with exact rationals throughout; exactness is the
//! test oracle, so there is no projective caching and no tolerance
//! anywhere in this module.

use crate::arith::Rat;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CurveError {
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("operation is undefined at {0}")]
    ExcludedPoint(String),
}

/// Which member of the isogenous pair a [`CurveE`] is.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    /// `y^2 = x^3 - 2Nx`
    E,
    /// `y^2 = x^3 + 8Nx`
    EPrime,
}

/// One of the curves `y^2 = x^3 + Ax` with `A = -2N` or `A = +8N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveE {
    kind: CurveKind,
    /// The positive integer `N`, with `2N` squarefree.
    n: BigInt,
    /// The coefficient `A`.
    a: BigInt,
}

impl CurveE {
    /// The curve `y^2 = x^3 - 2Nx`.
    pub fn e(n: BigInt) -> Self {
        assert!(n.is_positive(), "N must be positive");
        let a = BigInt::from(-2) * &n;
        CurveE { kind: CurveKind::E, n, a }
    }

    /// The 2-isogenous curve `y^2 = x^3 + 8Nx`.
    pub fn e_prime(n: BigInt) -> Self {
        assert!(n.is_positive(), "N must be positive");
        let a = BigInt::from(8) * &n;
        CurveE { kind: CurveKind::EPrime, n, a }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// The coefficient `A` in `y^2 = x^3 + Ax`.
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Discriminant `-64 A^3`; nonzero for every valid curve.
    pub fn discriminant(&self) -> BigInt {
        BigInt::from(-64) * &self.a * &self.a * &self.a
    }

    pub fn is_on_curve(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => {
                let a = Rat::from(self.a.clone());
                y * y == x * x * x + a * x
            }
        }
    }

    fn assert_on_curve(&self, p: &CurvePoint) {
        debug_assert!(self.is_on_curve(p), "point off curve: {p:?}");
    }

    /// The rational 2-torsion point `T = (0, 0)`.
    pub fn t_point(&self) -> CurvePoint {
        CurvePoint::affine(Rat::zero(), Rat::zero())
    }

    /// The full rational torsion subgroup, `{O, T}` when `2N` is squarefree.
    pub fn torsion(&self) -> Vec<CurvePoint> {
        vec![CurvePoint::Infinity, self.t_point()]
    }

    /// Chord-and-tangent addition. `Infinity` is the identity.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.assert_on_curve(p);
        self.assert_on_curve(q);
        let (x1, y1) = match p {
            CurvePoint::Infinity => return q.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Infinity => return p.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let slope = if x1 == x2 {
            if y1 == y2 && !y1.is_zero() {
                // Tangent: (3x^2 + A) / 2y.
                let a = Rat::from(self.a.clone());
                (Rat::from(BigInt::from(3)) * x1 * x1 + a) / (Rat::from(BigInt::from(2)) * y1)
            } else {
                // Vertical line: P + (-P) = O, and doubling a 2-torsion point.
                return CurvePoint::Infinity;
            }
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &slope * &slope - x1 - x2;
        let y3 = &slope * (x1 - &x3) - y1;
        let r = CurvePoint::affine(x3, y3);
        self.assert_on_curve(&r);
        r
    }

    /// Doubling; matches the closed-form duplication formula
    /// `x([2]P) = (x^4 + 4Nx^2 + 4N^2) / (4x^3 - 8Nx)` on `E`.
    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    pub fn negate(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine(x, y) => CurvePoint::affine(x.clone(), -y.clone()),
        }
    }

    /// `[k]P` by double-and-add; `mul(-k, P) = negate(mul(k, P))`.
    pub fn mul(&self, k: i64, p: &CurvePoint) -> CurvePoint {
        if k == 0 {
            return CurvePoint::Infinity;
        }
        let (mut k, base) = if k < 0 {
            (k.unsigned_abs(), self.negate(p))
        } else {
            (k as u64, p.clone())
        };
        let mut acc = CurvePoint::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.double(&pow);
            }
        }
        acc
    }

    /// Translation by the 2-torsion point: `P + T`, computed via the
    /// identity `x(P) * x(P + T) = A` (which is `-2N` on `E`).
    pub fn translate_t(&self, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        match p {
            CurvePoint::Infinity => Err(CurveError::ExcludedPoint("O".into())),
            CurvePoint::Affine(x, y) => {
                if x.is_zero() {
                    return Err(CurveError::ExcludedPoint("T".into()));
                }
                let r = self.add(p, &self.t_point());
                // x(P) x(P+T) = A exactly, by the chord through T.
                if let CurvePoint::Affine(xr, _) = &r {
                    debug_assert_eq!(x * xr, Rat::from(self.a.clone()));
                }
                let _ = y;
                Ok(r)
            }
        }
    }
}

/// The point at infinity or an affine point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurvePoint {
    Infinity,
    Affine(Rat, Rat),
}

impl CurvePoint {
    pub fn affine(x: Rat, y: Rat) -> Self {
        CurvePoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    /// True for `O` and `T = (0,0)`, the only rational torsion points.
    pub fn is_torsion(&self) -> bool {
        match self {
            CurvePoint::Infinity => true,
            CurvePoint::Affine(x, y) => x.is_zero() && y.is_zero(),
        }
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine(_, y) => Some(y),
        }
    }
}

impl std::fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// The 2-isogeny `phi: E -> E'`, `(x, y) -> (y^2/x^2, -y(2N + x^2)/x^2)`.
///
/// The kernel `{O, T}` maps to `Infinity`.
pub fn phi(e: &CurveE, p: &CurvePoint) -> CurvePoint {
    assert_eq!(e.kind(), CurveKind::E, "phi is defined on E");
    let (x, y) = match p {
        CurvePoint::Infinity => return CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => (x, y),
    };
    if x.is_zero() {
        return CurvePoint::Infinity;
    }
    let x2 = x * x;
    let two_n = Rat::from(BigInt::from(2) * e.n());
    let xi = (y * y) / &x2;
    let eta = -(y * (&two_n + &x2)) / &x2;
    let r = CurvePoint::affine(xi, eta);
    debug_assert!(CurveE::e_prime(e.n().clone()).is_on_curve(&r));
    r
}

/// The dual 2-isogeny `phihat: E' -> E`,
/// `(x, y) -> (y^2/4x^2, y(8N - x^2)/8x^2)`; `phihat . phi = [2]` on `E`.
pub fn phihat(e_prime: &CurveE, p: &CurvePoint) -> CurvePoint {
    assert_eq!(e_prime.kind(), CurveKind::EPrime, "phihat is defined on E'");
    let (x, y) = match p {
        CurvePoint::Infinity => return CurvePoint::Infinity,
        CurvePoint::Affine(x, y) => (x, y),
    };
    if x.is_zero() {
        return CurvePoint::Infinity;
    }
    let x2 = x * x;
    let eight_n = Rat::from(BigInt::from(8) * e_prime.n());
    let four = Rat::from(BigInt::from(4));
    let eight = Rat::from(BigInt::from(8));
    let xi = (y * y) / (&four * &x2);
    let eta = (y * (&eight_n - &x2)) / (&eight * &x2);
    let r = CurvePoint::affine(xi, eta);
    debug_assert!(CurveE::e(e_prime.n().clone()).is_on_curve(&r));
    r
}
