//! The Birch–Stephens global root number of `E_d: y^2 = x^3 - dx` and the
//! parity-conditional rank conclusion.
//!
//! For `d != 0 (mod 4)`,
//!
//! ```text
//!   W(E_d) = sgn(-d) * eps(d) * prod_{p^2 || d, p >= 3} (-1/p)
//! ```
//!
//! with `eps(d) = -1` for `d = 1, 3, 11, 13 (mod 16)` and `+1` for
//! `d = 2, 5, 6, 7, 9, 10, 14, 15 (mod 16)`. For squarefree even `d = 2N`
//! the sign is -1, eps is +1 and the ramified product is empty, so
//! `W = -1`: these curves have odd conjectural rank.
//!
//! Nothing here claims an unconditional rank. The certificate emitted by
//! [`conjectural_rank`] is explicitly conditional on the parity
//! conjecture.

use crate::arith::{self, ArithError};
use crate::certificate::big_string;
use crate::params::CurveParams;
use crate::selmer::{rank_upper_bound, SelmerGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RootNumberError {
    #[error("the root number formula requires d != 0 (mod 4), got {0}")]
    DivisibleByFour(BigInt),
    #[error("d must be nonzero")]
    Zero,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// The factored evaluation of the root-number formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootNumberReport {
    #[serde(with = "big_string")]
    pub d: BigInt,
    /// `sgn(-d)`
    pub sign_term: i8,
    /// `eps(d)` from the residue table mod 16
    pub epsilon_term: i8,
    /// `prod_{p^2 || d, p >= 3} (-1/p)`; empty product (+1) for squarefree d
    pub ramified_product: i8,
    /// `W = sign_term * epsilon_term * ramified_product`
    pub w: i8,
}

/// The residue table mod 16. Residues are taken in `[0, 16)`, so negative
/// `d` are normalized first.
pub fn epsilon(d: &BigInt) -> Result<i8, RootNumberError> {
    if d.is_zero() {
        return Err(RootNumberError::Zero);
    }
    let residue = d.mod_floor(&BigInt::from(16)).to_u64().unwrap();
    match residue {
        1 | 3 | 11 | 13 => Ok(-1),
        2 | 5 | 6 | 7 | 9 | 10 | 14 | 15 => Ok(1),
        _ => Err(RootNumberError::DivisibleByFour(d.clone())),
    }
}

/// Evaluate `W(E_d)`. The squarefull part of `d` must factor over the
/// known primes and trial division.
pub fn root_number(d: &BigInt, known_factors: &[u64]) -> Result<RootNumberReport, RootNumberError> {
    if d.is_zero() {
        return Err(RootNumberError::Zero);
    }
    let epsilon_term = epsilon(d)?;
    let sign_term: i8 = if d.is_negative() { 1 } else { -1 };
    let mut ramified_product: i8 = 1;
    for (p, e) in arith::factor_with_known(&d.abs(), known_factors)? {
        if e == 2 && p > BigInt::from(2) {
            // (-1/p) = +1 iff p = 1 (mod 4).
            if p.mod_floor(&BigInt::from(4)).to_u64() == Some(3) {
                ramified_product = -ramified_product;
            }
        }
    }
    let w = sign_term * epsilon_term * ramified_product;
    Ok(RootNumberReport { d: d.clone(), sign_term, epsilon_term, ramified_product, w })
}

/// The parity-conditional conclusion for a curve with computed Selmer
/// groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RankConclusion {
    RankOne(RankOneCertificate),
    Undetermined { reason: String },
}

impl RankConclusion {
    pub fn certificate(&self) -> Option<&RankOneCertificate> {
        match self {
            RankConclusion::RankOne(cert) => Some(cert),
            RankConclusion::Undetermined { .. } => None,
        }
    }
}

/// Asserts, conditionally on the parity conjecture, that the curve has
/// rank exactly one, torsion `{O, T}`, and trivial phihat-part of Sha.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankOneCertificate {
    pub conditional_on: Vec<String>,
    pub rank: u32,
    pub root_number: RootNumberReport,
    pub dim2_selmer_phi: u32,
    pub dim2_selmer_phihat: u32,
    pub rank_upper_bound: u32,
    /// Torsion subgroup generators, as displayed points.
    pub torsion: Vec<String>,
    /// dim_2 of TS(E'/Q)[phihat], forced to zero by the exact sequences.
    pub sha_phihat_dim: u32,
}

/// Combine the rank upper bound with the root number: when `W = -1` and
/// the bound is one, the parity conjecture pins the rank to exactly one
/// and kills the phihat-part of Sha.
pub fn conjectural_rank(
    params: &CurveParams,
    s_phi: &SelmerGroup,
    s_phihat: &SelmerGroup,
) -> Result<RankConclusion, RootNumberError> {
    let known: Vec<u64> =
        [2, params.p, params.q].iter().copied().chain(params.r_factors.iter().copied()).collect();
    let report = root_number(&params.two_n(), &known)?;
    let bound = rank_upper_bound(s_phi, s_phihat);
    if report.w == 1 {
        return Ok(RankConclusion::Undetermined {
            reason: "even parity: W = +1 gives no lower bound".into(),
        });
    }
    match bound.bound {
        1 => Ok(RankConclusion::RankOne(RankOneCertificate {
            conditional_on: vec!["parity conjecture".into()],
            rank: 1,
            root_number: report,
            dim2_selmer_phi: s_phi.dim2,
            dim2_selmer_phihat: s_phihat.dim2,
            rank_upper_bound: bound.bound,
            torsion: vec!["O".into(), "(0, 0)".into()],
            sha_phihat_dim: 0,
        })),
        0 => Ok(RankConclusion::Undetermined {
            reason: "contradiction flag: W = -1 forces rank >= 1 under parity but the \
                     Selmer bound is 0 (inputs outside A_D)"
                .into(),
        }),
        b => Ok(RankConclusion::Undetermined {
            reason: format!("rank upper bound {b} exceeds one; parity alone cannot pin the rank"),
        }),
    }
}
