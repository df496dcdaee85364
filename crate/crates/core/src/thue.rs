//! Small solutions of `a^4 - g*b^4 = ±1`.
//!
//! # Completeness
//!
//! Let `θ = g^(1/4)` with `g >= 2` not a square, and let `(a, b)` with
//! `a >= 1`, `b >= 1` satisfy `a^4 - g*b^4 = ±1`. Factoring,
//!
//! ```text
//! |a - θb| = 1 / ((a + θb)(a^2 + θ^2 b^2))
//! ```
//!
//! and `(a + θb)(a^2 + θ^2 b^2) > (1 + b)(1 + b^2) > 2b`, hence
//! `|θ - a/b| < 1/(2b^2)`. By Legendre's criterion `a/b` is then a convergent
//! of `θ`, and `gcd(a, b) = 1` makes it one in lowest terms. So every solution
//! with `1 <= b <= H` appears among the certified convergents with `q <= H`,
//! provided the certified expansion reaches a denominator above `H`
//! (`ConvergentStream::complete`). The only solution with `b = 0` is `(1, 0)`.
//!
//! The list is complete for `b <= H`, which covers every solution with
//! `max(a, b) <= H`. Nothing is claimed about solutions beyond the bound.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_fourth_root, fourth_root_u128, is_perfect_square};
use crate::cf::{certified_cf, required_precision, root_enclosure, MIN_PRECISION};
use crate::error::{BennettViolation, ThueError};

/// Bound for the direct enumeration that runs next to the convergent search.
pub const DIRECT_SEARCH_BOUND: u64 = 1000;

/// Precision doublings attempted after the first incomplete expansion.
pub const PRECISION_RETRIES: u32 = 3;

/// Normalized solution: `a >= 1`, `b >= 0`, `a^4 - g*b^4 == sign`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThueSolution {
    pub a: BigInt,
    pub b: BigInt,
    pub sign: i8,
}

impl ThueSolution {
    pub fn trivial() -> Self {
        ThueSolution { a: BigInt::one(), b: BigInt::zero(), sign: 1 }
    }

    /// Builds a normalized solution if `a^4 - g*b^4 = ±1`.
    pub fn checked(g: &BigInt, a: &BigInt, b: &BigInt) -> Option<Self> {
        let residue = a.pow(4) - g * b.pow(4);
        let sign = residue.to_i8().filter(|s| *s == 1 || *s == -1)?;
        Some(ThueSolution { a: a.magnitude().clone().into(), b: b.magnitude().clone().into(), sign })
    }

    pub fn is_positive(&self) -> bool {
        self.b >= BigInt::one()
    }
}

impl fmt::Display for ThueSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) -> {:+}", self.a, self.b, self.sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThueStatus {
    Solved,
    SkippedReducible,
    PrecisionFailure,
}

impl ThueStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            ThueStatus::Solved => "solved",
            ThueStatus::SkippedReducible => "skipped_reducible",
            ThueStatus::PrecisionFailure => "precision_failure",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThueResult {
    pub g: BigInt,
    pub height: BigInt,
    pub status: ThueStatus,
    /// Sorted by `b`; always starts with `(1, 0)` unless skipped.
    pub solutions: Vec<ThueSolution>,
    /// Precision of the last expansion attempted, `0` when skipped.
    pub precision_used: u32,
}

impl ThueResult {
    pub fn positive_solutions(&self) -> impl Iterator<Item = &ThueSolution> {
        self.solutions.iter().filter(|s| s.is_positive())
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Starting precision in decimal digits; derived from the height if unset.
    pub precision: Option<u32>,
    pub direct_bound: u64,
    pub retries: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { precision: None, direct_bound: DIRECT_SEARCH_BOUND, retries: PRECISION_RETRIES }
    }
}

pub fn solve_small(g: &BigInt, height: &BigInt) -> Result<ThueResult, ThueError> {
    solve_small_with(g, height, &SolveOptions::default())
}

pub fn solve_small_with(
    g: &BigInt,
    height: &BigInt,
    opts: &SolveOptions,
) -> Result<ThueResult, ThueError> {
    check_inputs(g, height)?;
    if is_perfect_square(g).is_some() {
        return Ok(ThueResult {
            g: g.clone(),
            height: height.clone(),
            status: ThueStatus::SkippedReducible,
            solutions: Vec::new(),
            precision_used: 0,
        });
    }

    let h = height.magnitude();
    let mut found: BTreeMap<BigInt, ThueSolution> = BTreeMap::new();
    let trivial = ThueSolution::trivial();
    found.insert(trivial.b.clone(), trivial);

    let (convergent_hits, complete, precision_used) = convergent_route(g, h, opts);
    for s in convergent_hits {
        found.insert(s.b.clone(), s);
    }

    let direct_bound = h.to_u64().map_or(opts.direct_bound, |v| v.min(opts.direct_bound));
    for s in direct_search(g, direct_bound) {
        if complete && !found.contains_key(&s.b) {
            return Err(ThueError::Invariant {
                g: g.to_string(),
                detail: format!("direct search found {s} missed by the certified convergents"),
            });
        }
        found.insert(s.b.clone(), s);
    }

    let solutions: Vec<ThueSolution> = found.into_values().collect();
    for s in &solutions {
        verify_solution(g, s)?;
    }
    Ok(ThueResult {
        g: g.clone(),
        height: height.clone(),
        status: if complete { ThueStatus::Solved } else { ThueStatus::PrecisionFailure },
        solutions,
        precision_used,
    })
}

fn check_inputs(g: &BigInt, height: &BigInt) -> Result<(), ThueError> {
    if *g < BigInt::from(2) {
        return Err(ThueError::InvalidCoefficient(g.to_string()));
    }
    if *height < BigInt::one() {
        return Err(ThueError::InvalidHeight);
    }
    Ok(())
}

/// Solutions with `1 <= b <= H` among the certified convergents, plus whether
/// the expansion was certified past `H` and the last precision tried.
///
/// `g` must be at least 2 and not a perfect square.
pub fn convergent_route(
    g: &BigInt,
    height: &BigUint,
    opts: &SolveOptions,
) -> (Vec<ThueSolution>, bool, u32) {
    let mut precision = opts.precision.unwrap_or_else(|| required_precision(height)).max(MIN_PRECISION);
    let mut attempt = 0;
    loop {
        let enclosure = root_enclosure(g, precision).expect("caller filters squares and g < 2");
        let stream = certified_cf(&enclosure, height);
        if stream.complete || attempt == opts.retries {
            let hits = stream
                .convergents
                .iter()
                .filter(|(_, q)| q <= height)
                .filter_map(|(p, q)| ThueSolution::checked(g, &p.clone().into(), &q.clone().into()))
                .collect();
            if !stream.complete {
                log::warn!("g={g}: expansion incomplete at {precision} digits after {attempt} retries");
            }
            return (hits, stream.complete, precision);
        }
        log::debug!("g={g}: {precision} digits insufficient, doubling");
        precision *= 2;
        attempt += 1;
    }
}

/// For each `1 <= b <= bound`, looks for `a` with `a^4 = g*b^4 ± 1` using one
/// floor fourth root per `b`.
fn direct_search(g: &BigInt, bound: u64) -> Vec<ThueSolution> {
    let mut out = Vec::new();
    let small_g = g.to_u128();
    for b in 1..=bound {
        let hit = match small_g.and_then(|g| (b as u128).checked_pow(4)?.checked_mul(g)?.checked_add(1)) {
            Some(t_plus) => {
                let t = t_plus - 1;
                let r = fourth_root_u128(t);
                if r.pow(4) == t - 1 {
                    Some((BigInt::from(r), -1))
                } else if (r + 1).checked_pow(4) == Some(t_plus) {
                    Some((BigInt::from(r + 1), 1))
                } else {
                    None
                }
            }
            None => {
                let t = g * BigInt::from(b).pow(4);
                let t_minus = (&t - 1u32).magnitude().clone();
                let t_plus = (&t + 1u32).magnitude().clone();
                exact_fourth_root(&t_minus)
                    .map(|a| (BigInt::from(a), -1))
                    .or_else(|| exact_fourth_root(&t_plus).map(|a| (BigInt::from(a), 1)))
            }
        };
        if let Some((a, sign)) = hit {
            out.push(ThueSolution { a, b: BigInt::from(b), sign });
        }
    }
    out
}

fn verify_solution(g: &BigInt, s: &ThueSolution) -> Result<(), ThueError> {
    let fail = |detail: String| ThueError::Invariant { g: g.to_string(), detail };
    if s.a < BigInt::one() || s.b < BigInt::zero() {
        return Err(fail(format!("{s} is not normalized")));
    }
    let residue = s.a.pow(4) - g * s.b.pow(4);
    if residue != BigInt::from(s.sign) {
        return Err(fail(format!("{s} evaluates to {residue}")));
    }
    if !s.a.gcd(&s.b).is_one() {
        return Err(fail(format!("{s} is not coprime")));
    }
    Ok(())
}

/// All normalized solutions with `b <= bound`, by testing `g*b^4 ± 1` for
/// being a fourth power as a square of a square.
///
/// This is the reference oracle for [`solve_small`]; it shares no root
/// extraction code with the solver.
pub fn brute_small(g: &BigInt, bound: u64) -> Vec<ThueSolution> {
    assert!(*g >= BigInt::from(2), "g must be at least 2");
    let mut out = vec![ThueSolution::trivial()];
    for b in 1..=bound {
        let t = g * BigInt::from(b).pow(4);
        for (sign, candidate) in [(1i8, &t + 1), (-1i8, &t - 1)] {
            if let Some(a) = square_of_square(&candidate) {
                out.push(ThueSolution { a, b: BigInt::from(b), sign });
            }
        }
    }
    out
}

fn square_of_square(n: &BigInt) -> Option<BigInt> {
    if let Some(v) = n.to_u128() {
        let s = v.isqrt();
        if s * s != v {
            return None;
        }
        let r = s.isqrt();
        return (r * r == s).then(|| BigInt::from(r));
    }
    let s = n.sqrt();
    if &s * &s != *n {
        return None;
    }
    let r = s.sqrt();
    (&r * &r == s).then_some(r)
}

/// Checks Bennett's bound: at most one solution in positive integers.
pub fn assert_bennett(result: &ThueResult) -> Result<(), BennettViolation> {
    let positive: Vec<&ThueSolution> = result.positive_solutions().collect();
    if positive.len() <= 1 {
        return Ok(());
    }
    Err(BennettViolation {
        g: result.g.to_string(),
        pairs: positive.iter().map(|s| (s.a.to_string(), s.b.to_string())).collect(),
    })
}
