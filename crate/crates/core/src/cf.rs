//! Certified continued-fraction expansion of `g^(1/4)`.
//!
//! The fourth root is enclosed between two decimal rationals
//! `lo = L / 10^P` and `hi = (L + 1) / 10^P`. Both endpoints are expanded in
//! lockstep and only the common prefix of their partial quotients is kept.
//! The irrationals sharing a given prefix `[a0; a1, ..., ak]` (with the
//! expansion continuing past `ak`) form an interval, so any quotient both
//! endpoints agree on, without either endpoint terminating at that step, is a
//! partial quotient of every number in between, `g^(1/4)` included.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, is_perfect_square, uint_kth_root};
use crate::error::CfError;

/// Guard digits added on top of twice the decimal size of the denominator
/// bound.
pub const GUARD_DIGITS: u32 = 200;

/// Smallest precision the solver starts from.
pub const MIN_PRECISION: u32 = 16;

/// `lo <= g^(1/4) <= hi` with `hi - lo = 10^-P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    g: BigInt,
    precision: u32,
    lo_scaled: BigUint,
    scale: BigUint,
}

impl RootEnclosure {
    pub fn g(&self) -> &BigInt {
        &self.g
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `floor(g^(1/4) * 10^P)`.
    pub fn lo_numerator(&self) -> &BigUint {
        &self.lo_scaled
    }

    /// `10^P`, the common denominator of both endpoints.
    pub fn denominator(&self) -> &BigUint {
        &self.scale
    }

    pub fn hi_numerator(&self) -> BigUint {
        &self.lo_scaled + 1u32
    }
}

/// Encloses `g^(1/4)` to `P` decimal digits.
pub fn root_enclosure(g: &BigInt, precision: u32) -> Result<RootEnclosure, CfError> {
    if *g < BigInt::from(2) {
        return Err(CfError::RadicandTooSmall(g.to_string()));
    }
    if let Some(root) = is_perfect_square(g) {
        return Err(CfError::PerfectSquare { g: g.to_string(), root: root.to_string() });
    }
    if precision == 0 {
        return Err(CfError::PrecisionTooLow(precision));
    }
    let scale = BigUint::from(10u32).pow(precision);
    let radicand = g.magnitude() * scale.pow(4);
    let lo_scaled = uint_kth_root(&radicand, 4);
    Ok(RootEnclosure { g: g.clone(), precision, lo_scaled, scale })
}

/// `2 * ceil(log10(q_bound)) + 200`.
pub fn required_precision(q_bound: &BigUint) -> u32 {
    let ceil_log10 = if *q_bound <= BigUint::one() {
        0
    } else {
        arith::decimal_digits(&(q_bound - 1u32))
    };
    u32::try_from(2 * ceil_log10).expect("height bound too large") + GUARD_DIGITS
}

/// Certified partial quotients and convergents of `g^(1/4)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentStream {
    pub partial_quotients: Vec<BigUint>,
    /// `(p_k, q_k)` for `k = 0..certified_depth()`.
    pub convergents: Vec<(BigUint, BigUint)>,
    /// The prefix reached a denominator above the requested bound before the
    /// two endpoint expansions diverged.
    pub complete: bool,
}

impl ConvergentStream {
    pub fn certified_depth(&self) -> usize {
        self.partial_quotients.len()
    }
}

/// Expands both enclosure endpoints and keeps the common prefix, stopping at
/// the first convergent with `q_k > q_bound`.
pub fn certified_cf(enclosure: &RootEnclosure, q_bound: &BigUint) -> ConvergentStream {
    let cap = BigUint::from(10u32).pow(2 * enclosure.precision);

    let (mut lo_num, mut lo_den) = (enclosure.lo_scaled.clone(), enclosure.scale.clone());
    let (mut hi_num, mut hi_den) = (enclosure.hi_numerator(), enclosure.scale.clone());

    // p_{-1} = 1, p_{-2} = 0; q_{-1} = 0, q_{-2} = 1
    let (mut p_prev, mut p) = (BigUint::zero(), BigUint::one());
    let (mut q_prev, mut q) = (BigUint::one(), BigUint::zero());

    let mut stream = ConvergentStream {
        partial_quotients: Vec::new(),
        convergents: Vec::new(),
        complete: false,
    };

    loop {
        let (a_lo, r_lo) = lo_num.div_rem(&lo_den);
        let (a_hi, r_hi) = hi_num.div_rem(&hi_den);
        if a_lo != a_hi || r_lo.is_zero() || r_hi.is_zero() || a_lo > cap {
            break;
        }
        let p_next = &a_lo * &p + &p_prev;
        let q_next = &a_lo * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        stream.partial_quotients.push(a_lo);
        stream.convergents.push((p.clone(), q.clone()));
        if q > *q_bound {
            stream.complete = true;
            break;
        }
        lo_num = std::mem::replace(&mut lo_den, r_lo);
        hi_num = std::mem::replace(&mut hi_den, r_hi);
    }
    stream
}
