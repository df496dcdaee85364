//! Exact integer primitives: k-th roots, perfect powers, squarefree sieve.
//!
//! Nothing in here rounds. The only floating-point use is as a starting guess
//! for the `u128` fourth-root fast path, which is always corrected exactly.
//!
//! Reducibility note: `x^4 - g` is reducible over the rationals exactly when
//! `g` is a perfect square (for positive `g`), since `x^4 - h^2 = (x^2 - h)(x^2 + h)`
//! and the remaining factorisation `x^4 + 4c^4` needs `g < 0`. Callers use
//! [`is_perfect_square`] to filter those `g`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ArithError;

/// Floor of the k-th root of a nonnegative integer.
///
/// Newton iteration from above, starting at `2^ceil(bits/k)`, followed by a
/// two-sided correction so the result satisfies `r^k <= n < (r+1)^k`.
pub fn uint_kth_root(n: &BigUint, k: u32) -> BigUint {
    assert!(k >= 1, "root index must be positive");
    if k == 1 || n.is_zero() || n.is_one() {
        return n.clone();
    }
    let bits = n.bits();
    if bits <= 64 {
        let v = n.to_u64().unwrap();
        return BigUint::from(u64_kth_root(v, k));
    }
    let k_big = BigUint::from(k);
    let km1 = k - 1;
    let shift = bits.div_ceil(u64::from(k));
    let mut x = BigUint::one() << shift;
    loop {
        let y = (&x * (k - 1) + n / x.pow(km1)) / &k_big;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.pow(k) > *n {
        x -= 1u32;
    }
    loop {
        let next = &x + 1u32;
        if next.pow(k) <= *n {
            x = next;
        } else {
            break;
        }
    }
    x
}

fn u64_kth_root(n: u64, k: u32) -> u64 {
    if k >= 64 {
        return u64::from(n > 0);
    }
    let mut r = (n as f64).powf(1.0 / f64::from(k)) as u64;
    let fits = |r: u64| r.checked_pow(k).is_some_and(|p| p <= n);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// `floor(n^(1/k))` for a signed integer.
///
/// Negative `n` is accepted only for odd `k`, in which case the floor is taken
/// on the real line (so `int_kth_root(-9, 3) == -3`).
pub fn int_kth_root(n: &BigInt, k: u32) -> Result<BigInt, ArithError> {
    if k == 0 {
        return Err(ArithError::ZeroRootIndex);
    }
    match n.sign() {
        Sign::Minus if k % 2 == 0 => Err(ArithError::EvenRootOfNegative {
            n: n.to_string(),
            k,
        }),
        Sign::Minus => {
            let mag = n.magnitude();
            let r = uint_kth_root(mag, k);
            let r = if r.pow(k) == *mag { r } else { r + 1u32 };
            Ok(-BigInt::from(r))
        }
        _ => Ok(BigInt::from(uint_kth_root(n.magnitude(), k))),
    }
}

/// Returns `Some(h)` with `h >= 0` and `h^2 == g` when `g` is a perfect square.
pub fn is_perfect_square(g: &BigInt) -> Option<BigInt> {
    if g.is_negative() {
        return None;
    }
    let h = BigInt::from(uint_kth_root(g.magnitude(), 2));
    (&h * &h == *g).then_some(h)
}

/// Floor fourth root of a `u128`.
pub fn fourth_root_u128(n: u128) -> u128 {
    let mut r = (n as f64).sqrt().sqrt() as u128;
    let fits = |r: u128| r.checked_pow(4).is_some_and(|p| p <= n);
    while r > 0 && !fits(r) {
        r -= 1;
    }
    while fits(r + 1) {
        r += 1;
    }
    r
}

/// Exact fourth root if `n` is a fourth power.
pub fn exact_fourth_root(n: &BigUint) -> Option<BigUint> {
    if let Some(v) = n.to_u128() {
        let r = fourth_root_u128(v);
        return (r.pow(4) == v).then(|| BigUint::from(r));
    }
    let r = uint_kth_root(n, 4);
    (r.pow(4) == *n).then_some(r)
}

/// Nonnegative residue of `m` modulo 4, so `-2` maps to `2`.
pub fn mod4_class(m: &BigInt) -> u8 {
    m.mod_floor(&BigInt::from(4)).to_u8().unwrap()
}

/// Number of decimal digits of `n` (`0` has one digit).
pub fn decimal_digits(n: &BigUint) -> u64 {
    n.to_str_radix(10).len() as u64
}

/// Smallest `p` such that `p^2 | n`, by trial division. `None` means
/// squarefree. Intended for values beyond a [`SquarefreeTable`].
pub fn smallest_square_factor_trial(n: u64) -> Option<u64> {
    let mut rest = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return Some(d);
            }
            while rest % d == 0 {
                rest /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    None
}

/// Squarefree flags for `1..=limit`, with the smallest square divisor kept as
/// a witness for every non-squarefree entry.
#[derive(Debug, Clone)]
pub struct SquarefreeTable {
    limit: u64,
    // smallest prime p with p^2 | n, 0 when n is squarefree
    witness: Vec<u32>,
}

impl SquarefreeTable {
    /// Sieves multiples of `p^2` for every prime `p <= sqrt(limit)`.
    pub fn build(limit: u64) -> Result<Self, ArithError> {
        if limit < 2 {
            return Err(ArithError::TableTooSmall(limit));
        }
        let len = usize::try_from(limit).map_err(|_| ArithError::TableTooLarge(limit))? + 1;
        let mut witness = vec![0u32; len];
        let root = u64_kth_root(limit, 2) as usize;
        let mut composite = vec![false; root + 1];
        for p in 2..=root {
            if composite[p] {
                continue;
            }
            for c in (p * p..=root).step_by(p) {
                composite[c] = true;
            }
            let sq = p * p;
            for slot in witness.iter_mut().step_by(sq).skip(1) {
                if *slot == 0 {
                    *slot = p as u32;
                }
            }
        }
        Ok(SquarefreeTable { limit, witness })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// # Panics
    /// If `n` is zero or above the limit.
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.smallest_square_divisor(n).is_none()
    }

    /// Smallest square `p^2 > 1` dividing `n`, if any.
    ///
    /// # Panics
    /// If `n` is zero or above the limit.
    pub fn smallest_square_divisor(&self, n: u64) -> Option<u64> {
        assert!(n >= 1 && n <= self.limit, "{n} outside table 1..={}", self.limit);
        match self.witness[n as usize] {
            0 => None,
            p => Some(u64::from(p) * u64::from(p)),
        }
    }

    pub fn squarefree_count(&self) -> u64 {
        self.witness[1..].iter().filter(|&&w| w == 0).count() as u64
    }
}
