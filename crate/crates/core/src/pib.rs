//! Power integral bases of pure quartic fields `K = Q(α)`, `α = m^(1/4)`.
//!
//! For squarefree `m ≡ 2, 3 (mod 4)`, `m ≠ ±1`, the powers `{1, α, α², α³}`
//! form an integral basis, so the index of `α` is 1 and every `ϑ ∈ Z_K` has
//! integer coordinates. For `f = x⁴ - m` the index form equation reduces to
//!
//! ```text
//! u (u² + 4 m v²) = ±1,   x² - m z² = u,   y² - x z = v
//! ```
//!
//! which forces `u = ±1`, `v = 0`. For `m < -1` this leaves `ϑ ~ α` only.
//! For `m > 1`, `y² = xz` with `gcd(x, z) = 1` makes `x = a²`, `z = b²`,
//! `y = ±ab` where `a⁴ - m b⁴ = ±1`.
//!
//! Every generator produced here is checked twice: by the reduced index form
//! above and by the discriminant identity `disc(ϑ) = I(ϑ)² · D_K`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    is_perfect_square, mod4_class, smallest_square_factor_trial, uint_kth_root, SquarefreeTable,
};
use crate::error::PibError;
use crate::poly;
use crate::thue::{solve_small_with, SolveOptions, ThueResult, ThueSolution, ThueStatus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inadmissibility {
    NotSquarefree,
    BadMod4,
    IsSquare,
}

impl Inadmissibility {
    pub fn as_str(self) -> &'static str {
        match self {
            Inadmissibility::NotSquarefree => "not_squarefree",
            Inadmissibility::BadMod4 => "bad_mod4",
            Inadmissibility::IsSquare => "is_square",
        }
    }
}

/// A field parameter `m` with its admissibility verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParam {
    m: BigInt,
    admissible: bool,
    reasons: Vec<Inadmissibility>,
    square_divisor: Option<u64>,
}

impl FieldParam {
    fn from_parts(m: &BigInt, square_divisor: Option<u64>) -> Self {
        let mut reasons = Vec::new();
        if square_divisor.is_some() {
            reasons.push(Inadmissibility::NotSquarefree);
        }
        if !matches!(mod4_class(m), 2 | 3) {
            reasons.push(Inadmissibility::BadMod4);
        }
        if m.is_positive() && is_perfect_square(m).is_some() {
            reasons.push(Inadmissibility::IsSquare);
        }
        FieldParam { m: m.clone(), admissible: reasons.is_empty(), reasons, square_divisor }
    }

    /// Classifies `m` by trial division, for parameters beyond any table.
    pub fn classify_by_trial(m: &BigInt) -> Result<Self, PibError> {
        reject_units(m)?;
        let abs = m.magnitude().to_u64().ok_or_else(|| PibError::OutOfTable {
            m: m.to_string(),
            limit: u64::MAX,
        })?;
        let sq = smallest_square_factor_trial(abs).map(|p| p * p);
        Ok(FieldParam::from_parts(m, sq))
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn is_admissible(&self) -> bool {
        self.admissible
    }

    pub fn reasons(&self) -> &[Inadmissibility] {
        &self.reasons
    }

    /// Smallest square `> 1` dividing `|m|`, if any.
    pub fn square_divisor(&self) -> Option<u64> {
        self.square_divisor
    }
}

fn reject_units(m: &BigInt) -> Result<(), PibError> {
    if m.magnitude() <= &One::one() {
        return Err(PibError::UnitParameter(m.to_string()));
    }
    Ok(())
}

/// Admissible iff `|m|` is squarefree and `m ≡ 2, 3 (mod 4)`.
pub fn classify_m(m: &BigInt, table: &SquarefreeTable) -> Result<FieldParam, PibError> {
    reject_units(m)?;
    let abs = m
        .magnitude()
        .to_u64()
        .filter(|&v| v <= table.limit())
        .ok_or_else(|| PibError::OutOfTable { m: m.to_string(), limit: table.limit() })?;
    Ok(FieldParam::from_parts(m, table.smallest_square_divisor(abs)))
}

/// Coordinates of `ϑ = xα + yα² + zα³`, one per equivalence class with
/// `x >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl Generator {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Generator { x: x.into(), y: y.into(), z: z.into() }
    }

    pub fn alpha() -> Self {
        Generator::new(1, 0, 0)
    }

    /// Representative of `{ϑ, -ϑ}` with positive leading nonzero coordinate.
    pub fn normalized(self) -> Self {
        let leading = [&self.x, &self.y, &self.z].into_iter().find(|c| !c.is_zero()).cloned();
        match leading {
            Some(c) if c.is_negative() => Generator { x: -self.x, y: -self.y, z: -self.z },
            _ => self,
        }
    }

    pub fn is_trivial(&self) -> bool {
        *self == Generator::alpha()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// `u = x² - m z²`, `v = y² - x z`, `F = u (u² + 4 m v²)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFormWitness {
    pub u: BigInt,
    pub v: BigInt,
    pub f_value: BigInt,
}

impl IndexFormWitness {
    pub fn is_unit(&self) -> bool {
        self.f_value.magnitude().is_one()
    }
}

pub fn index_form_eval(m: &BigInt, x: &BigInt, y: &BigInt, z: &BigInt) -> IndexFormWitness {
    let u = x * x - m * z * z;
    let v = y * y - x * z;
    let f_value = &u * (&u * &u + BigInt::from(4) * m * &v * &v);
    IndexFormWitness { u, v, f_value }
}

/// Matrix of multiplication by `xα + yα² + zα³` on the basis `1, α, α², α³`.
fn multiplication_matrix(m: &BigInt, x: &BigInt, y: &BigInt, z: &BigInt) -> Vec<Vec<BigInt>> {
    let coords = [BigInt::zero(), x.clone(), y.clone(), z.clone()];
    let mut mat = vec![vec![BigInt::zero(); 4]; 4];
    for j in 0..4 {
        for (i, c) in coords.iter().enumerate() {
            let e = i + j;
            if e < 4 {
                mat[e][j] += c;
            } else {
                mat[e - 4][j] += m * c;
            }
        }
    }
    mat
}

/// `disc(x⁴ - m)`, computed through the resultant.
pub fn field_discriminant(m: &BigInt) -> BigInt {
    let f = [-m.clone(), BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    poly::discriminant(&f)
}

/// Index of `ϑ = xα + yα² + zα³` from `disc(charpoly(ϑ)) / D_K = I(ϑ)²`.
pub fn index_via_discriminant(
    m: &BigInt,
    x: &BigInt,
    y: &BigInt,
    z: &BigInt,
) -> Result<BigInt, PibError> {
    let element = || (m.to_string(), x.to_string(), y.to_string(), z.to_string());
    let charpoly = poly::charpoly(&multiplication_matrix(m, x, y, z));
    let disc = poly::discriminant(&charpoly);
    if disc.is_zero() {
        let (m, x, y, z) = element();
        return Err(PibError::Degenerate { m, x, y, z });
    }
    let (quotient, rem) = disc.div_rem(&field_discriminant(m));
    let root = if rem.is_zero() { is_perfect_square(&quotient) } else { None };
    root.ok_or_else(|| {
        let (m, x, y, z) = element();
        PibError::NonSquareIndex { m, x, y, z, quotient: format!("{disc} / D_K") }
    })
}

/// Runs both verification paths on a generator candidate.
pub fn verify_generator(m: &BigInt, g: &Generator) -> Result<IndexFormWitness, PibError> {
    let fail = |detail: String| PibError::VerificationFailed {
        m: m.to_string(),
        x: g.x.to_string(),
        y: g.y.to_string(),
        z: g.z.to_string(),
        detail,
    };
    let witness = index_form_eval(m, &g.x, &g.y, &g.z);
    if !witness.is_unit() || !witness.u.magnitude().is_one() || !witness.v.is_zero() {
        return Err(fail(format!("index form gives u={}, v={}, F={}", witness.u, witness.v, witness.f_value)));
    }
    let index = index_via_discriminant(m, &g.x, &g.y, &g.z)?;
    if !index.is_one() {
        return Err(fail(format!("discriminant route gives index {index}")));
    }
    Ok(witness)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub m: BigInt,
    pub status: ThueStatus,
    pub generators: Vec<Generator>,
    /// Underlying Thue result; `None` for `m < -1`.
    pub thue: Option<ThueResult>,
}

/// `(a, b) ↦ (a², ±ab, b²)`, both signs of `y` when `b > 0`.
pub fn generators_from_solution(s: &ThueSolution) -> Vec<Generator> {
    let x = &s.a * &s.a;
    let z = &s.b * &s.b;
    let y = &s.a * &s.b;
    if y.is_zero() {
        vec![Generator { x, y, z }]
    } else {
        vec![Generator { x: x.clone(), y: y.clone(), z: z.clone() }, Generator { x, y: -y, z }]
    }
}

/// Generators for admissible `m > 1` with coordinates up to `h_gen`, via the
/// Thue equation at height `floor(sqrt(h_gen))`.
pub fn generators_for_m(param: &FieldParam, h_gen: &BigInt) -> Result<GeneratorSet, PibError> {
    generators_for_m_with(param, h_gen, &SolveOptions::default())
}

pub fn generators_for_m_with(
    param: &FieldParam,
    h_gen: &BigInt,
    opts: &SolveOptions,
) -> Result<GeneratorSet, PibError> {
    let m = param.m();
    if !param.is_admissible() {
        return Err(PibError::Inadmissible(m.to_string()));
    }
    if !m.is_positive() {
        return Err(PibError::WrongSign { m: m.to_string(), expected: "positive" });
    }
    if *h_gen < BigInt::one() {
        return Err(crate::error::ThueError::InvalidHeight.into());
    }
    let height = BigInt::from(uint_kth_root(h_gen.magnitude(), 2));
    let thue = solve_small_with(m, &height, opts)?;
    let mut generators = Vec::new();
    for s in &thue.solutions {
        for g in generators_from_solution(s) {
            verify_generator(m, &g)?;
            generators.push(g);
        }
    }
    Ok(GeneratorSet { m: m.clone(), status: thue.status, generators, thue: Some(thue) })
}

/// For admissible `m < -1`, `x² + |m| z² = 1` leaves only `ϑ = α`.
pub fn generators_negative_m(param: &FieldParam) -> Result<Vec<Generator>, PibError> {
    let m = param.m();
    if !param.is_admissible() {
        return Err(PibError::Inadmissible(m.to_string()));
    }
    if !m.is_negative() {
        return Err(PibError::WrongSign { m: m.to_string(), expected: "negative" });
    }
    let alpha = Generator::alpha();
    verify_generator(m, &alpha)?;
    Ok(vec![alpha])
}

/// Dispatches on the sign of `m`.
pub fn generators(param: &FieldParam, h_gen: &BigInt) -> Result<GeneratorSet, PibError> {
    if param.m().is_negative() {
        Ok(GeneratorSet {
            m: param.m().clone(),
            status: ThueStatus::Solved,
            generators: generators_negative_m(param)?,
            thue: None,
        })
    } else {
        generators_for_m(param, h_gen)
    }
}

/// Member of the parametric family `m = ((s⁴t ± 1)⁴ - 1) / s⁴` with its
/// known solution `(s⁴t ± 1, s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub m: BigInt,
    pub a: BigInt,
    pub b: BigInt,
}

impl FamilyMember {
    pub fn predicted(&self) -> Option<ThueSolution> {
        ThueSolution::checked(&self.m, &self.a, &self.b)
    }

    pub fn predicted_generators(&self) -> Vec<Generator> {
        let mut out = vec![Generator::alpha()];
        if let Some(s) = self.predicted() {
            out.extend(generators_from_solution(&s));
        }
        out
    }
}

/// `sign` is `+1` or `-1`. The returned `m` may be `<= 1` (for example
/// `s = t = 1` with the minus sign gives `m = -1`); callers filter.
///
/// # Panics
/// If `s⁴` does not divide `(s⁴t ± 1)⁴ - 1`, which cannot happen.
pub fn family_m(s: u64, t: u64, sign: i8) -> FamilyMember {
    assert!(s >= 1 && t >= 1, "family parameters start at 1");
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    let s4 = BigInt::from(s).pow(4);
    let a = &s4 * BigInt::from(t) + BigInt::from(sign);
    let (m, rem) = (a.pow(4) - 1u32).div_rem(&s4);
    assert!(rem.is_zero(), "s^4 must divide (s^4 t ± 1)^4 - 1");
    FamilyMember { m, a, b: BigInt::from(s) }
}
