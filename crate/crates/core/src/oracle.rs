//! Brute-force oracles for auditing the solvers at desk scale.
//!
//! `audit_thue` compares the convergent search with direct fourth-power
//! testing. `audit_generators` compares the Thue-based generator list with an
//! exhaustive scan of a coordinate box, where membership is decided by the
//! discriminant identity alone.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};

use crate::arith::is_perfect_square;
use crate::error::{OracleError, PibError};
use crate::pib::{generators_for_m, index_via_discriminant, FieldParam, Generator};
use crate::thue::{brute_small, convergent_route, solve_small, SolveOptions, ThueSolution};

/// Largest coordinate box accepted by [`audit_generators`].
pub const MAX_AUDIT_BOX: u64 = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch<T> {
    OnlyInOracle(T),
    OnlyInSolver(T),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport<T> {
    pub subject: BigInt,
    pub oracle: Vec<T>,
    pub solver: Vec<T>,
    pub agreement: bool,
    pub mismatches: Vec<Mismatch<T>>,
}

impl<T: Ord + Clone> AuditReport<T> {
    fn compare(subject: BigInt, oracle: Vec<T>, solver: Vec<T>) -> Self {
        let o: BTreeSet<T> = oracle.iter().cloned().collect();
        let s: BTreeSet<T> = solver.iter().cloned().collect();
        let mut mismatches: Vec<Mismatch<T>> =
            o.difference(&s).cloned().map(Mismatch::OnlyInOracle).collect();
        mismatches.extend(s.difference(&o).cloned().map(Mismatch::OnlyInSolver));
        AuditReport {
            subject,
            oracle: o.into_iter().collect(),
            solver: s.into_iter().collect(),
            agreement: mismatches.is_empty(),
            mismatches,
        }
    }
}

/// `solve_small(g, B)` against `brute_small(g, B)`. The bare convergent route
/// is compared as well, so agreement cannot come from the solver's own direct
/// search alone.
pub fn audit_thue(g: &BigInt, bound: u64) -> Result<AuditReport<ThueSolution>, OracleError> {
    if is_perfect_square(g).is_some() {
        return Err(OracleError::SquareCoefficient(g.to_string()));
    }
    let height = BigInt::from(bound.max(1));
    let solved = solve_small(g, &height)?;
    let oracle = brute_small(g, bound);
    let mut report = AuditReport::compare(g.clone(), oracle.clone(), solved.solutions);

    let (hits, _, _) = convergent_route(g, height.magnitude(), &SolveOptions::default());
    let mut convergent = vec![ThueSolution::trivial()];
    convergent.extend(hits);
    let second = AuditReport::compare(g.clone(), oracle, convergent);
    if !second.agreement {
        report.agreement = false;
        report.mismatches.extend(second.mismatches);
    }
    Ok(report)
}

/// Exhaustive index-1 search over `1 <= x <= C`, `|y| <= C`, `0 <= z <= C`
/// against `generators_for_m` restricted to the same box.
pub fn audit_generators(m: &BigInt, bound: u64) -> Result<AuditReport<Generator>, OracleError> {
    if bound > MAX_AUDIT_BOX {
        return Err(OracleError::BoxTooLarge(bound));
    }
    let param = FieldParam::classify_by_trial(m)?;
    if !param.is_admissible() || !m.is_positive() {
        return Err(PibError::Inadmissible(m.to_string()).into());
    }
    let c = bound as i64;
    let oracle = scan_box(m, 1..=c, -c..=c, 0..=c)?;

    let h_gen = BigInt::from(bound.max(1)).pow(2);
    let set = generators_for_m(&param, &h_gen)?;
    let cb = BigInt::from(bound);
    let solver = set
        .generators
        .into_iter()
        .filter(|g| g.x <= cb && g.y.abs() <= cb && g.z <= cb)
        .collect();
    Ok(AuditReport::compare(m.clone(), oracle, solver))
}

/// All index-1 elements with `|x|, |y|, |z| <= bound`, one per `±ϑ` pair.
pub fn index_one_elements(m: &BigInt, bound: u64) -> Result<Vec<Generator>, OracleError> {
    let c = bound as i64;
    let found = scan_box(m, -c..=c, -c..=c, -c..=c)?;
    let set: BTreeSet<Generator> = found.into_iter().map(Generator::normalized).collect();
    Ok(set.into_iter().collect())
}

fn scan_box(
    m: &BigInt,
    xs: std::ops::RangeInclusive<i64>,
    ys: std::ops::RangeInclusive<i64>,
    zs: std::ops::RangeInclusive<i64>,
) -> Result<Vec<Generator>, OracleError> {
    let filters: Vec<ModFilter> = FILTER_PRIMES.iter().map(|&p| ModFilter::new(m, p)).collect();
    let mut out = Vec::new();
    for x in xs {
        for y in ys.clone() {
            for z in zs.clone() {
                if !filters.iter().all(|f| f.may_have_index_one(x, y, z)) {
                    continue;
                }
                let (bx, by, bz) = (BigInt::from(x), BigInt::from(y), BigInt::from(z));
                match index_via_discriminant(m, &bx, &by, &bz) {
                    Ok(index) if index.is_one() => out.push(Generator { x: bx, y: by, z: bz }),
                    Ok(_) | Err(PibError::Degenerate { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(out)
}

const FILTER_PRIMES: [u64; 2] = [(1 << 61) - 1, 1_000_000_007];

/// Necessary condition for index 1: `disc(charpoly(ϑ)) ≡ D_K (mod p)`, since
/// `disc(ϑ) = I(ϑ)² D_K` exactly.
struct ModFilter {
    p: u64,
    m: u64,
    field_disc: u64,
}

impl ModFilter {
    fn new(m: &BigInt, p: u64) -> Self {
        let pb = BigInt::from(p);
        let m_mod = ((m % &pb) + &pb) % &pb;
        let m = u64::try_from(BigUint::try_from(m_mod).unwrap()).unwrap();
        let field_disc = disc_mod(&[sub(0, m, p), 0, 0, 0, 1], p);
        ModFilter { p, m, field_disc }
    }

    fn may_have_index_one(&self, x: i64, y: i64, z: i64) -> bool {
        let p = self.p;
        let r = |v: i64| v.rem_euclid(p as i64) as u64;
        let coords = [0, r(x), r(y), r(z)];
        let mut a = [[0u64; 4]; 4];
        for j in 0..4 {
            for (i, &c) in coords.iter().enumerate() {
                let e = i + j;
                if e < 4 {
                    a[e][j] = add(a[e][j], c, p);
                } else {
                    a[e - 4][j] = add(a[e - 4][j], mul(self.m, c, p), p);
                }
            }
        }
        disc_mod(&charpoly_mod(&a, p), p) == self.field_disc
    }
}

fn add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub(a: u64, b: u64, p: u64) -> u64 {
    add(a, p - b % p, p)
}

fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let (mut base, mut e, mut acc) = (a, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        e >>= 1;
    }
    acc
}

fn charpoly_mod(a: &[[u64; 4]; 4], p: u64) -> [u64; 5] {
    let mut c = [0u64; 5];
    c[4] = 1;
    let mut m = [[0u64; 4]; 4];
    let mat_mul = |x: &[[u64; 4]; 4], y: &[[u64; 4]; 4]| {
        let mut out = [[0u64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut s = 0u64;
                for k in 0..4 {
                    s = add(s, mul(x[i][k], y[k][j], p), p);
                }
                out[i][j] = s;
            }
        }
        out
    };
    for k in 1..=4usize {
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] = add(row[i], c[4 - k + 1], p);
        }
        m = next;
        let am = mat_mul(a, &m);
        let trace = (0..4).fold(0, |s, i| add(s, am[i][i], p));
        c[4 - k] = sub(0, mul(trace, inv(k as u64, p), p), p);
    }
    c
}

/// Discriminant of a monic quartic mod `p` via the 7x7 Sylvester matrix.
fn disc_mod(f: &[u64; 5], p: u64) -> u64 {
    let df = [f[1], mul(2, f[2], p), mul(3, f[3], p), mul(4, f[4], p)];
    let mut s = [[0u64; 7]; 7];
    for shift in 0..3 {
        for i in 0..5 {
            s[shift][shift + i] = f[4 - i];
        }
    }
    for shift in 0..4 {
        for i in 0..4 {
            s[3 + shift][shift + i] = df[3 - i];
        }
    }
    let mut det = 1u64;
    for col in 0..7 {
        let Some(pivot) = (col..7).find(|&r| s[r][col] != 0) else {
            return 0;
        };
        if pivot != col {
            s.swap(pivot, col);
            det = sub(0, det, p);
        }
        det = mul(det, s[col][col], p);
        let inv_pivot = inv(s[col][col], p);
        for r in col + 1..7 {
            if s[r][col] == 0 {
                continue;
            }
            let factor = mul(s[r][col], inv_pivot, p);
            for k in col..7 {
                s[r][k] = sub(s[r][k], mul(factor, s[col][k], p), p);
            }
        }
    }
    // (-1)^(4*3/2) = 1 and the polynomial is monic
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pib::field_discriminant;
    use crate::poly;
    use num_integer::Integer;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn gens(list: &[(i64, i64, i64)]) -> Vec<Generator> {
        let mut v: Vec<Generator> = list.iter().map(|&(x, y, z)| Generator::new(x, y, z)).collect();
        v.sort();
        v
    }

    #[test]
    fn modular_discriminant_matches_exact() {
        let p = FILTER_PRIMES[1];
        for m in [2i64, 15, -6, 82] {
            let filter = ModFilter::new(&big(m), p);
            let exact = field_discriminant(&big(m)).mod_floor(&big(p as i64));
            assert_eq!(big(filter.field_disc as i64), exact);
            let f = [big(7), big(-3), big(0), big(5), big(1)];
            let exact = poly::discriminant(&f).mod_floor(&big(p as i64));
            let fm = [7, p - 3, 0, 5, 1];
            assert_eq!(big(disc_mod(&fm, p) as i64), exact);
        }
    }

    #[test]
    fn thue_audits() {
        let r = audit_thue(&big(150), 100).unwrap();
        assert!(r.agreement);
        assert!(r.oracle.iter().any(|s| s.a == big(7) && s.b == big(2)));
        let r = audit_thue(&big(1785), 100).unwrap();
        assert!(r.agreement);
        assert!(r.solver.iter().any(|s| s.a == big(13) && s.b == big(2)));
        let r = audit_thue(&big(6), 100).unwrap();
        assert!(r.agreement);
        assert_eq!(r.solver, vec![ThueSolution::trivial()]);
        assert!(matches!(audit_thue(&big(9), 100), Err(OracleError::SquareCoefficient(_))));
    }

    #[test]
    fn generator_audits() {
        let r = audit_generators(&big(2), 10).unwrap();
        assert!(r.agreement);
        assert_eq!(r.oracle, gens(&[(1, 0, 0), (1, 1, 1), (1, -1, 1)]));
        let r = audit_generators(&big(82), 10).unwrap();
        assert!(r.agreement);
        assert_eq!(r.oracle, gens(&[(1, 0, 0), (9, 3, 1), (9, -3, 1)]));
        let r = audit_generators(&big(3), 10).unwrap();
        assert!(r.agreement);
        assert_eq!(r.oracle, gens(&[(1, 0, 0)]));
        assert!(matches!(audit_generators(&big(2), 101), Err(OracleError::BoxTooLarge(101))));
        assert!(audit_generators(&big(5), 10).is_err());
    }

    #[test]
    fn symmetric_box_finds_exactly_the_reported_generators() {
        let expected = [
            (2, gens(&[(1, 0, 0), (1, 1, 1), (1, -1, 1)])),
            (3, gens(&[(1, 0, 0)])),
            (15, gens(&[(1, 0, 0), (4, 2, 1), (4, -2, 1)])),
            (39, gens(&[(1, 0, 0), (25, 10, 4), (25, -10, 4)])),
        ];
        for (m, want) in expected {
            assert_eq!(index_one_elements(&big(m), 30).unwrap(), want, "m={m}");
            let param = FieldParam::classify_by_trial(&big(m)).unwrap();
            let mut reported = generators_for_m(&param, &big(10).pow(40)).unwrap().generators;
            reported.sort();
            assert_eq!(reported, want, "m={m}");
        }
    }
}
