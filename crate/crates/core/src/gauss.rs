//! Half-range counting functions behind Gauss' lemma and its Jenkins
//! extension, plus the four joint-count sign identities.
//!
//! All counts enumerate `k` in `[1, n/2)` directly; these are
//! oracle-grade primitives, so clarity wins over speed.

use crate::error::{Error, Result};
use crate::modular::{jacobi, reduce, Modulus};
use crate::params;
use crate::report::VerificationRecord;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A half-range count together with the parameters that produced it.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct HalfRangeCount {
    pub count: u64,
    pub x: i64,
    pub n: u64,
}

/// Which pair of inequalities a joint count tests against `n/2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum JointMode {
    BothAbove,
    BothBelow,
    FirstAboveSecondBelow,
}

impl std::str::FromStr for JointMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both-above" => Ok(JointMode::BothAbove),
            "both-below" => Ok(JointMode::BothBelow),
            "first-above-second-below" => Ok(JointMode::FirstAboveSecondBelow),
            _ => Err(Error::Domain(format!("unknown joint mode `{s}`"))),
        }
    }
}

fn require_coprime(x: i64, n: Modulus) -> Result<u64> {
    let xr = reduce(x, n.get());
    if gcd(xr, n.get()) != 1 {
        return Err(Error::Domain(format!(
            "gcd({x}, {}) != 1",
            n.get()
        )));
    }
    Ok(xr)
}

/// `|{1 <= k < n/2 : {kx}_n > n/2}|`, the Gauss/Jenkins count.
pub fn count_above_half(x: i64, n: Modulus) -> Result<HalfRangeCount> {
    let nn = n.get();
    let xr = require_coprime(x, n)?;
    let mut r = 0u64;
    let mut count = 0u64;
    for _k in 1..=n.half() {
        r += xr;
        if r >= nn {
            r -= nn;
        }
        // n odd and gcd(x,n)=1: {kx}_n is never 0 or exactly n/2 here
        debug_assert!(r != 0);
        if 2 * r > nn {
            count += 1;
        }
    }
    Ok(HalfRangeCount { count, x, n: nn })
}

/// `|{1 <= k < n/2 : {kx}_n > k}|`, the count of Theorem-style
/// index-exceeding multiples (`N_p(x)` when `n` is prime).
pub fn count_exceeds_index(x: i64, n: Modulus) -> Result<HalfRangeCount> {
    let nn = n.get();
    let xr = require_coprime(x, n)?;
    let mut r = 0u64;
    let mut count = 0u64;
    for k in 1..=n.half() {
        r += xr;
        if r >= nn {
            r -= nn;
        }
        if r > k {
            count += 1;
        }
    }
    Ok(HalfRangeCount { count, x, n: nn })
}

/// Joint count of `{kx}_n` and `{k(1-x)}_n` against `n/2`.
pub fn joint_count(x: i64, n: Modulus, mode: JointMode) -> Result<HalfRangeCount> {
    let nn = n.get();
    let xr = require_coprime(x, n)?;
    let yr = require_coprime(1 - x, n)?;
    let mut r1 = 0u64;
    let mut r2 = 0u64;
    let mut count = 0u64;
    for _k in 1..=n.half() {
        r1 += xr;
        if r1 >= nn {
            r1 -= nn;
        }
        r2 += yr;
        if r2 >= nn {
            r2 -= nn;
        }
        let above1 = 2 * r1 > nn;
        let above2 = 2 * r2 > nn;
        let hit = match mode {
            JointMode::BothAbove => above1 && above2,
            JointMode::BothBelow => !above1 && !above2,
            JointMode::FirstAboveSecondBelow => above1 && !above2,
        };
        if hit {
            count += 1;
        }
    }
    Ok(HalfRangeCount { count, x, n: nn })
}

fn sign_of_count(c: u64) -> i64 {
    if c % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Check the five count-symbol identities for one `(x, n)`:
///
/// * eq 2: `(-1)^|{kx > n/2}| = (x/n)`
/// * eq 3: `(-1)^|{kx > k}| = (2x(1-x)/n)`
/// * eq 4: both above `n/2` -> `(2/n)`
/// * eq 5: both below `n/2` -> `(2x(x-1)/n)`
/// * eq 6: first above, second below -> `(2x/n)`
///
/// The five counts are accumulated in a single pass; the standalone
/// count functions above serve as the cross-check oracle in tests.
pub fn verify_gauss_jenkins_identities(x: i64, n: Modulus) -> Result<Vec<VerificationRecord>> {
    let nn = n.get();
    let xr = require_coprime(x, n)?;
    let yr = require_coprime(1 - x, n)?;

    let mut r1 = 0u64;
    let mut r2 = 0u64;
    let mut c_above = 0u64; // {kx}_n > n/2
    let mut c_index = 0u64; // {kx}_n > k
    let mut c_both_above = 0u64;
    let mut c_both_below = 0u64;
    let mut c_first_above = 0u64;
    for k in 1..=n.half() {
        r1 += xr;
        if r1 >= nn {
            r1 -= nn;
        }
        r2 += yr;
        if r2 >= nn {
            r2 -= nn;
        }
        let a1 = 2 * r1 > nn;
        let a2 = 2 * r2 > nn;
        c_above += a1 as u64;
        c_index += (r1 > k) as u64;
        c_both_above += (a1 && a2) as u64;
        c_both_below += (!a1 && !a2) as u64;
        c_first_above += (a1 && !a2) as u64;
    }

    let x = x as i128;
    let two_x_one_minus_x = reduce((2 * x * (1 - x) % nn as i128) as i64, nn) as i64;
    let two_x_x_minus_one = reduce((2 * x * (x - 1) % nn as i128) as i64, nn) as i64;
    let two_x = reduce((2 * x % nn as i128) as i64, nn) as i64;
    let x = x as i64;

    let rec = |eq: i64, count: u64, sym_arg: i64| {
        VerificationRecord::check(
            "thm1.1",
            nn,
            params! {"eq" => eq, "x" => x},
            sign_of_count(count),
            jacobi(sym_arg, n).value(),
        )
    };
    Ok(vec![
        rec(2, c_above, x),
        rec(3, c_index, two_x_one_minus_x),
        rec(4, c_both_above, 2),
        rec(5, c_both_below, two_x_x_minus_one),
        rec(6, c_first_above, two_x),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{factorial_mod, is_prime, OddPrime};

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn count_above_half_examples() {
        assert_eq!(count_above_half(1, m(7)).unwrap().count, 0);
        assert_eq!(count_above_half(3, m(7)).unwrap().count, 1);
        // Lemma 3.3 instance: p = 13, ((p-1)/2)! = 720 = 5 (mod 13)
        let p = OddPrime::new(13).unwrap();
        let f = factorial_mod(6, p).value() as i64;
        assert_eq!(count_above_half(f, m(13)).unwrap().count, 3);
    }

    #[test]
    fn count_exceeds_index_examples() {
        assert_eq!(count_exceeds_index(1, m(9)).unwrap().count, 0);
        assert_eq!(count_exceeds_index(3, m(7)).unwrap().count, 2);
        assert_eq!(count_exceeds_index(5, m(7)).unwrap().count, 2);
    }

    #[test]
    fn joint_count_examples() {
        assert_eq!(joint_count(3, m(7), JointMode::BothAbove).unwrap().count, 0);
        assert_eq!(joint_count(3, m(7), JointMode::BothBelow).unwrap().count, 1);
        assert_eq!(
            joint_count(3, m(7), JointMode::FirstAboveSecondBelow)
                .unwrap()
                .count,
            1
        );
    }

    #[test]
    fn coprimality_enforced() {
        assert!(count_above_half(3, m(9)).is_err());
        assert!(joint_count(4, m(9), JointMode::BothAbove).is_err());
    }

    #[test]
    fn identities_hold_small_range() {
        for n in (3..=201u64).step_by(2) {
            let md = m(n);
            for x in 2..n as i64 {
                let ok2 = gcd(reduce(x, n), n) == 1;
                let ok_all = ok2 && gcd(reduce(1 - x, n), n) == 1;
                if ok2 {
                    let c = count_above_half(x, md).unwrap().count;
                    assert_eq!(sign_of_count(c), jacobi(x, md).value(), "eq1.2 x={x} n={n}");
                }
                if !ok_all {
                    continue;
                }
                for r in verify_gauss_jenkins_identities(x, md).unwrap() {
                    assert!(r.ok(), "x={x} n={n}: {r:?}");
                }
            }
        }
    }

    #[test]
    fn fused_counts_match_single_ops() {
        for n in [9u64, 15, 21, 35, 45] {
            let md = m(n);
            for x in 2..n as i64 {
                if gcd(reduce(x, n), n) != 1 || gcd(reduce(1 - x, n), n) != 1 {
                    continue;
                }
                let recs = verify_gauss_jenkins_identities(x, md).unwrap();
                let singles = [
                    count_above_half(x, md).unwrap().count,
                    count_exceeds_index(x, md).unwrap().count,
                    joint_count(x, md, JointMode::BothAbove).unwrap().count,
                    joint_count(x, md, JointMode::BothBelow).unwrap().count,
                    joint_count(x, md, JointMode::FirstAboveSecondBelow)
                        .unwrap()
                        .count,
                ];
                for (r, c) in recs.iter().zip(singles) {
                    assert_eq!(r.lhs, sign_of_count(c), "x={x} n={n}");
                }
            }
        }
    }

    #[test]
    fn joint_modes_partition_half_range() {
        for n in (5..=99u64).step_by(2) {
            let md = m(n);
            for x in 2..n as i64 {
                if gcd(reduce(x, n), n) != 1 || gcd(reduce(1 - x, n), n) != 1 {
                    continue;
                }
                let a = joint_count(x, md, JointMode::BothAbove).unwrap().count;
                let b = joint_count(x, md, JointMode::BothBelow).unwrap().count;
                let c = joint_count(x, md, JointMode::FirstAboveSecondBelow)
                    .unwrap()
                    .count;
                // fourth mode by symmetry: swap the roles of x and 1-x
                let d = joint_count(1 - x, md, JointMode::FirstAboveSecondBelow)
                    .unwrap()
                    .count;
                assert_eq!(a + b + c + d, (n - 1) / 2, "x={x} n={n}");
            }
        }
    }

    #[test]
    fn lemma_3_3_half_factorial_count() {
        for q in (5..=10_000u64).filter(|&q| is_prime(q) && q % 4 == 1) {
            let p = OddPrime::new(q).unwrap();
            let f = factorial_mod((q - 1) / 2, p).value() as i64;
            let c = count_above_half(f, m(q)).unwrap().count;
            assert_eq!(c, (q - 1) / 4, "p={q}");
        }
    }
}
