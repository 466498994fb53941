//! Exact modular arithmetic over small odd moduli: powers, inverses,
//! Legendre/Jacobi symbols, rational residues, factorials and binomials.
//!
//! Moduli are restricted below 2^31 so that a product of two reduced
//! residues always fits in a `u64` and mod-p^2 work fits comfortably
//! in 64 bits. Everything here is a pure function.

use crate::error::{Error, Result};

/// Moduli must stay below this bound so `a * b` with `a, b < m` cannot
/// overflow 64-bit arithmetic (and `m = p^2` still fits for the
/// mod-p^2 congruence checks).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Reduce a (possibly negative) integer into `[0, m)`.
#[inline]
pub fn reduce(x: i64, m: u64) -> u64 {
    x.rem_euclid(m as i64) as u64
}

/// `(a * b) mod m` for already-reduced operands.
#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(m < MAX_MODULUS || a < m && b < m);
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `base^exp mod m` by binary exponentiation.
pub fn pow_mod(base: i64, mut exp: u64, m: u64) -> u64 {
    let mut b = reduce(base, m);
    let mut acc = 1 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse via the extended Euclidean algorithm.
pub fn inv_mod(a: i64, m: u64) -> Result<u64> {
    let a0 = reduce(a, m) as i64;
    let m0 = m as i64;
    let (mut old_r, mut r) = (a0, m0);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(old_s.rem_euclid(m0) as u64)
}

/// Jacobi symbol `(a/n)` for odd `n >= 1`, by the binary reciprocity
/// algorithm. Returns 0 iff `gcd(a, n) > 1`.
pub fn jacobi_raw(a: i64, n: u64) -> i64 {
    debug_assert!(n % 2 == 1 && n >= 1);
    let mut a = reduce(a, n);
    let mut n = n;
    let mut t = 1i64;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// A validated odd modulus `n >= 3`, `n < 2^31`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n < 3 || n % 2 == 0 || n >= MAX_MODULUS {
            return Err(Error::Domain(format!(
                "modulus must be odd, >= 3 and < 2^31, got {n}"
            )));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// `(n - 1) / 2`, the half-range bound used throughout.
    #[inline]
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin, valid for all n < 3_215_031_751
/// (bases 2, 3, 5, 7), which covers the whole supported range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a as i64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A validated odd prime `p >= 3` with its small residue classes cached.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OddPrime {
    p: u64,
    mod4: u8,
    mod8: u8,
    mod12: u8,
    mod20: u8,
    mod24: u8,
}

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p >= MAX_MODULUS {
            return Err(Error::Domain(format!("prime must be in [3, 2^31), got {p}")));
        }
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        Ok(OddPrime {
            p,
            mod4: (p % 4) as u8,
            mod8: (p % 8) as u8,
            mod12: (p % 12) as u8,
            mod20: (p % 20) as u8,
            mod24: (p % 24) as u8,
        })
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.p
    }

    #[inline]
    pub fn half(self) -> u64 {
        (self.p - 1) / 2
    }

    pub fn modulus(self) -> Modulus {
        Modulus(self.p)
    }

    #[inline]
    pub fn mod4(self) -> u8 {
        self.mod4
    }
    #[inline]
    pub fn mod8(self) -> u8 {
        self.mod8
    }
    #[inline]
    pub fn mod12(self) -> u8 {
        self.mod12
    }
    #[inline]
    pub fn mod20(self) -> u8 {
        self.mod20
    }
    #[inline]
    pub fn mod24(self) -> u8 {
        self.mod24
    }
}

impl std::fmt::Display for OddPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.p)
    }
}

/// Value of a Legendre or Jacobi symbol.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sign {
    Minus,
    Zero,
    Plus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Result<Self> {
        match v {
            -1 => Ok(Sign::Minus),
            0 => Ok(Sign::Zero),
            1 => Ok(Sign::Plus),
            _ => Err(Error::Domain(format!("not a sign value: {v}"))),
        }
    }

    /// `(-1)^e` as a sign; `e` may be negative (floor exponents).
    pub fn from_exponent(e: i64) -> Self {
        if e.rem_euclid(2) == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    #[inline]
    pub fn value(self) -> i64 {
        match self {
            Sign::Minus => -1,
            Sign::Zero => 0,
            Sign::Plus => 1,
        }
    }

    /// The canonical residue of this sign in `[0, m)`.
    pub fn as_residue(self, m: u64) -> u64 {
        reduce(self.value(), m)
    }

    pub fn mul(self, other: Sign) -> Sign {
        match self.value() * other.value() {
            -1 => Sign::Minus,
            1 => Sign::Plus,
            _ => Sign::Zero,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
            Sign::Zero => Sign::Zero,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// An integer reduced into `[0, m)`, tagged with its modulus.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(x: i64, m: u64) -> Self {
        Residue {
            value: reduce(x, m),
            modulus: m,
        }
    }

    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u64 {
        self.modulus
    }
}

impl std::fmt::Display for Residue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

/// `base^exp mod m`.
pub fn mod_pow(base: i64, exp: u64, m: Modulus) -> Residue {
    Residue {
        value: pow_mod(base, exp, m.get()),
        modulus: m.get(),
    }
}

/// Inverse of `a` modulo `m`; errors when `gcd(a, m) != 1`.
pub fn mod_inv(a: i64, m: Modulus) -> Result<Residue> {
    Ok(Residue {
        value: inv_mod(a, m.get())?,
        modulus: m.get(),
    })
}

/// Jacobi symbol `(x/n)`.
pub fn jacobi(x: i64, n: Modulus) -> Sign {
    match jacobi_raw(x, n.get()) {
        -1 => Sign::Minus,
        1 => Sign::Plus,
        _ => Sign::Zero,
    }
}

/// Legendre symbol `(x/p)`; coincides with the Jacobi symbol at primes.
pub fn legendre(x: i64, p: OddPrime) -> Sign {
    jacobi(x, p.modulus())
}

/// The unique `r` in `[0, n)` with `b * r = a (mod n)`, i.e. `{a/b}_n`.
pub fn rational_residue(a: i64, b: i64, n: Modulus) -> Result<Residue> {
    let binv = inv_mod(b, n.get())?;
    Ok(Residue {
        value: mul_mod(reduce(a, n.get()), binv, n.get()),
        modulus: n.get(),
    })
}

/// `m! mod p`.
pub fn factorial_mod(m: u64, p: OddPrime) -> Residue {
    let pp = p.get();
    let mut acc = 1u64;
    for k in 2..=m.min(pp) {
        if k >= pp {
            // p itself appears among the factors
            return Residue { value: 0, modulus: pp };
        }
        acc = mul_mod(acc, k, pp);
    }
    Residue { value: acc, modulus: pp }
}

/// `m!! mod p` where `m!! = m (m-2) (m-4) ... (down to 1 or 2)`, `0!! = 1`.
pub fn double_factorial_mod(m: u64, p: OddPrime) -> Residue {
    let pp = p.get();
    let mut acc = 1u64;
    let mut k = m;
    while k >= 1 {
        acc = mul_mod(acc, k % pp, pp);
        if k < 2 {
            break;
        }
        k -= 2;
    }
    Residue { value: acc, modulus: pp }
}

/// Binomial coefficient `C(n, k) mod m`, computed as the reduced
/// numerator product times the inverse of `k!`. Requires every
/// `i <= k` to be invertible modulo `m` (always true for `m = p` or
/// `m = p^2` with `n < p`).
pub fn binom_mod(n: u64, k: u64, m: Modulus) -> Result<Residue> {
    if k > n {
        return Err(Error::Domain(format!("binomial with k > n: C({n},{k})")));
    }
    let mm = m.get();
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 1..=k {
        num = mul_mod(num, (n - k + i) % mm, mm);
        den = mul_mod(den, i % mm, mm);
    }
    let deninv = inv_mod(den as i64, mm)?;
    Ok(Residue {
        value: mul_mod(num, deninv, mm),
        modulus: mm,
    })
}

/// Per-prime table of Legendre symbols `(k/p)` for `k` in `[0, p)`,
/// built in O(p) by marking the nonzero squares.
pub struct LegendreTable {
    p: u64,
    table: Vec<i8>,
}

impl LegendreTable {
    pub fn new(p: OddPrime) -> Self {
        let pp = p.get() as usize;
        let mut table = vec![-1i8; pp];
        table[0] = 0;
        for k in 1..=(pp - 1) / 2 {
            let sq = (k * k) % pp;
            table[sq] = 1;
        }
        LegendreTable { p: p.get(), table }
    }

    #[inline]
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Symbol of an already-reduced residue.
    #[inline]
    pub fn sign_of(&self, k: u64) -> i64 {
        debug_assert!(k < self.p);
        self.table[k as usize] as i64
    }

    #[inline]
    pub fn sign_i64(&self, x: i64) -> i64 {
        self.table[reduce(x, self.p) as usize] as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }
    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn mod_pow_examples() {
        assert_eq!(mod_pow(2, 0, m(7)).value(), 1);
        assert_eq!(mod_pow(5, 2, m(13)).value(), 12);
        assert_eq!(mod_pow(5, 6, m(13)).value(), 12);
    }

    #[test]
    fn mod_inv_examples() {
        assert_eq!(mod_inv(1, m(9)).unwrap().value(), 1);
        assert_eq!(mod_inv(2, m(7)).unwrap().value(), 4);
        assert_eq!(mod_inv(6, m(169)).unwrap().value(), 141);
        assert_eq!(
            mod_inv(3, m(9)),
            Err(Error::NotInvertible { a: 3, m: 9 })
        );
    }

    #[test]
    fn jacobi_examples() {
        assert_eq!(jacobi(1, m(15)), Sign::Plus);
        assert_eq!(jacobi(7, m(15)), Sign::Minus);
        assert_eq!(jacobi(2, m(15)), Sign::Plus);
        assert_eq!(jacobi(6, m(15)), Sign::Zero);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(0, p(7)), Sign::Zero);
        assert_eq!(legendre(3, p(7)), Sign::Minus);
        assert_eq!(legendre(5, p(13)), Sign::Minus);
    }

    #[test]
    fn rational_residue_examples() {
        assert_eq!(rational_residue(0, 1, m(9)).unwrap().value(), 0);
        assert_eq!(rational_residue(1, 2, m(7)).unwrap().value(), 4);
        assert_eq!(rational_residue(-3, 1, m(7)).unwrap().value(), 4);
    }

    #[test]
    fn factorial_examples() {
        assert_eq!(factorial_mod(0, p(7)).value(), 1);
        assert_eq!(factorial_mod(3, p(7)).value(), 6);
        assert_eq!(factorial_mod(6, p(13)).value(), 5);
        assert_eq!(factorial_mod(7, p(7)).value(), 0);
    }

    #[test]
    fn double_factorial_examples() {
        assert_eq!(double_factorial_mod(0, p(11)).value(), 1);
        assert_eq!(double_factorial_mod(5, p(11)).value(), 4);
        assert_eq!(double_factorial_mod(4, p(11)).value(), 8);
    }

    #[test]
    fn binom_examples() {
        assert_eq!(binom_mod(6, 0, m(13)).unwrap().value(), 1);
        assert_eq!(binom_mod(6, 3, m(13)).unwrap().value(), 7);
        assert_eq!(binom_mod(6, 3, m(169)).unwrap().value(), 20);
        assert!(binom_mod(3, 6, m(13)).is_err());
    }

    #[test]
    fn legendre_matches_euler_criterion() {
        for q in (3..10_000u64).filter(|&q| is_prime(q)) {
            let op = p(q);
            for x in [0i64, 1, 2, 3, 5, -1, -2, -3, 17, (q as i64) / 2] {
                let euler = pow_mod(x, (q - 1) / 2, q);
                let expect = if euler == 0 {
                    0
                } else if euler == 1 {
                    1
                } else {
                    assert_eq!(euler, q - 1);
                    -1
                };
                assert_eq!(legendre(x, op).value(), expect, "x={x} p={q}");
            }
        }
    }

    #[test]
    fn wilson_corollary_squares() {
        // ((p-1)/2)!^2 = (-1)^((p+1)/2) (mod p)
        for q in (3..10_000u64).filter(|&q| is_prime(q)) {
            let op = p(q);
            let f = factorial_mod((q - 1) / 2, op).value();
            let lhs = mul_mod(f, f, q);
            let rhs = reduce(if (q + 1) / 2 % 2 == 0 { 1 } else { -1 }, q);
            assert_eq!(lhs, rhs, "p={q}");
        }
    }

    #[test]
    fn factorial_double_factorial_split() {
        // m! = m!! * (m-1)!!
        let op = p(101);
        for mm in 1..=100u64 {
            let lhs = factorial_mod(mm, op).value();
            let rhs = mul_mod(
                double_factorial_mod(mm, op).value(),
                double_factorial_mod(mm - 1, op).value(),
                101,
            );
            assert_eq!(lhs, rhs, "m={mm}");
        }
    }

    #[test]
    fn legendre_table_agrees() {
        for q in [3u64, 5, 7, 13, 101, 499] {
            let op = p(q);
            let t = LegendreTable::new(op);
            for k in 0..q {
                assert_eq!(t.sign_of(k), legendre(k as i64, op).value());
            }
        }
    }

    #[test]
    fn prime_constructor_rejects() {
        assert!(OddPrime::new(1).is_err());
        assert!(OddPrime::new(2).is_err());
        assert!(OddPrime::new(9).is_err());
        assert!(OddPrime::new(15).is_err());
        assert!(Modulus::new(4).is_err());
        assert!(Modulus::new(1).is_err());
    }
}
