//! Brute-force O(p^2) oracles for every product family under study:
//! the full-range product `S_p`, the half-square product `T_p`, the
//! restricted `{a,b}_p`, the double-factorial products of the sixth
//! section, Legendre-symbol products over triangular and square index
//! ranges, and interval residue counts.
//!
//! These are deliberately naive; the closed forms are the fast path
//! and these loops are the authority they are checked against.

use crate::error::{Error, Result};
use crate::modular::{inv_mod, legendre, mul_mod, reduce, LegendreTable, OddPrime, Sign};

/// A binary quadratic form `a x^2 + b xy + c y^2`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadraticForm { a, b, c }
    }

    /// Discriminant `b^2 - 4ac`.
    pub fn discriminant(&self) -> i128 {
        self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128
    }

    /// Coefficients reduced into `[0, p)`.
    pub fn reduced(&self, p: u64) -> (u64, u64, u64) {
        (reduce(self.a, p), reduce(self.b, p), reduce(self.c, p))
    }
}

/// Value of a brute-force product together with the number of index
/// pairs skipped because `p` divided the factor. An all-skipped
/// (empty) product has `value = 1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct ProductValue {
    pub value: u64,
    pub skipped: u64,
}

/// `S_p(a,b,c)`: product of `a i^2 + b ij + c j^2` over
/// `1 <= i < j <= p-1`, skipping multiples of `p`.
pub fn product_s(f: &QuadraticForm, p: OddPrime) -> ProductValue {
    let pp = p.get();
    let (a, b, c) = f.reduced(pp);
    let mut value = 1u64;
    let mut skipped = 0u64;
    for i in 1..pp {
        let ai2 = mul_mod(mul_mod(a, i, pp), i, pp);
        let bi = mul_mod(b, i, pp);
        for j in (i + 1)..pp {
            // a i^2 + j (b i + c j)
            let t = (ai2 + mul_mod(j, (bi + mul_mod(c, j, pp)) % pp, pp)) % pp;
            if t == 0 {
                skipped += 1;
            } else {
                value = mul_mod(value, t, pp);
            }
        }
    }
    ProductValue { value, skipped }
}

/// `T_p(a,b,c)`: product over all ordered pairs
/// `1 <= i, j <= (p-1)/2`, skipping multiples of `p`.
pub fn product_t(f: &QuadraticForm, p: OddPrime) -> ProductValue {
    let pp = p.get();
    let h = p.half();
    let (a, b, c) = f.reduced(pp);
    let mut value = 1u64;
    let mut skipped = 0u64;
    for i in 1..=h {
        let ai2 = mul_mod(mul_mod(a, i, pp), i, pp);
        let bi = mul_mod(b, i, pp);
        for j in 1..=h {
            let t = (ai2 + mul_mod(j, (bi + mul_mod(c, j, pp)) % pp, pp)) % pp;
            if t == 0 {
                skipped += 1;
            } else {
                value = mul_mod(value, t, pp);
            }
        }
    }
    ProductValue { value, skipped }
}

/// `{a, b}_p`: product of `(i - aj)(i - bj)` over
/// `1 <= i, j <= (p-1)/2` with `i != aj, bj (mod p)`.
/// Requires `ab = -1 (mod p)`.
pub fn product_braces(a: i64, b: i64, p: OddPrime) -> Result<ProductValue> {
    let pp = p.get();
    let ar = reduce(a, pp);
    let br = reduce(b, pp);
    if mul_mod(ar, br, pp) != pp - 1 {
        return Err(Error::Domain(format!(
            "ab must be -1 mod {pp}, got a={a} b={b}"
        )));
    }
    let h = p.half();
    let mut value = 1u64;
    let mut skipped = 0u64;
    for j in 1..=h {
        let aj = mul_mod(ar, j, pp);
        let bj = mul_mod(br, j, pp);
        for i in 1..=h {
            let t1 = (i + pp - aj) % pp;
            let t2 = (i + pp - bj) % pp;
            if t1 == 0 || t2 == 0 {
                skipped += 1;
            } else {
                value = mul_mod(value, mul_mod(t1, t2, pp), pp);
            }
        }
    }
    Ok(ProductValue { value, skipped })
}

/// The two double-factorial products of Lemma-6 style:
/// `A_p = ((p-1)/2)!! * prod(2i+j)` and
/// `B_p = ((p-3)/2)!! * prod(2i-j)` over `1 <= i, j <= (p-1)/2`,
/// each skipping factors divisible by `p`.
pub fn product_lemma_6_1(p: OddPrime) -> Result<(u64, u64)> {
    if p.get() <= 3 {
        return Err(Error::Domain("requires p > 3".into()));
    }
    let pp = p.get();
    let h = p.half();
    let mut a = crate::modular::double_factorial_mod(h, p).value();
    let mut b = crate::modular::double_factorial_mod(h - 1, p).value();
    for i in 1..=h {
        let two_i = (2 * i) % pp;
        for j in 1..=h {
            let s = (two_i + j) % pp;
            if s != 0 {
                a = mul_mod(a, s, pp);
            }
            let d = (two_i + pp - j) % pp;
            if d != 0 {
                b = mul_mod(b, d, pp);
            }
        }
    }
    Ok((a, b))
}

/// Triangular index range for symbol products of quadratic forms.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum TriRange {
    /// `1 <= i < j <= (p-1)/2`
    StrictUpper,
    /// `1 <= i <= j <= (p-1)/2`
    UpperWithDiagonal,
}

/// Product of Legendre symbols `(f(i,j)/p)` over a triangular range,
/// skipping `p | f(i,j)`.
pub fn symbol_product_quadratic(
    f: &QuadraticForm,
    table: &LegendreTable,
    range: TriRange,
) -> Sign {
    let pp = table.prime();
    let h = (pp - 1) / 2;
    let (a, b, c) = f.reduced(pp);
    let mut neg = 0u64;
    for i in 1..=h {
        let ai2 = mul_mod(mul_mod(a, i, pp), i, pp);
        let bi = mul_mod(b, i, pp);
        let j0 = match range {
            TriRange::StrictUpper => i + 1,
            TriRange::UpperWithDiagonal => i,
        };
        for j in j0..=h {
            let t = (ai2 + mul_mod(j, (bi + mul_mod(c, j, pp)) % pp, pp)) % pp;
            if table.sign_of(t) < 0 {
                neg += 1;
            }
        }
    }
    Sign::from_exponent(neg as i64)
}

/// Index range for symbol products of linear forms `r i + s j`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum LinRange {
    /// all ordered pairs `1 <= i, j <= (p-1)/2`
    FullSquare,
    /// `1 <= i < j <= (p-1)/2`
    StrictUpper,
}

/// Product of Legendre symbols `((r i + s j)/p)` over the range,
/// skipping `p | r i + s j`.
pub fn symbol_product_linear(r: i64, s: i64, table: &LegendreTable, range: LinRange) -> Sign {
    let pp = table.prime();
    let h = (pp - 1) / 2;
    let rr = reduce(r, pp);
    let sr = reduce(s, pp);
    let mut neg = 0u64;
    for i in 1..=h {
        let ri = mul_mod(rr, i, pp);
        let j0 = match range {
            LinRange::FullSquare => 1,
            LinRange::StrictUpper => i + 1,
        };
        for j in j0..=h {
            let t = (ri + mul_mod(sr, j, pp)) % pp;
            if table.sign_of(t) < 0 {
                neg += 1;
            }
        }
    }
    Sign::from_exponent(neg as i64)
}

/// The background products used by the third-section lemmas.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BackgroundProduct {
    /// `prod_{1<=i<j<=(p-1)/2} (j^2 - i^2)`
    SquaresDiffTriangular,
    /// `prod over ordered pairs, p not dividing i^2 - j^2, of (i^2 - j^2)`
    SquaresDiffFull,
    /// `prod_{1<=i<j<=(p-1)/2, p not dividing i^2+j^2} (i^2 + j^2)`
    SumSquaresTriangular,
}

impl std::str::FromStr for BackgroundProduct {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "squares-diff-triangular" => Ok(Self::SquaresDiffTriangular),
            "squares-diff-full" => Ok(Self::SquaresDiffFull),
            "sum-squares-triangular" => Ok(Self::SumSquaresTriangular),
            _ => Err(Error::Domain(format!("unknown background product `{s}`"))),
        }
    }
}

pub fn product_background(p: OddPrime, which: BackgroundProduct) -> Result<ProductValue> {
    let pp = p.get();
    if pp < 5 {
        return Err(Error::Domain("background products need p >= 5".into()));
    }
    let h = p.half();
    let mut value = 1u64;
    let mut skipped = 0u64;
    match which {
        BackgroundProduct::SquaresDiffTriangular => {
            for i in 1..=h {
                for j in (i + 1)..=h {
                    let t = (mul_mod(j, j, pp) + pp - mul_mod(i, i, pp)) % pp;
                    debug_assert!(t != 0);
                    value = mul_mod(value, t, pp);
                }
            }
        }
        BackgroundProduct::SquaresDiffFull => {
            for i in 1..=h {
                let i2 = mul_mod(i, i, pp);
                for j in 1..=h {
                    let t = (i2 + pp - mul_mod(j, j, pp)) % pp;
                    if t == 0 {
                        skipped += 1;
                    } else {
                        value = mul_mod(value, t, pp);
                    }
                }
            }
        }
        BackgroundProduct::SumSquaresTriangular => {
            for i in 1..=h {
                let i2 = mul_mod(i, i, pp);
                for j in (i + 1)..=h {
                    let t = (i2 + mul_mod(j, j, pp)) % pp;
                    if t == 0 {
                        skipped += 1;
                    } else {
                        value = mul_mod(value, t, pp);
                    }
                }
            }
        }
    }
    Ok(ProductValue { value, skipped })
}

/// `|{k in [lo, hi] : (k/p) = sign}|`.
pub fn qr_count_interval(p: OddPrime, lo: u64, hi: u64, sign: Sign) -> Result<u64> {
    if lo < 1 || lo > hi || hi >= p.get() {
        return Err(Error::Domain(format!(
            "invalid interval [{lo}, {hi}] for p = {}",
            p.get()
        )));
    }
    let want = sign.value();
    if want == 0 {
        return Err(Error::Domain("sign must be +-1".into()));
    }
    let mut count = 0u64;
    for k in lo..=hi {
        if legendre(k as i64, p).value() == want {
            count += 1;
        }
    }
    Ok(count)
}

/// Interval count that treats an empty interval (`lo > hi`) as zero;
/// used by the closed forms whose endpoint arithmetic can cross.
pub fn qr_count_interval_or_empty(p: OddPrime, lo: u64, hi: u64, sign: Sign) -> Result<u64> {
    if lo > hi {
        return Ok(0);
    }
    qr_count_interval(p, lo, hi, sign)
}

/// The braces product equals `T_p(1, -(a+b), -1)`; exposed for the
/// dual-route check.
pub fn braces_as_t_form(a: i64, b: i64, p: OddPrime) -> QuadraticForm {
    let pp = p.get();
    let s = (reduce(a, pp) + reduce(b, pp)) % pp;
    QuadraticForm::new(1, -(s as i64), -1)
}

/// All residues `a` paired with `b = -a^{-1} (mod p)`, the full valid
/// parameter set of the braces product for one prime.
pub fn braces_pairs(p: OddPrime) -> Vec<(u64, u64)> {
    let pp = p.get();
    (1..pp)
        .map(|a| {
            let inv = inv_mod(a as i64, pp).expect("nonzero residue is invertible");
            (a, pp - inv)
        })
        .collect()
}
