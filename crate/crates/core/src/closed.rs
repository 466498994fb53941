//! Closed-form evaluators: the case tables for the full-range product
//! S_p, the braces product, the half-square products T_p (general A,
//! Fibonacci, Pell, and the 2i^2 +- 5ij + 2j^2 family), the
//! triangular linear symbol product, and the predicted right-hand
//! sides of the ten conjectures.
//!
//! Every formula is implemented exactly as displayed, one dispatch
//! arm per congruence class, with no algebraic simplification.

use crate::error::{Error, Result};
use crate::invariants::mordell_sign;
use crate::lucas::lucas_pair_mod;
use crate::modular::{
    factorial_mod, inv_mod, jacobi_raw, legendre, mul_mod, pow_mod, reduce, OddPrime, Sign,
};
use crate::modular::binom_mod;
use crate::products::{qr_count_interval_or_empty, QuadraticForm};

/// Result of one closed-form evaluation: the residue, the case label
/// that fired, and (for the degenerate all-zero S_p case only) the
/// stated value alongside the empty-product convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub value: u64,
    pub case: &'static str,
    /// Set only for the degenerate all-zero case, where the stated
    /// table value (0) diverges from the empty-product convention (1)
    /// used by the brute-force oracle.
    pub stated_value: Option<u64>,
}

impl ClosedFormResult {
    fn of(value: u64, case: &'static str) -> Self {
        ClosedFormResult {
            value,
            case,
            stated_value: None,
        }
    }

    fn sign(s: Sign, p: u64, case: &'static str) -> Self {
        Self::of(s.as_residue(p), case)
    }
}

/// Exponent of `(-1)` given by floor toward negative infinity; at
/// small primes this differs from truncating division and the sign
/// flips with it.
fn neg_one_floor(num: i64, den: i64) -> Sign {
    Sign::from_exponent(num.div_euclid(den))
}

/// Closed form for `S_p(a,b,c)`: the general two-case formula when
/// `p` divides none of `a`, `c`, `a+b+c`, otherwise the ten-case
/// table, matched in its stated order.
pub fn closed_s(f: &QuadraticForm, p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    let (a, b, c) = f.reduced(pp);
    let sym = |x: u64| legendre(x as i64, p);
    let neg = |x: u64| (pp - x % pp) % pp;
    let apb = (a + b) % pp;
    let apbpc = (apb + c) % pp;
    let disc = reduce(f.discriminant().rem_euclid(pp as i128) as i64, pp);

    if a != 0 && c != 0 && apbpc != 0 {
        return Ok(if disc == 0 {
            ClosedFormResult::sign(sym(a).mul(sym(apbpc)), pp, "p | disc")
        } else {
            ClosedFormResult::sign(
                sym(a).mul(sym(c)).mul(sym(apbpc)).mul(sym(disc)).negate(),
                pp,
                "p ∤ disc",
            )
        });
    }

    let bpc = (b + c) % pp;
    let amc = (a + neg(c)) % pp;
    let r = if a == 0 && b == 0 && c == 0 {
        let mut r = ClosedFormResult::of(1, "degenerate-all-zero");
        r.stated_value = Some(0);
        r
    } else if a != 0 && b == 0 && c == 0 {
        ClosedFormResult::sign(sym(neg(a)).negate(), pp, "p ∤ a, p | b, p | c")
    } else if a == 0 && b != 0 && c == 0 {
        ClosedFormResult::sign(sym(b).negate(), pp, "p | a, p ∤ b, p | c")
    } else if a == 0 && b == 0 && c != 0 {
        ClosedFormResult::sign(sym(neg(c)).negate(), pp, "p | a, p | b, p ∤ c")
    } else if a == 0 && b != 0 && c != 0 && bpc == 0 {
        ClosedFormResult::sign(sym(c).negate(), pp, "p | a, p ∤ bc, p | b+c")
    } else if a != 0 && b != 0 && apb == 0 && c == 0 {
        ClosedFormResult::sign(sym(a).negate(), pp, "p ∤ ab, p | a+b, p | c")
    } else if a != 0 && c != 0 && amc == 0 && apbpc == 0 {
        ClosedFormResult::sign(sym(neg(a)).negate(), pp, "p ∤ ac, p | a-c, p | a+b+c")
    } else if a != 0 && c != 0 && amc != 0 && apbpc == 0 {
        ClosedFormResult::sign(sym(neg(mul_mod(a, c, pp))), pp, "p ∤ ac(a-c), p | a+b+c")
    } else if a != 0 && b != 0 && apb != 0 && c == 0 {
        ClosedFormResult::sign(
            sym(neg(mul_mod(a, apb, pp))),
            pp,
            "p ∤ ab(a+b), p | c",
        )
    } else if a == 0 && b != 0 && c != 0 && bpc != 0 {
        ClosedFormResult::sign(
            sym(neg(mul_mod(c, bpc, pp))),
            pp,
            "p | a, p ∤ bc(b+c)",
        )
    } else {
        return Err(Error::CaseFallthrough {
            a: f.a,
            b: f.b,
            c: f.c,
            p: pp,
        });
    };
    Ok(r)
}

/// Closed form for the braces product `{a,b}_p` (requires
/// `ab = -1 mod p`). The stated display determines `-{a,b}_p`; this
/// returns `{a,b}_p` itself.
pub fn closed_braces(a: i64, b: i64, p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    let ar = reduce(a, pp);
    let br = reduce(b, pp);
    if mul_mod(ar, br, pp) != pp - 1 {
        return Err(Error::Domain(format!(
            "ab must be -1 mod {pp}, got a={a} b={b}"
        )));
    }
    if ar != br {
        let amb = (ar + pp - br) % pp;
        let s = if p.mod4() == 1 {
            legendre(amb as i64, p)
        } else {
            legendre(ar as i64, p).mul(legendre(amb as i64, p))
        };
        return Ok(ClosedFormResult::sign(
            s.negate(),
            pp,
            if p.mod4() == 1 { "a ≢ b, p = 1 mod 4" } else { "p = 3 mod 4" },
        ));
    }
    // a = b forces a^2 = -1, so p = 1 (mod 4)
    half_square_root_branch(ar, p)
}

/// Shared branch for `a = b` in the braces product and `p | A^2 + 4`
/// in T_p: the value is driven by `((p-1)/2)!` and p mod 8.
fn half_square_root_branch(a_root: u64, p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    if p.mod4() != 1 {
        return Err(Error::Unreachable(format!(
            "square root of -1 exists mod {pp} only for p = 1 mod 4"
        )));
    }
    let half_fact = factorial_mod((pp - 1) / 2, p).value();
    let k = if a_root == half_fact {
        0i64
    } else if a_root == pp - half_fact {
        1
    } else {
        return Err(Error::Unreachable(format!(
            "{a_root} is not +-((p-1)/2)! mod {pp}"
        )));
    };
    Ok(if p.mod8() == 1 {
        ClosedFormResult::of(
            mul_mod(
                Sign::from_exponent(((pp + 7) / 8) as i64).as_residue(pp),
                half_fact,
                pp,
            ),
            "p = 1 mod 8",
        )
    } else {
        ClosedFormResult::sign(
            Sign::from_exponent(k + ((pp - 5) / 8) as i64),
            pp,
            "p = 5 mod 8",
        )
    })
}

/// Closed form for `T_p(1,-A,-1)`, dispatching on the Legendre symbol
/// of the discriminant `A^2 + 4`.
pub fn closed_t_general(a_param: i64, p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    let ar = reduce(a_param, pp);
    let disc = (mul_mod(ar, ar, pp) + 4) % pp;
    if disc == 0 {
        let a_half = mul_mod(ar, inv_mod(2, pp)?, pp);
        return half_square_root_branch(a_half, p);
    }
    let inv2 = (pp + 1) / 2;
    Ok(match legendre(disc as i64, p) {
        Sign::Plus => {
            if p.mod4() == 1 {
                ClosedFormResult::of(
                    pp - pow_mod(disc as i64, (pp - 1) / 4, pp),
                    "(disc/p) = 1, p = 1 mod 4",
                )
            } else {
                let u = lucas_pair_mod(a_param, (pp - 1) / 2, p).u;
                let t = mul_mod(pow_mod(disc as i64, (pp + 1) / 4, pp), mul_mod(u, inv2, pp), pp);
                ClosedFormResult::of((pp - t) % pp, "(disc/p) = 1, p = 3 mod 4")
            }
        }
        Sign::Minus => {
            if p.mod4() == 1 {
                ClosedFormResult::of(
                    pow_mod(-(disc as i64), (pp - 1) / 4, pp),
                    "(disc/p) = -1, p = 1 mod 4",
                )
            } else {
                let u = lucas_pair_mod(a_param, (pp + 1) / 2, p).u;
                ClosedFormResult::of(
                    mul_mod(
                        pow_mod(-(disc as i64), (pp + 1) / 4, pp),
                        mul_mod(u, inv2, pp),
                        pp,
                    ),
                    "(disc/p) = -1, p = 3 mod 4",
                )
            }
        }
        Sign::Zero => unreachable!("disc reduced nonzero"),
    })
}

/// Four-case closed form for `T_p(1,-1,-1)` (Fibonacci numerators).
pub fn closed_t_fibonacci(p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    if pp == 5 {
        return Err(Error::Domain("p = 5 divides the discriminant; use the general form".into()));
    }
    Ok(match pp % 20 {
        1 | 9 => ClosedFormResult::of(pp - pow_mod(5, (pp - 1) / 4, pp), "p = 1,9 mod 20"),
        13 | 17 => ClosedFormResult::of(pow_mod(-5, (pp - 1) / 4, pp), "p = 13,17 mod 20"),
        3 | 7 => ClosedFormResult::sign(
            neg_one_floor(pp as i64 - 10, 20),
            pp,
            "p = 3,7 mod 20",
        ),
        _ => ClosedFormResult::sign(
            neg_one_floor(pp as i64 - 5, 10),
            pp,
            "p = 11,19 mod 20",
        ),
    })
}

/// Four-case closed form for `T_p(1,-2,-1)` (Pell numerators).
pub fn closed_t_pell(p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    Ok(match p.mod8() {
        1 => ClosedFormResult::of(pp - pow_mod(2, (pp - 1) / 4, pp), "p = 1 mod 8"),
        5 => ClosedFormResult::of(pow_mod(2, (pp - 1) / 4, pp), "p = 5 mod 8"),
        3 => ClosedFormResult::sign(
            Sign::from_exponent(((pp - 3) / 8) as i64),
            pp,
            "p = 3 mod 8",
        ),
        _ => ClosedFormResult::sign(
            Sign::from_exponent(((pp - 7) / 8) as i64),
            pp,
            "p = 7 mod 8",
        ),
    })
}

/// Closed form for `T_p(2, 5d, 2)` with `d` either sign.
pub fn closed_t_form252(delta: Sign, p: OddPrime) -> Result<ClosedFormResult> {
    let pp = p.get();
    if pp <= 3 || delta == Sign::Zero {
        return Err(Error::Domain("requires p > 3 and delta = +-1".into()));
    }
    if p.mod4() == 1 {
        return Ok(ClosedFormResult::sign(
            neg_one_floor(pp as i64 + 11, 12),
            pp,
            "p = 1 mod 4",
        ));
    }
    // (6/p) * delta * 2^delta * 3^{-delta} * C^{-2 delta},
    // C = binom((p-3)/2, (p-3)/4)
    let six = legendre(6, p);
    let c = binom_mod((pp - 3) / 2, (pp - 3) / 4, p.modulus())?.value();
    let c2 = mul_mod(c, c, pp);
    let core = match delta {
        Sign::Plus => mul_mod(mul_mod(2, inv_mod(3, pp)?, pp), inv_mod(c2 as i64, pp)?, pp),
        _ => (pp - mul_mod(mul_mod(inv_mod(2, pp)?, 3, pp), c2, pp)) % pp,
    };
    Ok(ClosedFormResult::of(
        mul_mod(six.as_residue(pp), core, pp),
        "p = 3 mod 4",
    ))
}

/// Closed form for the triangular linear symbol product
/// `prod_{i<j} ((j + d i)/p)`.
pub fn closed_triangle_linear(delta: Sign, p: OddPrime) -> Result<Sign> {
    let pp = p.get();
    if pp <= 3 || delta == Sign::Zero {
        return Err(Error::Domain("requires p > 3 and delta = +-1".into()));
    }
    Ok(if p.mod4() == 1 {
        let c = qr_count_interval_or_empty(p, 1, pp / 4, delta)?;
        Sign::from_exponent(c as i64)
    } else if p.mod8() == 3 {
        Sign::from_exponent(((pp - 3) / 8) as i64)
    } else {
        // (-1)^{(p+1)/8 + (h(-p)+1)/2}
        Sign::from_exponent(((pp + 1) / 8) as i64).mul(mordell_sign(p)?)
    })
}

/// `(-1)^{(h(-p)-1)/2}` for `p = 3 (mod 4)`, via the Mordell sign.
fn h_parity_minus(p: OddPrime) -> Result<Sign> {
    Ok(mordell_sign(p)?.negate())
}

/// `(-1)^{(h(-p)+1)/2}` for `p = 3 (mod 4)`.
fn h_parity_plus(p: OddPrime) -> Result<Sign> {
    mordell_sign(p)
}

fn count_minus_below(p: OddPrime, hi: u64) -> Result<u64> {
    qr_count_interval_or_empty(p, 1, hi, Sign::Minus)
}

fn count_plus_below(p: OddPrime, hi: u64) -> Result<u64> {
    qr_count_interval_or_empty(p, 1, hi, Sign::Plus)
}

/// Residue predicted for `T_p(1, 4d, 1)` when `p = 1 (mod 12)` (the
/// residue part of the seventh conjecture; the value is the same for
/// both signs of d).
pub fn conjecture_7_4_residue(p: OddPrime) -> Result<u64> {
    let pp = p.get();
    if pp % 12 != 1 {
        return Err(Error::Domain(format!("{pp} is not 1 mod 12")));
    }
    Ok(pp - pow_mod(3, (pp - 1) / 4, pp))
}

/// Predicted sign of the bare symbol product for conjecture `id`
/// ("7.1".."7.10").
///
/// For the conjectures displayed as a pair of products, `delta`
/// selects the variant: `+1` picks the form with positive middle or
/// `r i + j` linear term, `-1` the negative one. Where a display
/// carries a count prefactor on its left-hand side, that prefactor is
/// folded into the returned value, so the comparison target is always
/// the plain symbol product. `delta` is ignored for 7.5.
pub fn conjecture_rhs(id: &str, delta: Sign, p: OddPrime) -> Result<Sign> {
    let pp = p.get();
    if pp <= 3 {
        return Err(Error::Domain("conjectures require p > 3".into()));
    }
    let d = match delta {
        Sign::Plus => 1i64,
        Sign::Minus => -1,
        Sign::Zero => return Err(Error::Domain("delta must be +-1".into())),
    };
    let exp = Sign::from_exponent;
    match id {
        "7.1" => {
            let bracket = legendre(-1, p).value()
                + legendre(2, p).value()
                + legendre(6, p).value()
                - jacobi_raw(pp as i64, 3);
            let sym_delta = if d == 1 { Sign::Plus } else { legendre(-1, p) };
            debug_assert!(bracket % 2 == 0 && bracket.abs() == 2);
            Ok(sym_delta.mul(Sign::from_i64(bracket / 2)?))
        }
        "7.2" => Ok(match (d, pp % 24) {
            (-1, 5) | (-1, 7) | (1, 5) | (1, 11) => Sign::Minus,
            _ => Sign::Plus,
        }),
        "7.3" => Ok(if d == -1 {
            match pp % 20 {
                7 | 19 => Sign::Minus,
                _ => Sign::Plus,
            }
        } else {
            match pp % 40 {
                19 | 23 | 27 | 31 => Sign::Minus,
                _ => Sign::Plus,
            }
        }),
        "7.4" => {
            let dsign = Sign::from_i64(d)?;
            match pp % 24 {
                1 => Ok(Sign::Plus),
                17 => Ok(exp(count_minus_below(p, pp / 4)? as i64)),
                7 => Ok(dsign.mul(exp(count_minus_below(p, pp / 12)? as i64 - 1))),
                19 => Ok(dsign
                    .mul(exp(count_minus_below(p, pp / 12)? as i64))
                    .mul(h_parity_minus(p)?)),
                _ => Err(Error::Domain(format!(
                    "p = {} mod 24 not covered by the stated cases",
                    pp % 24
                ))),
            }
        }
        "7.5" => Ok(match pp % 20 {
            1 | 7 | 9 | 19 => Sign::Plus,
            _ => Sign::Minus,
        }),
        "7.6" => {
            let c3 = count_minus_below(p, pp / 3)? as i64;
            if d == 1 {
                let case = match pp % 12 {
                    1 | 11 => Sign::Plus,
                    _ => exp((pp / 12) as i64),
                };
                Ok(exp(c3).mul(case))
            } else {
                Ok(match pp % 12 {
                    1 => exp(c3 + ((pp - 1) / 12) as i64),
                    5 => exp(c3 - 1),
                    7 => exp(count_plus_below(p, pp / 6)? as i64 + ((pp + 1) / 4) as i64),
                    _ => Sign::Minus,
                })
            }
        }
        "7.7" => {
            if d == 1 {
                match p.mod8() {
                    1 | 5 => Ok(Sign::Plus),
                    3 => Ok(h_parity_minus(p)?.mul(exp((pp / 8) as i64))),
                    _ => Ok(exp(count_minus_below(p, pp / 4)? as i64)),
                }
            } else if p.mod4() == 1 {
                Ok(exp(((pp - 1) / 4) as i64))
            } else {
                Ok(exp((pp / 8) as i64))
            }
        }
        "7.8" => {
            if pp <= 5 {
                return Err(Error::Domain("requires p > 5".into()));
            }
            let c10 = count_minus_below(p, pp / 10)? as i64;
            if d == 1 {
                let case = match pp % 20 {
                    1 | 3 | 17 | 19 => neg_one_floor(pp as i64 + 1, 10),
                    7 | 13 => neg_one_floor(pp as i64, 20),
                    _ => neg_one_floor(pp as i64 + 9, 20),
                };
                Ok(exp(c10).mul(case))
            } else {
                Ok(match pp % 20 {
                    3 | 7 => h_parity_plus(p)?,
                    11 => exp(((pp + 9) / 20) as i64),
                    19 => exp(c10).mul(h_parity_minus(p)?),
                    1 | 17 => exp(c10 + (pp as i64 + 3).div_euclid(20)),
                    _ => exp(c10 + (pp as i64 - 3).div_euclid(10)),
                })
            }
        }
        "7.9" => {
            if d == 1 {
                match pp % 24 {
                    1 => Ok(exp(count_minus_below(p, pp / 12)? as i64)),
                    5 | 17 | 13 => {
                        // p = 1 mod 4 here, so (p+3)/4 is exact
                        let lo = (pp + 3) / 4;
                        let hi = (pp + 1) / 3;
                        Ok(exp(qr_count_interval_or_empty(p, lo, hi, Sign::Minus)? as i64))
                    }
                    23 | 19 => Ok(h_parity_plus(p)?.mul(exp(((pp + 1) / 24) as i64))),
                    _ => Ok(exp((pp / 24) as i64 - 1)),
                }
            } else {
                let lo = (pp + 2) / 4 + 1;
                let hi = pp / 3;
                Ok(exp(qr_count_interval_or_empty(p, lo, hi, Sign::Plus)? as i64))
            }
        }
        "7.10" => {
            if d == 1 {
                let c4 = count_minus_below(p, pp / 4)? as i64;
                let case = if p.mod8() == 7 {
                    exp(((pp + 1) / 8) as i64)
                } else {
                    Sign::Plus
                };
                Ok(exp(c4).mul(case))
            } else if p.mod4() == 1 {
                Ok(exp(count_plus_below(p, pp / 4)? as i64))
            } else if p.mod8() == 3 {
                Ok(h_parity_plus(p)?.mul(exp(((pp - 3) / 8) as i64)))
            } else {
                Ok(Sign::Minus)
            }
        }
        _ => Err(Error::UnknownItem(id.to_string())),
    }
}
