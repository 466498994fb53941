//! Lucas sequences `u_n(A)`, `v_n(A)` modulo an odd prime, via fast
//! doubling, together with the entry-point and half-index checks.
//!
//! The sequences satisfy `w_{n+1} = A w_n + w_{n-1}` with seeds
//! `(u_0, u_1) = (0, 1)` and `(v_0, v_1) = (2, A)`; the companion
//! roots have product -1, so `v_n^2 - (A^2+4) u_n^2 = 4 (-1)^n`.

use crate::error::{Error, Result};
use crate::modular::{legendre, mul_mod, reduce, OddPrime, Sign};
use crate::params;
use crate::report::VerificationRecord;

/// `(u_n, v_n)` modulo `p` for parameter `A` and index `n`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct LucasPair {
    pub a_param: i64,
    pub n: u64,
    pub u: u64,
    pub v: u64,
    pub p: u64,
}

/// Discriminant `A^2 + 4` reduced mod `p`.
fn disc_mod(a: i64, p: u64) -> u64 {
    let ar = reduce(a, p);
    (mul_mod(ar, ar, p) + 4) % p
}

/// Compute `(u_n(A), v_n(A)) mod p` by fast doubling over the bits
/// of `n`: `u_{2k} = u_k v_k`, `v_{2k} = v_k^2 - 2(-1)^k`, and
/// `u_{k+1} = (A u_k + v_k)/2`, `v_{k+1} = (Δ u_k + A v_k)/2`.
pub fn lucas_pair_mod(a: i64, n: u64, p: OddPrime) -> LucasPair {
    let pp = p.get();
    let ar = reduce(a, pp);
    let dr = disc_mod(a, pp);
    let inv2 = (pp + 1) / 2;

    let mut u = 0u64; // index 0
    let mut v = 2 % pp;
    let mut odd = false; // parity of the current index
    if n > 0 {
        for bit in (0..64 - n.leading_zeros()).rev() {
            // double: index k -> 2k
            let two_sign = if odd { pp - 2 % pp } else { 2 % pp };
            let v2 = (mul_mod(v, v, pp) + pp - two_sign) % pp;
            u = mul_mod(u, v, pp);
            v = v2;
            if (n >> bit) & 1 == 1 {
                // step: index 2k -> 2k + 1
                let nu = mul_mod((mul_mod(ar, u, pp) + v) % pp, inv2, pp);
                let nv = mul_mod((mul_mod(dr, u, pp) + mul_mod(ar, v, pp)) % pp, inv2, pp);
                u = nu;
                v = nv;
            }
            odd = (n >> bit) & 1 == 1;
        }
    }
    LucasPair { a_param: a, n, u, v, p: pp }
}

/// Naive linear recurrence, used as the oracle in tests.
pub fn lucas_pair_naive(a: i64, n: u64, p: OddPrime) -> LucasPair {
    let pp = p.get();
    let ar = reduce(a, pp);
    let (mut u0, mut u1) = (0u64, 1u64);
    let (mut v0, mut v1) = (2 % pp, ar);
    for _ in 0..n {
        (u0, u1) = (u1, (mul_mod(ar, u1, pp) + u0) % pp);
        (v0, v1) = (v1, (mul_mod(ar, v1, pp) + v0) % pp);
    }
    LucasPair { a_param: a, n, u: u0, v: v0, p: pp }
}

fn require_disc_nonzero(a: i64, p: OddPrime) -> Result<u64> {
    let d = disc_mod(a, p.get());
    if d == 0 {
        return Err(Error::Domain(format!(
            "p = {} divides A^2 + 4 for A = {a}",
            p.get()
        )));
    }
    Ok(d)
}

/// Entry-point facts for `p` not dividing `Δ = A^2 + 4`:
/// `u_{p - (Δ/p)} = 0 (mod p)`, and
/// `p | v_{(p - (Δ/p))/2} <=> (-1/p) = -1`.
pub fn entry_point_checks(a: i64, p: OddPrime) -> Result<Vec<VerificationRecord>> {
    let d = require_disc_nonzero(a, p)?;
    let pp = p.get();
    let chi = legendre(d as i64, p).value();
    let e = (pp as i64 - chi) as u64;

    let at_e = lucas_pair_mod(a, e, p);
    let at_half = lucas_pair_mod(a, e / 2, p);
    let minus_one_is_nonresidue = p.mod4() == 3;

    Ok(vec![
        VerificationRecord::check(
            "entry-point",
            pp,
            params! {"A" => a, "n" => e as i64},
            at_e.u as i64,
            0,
        ),
        VerificationRecord::check(
            "lem4.1",
            pp,
            params! {"A" => a, "n" => (e / 2) as i64},
            (at_half.v == 0) as i64,
            minus_one_is_nonresidue as i64,
        ),
    ])
}

/// The measured sign `ε` of the half-index congruence:
/// for `p = 1 (mod 4)`: `u_{(p+(Δ/p))/2} = ε Δ^{(p-1)/4}`;
/// for `p = 3 (mod 4)`: `u_{(p-(Δ/p))/2} = ε 2 Δ^{(p-3)/4}`.
pub fn lemma_4_3_sign(a: i64, p: OddPrime) -> Result<Sign> {
    let d = require_disc_nonzero(a, p)?;
    let pp = p.get();
    let chi = legendre(d as i64, p).value();
    let (idx, target) = if p.mod4() == 1 {
        let idx = (pp as i64 + chi) as u64 / 2;
        (idx, crate::modular::pow_mod(d as i64, (pp - 1) / 4, pp))
    } else {
        let idx = (pp as i64 - chi) as u64 / 2;
        let t = mul_mod(2, crate::modular::pow_mod(d as i64, (pp - 3) / 4, pp), pp);
        (idx, t)
    };
    let u = lucas_pair_mod(a, idx, p).u;
    if u == target {
        Ok(Sign::Plus)
    } else if u == (pp - target) % pp {
        Ok(Sign::Minus)
    } else {
        Err(Error::Inconsistent(format!(
            "u_{idx}({a}) = {u} is neither +-{target} mod {pp}"
        )))
    }
}

/// Norm identity `v_n^2 - Δ u_n^2 = 4 (-1)^n (mod p)`.
pub fn norm_identity_holds(pair: &LucasPair) -> bool {
    let pp = pair.p;
    let d = disc_mod(pair.a_param, pp);
    let lhs = (mul_mod(pair.v, pair.v, pp) + pp
        - mul_mod(d, mul_mod(pair.u, pair.u, pp), pp) % pp)
        % pp;
    let rhs = reduce(if pair.n % 2 == 0 { 4 } else { -4 }, pp);
    lhs == rhs
}
