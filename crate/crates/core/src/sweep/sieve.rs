//! Segmented sieve of Eratosthenes for prime range generation.

use crate::error::{Error, Result};
use crate::modular::MAX_MODULUS;

const SEGMENT: usize = 1 << 16;

/// All primes in `[lo, hi)`, ascending.
pub fn sieve_primes(lo: u64, hi: u64) -> Result<Vec<u64>> {
    if lo < 2 || lo >= hi || hi > MAX_MODULUS {
        return Err(Error::Domain(format!(
            "prime range must satisfy 2 <= lo < hi <= 2^31, got [{lo}, {hi})"
        )));
    }
    // base primes up to sqrt(hi) by a plain sieve
    let root = (hi as f64).sqrt() as u64 + 1;
    let mut is_comp = vec![false; root as usize + 1];
    let mut base = Vec::new();
    for q in 2..=root {
        if !is_comp[q as usize] {
            base.push(q);
            let mut m = q * q;
            while m <= root {
                is_comp[m as usize] = true;
                m += q;
            }
        }
    }

    let mut out = Vec::new();
    let mut seg_lo = lo;
    let mut mark = vec![false; SEGMENT];
    while seg_lo < hi {
        let seg_hi = (seg_lo + SEGMENT as u64).min(hi);
        let len = (seg_hi - seg_lo) as usize;
        mark[..len].fill(false);
        for &q in &base {
            if q * q >= seg_hi {
                break;
            }
            let start = (q * q).max(seg_lo.div_ceil(q) * q);
            let mut m = start;
            while m < seg_hi {
                mark[(m - seg_lo) as usize] = true;
                m += q;
            }
        }
        for i in 0..len {
            let n = seg_lo + i as u64;
            if n >= 2 && !mark[i] {
                out.push(n);
            }
        }
        seg_lo = seg_hi;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::is_prime;

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_primes(3, 10).unwrap(), vec![3, 5, 7]);
        assert_eq!(
            sieve_primes(13000, 13010).unwrap(),
            vec![13001, 13003, 13007, 13009]
        );
        assert_eq!(sieve_primes(2, 3).unwrap(), vec![2]);
        assert!(sieve_primes(10, 10).is_err());
        assert!(sieve_primes(1, 10).is_err());
    }

    #[test]
    fn sieve_matches_miller_rabin() {
        let sieved = sieve_primes(2, 100_000).unwrap();
        let direct: Vec<u64> = (2..100_000).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, direct);
        // a segment boundary crossing
        let mid = sieve_primes(65_500, 65_600).unwrap();
        let want: Vec<u64> = (65_500..65_600).filter(|&n| is_prime(n)).collect();
        assert_eq!(mid, want);
    }
}
