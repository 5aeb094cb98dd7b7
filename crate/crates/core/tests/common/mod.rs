#![allow(dead_code)]

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rsa_fixpoints::arith;
use rsa_fixpoints::RsaInstance;

pub const SWEEP_MAX_N: u64 = 3000;
pub const EXPONENTS_PER_MODULUS: usize = 20;

pub fn b(v: u64) -> BigUint {
    BigUint::from(v)
}

pub fn odd_primes_below(limit: u64) -> Vec<u64> {
    (3..limit).filter(|&p| arith::is_prime(&b(p))).collect()
}

/// Every `(p, q)` with odd primes `p < q` and `p q <= max_n`.
pub fn semiprimes(max_n: u64) -> Vec<(u64, u64)> {
    let primes = odd_primes_below(max_n / 3 + 1);
    let mut out = Vec::new();
    for (i, &p) in primes.iter().enumerate() {
        for &q in &primes[i + 1..] {
            if p * q <= max_n {
                out.push((p, q));
            }
        }
    }
    out
}

/// `count` distinct exponents in `[1, 4n]` coprime to λ(n), drawn with a
/// seed derived from `n`, in increasing order.
pub fn sampled_exponents(p: u64, q: u64, count: usize) -> Vec<u64> {
    let n = p * q;
    let lambda = num_integer::lcm(p - 1, q - 1);
    let mut candidates: Vec<u64> = (1..=4 * n)
        .filter(|&e| num_integer::gcd(e, lambda) == 1)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(n);
    candidates.shuffle(&mut rng);
    candidates.truncate(count);
    candidates.sort_unstable();
    candidates
}

/// The full oracle sweep: every `n = p q <= 3000` with 20 sampled exponents.
pub fn sweep() -> Vec<RsaInstance> {
    semiprimes(SWEEP_MAX_N)
        .into_iter()
        .flat_map(|(p, q)| {
            sampled_exponents(p, q, EXPONENTS_PER_MODULUS)
                .into_iter()
                .map(move |e| RsaInstance::from_u64(p, q, e).expect("sampled exponent is valid"))
        })
        .collect()
}
