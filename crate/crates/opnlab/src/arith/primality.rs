//! Miller-Rabin primality testing.
//!
//! Inputs that fit in `u64` use the 12-base deterministic set (no error at
//! all below 3.3 * 10^24, so in particular none below 2^64). Larger inputs
//! fall back to 64 pseudo-random bases derived deterministically from the
//! candidate itself, for an error bound below 4^-64 < 2^-80 while keeping
//! results reproducible across runs.

use super::Natural;
use num_traits::{One, Zero};

const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

// Sufficient for all n < 3_317_044_064_679_887_385_961_981.
const DETERMINISTIC_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RANDOM_ROUNDS: usize = 64;

pub fn is_prime(n: &Natural) -> bool {
    if let Some(v) = to_u64(n) {
        return is_prime_u64(v);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    miller_rabin_big(n)
}

fn to_u64(n: &Natural) -> Option<u64> {
    u64::try_from(n).ok()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'base: for &a in &DETERMINISTIC_BASES {
        let mut x = pow_mod_u64(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

fn miller_rabin_big(n: &Natural) -> bool {
    let one = Natural::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut seed = splitmix_seed(n);
    'round: for _ in 0..RANDOM_ROUNDS {
        // Base in [2, n-2]; n is far above u64 here so any 64-bit draw fits.
        let a = Natural::from(2u64 + splitmix_next(&mut seed) % (u64::MAX - 3));
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'round;
            }
        }
        return false;
    }
    true
}

/// Deterministic per-candidate seed so repeated runs agree bit-exactly.
fn splitmix_seed(n: &Natural) -> u64 {
    let mut h = 0x9e3779b97f4a7c15u64;
    for b in n.to_bytes_le() {
        h = (h ^ b as u64).wrapping_mul(0xff51afd7ed558ccd);
        h ^= h >> 33;
    }
    h
}

fn splitmix_next(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
