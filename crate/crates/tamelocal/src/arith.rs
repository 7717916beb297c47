//! Integer utilities: primality, factorization, and small modular arithmetic.
//!
//! Factorization is budgeted: trial division by a fixed sieve, Miller-Rabin
//! certification of cofactors, and Pollard rho (Brent variant) with an
//! iteration cap. Callers that need a complete factorization get an error
//! when the budget runs out instead of a silently incomplete answer.

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

/// Primes below 100_000, shared by trial division everywhere.
pub static SMALL_PRIMES: Lazy<Vec<u64>> = Lazy::new(|| sieve(100_000));

/// Simple sieve of Eratosthenes.
pub fn sieve(bound: u64) -> Vec<u64> {
    let bound = bound as usize;
    let mut is_prime = vec![true; bound + 1];
    is_prime[0] = false;
    if bound >= 1 {
        is_prime[1] = false;
    }
    let mut p = 2usize;
    while p * p <= bound {
        if is_prime[p] {
            let mut q = p * p;
            while q <= bound {
                is_prime[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    is_prime
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the usual 7-base witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 325, 9375, 28178, 450775, 9780504, 1795265022] {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin for arbitrary-precision integers. Deterministic result for
/// inputs below the u64 range; strong probable-prime with 32 fixed bases
/// above it.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime_u64(v);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    // First 32 primes as bases; fine in practice for a probable-prime test.
    let bases: [u32; 32] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83,
        89, 97, 101, 103, 107, 109, 113, 127, 131,
    ];
    'witness: for &b in &bases {
        let a = BigUint::from(b);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Brent's cycle detection. Returns a nontrivial factor of
/// the (odd, composite) input or None if the iteration budget ran out.
fn pollard_rho(n: &BigUint, max_iters: u64) -> Option<BigUint> {
    let one = BigUint::one();
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32..20 {
        let c = BigUint::from(c);
        let mut y = BigUint::from(2u32);
        let mut spent = 0u64;
        let m = 128u64;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g.is_one() && spent < max_iters {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g.is_one() {
                ys = y.clone();
                let lim = m.min(r - k);
                for _ in 0..lim {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                g = q.gcd(n);
                k += lim;
                spent += lim;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        if spent >= max_iters {
            return None;
        }
        // g == n: retry with another polynomial offset.
    }
    None
}

/// Budget for [`factor`]: trial-division bound index into `SMALL_PRIMES` and
/// the Pollard rho iteration cap.
#[derive(Clone, Copy, Debug)]
pub struct FactorBudget {
    pub rho_iters: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget { rho_iters: 200_000 }
    }
}

/// Complete factorization of |n| into primes, or an error when the budget
/// is exhausted on a composite cofactor. Factors of 0 and ±1 are the empty
/// map.
pub fn factor(n: &BigInt, budget: FactorBudget) -> Result<BTreeMap<BigInt, u32>> {
    let mut out = BTreeMap::new();
    let mut m = n.abs().to_biguint().expect("abs is nonnegative");
    if m.is_zero() || m.is_one() {
        return Ok(out);
    }
    for &p in SMALL_PRIMES.iter() {
        if m.is_one() {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        while (&m % &pb).is_zero() {
            m /= &pb;
            *out.entry(BigInt::from(p)).or_insert(0) += 1;
        }
    }
    let mut stack = vec![m];
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_prime_big(&c) {
            *out.entry(BigInt::from(c)).or_insert(0) += 1;
            continue;
        }
        // Perfect powers split for free.
        if let Some(root) = exact_power_root(&c) {
            let (r, k) = root;
            for _ in 0..k {
                stack.push(r.clone());
            }
            continue;
        }
        match pollard_rho(&c, budget.rho_iters) {
            Some(d) => {
                let e = &c / &d;
                stack.push(d);
                stack.push(e);
            }
            None => {
                return Err(Error::FactorBudget {
                    digits: c.to_string().len(),
                })
            }
        }
    }
    Ok(out)
}

/// If `n = r^k` for some k >= 2, return (r, k) with k maximal's smallest
/// split (any proper root works for the recursion above).
fn exact_power_root(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits();
    for k in 2..=bits.min(64) as u32 {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
        if r <= BigUint::from(1u32) {
            break;
        }
    }
    None
}

/// Prime divisors of |n| as u64 values (errors if a prime factor does not
/// fit; callers only use this where factors are desk-scale).
pub fn prime_divisors_u64(n: &BigInt, budget: FactorBudget) -> Result<Vec<u64>> {
    let f = factor(n, budget)?;
    let mut out = Vec::new();
    for p in f.keys() {
        match p.to_u64() {
            Some(v) => out.push(v),
            None => {
                return Err(Error::FactorBudget {
                    digits: p.to_string().len(),
                })
            }
        }
    }
    Ok(out)
}

/// Euler phi for small moduli.
pub fn euler_phi(n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut n = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let mut a = a;
    let mut b = b;
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Modular inverse for prime modulus.
pub fn inv_mod_u64(a: u64, p: u64) -> u64 {
    powmod_u64(a % p, p - 2, p)
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    mulmod_u64(a, b, m)
}

pub fn pow_mod_u64(base: u64, exp: u64, m: u64) -> u64 {
    powmod_u64(base, exp, m)
}

/// Exact integer square root test.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let u = n.to_biguint().expect("nonnegative");
    let r = u.sqrt();
    &r * &r == u
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_start() {
        assert_eq!(&SMALL_PRIMES[..5], &[2, 3, 5, 7, 11]);
    }

    #[test]
    fn u64_primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(97));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
    }

    #[test]
    fn factor_small() {
        let f = factor(&BigInt::from(-360), FactorBudget::default()).unwrap();
        let expected: Vec<(BigInt, u32)> = vec![
            (BigInt::from(2), 3),
            (BigInt::from(3), 2),
            (BigInt::from(5), 1),
        ];
        assert_eq!(f.into_iter().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn factor_semiprime_within_budget() {
        // 1_000_003 * 1_000_033 has no factor below the sieve bound.
        let n = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64);
        let f = factor(&n, FactorBudget::default()).unwrap();
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn factor_prime_power() {
        let p = BigInt::from(1_000_000_007u64);
        let n = &p * &p * &p;
        let f = factor(&n, FactorBudget::default()).unwrap();
        assert_eq!(f.get(&p), Some(&3));
    }

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn perfect_squares() {
        assert!(is_perfect_square(&BigInt::from(0)));
        assert!(is_perfect_square(&BigInt::from(144)));
        assert!(!is_perfect_square(&BigInt::from(-4)));
        assert!(!is_perfect_square(&BigInt::from(145)));
    }
}
