//! Exact integer helpers: prime sets, prime powers and primitive prime divisors.
//!
//! Everything fits in 64 bits except `m^n - 1` for the primitive-divisor
//! sweep, which is split into cyclotomic values before factoring.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A sorted set of distinct primes, `π(n)` for some `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    /// Builds a set from arbitrary primes, sorting and deduplicating.
    /// Fails if an entry is not prime.
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidArgument(format!("{bad} is not prime")));
        }
        Ok(PrimeSet(set.into_iter().collect()))
    }

    pub(crate) fn from_sorted_unchecked(primes: Vec<u64>) -> Self {
        debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
        PrimeSet(primes)
    }

    pub fn singleton(p: u64) -> Result<Self> {
        Self::new([p])
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let set: BTreeSet<u64> = self.iter().chain(other.iter()).collect();
        PrimeSet(set.into_iter().collect())
    }

    pub fn difference(&self, other: &PrimeSet) -> PrimeSet {
        PrimeSet(self.iter().filter(|p| !other.contains(*p)).collect())
    }

    pub fn is_subset(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }
}

impl<'de> Deserialize<'de> for PrimeSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u64>::deserialize(d)?;
        PrimeSet::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u64> for PrimeSet {
    /// Collects primes; panics on a non-prime entry.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        PrimeSet::new(iter).expect("PrimeSet::from_iter on non-prime input")
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
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

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Pollard rho with Floyd cycle detection; increments the constant until a proper
// factor appears, so the result is deterministic.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1..n {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho called on a prime")
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            out.push(p);
            factor_into(n / p, out);
            return;
        }
    }
    let d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factorize(1)` is empty.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut primes = Vec::new();
    factor_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// `π(n)`: the distinct primes dividing `n`.
pub fn prime_set(n: u64) -> Result<PrimeSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("prime_set(0) is undefined".into()));
    }
    Ok(PrimeSet::from_sorted_unchecked(
        factorize(n)?.into_iter().map(|(p, _)| p).collect(),
    ))
}

/// Returns `(t, a)` with `n = t^a` when `n` is a prime power.
pub fn is_prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    match factorize(n).ok()?.as_slice() {
        [(t, a)] => Some((*t, *a)),
        _ => None,
    }
}

/// The `p`-part of `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut n = n;
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Values `Φ_d(m)` for every divisor `d` of `n`, computed by exact division of
/// `m^d - 1` by the lower cyclotomic values.
fn cyclotomic_values(m: u64, n: u32) -> Result<Vec<u64>> {
    let divs = divisors(n);
    let mut values: Vec<(u32, u128)> = Vec::with_capacity(divs.len());
    for &d in &divs {
        let mut v = (m as u128)
            .checked_pow(d)
            .ok_or_else(|| Error::InvalidArgument(format!("{m}^{d} overflows 128 bits")))?
            - 1;
        for &(e, phi) in &values {
            if d % e == 0 {
                v /= phi;
            }
        }
        values.push((d, v));
    }
    values
        .into_iter()
        .map(|(d, v)| {
            u64::try_from(v).map_err(|_| {
                Error::InvalidArgument(format!("cyclotomic value Φ_{d}({m}) exceeds 64 bits"))
            })
        })
        .collect()
}

/// Primes `q | m^n - 1` such that `q` divides no `m^b - 1` with `1 <= b < n`.
///
/// The whole of `m^n - 1` is factored (through its cyclotomic factors) and
/// the prime divisors are filtered by multiplicative order.
pub fn primitive_prime_divisors(m: u64, n: u32) -> Result<PrimeSet> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidArgument(format!(
            "primitive prime divisors need m >= 2 and n >= 2, got ({m}, {n})"
        )));
    }
    let mut all = PrimeSet::empty();
    for v in cyclotomic_values(m, n)? {
        all = all.union(&prime_set(v)?);
    }
    let primitive = all
        .iter()
        .filter(|&q| (1..n).all(|b| pow_mod(m, b as u64, q) != 1))
        .collect();
    Ok(PrimeSet::from_sorted_unchecked(primitive))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_primes(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = 2;
        while d * d <= n {
            if n % d == 0 {
                out.push(d);
                while n % d == 0 {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    #[test]
    fn prime_set_examples() {
        assert!(prime_set(1).unwrap().is_empty());
        assert_eq!(prime_set(15).unwrap().as_slice(), &[3, 5]);
        assert_eq!(
            prime_set(63).unwrap().as_slice(),
            &trial_division_primes(63)[..]
        );
        assert_eq!(prime_set(63).unwrap().as_slice(), &[3, 7]);
        assert!(prime_set(0).is_err());
    }

    #[test]
    fn primality_against_trial_division() {
        for n in 0..5000u64 {
            let slow = n >= 2 && trial_division_primes(n) == vec![n];
            assert_eq!(is_prime(n), slow, "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(is_prime_power(16), Some((2, 4)));
        assert_eq!(is_prime_power(60), None);
        assert_eq!(is_prime_power(81), Some((3, 4)));
        assert_eq!(is_prime_power(1), None);
    }

    fn ppd_brute_force(m: u64, n: u32) -> Vec<u64> {
        let big = (m as u128).pow(n) - 1;
        let mut out = Vec::new();
        // every prime divisor of m^n - 1 divides some Φ_d(m) <= 2^64,
        // so searching candidates by order is enough at this size.
        let mut q = 2u64;
        while (q as u128) <= big && q < 200_000 {
            if is_prime(q) && big % q as u128 == 0 {
                let ord = (1..=n).find(|&k| pow_mod(m, k as u64, q) == 1).unwrap();
                if ord == n {
                    out.push(q);
                }
            }
            q += 1;
        }
        out
    }

    #[test]
    fn primitive_divisor_examples() {
        assert!(primitive_prime_divisors(2, 6).unwrap().is_empty());
        assert_eq!(primitive_prime_divisors(2, 4).unwrap().as_slice(), &[5]);
        assert_eq!(ppd_brute_force(2, 4), vec![5]);
        assert!(primitive_prime_divisors(7, 2).unwrap().is_empty());
        assert!(primitive_prime_divisors(1, 3).is_err());
    }

    #[test]
    fn small_primitive_divisors_match_brute_force() {
        for m in 2..8u64 {
            for n in 2..7u32 {
                let fast = primitive_prime_divisors(m, n).unwrap();
                let slow = ppd_brute_force(m, n);
                // brute force only scans small candidates; those must agree
                let fast_small: Vec<u64> = fast.iter().filter(|&q| q < 200_000).collect();
                assert_eq!(fast_small, slow, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn primitive_divisors_have_order_n() {
        for m in 2..=50u64 {
            for n in 2..=12u32 {
                for q in primitive_prime_divisors(m, n).unwrap().iter() {
                    assert_eq!((q - 1) % n as u64, 0, "m={m} n={n} q={q}");
                    assert_eq!(pow_mod(m, n as u64, q), 1);
                }
            }
        }
    }

    #[test]
    fn empty_only_in_exceptional_families() {
        for m in 2..=50u64 {
            for n in 2..=12u32 {
                let empty = primitive_prime_divisors(m, n).unwrap().is_empty();
                let mersenne = (m + 1).is_power_of_two();
                let exceptional = (n == 2 && mersenne) || (n == 6 && m == 2);
                assert_eq!(empty, exceptional, "m={m} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn prime_set_is_multiplicative(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
            let lhs = prime_set(a * b).unwrap();
            let rhs = prime_set(a).unwrap().union(&prime_set(b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn factorization_multiplies_back(n in 1u64..u64::MAX / 2) {
            let f = factorize(n).unwrap();
            let prod: u128 = f.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            prop_assert_eq!(prod, n as u128);
            prop_assert!(f.iter().all(|&(p, _)| is_prime(p)));
        }
    }
}
