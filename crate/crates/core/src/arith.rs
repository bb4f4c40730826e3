//! Unbounded-integer arithmetic: primality, factorization, p-parts and
//! binomial coefficients.
//!
//! Factorization uses trial division by small primes followed by a Brent
//! variant of Pollard's rho on what remains. The integers handled here stay
//! at desk scale (classical group orders up to roughly 10^40), so no sieve
//! infrastructure is warranted.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be positive")]
    ZeroInput,
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("{0} does not divide {1}")]
    NotDivisible(String, String),
}

/// Exact prime factorization of a positive integer, kept sorted by prime.
///
/// The empty factorization represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Factorization { factors: Vec::new() }
    }

    /// Builds a factorization from (prime, exponent) pairs.
    ///
    /// Pairs are merged and sorted; every base must pass a primality test
    /// and every exponent must be at least 1.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = (BigUint, u32)>,
    {
        let mut factors: Vec<(BigUint, u32)> = Vec::new();
        for (p, e) in pairs {
            if e == 0 {
                continue;
            }
            if !is_prime(&p) {
                return Err(ArithError::NotPrime(p.to_string()));
            }
            factors.push((p, e));
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(BigUint, u32)> = Vec::new();
        for (p, e) in factors {
            match merged.last_mut() {
                Some((q, f)) if *q == p => *f += e,
                _ => merged.push((p, e)),
            }
        }
        Ok(Factorization { factors: merged })
    }

    /// Convenience constructor from small (prime, exponent) pairs; panics on
    /// a non-prime base. Intended for literals in tests and tables.
    pub fn from_u64_pairs(pairs: &[(u64, u32)]) -> Self {
        Self::from_pairs(pairs.iter().map(|&(p, e)| (BigUint::from(p), e)))
            .expect("literal factorization with non-prime base")
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The represented integer.
    pub fn value(&self) -> BigUint {
        let mut acc = BigUint::one();
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Product of two factorizations.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| q == p) {
                Some((_, f)) => *f += e,
                None => factors.push((p.clone(), *e)),
            }
        }
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        Factorization { factors }
    }

    /// Exact quotient; fails if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Factorization) -> Result<Factorization, ArithError> {
        let mut factors = self.factors.clone();
        for (p, e) in &other.factors {
            match factors.iter_mut().find(|(q, _)| q == p) {
                Some((_, f)) if *f >= *e => *f -= e,
                _ => {
                    return Err(ArithError::NotDivisible(
                        other.value().to_string(),
                        self.value().to_string(),
                    ))
                }
            }
        }
        factors.retain(|(_, e)| *e > 0);
        Ok(Factorization { factors })
    }

    pub fn pow(&self, k: u32) -> Factorization {
        Factorization {
            factors: self.factors.iter().map(|(p, e)| (p.clone(), e * k)).collect(),
        }
    }

    /// The p-part of the represented integer, as a plain value.
    pub fn p_part(&self, p: &BigUint) -> BigUint {
        p.pow(self.exponent_of(p))
    }

    /// The p'-part: the factorization with every power of p removed.
    pub fn p_prime_part(&self, p: &BigUint) -> Factorization {
        Factorization {
            factors: self.factors.iter().filter(|(q, _)| q != p).cloned().collect(),
        }
    }

    /// Odd prime divisors of the represented integer, ascending.
    pub fn odd_primes(&self) -> Vec<BigUint> {
        let two = BigUint::from(2u32);
        self.factors
            .iter()
            .filter(|(p, _)| *p != two)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

impl serde::Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A prime power q = p^f with f ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    f: u32,
}

impl PrimePower {
    pub fn new(p: u64, f: u32) -> Result<Self, ArithError> {
        if f == 0 {
            return Err(ArithError::ZeroInput);
        }
        if !is_prime_u64(p) {
            return Err(ArithError::NotPrime(p.to_string()));
        }
        Ok(PrimePower { p, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    /// q = p^f as an unbounded integer.
    pub fn value(&self) -> BigUint {
        BigUint::from(self.p).pow(self.f)
    }

    /// q as a machine word; available whenever p^f fits in 64 bits.
    pub fn value_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    pub fn is_even(&self) -> bool {
        self.p == 2
    }

    pub fn is_odd(&self) -> bool {
        self.p != 2
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value_u64() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}^{}", self.p, self.f),
        }
    }
}

/// Exact prime factorization. 1 yields the empty factorization; 0 is rejected.
pub fn factorize(a: &BigUint) -> Result<Factorization, ArithError> {
    if a.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = a.clone();

    for p in SMALL_PRIMES {
        if rest.is_one() {
            break;
        }
        let bp = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, r) = rest.div_rem(&bp);
            if r.is_zero() {
                rest = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            factors.push((bp, e));
        }
    }

    if !rest.is_one() {
        split_into(&rest, &mut factors);
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in factors {
        match merged.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => merged.push((p, e)),
        }
    }
    Ok(Factorization { factors: merged })
}

/// Factorizes a machine word.
pub fn factorize_u64(a: u64) -> Result<Factorization, ArithError> {
    factorize(&BigUint::from(a))
}

fn split_into(n: &BigUint, out: &mut Vec<(BigUint, u32)>) {
    if n.is_one() {
        return;
    }
    if is_prime(n) {
        out.push((n.clone(), 1));
        return;
    }
    // Perfect powers defeat rho's cycle structure, peel them first.
    if let Some((root, k)) = perfect_power(n) {
        let mut sub = Vec::new();
        split_into(&root, &mut sub);
        for (p, e) in sub {
            out.push((p, e * k));
        }
        return;
    }
    let d = pollard_rho(n);
    let q = n / &d;
    split_into(&d, out);
    split_into(&q, out);
}

/// Largest k ≥ 2 with n = r^k, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let bits = n.bits();
    for k in (2..=bits.max(2) as u32).rev() {
        let r = n.nth_root(k);
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Brent-variant Pollard rho. Precondition: n composite, odd, not a prime power.
fn pollard_rho(n: &BigUint) -> BigUint {
    if let Some(n64) = n.to_u64() {
        return BigUint::from(pollard_rho_u64(n64));
    }
    let one = BigUint::one();
    for c in 1u64..64 {
        let cb = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count = 0u64;
        while d.is_one() {
            x = (&x * &x + &cb) % n;
            y = (&y * &y + &cb) % n;
            y = (&y * &y + &cb) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
            if count > 50_000_000 {
                break;
            }
        }
        if !d.is_one() && d != *n {
            return d;
        }
    }
    panic!("rho failed to split {n}");
}

fn pollard_rho_u64(n: u64) -> u64 {
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            if x == y {
                break;
            }
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != 1 && d != n {
            return d;
        }
    }
    unreachable!()
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const SMALL_PRIMES: [u64; 168] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293,
    307, 311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419,
    421, 431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
    547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653,
    659, 661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769, 773, 787,
    797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883, 887, 907, 911, 919,
    929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997,
];

/// Deterministic Miller–Rabin for machine words.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin primality test on unbounded integers.
///
/// The witness set [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] is
/// deterministic below 3.3·10^24; above that, 40 further fixed witnesses
/// push the error probability far below anything reachable at desk scale.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;

    let mut witnesses: Vec<BigUint> = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41]
        .iter()
        .map(|&w| BigUint::from(w))
        .collect();
    if n.bits() > 81 {
        // 3.3e24 < 2^82: add fixed pseudo-random witnesses.
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..40 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            witnesses.push((BigUint::from(state) % (n - &two - &one)) + &two);
        }
    }

    'witness: for a in witnesses {
        if a >= n_minus_1 {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits a into (a_p, a_{p'}) with a_p the largest power of p dividing a.
pub fn p_parts(a: &BigUint, p: u64) -> Result<(BigUint, BigUint), ArithError> {
    if a.is_zero() {
        return Err(ArithError::ZeroInput);
    }
    if !is_prime_u64(p) {
        return Err(ArithError::NotPrime(p.to_string()));
    }
    let bp = BigUint::from(p);
    let mut a_p = BigUint::one();
    let mut rest = a.clone();
    loop {
        let (q, r) = rest.div_rem(&bp);
        if r.is_zero() {
            a_p *= &bp;
            rest = q;
        } else {
            break;
        }
    }
    Ok((a_p, rest))
}

/// Recognizes q = p^f; returns None when q is not a prime power.
pub fn recognize_prime_power(q: u64) -> Option<PrimePower> {
    if q < 2 {
        return None;
    }
    let fac = factorize_u64(q).ok()?;
    match fac.factors() {
        [(p, e)] => {
            let p = p.to_u64()?;
            Some(PrimePower { p, f: *e })
        }
        _ => None,
    }
}

/// Exact binomial coefficient; s > m yields 0.
pub fn binomial(m: u64, s: u64) -> BigUint {
    if s > m {
        return BigUint::zero();
    }
    let s = s.min(m - s);
    let mut acc = BigUint::one();
    for i in 0..s {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient as a machine word; panics on overflow. For the small
/// grids handled by the searches.
pub fn binomial_u64(m: u64, s: u64) -> u64 {
    binomial(m, s).to_u64().expect("binomial exceeds u64")
}

/// Integer square root.
pub fn isqrt_u64(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x > 0 && x.checked_mul(x).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

pub fn is_perfect_square_u64(n: u64) -> bool {
    let r = isqrt_u64(n);
    r * r == n
}

/// Ascending list of primes below the bound.
pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&n| is_prime_u64(n)).collect()
}

/// Ascending list of prime powers in [lo, hi].
pub fn prime_powers_in(lo: u64, hi: u64) -> Vec<PrimePower> {
    (lo.max(2)..=hi).filter_map(recognize_prime_power).collect()
}
