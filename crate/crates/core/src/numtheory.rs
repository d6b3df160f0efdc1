//! Integer machinery behind the analytic feasibility path: base-q digits,
//! prime valuations, the Legendre factorial valuation, carry counting and
//! exact binomials.
//!
//! Everything here is exact; counts that can outgrow machine words use
//! [`BigUint`].

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::torus::DEFAULT_NODE_BUDGET;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("argument must be positive")]
    NotPositive,
    #[error("sequence of length {required} exceeds budget {budget}")]
    SequenceBudget { required: u128, budget: u64 },
}

/// Trial-division primality test. Intended for the small moduli that appear
/// as prime factors of `2n`; not a general-purpose primality service.
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    if q % 2 == 0 {
        return q == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= q) {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization of `m >= 1` as ascending `(prime, exponent)` pairs.
pub fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q.checked_mul(q).map_or(false, |sq| sq <= m) {
        if m % q == 0 {
            let mut e = 0;
            while m % q == 0 {
                m /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// `n >= 1` and `n = 2^j` for some `j >= 0`.
pub fn is_power_of_two(n: u64) -> bool {
    n >= 1 && n & (n - 1) == 0
}

/// Little-endian base-q digit expansion. Zero expands to no digits; any
/// positive value ends in a nonzero digit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseQDigits {
    q: u64,
    digits: Vec<u64>,
}

impl BaseQDigits {
    pub fn new(mut m: u64, q: u64) -> Result<Self, NumTheoryError> {
        if q < 2 {
            return Err(NumTheoryError::BaseTooSmall(q));
        }
        let mut digits = Vec::new();
        while m > 0 {
            digits.push(m % q);
            m /= q;
        }
        Ok(BaseQDigits { q, digits })
    }

    pub fn base(&self) -> u64 {
        self.q
    }

    /// Digits, least significant first.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn value(&self) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * self.q + d)
    }

    /// Value of the digits strictly below position `j`, i.e. the remainder
    /// modulo `q^j`.
    pub fn prefix_value(&self, j: usize) -> u64 {
        self.digits
            .iter()
            .take(j)
            .rev()
            .fold(0u64, |acc, &d| acc * self.q + d)
    }
}

/// The self-similar sequence `s_r` over base q: `s_0 = [1]`, and `s_r` is
/// `q - 1` copies of `s_{r-1}` followed by `s_{r-1}` with its last element
/// incremented. The result has length `q^r`, capped by `max_len`.
pub fn s_sequence(q: u64, r: u32, max_len: u64) -> Result<Vec<u64>, NumTheoryError> {
    if q < 2 {
        return Err(NumTheoryError::BaseTooSmall(q));
    }
    let len = (q as u128).checked_pow(r).unwrap_or(u128::MAX);
    if len > max_len as u128 {
        return Err(NumTheoryError::SequenceBudget {
            required: len,
            budget: max_len,
        });
    }
    let mut seq = vec![1u64];
    for _ in 0..r {
        let prev = seq;
        let mut next = Vec::with_capacity(prev.len() * q as usize);
        for _ in 0..q - 1 {
            next.extend_from_slice(&prev);
        }
        next.extend_from_slice(&prev);
        *next.last_mut().expect("nonempty") += 1;
        seq = next;
    }
    Ok(seq)
}

/// Convenience wrapper using the crate-wide default budget.
pub fn s_sequence_default(q: u64, r: u32) -> Result<Vec<u64>, NumTheoryError> {
    s_sequence(q, r, DEFAULT_NODE_BUDGET)
}

/// Sum of the first `m` terms of the infinite base-q sequence:
/// `sum_{i=0}^{floor(log_q m)} floor(m / q^i)`. Returns 0 for `m = 0`.
pub fn s_partial_sum(q: u64, m: u64) -> Result<u64, NumTheoryError> {
    if q < 2 {
        return Err(NumTheoryError::BaseTooSmall(q));
    }
    let mut sum = 0u64;
    let mut power = 1u64;
    loop {
        sum += m / power;
        match power.checked_mul(q) {
            Some(next) if next <= m => power = next,
            _ => break,
        }
    }
    Ok(sum)
}

/// `sum_{j>=1} floor(m / q^j)`; the tail of [`s_partial_sum`] without the
/// `j = 0` term. Defined for any base `q >= 2`.
pub fn floor_sum(m: u64, q: u64) -> Result<u64, NumTheoryError> {
    if q < 2 {
        return Err(NumTheoryError::BaseTooSmall(q));
    }
    Ok(s_partial_sum(q, m)? - m)
}

/// Exponent of the prime q in `m >= 1`.
pub fn valuation(q: u64, m: &BigUint) -> Result<u64, NumTheoryError> {
    if !is_prime(q) {
        return Err(NumTheoryError::NotPrime(q));
    }
    if m.is_zero() {
        return Err(NumTheoryError::NotPositive);
    }
    let q = BigUint::from(q);
    let mut rest = m.clone();
    let mut e = 0u64;
    loop {
        let (div, rem) = rest.div_rem(&q);
        if !rem.is_zero() {
            return Ok(e);
        }
        rest = div;
        e += 1;
    }
}

pub fn valuation_u64(q: u64, m: u64) -> Result<u64, NumTheoryError> {
    valuation(q, &BigUint::from(m))
}

/// Exponent of the prime q in `p!`, by the Legendre sum
/// `sum_{j>=1} floor(p / q^j)`.
pub fn valuation_factorial(q: u64, p: u64) -> Result<u64, NumTheoryError> {
    if !is_prime(q) {
        return Err(NumTheoryError::NotPrime(q));
    }
    floor_sum(p, q)
}

/// Number of carries when adding a and b in base q.
pub fn carries_in_addition(a: u64, b: u64, q: u64) -> Result<u64, NumTheoryError> {
    if q < 2 {
        return Err(NumTheoryError::BaseTooSmall(q));
    }
    let (mut a, mut b) = (a, b);
    let mut carry = 0u64;
    let mut count = 0u64;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % q + b % q + carry;
        carry = s / q;
        count += carry;
        a /= q;
        b /= q;
    }
    Ok(count)
}

/// Exact binomial coefficient; zero when `p > n`.
pub fn binomial(n: u64, p: u64) -> BigUint {
    if p > n {
        return BigUint::zero();
    }
    num_integer::binomial(BigUint::from(n), BigUint::from(p))
}
