//! Small integer helpers.

use num_bigint::BigInt;
use num_traits::One;

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mod_inverse_u64(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

pub fn pow_mod_u64(base: u64, mut e: u64, n: u64) -> u64 {
    let mut acc = 1u128 % n as u128;
    let mut b = base as u128 % n as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n as u128;
        }
        b = b * b % n as u128;
        e >>= 1;
    }
    acc as u64
}

/// Multiplicative order of `q` modulo the prime `ell`; `None` when `ell | q`.
pub fn multiplicative_order(q: u64, ell: u64) -> Option<u64> {
    if q % ell == 0 {
        return None;
    }
    (1..ell).find(|&m| pow_mod_u64(q, m, ell) == 1)
}

/// Splits `q` as `p^e` for an odd prime `p`.
pub fn odd_prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 3 || q % 2 == 0 {
        return None;
    }
    let p = (3..=q).step_by(2).find(|d| q % d == 0)?;
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_from_the_examples() {
        assert_eq!(multiplicative_order(53, 13), Some(1));
        assert_eq!(multiplicative_order(11, 199), Some(22));
        assert_eq!(multiplicative_order(25, 31), Some(3));
        assert_eq!(multiplicative_order(7, 199), Some(99));
        assert_eq!(multiplicative_order(26, 13), None);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(odd_prime_power(25), Some((5, 2)));
        assert_eq!(odd_prime_power(53), Some((53, 1)));
        assert_eq!(odd_prime_power(45), None);
        assert_eq!(odd_prime_power(16), None);
    }

    #[test]
    fn factors_and_inverses() {
        assert_eq!(prime_factors_u64(15624), vec![2, 3, 7, 31]);
        assert_eq!(mod_inverse_u64(3, 13), Some(9));
        assert_eq!(mod_inverse_u64(4, 12), None);
        assert_eq!(binomial(9, 4), BigInt::from(126));
    }
}
