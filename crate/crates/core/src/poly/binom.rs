use num_bigint::BigInt;
use num_traits::{One, Zero};

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Generalized binomial coefficient `α(α−1)⋯(α−j+1)/j!` for integer `α` of any sign.
pub fn gen_binom(alpha: i64, j: i64) -> BigInt {
    if j < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(alpha) - i;
    }
    num / factorial(j as u64)
}

/// Multinomial `N!/∏ parts!`; zero when a part is negative or the parts do not sum to `N`.
pub fn multinom(n: i64, parts: &[i64]) -> BigInt {
    if n < 0 || parts.iter().any(|&p| p < 0) || parts.iter().sum::<i64>() != n {
        return BigInt::zero();
    }
    let den = parts
        .iter()
        .fold(BigInt::one(), |acc, &p| acc * factorial(p as u64));
    factorial(n as u64) / den
}

/// Ordinary binomial with the multinomial guard: zero unless `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    multinom(n, &[k, n - k])
}
