//! Reference integer sequences.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};

/// `[t^n]` of the 123-avoiders with no consecutive 231, as listed (n = 0..8).
pub const SEQ_123_231_X0: [u64; 9] = [1, 1, 2, 4, 9, 23, 63, 178, 514];
/// `[t^n]` of the 132-avoiders with no consecutive 213, as listed (n = 0..9).
pub const SEQ_132_213_X0: [u64; 10] = [1, 1, 2, 4, 9, 22, 57, 154, 429, 1223];
/// Listed expansion claimed for the 123-avoiders with no consecutive 321.
pub const SEQ_123_321_X0: [u64; 9] = [1, 1, 2, 4, 9, 23, 63, 178, 514];

pub const NAMES: [&str; 6] = [
    "catalan",
    "motzkin",
    "seq_123_231_x0",
    "seq_132_213_x0",
    "seq_132_231_x0",
    "seq_123_321_x0",
];

/// `C_n = binom(2n, n)/(n+1)`, via the product `∏_{k=2}^{n} (n+k)/k`.
pub fn catalan(n: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 2..=n {
        num *= n + k;
        den *= k;
    }
    num / den
}

/// Motzkin numbers `M_0..=M_n` from `M_{j+1} = M_j + Σ_{i<j} M_i M_{j-1-i}`.
pub fn motzkin_prefix(n: usize) -> Vec<BigInt> {
    let mut m = vec![BigInt::one()];
    for j in 0..n {
        let mut next = m[j].clone();
        for i in 0..j {
            next += &m[i] * &m[j - 1 - i];
        }
        m.push(next);
    }
    m
}

fn stored(name: &str, list: &[u64], n: usize) -> Result<BigInt> {
    list.get(n)
        .map(|&v| BigInt::from(v))
        .ok_or_else(|| Error::Range {
            name: name.to_string(),
            index: n,
            max: list.len() - 1,
        })
}

/// Term `n` of a named reference sequence.
pub fn reference_sequence(name: &str, n: usize) -> Result<BigInt> {
    match name {
        "catalan" => Ok(catalan(n)),
        "motzkin" => Ok(motzkin_prefix(n).pop().unwrap_or_else(BigInt::zero)),
        "seq_123_231_x0" => stored(name, &SEQ_123_231_X0, n),
        "seq_132_213_x0" => stored(name, &SEQ_132_213_X0, n),
        "seq_123_321_x0" => stored(name, &SEQ_123_321_X0, n),
        "seq_132_231_x0" => Ok(if n == 0 {
            BigInt::one()
        } else {
            BigInt::one() << (n - 1)
        }),
        other => Err(invalid(format!("unknown sequence `{other}`"))),
    }
}

/// Largest index available for `name` (`None` when unbounded).
pub fn stored_len(name: &str) -> Option<usize> {
    match name {
        "seq_123_231_x0" => Some(SEQ_123_231_X0.len()),
        "seq_132_213_x0" => Some(SEQ_132_213_X0.len()),
        "seq_123_321_x0" => Some(SEQ_123_321_X0.len()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_terms() {
        assert_eq!(catalan(4), BigInt::from(14));
        assert_eq!(catalan(12), BigInt::from(208012));
        assert_eq!(
            reference_sequence("seq_123_231_x0", 5).unwrap(),
            BigInt::from(23)
        );
        assert_eq!(
            reference_sequence("seq_132_231_x0", 4).unwrap(),
            BigInt::from(8)
        );
        assert_eq!(
            reference_sequence("seq_132_231_x0", 0).unwrap(),
            BigInt::from(1)
        );
        let motz: Vec<u64> = motzkin_prefix(7)
            .iter()
            .map(|v| v.try_into().unwrap())
            .collect();
        assert_eq!(motz, [1, 1, 2, 4, 9, 21, 51, 127]);
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(
            reference_sequence("seq_123_231_x0", 9),
            Err(Error::Range { max: 8, .. })
        ));
        assert!(reference_sequence("fib", 1).is_err());
    }
}
