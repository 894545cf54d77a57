//! Small shared helpers: exact binomials and partition enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `binom(top, k)` with the convention that it vanishes when `top < k` or
/// either argument is negative.
pub fn binomial(top: i64, k: i64) -> BigInt {
    if k < 0 || top < k {
        return BigInt::zero();
    }
    let k = k.min(top - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(top - i) / BigInt::from(i + 1);
    }
    acc
}

/// All partitions of `n` with parts of size at most `cap`, each returned as a
/// count vector `counts[i]` = number of parts of size `i+1`.  Reverse-lex:
/// partitions with larger parts come first.
pub fn partitions_with_cap(n: i64, cap: i64) -> Vec<Vec<i64>> {
    assert!(n >= 0);
    let cap = cap.min(n).max(0);
    let mut out = Vec::new();
    let mut counts = vec![0i64; cap as usize];
    fn rec(remaining: i64, max_part: i64, counts: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(counts.clone());
            return;
        }
        let mut part = max_part.min(remaining);
        while part >= 1 {
            let idx = (part - 1) as usize;
            counts[idx] += 1;
            rec(remaining - part, part, counts, out);
            counts[idx] -= 1;
            part -= 1;
        }
    }
    if n == 0 {
        out.push(counts);
        return out;
    }
    if cap == 0 {
        return out;
    }
    rec(n, cap, &mut counts, &mut out);
    out
}

/// Number of partitions of `n` (no cap); used only for strategy selection.
pub fn partition_count(n: i64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as usize;
    let mut table = vec![0f64; n + 1];
    table[0] = 1.0;
    for part in 1..=n {
        for total in part..=n {
            table[total] += table[total - part];
        }
    }
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_conventions() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(7, 0), BigInt::one());
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_with_cap(0, 5), vec![vec![]as Vec<i64>]);
        // 4 = 4, 3+1, 2+2, 2+1+1, 1+1+1+1
        assert_eq!(partitions_with_cap(4, 4).len(), 5);
        assert_eq!(partitions_with_cap(4, 2).len(), 3);
        assert_eq!(partition_count(10), 42.0);
    }
}
