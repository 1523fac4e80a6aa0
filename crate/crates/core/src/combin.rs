//! Small combinatorial helpers shared by the counting and indexing code.

use num_bigint::BigUint;
use num_traits::One;

/// Exact binomial coefficient as an arbitrary-precision integer.
pub fn binomial_big(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient in 128 bits, `None` on overflow.
pub fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) after the multiplication; split the
        // factor through the gcd to postpone overflow.
        let num = n - i;
        let den = i + 1;
        let g = gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        let num = num / d;
        acc = a.checked_mul(num)?;
    }
    Some(acc)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Rearranges `perm` into the next permutation in lexicographic order.
/// Returns `false` (leaving the slice sorted ascending) once the last one is passed.
pub fn next_permutation<T: Ord>(perm: &mut [T]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        perm.reverse();
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Colexicographic rank of a strictly increasing k-subset of `[n]`.
pub fn colex_rank(subset: &[usize]) -> Option<u128> {
    let mut rank: u128 = 0;
    for (i, &c) in subset.iter().enumerate() {
        rank = rank.checked_add(binomial_u128(c as u128, i as u128 + 1)?)?;
    }
    Some(rank)
}

/// Inverse of [`colex_rank`]: the k-subset of `[n]` with the given colex rank.
/// The caller guarantees `rank < C(n, k)`.
pub fn colex_unrank(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut out = vec![0usize; k];
    let mut upper = n;
    for i in (1..=k).rev() {
        // Largest c < upper with C(c, i) <= rank.
        let (mut lo, mut hi) = (i - 1, upper - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            match binomial_u128(mid as u128, i as u128) {
                Some(b) if b <= rank => lo = mid,
                _ => hi = mid - 1,
            }
        }
        out[i - 1] = lo;
        rank -= binomial_u128(lo as u128, i as u128).expect("binomial fits below its upper bound");
        upper = lo;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_agree() {
        for n in 0..40usize {
            for k in 0..=n + 1 {
                let big = binomial_big(n, k);
                let small = binomial_u128(n as u128, k as u128).unwrap();
                assert_eq!(big, BigUint::from(small));
            }
        }
        assert_eq!(binomial_u128(5, 2), Some(10));
        assert_eq!(binomial_u128(3, 5), Some(0));
        assert_eq!(binomial_u128(300, 150), None);
    }

    #[test]
    fn permutations_count() {
        let mut p = [0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
        assert_eq!(p, [0, 1, 2, 3]);
    }

    #[test]
    fn colex_order_and_roundtrip() {
        let n = 7;
        let k = 3;
        let total = binomial_u128(n as u128, k as u128).unwrap();
        let mut prev: Option<Vec<usize>> = None;
        for r in 0..total {
            let s = colex_unrank(n, k, r);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(*s.last().unwrap() < n);
            assert_eq!(colex_rank(&s), Some(r));
            if let Some(p) = prev {
                // colex: compare reversed sequences
                let a: Vec<_> = p.iter().rev().collect();
                let b: Vec<_> = s.iter().rev().collect();
                assert!(a < b);
            }
            prev = Some(s);
        }
        assert_eq!(colex_unrank(4, 2, 0), vec![0, 1]);
    }
}
