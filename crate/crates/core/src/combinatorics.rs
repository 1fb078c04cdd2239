//! Small combinatorial helpers shared across modules: binomials, lexicographic
//! subset enumeration and rational formatting.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `C(n, k)` as a `u64`; zero when `k > n`. Panics on overflow.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// `C(n, k)` for possibly negative arguments, zero outside `0 <= k <= n`.
pub fn binomial_i(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        binomial(n as u64, k as u64)
    }
}

pub fn binomial_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// All `r`-element subsets of `items`, in lexicographic order of positions.
pub fn combinations<T: Copy>(items: &[T], r: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if r > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance the rightmost index that can still move
        let mut i = r;
        while i > 0 && idx[i - 1] == i - 1 + items.len() - r {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// `{0, .., n-1}` choose `r`, lexicographic.
pub fn subsets_of_range(n: usize, r: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (0..n).collect();
    combinations(&items, r)
}

/// Renders a rational as `p/q` in lowest terms with positive denominator.
pub fn fmt_rational(q: &BigRational) -> String {
    let mut numer = q.numer().clone();
    let mut denom = q.denom().clone();
    if denom.is_negative() {
        numer = -numer;
        denom = -denom;
    }
    format!("{numer}/{denom}")
}

/// Parses `p/q` or a plain integer into a reduced rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (text.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Floor of a rational as `u64`; the value must be non-negative.
pub fn floor_u64(q: &BigRational) -> u64 {
    let f = q.floor().to_integer();
    u64::try_from(f).expect("non-negative value fits u64")
}
