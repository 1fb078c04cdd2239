//! Exact evaluation of the matching-threshold formulas.
//!
//! Asymptotic statements are returned as their leading coefficient (the
//! `o(1)` term dropped) multiplying `C(n−d, k−d)` (or `C(n, k)` for edge
//! densities). When `n` is supplied an absolute value is attached; the `+1`
//! appears only for the two exact edge-count theorems.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::combinatorics::{binomial_big, int, ratio};
use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Conjectured perfect-matching threshold `max{1/2, 1−((k−1)/k)^{k−d}}`.
    Conj11,
    /// `(k−d)/k − (k−d−1)/k^{k−d}` for perfect matchings, `1 ≤ d < k/2`.
    Thm12,
    /// Markström–Ruciński: `(k−d)/k − 1/k^{k−d}`.
    Mr,
    /// Hàn–Person–Schacht: `(k−d)/k`.
    Hps,
    /// Lower bound from `H(s)`: `1 − (1 − s/n)^{k−d}`.
    Eq1,
    /// Erdős matching conjecture: `max{C(ks−1,k), C(n,k)−C(n−s+1,k)} + 1`.
    Conj15M0,
    /// Frankl: `C(n,k) − C(n−s+1,k) + 1` for `n ≥ (2s−1)k − s + 1`.
    Thm14M0,
    /// Conjectured non-perfect threshold `1 − (1 − a)^{k−d}`.
    Conj12,
    /// Edge density forcing a fractional matching of size `n/(k+d)`.
    Thm18,
    /// Fractional perfect matching `d`-degree bound.
    Thm19,
    /// Graph case `1 − (1 − x)^2`, `x ≤ 1/3`.
    BaseK2,
    /// Degree cutoff constant of the inductive step.
    Xi,
}

impl Formula {
    pub const ALL: [Formula; 12] = [
        Formula::Conj11,
        Formula::Thm12,
        Formula::Mr,
        Formula::Hps,
        Formula::Eq1,
        Formula::Conj15M0,
        Formula::Thm14M0,
        Formula::Conj12,
        Formula::Thm18,
        Formula::Thm19,
        Formula::BaseK2,
        Formula::Xi,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Formula::Conj11 => "conj11",
            Formula::Thm12 => "thm12",
            Formula::Mr => "mr",
            Formula::Hps => "hps",
            Formula::Eq1 => "eq1",
            Formula::Conj15M0 => "conj15_m0",
            Formula::Thm14M0 => "thm14_m0",
            Formula::Conj12 => "conj12",
            Formula::Thm18 => "thm18",
            Formula::Thm19 => "thm19",
            Formula::BaseK2 => "base_k2",
            Formula::Xi => "xi",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Formula::ALL
            .into_iter()
            .find(|f| f.id() == s)
            .ok_or_else(|| Error::Domain(format!("unknown formula `{s}`")))
    }
}

/// Matching size, either as an absolute count `s` (needs `n`) or as the
/// fraction `a = s/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Amount {
    Size(u64),
    Fraction(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundParams {
    pub n: Option<u64>,
    pub k: u64,
    pub d: u64,
    pub amount: Option<Amount>,
}

impl BoundParams {
    pub fn new(k: u64, d: u64) -> Self {
        BoundParams {
            n: None,
            k,
            d,
            amount: None,
        }
    }

    pub fn with_n(mut self, n: u64) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_size(mut self, s: u64) -> Self {
        self.amount = Some(Amount::Size(s));
        self
    }

    pub fn with_fraction(mut self, a: BigRational) -> Self {
        self.amount = Some(Amount::Fraction(a));
        self
    }

    /// `a`, from either form; `s/n` needs `n`.
    fn fraction(&self, formula: Formula) -> Result<BigRational> {
        match (&self.amount, self.n) {
            (Some(Amount::Fraction(a)), _) => Ok(a.clone()),
            (Some(Amount::Size(s)), Some(n)) if n > 0 => Ok(ratio(*s as i64, n as i64)),
            (Some(Amount::Size(_)), _) => domain(format!("{formula}: s needs a positive n")),
            (None, _) => domain(format!("{formula}: needs s (with n) or a")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundValue {
    pub formula: Formula,
    pub coefficient: BigRational,
    pub absolute: Option<BigRational>,
}

fn pow(base: &BigRational, e: u64) -> BigRational {
    Pow::pow(base.clone(), e as u32)
}

fn big(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn binom_q(n: u64, k: u64) -> BigRational {
    BigRational::from_integer(binomial_big(n, k))
}

/// `C(n, k)` with a possibly negative top, zero when out of range.
fn binom_qi(n: i64, k: i64) -> BigRational {
    if n < 0 || k < 0 || k > n {
        BigRational::zero()
    } else {
        binom_q(n as u64, k as u64)
    }
}

fn need(cond: bool, formula: Formula, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        domain(format!("{formula}: requires {what}"))
    }
}

fn perfect_coefficient(k: u64, d: u64, penalty_numer: u64) -> BigRational {
    let m = k - d;
    ratio(m as i64, k as i64) - big(penalty_numer) / pow(&big(k), m)
}

/// `1 − (1 − a)^e`.
fn one_minus_power(a: &BigRational, e: u64) -> BigRational {
    BigRational::one() - pow(&(BigRational::one() - a), e)
}

fn scaled(
    coefficient: &BigRational,
    n: Option<u64>,
    top_minus: u64,
    k: u64,
) -> Option<BigRational> {
    n.map(|n| coefficient * binom_qi(n as i64 - top_minus as i64, (k - top_minus) as i64))
}

fn check_a(a: &BigRational, max: &BigRational, formula: Formula, what: &str) -> Result<()> {
    need(!a.is_negative() && a <= max, formula, what)
}

/// Evaluates `formula` at `p`.
pub fn eval_bound(formula: Formula, p: &BoundParams) -> Result<BoundValue> {
    let (k, d) = (p.k, p.d);
    need(k >= 2, formula, "k ≥ 2")?;
    let (coefficient, absolute) = match formula {
        Formula::Conj11 => {
            need(d >= 1 && d < k, formula, "1 ≤ d ≤ k−1")?;
            let second = BigRational::one() - pow(&ratio(k as i64 - 1, k as i64), k - d);
            let c = second.max(ratio(1, 2));
            let abs = scaled(&c, p.n, d, k);
            (c, abs)
        }
        Formula::Thm12 | Formula::Mr => {
            need(d >= 1 && 2 * d < k, formula, "1 ≤ d < k/2")?;
            let penalty = if formula == Formula::Thm12 {
                k - d - 1
            } else {
                1
            };
            let c = perfect_coefficient(k, d, penalty);
            let abs = scaled(&c, p.n, d, k);
            (c, abs)
        }
        Formula::Hps => {
            need(
                k >= 3 && d >= 1 && 2 * d < k,
                formula,
                "k ≥ 3 and 1 ≤ d < k/2",
            )?;
            let c = ratio((k - d) as i64, k as i64);
            let abs = scaled(&c, p.n, d, k);
            (c, abs)
        }
        Formula::Eq1 | Formula::Conj12 => {
            if formula == Formula::Eq1 {
                need(d < k, formula, "0 ≤ d ≤ k−1")?;
            } else {
                need(d >= 1 && d < k, formula, "1 ≤ d ≤ k−1")?;
            }
            let a = p.fraction(formula)?;
            check_a(&a, &ratio(1, k as i64), formula, "0 ≤ s ≤ n/k")?;
            let c = one_minus_power(&a, k - d);
            let abs = scaled(&c, p.n, d, k);
            (c, abs)
        }
        Formula::Conj15M0 | Formula::Thm14M0 => {
            need(d == 0, formula, "d = 0 (edge-count threshold)")?;
            match (&p.amount, p.n) {
                (Some(Amount::Size(s)), Some(n)) => {
                    let s = *s;
                    need(s >= 1 && s * k <= n, formula, "1 ≤ s ≤ n/k")?;
                    if formula == Formula::Thm14M0 {
                        need(n + s > (2 * s - 1) * k, formula, "n ≥ (2s−1)k − s + 1")?;
                    }
                    let star = binom_q(n, k) - binom_q(n - s + 1, k);
                    let extremal = if formula == Formula::Conj15M0 {
                        star.max(binom_qi((k * s) as i64 - 1, k as i64))
                    } else {
                        star
                    };
                    let c = &extremal / binom_q(n, k);
                    (c, Some(extremal + BigRational::one()))
                }
                (Some(Amount::Fraction(a)), _) => {
                    let (max, what) = if formula == Formula::Thm14M0 {
                        (ratio(1, 2 * k as i64), "a ≤ 1/(2k)")
                    } else {
                        (ratio(1, k as i64), "a ≤ 1/k")
                    };
                    check_a(a, &max, formula, what)?;
                    let star = one_minus_power(a, k);
                    let c = if formula == Formula::Conj15M0 {
                        star.max(pow(&(big(k) * a), k))
                    } else {
                        star
                    };
                    (c, None)
                }
                _ => return domain(format!("{formula}: needs n and s, or a")),
            }
        }
        Formula::Thm18 => {
            need(d >= 1, formula, "d ≥ 1")?;
            let c = ratio(k as i64, (k + d) as i64) - big(k - 1) / pow(&big(k + d), k);
            let abs = scaled(&c, p.n, 0, k);
            (c, abs)
        }
        Formula::Thm19 => {
            need(
                k >= 3 && d >= 1 && d + 2 <= k,
                formula,
                "k ≥ 3 and 1 ≤ d ≤ k−2",
            )?;
            let c = perfect_coefficient(k, d, k - d - 1);
            let abs = scaled(&c, p.n, d, k);
            (c, abs)
        }
        Formula::BaseK2 => {
            need(k == 2 && d == 0, formula, "k = 2 and d = 0")?;
            let x = p.fraction(formula)?;
            check_a(&x, &ratio(1, 3), formula, "0 ≤ x ≤ 1/3")?;
            let c = one_minus_power(&x, 2);
            let abs = scaled(&c, p.n, 0, k);
            (c, abs)
        }
        Formula::Xi => {
            need(k >= 3 && d >= 1, formula, "k ≥ 3 and d ≥ 1")?;
            (xi(k, d), None)
        }
    };
    debug_assert!(!coefficient.is_negative() && coefficient <= BigRational::one());
    Ok(BoundValue {
        formula,
        coefficient,
        absolute,
    })
}

/// `ξ = (thm18(k−1, d))·((k+d−1)/(k+d))^{k−1} + 1 − ((k+d−1)/(k+d))^{k−1}`.
pub fn xi(k: u64, d: u64) -> BigRational {
    let km = k + d - 1;
    let inner = ratio((k - 1) as i64, km as i64) - big(k - 2) / pow(&big(km), k - 1);
    let q = pow(&ratio(km as i64, (k + d) as i64), k - 1);
    inner * &q + (BigRational::one() - q)
}

/// One pairwise comparison inside a [`BoundComparison`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    pub lower: Formula,
    pub upper: Formula,
    pub holds: bool,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundComparison {
    pub k: u64,
    pub d: u64,
    pub values: Vec<(Formula, BigRational)>,
    /// `conj11 ≤ thm12`, `thm12 ≤ mr`, `mr ≤ hps`.
    pub chain: Vec<Ordering>,
}

impl BoundComparison {
    pub fn holds(&self) -> bool {
        self.chain.iter().all(|o| o.holds)
    }

    pub fn value(&self, f: Formula) -> &BigRational {
        &self
            .values
            .iter()
            .find(|(g, _)| *g == f)
            .expect("formula compared")
            .1
    }
}

/// Orders the perfect-matching coefficients `conj11 ≤ thm12 ≤ mr ≤ hps`.
pub fn compare_bounds(k: u64, d: u64) -> Result<BoundComparison> {
    if k < 3 || d < 1 || 2 * d >= k {
        return domain(format!(
            "compare_bounds: requires k ≥ 3 and 1 ≤ d < k/2, got k = {k}, d = {d}"
        ));
    }
    let p = BoundParams::new(k, d);
    let order = [Formula::Conj11, Formula::Thm12, Formula::Mr, Formula::Hps];
    let values: Vec<(Formula, BigRational)> = order
        .iter()
        .map(|&f| eval_bound(f, &p).map(|v| (f, v.coefficient)))
        .collect::<Result<_>>()?;
    let chain = values
        .windows(2)
        .map(|w| Ordering {
            lower: w[0].0,
            upper: w[1].0,
            holds: w[0].1 <= w[1].1,
            strict: w[0].1 < w[1].1,
        })
        .collect();
    Ok(BoundComparison {
        k,
        d,
        values,
        chain,
    })
}

/// Bracketed root of `g(a) = 1 − (1−2a)^{k−1} − (1−a)^{k−1}` on `(0, 1/(k+1))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AkRoot {
    pub k: u64,
    pub lo: BigRational,
    pub hi: BigRational,
    /// Midpoint of the final bracket.
    pub a: BigRational,
    /// `g(a)` at the midpoint.
    pub residual: BigRational,
    pub iterations: u32,
}

impl AkRoot {
    pub fn a_f64(&self) -> f64 {
        to_f64(&self.a)
    }

    pub fn k_a_f64(&self) -> f64 {
        self.k as f64 * self.a_f64()
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

fn ak_function(k: u64, a: &BigRational) -> BigRational {
    let one = BigRational::one();
    let two_a = a * int(2);
    (&one - pow(&(&one - two_a), k - 1)) - pow(&(&one - a), k - 1)
}

/// Bisection with exact rational evaluation; stops once the bracket width and
/// `|g|` at its midpoint are both at most `tol`.
pub fn solve_a_k(k: u64, tol: &BigRational) -> Result<AkRoot> {
    if k < 3 {
        return domain("a_k: k must be at least 3; for k = 2 the defining equation is linear with root 1/3 on the boundary");
    }
    if !tol.is_positive() {
        return domain("a_k: tolerance must be positive");
    }
    let mut lo = BigRational::zero();
    let mut hi = ratio(1, k as i64 + 1);
    let g_lo = ak_function(k, &lo);
    let g_hi = ak_function(k, &hi);
    if g_lo.is_positive() == g_hi.is_positive() || g_lo.is_zero() || g_hi.is_zero() {
        return Err(Error::NoSignChange(format!(
            "g(0) = {g_lo}, g(1/(k+1)) = {g_hi} for k = {k}"
        )));
    }
    let lo_negative = g_lo.is_negative();
    let half = ratio(1, 2);
    let mut iterations = 0;
    loop {
        let mid = (&lo + &hi) * &half;
        let g_mid = ak_function(k, &mid);
        if (&hi - &lo) <= *tol && g_mid.abs() <= *tol {
            return Ok(AkRoot {
                k,
                lo,
                hi,
                a: mid,
                residual: g_mid,
                iterations,
            });
        }
        if g_mid.is_zero() {
            return Ok(AkRoot {
                k,
                lo: mid.clone(),
                hi: mid.clone(),
                a: mid,
                residual: g_mid,
                iterations,
            });
        }
        if g_mid.is_negative() == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
}
