//! Catalan numbers in three flavours: exact big integers, natural logs, and
//! the scaled form `C_n / 4^n` that stays within `f64` range for any `n`.
//!
//! Also houses the partial Catalan convolutions
//! `p(r, s) = sum_{k=1..s} C_{r+s-k-1} * C_{k-1}` and a brute-force Dyck path
//! counter used to check them.

use std::f64::consts::{LN_2, PI};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count.
pub type BigCount = BigUint;

/// Low word of `ln 2` as a double-double, `LN_2 + LN2_LO` is accurate to ~1e-33.
const LN2_LO: f64 = 2.319_046_813_846_299_6e-17;

/// Below this index scaled values come from the exact table; above it from
/// the Stirling series, whose first omitted term is under 1e-19 there.
const SERIES_CUTOFF: usize = 64;

/// Largest path semilength `dyck_oracle` will enumerate.
pub const DYCK_ORACLE_MAX: u32 = 14;

/// Memoized Catalan numbers. Entries are appended, never rewritten, so every
/// reader sees the same value for a given index regardless of who grew the
/// table.
pub struct CatalanTable {
    exact: RwLock<Arc<Vec<BigCount>>>,
    logs: RwLock<Arc<Vec<f64>>>,
    scaled: RwLock<Arc<Vec<f64>>>,
}

impl Default for CatalanTable {
    fn default() -> Self {
        Self::new()
    }
}

impl CatalanTable {
    pub fn new() -> Self {
        CatalanTable {
            exact: RwLock::new(Arc::new(vec![BigCount::one(), BigCount::one()])),
            logs: RwLock::new(Arc::new(Vec::new())),
            scaled: RwLock::new(Arc::new(Vec::new())),
        }
    }

    /// Process-wide table shared by the free functions of this module.
    pub fn global() -> &'static CatalanTable {
        static TABLE: OnceLock<CatalanTable> = OnceLock::new();
        TABLE.get_or_init(CatalanTable::new)
    }

    /// Snapshot holding at least `C_0..=C_n`.
    pub fn exact_upto(&self, n: usize) -> Arc<Vec<BigCount>> {
        {
            let cur = self.exact.read().expect("catalan table poisoned");
            if cur.len() > n {
                return Arc::clone(&cur);
            }
        }
        let mut guard = self.exact.write().expect("catalan table poisoned");
        if guard.len() <= n {
            let target = (n + 1).max(guard.len() * 2);
            let mut grown = Vec::with_capacity(target);
            grown.extend_from_slice(&guard);
            while grown.len() < target {
                // C_{k+1} = C_k * 2(2k+1) / (k+2), exact division
                let k = grown.len() - 1;
                let next = &grown[k] * BigCount::from(2 * (2 * k as u64 + 1)) / (k as u64 + 2);
                grown.push(next);
            }
            *guard = Arc::new(grown);
        }
        Arc::clone(&guard)
    }

    /// Snapshot holding at least `ln C_0..=ln C_n`.
    pub fn logs_upto(&self, n: usize) -> Arc<Vec<f64>> {
        grow_float_table(&self.logs, n, catalan_log_uncached)
    }

    /// Snapshot holding at least `C_k / 4^k` for `k = 0..=n`.
    pub fn scaled_upto(&self, n: usize) -> Arc<Vec<f64>> {
        grow_float_table(&self.scaled, n, |k| scaled_ln(k).exp())
    }
}

fn grow_float_table(
    lock: &RwLock<Arc<Vec<f64>>>,
    n: usize,
    eval: impl Fn(usize) -> f64,
) -> Arc<Vec<f64>> {
    {
        let cur = lock.read().expect("catalan table poisoned");
        if cur.len() > n {
            return Arc::clone(&cur);
        }
    }
    let mut guard = lock.write().expect("catalan table poisoned");
    if guard.len() <= n {
        let target = (n + 1).max(guard.len() * 2);
        let mut grown = Vec::with_capacity(target);
        grown.extend_from_slice(&guard);
        grown.extend((grown.len()..target).map(&eval));
        *guard = Arc::new(grown);
    }
    Arc::clone(&guard)
}

/// `C_n`, with `C_{-1} = 0`.
pub fn catalan(n: i64) -> Result<BigCount> {
    match n {
        -1 => Ok(BigCount::zero()),
        n if n < -1 => Err(Error::out_of_range("n", n, "n >= -1")),
        n => Ok(CatalanTable::global().exact_upto(n as usize)[n as usize].clone()),
    }
}

/// Natural log of `C_n`.
pub fn catalan_log(n: i64) -> Result<f64> {
    if n < 0 {
        return Err(Error::out_of_range("n", n, "n >= 0"));
    }
    Ok(CatalanTable::global().logs_upto(n as usize)[n as usize])
}

/// `ln(4^n / (sqrt(pi) n^{3/2}))`, the log of the leading-order asymptotic.
pub fn catalan_asymptotic_ln(n: i64) -> Result<f64> {
    if n < 1 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    let nf = n as f64;
    Ok(2.0 * nf * LN_2 - 0.5 * PI.ln() - 1.5 * nf.ln())
}

/// `4^n / (sqrt(pi) n^{3/2})`. Overflows to `+inf` past `n ~ 511`; use
/// [`catalan_asymptotic_ln`] for larger `n`.
pub fn catalan_asymptotic(n: i64) -> Result<f64> {
    catalan_asymptotic_ln(n).map(f64::exp)
}

/// `ln(C_n / 4^n)`. Small in magnitude for every `n`, so this carries full
/// relative precision.
fn scaled_ln(n: usize) -> f64 {
    if n < SERIES_CUTOFF {
        let c = CatalanTable::global().exact_upto(n)[n]
            .to_f64()
            .expect("small catalan fits in f64");
        // 4^n is a power of two, so the division is exact
        return (c / 4f64.powi(n as i32)).ln();
    }
    // ln binom(2n, n) = 2n ln 2 - ln(pi n)/2 + s(2n) - 2 s(n) with s the
    // Stirling remainder of ln n!; the large terms cancel analytically.
    let x = n as f64;
    -0.5 * (PI * x).ln() - (x + 1.0).ln() + stirling_remainder(2.0 * x)
        - 2.0 * stirling_remainder(x)
}

/// `ln x! - (x ln x - x + ln(2 pi x)/2)` by its asymptotic series.
fn stirling_remainder(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0
        - inv2
            * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))))
}

fn catalan_log_uncached(n: usize) -> f64 {
    // n ln 4 as a double-double, then one final rounding
    let k = 2.0 * n as f64;
    let hi = k * LN_2;
    let err = k.mul_add(LN_2, -hi);
    hi + (err + k * LN2_LO + scaled_ln(n))
}

/// Partial Catalan convolution `p(r, s)`.
pub fn partial_convolution(r: i64, s: i64) -> Result<BigCount> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidArgument(format!(
            "partial_convolution needs r >= 1 and s >= 1, got r = {r}, s = {s}"
        )));
    }
    let (r, s) = (r as usize, s as usize);
    let cat = CatalanTable::global().exact_upto(r + s);
    Ok((1..=s).fold(BigCount::zero(), |acc, k| {
        acc + &cat[r + s - k - 1] * &cat[k - 1]
    }))
}

/// Counts Dyck paths of semilength `r + s - 1` whose first return to the axis
/// happens by step `2s`, by generating every path.
pub fn dyck_oracle(r: i64, s: i64) -> Result<BigCount> {
    if r < 1 || s < 1 {
        return Err(Error::InvalidArgument(format!(
            "dyck_oracle needs r >= 1 and s >= 1, got r = {r}, s = {s}"
        )));
    }
    let semi = r + s - 1;
    if semi > DYCK_ORACLE_MAX as i64 {
        return Err(Error::out_of_range(
            "r + s - 1",
            semi,
            format!("at most {DYCK_ORACLE_MAX} for exhaustive enumeration"),
        ));
    }
    let mut count = 0u64;
    for_each_dyck_path(semi as usize, |path| {
        if first_return(path) <= 2 * s as usize {
            count += 1;
        }
    });
    Ok(BigCount::from(count))
}

/// Calls `visit` with every Dyck path of the given semilength, as a slice of
/// steps (`true` = up).
pub fn for_each_dyck_path(semilength: usize, mut visit: impl FnMut(&[bool])) {
    fn walk(
        path: &mut Vec<bool>,
        ups: usize,
        downs: usize,
        semi: usize,
        visit: &mut dyn FnMut(&[bool]),
    ) {
        if downs == semi {
            visit(path);
            return;
        }
        if ups < semi {
            path.push(true);
            walk(path, ups + 1, downs, semi, visit);
            path.pop();
        }
        if downs < ups {
            path.push(false);
            walk(path, ups, downs + 1, semi, visit);
            path.pop();
        }
    }
    let mut path = Vec::with_capacity(2 * semilength);
    walk(&mut path, 0, 0, semilength, &mut visit);
}

/// 1-based index of the step at which the path first comes back to height 0.
/// Zero for the empty path.
pub fn first_return(path: &[bool]) -> usize {
    let mut height = 0i64;
    for (idx, &up) in path.iter().enumerate() {
        height += if up { 1 } else { -1 };
        if height == 0 {
            return idx + 1;
        }
    }
    0
}

/// Arithmetic shared by the exact and the scaled-float evaluation paths.
///
/// The float path works with `C_k / 4^k` in place of `C_k`, so every count
/// picks up a known power of four that callers fold back in as a constant.
pub trait Weight: Clone + Send + Sync {
    fn zero_value() -> Self;
    fn add_assign(&mut self, other: &Self);
    fn mul(&self, other: &Self) -> Self;

    fn add_mul(&mut self, a: &Self, b: &Self) {
        let prod = a.mul(b);
        self.add_assign(&prod);
    }

    /// `total - sum(parts)`, clamped at zero for floats.
    fn remainder<'a>(total: &Self, parts: impl Iterator<Item = &'a Self>) -> Self
    where
        Self: 'a;
}

impl Weight for BigCount {
    fn zero_value() -> Self {
        Zero::zero()
    }

    fn add_assign(&mut self, other: &Self) {
        *self += other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn remainder<'a>(total: &Self, parts: impl Iterator<Item = &'a Self>) -> Self {
        let used: BigCount = parts.sum();
        total - used
    }
}

impl Weight for f64 {
    fn zero_value() -> Self {
        0.0
    }

    fn add_assign(&mut self, other: &Self) {
        *self += *other;
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = a.mul_add(*b, *self);
    }

    fn remainder<'a>(total: &Self, parts: impl Iterator<Item = &'a Self>) -> Self {
        // Neumaier summation of total - parts
        let mut sum = *total;
        let mut comp = 0.0;
        for &p in parts {
            let t = sum - p;
            if sum.abs() >= p.abs() {
                comp += (sum - t) - p;
            } else {
                comp += (-p - t) + sum;
            }
            sum = t;
        }
        (sum + comp).max(0.0)
    }
}

/// `cat[k]`, or zero for negative `k`.
pub(crate) fn cat_at<T: Weight>(cat: &[T], k: i64) -> Option<&T> {
    if k < 0 {
        None
    } else {
        Some(&cat[k as usize])
    }
}

/// Table of partial convolutions, indexed by `n = r + s - 1` and `s`, built
/// from prefix sums in `O(N^2)`.
///
/// Built from scaled Catalan numbers `C_k / 4^k` it holds `p(r, s) / 4^{r+s-2}`.
pub struct PartialTable<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Weight> PartialTable<T> {
    /// Covers every `(r, s)` with `r + s - 1 <= max_n`. `cat` must hold at
    /// least `max_n` entries.
    pub fn build(cat: &[T], max_n: usize) -> Self {
        let mut rows = Vec::with_capacity(max_n + 1);
        rows.push(Vec::new());
        for n in 1..=max_n {
            // rows[n][s] for s = 0..=n, rows[n][0] = 0
            let mut row = Vec::with_capacity(n + 1);
            let mut acc = T::zero_value();
            row.push(acc.clone());
            for k in 1..=n {
                acc.add_mul(&cat[n - k], &cat[k - 1]);
                row.push(acc.clone());
            }
            rows.push(row);
        }
        PartialTable { rows }
    }

    /// `p(r, s)` (or its scaled counterpart). Panics outside the built range.
    pub fn get(&self, r: usize, s: usize) -> &T {
        debug_assert!(r >= 1 && s >= 1);
        &self.rows[r + s - 1][s]
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(catalan(0).unwrap(), big(1));
        assert_eq!(catalan(3).unwrap(), big(5));
        assert_eq!(catalan(-1).unwrap(), big(0));
        assert_eq!(catalan(20).unwrap(), big(6_564_120_420));
        assert!(catalan(-2).is_err());
    }

    #[test]
    fn catalan_matches_binomial_form() {
        // C_n = binom(2n, n) / (n + 1), computed independently of the ratio recurrence
        for n in 0u64..60 {
            let mut binom = BigCount::one();
            for k in 0..n {
                binom = binom * (2 * n - k) / (k + 1);
            }
            assert_eq!(catalan(n as i64).unwrap(), binom / (n + 1), "n = {n}");
        }
    }

    #[test]
    fn log_small_values() {
        assert_eq!(catalan_log(0).unwrap(), 0.0);
        assert!((catalan_log(3).unwrap() - 5f64.ln()).abs() < 1e-15);
        assert!(catalan_log(-1).is_err());
    }

    #[test]
    fn asymptotic_values() {
        let one = catalan_asymptotic(1).unwrap();
        assert!((one - 4.0 / PI.sqrt()).abs() < 1e-14);
        assert!((one - 2.256_758_334_191_025).abs() < 1e-12);
        assert!(catalan_asymptotic(0).is_err());
        assert!(catalan_asymptotic_ln(1_000_000).unwrap().is_finite());

        let exact20 = 6_564_120_420f64;
        let ratio = exact20 / catalan_asymptotic(20).unwrap();
        assert!(ratio > 0.94 && ratio < 1.0, "ratio {ratio}");

        let ratio = (catalan_log(2000).unwrap() - catalan_asymptotic_ln(2000).unwrap()).exp();
        assert!(ratio > 0.999 && ratio < 1.0, "ratio {ratio}");
    }

    #[test]
    fn partial_convolution_examples() {
        assert_eq!(partial_convolution(1, 1).unwrap(), big(1));
        assert_eq!(partial_convolution(1, 2).unwrap(), big(2));
        assert_eq!(partial_convolution(2, 2).unwrap(), big(3));
        assert!(partial_convolution(0, 1).is_err());
        assert!(partial_convolution(1, 0).is_err());
    }

    #[test]
    fn dyck_oracle_examples() {
        assert_eq!(dyck_oracle(1, 1).unwrap(), big(1));
        assert_eq!(dyck_oracle(1, 2).unwrap(), big(2));
        assert_eq!(dyck_oracle(2, 2).unwrap(), big(3));
        assert!(dyck_oracle(8, 8).is_err());
        assert!(dyck_oracle(0, 3).is_err());
    }

    #[test]
    fn dyck_paths_are_counted_by_catalan() {
        for semi in 0..=10usize {
            let mut count = 0u64;
            for_each_dyck_path(semi, |_| count += 1);
            assert_eq!(big(count), catalan(semi as i64).unwrap());
        }
    }

    #[test]
    fn partial_table_matches_direct_sum() {
        let cat = CatalanTable::global().exact_upto(30);
        let table = PartialTable::build(&cat, 30);
        for r in 1..=15usize {
            for s in 1..=15usize {
                assert_eq!(
                    table.get(r, s),
                    &partial_convolution(r as i64, s as i64).unwrap()
                );
            }
        }
    }

    #[test]
    fn scaled_table_is_continuous_at_series_cutoff() {
        // exact path and series path must agree where they meet
        let scaled = CatalanTable::global().scaled_upto(SERIES_CUTOFF + 2);
        let exact = CatalanTable::global().exact_upto(SERIES_CUTOFF + 2);
        for n in SERIES_CUTOFF - 2..=SERIES_CUTOFF + 2 {
            let want = exact[n].to_f64().unwrap() / 4f64.powi(n as i32);
            assert!(((scaled[n] - want) / want).abs() < 1e-14, "n = {n}");
        }
    }
}
