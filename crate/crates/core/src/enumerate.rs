//! Exact and floating-point values of `B(m, i, j)`, the number of doubly
//! alternating Baxter permutations of length `2m` with `sigma(i) = j`.
//!
//! Three routes are provided:
//!
//! * the closed double sum over partial Catalan convolutions, valid on the
//!   region `i <= j <= 2m - i` ([`count_b_lemma`]);
//! * the recurrence obtained by conditioning on the position of the value
//!   `2m` ([`count_b_recurrence`]), which is independent of the double sum;
//! * [`count_b`], which folds any cell into the double-sum region with the
//!   two diagonal reflections and falls back to the recurrence on the
//!   anti-diagonal `i + j = 2m + 1`, the one line the reflections cannot move.
//!
//! Float mode evaluates the same sums over `C_k / 4^k`. Every term of the
//! double sum then carries the same factor `4^{-2}` relative to `C_m / 4^m`
//! (the leading odd-column term carries `4^{-1}`), so probabilities come out
//! without overflow or underflow at any `m` the bounds allow.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::catalan::{cat_at, BigCount, CatalanTable, PartialTable, Weight};
use crate::error::{Error, Result};
use crate::matrix::{format_float, CountMatrix, Mode};

/// `(i, j, value)` triples computed for one column pair.
type Cells<T> = Vec<(usize, usize, T)>;

/// Largest `m` for exact-mode matrices and exact probabilities.
pub const EXACT_MAX_M: usize = 256;
/// Largest `m` for float-mode matrices and probabilities.
pub const FLOAT_MAX_M: usize = 4000;

fn check_cell(m: i64, i: i64, j: i64) -> Result<()> {
    if m < 1 {
        return Err(Error::out_of_range("m", m, "m >= 1"));
    }
    for (name, v) in [("i", i), ("j", j)] {
        if v < 1 || v > 2 * m {
            return Err(Error::out_of_range(name, v, format!("1..={}", 2 * m)));
        }
    }
    Ok(())
}

/// Whether `(i, j)` satisfies `1 <= i <= j <= 2m - i`.
pub fn in_lemma_region(m: i64, i: i64, j: i64) -> bool {
    1 <= i && i <= j && i + j <= 2 * m
}

/// Maps `(i, j)` into the double-sum region using `B(m,i,j) = B(m,j,i)` and
/// `B(m,i,j) = B(m,2m+1-j,2m+1-i)`. `None` on the anti-diagonal.
pub fn fold_into_lemma_region(m: i64, i: i64, j: i64) -> Option<(i64, i64)> {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    match (i + j).cmp(&(2 * m + 1)) {
        std::cmp::Ordering::Less => Some((i, j)),
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Greater => Some((2 * m + 1 - j, 2 * m + 1 - i)),
    }
}

/// The two pieces of the closed formula: the leading odd-column term
/// `C_b C_{m-b-1}` and the double sum. Catalan indices below zero count as 0,
/// so this can be evaluated outside the region it is proved on.
fn lemma_parts<T: Weight>(m: i64, i: i64, j: i64, cat: &[T], ptab: &PartialTable<T>) -> (T, T) {
    let a = (i + 1) / 2;
    let b = j / 2;
    let odd = j % 2 == 1;
    // odd columns shift both Catalan indices by one
    let (shift_lo, shift_hi) = if odd { (1, -1) } else { (0, 0) };
    let mut sum = T::zero_value();
    for r in 1..a {
        let Some(left) = cat_at(cat, b - r + shift_lo) else {
            continue;
        };
        let mut inner = T::zero_value();
        for s in 1..=(a - r) {
            if let Some(right) = cat_at(cat, m - b - s + shift_hi) {
                inner.add_mul(ptab.get(r as usize, s as usize), right);
            }
        }
        sum.add_mul(left, &inner);
    }
    let lead = if odd {
        match (cat_at(cat, b), cat_at(cat, m - b - 1)) {
            (Some(x), Some(y)) => x.mul(y),
            _ => T::zero_value(),
        }
    } else {
        T::zero_value()
    };
    (lead, sum)
}

/// Raw closed formula with no region check. Used to probe how far the
/// formula extends beyond the region it is proved on.
pub fn lemma_formula_unchecked(m: i64, i: i64, j: i64) -> BigCount {
    let a = ((i + 1) / 2).max(1) as usize;
    let cat = CatalanTable::global().exact_upto((m + 2).max(a as i64) as usize);
    let ptab = PartialTable::build(&cat, a.saturating_sub(1));
    let (lead, sum) = lemma_parts(m, i, j, &cat, &ptab);
    lead + sum
}

/// `B(m, i, j)` by the closed double sum. Requires `i <= j <= 2m - i`.
pub fn count_b_lemma(m: i64, i: i64, j: i64) -> Result<BigCount> {
    check_cell(m, i, j)?;
    if !in_lemma_region(m, i, j) {
        return Err(Error::InvalidArgument(format!(
            "({i}, {j}) is outside the region i <= j <= 2m - i for m = {m}"
        )));
    }
    Ok(lemma_formula_unchecked(m, i, j))
}

/// Memoized evaluator of the recurrence that conditions on the position of
/// the largest value. Boundary rows and columns come from the first-row
/// formula `B(m,1,2b+1) = C_b C_{m-b-1}`, `B(m,1,2b) = 0`.
pub struct Recurrence {
    cat: Arc<Vec<BigCount>>,
    memo: HashMap<(i64, i64, i64), BigCount>,
}

impl Recurrence {
    pub fn new(max_m: usize) -> Self {
        Recurrence {
            cat: CatalanTable::global().exact_upto(max_m + 1),
            memo: HashMap::new(),
        }
    }

    /// `B(m, i, j)`; zero whenever a cell lies outside the `2m x 2m` square.
    pub fn eval(&mut self, m: i64, i: i64, j: i64) -> BigCount {
        let n = 2 * m;
        if m < 1 || i < 1 || j < 1 || i > n || j > n {
            return BigCount::zero();
        }
        if (self.cat.len() as i64) <= m {
            self.cat = CatalanTable::global().exact_upto(m as usize + 1);
        }
        // any boundary cell reflects onto the first row
        let first_row_col = if i == 1 {
            Some(j)
        } else if j == 1 {
            Some(i)
        } else if i == n {
            Some(n + 1 - j)
        } else if j == n {
            Some(n + 1 - i)
        } else {
            None
        };
        if let Some(col) = first_row_col {
            return first_row(&self.cat, m, col);
        }
        let key = orbit_key(m, i, j);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let cat = Arc::clone(&self.cat);
        let mut total = BigCount::zero();
        // largest value sits at position 2k with k < ceil(i/2): sigma(i) is in omega
        for k in 1..(i + 1) / 2 {
            let sub = self.eval(m - k, i - 2 * k, j);
            if !sub.is_zero() {
                total += &cat[k as usize - 1] * sub;
            }
        }
        // largest value at position 2k with 2m - j <= 2(k-1): sigma(i) is in tau^c
        for k in (m - j / 2 + 1)..=m {
            let sub = self.eval(k - 1, i - 1, n - j);
            if !sub.is_zero() {
                total += &cat[(m - k) as usize] * sub;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

fn first_row<T: Weight>(cat: &[T], m: i64, j: i64) -> T {
    if j % 2 == 0 {
        T::zero_value()
    } else {
        let b = j / 2;
        cat[b as usize].mul(&cat[(m - b - 1) as usize])
    }
}

fn orbit_key(m: i64, i: i64, j: i64) -> (i64, i64, i64) {
    let n1 = 2 * m + 1;
    let orbit = [(i, j), (j, i), (n1 - j, n1 - i), (n1 - i, n1 - j)];
    let (a, b) = orbit.into_iter().min().expect("non-empty orbit");
    (m, a, b)
}

/// `B(m, i, j)` by the recurrence alone.
pub fn count_b_recurrence(m: i64, i: i64, j: i64) -> Result<BigCount> {
    check_cell(m, i, j)?;
    Ok(Recurrence::new(m as usize).eval(m, i, j))
}

/// `B(m, i, j)` for any cell of the `2m x 2m` square.
pub fn count_b(m: i64, i: i64, j: i64) -> Result<BigCount> {
    check_cell(m, i, j)?;
    match fold_into_lemma_region(m, i, j) {
        Some((i, j)) => count_b_lemma(m, i, j),
        None => count_b_recurrence(m, i, j),
    }
}

/// Fills the whole square from the double sum on the lemma region plus
/// reflections; anti-diagonal cells are the row remainder `total - (rest)`.
///
/// `lead_scale` and `sum_scale` multiply the two formula pieces (1 in exact
/// mode, `1/(4 C^_m)` and `1/(16 C^_m)` in float mode) and `total` is the
/// common row sum.
fn fill_square<T: Weight>(m: usize, cat: &[T], lead_scale: &T, sum_scale: &T, total: &T) -> Vec<T> {
    let n = 2 * m;
    let mi = m as i64;
    let ptab = PartialTable::build(cat, m.saturating_sub(1));

    // Column pair {2c-1, 2c} needs D(a, c) = sum_r C_{c-r} sum_s p(r,s) C_{m-c-s}
    // for every a reachable inside the region; both sums are shared across a
    // through prefix sums over s.
    let columns: Vec<(usize, Cells<T>)> = (0..=m)
        .into_par_iter()
        .map(|c| {
            let ci = c as i64;
            let mut cells = Vec::new();
            for j in [2 * c as i64 - 1, 2 * c as i64] {
                if j < 1 || j > n as i64 {
                    continue;
                }
                let i_max = j.min(2 * mi - j);
                if i_max < 1 {
                    continue;
                }
                let a_max = ((i_max + 1) / 2) as usize;
                // prefix[r][t] = sum_{s=1..t} p(r,s) C_{m-c-s}
                let mut prefix: Vec<Vec<T>> = Vec::with_capacity(a_max);
                prefix.push(Vec::new());
                for r in 1..a_max {
                    let mut row = Vec::with_capacity(a_max - r + 1);
                    let mut acc = T::zero_value();
                    row.push(acc.clone());
                    for s in 1..=(a_max - r) {
                        if let Some(right) = cat_at(cat, mi - ci - s as i64) {
                            acc.add_mul(ptab.get(r, s), right);
                        }
                        row.push(acc.clone());
                    }
                    prefix.push(row);
                }
                let odd = j % 2 == 1;
                let b = j / 2;
                let lead = if odd {
                    let mut l = cat[b as usize].mul(&cat[(mi - b - 1) as usize]);
                    l = l.mul(lead_scale);
                    Some(l)
                } else {
                    None
                };
                for i in 1..=i_max {
                    let a = ((i + 1) / 2) as usize;
                    let mut sum = T::zero_value();
                    for r in 1..a {
                        if let Some(left) = cat_at(cat, ci - r as i64) {
                            sum.add_mul(left, &prefix[r][a - r]);
                        }
                    }
                    let mut value = sum.mul(sum_scale);
                    if let Some(l) = &lead {
                        value.add_assign(l);
                    }
                    cells.push((i as usize, j as usize, value));
                }
            }
            (c, cells)
        })
        .collect();

    let mut grid: Vec<Option<T>> = vec![None; n * n];
    let at = |i: usize, j: usize| (i - 1) * n + (j - 1);
    for (_, cells) in columns {
        for (i, j, v) in cells {
            for (p, q) in [
                (i, j),
                (j, i),
                (n + 1 - j, n + 1 - i),
                (n + 1 - i, n + 1 - j),
            ] {
                grid[at(p, q)] = Some(v.clone());
            }
        }
    }
    for i in 1..=m {
        let anti = n + 1 - i;
        let value = if i == 1 {
            T::zero_value()
        } else {
            let rest = (1..=n)
                .filter(|&j| j != anti)
                .map(|j| grid[at(i, j)].as_ref().expect("off-diagonal cell filled"));
            T::remainder(total, rest)
        };
        grid[at(i, anti)] = Some(value.clone());
        grid[at(anti, i)] = Some(value);
    }
    grid.into_iter()
        .map(|v| v.expect("every cell filled"))
        .collect()
}

/// The full `2m x 2m` table: counts `B(m,i,j)` in exact mode, probabilities
/// `B(m,i,j)/C_m` in float mode.
pub fn count_matrix(m: usize, mode: Mode) -> Result<CountMatrix> {
    let n = 2 * m;
    match mode {
        Mode::Exact => {
            if m > EXACT_MAX_M {
                return Err(Error::out_of_range(
                    "m",
                    m,
                    format!("at most {EXACT_MAX_M} in exact mode"),
                ));
            }
            if m == 0 {
                return CountMatrix::exact(0, Vec::new());
            }
            let cat = CatalanTable::global().exact_upto(m + 1);
            let one = BigCount::from(1u32);
            let entries = fill_square(m, &cat, &one, &one, &cat[m]);
            CountMatrix::exact(n, entries)
        }
        Mode::Float => {
            if m > FLOAT_MAX_M {
                return Err(Error::out_of_range(
                    "m",
                    m,
                    format!("at most {FLOAT_MAX_M} in float mode"),
                ));
            }
            if m == 0 {
                return CountMatrix::float(0, Vec::new());
            }
            let cat = CatalanTable::global().scaled_upto(m + 1);
            let entries = fill_square(m, &cat, &(0.25 / cat[m]), &(0.0625 / cat[m]), &1.0);
            CountMatrix::float(n, entries)
        }
    }
}

/// `P(m,i,j) = B(m,i,j) / C_m` evaluated with scaled floats, for any `m` up
/// to [`FLOAT_MAX_M`].
pub fn probability_float(m: i64, i: i64, j: i64) -> Result<f64> {
    check_cell(m, i, j)?;
    if m as usize > FLOAT_MAX_M {
        return Err(Error::out_of_range(
            "m",
            m,
            format!("at most {FLOAT_MAX_M}"),
        ));
    }
    let cat = CatalanTable::global().scaled_upto(m as usize + 1);
    let lead_scale = 0.25 / cat[m as usize];
    let sum_scale = 0.0625 / cat[m as usize];
    let cell = |i: i64, j: i64, ptab: &PartialTable<f64>| {
        let (lead, sum) = lemma_parts(m, i, j, &cat, ptab);
        lead * lead_scale + sum * sum_scale
    };
    match fold_into_lemma_region(m, i, j) {
        Some((fi, fj)) => {
            let a = ((fi + 1) / 2) as usize;
            let ptab = PartialTable::build(&cat, a.saturating_sub(1));
            Ok(cell(fi, fj, &ptab))
        }
        None => {
            // anti-diagonal: one minus the rest of the row (row i <= m)
            let row = i.min(j);
            if row == 1 {
                return Ok(0.0);
            }
            let anti = 2 * m + 1 - row;
            let ptab = PartialTable::build(&cat, ((row + 1) / 2) as usize);
            let rest: Vec<f64> = (1..=2 * m)
                .into_par_iter()
                .filter(|&col| col != anti)
                .map(|col| {
                    let (fi, fj) =
                        fold_into_lemma_region(m, row, col).expect("off the anti-diagonal");
                    cell(fi, fj, &ptab)
                })
                .collect();
            Ok(f64::remainder(&1.0, rest.iter()))
        }
    }
}

/// `P(m,i,j) = B(m,i,j) / C_m`: exact division for `m <= 256`, scaled floats
/// above.
pub fn probability(m: i64, i: i64, j: i64) -> Result<f64> {
    check_cell(m, i, j)?;
    if m as usize <= EXACT_MAX_M {
        let count = count_b(m, i, j)?;
        let total = catalan_exact(m);
        Ok(ratio_f64(&count, &total))
    } else {
        probability_float(m, i, j)
    }
}

fn catalan_exact(m: i64) -> BigCount {
    CatalanTable::global().exact_upto(m as usize)[m as usize].clone()
}

/// `num / den` rounded to `f64` without overflowing on large operands.
pub fn ratio_f64(num: &BigCount, den: &BigCount) -> f64 {
    let shift = den.bits().saturating_sub(960) as usize;
    let (n, d) = (num >> shift, den >> shift);
    n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY)
}

/// One labelled corner cell: exact count, exact total and their ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerCell {
    pub i: i64,
    pub j: i64,
    pub count: BigCount,
    pub total: BigCount,
    pub probability: f64,
}

/// `P(m,1,1)`, `P(m,1,2m-1)`, `P(m,2,2m-1)`, `P(m,1,2)`, `P(m,1,2m)`,
/// `P(m,2,2)`, in that order. The first three are `C_{m-1}/C_m`, the last three
/// are zero.
pub fn corner_probabilities(m: i64) -> Result<Vec<CornerCell>> {
    if m < 2 {
        return Err(Error::out_of_range("m", m, "m >= 2"));
    }
    let cells = [
        (1, 1),
        (1, 2 * m - 1),
        (2, 2 * m - 1),
        (1, 2),
        (1, 2 * m),
        (2, 2),
    ];
    let total = catalan_exact(m);
    cells
        .into_iter()
        .map(|(i, j)| {
            let count = count_b(m, i, j)?;
            Ok(CornerCell {
                i,
                j,
                probability: ratio_f64(&count, &total),
                count,
                total: total.clone(),
            })
        })
        .collect()
}

/// Corner cells of one `m`, with a CSV form.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerTable {
    pub m: i64,
    pub cells: Vec<CornerCell>,
}

impl CornerTable {
    pub fn compute(m: i64) -> Result<Self> {
        Ok(CornerTable {
            m,
            cells: corner_probabilities(m)?,
        })
    }

    /// `# dab-corners m=<m>`, a column line, then one row per cell. `kind`
    /// is `spike` for a nonzero count and `zero` otherwise.
    pub fn to_csv(&self) -> String {
        let mut s = format!(
            "# dab-corners m={}\ni,j,kind,count,total,probability\n",
            self.m
        );
        for c in &self.cells {
            let kind = if c.count.is_zero() { "zero" } else { "spike" };
            s.push_str(&format!(
                "{},{},{kind},{},{},{}\n",
                c.i,
                c.j,
                c.count,
                c.total,
                format_float(c.probability)
            ));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let m: i64 = header
            .strip_prefix("# dab-corners m=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::parse(1, "expected `# dab-corners m=<m>`"))?;
        if lines.next() != Some("i,j,kind,count,total,probability") {
            return Err(Error::parse(2, "expected column line"));
        }
        let mut cells = Vec::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 3;
            if line.trim().is_empty() {
                continue;
            }
            let bad = |what: &str| Error::parse(lineno, format!("bad {what}"));
            let f: Vec<&str> = line.split(',').collect();
            let [i, j, kind, count, total, prob] = f[..] else {
                return Err(Error::parse(lineno, "expected 6 columns"));
            };
            let cell = CornerCell {
                i: i.parse().map_err(|_| bad("i"))?,
                j: j.parse().map_err(|_| bad("j"))?,
                count: count.parse().map_err(|_| bad("count"))?,
                total: total.parse().map_err(|_| bad("total"))?,
                probability: prob.parse().map_err(|_| bad("probability"))?,
            };
            let want = if cell.count.is_zero() {
                "zero"
            } else {
                "spike"
            };
            if kind != want {
                return Err(bad("kind"));
            }
            cells.push(cell);
        }
        Ok(CornerTable { m, cells })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalan::catalan;
    use crate::perm::brute_count_matrix;

    fn big(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(count_b_lemma(2, 1, 1).unwrap(), big(1));
        assert_eq!(count_b_lemma(2, 1, 2).unwrap(), big(0));
        let brute = brute_count_matrix(6).unwrap();
        assert_eq!(
            count_b_lemma(3, 2, 3).unwrap(),
            brute.exact_entry(2, 3).unwrap()
        );
        assert_eq!(count_b_lemma(3, 2, 3).unwrap(), big(1));
        assert!(count_b_lemma(2, 3, 1).is_err());
        assert!(
            count_b_lemma(2, 2, 3).is_err(),
            "anti-diagonal is outside the region"
        );
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(count_b_recurrence(2, 2, 3).unwrap(), big(1));
        assert_eq!(count_b_recurrence(2, 2, 4).unwrap(), big(1));
        assert_eq!(count_b_recurrence(1, 1, 1).unwrap(), big(1));
        assert!(count_b_recurrence(1, 3, 1).is_err());
    }

    #[test]
    fn count_b_examples() {
        assert_eq!(count_b(2, 3, 1).unwrap(), count_b(2, 1, 3).unwrap());
        assert_eq!(count_b(2, 3, 1).unwrap(), big(1));
        assert_eq!(count_b(2, 4, 4).unwrap(), count_b(2, 1, 1).unwrap());
        assert_eq!(count_b(2, 4, 4).unwrap(), big(1));
        let brute = brute_count_matrix(6).unwrap();
        assert_eq!(count_b(3, 3, 4).unwrap(), brute.exact_entry(3, 4).unwrap());
        assert!(count_b(2, 0, 1).is_err());
        assert!(count_b(2, 1, 5).is_err());
    }

    #[test]
    fn fold_covers_every_off_diagonal_cell() {
        for m in 1..=8i64 {
            for i in 1..=2 * m {
                for j in 1..=2 * m {
                    match fold_into_lemma_region(m, i, j) {
                        Some((p, q)) => assert!(in_lemma_region(m, p, q)),
                        None => assert_eq!(i + j, 2 * m + 1),
                    }
                }
            }
        }
    }

    #[test]
    fn matrix_matches_brute_force() {
        for m in 0..=6usize {
            let brute = brute_count_matrix(2 * m).unwrap();
            let fast = count_matrix(m, Mode::Exact).unwrap();
            assert_eq!(fast, brute, "m = {m}");
        }
    }

    #[test]
    fn matrix_cells_match_count_b() {
        for m in 1..=9i64 {
            let matrix = count_matrix(m as usize, Mode::Exact).unwrap();
            for i in 1..=2 * m {
                for j in 1..=2 * m {
                    assert_eq!(
                        matrix.exact_entry(i as usize, j as usize).unwrap(),
                        count_b(m, i, j).unwrap(),
                        "m = {m}, ({i}, {j})"
                    );
                }
            }
        }
    }

    #[test]
    fn float_matrix_tracks_exact() {
        for m in [1usize, 2, 5, 13, 30] {
            let exact = count_matrix(m, Mode::Exact).unwrap();
            let float = count_matrix(m, Mode::Float).unwrap();
            let total = catalan(m as i64).unwrap();
            for i in 1..=2 * m {
                for j in 1..=2 * m {
                    let want = ratio_f64(&exact.exact_entry(i, j).unwrap(), &total);
                    let got = float.get_f64(i, j);
                    if want == 0.0 {
                        assert_eq!(got, 0.0, "m = {m}, ({i}, {j})");
                    } else {
                        assert!(((got - want) / want).abs() <= 1e-9, "m = {m}, ({i}, {j})");
                    }
                }
            }
        }
    }

    #[test]
    fn probability_examples() {
        let p = probability(10, 1, 1).unwrap();
        assert!((p - 4862.0 / 16796.0).abs() < 1e-15);
        assert_eq!(probability(10, 1, 2).unwrap(), 0.0);
        assert_eq!(probability(2, 1, 3).unwrap(), 0.5);
        let far = probability(300, 1, 1).unwrap();
        let want = ratio_f64(&catalan(299).unwrap(), &catalan(300).unwrap());
        assert!(((far - want) / want).abs() < 1e-12);
    }

    #[test]
    fn float_probability_on_anti_diagonal() {
        let m = 20i64;
        for i in 1..=2 * m {
            let j = 2 * m + 1 - i;
            let want = probability(m, i, j).unwrap();
            let got = probability_float(m, i, j).unwrap();
            if want == 0.0 {
                assert_eq!(got, 0.0);
            } else {
                assert!(((got - want) / want).abs() < 1e-10, "({i}, {j})");
            }
        }
    }

    #[test]
    fn corner_examples() {
        let corners = corner_probabilities(10).unwrap();
        assert_eq!(corners[0].count, big(4862));
        assert_eq!(corners[0].total, big(16796));
        assert_eq!(corners[3].count, big(0));
        let small = corner_probabilities(2).unwrap();
        assert_eq!(small[0].probability, 0.5);
        assert_eq!(small[2].probability, 0.5);
        assert_eq!(probability(2, 2, 3).unwrap(), 0.5);
        assert!(corner_probabilities(1).is_err());
    }

    #[test]
    fn corner_table_round_trip() {
        let table = CornerTable::compute(10).unwrap();
        let text = table.to_csv();
        assert!(text.starts_with(
            "# dab-corners m=10\ni,j,kind,count,total,probability\n1,1,spike,4862,16796,"
        ));
        let back = CornerTable::from_csv(&text).unwrap();
        assert_eq!(back, table);
        assert_eq!(back.to_csv(), text);
        assert!(CornerTable::from_csv(
            "# dab-corners m=2\ni,j,kind,count,total,probability\n1,2,spike,0,2,0\n"
        )
        .is_err());
    }

    #[test]
    fn exact_bound_is_enforced() {
        assert!(count_matrix(EXACT_MAX_M + 1, Mode::Exact).is_err());
        assert!(count_matrix(FLOAT_MAX_M + 1, Mode::Float).is_err());
    }

    #[test]
    fn ratio_handles_huge_operands() {
        let c = catalan(2000).unwrap();
        let d = catalan(1999).unwrap();
        let r = ratio_f64(&d, &c);
        // C_{m-1}/C_m = (m+1) / (2(2m-1))
        assert!((r - 2001.0 / 7998.0).abs() < 1e-15);
    }
}
