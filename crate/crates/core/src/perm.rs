//! Permutations in one-line notation, the Baxter and alternating predicates,
//! and an exhaustive enumerator of doubly alternating Baxter permutations for
//! small lengths.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::CountMatrix;

/// Largest length accepted by [`enumerate_dab`] and [`brute_count_matrix`].
pub const ORACLE_MAX_N: usize = 13;

/// A permutation of `1..=n` stored as its one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    /// Checks that `word` is a bijection on `1..=word.len()`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidArgument(format!(
                    "{word:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation(word))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.0
    }

    pub fn into_word(self) -> Vec<u32> {
        self.0
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u32; self.len()];
        for (pos, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = pos as u32 + 1;
        }
        Permutation(inv)
    }

    /// `sigma^c(i) = n + 1 - sigma(i)`.
    pub fn complement(&self) -> Self {
        let top = self.len() as u32 + 1;
        Permutation(self.0.iter().map(|&v| top - v).collect())
    }

    /// Reads the word right to left.
    pub fn reverse(&self) -> Self {
        Permutation(self.0.iter().rev().copied().collect())
    }

    /// Block substitution `sigma[parts_1, ..., parts_n]`: position block `i`
    /// carries the pattern `parts_i` on a value interval whose rank among the
    /// blocks is `sigma(i)`.
    pub fn inflate(&self, parts: &[Permutation]) -> Result<Self> {
        if parts.len() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "inflation of a length-{} permutation needs {} parts, got {}",
                self.len(),
                self.len(),
                parts.len()
            )));
        }
        // value offset of the block with rank v is the total size of lower-ranked blocks
        let mut size_by_rank = vec![0u32; self.len() + 1];
        for (pos, &v) in self.0.iter().enumerate() {
            size_by_rank[v as usize] = parts[pos].len() as u32;
        }
        let mut offset_by_rank = vec![0u32; self.len() + 1];
        for rank in 2..=self.len() {
            offset_by_rank[rank] = offset_by_rank[rank - 1] + size_by_rank[rank - 1];
        }
        let total: usize = parts.iter().map(Permutation::len).sum();
        let mut word = Vec::with_capacity(total);
        for (pos, &v) in self.0.iter().enumerate() {
            let base = offset_by_rank[v as usize];
            word.extend(parts[pos].0.iter().map(|&x| base + x));
        }
        Ok(Permutation(word))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

/// Space-separated values, matching the sample file format.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Accepts space-separated values, or a bare digit string such as `1324`
/// when every value is a single digit.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("cannot parse permutation {s:?}"));
        let word: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(word)
    }
}

/// `sigma(1) < sigma(2) > sigma(3) < ...`; vacuous for `n <= 1`.
pub fn is_alternating(sigma: &Permutation) -> bool {
    sigma.0.windows(2).enumerate().all(|(idx, pair)| {
        if idx % 2 == 0 {
            pair[0] < pair[1]
        } else {
            pair[0] > pair[1]
        }
    })
}

/// No `i < j < k` with `sigma(j+1) < sigma(i) < sigma(k) < sigma(j)` or
/// `sigma(j) < sigma(k) < sigma(i) < sigma(j+1)`.
///
/// For a fixed adjacent pair at `j`, only values strictly between `sigma(j)`
/// and `sigma(j+1)` matter. A descent is violated exactly when the smallest
/// such value left of `j` is below the largest such value right of `j+1`; an
/// ascent mirrors this. That makes the scan `O(n^2)`.
pub fn is_baxter(sigma: &Permutation) -> bool {
    let w = &sigma.0;
    let n = w.len();
    for j in 0..n.saturating_sub(1) {
        let (hi_adj, lo_adj) = (w[j], w[j + 1]);
        let (lo, hi) = if hi_adj > lo_adj {
            (lo_adj, hi_adj)
        } else {
            (hi_adj, lo_adj)
        };
        let inside = |v: &&u32| **v > lo && **v < hi;
        let left = w[..j].iter().filter(inside);
        let right = w[j + 2..].iter().filter(inside);
        if hi_adj > lo_adj {
            // descent: need left value < right value
            if let (Some(l), Some(r)) = (left.min(), right.max()) {
                if l < r {
                    return false;
                }
            }
        } else if let (Some(l), Some(r)) = (left.max(), right.min()) {
            // ascent: need right value < left value
            if r < l {
                return false;
            }
        }
    }
    true
}

/// Doubly alternating Baxter: Baxter, alternating, and with alternating inverse.
pub fn is_dab(sigma: &Permutation) -> bool {
    is_alternating(sigma) && is_alternating(&sigma.inverse()) && is_baxter(sigma)
}

/// All doubly alternating Baxter permutations of length `n`, in lexicographic
/// order.
///
/// Positions are filled left to right. Alternation of the word is enforced
/// per step, and alternation of the inverse is enforced whenever both values
/// of an adjacent pair `(v, v+1)` have been placed. The Baxter condition is
/// checked on complete words only.
pub fn enumerate_dab(n: usize) -> Result<Vec<Permutation>> {
    if n > ORACLE_MAX_N {
        return Err(Error::out_of_range(
            "n",
            n,
            format!("at most {ORACLE_MAX_N} for exhaustive enumeration"),
        ));
    }
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    let mut used = vec![false; n + 2];
    extend_dab(n, &mut word, &mut used, &mut out);
    Ok(out)
}

fn extend_dab(n: usize, word: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Permutation>) {
    let pos = word.len();
    if pos == n {
        let sigma = Permutation(word.clone());
        if is_baxter(&sigma) {
            out.push(sigma);
        }
        return;
    }
    for v in 1..=n {
        if used[v] {
            continue;
        }
        let v32 = v as u32;
        if let Some(&prev) = word.last() {
            // position pos+1 (1-based) is even => ascent into it
            let want_ascent = pos % 2 == 1;
            if want_ascent != (prev < v32) {
                continue;
            }
        }
        // inverse alternation: pos(u) < pos(u+1) for odd u, > for even u.
        // Every already-placed value sits to the left of the new one.
        if v > 1 && used[v - 1] && (v - 1) % 2 == 0 {
            continue;
        }
        if used[v + 1] && v % 2 == 1 {
            continue;
        }
        used[v] = true;
        word.push(v32);
        extend_dab(n, word, used, out);
        word.pop();
        used[v] = false;
    }
}

/// `M[i][j] = #{sigma in B_n : sigma(i) = j}` over the enumerated set.
pub fn brute_count_matrix(n: usize) -> Result<CountMatrix> {
    let perms = enumerate_dab(n)?;
    let mut counts = vec![0u64; n * n];
    for sigma in &perms {
        for (pos, &v) in sigma.word().iter().enumerate() {
            counts[pos * n + v as usize - 1] += 1;
        }
    }
    CountMatrix::exact(n, counts.into_iter().map(BigUint::from).collect())
}

/// Test-only `O(n^3)` transcription of the Baxter definition.
#[cfg(test)]
pub fn is_baxter_naive(sigma: &Permutation) -> bool {
    let w = &sigma.0;
    let n = w.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c, d) = (w[i], w[j], w[j + 1], w[k]);
                if (c < a && a < d && d < b) || (b < d && d < a && a < c) {
                    return false;
                }
            }
        }
    }
    true
}
