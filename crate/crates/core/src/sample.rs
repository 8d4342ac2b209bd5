//! Uniform random generation of doubly alternating Baxter permutations.
//!
//! A member of `B_{2m}` with `sigma(1) = 2k+1` is `2341[1, tau^c, 1, omega]`
//! with `omega` in `B_{2k}` and `tau` in `B_{2(m-k-1)}`, and `k` has law
//! `q_k = C_k C_{m-k-1} / C_m`. The sampler draws `k`, writes the two
//! singletons straight into the output word and pushes the two sub-blocks on
//! an explicit stack, so the depth of the decomposition never touches the
//! machine stack.
//!
//! Randomness comes from ChaCha8 seeded with a 64-bit seed. Batch member `t`
//! uses its own stream seeded with [`child_seed`]`(seed, t)`, which makes
//! batches identical whatever the thread count.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::catalan::CatalanTable;
use crate::error::{Error, Result};
use crate::matrix::CountMatrix;
use crate::perm::{is_dab, Permutation};

/// Above this half-length the first-value law is evaluated from logarithms.
pub const LOG_SPACE_ABOVE: usize = 1000;

/// Largest half-length accepted by the batch helpers.
pub const SAMPLE_MAX_M: usize = 2000;

/// A seeded ChaCha8 stream.
#[derive(Clone, Debug)]
pub struct RngState {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        RngState {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn position(&self) -> u128 {
        self.rng.get_word_pos()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }
}

/// SplitMix64 finalizer.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of batch member `index`: the SplitMix64 output at step `index + 1`
/// of the sequence started at `mix64(seed)`.
pub fn child_seed(seed: u64, index: u64) -> u64 {
    const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;
    mix64(mix64(seed).wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// `q_k = C_k C_{m-k-1} / C_m` for `k = 0..m`.
pub fn first_value_distribution(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::out_of_range("m", m, "m >= 1"));
    }
    let mut weights = vec![0.0; m];
    FirstValueLaw::new(m).weights(m, &mut weights);
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(weights)
}

/// Unnormalized first-value weights for every node size up to `max_m`.
struct FirstValueLaw {
    scaled: std::sync::Arc<Vec<f64>>,
    logs: std::sync::Arc<Vec<f64>>,
}

impl FirstValueLaw {
    fn new(max_m: usize) -> Self {
        let table = CatalanTable::global();
        FirstValueLaw {
            scaled: table.scaled_upto(max_m.min(LOG_SPACE_ABOVE)),
            logs: if max_m > LOG_SPACE_ABOVE {
                table.logs_upto(max_m)
            } else {
                std::sync::Arc::new(Vec::new())
            },
        }
    }

    /// Fills `out[..h]` with weights proportional to `q_k` for a node of
    /// half-length `h`.
    fn weights(&self, h: usize, out: &mut [f64]) {
        if h <= LOG_SPACE_ABOVE {
            let c = &self.scaled;
            let norm = 0.25 / c[h];
            for (k, w) in out[..h].iter_mut().enumerate() {
                *w = c[k] * c[h - k - 1] * norm;
            }
        } else {
            let l = &self.logs;
            for (k, w) in out[..h].iter_mut().enumerate() {
                *w = (l[k] + l[h - k - 1] - l[h]).exp();
            }
        }
    }

    fn draw(&self, h: usize, scratch: &mut Vec<f64>, rng: &mut RngState) -> usize {
        if h == 1 {
            return 0;
        }
        if scratch.len() < h {
            scratch.resize(h, 0.0);
        }
        self.weights(h, scratch);
        let total: f64 = scratch[..h].iter().sum();
        let mut u = rng.uniform() * total;
        for (k, &w) in scratch[..h].iter().enumerate() {
            if u < w {
                return k;
            }
            u -= w;
        }
        // Rounding left `u` past the last bin.
        (0..h).rev().find(|&k| scratch[k] > 0.0).unwrap_or(0)
    }
}

/// A block still to be filled: `h` is its half-length, `pos` its first
/// 0-based position, and values are `base + x` (or `base + 2h + 1 - x` when
/// `flip` is set) for the block's own word `x`.
struct Task {
    h: usize,
    pos: usize,
    base: u32,
    flip: bool,
}

fn fill_even(law: &FirstValueLaw, m: usize, rng: &mut RngState, out: &mut [u32]) {
    let mut scratch = Vec::new();
    let mut stack = vec![Task {
        h: m,
        pos: 0,
        base: 0,
        flip: false,
    }];
    while let Some(Task { h, pos, base, flip }) = stack.pop() {
        if h == 0 {
            continue;
        }
        let k = law.draw(h, &mut scratch, rng);
        let n = 2 * h as u32;
        let put = |x: u32| if flip { base + n + 1 - x } else { base + x };
        let tau = h - k - 1;
        out[pos] = put(2 * k as u32 + 1);
        out[pos + 2 * tau + 1] = put(n);
        let child = |lo: u32, size: usize, complemented: bool| {
            let span = 2 * size as u32;
            if flip {
                (base + n - lo - span, !complemented)
            } else {
                (base + lo, complemented)
            }
        };
        // omega: values 1..=2k after the largest value, pushed first so that
        // tau is drawn first.
        let (ob, of) = child(0, k, false);
        stack.push(Task {
            h: k,
            pos: pos + 2 * tau + 2,
            base: ob,
            flip: of,
        });
        let (tb, tf) = child(2 * k as u32 + 1, tau, true);
        stack.push(Task {
            h: tau,
            pos: pos + 1,
            base: tb,
            flip: tf,
        });
    }
}

/// A uniform member of `B_{2m}`.
pub fn sample_even(m: usize, rng: &mut RngState) -> Permutation {
    let mut word = vec![0u32; 2 * m];
    fill_even(&FirstValueLaw::new(m), m, rng, &mut word);
    Permutation::new(word).expect("sampler produced a permutation")
}

/// A uniform member of `B_{2m+1}`: `12[1, tau^c]` with `tau` uniform in
/// `B_{2m}`.
pub fn sample_odd(m: usize, rng: &mut RngState) -> Permutation {
    let tau = sample_even(m, rng).into_word();
    let n = tau.len() as u32;
    let mut word = Vec::with_capacity(tau.len() + 1);
    word.push(1);
    word.extend(tau.iter().map(|&x| n + 2 - x));
    Permutation::new(word).expect("sampler produced a permutation")
}

/// `count` draws of the sampler for fixed `m` and `seed`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleBatch {
    pub m: usize,
    pub count: usize,
    pub seed: u64,
    pub odd: bool,
    pub permutations: Vec<Permutation>,
}

impl SampleBatch {
    /// Draws member `t` from the stream seeded with `child_seed(seed, t)`,
    /// in parallel.
    pub fn generate(m: usize, count: usize, seed: u64, odd: bool) -> Result<Self> {
        if m > SAMPLE_MAX_M {
            return Err(Error::out_of_range("m", m, format!("m <= {SAMPLE_MAX_M}")));
        }
        let permutations = (0..count as u64)
            .into_par_iter()
            .map(|t| {
                let mut rng = RngState::new(child_seed(seed, t));
                if odd {
                    sample_odd(m, &mut rng)
                } else {
                    sample_even(m, &mut rng)
                }
            })
            .collect();
        Ok(SampleBatch {
            m,
            count,
            seed,
            odd,
            permutations,
        })
    }

    pub fn header(&self) -> String {
        format!(
            "# dab-sample m={} count={} seed={}",
            self.m, self.count, self.seed
        )
    }

    pub fn to_text(&self) -> String {
        let mut s = self.header();
        s.push('\n');
        for p in &self.permutations {
            let _ = writeln!(s, "{p}");
        }
        s
    }

    /// Parses [`SampleBatch::to_text`] output. Parity is read off the line
    /// lengths; every line must be a member of `B_{2m}` or `B_{2m+1}`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let rest = header
            .strip_prefix("# dab-sample ")
            .ok_or_else(|| Error::parse(1, "missing `# dab-sample` header"))?;
        let (mut m, mut count, mut seed) = (None, None, None);
        for field in rest.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(1, format!("bad header field `{field}`")))?;
            let bad = |_| Error::parse(1, format!("bad value in `{field}`"));
            match key {
                "m" => m = Some(value.parse::<usize>().map_err(bad)?),
                "count" => count = Some(value.parse::<usize>().map_err(bad)?),
                "seed" => seed = Some(value.parse::<u64>().map_err(bad)?),
                _ => return Err(Error::parse(1, format!("unknown header field `{key}`"))),
            }
        }
        let missing = |k: &str| Error::parse(1, format!("header lacks `{k}=`"));
        let m = m.ok_or_else(|| missing("m"))?;
        let count = count.ok_or_else(|| missing("count"))?;
        let seed = seed.ok_or_else(|| missing("seed"))?;

        let mut permutations = Vec::with_capacity(count);
        let mut odd = None;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let p: Permutation = line
                .parse()
                .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
            let this_odd = match p.len() {
                n if n == 2 * m => false,
                n if n == 2 * m + 1 => true,
                n => {
                    return Err(Error::parse(
                        lineno,
                        format!("length {n} does not match m={m}"),
                    ))
                }
            };
            if *odd.get_or_insert(this_odd) != this_odd {
                return Err(Error::parse(lineno, "mixed even and odd lengths"));
            }
            if !is_dab(&p) {
                return Err(Error::parse(
                    lineno,
                    "not a doubly alternating Baxter permutation",
                ));
            }
            permutations.push(p);
        }
        if permutations.len() != count {
            return Err(Error::parse(
                text.lines().count(),
                format!("header says count={count}, found {}", permutations.len()),
            ));
        }
        Ok(SampleBatch {
            m,
            count,
            seed,
            odd: odd.unwrap_or(false),
            permutations,
        })
    }
}

/// Float matrix of `#{sigma(i) = j} / count` over a batch of `B_{2m}` draws.
pub fn empirical_matrix(m: usize, count: usize, seed: u64) -> Result<CountMatrix> {
    if m == 0 {
        return Err(Error::out_of_range("m", m, "m >= 1"));
    }
    if count == 0 {
        return Err(Error::out_of_range("count", count, "count >= 1"));
    }
    let batch = SampleBatch::generate(m, count, seed, false)?;
    let n = 2 * m;
    let hits = batch
        .permutations
        .par_iter()
        .fold(
            || vec![0u64; n * n],
            |mut acc, p| {
                for (i, &v) in p.word().iter().enumerate() {
                    acc[i * n + v as usize - 1] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n * n],
            |mut a, b| {
                a.iter_mut().zip(&b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let mut entries: Vec<f64> = hits.iter().map(|&h| h as f64 / count as f64).collect();
    for row in entries.chunks_mut(n) {
        settle_row(row);
    }
    CountMatrix::float(n, entries)
}

/// Moves the rounding residue of a row of frequencies onto its largest
/// entries, an ulp at a time, until the row sums to exactly 1 in
/// left-to-right order.
fn settle_row(row: &mut [f64]) {
    let mut order: Vec<usize> = (0..row.len()).filter(|&j| row[j] > 0.0).collect();
    order.sort_by(|&a, &b| row[b].total_cmp(&row[a]));
    for &j in &order {
        let sum: f64 = row.iter().sum();
        row[j] += 1.0 - sum;
        for _ in 0..16 {
            let sum: f64 = row.iter().sum();
            if sum == 1.0 {
                return;
            }
            row[j] = if sum < 1.0 {
                row[j].next_up()
            } else {
                row[j].next_down()
            };
        }
    }
}

/// Pearson chi-square goodness of fit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Tests `observed` counts against the cell probabilities `expected`.
pub fn chi_square_test(observed: &[u64], expected: &[f64]) -> Result<ChiSquare> {
    if observed.len() != expected.len() || observed.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need matching count and probability lists of length >= 2, got {} and {}",
            observed.len(),
            expected.len()
        )));
    }
    let total: u64 = observed.iter().sum();
    let norm: f64 = expected.iter().sum();
    let mut statistic = 0.0;
    for (&o, &p) in observed.iter().zip(expected) {
        let e = total as f64 * p / norm;
        if e <= 0.0 {
            return Err(Error::InvalidArgument("expected cell count is zero".into()));
        }
        statistic += (o as f64 - e).powi(2) / e;
    }
    let dof = observed.len() - 1;
    let dist = ChiSquared::new(dof as f64).expect("positive degrees of freedom");
    Ok(ChiSquare {
        statistic,
        dof,
        p_value: dist.sf(statistic),
    })
}

/// Draws `count` members of `B_{2m}` and tests them against the uniform law
/// on `enumerate_dab(2m)`.
pub fn uniformity_test(m: usize, count: usize, seed: u64) -> Result<ChiSquare> {
    let support = crate::perm::enumerate_dab(2 * m)?;
    let batch = SampleBatch::generate(m, count, seed, false)?;
    let mut observed = vec![0u64; support.len()];
    for p in &batch.permutations {
        let idx = support.binary_search(p).map_err(|_| {
            Error::InvalidArgument(format!("sampler produced {p}, which is not in B_{}", 2 * m))
        })?;
        observed[idx] += 1;
    }
    chi_square_test(&observed, &vec![1.0; support.len()])
}
