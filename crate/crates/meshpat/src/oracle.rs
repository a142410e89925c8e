//! Brute-force reference engine.
//!
//! Everything here works by walking a permutation class exhaustively and
//! tallying the pattern statistic, so results are ground truth against
//! which the recursions, closed forms, and multivariate engines are
//! checked. Runtime is factorial in `n`; enumeration is capped (10 for
//! the full symmetric group, 11 for restricted classes, hard ceiling 12)
//! and raises `Error::ResourceLimit` beyond the cap.
//!
//! Enumeration is partitioned by lexicographic rank ranges and run on
//! scoped threads. Partial tallies are combined in partition order, so
//! results are identical for every thread count.

use crate::error::{Error, Result};
use crate::perm::{counts_at, kmax_matches_at, spec_matches, Permutation, QuadSpec};
use crate::poly::{BiPoly, IntPoly};
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// Hard ceiling on enumeration length; 12! permutations is the largest
/// job the oracle will accept no matter how the caps are raised.
pub const HARD_CAP: usize = 12;

const DEFAULT_CAP_ALL: usize = 10;
const DEFAULT_CAP_RESTRICTED: usize = 11;

/// A consecutive block of extreme values: the `top` pattern is taken on
/// the largest values of the permutation, immediately followed by the
/// `bottom` pattern on the smallest values. A class member contains the
/// resulting word as a factor (consecutive positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPattern {
    top: Permutation,
    bottom: Permutation,
}

impl BlockPattern {
    pub fn new(top: Permutation, bottom: Permutation) -> Result<Self> {
        if top.is_empty() || bottom.is_empty() {
            return Err(Error::InvalidInput(
                "block needs nonempty top and bottom patterns".into(),
            ));
        }
        if top.len() > 9 || bottom.len() > 9 {
            return Err(Error::InvalidInput(
                "block patterns longer than 9 are not supported".into(),
            ));
        }
        Ok(BlockPattern { top, bottom })
    }

    /// The descending block `n (n-1) ... (n-k+1) l (l-1) ... 1`.
    pub fn gamma(k: usize, l: usize) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidInput("gamma block needs k, l >= 1".into()));
        }
        let desc = |m: usize| Permutation::new((1..=m as u32).rev().collect()).unwrap();
        BlockPattern::new(desc(k), desc(l))
    }

    pub fn top(&self) -> &Permutation {
        &self.top
    }

    pub fn bottom(&self) -> &Permutation {
        &self.bottom
    }

    pub fn len(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The concrete block word inside S_n: top values are the largest
    /// `k`, bottom values the smallest `l`. Errors when the block does
    /// not fit.
    fn word_in(&self, n: usize) -> Result<Vec<u32>> {
        if n < self.len() {
            return Err(Error::InvalidInput(format!(
                "block of length {} does not fit in S_{}",
                self.len(),
                n
            )));
        }
        let k = self.top.len();
        let mut word = Vec::with_capacity(self.len());
        word.extend(self.top.word().iter().map(|&v| (n - k) as u32 + v));
        word.extend_from_slice(self.bottom.word());
        Ok(word)
    }

    fn digits(p: &Permutation) -> String {
        p.word().iter().map(|v| v.to_string()).collect()
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "beta:{},alpha:{}",
            Self::digits(&self.top),
            Self::digits(&self.bottom)
        )
    }
}

/// The permutation class to sum over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermClass {
    /// All of S_n.
    All,
    /// Permutations in which 1 occurs strictly left of n (empty for
    /// `n <= 1`).
    OneBeforeN,
    /// Permutations containing a fixed block of extreme values as a
    /// factor.
    Block(BlockPattern),
}

impl PermClass {
    fn is_restricted(&self) -> bool {
        !matches!(self, PermClass::All)
    }
}

impl FromStr for PermClass {
    type Err = Error;

    /// Accepts `all`, `one-before-n`, `block:gamma:K,L`, and
    /// `block:beta:DIGITS,alpha:DIGITS`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => return Ok(PermClass::All),
            "one-before-n" => return Ok(PermClass::OneBeforeN),
            _ => {}
        }
        let body = s
            .strip_prefix("block:")
            .ok_or_else(|| Error::Parse(format!("unknown class {:?}", s)))?;
        if let Some(rest) = body.strip_prefix("gamma:") {
            let (k, l) = rest
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("gamma block needs K,L in {:?}", s)))?;
            let k = k
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad gamma size in {:?}", s)))?;
            let l = l
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad gamma size in {:?}", s)))?;
            return Ok(PermClass::Block(BlockPattern::gamma(k, l)?));
        }
        if let Some(rest) = body.strip_prefix("beta:") {
            let (beta, alpha) = rest
                .split_once(",alpha:")
                .ok_or_else(|| Error::Parse(format!("block descriptor {:?} needs alpha part", s)))?;
            let top = Permutation::from_digits(beta.trim())?;
            let bottom = Permutation::from_digits(alpha.trim())?;
            return Ok(PermClass::Block(BlockPattern::new(top, bottom)?));
        }
        Err(Error::Parse(format!("unknown block descriptor {:?}", s)))
    }
}

impl fmt::Display for PermClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermClass::All => write!(f, "all"),
            PermClass::OneBeforeN => write!(f, "one-before-n"),
            PermClass::Block(b) => write!(f, "block:{}", b),
        }
    }
}

/// What to count at each position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Quad(QuadSpec),
    /// The `k <= max` variant; the payload is `k >= 1`.
    KMax(u32),
}

impl Pattern {
    /// Number of matching positions in a raw word.
    pub fn count(&self, word: &[u32]) -> usize {
        match self {
            Pattern::Quad(spec) => (0..word.len())
                .filter(|&i0| spec_matches(spec, &counts_at(word, i0)))
                .count(),
            Pattern::KMax(k) => (0..word.len())
                .filter(|&i0| kmax_matches_at(word, i0, *k))
                .count(),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Quad(spec) => write!(f, "{}", spec),
            Pattern::KMax(k) => write!(f, "kmax:{}", k),
        }
    }
}

/// Exhaustive enumerator with configurable caps and thread count.
#[derive(Debug, Clone)]
pub struct Oracle {
    cap_all: usize,
    cap_restricted: usize,
    threads: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        let threads = std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)
            .min(8);
        Oracle {
            cap_all: DEFAULT_CAP_ALL,
            cap_restricted: DEFAULT_CAP_RESTRICTED,
            threads,
        }
    }
}

impl Oracle {
    pub fn new() -> Self {
        Oracle::default()
    }

    /// Sets the enumeration cap: `cap` for the full symmetric group and
    /// `cap + 1` for restricted classes, both clamped to [`HARD_CAP`].
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap_all = cap.min(HARD_CAP);
        self.cap_restricted = (cap + 1).min(HARD_CAP);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    fn check_cap(&self, n: usize, class: &PermClass) -> Result<()> {
        let cap = if class.is_restricted() {
            self.cap_restricted
        } else {
            self.cap_all
        };
        if n > cap {
            return Err(Error::ResourceLimit(format!(
                "n = {} exceeds enumeration cap {} for class {}",
                n, cap, class
            )));
        }
        Ok(())
    }

    /// Distribution of the pattern statistic over a class: coefficient
    /// `k` of the result counts class members with exactly `k` matching
    /// positions. The empty class gives the zero polynomial.
    pub fn distribution(&self, n: usize, pattern: &Pattern, class: &PermClass) -> Result<IntPoly> {
        self.check_cap(n, class)?;
        let counts = self.tally(n, class, n + 1, |word, acc| acc[pattern.count(word)] += 1)?;
        Ok(counts_to_poly(&counts))
    }

    /// Joint distributions of many specs over all of S_n in a single
    /// enumeration pass.
    pub fn distributions_for_specs(&self, n: usize, specs: &[QuadSpec]) -> Result<Vec<IntPoly>> {
        self.check_cap(n, &PermClass::All)?;
        let width = n + 1;
        let slots = specs.len() * width;
        let counts = self.tally(n, &PermClass::All, slots, |word, acc| {
            // One pass over positions, then every spec reuses the counts.
            let mut tallies = vec![0usize; specs.len()];
            for i0 in 0..word.len() {
                let c = counts_at(word, i0);
                for (s, spec) in specs.iter().enumerate() {
                    if spec_matches(spec, &c) {
                        tallies[s] += 1;
                    }
                }
            }
            for (s, &t) in tallies.iter().enumerate() {
                acc[s * width + t] += 1;
            }
        })?;
        Ok(counts
            .chunks(width)
            .map(counts_to_poly)
            .collect())
    }

    /// Bivariate distribution over S_n: coefficient of `x^a q^b` counts
    /// permutations with `a` matching positions and `b` coinversions.
    pub fn q_distribution(&self, n: usize, spec: &QuadSpec) -> Result<BiPoly> {
        self.check_cap(n, &PermClass::All)?;
        let width = n * n.saturating_sub(1) / 2 + 1;
        let slots = (n + 1) * width;
        let pattern = Pattern::Quad(*spec);
        let counts = self.tally(n, &PermClass::All, slots, |word, acc| {
            let mut coinv = 0usize;
            for i in 0..word.len() {
                for j in i + 1..word.len() {
                    if word[i] < word[j] {
                        coinv += 1;
                    }
                }
            }
            acc[pattern.count(word) * width + coinv] += 1;
        })?;
        let rows = counts
            .chunks(width)
            .map(|row| row.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        Ok(BiPoly::from_rows(rows))
    }

    /// Distribution of the `k <= max` statistic over all of S_n.
    pub fn kmax_distribution(&self, n: usize, k: u32) -> Result<IntPoly> {
        self.distribution(n, &Pattern::KMax(k), &PermClass::All)
    }

    /// Number of members of the class, by formula rather than
    /// enumeration.
    pub fn class_size(&self, n: usize, class: &PermClass) -> Result<BigInt> {
        match class {
            PermClass::All => Ok(factorial_big(n)),
            PermClass::OneBeforeN => {
                if n < 2 {
                    Ok(BigInt::ZERO)
                } else {
                    Ok(factorial_big(n) / 2)
                }
            }
            PermClass::Block(b) => {
                if n < b.len() {
                    return Err(Error::InvalidInput(format!(
                        "block of length {} does not fit in S_{}",
                        b.len(),
                        n
                    )));
                }
                let placements = BigInt::from(n - b.len() + 1);
                Ok(placements * factorial_big(n - b.len()))
            }
        }
    }

    /// Runs the class enumeration, each worker tallying into a `u64` slot
    /// vector of length `slots`; partial tallies are summed in partition
    /// order. `u64` is safe: a slot can hold at most 12!.
    fn tally(
        &self,
        n: usize,
        class: &PermClass,
        slots: usize,
        visit: impl Fn(&[u32], &mut [u64]) + Sync,
    ) -> Result<Vec<u64>> {
        let mut total = vec![0u64; slots];
        match class {
            PermClass::All => {
                let values: Vec<u32> = (1..=n as u32).collect();
                for part in parallel_arrangements(&values, self.threads, slots, &visit) {
                    merge(&mut total, &part);
                }
            }
            PermClass::OneBeforeN => {
                if n < 2 {
                    return Ok(total);
                }
                let values: Vec<u32> = (1..=n as u32).collect();
                let filtered = |word: &[u32], acc: &mut [u64]| {
                    let pos1 = word.iter().position(|&v| v == 1).unwrap();
                    let posn = word.iter().position(|&v| v == n as u32).unwrap();
                    if pos1 < posn {
                        visit(word, acc);
                    }
                };
                for part in parallel_arrangements(&values, self.threads, slots, &filtered) {
                    merge(&mut total, &part);
                }
            }
            PermClass::Block(b) => {
                let block = b.word_in(n)?;
                let free: Vec<u32> = (b.bottom.len() as u32 + 1..=(n - b.top.len()) as u32).collect();
                // Placements are walked serially; each placement's
                // arrangement enumeration is partitioned as usual.
                for start in 0..=n - block.len() {
                    let fill = |arrangement: &[u32], acc: &mut [u64]| {
                        // Workers share this closure, so the word buffer
                        // is rebuilt locally rather than borrowed mutably.
                        let mut w = vec![0u32; n];
                        w[start..start + block.len()].copy_from_slice(&block);
                        let mut it = arrangement.iter();
                        for (i, slot) in w.iter_mut().enumerate() {
                            if !(start..start + block.len()).contains(&i) {
                                *slot = *it.next().unwrap();
                            }
                        }
                        visit(&w, acc);
                    };
                    for part in parallel_arrangements(&free, self.threads, slots, &fill) {
                        merge(&mut total, &part);
                    }
                }
            }
        }
        Ok(total)
    }
}

fn merge(total: &mut [u64], part: &[u64]) {
    for (t, p) in total.iter_mut().zip(part) {
        *t += p;
    }
}

fn counts_to_poly(counts: &[u64]) -> IntPoly {
    IntPoly::from_coeffs(counts.iter().map(|&c| BigInt::from(c)).collect())
}

/// Visits every arrangement of `values` (given in ascending order) in
/// lexicographic order, split into contiguous rank ranges across scoped
/// threads. Returns one accumulator per partition, in partition order.
fn parallel_arrangements(
    values: &[u32],
    threads: usize,
    slots: usize,
    visit: &(impl Fn(&[u32], &mut [u64]) + Sync),
) -> Vec<Vec<u64>> {
    let total = factorial_u64(values.len());
    let parts = threads.max(1).min(total as usize);
    let chunk = total.div_ceil(parts as u64);
    std::thread::scope(|scope| {
        let mut handles = Vec::with_capacity(parts);
        for p in 0..parts as u64 {
            let start = p * chunk;
            let count = chunk.min(total - start);
            handles.push(scope.spawn(move || {
                let mut acc = vec![0u64; slots];
                let mut word = unrank(values, start);
                for _ in 0..count {
                    visit(&word, &mut acc);
                    if !next_arrangement(&mut word) {
                        break;
                    }
                }
                acc
            }));
        }
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    })
}

/// The arrangement of `values` with lexicographic rank `r`, computed via
/// factorial-base digits of `r`.
fn unrank(values: &[u32], mut r: u64) -> Vec<u32> {
    let n = values.len();
    let mut pool = values.to_vec();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial_u64(i);
        let d = (r / f) as usize;
        r %= f;
        out.push(pool.remove(d));
    }
    out
}

/// Standard in-place successor in lexicographic order; false at the last
/// arrangement.
fn next_arrangement(word: &mut [u32]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn factorial_big(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Serial walk over all of S_n in lexicographic order, without cap
/// checks. Intended for small `n` in tests and cross-checks.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u32])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut word: Vec<u32> = (1..=n as u32).collect();
    loop {
        f(&word);
        if !next_arrangement(&mut word) {
            break;
        }
    }
}
