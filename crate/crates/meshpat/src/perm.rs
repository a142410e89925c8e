//! Permutations, quadrant specs, and the marked-mesh-pattern matcher.
//!
//! A permutation of length `n` splits the plane around each point
//! `(i, s_i)` of its graph into four quadrants, numbered counterclockwise
//! from the upper right:
//!
//! * I: positions after `i` holding larger values,
//! * II: positions before `i` holding larger values,
//! * III: positions before `i` holding smaller values,
//! * IV: positions after `i` holding smaller values.
//!
//! A [`QuadSpec`] puts a [`Bound`] on each quadrant count; a position
//! matches when all four bounds hold, and the pattern statistic of a
//! permutation is its number of matching positions. A separate matcher,
//! [`Permutation::matches_kmax`], handles the variant where quadrant I is
//! only inspected up to the position of the maximum of the suffix.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

/// A constraint on one quadrant count.
///
/// `Empty` is stored distinctly so it can round-trip through parsing and
/// display, but it is semantically identical to `Exactly(0)`: the two
/// compare equal, hash alike, and are interchangeable to the matcher.
#[derive(Debug, Clone, Copy)]
pub enum Bound {
    AtLeast(u32),
    Exactly(u32),
    Empty,
}

impl Bound {
    fn key(self) -> (u8, u32) {
        match self {
            Bound::AtLeast(m) => (0, m),
            Bound::Exactly(m) => (1, m),
            Bound::Empty => (1, 0),
        }
    }

    /// Does a quadrant holding `count` points satisfy this bound?
    pub fn satisfied(self, count: usize) -> bool {
        match self {
            Bound::AtLeast(m) => count >= m as usize,
            Bound::Exactly(m) => count == m as usize,
            Bound::Empty => count == 0,
        }
    }

    /// True for `AtLeast(0)`, which constrains nothing.
    pub fn is_vacuous(self) -> bool {
        matches!(self, Bound::AtLeast(0))
    }
}

impl PartialEq for Bound {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Bound {}

impl Hash for Bound {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Bound {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl FromStr for Bound {
    type Err = Error;

    /// Accepts `empty`, `eq:M`, `ge:M`, or a bare integer (shorthand for
    /// `ge:M`).
    fn from_str(s: &str) -> Result<Self> {
        let parse_int = |t: &str| {
            t.parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad bound value {:?}", t)))
        };
        if s == "empty" {
            Ok(Bound::Empty)
        } else if let Some(t) = s.strip_prefix("eq:") {
            Ok(Bound::Exactly(parse_int(t)?))
        } else if let Some(t) = s.strip_prefix("ge:") {
            Ok(Bound::AtLeast(parse_int(t)?))
        } else {
            Ok(Bound::AtLeast(parse_int(s)?))
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::AtLeast(m) => write!(f, "{}", m),
            Bound::Exactly(m) => write!(f, "eq:{}", m),
            Bound::Empty => write!(f, "empty"),
        }
    }
}

/// Bounds on the four quadrants, indexed I, II, III, IV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadSpec {
    pub bounds: [Bound; 4],
}

/// The eight symmetries of the square act on quadrant specs by permuting
/// coordinates. Entry `[t]` of a map gives which old coordinate lands in
/// new coordinate `t`.
const ORBIT_MAPS: [[usize; 4]; 8] = [
    [0, 1, 2, 3],
    [3, 0, 1, 2],
    [2, 1, 0, 3],
    [1, 0, 3, 2],
    [3, 2, 1, 0],
    [0, 3, 2, 1],
    [2, 3, 0, 1],
    [1, 2, 3, 0],
];

impl QuadSpec {
    pub fn new(b1: Bound, b2: Bound, b3: Bound, b4: Bound) -> Self {
        QuadSpec { bounds: [b1, b2, b3, b4] }
    }

    /// Convenience constructor for all-`AtLeast` specs.
    pub fn at_least(a: u32, b: u32, c: u32, d: u32) -> Self {
        QuadSpec {
            bounds: [
                Bound::AtLeast(a),
                Bound::AtLeast(b),
                Bound::AtLeast(c),
                Bound::AtLeast(d),
            ],
        }
    }

    /// All specs with identical pattern distribution, obtained by acting
    /// with the eight square symmetries. Deduplicated, the original spec
    /// first, then in first-encountered order; at most 8 entries.
    pub fn orbit(&self) -> Vec<QuadSpec> {
        let mut out: Vec<QuadSpec> = Vec::with_capacity(8);
        for map in ORBIT_MAPS {
            let spec = QuadSpec {
                bounds: [
                    self.bounds[map[0]],
                    self.bounds[map[1]],
                    self.bounds[map[2]],
                    self.bounds[map[3]],
                ],
            };
            if !out.contains(&spec) {
                out.push(spec);
            }
        }
        out
    }
}

impl FromStr for QuadSpec {
    type Err = Error;

    /// Parses four comma-separated bound tokens, e.g. `1,0,1,0` or
    /// `2,empty,0,eq:1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "spec {:?} must have exactly 4 comma-separated bounds",
                s
            )));
        }
        Ok(QuadSpec {
            bounds: [
                parts[0].parse()?,
                parts[1].parse()?,
                parts[2].parse()?,
                parts[3].parse()?,
            ],
        })
    }
}

impl fmt::Display for QuadSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.bounds[0], self.bounds[1], self.bounds[2], self.bounds[3]
        )
    }
}

/// Elementary statistics of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    /// Pairs `i < j` with `s_i > s_j`.
    pub inversions: u64,
    /// Pairs `i < j` with `s_i < s_j`.
    pub coinversions: u64,
    /// Number of right-to-left maxima.
    pub rl_maxima: usize,
    /// Number of cycles of the permutation as a bijection.
    pub cycles: usize,
}

/// A permutation of `{1, ..., n}` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<u32>,
}

impl Permutation {
    /// Validates that `word` is a rearrangement of `1..=n`.
    pub fn new(word: Vec<u32>) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in &word {
            let ok = (1..=n as u32).contains(&v) && !seen[(v - 1) as usize];
            if !ok {
                return Err(Error::InvalidInput(format!(
                    "word {:?} is not a permutation of 1..={}",
                    word, n
                )));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u32).collect(),
        }
    }

    /// Parses a string of single digits, e.g. `"231"`. Only usable for
    /// `n <= 9`, which covers pattern arguments in block descriptors.
    pub fn from_digits(s: &str) -> Result<Self> {
        let word = s
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .ok_or_else(|| Error::Parse(format!("bad pattern digit {:?} in {:?}", c, s)))
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::new(word)
    }

    /// The pattern of any sequence of distinct integers: entries are
    /// replaced by their ranks, smallest becoming 1.
    pub fn reduce(values: &[i64]) -> Result<Self> {
        let mut sorted: Vec<i64> = values.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput(format!(
                "cannot reduce {:?}: entries are not distinct",
                values
            )));
        }
        let word = values
            .iter()
            .map(|v| (sorted.binary_search(v).unwrap() + 1) as u32)
            .collect();
        Ok(Permutation { word })
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// Value at 1-based position `i`.
    pub fn value_at(&self, i: usize) -> Result<u32> {
        self.check_position(i)?;
        Ok(self.word[i - 1])
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.word.len() {
            return Err(Error::InvalidInput(format!(
                "position {} out of range 1..={}",
                i,
                self.word.len()
            )));
        }
        Ok(())
    }

    /// Quadrant point counts `[I, II, III, IV]` around 1-based position
    /// `i`. The four counts always sum to `n - 1`.
    pub fn quadrant_counts(&self, i: usize) -> Result<[usize; 4]> {
        self.check_position(i)?;
        Ok(counts_at(&self.word, i - 1))
    }

    /// Does position `i` match the spec?
    pub fn matches(&self, i: usize, spec: &QuadSpec) -> Result<bool> {
        let counts = self.quadrant_counts(i)?;
        Ok(spec_matches(spec, &counts))
    }

    /// Number of positions matching the spec.
    pub fn mmp_count(&self, spec: &QuadSpec) -> usize {
        (0..self.word.len())
            .filter(|&i0| spec_matches(spec, &counts_at(&self.word, i0)))
            .count()
    }

    /// Does position `i` match the `k <= max` variant? Position `i`
    /// matches when nothing larger precedes it, something larger follows
    /// it, and at least `k` larger values occur at positions `i+1..=j`,
    /// where `j` is the position of the maximum of the suffix.
    pub fn matches_kmax(&self, i: usize, k: u32) -> Result<bool> {
        self.check_position(i)?;
        Ok(kmax_matches_at(&self.word, i - 1, k))
    }

    /// Number of positions matching the `k <= max` variant.
    pub fn mmp_count_kmax(&self, k: u32) -> usize {
        (0..self.word.len())
            .filter(|&i0| kmax_matches_at(&self.word, i0, k))
            .count()
    }

    pub fn statistics(&self) -> Stats {
        let n = self.word.len();
        let mut inversions = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    inversions += 1;
                }
            }
        }
        let pairs = (n as u64) * (n as u64).wrapping_sub(1) / 2;
        let mut rl_maxima = 0;
        let mut running = 0u32;
        for &v in self.word.iter().rev() {
            if v > running {
                rl_maxima += 1;
                running = v;
            }
        }
        let mut cycles = 0;
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = (self.word[at] - 1) as usize;
            }
        }
        Stats {
            inversions,
            coinversions: pairs - inversions,
            rl_maxima,
            cycles,
        }
    }

    pub fn reverse(&self) -> Permutation {
        let mut word = self.word.clone();
        word.reverse();
        Permutation { word }
    }

    pub fn complement(&self) -> Permutation {
        let n = self.word.len() as u32;
        Permutation {
            word: self.word.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u32; self.word.len()];
        for (i, &v) in self.word.iter().enumerate() {
            word[(v - 1) as usize] = (i + 1) as u32;
        }
        Permutation { word }
    }

    /// Inserts the new maximum `n+1` at 1-based position `i` of the
    /// result, shifting later entries right.
    pub fn insert_top(&self, i: usize) -> Result<Permutation> {
        let n = self.word.len();
        if i == 0 || i > n + 1 {
            return Err(Error::InvalidInput(format!(
                "insertion position {} out of range 1..={}",
                i,
                n + 1
            )));
        }
        let mut word = Vec::with_capacity(n + 1);
        word.extend_from_slice(&self.word[..i - 1]);
        word.push((n + 1) as u32);
        word.extend_from_slice(&self.word[i - 1..]);
        Ok(Permutation { word })
    }

    /// Inserts a new minimum at 1-based position `i`, lifting every
    /// existing value by one.
    pub fn insert_bottom(&self, i: usize) -> Result<Permutation> {
        let n = self.word.len();
        if i == 0 || i > n + 1 {
            return Err(Error::InvalidInput(format!(
                "insertion position {} out of range 1..={}",
                i,
                n + 1
            )));
        }
        let mut word = Vec::with_capacity(n + 1);
        word.extend(self.word[..i - 1].iter().map(|&v| v + 1));
        word.push(1);
        word.extend(self.word[i - 1..].iter().map(|&v| v + 1));
        Ok(Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.word {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

pub(crate) fn spec_matches(spec: &QuadSpec, counts: &[usize; 4]) -> bool {
    spec.bounds
        .iter()
        .zip(counts)
        .all(|(b, &c)| b.satisfied(c))
}

/// Quadrant counts around 0-based position `i0` of a raw word. Only the
/// prefix is scanned; the other three counts follow by inclusion-exclusion.
pub(crate) fn counts_at(word: &[u32], i0: usize) -> [usize; 4] {
    let n = word.len();
    let v = word[i0];
    let before_larger = word[..i0].iter().filter(|&&u| u > v).count();
    let c2 = before_larger;
    let c3 = i0 - before_larger;
    let c1 = (n - v as usize) - before_larger;
    let c4 = n - 1 - c1 - c2 - c3;
    [c1, c2, c3, c4]
}

pub(crate) fn kmax_matches_at(word: &[u32], i0: usize, k: u32) -> bool {
    let n = word.len();
    let v = word[i0];
    if i0 + 1 >= n {
        return false;
    }
    if word[..i0].iter().any(|&u| u > v) {
        return false;
    }
    let mut jmax = i0 + 1;
    for j in i0 + 2..n {
        if word[j] > word[jmax] {
            jmax = j;
        }
    }
    if word[jmax] < v {
        return false;
    }
    let hits = word[i0 + 1..=jmax].iter().filter(|&&u| u > v).count();
    hits >= k as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(word: &[u32]) -> Permutation {
        Permutation::new(word.to_vec()).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![2, 2, 1]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::new(vec![]).is_ok());
    }

    #[test]
    fn reduce_ranks_by_value() {
        assert_eq!(
            Permutation::reduce(&[2, 7, 5, 4]).unwrap(),
            p(&[1, 4, 3, 2])
        );
        assert_eq!(Permutation::reduce(&[9, 7]).unwrap(), p(&[2, 1]));
        assert!(Permutation::reduce(&[3, 3]).is_err());
    }

    #[test]
    fn quadrant_counts_sum_to_n_minus_1() {
        let s = p(&[4, 7, 1, 5, 6, 9, 2, 8, 3]);
        assert_eq!(s.quadrant_counts(3).unwrap(), [6, 2, 0, 0]);
        assert_eq!(s.quadrant_counts(4).unwrap(), [3, 1, 2, 2]);
        for i in 1..=9 {
            let c = s.quadrant_counts(i).unwrap();
            assert_eq!(c.iter().sum::<usize>(), 8);
        }
        assert!(s.quadrant_counts(0).is_err());
        assert!(s.quadrant_counts(10).is_err());
    }

    #[test]
    fn matcher_agrees_with_counts() {
        let s = p(&[4, 7, 1, 5, 6, 9, 2, 8, 3]);
        let spec = QuadSpec::at_least(1, 0, 1, 0);
        assert!(s.matches(4, &spec).unwrap());
        assert!(!s.matches(3, &spec).unwrap());
        // Position 3 holds the minimum, so quadrants III and IV are empty.
        let spec2: QuadSpec = "1,0,empty,eq:0".parse().unwrap();
        assert!(s.matches(3, &spec2).unwrap());
    }

    #[test]
    fn empty_bound_is_exactly_zero() {
        assert_eq!(Bound::Empty, Bound::Exactly(0));
        assert_ne!(Bound::Empty, Bound::AtLeast(0));
        let a: QuadSpec = "1,empty,0,0".parse().unwrap();
        let b: QuadSpec = "1,eq:0,0,0".parse().unwrap();
        assert_eq!(a, b);
        let s = p(&[3, 1, 4, 2, 5]);
        for i in 1..=5 {
            assert_eq!(s.matches(i, &a).unwrap(), s.matches(i, &b).unwrap());
        }
    }

    #[test]
    fn spec_parse_and_display_round_trip() {
        for text in ["1,0,1,0", "2,empty,0,eq:1", "0,0,0,0", "eq:0,3,empty,1"] {
            let spec: QuadSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert_eq!(
            "ge:2,0,0,0".parse::<QuadSpec>().unwrap(),
            QuadSpec::at_least(2, 0, 0, 0)
        );
        assert!("1,0,1".parse::<QuadSpec>().is_err());
        assert!("1,0,1,x".parse::<QuadSpec>().is_err());
        assert!("1,0,1,eq:-2".parse::<QuadSpec>().is_err());
    }

    #[test]
    fn orbit_sizes_and_members() {
        let orbit = QuadSpec::at_least(1, 1, 0, 0).orbit();
        assert_eq!(orbit.len(), 4);
        assert!(orbit.contains(&QuadSpec::at_least(0, 0, 1, 1)));
        assert!(orbit.contains(&QuadSpec::at_least(1, 0, 0, 1)));
        assert!(orbit.contains(&QuadSpec::at_least(0, 1, 1, 0)));

        let orbit = QuadSpec::at_least(1, 0, 1, 0).orbit();
        assert_eq!(orbit.len(), 2);
        assert!(orbit.contains(&QuadSpec::at_least(0, 1, 0, 1)));

        assert_eq!(QuadSpec::at_least(0, 0, 0, 0).orbit().len(), 1);
        assert!(QuadSpec::at_least(1, 2, 3, 4).orbit().len() <= 8);
    }

    #[test]
    fn orbit_respects_empty_equivalence() {
        // With one coordinate empty and the rest vacuous, rotating to a
        // spec that writes eq:0 instead must not create a duplicate.
        let spec: QuadSpec = "empty,0,eq:0,0".parse().unwrap();
        let orbit = spec.orbit();
        assert_eq!(orbit.len(), 2);
    }

    #[test]
    fn kmax_matcher_example() {
        let s = p(&[5, 3, 4, 1, 8, 2, 6, 9, 7]);
        let matched: Vec<usize> = (1..=9)
            .filter(|&i| s.matches_kmax(i, 2).unwrap())
            .collect();
        assert_eq!(matched, vec![1]);
        // With k = 1 the same positions match as for the quad spec
        // "at least one above-right, nothing above-left".
        let spec: QuadSpec = "1,empty,0,0".parse().unwrap();
        for i in 1..=9 {
            assert_eq!(s.matches_kmax(i, 1).unwrap(), s.matches(i, &spec).unwrap());
        }
    }

    #[test]
    fn kmax_last_position_never_matches() {
        let s = p(&[1, 2, 3]);
        assert!(!s.matches_kmax(3, 1).unwrap());
        assert_eq!(s.mmp_count_kmax(1), 2);
        assert_eq!(s.mmp_count_kmax(2), 1);
    }

    #[test]
    fn statistics_small_case() {
        let s = p(&[2, 3, 1]).statistics();
        assert_eq!(s.inversions, 2);
        assert_eq!(s.coinversions, 1);
        assert_eq!(s.rl_maxima, 2);
        assert_eq!(s.cycles, 1);
    }

    #[test]
    fn statistics_longer_case() {
        let s = p(&[4, 7, 1, 5, 6, 9, 2, 8, 3]);
        let st = s.statistics();
        assert_eq!(st.inversions + st.coinversions, 36);
        assert_eq!(st.rl_maxima, 3);
        assert_eq!(st.cycles, 3);
        // Right-to-left maxima are exactly the positions with empty
        // quadrant I.
        let rl_spec: QuadSpec = "eq:0,0,0,0".parse().unwrap();
        assert_eq!(s.mmp_count(&rl_spec), st.rl_maxima);
    }

    #[test]
    fn symmetries() {
        let s = p(&[4, 7, 1, 5, 6, 9, 2, 8, 3]);
        assert_eq!(s.reverse().word(), &[3, 8, 2, 9, 6, 5, 1, 7, 4]);
        assert_eq!(s.complement().word(), &[6, 3, 9, 5, 4, 1, 8, 2, 7]);
        assert_eq!(s.inverse().inverse(), s);
        assert_eq!(s.reverse().reverse(), s);
        assert_eq!(s.complement().complement(), s);
    }

    #[test]
    fn insertions() {
        let s = p(&[2, 3, 1]);
        assert_eq!(s.insert_top(1).unwrap(), p(&[4, 2, 3, 1]));
        assert_eq!(s.insert_top(4).unwrap(), p(&[2, 3, 1, 4]));
        assert_eq!(s.insert_bottom(2).unwrap(), p(&[3, 1, 4, 2]));
        assert!(s.insert_top(5).is_err());
        assert!(s.insert_bottom(0).is_err());
    }

    #[test]
    fn from_digits_and_display() {
        let s = Permutation::from_digits("231").unwrap();
        assert_eq!(s, p(&[2, 3, 1]));
        assert_eq!(s.to_string(), "2 3 1");
        assert!(Permutation::from_digits("201").is_err());
        assert!(Permutation::from_digits("12a").is_err());
    }
}
