//! Multivariate refinements tracking which positions carry which mark.
//!
//! For a family of related quadrant specs, each position of a
//! permutation carries at most one tag, and a permutation contributes
//! the product of one indexed variable per tagged position. The
//! resulting polynomials refine the scalar distributions: substituting
//! `x` for every variable of the first family and `1` for the rest
//! recovers the corresponding distribution polynomial.
//!
//! Monomials are stored as one bitmask per family, bit `p - lo` standing
//! for the variable indexed by position `p`. Every engine grows by
//! inserting a new maximum into each slot of a size-`n` permutation:
//! insertion in front of a tracked position shifts its index up by one,
//! and the new point lands in quadrant I of everything to its left and
//! quadrant II of everything to its right, which promotes tags between
//! families. Each engine is also rebuilt directly from S_n by brute
//! force, giving an independent cross-check of the insertion algebra.

use crate::oracle::for_each_permutation;
use crate::perm::counts_at;
use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

pub const MAX_FAMILIES: usize = 4;

/// One bitmask per family; bit `b` of `key[f]` means the variable of
/// family `f` indexed by position `lo + b` divides the monomial.
pub type MonomialKey = [u32; MAX_FAMILIES];

const FAMILY_NAMES: [&str; MAX_FAMILIES] = ["x", "y", "z", "w"];

/// What to substitute for a family when collapsing to one variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assign {
    X,
    One,
}

/// A polynomial in position-indexed variables from up to four families.
///
/// `n` is the permutation size the polynomial refines, and positions
/// `lo..=hi` are the ones that can carry tags (`hi < lo` means none
/// can). Two polynomials compare equal only when all of this agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n: usize,
    lo: usize,
    hi: usize,
    families: usize,
    terms: BTreeMap<MonomialKey, BigInt>,
}

impl MultiPoly {
    fn constant_for(n: usize, lo: usize, hi: usize, families: usize, value: i64) -> Self {
        let mut terms = BTreeMap::new();
        if value != 0 {
            terms.insert([0u32; MAX_FAMILIES], BigInt::from(value));
        }
        MultiPoly { n, lo, hi, families, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn range(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn families(&self) -> usize {
        self.families
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Upper bound on the number of monomials: each tracked position is
    /// untagged or tagged by one of the families.
    pub fn term_bound(&self) -> BigInt {
        if self.hi < self.lo {
            return BigInt::from(1);
        }
        BigInt::from((self.families + 1) as u64).pow((self.hi - self.lo + 1) as u32)
    }

    pub fn coefficient(&self, key: &MonomialKey) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MonomialKey, &BigInt)> {
        self.terms.iter()
    }

    fn insert_add(&mut self, key: MonomialKey, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Collapses each family to `x` or `1`; the exponent of `x` in a
    /// term is the number of tagged positions in `X`-assigned families.
    pub fn specialize(&self, assign: &[Assign]) -> IntPoly {
        assert_eq!(assign.len(), self.families, "one assignment per family");
        let mut out = IntPoly::zero();
        for (key, coeff) in &self.terms {
            let degree: u32 = (0..self.families)
                .filter(|&f| assign[f] == Assign::X)
                .map(|f| key[f].count_ones())
                .sum();
            out = out.add(&IntPoly::monomial(coeff.clone(), degree as usize));
        }
        out
    }

    /// The standard collapse: `x` for the first family, `1` elsewhere.
    pub fn specialize_to_x(&self) -> IntPoly {
        let mut assign = vec![Assign::One; self.families];
        assign[0] = Assign::X;
        self.specialize(&assign)
    }

    /// Sum of all coefficients, i.e. every variable set to 1.
    pub fn mass(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let has_vars = key.iter().any(|&m| m != 0);
            if !has_vars || coeff != &BigInt::from(1) {
                write!(f, "{}", coeff)?;
                if has_vars {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for fam in 0..self.families {
                let mut mask = key[fam];
                while mask != 0 {
                    let bit = mask.trailing_zeros();
                    mask &= mask - 1;
                    if !first_var {
                        write!(f, "*")?;
                    }
                    first_var = false;
                    write!(f, "{}_{}", FAMILY_NAMES[fam], self.lo + bit as usize)?;
                }
            }
        }
        Ok(())
    }
}

/// Index shift with family promotion for insertion in front of every
/// tracked position.
fn shifted(key: &MonomialKey, families: usize, map: [usize; MAX_FAMILIES]) -> MonomialKey {
    let mut out = [0u32; MAX_FAMILIES];
    for f in 0..families {
        out[map[f]] |= key[f] << 1;
    }
    out
}

/// Family promotion without index shift, for insertion after every
/// tracked position.
fn promoted(key: &MonomialKey, families: usize, map: [usize; MAX_FAMILIES]) -> MonomialKey {
    let mut out = [0u32; MAX_FAMILIES];
    for f in 0..families {
        out[map[f]] |= key[f];
    }
    out
}

/// Insertion at interior bit `s`: positions below keep their index and
/// promote through `low`, positions at or above shift up and promote
/// through `high`.
fn spliced(
    key: &MonomialKey,
    families: usize,
    low: [usize; MAX_FAMILIES],
    high: [usize; MAX_FAMILIES],
    s: u32,
) -> MonomialKey {
    let low_mask = (1u32 << s) - 1;
    let mut out = [0u32; MAX_FAMILIES];
    for f in 0..families {
        out[low[f]] |= key[f] & low_mask;
        out[high[f]] |= (key[f] & !low_mask) << 1;
    }
    out
}

const ID: [usize; MAX_FAMILIES] = [0, 1, 2, 3];

/// Two families over positions `2..=n`: `x` marks positions with points
/// above-right and below-left, `y` those with below-left only.
pub fn f1010_step(prev: &MultiPoly) -> MultiPoly {
    let n = prev.n;
    assert_eq!((prev.lo, prev.hi, prev.families), (2, n, 2));
    let mut next = MultiPoly::constant_for(n + 1, 2, n + 1, 2, 0);
    // y -> x below the insertion point (it gains a larger point after).
    let gain_above_right: [usize; MAX_FAMILIES] = [0, 0, 2, 3];
    for (key, coeff) in &prev.terms {
        next.insert_add(shifted(key, 2, ID), coeff);
        for slot in 2..=n + 1 {
            let s = (slot - 2) as u32;
            let mut k = spliced(key, 2, gain_above_right, ID, s);
            k[1] |= 1 << s;
            next.insert_add(k, coeff);
        }
    }
    next
}

/// Builds all sizes up to `max_n`, index = size.
pub fn f1010(max_n: usize) -> Vec<MultiPoly> {
    grow(max_n, MultiPoly::constant_for(0, 2, 0, 2, 1), f1010_step)
}

/// Generalization of [`f1010_step`] requiring `a` points below-left;
/// tags live at positions `a+1..=n`, and the `a` leftmost insertion
/// slots contribute plain shifts because the new point cannot be marked
/// there and has nothing marked to its left.
pub fn f10a0_step(prev: &MultiPoly, a: usize) -> MultiPoly {
    assert!(a >= 1);
    let n = prev.n;
    assert_eq!((prev.lo, prev.hi, prev.families), (a + 1, n, 2));
    let mut next = MultiPoly::constant_for(n + 1, a + 1, n + 1, 2, 0);
    let gain_above_right: [usize; MAX_FAMILIES] = [0, 0, 2, 3];
    let front_slots = BigInt::from(a.min(n + 1) as u64);
    for (key, coeff) in &prev.terms {
        next.insert_add(shifted(key, 2, ID), &(coeff * &front_slots));
        for slot in a + 1..=n + 1 {
            let s = (slot - a - 1) as u32;
            let mut k = spliced(key, 2, gain_above_right, ID, s);
            k[1] |= 1 << s;
            next.insert_add(k, coeff);
        }
    }
    next
}

pub fn f10a0(a: usize, max_n: usize) -> Vec<MultiPoly> {
    grow(max_n, MultiPoly::constant_for(0, a + 1, 0, 2, 1), |prev| {
        f10a0_step(prev, a)
    })
}

/// Three families over positions `3..=n` for the two-below-left family:
/// `x` at least two above-right, `y` exactly one, `z` none.
pub fn g2020_step(prev: &MultiPoly) -> MultiPoly {
    let n = prev.n;
    assert_eq!((prev.lo, prev.hi, prev.families), (3, n, 3));
    let mut next = MultiPoly::constant_for(n + 1, 3, n + 1, 3, 0);
    // One more point above-right: z -> y -> x.
    let gain_above_right: [usize; MAX_FAMILIES] = [0, 0, 1, 3];
    let front_slots = BigInt::from(2.min(n + 1) as u64);
    for (key, coeff) in &prev.terms {
        next.insert_add(shifted(key, 3, ID), &(coeff * &front_slots));
        for slot in 3..=n + 1 {
            let s = (slot - 3) as u32;
            let mut k = spliced(key, 3, gain_above_right, ID, s);
            k[2] |= 1 << s;
            next.insert_add(k, coeff);
        }
    }
    next
}

pub fn g2020(max_n: usize) -> Vec<MultiPoly> {
    grow(max_n, MultiPoly::constant_for(0, 3, 0, 3, 1), g2020_step)
}

/// Two families over positions `2..=n-1` for the corner family needing
/// below-left and below-right points: `x` with something above-right,
/// `y` without. The last slot is special: inserting the maximum at the
/// end promotes `y` to `x` everywhere without shifting any index.
pub fn f1011_step(prev: &MultiPoly) -> MultiPoly {
    let n = prev.n;
    assert_eq!((prev.lo, prev.hi, prev.families), (2, n.saturating_sub(1), 2));
    if n == 0 {
        return MultiPoly::constant_for(1, 2, 0, 2, 1);
    }
    let mut next = MultiPoly::constant_for(n + 1, 2, n, 2, 0);
    let gain_above_right: [usize; MAX_FAMILIES] = [0, 0, 2, 3];
    for (key, coeff) in &prev.terms {
        next.insert_add(shifted(key, 2, ID), coeff);
        next.insert_add(promoted(key, 2, gain_above_right), coeff);
        for slot in 2..=n {
            let s = (slot - 2) as u32;
            let mut k = spliced(key, 2, gain_above_right, ID, s);
            k[1] |= 1 << s;
            next.insert_add(k, coeff);
        }
    }
    next
}

pub fn f1011(max_n: usize) -> Vec<MultiPoly> {
    grow(max_n, MultiPoly::constant_for(0, 2, 0, 2, 1), f1011_step)
}

/// Four families over positions `2..=n-1` for the all-four-quadrants
/// family: `x` both upper quadrants occupied, `y` above-left only, `z`
/// above-right only, `w` neither.
pub fn h1111_step(prev: &MultiPoly) -> MultiPoly {
    let n = prev.n;
    assert_eq!((prev.lo, prev.hi, prev.families), (2, n.saturating_sub(1), 4));
    if n == 0 {
        return MultiPoly::constant_for(1, 2, 0, 4, 1);
    }
    let mut next = MultiPoly::constant_for(n + 1, 2, n, 4, 0);
    // New maximum after a position fills quadrant I; before it fills
    // quadrant II.
    let gain_above_right: [usize; MAX_FAMILIES] = [0, 0, 2, 2];
    let gain_above_left: [usize; MAX_FAMILIES] = [0, 1, 0, 1];
    for (key, coeff) in &prev.terms {
        next.insert_add(shifted(key, 4, gain_above_left), coeff);
        next.insert_add(promoted(key, 4, gain_above_right), coeff);
        for slot in 2..=n {
            let s = (slot - 2) as u32;
            let mut k = spliced(key, 4, gain_above_right, gain_above_left, s);
            k[3] |= 1 << s;
            next.insert_add(k, coeff);
        }
    }
    next
}

pub fn h1111(max_n: usize) -> Vec<MultiPoly> {
    grow(max_n, MultiPoly::constant_for(0, 2, 0, 4, 1), h1111_step)
}

/// Common driver: the size-0 polynomial is the constant 1, and every
/// later size is built by iterating the step.
fn grow(max_n: usize, zero: MultiPoly, step: impl Fn(&MultiPoly) -> MultiPoly) -> Vec<MultiPoly> {
    let mut out: Vec<MultiPoly> = Vec::with_capacity(max_n + 1);
    out.push(zero);
    while out.len() <= max_n {
        out.push(step(out.last().unwrap()));
    }
    out
}

/// Brute-force rebuild of an engine polynomial straight from S_n. The
/// tagger returns the family of a position or `None`; tags outside
/// `lo..=hi` are a bug in the range bookkeeping and panic.
fn direct_from_sn(
    n: usize,
    lo: usize,
    hi: usize,
    families: usize,
    tag: impl Fn(&[u32], usize) -> Option<usize>,
) -> MultiPoly {
    let mut out = MultiPoly::constant_for(n, lo, hi, families, 0);
    let one = BigInt::from(1);
    for_each_permutation(n, |word| {
        let mut key = [0u32; MAX_FAMILIES];
        for i0 in 0..n {
            if let Some(f) = tag(word, i0) {
                let pos = i0 + 1;
                assert!(
                    (lo..=hi).contains(&pos),
                    "tag at position {} outside {}..={}",
                    pos,
                    lo,
                    hi
                );
                key[f] |= 1 << (pos - lo);
            }
        }
        out.insert_add(key, &one);
    });
    out
}

pub fn f1010_direct(n: usize) -> MultiPoly {
    direct_from_sn(n, 2, n, 2, |word, i0| {
        let c = counts_at(word, i0);
        if c[2] >= 1 {
            Some(if c[0] >= 1 { 0 } else { 1 })
        } else {
            None
        }
    })
}

pub fn f10a0_direct(a: usize, n: usize) -> MultiPoly {
    direct_from_sn(n, a + 1, n, 2, move |word, i0| {
        let c = counts_at(word, i0);
        if c[2] >= a {
            Some(if c[0] >= 1 { 0 } else { 1 })
        } else {
            None
        }
    })
}

pub fn g2020_direct(n: usize) -> MultiPoly {
    direct_from_sn(n, 3, n, 3, |word, i0| {
        let c = counts_at(word, i0);
        if c[2] >= 2 {
            Some(match c[0] {
                0 => 2,
                1 => 1,
                _ => 0,
            })
        } else {
            None
        }
    })
}

pub fn f1011_direct(n: usize) -> MultiPoly {
    direct_from_sn(n, 2, n.saturating_sub(1), 2, |word, i0| {
        let c = counts_at(word, i0);
        if c[2] >= 1 && c[3] >= 1 {
            Some(if c[0] >= 1 { 0 } else { 1 })
        } else {
            None
        }
    })
}

pub fn h1111_direct(n: usize) -> MultiPoly {
    direct_from_sn(n, 2, n.saturating_sub(1), 4, |word, i0| {
        let c = counts_at(word, i0);
        if c[2] >= 1 && c[3] >= 1 {
            Some(match (c[0] >= 1, c[1] >= 1) {
                (true, true) => 0,
                (false, true) => 1,
                (true, false) => 2,
                (false, false) => 3,
            })
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recursions::factorial;

    fn key2(x: u32, y: u32) -> MonomialKey {
        [x, y, 0, 0]
    }

    #[test]
    fn smallest_cases_by_hand() {
        // F_2: the identity tags position 2 with y, the transposition
        // tags nothing.
        let f = f1010(2);
        assert_eq!(f[2].coefficient(&key2(0, 0)), BigInt::from(1));
        assert_eq!(f[2].coefficient(&key2(0, 1)), BigInt::from(1));
        assert_eq!(f[2].num_terms(), 2);
        assert_eq!(f[2].to_string(), "1 + y_2");

        let f = f1011(3);
        assert_eq!(f[3].to_string(), "4 + 2*y_2");

        let g = g2020(3);
        assert_eq!(g[3].to_string(), "4 + 2*z_3");

        let h = h1111(3);
        assert_eq!(h[3].to_string(), "4 + 2*w_2");
    }

    #[test]
    fn engines_match_direct_construction() {
        let max = 6;
        let built = [
            (f1010(max), (0..=max).map(f1010_direct).collect::<Vec<_>>()),
            (f1011(max), (0..=max).map(f1011_direct).collect()),
            (g2020(max), (0..=max).map(g2020_direct).collect()),
            (h1111(max), (0..=max).map(h1111_direct).collect()),
        ];
        for (engine, direct) in &built {
            for n in 0..=max {
                assert_eq!(engine[n], direct[n], "n = {}", n);
            }
        }
        for a in 1..=3 {
            let engine = f10a0(a, max);
            for n in 0..=max {
                assert_eq!(engine[n], f10a0_direct(a, n), "a = {} n = {}", a, n);
            }
        }
    }

    #[test]
    fn f10a0_with_a_one_is_f1010() {
        let lhs = f10a0(1, 7);
        let rhs = f1010(7);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mass_is_factorial() {
        for n in 0..=7 {
            assert_eq!(f1010(n)[n].mass(), factorial(n), "f1010 n={}", n);
            assert_eq!(f1011(n)[n].mass(), factorial(n), "f1011 n={}", n);
            assert_eq!(g2020(n)[n].mass(), factorial(n), "g2020 n={}", n);
            assert_eq!(h1111(n)[n].mass(), factorial(n), "h1111 n={}", n);
            assert_eq!(f10a0(3, n)[n].mass(), factorial(n), "f10a0 n={}", n);
        }
    }

    #[test]
    fn term_counts_stay_under_bound() {
        for n in 0..=8 {
            for mp in [&f1010(n)[n], &f1011(n)[n], &g2020(n)[n], &h1111(n)[n]] {
                assert!(BigInt::from(mp.num_terms() as u64) <= mp.term_bound());
            }
        }
    }

    #[test]
    fn specialization_recovers_scalar_distributions() {
        // Size 5 collapses: leading family counts the marked positions.
        let f = f1010(5)[5].specialize_to_x();
        assert_eq!(f, IntPoly::from_i64s(&[42, 46, 26, 6]));
        let f = f10a0(2, 5)[5].specialize_to_x();
        assert_eq!(f, IntPoly::from_i64s(&[90, 26, 4]));
        let f = f1011(5)[5].specialize_to_x();
        assert_eq!(f, IntPoly::from_i64s(&[70, 42, 8]));
        let g = g2020(5)[5].specialize_to_x();
        assert_eq!(g, IntPoly::from_i64s(&[116, 4]));
        let h = h1111(5)[5].specialize_to_x();
        assert_eq!(h, IntPoly::from_i64s(&[104, 16]));
    }

    #[test]
    fn all_one_specialization_is_constant_mass() {
        let f = &f1010(4)[4];
        let collapsed = f.specialize(&[Assign::One, Assign::One]);
        assert_eq!(collapsed, IntPoly::constant(factorial(4)));
    }

    #[test]
    fn joint_specialization_counts_both_families() {
        // Sending both families to x counts every below-left-occupied
        // position, which is the single-quadrant statistic.
        let f = &f1010(5)[5];
        let both = f.specialize(&[Assign::X, Assign::X]);
        let expect = crate::recursions::r_k000(1, 5)
            .coeffs()
            .to_vec();
        // positions with below-left nonempty: distribution of the
        // 0,0,1,0 spec equals the 1,0,0,0 family by symmetry.
        assert_eq!(both.coeffs(), &expect[..]);
    }
}
