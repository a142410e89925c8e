//! Scalar recursions, closed-form products, and q-analogues.
//!
//! Each distribution family comes in two independent routes: an
//! iterated recursion and a closed product form. The two routes share
//! no code on purpose, so agreement between them (and with the
//! enumeration oracle) is a meaningful check rather than a tautology.
//!
//! Family naming follows the quadrant spec being counted, with `k`,
//! `a`, `b` the nonvacuous bounds: `r_k000` counts positions with at
//! least `k` points above-right, `r_ab00` additionally requires `b`
//! points above-left, `r_kempty00` forbids anything above-left,
//! `r_eqk000` demands exactly `k` above-right, and `r_kmax` is the
//! variant that inspects quadrant I only up to the suffix maximum.

use crate::error::{Error, Result};
use crate::perm::{Bound, QuadSpec};
use crate::poly::{q_factorial, q_integer, rising_product, BiPoly, IntPoly};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from((n - i) as u64);
        den *= BigInt::from((i + 1) as u64);
    }
    num / den
}

/// Table of signless Stirling numbers of the first kind: `t[n][k]`
/// counts permutations of `n` elements with exactly `k` cycles.
pub fn stirling_cycle_table(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut table: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    table.push(vec![BigInt::one()]);
    for n in 1..=max_n {
        let prev = &table[n - 1];
        let mut row = vec![BigInt::ZERO; n + 1];
        for k in 1..=n {
            let lift = BigInt::from((n - 1) as u64);
            row[k] = &prev[k - 1]
                + prev.get(k).map(|c| c * lift).unwrap_or(BigInt::ZERO);
        }
        table.push(row);
    }
    table
}

/// Signless Stirling number of the first kind `c(n, k)`.
pub fn stirling_cycle(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::ZERO;
    }
    stirling_cycle_table(n)[n][k].clone()
}

fn n_factorial_poly(n: usize) -> IntPoly {
    IntPoly::constant(factorial(n))
}

/// Distribution for "at least `k` points above-right", by recursion:
/// below size `k` every position fails, and each further insertion of a
/// new maximum either lands among the first `k` slots (never matched by
/// the inserted point, bound preserved elsewhere) or contributes one
/// match.
pub fn r_k000(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let mut r = n_factorial_poly(k);
    for m in k..n {
        // step to size m+1: multiply by k + (m+1-k) x
        let step = IntPoly::from_i64s(&[k as i64, (m + 1 - k) as i64]);
        r = r.mul(&step);
    }
    r
}

/// Same family in closed form: `k! * prod over i of (k + i x)`.
pub fn r_k000_closed(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let start = IntPoly::from_i64s(&[k as i64, 1]);
    rising_product(&start, &IntPoly::x(), n - k).scale(&factorial(k))
}

/// Distribution for "exactly `k` points above-right", by recursion: for
/// sizes past `k`, inserting the new maximum at one of the `n` old
/// non-final slots keeps counts, and the final slot adds a match.
pub fn r_eqk000(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let mut r = n_factorial_poly(k);
    for m in k..n {
        let step = IntPoly::from_i64s(&[m as i64, 1]);
        r = r.mul(&step);
    }
    r
}

/// Closed form of [`r_eqk000`]: `k! * prod over i of (k + i - 1 + x)`.
pub fn r_eqk000_closed(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let start = IntPoly::from_i64s(&[k as i64, 1]);
    rising_product(&start, &IntPoly::one(), n - k).scale(&factorial(k))
}

/// Distribution for "nothing above-right", the right-to-left maxima
/// statistic: the rising factorial `x (x+1) ... (x+n-1)`, whose
/// coefficients are the signless Stirling cycle numbers.
pub fn r_empty000(n: usize) -> IntPoly {
    rising_product(&IntPoly::x(), &IntPoly::one(), n)
}

/// Distribution for "at least `a` above-right and at least `b`
/// above-left". Only `a + b` matters; the recursion coefficient is
/// `(a+b) + (n+1-a-b) x` once `n` reaches `a + b`.
pub fn r_ab00(a: u32, b: u32, n: usize) -> IntPoly {
    let t = (a + b) as usize;
    if n <= t {
        return n_factorial_poly(n);
    }
    let mut r = n_factorial_poly(t);
    for m in t..n {
        let step = IntPoly::from_i64s(&[t as i64, (m + 1 - t) as i64]);
        r = r.mul(&step);
    }
    r
}

/// Closed form of [`r_ab00`]: `(a+b)! * prod over i of ((a+b) + i x)`.
pub fn r_ab00_closed(a: u32, b: u32, n: usize) -> IntPoly {
    let t = (a + b) as usize;
    if n <= t {
        return n_factorial_poly(n);
    }
    let start = IntPoly::from_i64s(&[t as i64, 1]);
    rising_product(&start, &IntPoly::x(), n - t).scale(&factorial(t))
}

/// Distribution for "at least `k` above-right, nothing above-left", by
/// recursion `R_{n+1} = (x + n) R_n` once `n` reaches `k`.
pub fn r_kempty00(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let mut r = n_factorial_poly(k);
    for m in k..n {
        let step = IntPoly::from_i64s(&[m as i64, 1]);
        r = r.mul(&step);
    }
    r
}

/// Closed form of [`r_kempty00`]: `k! (x+k)(x+k+1) ... (x+n-1)`.
pub fn r_kempty00_closed(k: u32, n: usize) -> IntPoly {
    let k = k as usize;
    if n <= k {
        return n_factorial_poly(n);
    }
    let start = IntPoly::from_i64s(&[k as i64, 1]);
    rising_product(&start, &IntPoly::one(), n - k).scale(&factorial(k))
}

/// Distribution of the `k <= max` statistic. For `k = 1` this is
/// exactly [`r_kempty00`] with `k = 1`; for larger `k` the binomial sum
/// over the position of the maximum applies:
/// `R_n = sum over j of (n-1-j)! C(n-1, j) S_j`, where `S` is the
/// `k-1`-above-right, empty-above-left family.
pub fn r_kmax(k: u32, n: usize) -> IntPoly {
    assert!(k >= 1, "the k <= max statistic needs k >= 1");
    if k == 1 {
        return r_kempty00(1, n);
    }
    if n == 0 {
        return IntPoly::one();
    }
    let mut acc = IntPoly::zero();
    for j in 0..n {
        let weight = factorial(n - 1 - j) * binomial(n - 1, j);
        acc = acc.add(&r_kempty00(k - 1, j).scale(&weight));
    }
    acc
}

fn q_poly(p: &IntPoly) -> BiPoly {
    BiPoly::from_q_poly(p)
}

fn x_times_q_power(k: usize) -> BiPoly {
    BiPoly::monomial(BigInt::one(), 1, k)
}

/// q-analogue of [`r_k000`], refining by coinversions: recursion
/// `R_{n+1} = ([k]_q + x q^k [n+1-k]_q) R_n` with base `[n]_q!` for
/// `n <= k`.
pub fn q_r_k000(k: u32, n: usize) -> BiPoly {
    let k = k as usize;
    if n <= k {
        return q_poly(&q_factorial(n));
    }
    let mut r = q_poly(&q_factorial(k));
    for m in k..n {
        let step = q_poly(&q_integer(k))
            .add(&x_times_q_power(k).mul(&q_poly(&q_integer(m + 1 - k))));
        r = r.mul(&step);
    }
    r
}

/// Closed form of [`q_r_k000`]:
/// `[k]_q! * prod over i of ([k]_q + x q^k [i]_q)`.
pub fn q_r_k000_closed(k: u32, n: usize) -> BiPoly {
    let k = k as usize;
    if n <= k {
        return q_poly(&q_factorial(n));
    }
    let mut r = q_poly(&q_factorial(k));
    for i in 1..=n - k {
        let factor = q_poly(&q_integer(k))
            .add(&x_times_q_power(k).mul(&q_poly(&q_integer(i))));
        r = r.mul(&factor);
    }
    r
}

/// q-analogue of [`r_ab00`]: recursion
/// `R_{n+1} = ([a]_q + q^{n+1-b} [b]_q + x q^a [n+1-a-b]_q) R_n` with
/// base `[n]_q!` for `n <= a+b`. Unlike the `q = 1` case, the result
/// depends on the split of `a + b`.
pub fn q_r_ab00(a: u32, b: u32, n: usize) -> BiPoly {
    let (a, b) = (a as usize, b as usize);
    let t = a + b;
    if n <= t {
        return q_poly(&q_factorial(n));
    }
    let mut r = q_poly(&q_factorial(t));
    for m in t..n {
        let shift = BiPoly::monomial(BigInt::one(), 0, m + 1 - b);
        let step = q_poly(&q_integer(a))
            .add(&shift.mul(&q_poly(&q_integer(b))))
            .add(&x_times_q_power(a).mul(&q_poly(&q_integer(m + 1 - t))));
        r = r.mul(&step);
    }
    r
}

/// Closed form of [`q_r_ab00`]:
/// `[a+b]_q! * prod over i of ([a]_q + q^{a+i} [b]_q + x q^a [i]_q)`.
pub fn q_r_ab00_closed(a: u32, b: u32, n: usize) -> BiPoly {
    let (a, b) = (a as usize, b as usize);
    let t = a + b;
    if n <= t {
        return q_poly(&q_factorial(n));
    }
    let mut r = q_poly(&q_factorial(t));
    for i in 1..=n - t {
        let shift = BiPoly::monomial(BigInt::one(), 0, a + i);
        let factor = q_poly(&q_integer(a))
            .add(&shift.mul(&q_poly(&q_integer(b))))
            .add(&x_times_q_power(a).mul(&q_poly(&q_integer(i))));
        r = r.mul(&factor);
    }
    r
}

/// A quadrant spec recognized as one of the scalar families above, found
/// by searching the symmetry orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarFamily {
    K000(u32),
    EqK000(u32),
    Ab00(u32, u32),
    KEmpty00(u32),
}

impl ScalarFamily {
    /// Recursion-route value.
    pub fn recursion(&self, n: usize) -> IntPoly {
        match *self {
            ScalarFamily::K000(k) => r_k000(k, n),
            ScalarFamily::EqK000(k) => r_eqk000(k, n),
            ScalarFamily::Ab00(a, b) => r_ab00(a, b, n),
            ScalarFamily::KEmpty00(k) => r_kempty00(k, n),
        }
    }

    /// Closed-product value.
    pub fn closed(&self, n: usize) -> IntPoly {
        match *self {
            ScalarFamily::K000(k) => r_k000_closed(k, n),
            ScalarFamily::EqK000(k) => r_eqk000_closed(k, n),
            ScalarFamily::Ab00(a, b) => r_ab00_closed(a, b, n),
            ScalarFamily::KEmpty00(k) => r_kempty00_closed(k, n),
        }
    }
}

impl fmt::Display for ScalarFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ScalarFamily::K000(k) => write!(f, "k000:{}", k),
            ScalarFamily::EqK000(k) => write!(f, "eqk000:{}", k),
            ScalarFamily::Ab00(a, b) => write!(f, "ab00:{},{}", a, b),
            ScalarFamily::KEmpty00(k) => write!(f, "kempty00:{}", k),
        }
    }
}

fn classify_one(bounds: &[Bound; 4]) -> Option<ScalarFamily> {
    let vac = |b: Bound| b.is_vacuous();
    if !(vac(bounds[2]) && vac(bounds[3])) {
        return None;
    }
    match (bounds[0], bounds[1]) {
        (Bound::AtLeast(k), b2) if vac(b2) => Some(ScalarFamily::K000(k)),
        (Bound::AtLeast(k), b2) if k >= 1 && b2 == Bound::Exactly(0) => {
            Some(ScalarFamily::KEmpty00(k))
        }
        (Bound::AtLeast(a), Bound::AtLeast(b)) if a >= 1 && b >= 1 => {
            Some(ScalarFamily::Ab00(a, b))
        }
        (Bound::Exactly(k), b2) if vac(b2) => Some(ScalarFamily::EqK000(k)),
        (Bound::Empty, b2) if vac(b2) => Some(ScalarFamily::EqK000(0)),
        _ => None,
    }
}

/// Finds a scalar family for the spec by walking its symmetry orbit;
/// `None` when no orbit member has the recognized shape.
pub fn resolve_scalar_family(spec: &QuadSpec) -> Option<ScalarFamily> {
    spec.orbit().iter().find_map(|s| classify_one(&s.bounds))
}

/// Convolution route for the one-before-n class with the pattern
/// "above-right and below-left nonempty": sum over the positions `i` of
/// 1 and `j` of `n`, with the strip between them free, the prefix
/// reduced to a below-left count and the suffix to an above-right
/// count. Defined for `n >= 2`.
pub fn b1010_conv(n: usize) -> Result<IntPoly> {
    check_b_size(n)?;
    // Both side factors reduce to the single-quadrant family.
    let side = resolve_scalar_family(&QuadSpec::at_least(0, 0, 1, 0))
        .expect("single-quadrant spec always resolves");
    let mut acc = IntPoly::zero();
    for i in 1..=n {
        for j in i + 1..=n {
            let strip = j - i - 1;
            let ways = binomial(n - 2, i - 1) * binomial(n - 2 - (i - 1), strip);
            let weight = ways * factorial(strip);
            let term = side
                .closed(i - 1)
                .mul(&side.closed(n - j))
                .mul(&IntPoly::monomial(weight, strip));
            acc = acc.add(&term);
        }
    }
    Ok(acc)
}

/// Closed form for the same class: `prod over j of (2 + j x)`.
pub fn b1010_closed(n: usize) -> Result<IntPoly> {
    check_b_size(n)?;
    Ok(rising_product(
        &IntPoly::from_i64s(&[2, 1]),
        &IntPoly::x(),
        n - 2,
    ))
}

/// Parity-split product for the same class. Even `n = 2r` uses prefactor
/// `2^(r-1)`; odd `n = 2r-1` uses `2^(r-2)`.
pub fn b1010_parity_product(n: usize) -> Result<IntPoly> {
    check_b_size(n)?;
    let p1 = |count: usize| rising_product(&IntPoly::from_i64s(&[1, 1]), &IntPoly::x(), count);
    let p2 = |count: usize| {
        rising_product(
            &IntPoly::from_i64s(&[2, 1]),
            &IntPoly::from_i64s(&[0, 2]),
            count,
        )
    };
    let (power, even_part, odd_part) = if n % 2 == 0 {
        let r = n / 2;
        (r - 1, p1(r - 1), p2(r - 1))
    } else {
        let r = (n + 1) / 2;
        (r - 2, p1(r - 2), p2(r - 1))
    };
    let prefactor = BigInt::from(2u32).pow(power as u32);
    Ok(even_part.mul(&odd_part).scale(&prefactor))
}

/// Convolution route for the one-before-n class with the pattern
/// "above-right, below-left, below-right all nonempty": split on how
/// many of the free values come before the 1. Defined for `n >= 2`.
pub fn b1011_conv(n: usize) -> Result<IntPoly> {
    check_b_size(n)?;
    let left = resolve_scalar_family(&QuadSpec::at_least(0, 0, 1, 0))
        .expect("single-quadrant spec always resolves");
    let right = resolve_scalar_family(&QuadSpec::at_least(1, 0, 0, 1))
        .expect("two-quadrant corner spec resolves via its orbit");
    let mut acc = IntPoly::zero();
    for k in 0..=n - 2 {
        let term = left
            .closed(k)
            .mul(&right.closed(n - k - 1))
            .scale(&binomial(n - 2, k));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Closed form for the same class: `prod over i of (3 + i x)` with
/// `n - 2` factors.
pub fn b1011_closed(n: usize) -> Result<IntPoly> {
    check_b_size(n)?;
    Ok(rising_product(
        &IntPoly::constant_i64(3),
        &IntPoly::x(),
        n - 2,
    ))
}

fn check_b_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidInput(format!(
            "one-before-n identities need n >= 2, got {}",
            n
        )));
    }
    Ok(())
}

/// General two-sided convolution for a block class of length
/// `block_len`: the values outside the block split binomially into a
/// prefix counted by `left` and a suffix counted by `right`, both
/// resolved to scalar families through their orbits.
pub fn block_conv(
    left: &QuadSpec,
    right: &QuadSpec,
    block_len: usize,
    n: usize,
) -> Result<IntPoly> {
    if n < block_len {
        return Err(Error::InvalidInput(format!(
            "block of length {} does not fit in S_{}",
            block_len, n
        )));
    }
    let lf = resolve_scalar_family(left).ok_or_else(|| {
        Error::InvalidInput(format!("left spec {} has no scalar family", left))
    })?;
    let rf = resolve_scalar_family(right).ok_or_else(|| {
        Error::InvalidInput(format!("right spec {} has no scalar family", right))
    })?;
    let free = n - block_len;
    let mut acc = IntPoly::zero();
    for i in 0..=free {
        let term = lf
            .closed(i)
            .mul(&rf.closed(free - i))
            .scale(&binomial(free, i));
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// Leading coefficient of the `k <= max` distribution: `(k-1)!` at
/// degree `n - k`, valid for `n >= k + 1`.
pub fn kmax_top_coefficient(k: u32) -> BigInt {
    factorial(k as usize - 1)
}

/// Second-highest coefficient of the `k <= max` distribution:
/// `(k-1)! (C(n,2) - C(k-1,2))`, valid for `n >= k + 2`.
pub fn kmax_second_coefficient(k: u32, n: usize) -> BigInt {
    factorial(k as usize - 1) * (binomial(n, 2) - binomial(k as usize - 1, 2))
}

/// Constant term of the `k = 2` max-variant distribution:
/// `(n-1)! (1 + 1/1 + ... + 1/(n-1))`, all divisions exact.
pub fn arrangement_count(n: usize) -> BigInt {
    assert!(n >= 1);
    let f = factorial(n - 1);
    let mut acc = f.clone();
    for i in 1..n {
        acc += &f / BigInt::from(i as u64);
    }
    acc
}

/// The sequence `sum over k of C(k+2,2) 3^k c(m+2, k+2)` (expanding
/// a generating function `(1-x)^{-3} (-ln(1-x))` style identity); the
/// signs of the signed Stirling numbers cancel against the alternating
/// factor, leaving all terms positive.
pub fn a001712(m: usize) -> BigInt {
    let table = stirling_cycle_table(m + 2);
    let mut acc = BigInt::ZERO;
    let mut pow3 = BigInt::one();
    for k in 0..=m {
        acc += binomial(k + 2, 2) * &pow3 * &table[m + 2][k + 2];
        pow3 *= 3;
    }
    acc
}

/// Count of square-class avoiders as printed in the source table
/// (`2(n+2) 4^(n-3) - 4^(2n-5) C(2n-6, n-3)`), which disagrees with
/// enumeration; kept verbatim for the soft report.
pub fn square_avoiders_printed(n: usize) -> BigInt {
    assert!(n >= 3);
    let first = BigInt::from(2 * (n + 2) as u64) * BigInt::from(4u32).pow(n as u32 - 3);
    let second = BigInt::from(4u32).pow(2 * n as u32 - 5) * binomial(2 * n - 6, n - 3);
    first - second
}

/// The same count with the exponent read as a plain factor,
/// `2(n+2) 4^(n-3) - 4 (2n-5) C(2n-6, n-3)`, which does match
/// enumeration for all checked sizes.
pub fn square_avoiders_corrected(n: usize) -> BigInt {
    assert!(n >= 3);
    let first = BigInt::from(2 * (n + 2) as u64) * BigInt::from(4u32).pow(n as u32 - 3);
    let second = BigInt::from(4 * (2 * n - 5) as u64) * binomial(2 * n - 6, n - 3);
    first - second
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(coeffs)
    }

    #[test]
    fn tables() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::ZERO);
        assert_eq!(stirling_cycle(4, 2), BigInt::from(11));
        assert_eq!(stirling_cycle(5, 1), BigInt::from(24));
        assert_eq!(stirling_cycle(5, 5), BigInt::one());
        assert_eq!(stirling_cycle(3, 5), BigInt::ZERO);
    }

    #[test]
    fn k000_small_values() {
        assert_eq!(r_k000(1, 3), poly(&[1, 3, 2]));
        assert_eq!(r_k000(2, 2), poly(&[2]));
        assert_eq!(r_k000(2, 4), poly(&[8, 12, 4]));
        // k = 0 degenerates to every position matching.
        assert_eq!(r_k000(0, 4), IntPoly::monomial(factorial(4), 4));
    }

    #[test]
    fn recursion_routes_match_closed_routes() {
        for n in 0..=9 {
            for k in 0..=4 {
                assert_eq!(r_k000(k, n), r_k000_closed(k, n), "k000 k={} n={}", k, n);
                assert_eq!(r_eqk000(k, n), r_eqk000_closed(k, n), "eq k={} n={}", k, n);
                assert_eq!(
                    r_kempty00(k, n),
                    r_kempty00_closed(k, n),
                    "kempty k={} n={}",
                    k,
                    n
                );
            }
            for a in 0..=2 {
                for b in 0..=2 {
                    assert_eq!(r_ab00(a, b, n), r_ab00_closed(a, b, n));
                }
            }
        }
    }

    #[test]
    fn ab_only_depends_on_total() {
        for n in 0..=8 {
            assert_eq!(r_ab00(1, 1, n), r_k000(2, n));
            assert_eq!(r_ab00(2, 1, n), r_k000(3, n));
            assert_eq!(r_ab00(1, 2, n), r_ab00(2, 1, n));
        }
    }

    #[test]
    fn rising_factorial_has_stirling_coefficients() {
        for n in 0..=8 {
            let r = r_empty000(n);
            assert_eq!(r, r_eqk000_closed(0, n));
            for k in 0..=n {
                assert_eq!(r.coeff(k), stirling_cycle(n, k), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn kmax_small_values() {
        assert_eq!(r_kmax(2, 3), poly(&[5, 1]));
        assert_eq!(r_kmax(2, 4), poly(&[17, 6, 1]));
        assert_eq!(r_kmax(3, 4), poly(&[22, 2]));
        for n in 0..=8 {
            assert_eq!(r_kmax(1, n), r_kempty00(1, n));
        }
    }

    #[test]
    fn q_analogues_collapse_at_q_one() {
        for n in 0..=6 {
            for k in 1..=3 {
                assert_eq!(q_r_k000(k, n).at_q_one(), r_k000(k, n));
                assert_eq!(q_r_k000(k, n), q_r_k000_closed(k, n));
            }
            for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                assert_eq!(q_r_ab00(a, b, n).at_q_one(), r_ab00(a, b, n));
                assert_eq!(q_r_ab00(a, b, n), q_r_ab00_closed(a, b, n));
            }
        }
    }

    #[test]
    fn q_ab_hand_value() {
        // Size 3, one point required on each upper side:
        // 1 + q + q^2 + q^3 + x(q + q^2).
        let r = q_r_ab00(1, 1, 3);
        let expect = BiPoly::from_q_poly(&poly(&[1, 1, 1, 1]))
            .add(&BiPoly::from_x_poly(&poly(&[0, 1])).mul(&BiPoly::from_q_poly(&poly(&[0, 1, 1]))));
        assert_eq!(r, expect);
    }

    #[test]
    fn q_ab_differs_from_q_k000_beyond_base() {
        // At q = 1 the a,b split is invisible, but the q-refinement
        // separates the two families from size a+b+1 onward.
        assert_eq!(q_r_ab00(1, 1, 2), q_r_k000(2, 2));
        assert_ne!(q_r_ab00(1, 1, 3), q_r_k000(2, 3));
        // Size 3 with two points above-right: [2]_q! ([2]_q + x q^2).
        let expect = BiPoly::from_q_poly(&q_factorial(2)).mul(
            &BiPoly::from_q_poly(&q_integer(2)).add(&BiPoly::monomial(BigInt::one(), 1, 2)),
        );
        assert_eq!(q_r_k000(2, 3), expect);
    }

    #[test]
    fn resolver_walks_orbits() {
        let resolve = |s: &str| resolve_scalar_family(&s.parse().unwrap());
        assert_eq!(resolve("2,0,0,0"), Some(ScalarFamily::K000(2)));
        assert_eq!(resolve("0,0,1,0"), Some(ScalarFamily::K000(1)));
        assert_eq!(resolve("1,0,0,1"), Some(ScalarFamily::Ab00(1, 1)));
        assert_eq!(resolve("0,0,1,1"), Some(ScalarFamily::Ab00(1, 1)));
        assert_eq!(resolve("1,empty,0,0"), Some(ScalarFamily::KEmpty00(1)));
        assert_eq!(resolve("0,0,eq:0,0"), Some(ScalarFamily::EqK000(0)));
        assert_eq!(resolve("empty,0,0,0"), Some(ScalarFamily::EqK000(0)));
        assert_eq!(resolve("0,0,0,eq:2"), Some(ScalarFamily::EqK000(2)));
        assert_eq!(resolve("1,0,1,0"), None);
        assert_eq!(resolve("1,1,1,1"), None);
    }

    #[test]
    fn one_before_n_identities_small() {
        assert_eq!(b1010_conv(2).unwrap(), IntPoly::one());
        assert_eq!(b1010_conv(3).unwrap(), poly(&[2, 1]));
        assert_eq!(b1011_conv(3).unwrap(), poly(&[3]));
        for n in 2..=9 {
            let closed = b1010_closed(n).unwrap();
            assert_eq!(b1010_conv(n).unwrap(), closed, "n={}", n);
            assert_eq!(b1010_parity_product(n).unwrap(), closed, "n={}", n);
            assert_eq!(b1011_conv(n).unwrap(), b1011_closed(n).unwrap(), "n={}", n);
        }
        assert!(b1010_conv(1).is_err());
        assert!(b1011_closed(0).is_err());
    }

    #[test]
    fn avoider_counts_from_closed_forms() {
        for n in 2..=9 {
            assert_eq!(
                b1010_closed(n).unwrap().coeff(0),
                BigInt::from(2u32).pow(n as u32 - 2)
            );
            assert_eq!(
                b1011_closed(n).unwrap().coeff(0),
                BigInt::from(3u32).pow(n as u32 - 2)
            );
        }
    }

    #[test]
    fn block_convolution_hand_values() {
        let left: QuadSpec = "0,0,1,0".parse().unwrap();
        let right: QuadSpec = "1,0,0,1".parse().unwrap();
        assert_eq!(block_conv(&left, &right, 2, 4).unwrap(), poly(&[5, 1]));
        assert_eq!(block_conv(&left, &right, 2, 5).unwrap(), poly(&[14, 8, 2]));
        let plain: QuadSpec = "1,0,0,0".parse().unwrap();
        assert_eq!(block_conv(&left, &plain, 2, 3).unwrap(), poly(&[2]));
        assert!(block_conv(&left, &right, 4, 3).is_err());
        let unresolvable: QuadSpec = "1,0,1,0".parse().unwrap();
        assert!(block_conv(&unresolvable, &right, 2, 5).is_err());
    }

    #[test]
    fn kmax_coefficient_formulas() {
        for k in 2..=4u32 {
            for n in k as usize + 1..=9 {
                let r = r_kmax(k, n);
                assert_eq!(r.degree(), Some(n - k as usize), "k={} n={}", k, n);
                assert_eq!(r.leading(), kmax_top_coefficient(k));
                if n >= k as usize + 2 {
                    assert_eq!(r.coeff(n - k as usize - 1), kmax_second_coefficient(k, n));
                }
            }
        }
    }

    #[test]
    fn sequence_formulas() {
        let counts: Vec<BigInt> = (1..=5).map(arrangement_count).collect();
        let expect: Vec<BigInt> = [1, 2, 5, 17, 74].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(counts, expect);
        for n in 1..=6 {
            assert_eq!(r_kmax(2, n).coeff(0), arrangement_count(n));
        }
        assert_eq!(a001712(0), BigInt::one());
        assert_eq!(a001712(1), BigInt::from(12));
        assert_eq!(a001712(2), BigInt::from(119));
    }

    #[test]
    fn square_avoider_formulas_disagree() {
        let corrected: Vec<BigInt> = (5..=8).map(square_avoiders_corrected).collect();
        let expect: Vec<BigInt> = [104, 464, 2088, 9392]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(corrected, expect);
        assert_ne!(square_avoiders_printed(5), square_avoiders_corrected(5));
    }
}
