//! Truncated exponential generating functions with polynomial terms.
//!
//! A series is stored as its list of terms `P_0, ..., P_N`, where term
//! `P_n` is the polynomial multiplying `t^n / n!`. All operations stay in
//! integer polynomial arithmetic: multiplying two EGFs is a binomial
//! convolution of terms, and multiplying by the geometric series
//! `1/(1-t)` sends `P_n` to `sum over m of (n!/m!) P_m`. Operations on
//! series of different orders truncate to the shorter one.

use crate::poly::IntPoly;
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgfSeries {
    terms: Vec<IntPoly>,
}

impl EgfSeries {
    /// Builds a series from terms `P_0..=P_N`. At least one term is
    /// required.
    pub fn new(terms: Vec<IntPoly>) -> Self {
        assert!(!terms.is_empty(), "a series needs at least the constant term");
        EgfSeries { terms }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> IntPoly) -> Self {
        EgfSeries::new((0..=order).map(f).collect())
    }

    /// Highest stored term index.
    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, n: usize) -> &IntPoly {
        &self.terms[n]
    }

    pub fn terms(&self) -> &[IntPoly] {
        &self.terms
    }

    pub fn truncate(&self, order: usize) -> EgfSeries {
        let keep = order.min(self.order());
        EgfSeries::new(self.terms[..=keep].to_vec())
    }

    /// Product of EGFs: the result term `Q_n` is the binomial convolution
    /// `sum over m of C(n,m) A_m B_{n-m}`, up to the smaller order.
    pub fn mul(&self, other: &EgfSeries) -> EgfSeries {
        let order = self.order().min(other.order());
        let choose = pascal_rows(order);
        EgfSeries::from_fn(order, |n| {
            let mut acc = IntPoly::zero();
            for m in 0..=n {
                let prod = self.terms[m].mul(&other.terms[n - m]);
                acc = acc.add(&prod.scale(&choose[n][m]));
            }
            acc
        })
    }

    /// Multiplication by `1/(1-t)`: `Q_n = sum over m <= n of (n!/m!) A_m`.
    pub fn geom_mul(&self) -> EgfSeries {
        let order = self.order();
        EgfSeries::from_fn(order, |n| {
            let mut acc = IntPoly::zero();
            // falling = n! / m!, built downward from m = n.
            let mut falling = BigInt::one();
            for m in (0..=n).rev() {
                acc = acc.add(&self.terms[m].scale(&falling));
                falling *= BigInt::from(m as u64);
            }
            acc
        })
    }

    /// Term-level integration: the constant term is supplied, and term
    /// `n+1` of the result is term `n` of the input. Order grows by one.
    pub fn integrate(&self, constant: IntPoly) -> EgfSeries {
        let mut terms = Vec::with_capacity(self.terms.len() + 1);
        terms.push(constant);
        terms.extend(self.terms.iter().cloned());
        EgfSeries::new(terms)
    }

    /// Term-level differentiation, inverse to [`integrate`] up to the
    /// dropped constant. Requires order at least 1.
    ///
    /// [`integrate`]: EgfSeries::integrate
    pub fn differentiate(&self) -> EgfSeries {
        assert!(self.order() >= 1, "cannot differentiate an order-0 series");
        EgfSeries::new(self.terms[1..].to_vec())
    }

    /// Prepends explicit low-order terms: the result has `prefix` as its
    /// first terms followed by all terms of `self`. Used to turn a series
    /// for a tail `n >= k` into a full series starting at `n = 0`.
    pub fn shift_embed(&self, prefix: &[IntPoly]) -> EgfSeries {
        let mut terms = Vec::with_capacity(prefix.len() + self.terms.len());
        terms.extend_from_slice(prefix);
        terms.extend(self.terms.iter().cloned());
        EgfSeries::new(terms)
    }

    pub fn add(&self, other: &EgfSeries) -> EgfSeries {
        let order = self.order().min(other.order());
        EgfSeries::from_fn(order, |n| self.terms[n].add(&other.terms[n]))
    }

    pub fn sub(&self, other: &EgfSeries) -> EgfSeries {
        let order = self.order().min(other.order());
        EgfSeries::from_fn(order, |n| self.terms[n].sub(&other.terms[n]))
    }
}

impl std::fmt::Display for EgfSeries {
    /// One term per line, as `n: polynomial`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (n, term) in self.terms.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", n, term)?;
        }
        Ok(())
    }
}

fn pascal_rows(max_n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![BigInt::one()]);
    for n in 1..=max_n {
        let prev = &rows[n - 1];
        let mut row = Vec::with_capacity(n + 1);
        row.push(BigInt::one());
        for k in 1..n {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::one());
        rows.push(row);
    }
    rows
}
