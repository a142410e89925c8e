//! Exact polynomial arithmetic over arbitrary-precision integers.
//!
//! Two carriers are provided: [`IntPoly`] for univariate polynomials in
//! the marking variable `x`, and [`BiPoly`] for bivariate polynomials in
//! `x` and `q` used by the q-analogue recursions. Coefficients are
//! `BigInt`, so every identity in this crate is checked exactly; no
//! floating point is involved anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;

/// A univariate polynomial with `BigInt` coefficients, stored densely in
/// ascending powers with no trailing zero coefficients.
///
/// The canonical form makes structural equality coincide with
/// mathematical equality: the zero polynomial is the empty coefficient
/// vector, and `degree` of a nonzero polynomial is `len - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    pub fn constant_i64(c: i64) -> Self {
        IntPoly::constant(BigInt::from(c))
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros to restore the canonical form.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero outside the stored range).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient, or zero for the zero polynomial.
    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, at: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn eval_i64(&self, at: i64) -> BigInt {
        self.eval(&BigInt::from(at))
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        IntPoly::from_coeffs(out)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Dense ascending coefficients rendered as decimal strings, e.g. for
    /// JSON output. The zero polynomial renders as `["0"]`.
    pub fn coeff_strings(&self) -> Vec<String> {
        if self.is_zero() {
            return vec!["0".to_string()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for IntPoly {
    /// Renders in ascending powers, e.g. `14 + 8*x + 2*x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.sign() == num_bigint::Sign::Minus {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let coeff_is_one = mag.is_one();
            match (k, coeff_is_one) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", mag)?,
                (_, true) => write!(f, "x^{}", k)?,
                (_, false) => write!(f, "{}*x^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

/// Product `(c0) * (c0 + step) * ... * (c0 + (s-1)*step)` of polynomial
/// arguments, i.e. a rising factorial with polynomial start and step.
/// Empty products (`s = 0`) give 1.
pub fn rising_product(c0: &IntPoly, step: &IntPoly, s: usize) -> IntPoly {
    let mut acc = IntPoly::one();
    let mut factor = c0.clone();
    for _ in 0..s {
        acc = acc.mul(&factor);
        factor = factor.add(step);
    }
    acc
}

/// A bivariate polynomial in `x` and `q`, stored as a vector of rows:
/// `rows[i]` holds the ascending `q`-coefficients of `x^i`. Rows are
/// individually trimmed and trailing all-zero rows removed, so equality
/// is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    rows: Vec<Vec<BigInt>>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        BiPoly::monomial(BigInt::one(), 0, 0)
    }

    /// `c * x^xd * q^qd`.
    pub fn monomial(c: BigInt, xd: usize, qd: usize) -> Self {
        let mut rows = vec![Vec::new(); xd + 1];
        rows[xd] = {
            let mut r = vec![BigInt::zero(); qd + 1];
            r[qd] = c;
            r
        };
        BiPoly::from_rows(rows)
    }

    pub fn from_rows(mut rows: Vec<Vec<BigInt>>) -> Self {
        for row in rows.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    /// Embeds a polynomial in `q` (constant in `x`).
    pub fn from_q_poly(p: &IntPoly) -> Self {
        BiPoly::from_rows(vec![p.coeffs().to_vec()])
    }

    /// Embeds a polynomial in `x` (constant in `q`).
    pub fn from_x_poly(p: &IntPoly) -> Self {
        BiPoly::from_rows(p.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coeff(&self, xd: usize, qd: usize) -> BigInt {
        self.rows
            .get(xd)
            .and_then(|r| r.get(qd))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.rows.get(i).map(Vec::as_slice).unwrap_or(&[]);
            let b = other.rows.get(i).map(Vec::as_slice).unwrap_or(&[]);
            let w = a.len().max(b.len());
            let mut row = Vec::with_capacity(w);
            for j in 0..w {
                let x = a.get(j).cloned().unwrap_or_else(BigInt::zero);
                let y = b.get(j).cloned().unwrap_or_else(BigInt::zero);
                row.push(x + y);
            }
            rows.push(row);
        }
        BiPoly::from_rows(rows)
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let xs = self.rows.len() + other.rows.len() - 1;
        let qs = self.rows.iter().map(Vec::len).max().unwrap_or(0)
            + other.rows.iter().map(Vec::len).max().unwrap_or(0);
        let mut rows = vec![vec![BigInt::zero(); qs]; xs];
        for (i, ra) in self.rows.iter().enumerate() {
            for (j, a) in ra.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, rb) in other.rows.iter().enumerate() {
                    for (l, b) in rb.iter().enumerate() {
                        rows[i + k][j + l] += a * b;
                    }
                }
            }
        }
        BiPoly::from_rows(rows)
    }

    pub fn scale(&self, c: &BigInt) -> BiPoly {
        BiPoly::from_rows(
            self.rows
                .iter()
                .map(|r| r.iter().map(|a| a * c).collect())
                .collect(),
        )
    }

    /// Specializes `q = 1`, collapsing to a polynomial in `x`.
    pub fn at_q_one(&self) -> IntPoly {
        IntPoly::from_coeffs(
            self.rows
                .iter()
                .map(|r| r.iter().fold(BigInt::zero(), |acc, c| acc + c))
                .collect(),
        )
    }

    /// Specializes `x = 1`, collapsing to a polynomial in `q`.
    pub fn at_x_one(&self) -> IntPoly {
        let mut acc = IntPoly::zero();
        for r in &self.rows {
            acc = acc.add(&IntPoly::from_coeffs(r.clone()));
        }
        acc
    }

    /// Rectangular grid of decimal strings: `grid[i][j]` is the
    /// coefficient of `x^i q^j`, rows padded to a common width. The zero
    /// polynomial renders as `[["0"]]`.
    pub fn coeff_grid_strings(&self) -> Vec<Vec<String>> {
        if self.is_zero() {
            return vec![vec!["0".to_string()]];
        }
        let width = self.rows.iter().map(Vec::len).max().unwrap_or(1).max(1);
        self.rows
            .iter()
            .map(|r| {
                (0..width)
                    .map(|j| r.get(j).map(|c| c.to_string()).unwrap_or_else(|| "0".into()))
                    .collect()
            })
            .collect()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{}", c)?;
                match i {
                    0 => {}
                    1 => write!(f, "*x")?,
                    _ => write!(f, "*x^{}", i)?,
                }
                match j {
                    0 => {}
                    1 => write!(f, "*q")?,
                    _ => write!(f, "*q^{}", j)?,
                }
            }
        }
        Ok(())
    }
}

/// The q-integer `[n]_q = 1 + q + ... + q^{n-1}` as a polynomial in `q`
/// (`[0]_q = 0`).
pub fn q_integer(n: usize) -> IntPoly {
    IntPoly::from_coeffs(vec![BigInt::one(); n])
}

/// The q-factorial `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: usize) -> IntPoly {
    let mut acc = IntPoly::one();
    for i in 1..=n {
        acc = acc.mul(&q_integer(i));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims_trailing_zeros() {
        let p = IntPoly::from_i64s(&[3, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(p, IntPoly::constant_i64(3));
        assert!(IntPoly::from_i64s(&[0, 0]).is_zero());
        assert_eq!(IntPoly::zero().degree(), None);
    }

    #[test]
    fn arithmetic_basics() {
        let p = IntPoly::from_i64s(&[1, 2]); // 1 + 2x
        let q = IntPoly::from_i64s(&[3, 4]); // 3 + 4x
        assert_eq!(p.add(&q), IntPoly::from_i64s(&[4, 6]));
        assert_eq!(p.mul(&q), IntPoly::from_i64s(&[3, 10, 8]));
        assert_eq!(p.sub(&p), IntPoly::zero());
        assert_eq!(p.eval_i64(5), BigInt::from(11));
        assert_eq!(p.scale(&BigInt::from(-2)), IntPoly::from_i64s(&[-2, -4]));
    }

    #[test]
    fn mul_degree_and_leading() {
        let p = IntPoly::from_i64s(&[0, 1, 5]);
        let q = IntPoly::from_i64s(&[2, 7]);
        let r = p.mul(&q);
        assert_eq!(r.degree(), Some(3));
        assert_eq!(r.leading(), BigInt::from(35));
        assert_eq!(r.coeff(0), BigInt::zero());
        assert_eq!(r.coeff(7), BigInt::zero());
    }

    #[test]
    fn rising_product_matches_expansion() {
        // (1+x)(1+2x) = 1 + 3x + 2x^2
        let p = rising_product(
            &IntPoly::from_i64s(&[1, 1]),
            &IntPoly::from_i64s(&[0, 1]),
            2,
        );
        assert_eq!(p, IntPoly::from_i64s(&[1, 3, 2]));
        assert_eq!(
            rising_product(&IntPoly::x(), &IntPoly::one(), 0),
            IntPoly::one()
        );
    }

    #[test]
    fn display_reads_ascending() {
        assert_eq!(IntPoly::from_i64s(&[14, 8, 2]).to_string(), "14 + 8*x + 2*x^2");
        assert_eq!(IntPoly::from_i64s(&[0, 1]).to_string(), "x");
        assert_eq!(IntPoly::from_i64s(&[5, -1]).to_string(), "5 - x");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn coeff_strings_dense() {
        assert_eq!(IntPoly::from_i64s(&[42, 0, 26]).coeff_strings(), ["42", "0", "26"]);
        assert_eq!(IntPoly::zero().coeff_strings(), ["0"]);
    }

    #[test]
    fn bipoly_mul_and_specialize() {
        // (1 + x*q) * (1 + q) = 1 + q + x*q + x*q^2
        let a = BiPoly::one().add(&BiPoly::monomial(BigInt::one(), 1, 1));
        let b = BiPoly::one().add(&BiPoly::monomial(BigInt::one(), 0, 1));
        let p = a.mul(&b);
        assert_eq!(p.coeff(0, 0), BigInt::one());
        assert_eq!(p.coeff(0, 1), BigInt::one());
        assert_eq!(p.coeff(1, 1), BigInt::one());
        assert_eq!(p.coeff(1, 2), BigInt::one());
        assert_eq!(p.coeff(1, 0), BigInt::zero());
        assert_eq!(p.at_q_one(), IntPoly::from_i64s(&[2, 2]));
        assert_eq!(p.at_x_one(), IntPoly::from_i64s(&[1, 2, 1]));
    }

    #[test]
    fn q_integers_and_factorials() {
        assert!(q_integer(0).is_zero());
        assert_eq!(q_integer(3), IntPoly::from_i64s(&[1, 1, 1]));
        // [3]_q! = (1+q)(1+q+q^2) = 1 + 2q + 2q^2 + q^3
        assert_eq!(q_factorial(3), IntPoly::from_i64s(&[1, 2, 2, 1]));
    }

    #[test]
    fn bipoly_display() {
        let p = BiPoly::from_q_poly(&IntPoly::from_i64s(&[1, 2]))
            .add(&BiPoly::monomial(BigInt::from(3), 2, 1));
        assert_eq!(p.to_string(), "1 + 2*q + 3*x^2*q");
    }
}
