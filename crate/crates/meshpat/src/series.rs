//! Named exponential generating function pipelines.
//!
//! Each closed-form family in this crate has an EGF with a simple shape,
//! and several distribution identities are cleanest at the series level:
//! a convolution over positions becomes a product of series, and an
//! insertion recursion becomes an integral relation. This module builds
//! those series term by term as [`EgfSeries`] values so the identities
//! can be checked exactly to any finite order, and gives each pipeline a
//! stable name for the command line.

use std::fmt;
use std::str::FromStr;

use crate::egf::EgfSeries;
use crate::error::{Error, Result};
use crate::poly::IntPoly;
use crate::recursions;

/// Series whose term of order `n` is `n! x^n`, the expansion of
/// `1/(1 - tx)`.
pub fn geom_x_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| {
        IntPoly::monomial(recursions::factorial(n), n)
    })
}

/// Full series of the single-quadrant family: term `n` is the
/// distribution polynomial over all of `S_n`. Expands `(1 - tx)^(-1/x)`.
pub fn r1000_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| recursions::r_k000_closed(1, n))
}

/// Full series of the two-corner family requiring a point above-right
/// and a point below-right. This one has no product form starting at
/// term 0, so terms come straight from the closed form.
pub fn r1001_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| recursions::r_ab00_closed(1, 1, n))
}

/// Tail series of the at-least-k above-right family, starting at size
/// `k`: term `m` is the distribution over `S_{k+m}`. Expands
/// `k! (1 - tx)^(-(k/x + 1))`.
pub fn p_k000_series(k: u32, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |m| recursions::r_k000_closed(k, k as usize + m))
}

/// Tail series of the exactly-k above-right family, starting at size
/// `k`. Expands `k! / (1 - t)^(x + k)`.
pub fn p_eqk000_series(k: u32, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |m| recursions::r_eqk000_closed(k, k as usize + m))
}

/// Series of rising factorials `x(x+1)...(x+n-1)`, the expansion of
/// `(1/(1 - t))^x`. Term `n` is the distribution of the empty-quadrant
/// pattern, whose coefficients are the cycle-counting Stirling numbers.
pub fn r_e000_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, recursions::r_empty000)
}

/// Full series of the family with at least `k` above-right and nothing
/// above-left.
pub fn r_kempty_series(k: u32, order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |n| recursions::r_kempty00_closed(k, n))
}

/// Full series of the `k <= max` family, built by the integral pipeline:
/// multiply the series for `k - 1` with nothing above-left by
/// `1/(1 - t)` and integrate with constant term 1. For `k = 1` the
/// family coincides with the no-above-left family itself, so that series
/// is returned directly.
pub fn r_kmax_series(k: u32, order: usize) -> Result<EgfSeries> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "the max-quadrant family needs k >= 1".into(),
        ));
    }
    if k == 1 {
        return Ok(r_kempty_series(1, order));
    }
    if order == 0 {
        return Ok(EgfSeries::new(vec![IntPoly::one()]));
    }
    Ok(r_kempty_series(k - 1, order - 1)
        .geom_mul()
        .integrate(IntPoly::one()))
}

/// One-before-n class series for the pattern requiring above-right and
/// below-left points: term `m` is the class polynomial for `S_{m+2}`.
/// Expands `(1 - tx)^(-(2/x) - 1)`.
pub fn b1010_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |m| {
        recursions::b1010_closed(m + 2).expect("size m + 2 is always >= 2")
    })
}

/// One-before-n class series for the pattern with the below-right corner
/// also required. Expands `(1 - tx)^(-3/x)`.
pub fn b1011_series(order: usize) -> EgfSeries {
    EgfSeries::from_fn(order, |m| {
        recursions::b1011_closed(m + 2).expect("size m + 2 is always >= 2")
    })
}

/// Series over the glued-block classes for the full corner pattern: term
/// `m` is the class polynomial for `S_{L+m}` where `L` is the block
/// length. The terms do not depend on how the block splits into a top
/// and bottom run, which is why a single series covers every block; it
/// factors as the single-quadrant series times the two-corner series.
pub fn block_1011_series(order: usize) -> EgfSeries {
    r1000_series(order).mul(&r1001_series(order))
}

/// Identifier for a named series pipeline, as accepted on the command
/// line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesId {
    PK000,
    PEqK000,
    RE000,
    RKEmpty00,
    RKMax,
    B1010,
    B1011,
    Block1011,
}

impl SeriesId {
    pub const ALL: [SeriesId; 8] = [
        SeriesId::PK000,
        SeriesId::PEqK000,
        SeriesId::RE000,
        SeriesId::RKEmpty00,
        SeriesId::RKMax,
        SeriesId::B1010,
        SeriesId::B1011,
        SeriesId::Block1011,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesId::PK000 => "p_k000",
            SeriesId::PEqK000 => "p_eqk000",
            SeriesId::RE000 => "r_e000",
            SeriesId::RKEmpty00 => "r_kempty00",
            SeriesId::RKMax => "r_kmax",
            SeriesId::B1010 => "b_1010",
            SeriesId::B1011 => "b_1011",
            SeriesId::Block1011 => "block_1011",
        }
    }

    /// Whether the pipeline takes the quadrant bound `k` as a parameter.
    pub fn requires_k(self) -> bool {
        matches!(
            self,
            SeriesId::PK000 | SeriesId::PEqK000 | SeriesId::RKEmpty00 | SeriesId::RKMax
        )
    }
}

impl fmt::Display for SeriesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SeriesId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        SeriesId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == lower)
            .ok_or_else(|| {
                let names: Vec<&str> = SeriesId::ALL.iter().map(|id| id.name()).collect();
                Error::Parse(format!(
                    "unknown series id {:?}, expected one of {}",
                    s,
                    names.join(", ")
                ))
            })
    }
}

/// Build the series named by `id` up to the given order. Families
/// indexed by `k` read it from the `k` argument and reject a missing
/// one; the rest ignore it.
pub fn series_by_id(id: SeriesId, k: Option<u32>, order: usize) -> Result<EgfSeries> {
    let need_k = || {
        k.ok_or_else(|| Error::InvalidInput(format!("series {} needs a k parameter", id)))
    };
    match id {
        SeriesId::PK000 => Ok(p_k000_series(need_k()?, order)),
        SeriesId::PEqK000 => Ok(p_eqk000_series(need_k()?, order)),
        SeriesId::RE000 => Ok(r_e000_series(order)),
        SeriesId::RKEmpty00 => Ok(r_kempty_series(need_k()?, order)),
        SeriesId::RKMax => r_kmax_series(need_k()?, order),
        SeriesId::B1010 => Ok(b1010_series(order)),
        SeriesId::B1011 => Ok(b1011_series(order)),
        SeriesId::Block1011 => Ok(block_1011_series(order)),
    }
}
