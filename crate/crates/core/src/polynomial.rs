//! The partial-dual genus polynomial: the generating function of the
//! (Euler) genera of all `2^|E|` partial duals of a map.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::genus::genus_change_mask;
use crate::map::FlagMap;
use crate::partial_dual::{partial_dual, EdgeSet};

pub const DEFAULT_MAX_EDGES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolynomialError {
    #[error("map has {edges} edges, enumeration is limited to {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("genus mode requires an orientable map")]
    NonOrientableInGenusMode,
    #[error("subset {subset}: fast path gives Euler genus {fast}, direct dual gives {direct}")]
    OracleMismatch {
        subset: String,
        fast: i64,
        direct: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusMode {
    /// Exponent is the orientable genus `γ / 2`.
    Genus,
    /// Exponent is the Euler genus `γ`.
    EulerGenus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialOptions {
    /// `None` picks `Genus` for orientable maps and `EulerGenus` otherwise.
    pub mode: Option<GenusMode>,
    pub max_edges: usize,
    /// Recompute every exponent by direct dualization and compare.
    pub verify: bool,
    pub parallel: bool,
}

impl Default for PolynomialOptions {
    fn default() -> Self {
        PolynomialOptions {
            mode: None,
            max_edges: DEFAULT_MAX_EDGES,
            verify: false,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusPolynomial {
    pub mode: GenusMode,
    coefficients: BTreeMap<usize, u64>,
}

impl GenusPolynomial {
    pub fn new(mode: GenusMode, coefficients: BTreeMap<usize, u64>) -> Self {
        let coefficients = coefficients.into_iter().filter(|&(_, c)| c > 0).collect();
        GenusPolynomial { mode, coefficients }
    }

    pub fn coefficients(&self) -> &BTreeMap<usize, u64> {
        &self.coefficients
    }

    pub fn coefficient(&self, exponent: usize) -> u64 {
        self.coefficients.get(&exponent).copied().unwrap_or(0)
    }

    /// Value at `z = 1`, i.e. the number of subsets counted.
    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// `exponent,count` lines in ascending exponent order.
    pub fn to_csv(&self) -> String {
        self.coefficients
            .iter()
            .map(|(e, c)| format!("{e},{c}\n"))
            .collect()
    }
}

impl fmt::Display for GenusPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return f.write_str("0");
        }
        for (i, (&e, &c)) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (e, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("z")?,
                (1, c) => write!(f, "{c}*z")?,
                (e, 1) => write!(f, "z^{e}")?,
                (e, c) => write!(f, "{c}*z^{e}")?,
            }
        }
        Ok(())
    }
}

pub fn format_polynomial(p: &GenusPolynomial) -> String {
    p.to_string()
}

/// Enumerates every subset `A ⊆ E` and counts the genus of `m^A`.
///
/// Exponents come from `γ(m) + genus_change(m, A)`; with `verify` set each
/// one is also recomputed from the dualized map.
pub fn pd_genus_polynomial(
    m: &FlagMap,
    options: &PolynomialOptions,
) -> Result<GenusPolynomial, PolynomialError> {
    let k = m.edge_count();
    if k > options.max_edges || k >= 64 {
        return Err(PolynomialError::TooManyEdges {
            edges: k,
            max: options.max_edges,
        });
    }
    let orientable = m.is_orientable();
    let mode = options.mode.unwrap_or(if orientable {
        GenusMode::Genus
    } else {
        GenusMode::EulerGenus
    });
    if mode == GenusMode::Genus && !orientable {
        return Err(PolynomialError::NonOrientableInGenusMode);
    }
    let base = m.metrics().euler_genus as i64;
    let dual = m.total_dual();
    let exponent = |mask: u64| -> Result<usize, PolynomialError> {
        let fast = base + genus_change_mask(m, &dual, mask);
        if options.verify {
            let a = EdgeSet::from_mask(m, mask);
            let direct = partial_dual(m, &a)
                .expect("mask selects existing edges")
                .metrics()
                .euler_genus as i64;
            if fast != direct {
                return Err(PolynomialError::OracleMismatch {
                    subset: a.to_string(),
                    fast,
                    direct,
                });
            }
        }
        let gamma = usize::try_from(fast).expect("Euler genus is nonnegative");
        Ok(match mode {
            GenusMode::Genus => gamma / 2,
            GenusMode::EulerGenus => gamma,
        })
    };
    let count_range =
        |range: std::ops::Range<u64>| -> Result<BTreeMap<usize, u64>, PolynomialError> {
            let mut acc = BTreeMap::new();
            for mask in range {
                *acc.entry(exponent(mask)?).or_insert(0) += 1;
            }
            Ok(acc)
        };

    let total = 1u64 << k;
    let coefficients = if options.parallel && k >= 8 {
        let chunk = 1u64 << (k - 6).min(12);
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|i| count_range(i * chunk..((i + 1) * chunk).min(total)))
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (e, c) in b {
                    *a.entry(e).or_insert(0) += c;
                }
                Ok(a)
            })?
    } else {
        count_range(0..total)?
    };
    Ok(GenusPolynomial::new(mode, coefficients))
}
