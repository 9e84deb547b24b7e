//! Morphisms of OI and the transforms the module layer is built from.
//!
//! An increasing map `[m] -> [n]` is stored as its value sequence. The
//! lexicographic order on value sequences is the basis order used for every
//! coordinate vector in this crate.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{OiError, Result};

/// A strictly increasing map `[source] -> [target]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IncreasingMap {
    target: usize,
    values: Vec<usize>,
}

impl IncreasingMap {
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if let Some(&first) = values.first() {
            if first == 0 {
                return Err(OiError::InvalidMap(format!("{values:?}: values start at 1")));
            }
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OiError::InvalidMap(format!(
                "{values:?} is not strictly increasing"
            )));
        }
        if values.last().is_some_and(|&v| v > target) {
            return Err(OiError::InvalidMap(format!(
                "{values:?} does not land in [{target}]"
            )));
        }
        Ok(IncreasingMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        IncreasingMap {
            target: n,
            values: (1..=n).collect(),
        }
    }

    /// The unique map `[0] -> [n]`.
    pub fn empty(n: usize) -> Self {
        IncreasingMap {
            target: n,
            values: Vec::new(),
        }
    }

    pub fn source(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Value at `h`, 1-based like the maps themselves.
    pub fn at(&self, h: usize) -> usize {
        self.values[h - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.source() == self.target
    }
}

impl fmt::Display for IncreasingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({}):[{}]->[{}]", vals.join(","), self.source(), self.target)
    }
}

/// `C(n, k)` as a big integer; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` for counts that index coordinates. Panics on overflow, which the
/// degree cap rules out in practice.
pub(crate) fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    usize::try_from(acc).expect("binomial coefficient overflows usize")
}

/// All increasing maps `[m] -> [n]` in lexicographic order of value sequences.
pub fn enumerate_maps(m: usize, n: usize) -> Result<Vec<IncreasingMap>> {
    crate::check_degree(n)?;
    crate::check_degree(m)?;
    let mut out = Vec::with_capacity(binom(n, m));
    if m > n {
        return Ok(out);
    }
    let mut cur: Vec<usize> = (1..=m).collect();
    loop {
        out.push(IncreasingMap {
            target: n,
            values: cur.clone(),
        });
        // Rightmost position that can still move up.
        let Some(h) = (0..m).rev().find(|&h| cur[h] < n - (m - 1 - h)) else {
            break;
        };
        cur[h] += 1;
        for g in h + 1..m {
            cur[g] = cur[g - 1] + 1;
        }
    }
    Ok(out)
}

/// Position of `alpha` in [`enumerate_maps`] order.
pub fn rank_map(alpha: &IncreasingMap) -> usize {
    let m = alpha.source();
    let n = alpha.target;
    let mut rank = 0;
    let mut prev = 0;
    for (h, &v) in alpha.values.iter().enumerate() {
        for skipped in prev + 1..v {
            rank += binom(n - skipped, m - h - 1);
        }
        prev = v;
    }
    rank
}

/// Inverse of [`rank_map`].
pub fn unrank_map(m: usize, n: usize, index: usize) -> Result<IncreasingMap> {
    crate::check_degree(n)?;
    let count = binom(n, m);
    if index >= count {
        return Err(OiError::RankOutOfRange {
            index: index as u128,
            source_size: m,
            target: n,
            count: count as u128,
        });
    }
    let mut rest = index;
    let mut values = Vec::with_capacity(m);
    let mut v = 1;
    for h in 0..m {
        loop {
            let block = binom(n - v, m - h - 1);
            if rest < block {
                break;
            }
            rest -= block;
            v += 1;
        }
        values.push(v);
        v += 1;
    }
    Ok(IncreasingMap { target: n, values })
}

/// `beta ∘ alpha`.
pub fn compose(beta: &IncreasingMap, alpha: &IncreasingMap) -> Result<IncreasingMap> {
    if alpha.target != beta.source() {
        return Err(OiError::ComposeMismatch {
            inner_target: alpha.target,
            outer_source: beta.source(),
        });
    }
    Ok(IncreasingMap {
        target: beta.target,
        values: alpha.values.iter().map(|&h| beta.at(h)).collect(),
    })
}

/// The map `[n] -> [n+1]`, `h ↦ h + 1`.
pub fn iota(n: usize) -> IncreasingMap {
    IncreasingMap {
        target: n + 1,
        values: (2..=n + 1).collect(),
    }
}

/// The self-embedding of OI on morphisms: prepend 1 and shift everything up.
pub fn sigma_lift(alpha: &IncreasingMap) -> IncreasingMap {
    let mut values = Vec::with_capacity(alpha.source() + 1);
    values.push(1);
    values.extend(alpha.values.iter().map(|v| v + 1));
    IncreasingMap {
        target: alpha.target + 1,
        values,
    }
}

/// `alpha_E`: the values of `subset` followed by `alpha` pushed past `[r]`.
pub fn embed_prefix(alpha: &IncreasingMap, subset: &[usize], r: usize) -> Result<IncreasingMap> {
    let valid = subset.first().map_or(true, |&e| e >= 1)
        && subset.windows(2).all(|w| w[0] < w[1])
        && subset.last().map_or(true, |&e| e <= r);
    if !valid {
        return Err(OiError::SubsetOutOfRange(subset.to_vec(), r));
    }
    let mut values = Vec::with_capacity(subset.len() + alpha.source());
    values.extend_from_slice(subset);
    values.extend(alpha.values.iter().map(|v| v + r));
    Ok(IncreasingMap {
        target: alpha.target + r,
        values,
    })
}

/// Splits `gamma` into the part landing in `[r]` and a residual map on the rest.
/// Inverse of [`embed_prefix`].
pub fn decompose_shifted(gamma: &IncreasingMap, r: usize) -> Result<(Vec<usize>, IncreasingMap)> {
    if gamma.target < r {
        return Err(OiError::ShiftTooLarge {
            r,
            target: gamma.target,
        });
    }
    let split = gamma.values.partition_point(|&v| v <= r);
    let subset = gamma.values[..split].to_vec();
    let residual = IncreasingMap {
        target: gamma.target - r,
        values: gamma.values[split..].iter().map(|v| v - r).collect(),
    };
    Ok((subset, residual))
}

/// Translates `alpha` so that it starts at 1. Returns the old first value.
pub fn hat(alpha: &IncreasingMap) -> Result<(usize, IncreasingMap)> {
    let Some(&first) = alpha.values.first() else {
        return Err(OiError::EmptyMap);
    };
    let values = alpha.values.iter().map(|v| v - first + 1).collect();
    Ok((
        first,
        IncreasingMap {
            target: alpha.target - first + 1,
            values,
        },
    ))
}

/// Subsets of `[r]` of size at most `max_size`, ordered by size and then
/// lexicographically.
pub fn subsets_by_size(r: usize, max_size: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for size in 0..=max_size.min(r) {
        out.extend(enumerate_maps(size, r)?.into_iter().map(|m| m.values));
    }
    Ok(out)
}
