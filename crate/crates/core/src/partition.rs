//! k-strict partitions and the enumerations used by the sweeps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition whose parts strictly greater than `k` are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KStrictPartition {
    k: usize,
    parts: Vec<usize>,
}

impl KStrictPartition {
    /// Validates and normalises (trailing zeros dropped).
    pub fn new(k: usize, parts: &[usize]) -> Result<Self> {
        let mut parts = parts.to_vec();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotPartition(format!("{parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] == w[1] && w[0] > k) {
            return Err(Error::NotKStrict(format!("{parts:?} with k={k}")));
        }
        Ok(KStrictPartition { k, parts })
    }

    pub fn empty(k: usize) -> Self {
        KStrictPartition { k, parts: Vec::new() }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// One-based part access; zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts strictly greater than `k`.
    pub fn k_length(&self) -> usize {
        self.parts.iter().filter(|&&p| p > self.k).count()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Height of column `c` (one-based).
    pub fn column_height(&self, c: usize) -> usize {
        self.parts.iter().filter(|&&p| p >= c).count()
    }

    pub fn contains(&self, other: &KStrictPartition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }

    /// Fits inside the `(n-k) × (n+k)` rectangle.
    pub fn fits_rank(&self, n: usize) -> bool {
        n >= self.k && self.len() <= n - self.k && self.part(1) <= n + self.k
    }

    /// Smallest rank `n` with the partition inside `P(k, n)` (at least `k+1`).
    pub fn min_rank(&self) -> usize {
        let a = self.len() + self.k;
        let b = self.part(1).saturating_sub(self.k);
        a.max(b).max(self.k + 1)
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.parts.iter().map(|&p| p as i64).collect()
    }
}

impl fmt::Display for KStrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// Dominance order on partitions of equal weight: `a ⪰ b`.
pub fn dominates(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..n {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// Is the multiset of parts (sorted decreasingly) k-strict?
pub fn is_k_strict_parts(parts: &[usize], k: usize) -> bool {
    parts.windows(2).all(|w| w[0] >= w[1] && (w[0] != w[1] || w[0] <= k))
}

/// All partitions of `n` with parts at most `max_part`, decreasing.
pub fn partitions_of(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in (1..=n.min(max)).rev() {
            prefix.push(p);
            go(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, max_part, &mut Vec::new(), &mut out);
    out
}

/// All k-strict partitions of weight exactly `n`.
pub fn k_strict_of_weight(k: usize, n: usize) -> Vec<KStrictPartition> {
    partitions_of(n, n)
        .into_iter()
        .filter(|p| is_k_strict_parts(p, k))
        .map(|p| KStrictPartition { k, parts: p })
        .collect()
}

/// All k-strict partitions of weight at most `max_weight`, by weight.
pub fn k_strict_up_to(k: usize, max_weight: usize) -> Vec<KStrictPartition> {
    (0..=max_weight)
        .flat_map(|n| k_strict_of_weight(k, n))
        .collect()
}

/// All k-strict partitions in `P(k, n)`.
pub fn k_strict_in_rank(k: usize, n: usize) -> Vec<KStrictPartition> {
    let rows = n - k;
    let cols = n + k;
    k_strict_up_to(k, rows * cols)
        .into_iter()
        .filter(|p| p.fits_rank(n))
        .collect()
}

/// All k-strict partitions contained in `lam` (componentwise).
pub fn k_strict_subpartitions(lam: &KStrictPartition) -> Vec<KStrictPartition> {
    let mut out = Vec::new();
    fn go(
        lam: &KStrictPartition,
        i: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<KStrictPartition>,
    ) {
        if i > lam.len() {
            out.push(KStrictPartition::new(lam.k(), prefix).expect("built k-strict"));
            return;
        }
        let upper = match prefix.last() {
            Some(&prev) => lam.part(i).min(prev),
            None => lam.part(i),
        };
        for p in 0..=upper {
            if let Some(&prev) = prefix.last() {
                if p == prev && p > lam.k() {
                    continue;
                }
            }
            prefix.push(p);
            go(lam, i + 1, prefix, out);
            prefix.pop();
        }
    }
    go(lam, 1, &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}
