//! Compositions of r, the dominance order, duality, and strict dominance
//! chains. A composition may contain interior zero parts; trailing zeros are
//! trimmed on construction, so (1,0,2) and (1,2) are distinct while (1,2,0)
//! and (1,2) are equal.

use std::fmt;

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts after trailing-zero trimming.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The integer being composed.
    pub fn r(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    /// 1-based part access; parts beyond the length are zero.
    pub fn part(&self, i: usize) -> u32 {
        if i >= 1 && i <= self.parts.len() {
            self.parts[i - 1]
        } else {
            0
        }
    }

    pub fn has_interior_zero(&self) -> bool {
        self.parts.contains(&0)
    }

    /// Weakly decreasing with no zero parts.
    pub fn is_partition(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] >= w[1]) && !self.parts.contains(&0)
    }

    /// Partial sums over the first k parts, k = 1..=len.
    pub fn prefix_sums(&self) -> Vec<u32> {
        let mut acc = 0;
        self.parts
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect()
    }

    /// The blocks P_1, P_2, ... of {1..r} as half-open 1-based ranges; zero
    /// parts give empty blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut start = 1usize;
        for &p in &self.parts {
            out.push((start, start + p as usize));
            start += p as usize;
        }
        out
    }

    /// 1-based index of the block containing the 1-based value v.
    pub fn block_of(&self, v: usize) -> Option<usize> {
        let mut end = 0usize;
        for (i, &p) in self.parts.iter().enumerate() {
            end += p as usize;
            if v <= end {
                return Some(i + 1);
            }
        }
        None
    }

    /// Dominance: self is dominated by other when every partial sum of self
    /// is at most the corresponding partial sum of other.
    pub fn dominance_leq(&self, other: &Composition) -> bool {
        debug_assert_eq!(self.r(), other.r());
        let a = self.prefix_sums();
        let b = other.prefix_sums();
        let r = self.r() as u32;
        let n = a.len().max(b.len());
        for i in 0..n {
            let x = a.get(i).copied().unwrap_or(r);
            let y = b.get(i).copied().unwrap_or(r);
            if x > y {
                return false;
            }
        }
        true
    }

    /// The dual composition, lambda'_i = #{k : lambda_k >= i}; always a
    /// partition.
    pub fn dual(&self) -> Composition {
        let max = self.parts.iter().copied().max().unwrap_or(0);
        let parts = (1..=max)
            .map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32)
            .collect();
        Composition::new(parts)
    }

    /// Parts sorted into weakly decreasing order.
    pub fn sorted_desc(&self) -> Composition {
        let mut parts = self.parts.clone();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Composition::new(parts)
    }

    pub fn parse(s: &str) -> Result<Composition, Error> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("bad composition part {:?}", t)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty composition".into()));
        }
        Ok(Composition::new(parts))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let strs: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", strs.join(","))
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// The order relation of Dipper and James: lambda <= mu iff mu' is dominated
/// by lambda'.
pub fn dj_leq(lambda: &Composition, mu: &Composition) -> bool {
    mu.dual().dominance_leq(&lambda.dual())
}

/// All compositions of r with at most max_len parts (trailing zeros trimmed,
/// interior zeros allowed), in lexicographic order by part sequence.
pub fn compositions_of(r: usize, max_len: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut prefix: Vec<u32> = Vec::new();
    fn rec(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            if prefix.last() != Some(&0) && !prefix.is_empty() {
                out.push(Composition::new(prefix.clone()));
            }
            return;
        }
        if slots == 0 {
            return;
        }
        for p in 0..=remaining {
            prefix.push(p);
            rec(remaining - p, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    rec(r as u32, max_len, &mut prefix, &mut out);
    out.sort_unstable_by(|a, b| a.parts.cmp(&b.parts));
    out.dedup();
    out
}

/// All partitions of r, in lexicographic order by part sequence.
pub fn partitions_of(r: usize) -> Vec<Composition> {
    compositions_of(r, r)
        .into_iter()
        .filter(|c| c.is_partition())
        .collect()
}

/// Compositions mu of the same r with lambda dominated by mu; every such mu
/// has at most len(lambda) parts. Ordered lexicographically.
pub fn dominating_compositions(lambda: &Composition) -> Vec<Composition> {
    compositions_of(lambda.r(), lambda.len())
        .into_iter()
        .filter(|mu| lambda.dominance_leq(mu))
        .collect()
}

/// The least partition dominating mu in the dominance order. The minimum
/// exists; its uniqueness is asserted against the full candidate set.
pub fn bar(mu: &Composition) -> Composition {
    let candidates: Vec<Composition> = partitions_of(mu.r())
        .into_iter()
        .filter(|nu| mu.dominance_leq(nu))
        .collect();
    let least = candidates
        .iter()
        .find(|nu| candidates.iter().all(|other| nu.dominance_leq(other)))
        .unwrap_or_else(|| panic!("no least dominating partition for {}", mu));
    least.clone()
}

/// mu is a quasi-partition when the least dominating partition equals the
/// sorted rearrangement of mu.
pub fn is_quasi_partition(mu: &Composition) -> bool {
    bar(mu) == mu.sorted_desc()
}

/// lambda is tame when every composition dominating it is a quasi-partition.
pub fn is_tame(lambda: &Composition) -> bool {
    dominating_compositions(lambda)
        .iter()
        .all(is_quasi_partition)
}

/// Strict dominance chains lambda = s[0] < s[1] < ... < s[n] of length n,
/// ordered lexicographically by the sequence (s[1], ..., s[n]).
pub fn chains_of_length(lambda: &Composition, n: usize) -> Vec<Vec<Composition>> {
    let mut out = Vec::new();
    let mut prefix = vec![lambda.clone()];
    fn rec(prefix: &mut Vec<Composition>, left: usize, out: &mut Vec<Vec<Composition>>) {
        if left == 0 {
            out.push(prefix.clone());
            return;
        }
        let cur = prefix.last().unwrap().clone();
        for mu in crate::cache::successors(&cur).iter() {
            prefix.push(mu.clone());
            rec(prefix, left - 1, out);
            prefix.pop();
        }
    }
    rec(&mut prefix, n, &mut out);
    out
}

/// The largest n with a strict dominance chain of length n starting at
/// lambda.
pub fn a_of(lambda: &Composition) -> usize {
    fn height(c: &Composition) -> usize {
        crate::cache::successors(c)
            .iter()
            .map(|mu| 1 + height(mu))
            .max()
            .unwrap_or(0)
    }
    height(lambda)
}
