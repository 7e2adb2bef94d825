use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symgroup::{permutations_of_subset, Permutation};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    /// `(k, 1^(n-k))`, the cycle type of a `k`-cycle in `S_n`.
    pub fn hook(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k <= n);
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, n - k));
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `content[k-1] = #{i : α_i = k}`, for `k = 1..=α_1`.
    pub fn content(&self) -> Vec<usize> {
        let max = self.parts.first().copied().unwrap_or(0);
        let mut c = vec![0; max];
        for &p in &self.parts {
            c[p - 1] += 1;
        }
        c
    }

    /// Transposed Young diagram.
    pub fn conjugate(&self) -> Self {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count())
            .collect();
        Self { parts }
    }

    /// Size of the conjugacy class of `S_n` with this cycle type:
    /// `n! / Π_k k^{c_k} c_k!`.
    pub fn class_size(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (k, &c) in self.content().iter().enumerate() {
            denom *= BigUint::from(k + 1).pow(c as u32) * factorial(c);
        }
        factorial(self.size()) / denom
    }

    /// Partitions of `n - 1` obtained by removing one box.
    pub fn branch_down(&self) -> Vec<Partition> {
        let r = self.parts.len();
        (0..r)
            .filter(|&i| i + 1 == r || self.parts[i] > self.parts[i + 1])
            .map(|i| {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                if parts[i] == 0 {
                    parts.pop();
                }
                Partition { parts }
            })
            .collect()
    }

    /// Permutations of `{1..n}` that fix the complement of `support` and whose
    /// restriction to `support` has this cycle type.
    pub fn class_elements_on(&self, n: usize, support: &[usize]) -> Result<Vec<Permutation>> {
        if support.len() != self.size() {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                got: support.len(),
            });
        }
        check_indices(n, support)?;
        Ok(permutations_of_subset(n, support)
            .into_iter()
            .filter(|p| p.cycle_type_on(support).as_ref() == Some(self))
            .collect())
    }

    /// Whether permutations of this cycle type are even.
    pub fn is_even_class(&self) -> bool {
        (self.size() - self.len()).is_multiple_of(2)
    }
}

pub(crate) fn check_indices(n: usize, indices: &[usize]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    for &i in indices {
        if i == 0 || i > n || seen[i] {
            return Err(Error::BadIndices {
                indices: indices.to_vec(),
                n,
            });
        }
        seen[i] = true;
    }
    Ok(())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// All partitions of `n` in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(remaining: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition {
                parts: prefix.clone(),
            });
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            prefix.push(p);
            go(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `4,1`, `(4,1)` or `4 1`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| Error::InvalidPartition(s.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Partition::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
