use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::symgroup::Partition;

/// A bijection of `{1..n}`.
///
/// Images are stored zero-based internally; every public accessor speaks
/// one-based indices. The derived ordering is lexicographic on image arrays.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "degree {n} too large");
        Self {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from one-based images (`images[i-1]` is the image of `i`).
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Self {
            images: images.iter().map(|&x| (x - 1) as u8).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| x as usize == i)
        });
        Self { images }
    }

    /// Builds a permutation of degree `n` from disjoint cycles in one-based notation.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(Error::InvalidPermutation(format!("cycles {cycles:?} on {n} points")));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// The transposition `(i j)`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::BadIndices { indices: vec![i, j], n });
        }
        Self::from_cycles(n, &[vec![i, j]])
    }

    /// The adjacent transposition `s_i = (i, i+1)`.
    pub fn adjacent(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i < n, "s_{i} is not defined in S_{n}");
        let mut p = Self::identity(n);
        p.images.swap(i - 1, i);
        p
    }

    /// Parses one-line cycle notation such as `"(1 3)(2 5)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(text.to_string());
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let cycle = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    /// One-based image array.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i)
    }

    /// `i ↦ self(other(i))`: the right factor acts first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Self { images: inv }
    }

    /// `π σ π⁻¹`: relabels every point `i` in the cycles of `σ` by `π(i)`.
    pub fn conjugate_by(&self, pi: &Self) -> Result<Self> {
        Ok(pi.compose(self)?.compose_unchecked(&pi.inverse()))
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i + 1);
                i = self.images[i] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle type, fixed points included.
    pub fn cycle_type(&self) -> Partition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i] as usize;
            }
            parts.push(len);
        }
        Partition::from_unsorted(parts)
    }

    /// Cycle type of the restriction to `support`, or `None` when the
    /// permutation moves a point outside `support`.
    pub fn cycle_type_on(&self, support: &[usize]) -> Option<Partition> {
        let n = self.degree();
        let mut inside = vec![false; n];
        for &a in support {
            inside[a - 1] = true;
        }
        if (0..n).any(|i| !inside[i] && self.images[i] as usize != i) {
            return None;
        }
        let mut seen = vec![false; n];
        let mut parts = Vec::new();
        for &a in support {
            let start = a - 1;
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                i = self.images[i] as usize;
            }
            parts.push(len);
        }
        Some(Partition::from_unsorted(parts))
    }

    pub fn inversions(&self) -> usize {
        let p = &self.images;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    pub fn is_even(&self) -> bool {
        let n = self.degree();
        (n - self.cycle_type().len()).is_multiple_of(2)
    }

    pub fn fixed_points(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .count()
    }

    /// Word `[a1, …, ak]` with `self = s_{a1} s_{a2} ⋯ s_{ak}` under [`compose`](Self::compose).
    ///
    /// Obtained by bubble-sorting the image array; the length equals the
    /// number of inversions.
    pub fn adjacent_factorization(&self) -> Vec<usize> {
        let mut p = self.images.clone();
        let mut swaps = Vec::new();
        let n = p.len();
        loop {
            let mut changed = false;
            for i in 0..n.saturating_sub(1) {
                if p[i] > p[i + 1] {
                    // p ∘ s_{i+1} swaps positions i and i+1
                    p.swap(i, i + 1);
                    swaps.push(i + 1);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        swaps.reverse();
        swaps
    }

    /// Lexicographic rank among all permutations of the same degree.
    pub fn rank(&self) -> usize {
        let p = &self.images;
        let n = p.len();
        let mut rank = 0;
        for i in 0..n {
            let smaller = (i + 1..n).filter(|&j| p[j] < p[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }

    /// Embeds into `S_m`, `m ≥ n`, fixing the new points.
    pub fn embed(&self, m: usize) -> Self {
        assert!(m >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u8..m as u8);
        Self { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// All permutations of `{1..n}` in lexicographic order of image arrays.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut current: Vec<u8> = (0..n as u8).collect();
    let mut out = Vec::new();
    loop {
        out.push(Permutation::from_zero_based(current.clone()));
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// All permutations fixing every point outside `support`, in lexicographic order.
pub fn permutations_of_subset(n: usize, support: &[usize]) -> Vec<Permutation> {
    let mut sorted = support.to_vec();
    sorted.sort_unstable();
    let k = sorted.len();
    all_permutations(k)
        .into_iter()
        .map(|local| {
            let mut images: Vec<u8> = (0..n as u8).collect();
            for (a, &x) in sorted.iter().enumerate() {
                images[x - 1] = (sorted[local.raw()[a] as usize] - 1) as u8;
            }
            Permutation::from_zero_based(images)
        })
        .collect()
}

/// Whether `generators` generate all of `S_n`, by closure under right multiplication.
///
/// Exhaustive; intended for `n ≤ 8`.
pub fn generates_symmetric_group(n: usize, generators: &[Permutation]) -> bool {
    use std::collections::HashSet;
    let total: usize = (1..=n).product();
    let mut seen: HashSet<Permutation> = HashSet::new();
    let id = Permutation::identity(n);
    let mut frontier = vec![id.clone()];
    seen.insert(id);
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.compose_unchecked(g);
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    seen.len() == total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn compose_examples() {
        let t = cyc(3, "(1 2)");
        assert!(t.compose(&t).unwrap().is_identity());
        // i ↦ (13)((23)(i)): 1→3, 3→2, 2→1
        let p = cyc(3, "(1 3)").compose(&cyc(3, "(2 3)")).unwrap();
        assert_eq!(p.images(), vec![3, 1, 2]);
        assert_eq!(p, cyc(3, "(1 3 2)"));
        let q = cyc(4, "(1 4 2)");
        assert_eq!(Permutation::identity(4).compose(&q).unwrap(), q);
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3).compose(&Permutation::identity(4));
        assert!(matches!(err, Err(Error::DegreeMismatch { left: 3, right: 4 })));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(cyc(4, "(1 2)").cycle_type().parts(), &[2, 1, 1]);
        assert_eq!(cyc(5, "(1 2 3 4)").cycle_type().parts(), &[4, 1]);
    }

    #[test]
    fn factorization_examples() {
        assert!(Permutation::identity(4).adjacent_factorization().is_empty());
        assert_eq!(cyc(3, "(1 2)").adjacent_factorization(), vec![1]);
        let w = cyc(3, "(1 3)").adjacent_factorization();
        assert_eq!(w.len(), 3);
        let rebuilt = w
            .iter()
            .fold(Permutation::identity(3), |acc, &i| acc.compose(&Permutation::adjacent(3, i)).unwrap());
        assert_eq!(rebuilt, cyc(3, "(1 3)"));
    }

    #[test]
    fn display_and_parse() {
        let p = cyc(5, "(1 3)(2 5)");
        assert_eq!(p.to_string(), "(1 3)(2 5)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[3,5,1,4,2]");
        assert_eq!(serde_json::from_str::<Permutation>(&json).unwrap(), p);
    }

    #[test]
    fn rank_matches_enumeration_order() {
        for (r, p) in all_permutations(4).iter().enumerate() {
            assert_eq!(p.rank(), r);
        }
    }

    #[test]
    fn subset_permutations() {
        let ps = permutations_of_subset(5, &[2, 4]);
        assert_eq!(ps.len(), 2);
        assert!(ps[0].is_identity());
        assert_eq!(ps[1], cyc(5, "(2 4)"));
        assert_eq!(permutations_of_subset(4, &[]).len(), 1);
    }

    #[test]
    fn generation() {
        let adj: Vec<_> = (1..4).map(|i| Permutation::adjacent(4, i)).collect();
        assert!(generates_symmetric_group(4, &adj));
        assert!(!generates_symmetric_group(4, &adj[..2]));
        // 3-cycles only generate A_4
        assert!(!generates_symmetric_group(4, &[cyc(4, "(1 2 3)"), cyc(4, "(2 3 4)")]));
    }
}
