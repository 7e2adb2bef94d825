use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::symgroup::{factorial, partitions_of, Partition};

/// Number of standard Young tableaux of shape `β`, by the hook length formula.
pub fn dimension(beta: &Partition) -> BigUint {
    let conj = beta.conjugate();
    let mut hooks = BigUint::from(1u32);
    for (i, &row) in beta.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    factorial(beta.size()) / hooks
}

/// Memoized Murnaghan–Nakayama evaluation on beta-sets.
///
/// A partition with `r` parts is encoded by its first-column hook lengths
/// `β_i + r − i`; removing a border strip of length `k` moves one bead from
/// `h` to `h − k`, with sign `(−1)^(beads strictly between)`.
#[derive(Default)]
pub struct MnEvaluator {
    memo: HashMap<(Vec<usize>, Vec<usize>), i64>,
}

impl MnEvaluator {
    pub fn new() -> Self {
        Self::default()
    }

    /// `χ^β(α)`.
    pub fn character(&mut self, beta: &Partition, alpha: &Partition) -> Result<i64> {
        if beta.size() != alpha.size() {
            return Err(Error::SizeMismatch {
                expected: beta.size(),
                got: alpha.size(),
            });
        }
        Ok(self.eval(beta.parts().to_vec(), alpha.parts().to_vec()))
    }

    fn eval(&mut self, beta: Vec<usize>, alpha: Vec<usize>) -> i64 {
        if alpha.is_empty() {
            return 1;
        }
        let key = (beta, alpha);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (beta, alpha) = key;
        let k = alpha[0];
        let rest = alpha[1..].to_vec();
        let r = beta.len();
        let beads: Vec<usize> = beta.iter().enumerate().map(|(i, &b)| b + r - 1 - i).collect();
        let mut total = 0i64;
        for &h in &beads {
            if h < k || beads.contains(&(h - k)) {
                continue;
            }
            let between = beads.iter().filter(|&&b| b > h - k && b < h).count();
            let mut moved: Vec<usize> = beads.iter().map(|&b| if b == h { h - k } else { b }).collect();
            moved.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<usize> = moved
                .iter()
                .enumerate()
                .map(|(i, &b)| b - (r - 1 - i))
                .filter(|&p| p > 0)
                .collect();
            let sign = if between % 2 == 0 { 1 } else { -1 };
            total += sign * self.eval(parts, rest.clone());
        }
        self.memo.insert((beta, alpha), total);
        total
    }
}

/// `χ^β(α)` by the Murnaghan–Nakayama rule.
pub fn mn_character(beta: &Partition, alpha: &Partition) -> Result<i64> {
    MnEvaluator::new().character(beta, alpha)
}

/// `½ Σ_i β_i (β_i − (2i − 1))`, which equals `|T_n| χ^β(2,1^{n−2}) / f_β`.
pub fn transposition_ratio(beta: &Partition) -> Rational {
    let twice: i64 = beta
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &b)| b as i64 * (b as i64 - (2 * i as i64 + 1)))
        .sum();
    Rational::new(BigInt::from(twice), BigInt::from(2))
}

/// Full character table of `S_n`; rows are irreps `β`, columns classes `α`,
/// both in [`partitions_of`] order.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(n: usize) -> Self {
        let partitions = partitions_of(n);
        let mut mn = MnEvaluator::new();
        let values = partitions
            .iter()
            .map(|beta| {
                partitions
                    .iter()
                    .map(|alpha| mn.character(beta, alpha).expect("same size"))
                    .collect()
            })
            .collect();
        Self {
            n,
            partitions,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    fn index(&self, p: &Partition) -> usize {
        self.partitions
            .iter()
            .position(|q| q == p)
            .unwrap_or_else(|| panic!("{p} is not a partition of {}", self.n))
    }

    pub fn value(&self, beta: &Partition, alpha: &Partition) -> i64 {
        self.values[self.index(beta)][self.index(alpha)]
    }

    pub fn row(&self, beta: &Partition) -> &[i64] {
        &self.values[self.index(beta)]
    }

    /// `Σ_α |C^α| χ^β(α) χ^γ(α)`, which is `n! δ_{βγ}`.
    pub fn inner_product(&self, beta: &Partition, gamma: &Partition) -> BigInt {
        let (rb, rg) = (self.row(beta), self.row(gamma));
        self.partitions
            .iter()
            .enumerate()
            .map(|(k, alpha)| BigInt::from(alpha.class_size()) * rb[k] * rg[k])
            .sum()
    }

    /// CSV with a header row of class labels and one row per irrep.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("beta");
        for a in &self.partitions {
            write!(out, ",\"{a}\"").unwrap();
        }
        out.push('\n');
        for (b, row) in self.partitions.iter().zip(&self.values) {
            write!(out, "\"{b}\"").unwrap();
            for v in row {
                write!(out, ",{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Multiplicity of the trivial character in a class function `χ`, given as
/// values on classes in [`partitions_of`] order: `(1/n!) Σ_α |C^α| χ(α)`.
pub fn trivial_multiplicity_of(n: usize, chi: &[BigInt]) -> usize {
    let total: BigInt = partitions_of(n)
        .iter()
        .zip(chi)
        .map(|(alpha, c)| BigInt::from(alpha.class_size()) * c)
        .sum();
    let m = total / BigInt::from(factorial(n));
    m.to_usize().expect("multiplicity is a nonnegative integer")
}
