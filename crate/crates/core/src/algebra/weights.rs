use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::element::{ratio_from_json, JsonInt};
use crate::algebra::{AlgebraElement, Rational};
use crate::error::{Error, Result};
use crate::symgroup::Permutation;

/// Nonnegative symmetric weights on the transpositions of `S_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranspositionWeights {
    n: usize,
    // keyed by (i, j) with i < j; zero weights are not stored
    edges: BTreeMap<(usize, usize), Rational>,
}

impl TranspositionWeights {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeMap::new(),
        }
    }

    /// Star weights `x_i = w_{i n}`, `i = 1..n-1`, everything else zero.
    pub fn star(x: &[Rational]) -> Result<Self> {
        let n = x.len() + 1;
        let mut w = Self::new(n);
        for (i, xi) in x.iter().enumerate() {
            w.set(i + 1, n, xi.clone())?;
        }
        Ok(w)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Sets `w_ij = w_ji`.
    pub fn set(&mut self, i: usize, j: usize, w: Rational) -> Result<()> {
        if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
            return Err(Error::InvalidWeights(format!("bad edge {{{i},{j}}} on {} points", self.n)));
        }
        if w.is_negative() {
            return Err(Error::InvalidWeights(format!("negative weight on {{{i},{j}}}")));
        }
        let key = (i.min(j), i.max(j));
        if w.is_zero() {
            self.edges.remove(&key);
        } else {
            self.edges.insert(key, w);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.edges
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Edges with positive weight, `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.edges.iter().map(|(&(i, j), w)| (i, j, w))
    }

    /// `x_i = w_{i n}` for `i = 1..n-1`.
    pub fn star_weights(&self) -> Vec<Rational> {
        (1..self.n).map(|i| self.get(i, self.n)).collect()
    }

    pub fn total(&self) -> Rational {
        self.edges.values().fold(Rational::zero(), |a, w| a + w)
    }

    /// Whether the positive edges connect `{1..n}`, which for transposition
    /// supports is the same as generating `S_n`.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, j, _) in self.edges() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let root = find(&mut parent, 1);
        (2..=self.n).all(|k| find(&mut parent, k) == root)
    }

    /// `Σ_{i<j} w_ij (i j)`.
    pub fn to_element(&self) -> AlgebraElement {
        AlgebraElement::from_terms(
            self.n,
            self.edges().map(|(i, j, w)| {
                (Permutation::transposition(self.n, i, j).unwrap(), w.clone())
            }),
        )
        .expect("degrees agree")
    }

    /// The reduction map to `S_{n-1}`:
    /// `w'_ik = w_ik + w_in w_kn / Σ_j w_jn`.
    pub fn theta(&self) -> Result<Self> {
        let n = self.n;
        if n < 3 {
            return Err(Error::Precondition(format!("theta needs n >= 3, got {n}")));
        }
        let x = self.star_weights();
        let sum = x.iter().fold(Rational::zero(), |a, v| a + v);
        if sum.is_zero() {
            return Err(Error::ThetaUndefined);
        }
        let mut out = Self::new(n - 1);
        for i in 1..n - 1 {
            for k in i + 1..n {
                let w = self.get(i, k) + &x[i - 1] * &x[k - 1] / &sum;
                out.set(i, k, w)?;
            }
        }
        Ok(out)
    }

    pub fn to_json_repr(&self) -> WeightsJson {
        WeightsJson {
            n: self.n,
            edges: self
                .edges()
                .map(|(i, j, w)| EdgeJson {
                    i,
                    j,
                    num: w.numer().clone().into(),
                    den: w.denom().clone().into(),
                })
                .collect(),
        }
    }

    /// Validates a parsed weight file: duplicate edges, self-loops, negative
    /// weights and out-of-range indices are all rejected.
    pub fn from_json_repr(repr: &WeightsJson) -> Result<Self> {
        if repr.n < 2 {
            return Err(Error::InvalidWeights(format!("n must be at least 2, got {}", repr.n)));
        }
        let mut out = Self::new(repr.n);
        let mut seen = std::collections::HashSet::new();
        for e in &repr.edges {
            if !seen.insert((e.i.min(e.j), e.i.max(e.j))) {
                return Err(Error::InvalidWeights(format!("edge {{{},{}}} listed twice", e.i, e.j)));
            }
            out.set(e.i, e.j, ratio_from_json(&e.num, &e.den)?)?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeJson {
    pub i: usize,
    pub j: usize,
    pub num: JsonInt,
    pub den: JsonInt,
}

/// Wire form: `{"n": int, "edges": [{"i": int, "j": int, "num": int, "den": int}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsJson {
    pub n: usize,
    pub edges: Vec<EdgeJson>,
}

impl Serialize for TranspositionWeights {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TranspositionWeights {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = WeightsJson::deserialize(d)?;
        Self::from_json_repr(&repr).map_err(serde::de::Error::custom)
    }
}
