use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::symgroup::{check_indices, permutations_of_subset, Partition, Permutation};

/// An element of the rational group algebra of `S_n`.
///
/// Terms are kept in a sorted map so iteration and serialization follow the
/// lexicographic order of image arrays. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The group identity with coefficient one.
    pub fn one(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n))
    }

    pub fn from_perm(p: Permutation) -> Self {
        Self::from_terms(p.degree(), [(p, Rational::from_integer(1.into()))]).unwrap()
    }

    /// Sums repeated permutations; drops zeros.
    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Permutation, Rational)>,
    {
        let mut out = Self::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
            out.add_term(p, c);
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, p: Permutation, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Permutation) -> Rational {
        self.terms.get(p).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<Permutation> {
        self.terms.keys().cloned().collect()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    /// The canonical involution `Σ w_g g ↦ Σ conj(w_g) g⁻¹`; rational
    /// coefficients are self-conjugate.
    pub fn star(&self) -> Self {
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.inverse(), c.clone())).collect(),
        }
    }

    /// Group-algebra product: `(ab)_g = Σ_h a_h b_{h⁻¹g}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose_unchecked(q), a * b);
            }
        }
        Ok(out)
    }

    /// Value under the trivial representation: the sum of the coefficients.
    pub fn trivial_eval(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(p, c)| self.terms.get(&p.inverse()) == Some(c))
    }

    /// All coefficients nonnegative and `w_g = w_{g⁻¹}`.
    pub fn is_positive_symmetric(&self) -> bool {
        self.terms.values().all(|c| c.is_positive()) && self.is_symmetric()
    }

    /// Conjugation `π a π⁻¹`, termwise.
    pub fn conjugate_by(&self, pi: &Permutation) -> Result<Self> {
        Self::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(p, c)| Ok((p.conjugate_by(pi)?, c.clone())))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Embeds into the group algebra of `S_m`, `m ≥ n`.
    pub fn embed(&self, m: usize) -> Self {
        Self {
            n: m,
            terms: self.terms.iter().map(|(p, c)| (p.embed(m), c.clone())).collect(),
        }
    }

    /// Sum of all elements of the conjugacy class `α` of `S_n`.
    pub fn class_sum(alpha: &Partition) -> Self {
        let n = alpha.size();
        let all: Vec<usize> = (1..=n).collect();
        Self::embedded_class_sum(alpha, n, &all).expect("full support has the right size")
    }

    /// Sum over permutations of `support` with cycle type `α`, inside `S_n`.
    pub fn embedded_class_sum(alpha: &Partition, n: usize, support: &[usize]) -> Result<Self> {
        let elems = alpha.class_elements_on(n, support)?;
        Self::from_terms(n, elems.into_iter().map(|p| (p, Rational::from_integer(1.into()))))
    }

    /// Sum of all permutations fixing every point outside `subset`.
    pub fn shuffle_sum(n: usize, subset: &[usize]) -> Result<Self> {
        check_indices(n, subset)?;
        Self::from_terms(
            n,
            permutations_of_subset(n, subset)
                .into_iter()
                .map(|p| (p, Rational::from_integer(1.into()))),
        )
    }

    pub fn to_json_repr(&self) -> AlgebraElementJson {
        AlgebraElementJson {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermJson {
                    perm: p.images(),
                    num: c.numer().clone().into(),
                    den: c.denom().clone().into(),
                })
                .collect(),
        }
    }

    pub fn from_json_repr(repr: &AlgebraElementJson) -> Result<Self> {
        let terms = repr
            .terms
            .iter()
            .map(|t| {
                let p = Permutation::from_images(&t.perm)?;
                Ok((p, ratio_from_json(&t.num, &t.den)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(repr.n, terms)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            n: self.n,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    /// Panics on degree mismatch; see [`AlgebraElement::try_add`].
    fn add(self, rhs: Self) -> AlgebraElement {
        self.try_add(rhs).expect("degree mismatch")
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: Self) -> AlgebraElement {
        self.try_sub(rhs).expect("degree mismatch")
    }
}

/// Integer that serializes as a JSON number when it fits in `i64`, as a
/// decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonInt {
    Small(i64),
    Big(String),
}

impl From<BigInt> for JsonInt {
    fn from(x: BigInt) -> Self {
        match i64::try_from(&x) {
            Ok(v) => JsonInt::Small(v),
            Err(_) => JsonInt::Big(x.to_string()),
        }
    }
}

impl JsonInt {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s
                .parse()
                .map_err(|_| Error::InvalidWeights(format!("not an integer: {s}"))),
        }
    }
}

pub(crate) fn ratio_from_json(num: &JsonInt, den: &JsonInt) -> Result<Rational> {
    let den = den.to_bigint()?;
    if den.is_zero() {
        return Err(Error::InvalidWeights("zero denominator".into()));
    }
    Ok(Rational::new(num.to_bigint()?, den))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub perm: Vec<usize>,
    pub num: JsonInt,
    pub den: JsonInt,
}

/// Wire form: `{"n": int, "terms": [{"perm": [images], "num": int, "den": int}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraElementJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json_repr().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraElementJson::deserialize(d)?;
        Self::from_json_repr(&repr).map_err(serde::de::Error::custom)
    }
}
