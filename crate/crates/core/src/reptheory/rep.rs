use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::reptheory::characters::{trivial_multiplicity_of, CharacterTable};
use crate::reptheory::{dimension, young};
use crate::symgroup::{factorial, partitions_of, Partition, Permutation};

/// Largest degree for which the regular representation is materialized.
pub const REGULAR_REP_MAX_N: usize = 6;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RepLabel {
    Irrep(Partition),
    Defining,
    Regular,
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepLabel::Irrep(p) => write!(f, "{p}"),
            RepLabel::Defining => write!(f, "defining"),
            RepLabel::Regular => write!(f, "regular"),
        }
    }
}

impl Serialize for RepLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A real orthogonal representation of `S_n`.
///
/// Irreducible representations are stored through their generator matrices
/// (Young's orthogonal form); the defining and regular representations act by
/// permutation matrices and build theirs on demand.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    n: usize,
    dim: usize,
    label: RepLabel,
    generators: Vec<DMatrix<f64>>,
    // nonzero entries of each generator, column-wise
    sparse: Vec<Vec<Vec<(usize, f64)>>>,
}

impl UnitaryRep {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &RepLabel {
        &self.label
    }

    pub fn partition(&self) -> Option<&Partition> {
        match &self.label {
            RepLabel::Irrep(p) => Some(p),
            _ => None,
        }
    }

    fn is_permutation_rep(&self) -> bool {
        !matches!(self.label, RepLabel::Irrep(_))
    }

    /// Matrix of the adjacent transposition `s_i`, `1 ≤ i < n`.
    pub fn generator_matrix(&self, i: usize) -> DMatrix<f64> {
        if self.is_permutation_rep() {
            self.matrix_of(&Permutation::adjacent(self.n, i))
        } else {
            self.generators[i - 1].clone()
        }
    }

    pub fn generator_matrices(&self) -> Vec<DMatrix<f64>> {
        (1..self.n).map(|i| self.generator_matrix(i)).collect()
    }

    /// `R(p)`, a real orthogonal matrix.
    pub fn matrix_of(&self, p: &Permutation) -> DMatrix<f64> {
        assert_eq!(p.degree(), self.n, "degree mismatch");
        let mut m = DMatrix::zeros(self.dim, self.dim);
        self.accumulate(p, 1.0, &mut m, &mut HashMap::new());
        m
    }

    /// Adds `c · R(p)` to `out`.
    fn accumulate(
        &self,
        p: &Permutation,
        c: f64,
        out: &mut DMatrix<f64>,
        memo: &mut HashMap<Permutation, DMatrix<f64>>,
    ) {
        match &self.label {
            RepLabel::Defining => {
                for k in 1..=self.n {
                    out[(p.apply(k) - 1, k - 1)] += c;
                }
            }
            RepLabel::Regular => {
                for h in crate::symgroup::all_permutations(self.n) {
                    out[(p.compose_unchecked(&h).rank(), h.rank())] += c;
                }
            }
            RepLabel::Irrep(_) => {
                let m = self.irrep_matrix(p, memo);
                *out += m * c;
            }
        }
    }

    // R(p) = R(p s_a) S_a for the last letter a of the reduced word; memoized on prefixes.
    fn irrep_matrix(&self, p: &Permutation, memo: &mut HashMap<Permutation, DMatrix<f64>>) -> DMatrix<f64> {
        if let Some(m) = memo.get(p) {
            return m.clone();
        }
        let word = p.adjacent_factorization();
        let m = match word.last() {
            None => DMatrix::identity(self.dim, self.dim),
            Some(&a) => {
                let prefix = p.compose_unchecked(&Permutation::adjacent(self.n, a));
                let left = self.irrep_matrix(&prefix, memo);
                let mut prod = DMatrix::zeros(self.dim, self.dim);
                for (col, entries) in self.sparse[a - 1].iter().enumerate() {
                    for &(row, v) in entries {
                        prod.column_mut(col).axpy(v, &left.column(row), 1.0);
                    }
                }
                prod
            }
        };
        memo.insert(p.clone(), m.clone());
        m
    }

    /// `R(a) = Σ_g a_g R(g)`.
    pub fn evaluate(&self, a: &AlgebraElement) -> Result<DMatrix<f64>> {
        if a.degree() != self.n {
            return Err(Error::DegreeMismatch {
                left: self.n,
                right: a.degree(),
            });
        }
        let mut out = DMatrix::zeros(self.dim, self.dim);
        let mut memo = HashMap::new();
        if matches!(self.label, RepLabel::Regular) {
            // one pass over the group per term is wasteful; index h once
            let group = crate::symgroup::all_permutations(self.n);
            for (p, c) in a.terms() {
                let c = c.to_f64().expect("finite coefficient");
                for (hr, h) in group.iter().enumerate() {
                    out[(p.compose_unchecked(h).rank(), hr)] += c;
                }
            }
            return Ok(out);
        }
        for (p, c) in a.terms() {
            self.accumulate(p, c.to_f64().expect("finite coefficient"), &mut out, &mut memo);
        }
        Ok(out)
    }

    /// Character value on the class `α`, exact.
    pub fn character(&self, alpha: &Partition) -> BigInt {
        match &self.label {
            RepLabel::Irrep(beta) => BigInt::from(character_table(self.n).value(beta, alpha)),
            RepLabel::Defining => BigInt::from(alpha.content().first().copied().unwrap_or(0)),
            RepLabel::Regular => {
                if alpha.parts().iter().all(|&p| p == 1) {
                    BigInt::from(factorial(self.n))
                } else {
                    BigInt::from(0)
                }
            }
        }
    }

    /// Multiplicity of the trivial representation, `(1/n!) Σ_g tr R(g)`.
    pub fn trivial_multiplicity(&self) -> usize {
        let chi: Vec<BigInt> = partitions_of(self.n).iter().map(|a| self.character(a)).collect();
        trivial_multiplicity_of(self.n, &chi)
    }

    /// Orthonormal basis of the invariant subspace `V^G`, as columns.
    pub fn invariant_basis(&self) -> DMatrix<f64> {
        let k = self.trivial_multiplicity();
        match &self.label {
            RepLabel::Irrep(_) => DMatrix::identity(self.dim, k),
            _ => {
                // transitive permutation actions: only the constant vectors are fixed
                debug_assert_eq!(k, 1);
                DMatrix::from_element(self.dim, 1, 1.0 / (self.dim as f64).sqrt())
            }
        }
    }

    /// Orthonormal basis of the orthogonal complement of `V^G`, as columns.
    pub fn complement_basis(&self) -> DMatrix<f64> {
        let k = self.trivial_multiplicity();
        match &self.label {
            RepLabel::Irrep(_) => {
                if k == 0 {
                    DMatrix::identity(self.dim, self.dim)
                } else {
                    DMatrix::zeros(self.dim, 0)
                }
            }
            _ => helmert_basis(self.dim),
        }
    }
}

/// Columns `(e_1 + … + e_j − j e_{j+1}) / √(j(j+1))`, `j = 1..d−1`: an
/// orthonormal basis of the vectors with zero coordinate sum.
fn helmert_basis(d: usize) -> DMatrix<f64> {
    let mut b = DMatrix::zeros(d, d.saturating_sub(1));
    for j in 1..d {
        let s = ((j * (j + 1)) as f64).sqrt();
        for r in 0..j {
            b[(r, j - 1)] = 1.0 / s;
        }
        b[(j, j - 1)] = -(j as f64) / s;
    }
    b
}

/// The irreducible representation `[β]` in Young's orthogonal form.
pub fn irrep(beta: &Partition) -> UnitaryRep {
    let n = beta.size();
    let dim = dimension(beta).to_usize().expect("dimension fits in usize");
    let generators = young::orthogonal_form(beta);
    let sparse = generators.iter().map(sparse_columns).collect();
    UnitaryRep {
        n,
        dim,
        label: RepLabel::Irrep(beta.clone()),
        generators,
        sparse,
    }
}

fn sparse_columns(m: &DMatrix<f64>) -> Vec<Vec<(usize, f64)>> {
    (0..m.ncols())
        .map(|c| {
            (0..m.nrows())
                .filter(|&r| m[(r, c)] != 0.0)
                .map(|r| (r, m[(r, c)]))
                .collect()
        })
        .collect()
}

/// Permutation matrices on `n` coordinates: `D(π) e_k = e_{π(k)}`.
pub fn defining_rep(n: usize) -> Result<UnitaryRep> {
    if n < 2 {
        return Err(Error::Precondition(format!("defining representation needs n >= 2, got {n}")));
    }
    Ok(UnitaryRep {
        n,
        dim: n,
        label: RepLabel::Defining,
        generators: Vec::new(),
        sparse: Vec::new(),
    })
}

/// Left regular representation on `n!` coordinates indexed by lexicographic rank.
pub fn regular_rep(n: usize) -> Result<UnitaryRep> {
    if n > REGULAR_REP_MAX_N {
        return Err(Error::RegularTooLarge {
            n,
            cap: REGULAR_REP_MAX_N,
        });
    }
    if n < 2 {
        return Err(Error::Precondition(format!("regular representation needs n >= 2, got {n}")));
    }
    let dim = factorial(n).to_usize().unwrap();
    Ok(UnitaryRep {
        n,
        dim,
        label: RepLabel::Regular,
        generators: Vec::new(),
        sparse: Vec::new(),
    })
}

type Cache<T> = OnceLock<Mutex<HashMap<usize, Arc<T>>>>;

fn cached<T>(cache: &'static Cache<T>, n: usize, build: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().unwrap().get(&n) {
        return v.clone();
    }
    // built outside the lock; a racing builder produces an identical value
    let v = Arc::new(build());
    map.lock().unwrap().entry(n).or_insert(v).clone()
}

/// All irreducible representations of `S_n`, in [`partitions_of`] order. Cached.
pub fn irreps(n: usize) -> Arc<Vec<UnitaryRep>> {
    static CACHE: Cache<Vec<UnitaryRep>> = OnceLock::new();
    cached(&CACHE, n, || partitions_of(n).iter().map(irrep).collect())
}

/// Character table of `S_n`. Cached.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    static CACHE: Cache<CharacterTable> = OnceLock::new();
    cached(&CACHE, n, || CharacterTable::new(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn one_dimensional_irreps() {
        for m in irrep(&p("4")).generator_matrices() {
            assert_eq!(m, DMatrix::from_element(1, 1, 1.0));
        }
        for m in irrep(&p("1,1,1,1")).generator_matrices() {
            assert_eq!(m, DMatrix::from_element(1, 1, -1.0));
        }
    }

    #[test]
    fn permutation_reps() {
        let d = defining_rep(4).unwrap();
        let pi = Permutation::parse_cycles(4, "(1 2 3)").unwrap();
        assert_eq!(d.matrix_of(&pi).trace(), 1.0);
        let r = regular_rep(2).unwrap();
        let swap = r.matrix_of(&Permutation::adjacent(2, 1));
        assert_eq!(swap, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        assert!(r.matrix_of(&Permutation::identity(2)).is_identity(0.0));
        let r4 = regular_rep(4).unwrap();
        assert_eq!(r4.matrix_of(&pi).trace(), 0.0);
        assert_eq!(r4.matrix_of(&Permutation::identity(4)).trace(), 24.0);
        assert!(matches!(regular_rep(7), Err(Error::RegularTooLarge { n: 7, .. })));
    }

    #[test]
    fn homomorphism() {
        for rep in [irrep(&p("3,2")), defining_rep(5).unwrap(), regular_rep(4).unwrap()] {
            let n = rep.degree();
            let a = Permutation::parse_cycles(n, "(1 2 4)").unwrap();
            let b = Permutation::parse_cycles(n, "(1 3)(2 4)").unwrap();
            let lhs = rep.matrix_of(&a.compose(&b).unwrap());
            let rhs = rep.matrix_of(&a) * rep.matrix_of(&b);
            assert!((lhs - rhs).amax() < 1e-12, "{}", rep.label());
        }
    }

    #[test]
    fn evaluate_identity_and_degree_check() {
        let rep = irrep(&p("2,1"));
        assert!(rep.evaluate(&AlgebraElement::one(3)).unwrap().is_identity(1e-15));
        assert!(rep.evaluate(&AlgebraElement::one(4)).is_err());
        let x = crate::algebra::octopus_x([1, 2, 3, 4], 4).unwrap();
        let m = irrep(&p("2,2")).evaluate(&x).unwrap();
        assert!((m - DMatrix::<f64>::identity(2, 2) * -10.0).amax() < 1e-12);
        let half = AlgebraElement::one(3).scale(&rat(1, 2));
        assert!((rep.evaluate(&half).unwrap() - DMatrix::<f64>::identity(2, 2) * 0.5).amax() < 1e-15);
    }

    #[test]
    fn trivial_multiplicities() {
        for n in 2..=6 {
            assert_eq!(defining_rep(n).unwrap().trivial_multiplicity(), 1);
            assert_eq!(irrep(&Partition::hook(n, n - 1)).trivial_multiplicity(), 0);
            assert_eq!(irrep(&Partition::hook(n, n)).trivial_multiplicity(), 1);
        }
        assert_eq!(regular_rep(5).unwrap().trivial_multiplicity(), 1);
    }

    #[test]
    fn complement_bases_are_orthonormal() {
        let d = defining_rep(5).unwrap();
        let b = d.complement_basis();
        assert_eq!(b.ncols(), 4);
        assert!((b.transpose() * &b).is_identity(1e-14));
        assert!((b.transpose() * d.invariant_basis()).amax() < 1e-14);
        assert_eq!(irrep(&p("3")).complement_basis().ncols(), 0);
    }
}
