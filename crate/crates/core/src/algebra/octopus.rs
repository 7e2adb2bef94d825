//! The octopus element `ŵ` and the class-sum combinations `X`, `Y` that appear
//! in the quartic expansion of `ŵ²`.

use num_traits::Zero;

use crate::algebra::{AlgebraElement, Rational, TranspositionWeights};
use crate::error::{Error, Result};
use crate::symgroup::{check_indices, Partition, Permutation};

fn part(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec()).expect("literal partition")
}

fn transposition(n: usize, i: usize, j: usize) -> AlgebraElement {
    AlgebraElement::from_perm(Permutation::transposition(n, i, j).expect("distinct indices"))
}

/// `ŵ = (Σ_i x_i)(w − θ(w))` with `x_i = w_{in}`.
///
/// Built twice, once from the definition and once from the expansion
/// `Σ x_i² (in) + Σ_{i<j} x_i x_j [(in) + (jn) − (ij)]`; the two must agree exactly.
pub fn octopus_hat(w: &TranspositionWeights) -> Result<AlgebraElement> {
    let n = w.degree();
    let theta = w.theta()?;
    let x = w.star_weights();
    let scale: Rational = x.iter().sum();

    let by_definition = (&w.to_element() - &theta.to_element().embed(n)).scale(&scale);

    let mut by_expansion = AlgebraElement::zero(n);
    for i in 1..n {
        let xi = &x[i - 1];
        by_expansion = &by_expansion + &transposition(n, i, n).scale(&(xi * xi));
        for j in i + 1..n {
            let xij = xi * &x[j - 1];
            if xij.is_zero() {
                continue;
            }
            let a = &(&transposition(n, i, n) + &transposition(n, j, n)) - &transposition(n, i, j);
            by_expansion = &by_expansion + &a.scale(&xij);
        }
    }

    assert_eq!(
        by_definition, by_expansion,
        "octopus element: definition and expansion disagree"
    );
    Ok(by_definition)
}

/// `X_{{i,j,k,l}} = J^{(3,1)}_A − 2 J^{(2,2)}_A` with `A = {i,j,k,l}`, inside `S_degree`.
pub fn octopus_x(indices: [usize; 4], degree: usize) -> Result<AlgebraElement> {
    check_indices(degree, &indices)?;
    let three = AlgebraElement::embedded_class_sum(&part(&[3, 1]), degree, &indices)?;
    let two_two = AlgebraElement::embedded_class_sum(&part(&[2, 2]), degree, &indices)?;
    Ok(&three - &two_two.scale(&Rational::from_integer(2.into())))
}

/// `Y^m_{{i,j,k,l}} = J^{(3,1,1)}_B − J^{(2,2,1)}_B − X_{{i,j,k,l}}` with
/// `B = {i,j,k,l,m}`, inside `S_degree`.
pub fn octopus_y(indices: [usize; 4], slot: usize, degree: usize) -> Result<AlgebraElement> {
    let five = [indices[0], indices[1], indices[2], indices[3], slot];
    check_indices(degree, &five)?;
    let three = AlgebraElement::embedded_class_sum(&part(&[3, 1, 1]), degree, &five)?;
    let two_two = AlgebraElement::embedded_class_sum(&part(&[2, 2, 1]), degree, &five)?;
    Ok(&(&three - &two_two) - &octopus_x(indices, degree)?)
}

/// Right-hand side of the quartic expansion of `ŵ²` for star weights `x`
/// (length `n − 1`):
///
/// ```text
/// (Σ x_i⁴ + 2 Σ_{i≠j} x_i³x_j + 3 Σ_{i<j} x_i²x_j²)·1
///   + Σ_{i≠j, i≠k, j<k} x_i²x_jx_k (X_{{i,j,k,n}} + 2·1)
///   + 2 Σ_{i<j<k<l} x_ix_jx_kx_l Y^n_{{i,j,k,l}}
/// ```
///
/// Sums with too few distinct indices are empty for small `n`.
pub fn quartic_rhs(x: &[Rational], n: usize) -> Result<AlgebraElement> {
    if n < 3 {
        return Err(Error::Precondition(format!("quartic expansion needs n >= 3, got {n}")));
    }
    if x.len() != n - 1 {
        return Err(Error::SizeMismatch {
            expected: n - 1,
            got: x.len(),
        });
    }
    let m = n - 1;
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());

    let mut scalar = Rational::zero();
    for i in 0..m {
        let xi2 = &x[i] * &x[i];
        scalar += &xi2 * &xi2;
        for j in 0..m {
            if j != i {
                scalar += &two * &xi2 * &x[i] * &x[j];
            }
            if j > i {
                scalar += &three * &xi2 * &x[j] * &x[j];
            }
        }
    }
    let one = AlgebraElement::one(n);
    let mut out = one.scale(&scalar);

    for i in 0..m {
        for j in 0..m {
            for k in j + 1..m {
                if i == j || i == k {
                    continue;
                }
                let c = &x[i] * &x[i] * &x[j] * &x[k];
                if c.is_zero() {
                    continue;
                }
                let xel = octopus_x([i + 1, j + 1, k + 1, n], n)?;
                out = &out + &(&xel + &one.scale(&two)).scale(&c);
            }
        }
    }

    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                for l in k + 1..m {
                    let c = &two * &x[i] * &x[j] * &x[k] * &x[l];
                    if c.is_zero() {
                        continue;
                    }
                    let y = octopus_y([i + 1, j + 1, k + 1, l + 1], n, n)?;
                    out = &out + &y.scale(&c);
                }
            }
        }
    }
    Ok(out)
}
