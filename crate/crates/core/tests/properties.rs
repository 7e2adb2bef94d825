use nalgebra::{DMatrix, DVector};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use octopus_lab::algebra::{rat, AlgebraElement, Rational, TranspositionWeights};
use octopus_lab::kazhdan::{displacement_max, kazhdan_rep_estimate, transpositions, Complex, KazhdanConfig};
use octopus_lab::reptheory::{defining_rep, dimension, irrep, irreps, regular_rep};
use octopus_lab::spectral::{gap_min, gap_rep, laplacian, symmetric_spectrum};
use octopus_lab::symgroup::{factorial, partitions_of, Partition, Permutation};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn element(n: usize, max_terms: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((perm(n), -4i64..=4, 1i64..=3), 0..=max_terms).prop_map(move |terms| {
        AlgebraElement::from_terms(n, terms.into_iter().map(|(p, a, b)| (p, rat(a, b)))).unwrap()
    })
}

/// `a + a*` with nonnegative coefficients.
fn positive_symmetric(n: usize, max_terms: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec((perm(n), 0i64..=4, 1i64..=3), 1..=max_terms).prop_map(move |terms| {
        let a = AlgebraElement::from_terms(n, terms.into_iter().map(|(p, a, b)| (p, rat(a, b)))).unwrap();
        &a + &a.star()
    })
}

fn weights(n: usize) -> impl Strategy<Value = TranspositionWeights> {
    let pairs = n * (n - 1) / 2;
    prop::collection::vec(prop::option::weighted(0.7, (1i64..=20, 1i64..=8)), pairs).prop_filter_map(
        "theta needs weight at the last point",
        move |ws| {
            let mut w = TranspositionWeights::new(n);
            let mut k = 0;
            for i in 1..=n {
                for j in i + 1..=n {
                    if let Some((a, b)) = ws[k] {
                        w.set(i, j, rat(a, b)).unwrap();
                    }
                    k += 1;
                }
            }
            w.star_weights().iter().any(|x| *x > rat(0, 1)).then_some(w)
        },
    )
}

fn unit_vector(dim: usize) -> impl Strategy<Value = DVector<f64>> {
    prop::collection::vec(-1.0f64..1.0, dim).prop_filter_map("nonzero", move |v| {
        let v = DVector::from_vec(v);
        let r = v.norm();
        (r > 1e-3).then(|| v / r)
    })
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap()
}

fn close_spectra(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(
        (a, b, c) in (1usize..=7).prop_flat_map(|n| (perm(n), perm(n), perm(n)))
    ) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverse_and_factorization(p in (1usize..=8).prop_flat_map(perm)) {
        let n = p.degree();
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        let word = p.adjacent_factorization();
        prop_assert_eq!(word.len(), p.inversions());
        let rebuilt = word
            .iter()
            .fold(Permutation::identity(n), |acc, &i| acc.compose(&Permutation::adjacent(n, i)).unwrap());
        prop_assert_eq!(rebuilt, p);
    }

    #[test]
    fn cycle_type_is_conjugation_invariant(
        (p, q) in (2usize..=8).prop_flat_map(|n| (perm(n), perm(n)))
    ) {
        prop_assert_eq!(p.conjugate_by(&q).unwrap().cycle_type(), p.cycle_type());
        prop_assert_eq!(p.is_even(), p.cycle_type().is_even_class());
    }

    #[test]
    fn convolution_laws(
        (a, b, c) in (2usize..=4).prop_flat_map(|n| (element(n, 5), element(n, 5), element(n, 5)))
    ) {
        let ab = a.convolve(&b).unwrap();
        prop_assert_eq!(ab.convolve(&c).unwrap(), a.convolve(&b.convolve(&c).unwrap()).unwrap());
        prop_assert_eq!(ab.star(), b.star().convolve(&a.star()).unwrap());
        prop_assert_eq!(ab.trivial_eval(), a.trivial_eval() * b.trivial_eval());
        let back = AlgebraElement::from_json_repr(&a.to_json_repr()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_multiplicative(
        (a, b) in (2usize..=5).prop_flat_map(|n| (element(n, 4), element(n, 4)))
    ) {
        for rep in irreps(a.degree()).iter() {
            let lhs = rep.evaluate(&a.convolve(&b).unwrap()).unwrap();
            let rhs = rep.evaluate(&a).unwrap() * rep.evaluate(&b).unwrap();
            prop_assert!((lhs - rhs).amax() < 1e-9);
        }
    }

    #[test]
    fn laplacians_are_positive_semidefinite(a in (2usize..=6).prop_flat_map(|n| positive_symmetric(n, 6))) {
        for rep in irreps(a.degree()).iter() {
            let spec = symmetric_spectrum(&laplacian(&a, rep).unwrap()).unwrap();
            prop_assert!(spec[0] >= -1e-9, "{} {:?}", rep.label(), spec);
        }
    }

    #[test]
    fn quadratic_form_identity(
        (a, beta_ix, v) in (3usize..=5).prop_flat_map(|n| {
            let k = partitions_of(n).len();
            (positive_symmetric(n, 5), 0..k).prop_flat_map(move |(a, ix)| {
                let dim = dimension(&partitions_of(n)[ix]).to_usize().unwrap();
                (Just(a), Just(ix), unit_vector(dim))
            })
        })
    ) {
        let rep = irrep(&partitions_of(a.degree())[beta_ix]);
        let lap = laplacian(&a, &rep).unwrap();
        let lhs = v.dot(&(&lap * &v));
        let rhs: f64 = a
            .terms()
            .map(|(g, c)| 0.5 * f(c) * (rep.matrix_of(g) * &v - &v).norm_squared())
            .sum();
        prop_assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn defining_spectrum_splits(w in (3usize..=6).prop_flat_map(weights)) {
        let n = w.degree();
        let a = w.to_element();
        let d = symmetric_spectrum(&defining_rep(n).unwrap().evaluate(&a).unwrap()).unwrap();
        let mut expect = symmetric_spectrum(&irrep(&Partition::hook(n, n - 1)).evaluate(&a).unwrap()).unwrap();
        expect.push(f(&a.trivial_eval()));
        expect.sort_by(f64::total_cmp);
        prop_assert!(close_spectra(&d, &expect, 1e-9));
    }

    #[test]
    fn semi_recursive_bound(w in (3usize..=6).prop_flat_map(weights)) {
        let n = w.degree();
        let psi = gap_min(&w.to_element(), 1e-9).unwrap().gap;
        let z = gap_min(&w.theta().unwrap().to_element(), 1e-9).unwrap().gap;
        let d = gap_rep(&w.to_element(), &defining_rep(n).unwrap()).unwrap();
        prop_assert!(psi >= z.min(d) - 1e-9, "psi {} theta {} defining {}", psi, z, d);
    }

    #[test]
    fn restriction_follows_branching(
        (alpha, a) in (3usize..=6).prop_flat_map(|n| {
            (prop::sample::select(partitions_of(n)), positive_symmetric(n - 1, 5))
        })
    ) {
        let n = alpha.size();
        let big = symmetric_spectrum(&irrep(&alpha).evaluate(&a.embed(n)).unwrap()).unwrap();
        let mut parts: Vec<f64> = alpha
            .branch_down()
            .iter()
            .flat_map(|b| symmetric_spectrum(&irrep(b).evaluate(&a).unwrap()).unwrap())
            .collect();
        parts.sort_by(f64::total_cmp);
        prop_assert!(close_spectra(&big, &parts, 1e-9));
    }

    #[test]
    fn conjugate_irreps_agree_on_even_elements(
        (alpha, a) in (3usize..=6).prop_flat_map(|n| (prop::sample::select(partitions_of(n)), positive_symmetric(n, 6)))
    ) {
        let n = alpha.size();
        let even = AlgebraElement::from_terms(
            n,
            a.terms().filter(|(g, _)| g.is_even()).map(|(g, c)| (g.clone(), c.clone())),
        )
        .unwrap();
        let s1 = symmetric_spectrum(&irrep(&alpha).evaluate(&even).unwrap()).unwrap();
        let s2 = symmetric_spectrum(&irrep(&alpha.conjugate()).evaluate(&even).unwrap()).unwrap();
        prop_assert!(close_spectra(&s1, &s2, 1e-9));
    }

    #[test]
    fn enlarging_generators_never_decreases_displacement(
        (q, extra, v) in (3usize..=5).prop_flat_map(|n| {
            (prop::collection::vec(perm(n), 1..4), perm(n), prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n))
        })
    ) {
        let n = extra.degree();
        let r: f64 = v.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        prop_assume!(r > 1e-3);
        let v: Vec<Complex> = v.iter().map(|(a, b)| [a / r, b / r]).collect();
        let d = defining_rep(n).unwrap();
        let small = displacement_max(&d, &q, &v).unwrap();
        let mut bigger = q.clone();
        bigger.push(extra);
        prop_assert!(displacement_max(&d, &bigger, &v).unwrap() >= small);
    }
}

#[test]
fn class_sizes_sum_to_factorial() {
    for n in 1..=10 {
        let total: BigUint = partitions_of(n).iter().map(Partition::class_size).sum();
        assert_eq!(total, factorial(n));
    }
}

#[test]
fn conjugation_is_an_involution() {
    for n in 1..=12 {
        for p in partitions_of(n) {
            assert_eq!(p.conjugate().conjugate(), p);
        }
    }
}

#[test]
fn braid_relations_hold() {
    for n in 2..=6 {
        for rep in irreps(n).iter() {
            let s = rep.generator_matrices();
            let id = DMatrix::<f64>::identity(rep.dim(), rep.dim());
            for i in 0..s.len() {
                assert!((&s[i] * &s[i] - &id).amax() < 1e-10);
                if i + 1 < s.len() {
                    let l = &s[i] * &s[i + 1] * &s[i];
                    let r = &s[i + 1] * &s[i] * &s[i + 1];
                    assert!((l - r).amax() < 1e-10);
                }
                for j in i + 2..s.len() {
                    assert!((&s[i] * &s[j] - &s[j] * &s[i]).amax() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn regular_gap_equals_gap_min() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for n in 2..=5 {
        let reg = regular_rep(n).unwrap();
        for _ in 0..4 {
            let a = positive_symmetric(n, 6).new_tree(&mut runner).unwrap().current();
            let via_regular = gap_rep(&a, &reg).unwrap();
            let via_irreps = gap_min(&a, 1e-9).unwrap().gap;
            if via_irreps.is_infinite() {
                assert!(via_regular.is_infinite());
            } else {
                assert!((via_regular - via_irreps).abs() < 1e-8, "n={n}: {via_regular} vs {via_irreps}");
            }
        }
    }
}

#[test]
fn kazhdan_estimate_is_gauge_invariant() {
    let n = 4;
    let d = defining_rep(n).unwrap();
    let cfg = KazhdanConfig {
        restarts: 8,
        seed: 11,
        ..KazhdanConfig::default()
    };
    let tn = transpositions(n);
    let base = kazhdan_rep_estimate(&d, &tn, &cfg).unwrap();
    let pi = Permutation::from_images(&[3, 1, 4, 2]).unwrap();
    let conj: Vec<Permutation> = tn.iter().map(|t| t.conjugate_by(&pi).unwrap()).collect();
    let moved = kazhdan_rep_estimate(&d, &conj, &cfg).unwrap();
    assert!((base.kappa - moved.kappa).abs() < 1e-9, "{} vs {}", base.kappa, moved.kappa);
}

#[test]
fn zero_eigenspace_is_trivial_for_connected_weights() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for n in 3..=6 {
        let mut seen = 0;
        while seen < 5 {
            let w = weights(n).new_tree(&mut runner).unwrap().current();
            if !w.is_connected() {
                continue;
            }
            seen += 1;
            assert!(gap_min(&w.to_element(), 1e-9).unwrap().gap > 1e-9);
        }
    }
}
