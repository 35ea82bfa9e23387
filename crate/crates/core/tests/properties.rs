//! Randomized properties of the semi-tensor-product calculus, the spectral
//! routines and the automaton lifts.

use num_complex::Complex;
use proptest::prelude::*;

use cjsr_core::automaton::{f_product, structure_matrices, Dfa};
use cjsr_core::spectra::{block_norm, eigenvalues, matrix_norm, spectral_radius, NormKind};
use cjsr_core::stp::{power_reducing_matrix, stp, swap_matrix};
use cjsr_core::systems::{stp_lift, ArbitrarySystem, ConstrainedSystem};
use cjsr_core::word::Word;
use cjsr_core::Matrix;

fn approx(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> bool {
    let scale = 1.0 + a.max_abs().max(b.max_abs());
    a.approx_eq(b, tol * scale)
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-2.0f64..2.0, rows * cols).prop_map(move |data| {
        let rows_vec: Vec<Vec<f64>> = data.chunks(cols).map(|c| c.to_vec()).collect();
        Matrix::from_rows(&rows_vec).unwrap()
    })
}

fn dims() -> impl Strategy<Value = usize> {
    1usize..=4
}

fn col(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    mat(n, 1)
}

/// A random alive DFA: every state gets at least one outgoing edge.
fn dfa(states: usize, labels: usize) -> impl Strategy<Value = Dfa> {
    prop::collection::vec(0usize..=states, states * labels).prop_map(move |targets| {
        let mut edges = Vec::new();
        for s in 1..=states {
            let mut any = false;
            for l in 1..=labels {
                let t = targets[(s - 1) * labels + (l - 1)];
                if t != 0 {
                    edges.push((s, t, l));
                    any = true;
                }
            }
            if !any {
                // force aliveness with a self-loop on the first label
                edges.push((s, s, 1));
            }
        }
        Dfa::from_edges(states, labels, &edges).unwrap()
    })
}

fn system(n: usize, m: usize) -> impl Strategy<Value = ArbitrarySystem<f64>> {
    prop::collection::vec(mat(n, n), m).prop_map(|mats| ArbitrarySystem::new(mats).unwrap())
}

fn word(len: usize, m: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1usize..=m, 1..=len).prop_map(move |ls| Word::new(ls, m).unwrap())
}

/// A constrained system over 2x2 matrices plus a probe word.
fn lift_instance() -> impl Strategy<Value = (ConstrainedSystem<f64>, Word)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(states, labels)| {
        (dfa(states, labels), system(2, labels), word(4, labels))
            .prop_map(|(d, s, w)| (ConstrainedSystem::new(s, d).unwrap(), w))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// x (stp) A = (I_n (x) A) (stp) x for a column vector x.
    #[test]
    fn vector_pullthrough((x, a) in (dims(), dims(), dims())
        .prop_flat_map(|(n, p, q)| (col(n), mat(p, q)))) {
        let lhs = stp(&x, &a).unwrap();
        let eye = Matrix::<f64>::identity(x.rows());
        let rhs = stp(&eye.kron(&a).unwrap(), &x).unwrap();
        prop_assert!(approx(&lhs, &rhs, 1e-12));
    }

    /// x (stp) x = Phi_n x for logical vectors x.
    #[test]
    fn power_reduction((n, i) in dims().prop_flat_map(|n| (Just(n), 1usize..=n))) {
        let x = cjsr_core::DeltaVector::new(n, i).unwrap().to_matrix::<f64>();
        let lhs = stp(&x, &x).unwrap();
        let phi = power_reducing_matrix(n).densify::<f64>();
        let rhs = phi.mul(&x).unwrap();
        prop_assert!(approx(&lhs, &rhs, 1e-12));
    }

    /// W_[n,m] (stp) x (stp) y = y (stp) x.
    #[test]
    fn swap_exchanges_vectors((x, y) in (dims().prop_flat_map(col), dims().prop_flat_map(col))) {
        let w = swap_matrix(x.rows(), y.rows()).densify::<f64>();
        let lhs = stp(&stp(&w, &x).unwrap(), &y).unwrap();
        let rhs = stp(&y, &x).unwrap();
        prop_assert!(approx(&lhs, &rhs, 1e-12));
    }

    /// (A (stp) B) (stp) C = A (stp) (B (stp) C).
    #[test]
    fn stp_associativity((a, b, c) in (dims(), dims(), dims(), dims(), dims(), dims())
        .prop_flat_map(|(r1, c1, r2, c2, r3, c3)| (mat(r1, c1), mat(r2, c2), mat(r3, c3)))) {
        let lhs = stp(&stp(&a, &b).unwrap(), &c).unwrap();
        let rhs = stp(&a, &stp(&b, &c).unwrap()).unwrap();
        prop_assert!(approx(&lhs, &rhs, 1e-12));
    }

    /// (A (x) B)(C (x) D) = (AC) (x) (BD).
    #[test]
    fn kron_mixed_product((a, c, b, d) in (dims(), dims(), dims(), dims(), dims(), dims())
        .prop_flat_map(|(n1, n2, n3, m1, m2, m3)| {
            (mat(n1, n2), mat(n2, n3), mat(m1, m2), mat(m2, m3))
        })) {
        let lhs = a.kron(&b).unwrap().mul(&c.kron(&d).unwrap()).unwrap();
        let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap()).unwrap();
        prop_assert!(approx(&lhs, &rhs, 1e-12));
    }

    /// Eigenvalue moduli of A (x) B are the pairwise products of moduli.
    #[test]
    fn kron_eigenvalue_moduli((a, b) in (1usize..=3, 1usize..=3)
        .prop_flat_map(|(n, m)| (mat(n, n), mat(m, m)))) {
        let ea = eigenvalues(&a).unwrap();
        let eb = eigenvalues(&b).unwrap();
        let mut expected: Vec<f64> = ea
            .eigenvalues()
            .iter()
            .flat_map(|x| eb.eigenvalues().iter().map(move |y| (x * y).norm()))
            .collect();
        let mut got: Vec<f64> = eigenvalues(&a.kron(&b).unwrap())
            .unwrap()
            .eigenvalues()
            .iter()
            .map(|z| z.norm())
            .collect();
        expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
        got.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let scale = 1.0 + expected.last().copied().unwrap_or(0.0);
        for (e, g) in expected.iter().zip(&got) {
            prop_assert!((e - g).abs() <= 1e-9 * scale, "{e} vs {g}");
        }
    }

    /// Every computed eigenvalue annihilates the characteristic polynomial.
    #[test]
    fn eigenvalues_satisfy_char_poly(a in (2usize..=3).prop_flat_map(|n| mat(n, n))) {
        let spec = eigenvalues(&a).unwrap();
        for lambda in spec.eigenvalues() {
            let det = char_det(&a, *lambda);
            let scale = (1.0 + a.max_abs()).powi(a.rows() as i32);
            prop_assert!(det.norm() <= 1e-9 * scale, "|det| = {}", det.norm());
        }
    }

    /// All norms are sub-multiplicative and dominate the spectral radius.
    #[test]
    fn norms_submultiplicative_and_dominate_rho((a, b) in dims()
        .prop_flat_map(|n| (mat(n, n), mat(n, n)))) {
        let kinds = [NormKind::One, NormKind::Inf, NormKind::Frobenius, NormKind::Two];
        let rho = spectral_radius(&a).unwrap();
        for kind in &kinds {
            let na = matrix_norm(&a, kind).unwrap();
            let nb = matrix_norm(&b, kind).unwrap();
            let nab = matrix_norm(&a.mul(&b).unwrap(), kind).unwrap();
            prop_assert!(nab <= na * nb + 1e-9 * (1.0 + na * nb), "{kind}");
            prop_assert!(rho <= na + 1e-9 * (1.0 + na), "{kind}");
        }
    }

    /// The block norm is sub-multiplicative on lifted products.
    #[test]
    fn block_norm_submultiplicative((c, _w) in lift_instance()) {
        let states = c.dfa().num_states();
        let labels = c.dfa().num_labels();
        let lift = stp_lift(&c).unwrap();
        for i in 1..=labels {
            for j in 1..=labels {
                let p = lift.phi(i).mul(lift.phi(j)).unwrap();
                let np = block_norm(&p, states, &NormKind::Two).unwrap();
                let ni = block_norm(lift.phi(i), states, &NormKind::Two).unwrap();
                let nj = block_norm(lift.phi(j), states, &NormKind::Two).unwrap();
                prop_assert!(np <= ni * nj + 1e-9 * (1.0 + ni * nj));
            }
        }
    }

    /// Iterating `step` along a word equals multiplying by the word product.
    #[test]
    fn dynamics_match_word_product((s, w, x0) in (1usize..=3, 1usize..=3)
        .prop_flat_map(|(n, m)| (system(n, m), word(5, m), col(n)))) {
        let x0v: Vec<f64> = x0.data().to_vec();
        let mut x = x0v.clone();
        for &label in w.labels() {
            x = s.step(label, &x).unwrap();
        }
        let direct = s.product(&w).unwrap().mul_vec(&x0v).unwrap();
        for (a, b) in x.iter().zip(&direct) {
            prop_assert!((a - b).abs() <= 1e-10 * (1.0 + b.abs()));
        }
    }

    /// Phi_sigma = F_sigma (x) A_sigma for every word, and the block norm of
    /// an accepted word's lifted product equals the base norm of A_sigma.
    #[test]
    fn lift_is_homomorphic((c, w) in lift_instance()) {
        let states = c.dfa().num_states();
        let lift = stp_lift(&c).unwrap();
        let mut phi_w = lift.phi(w.labels()[0]).clone();
        for &label in &w.labels()[1..] {
            phi_w = lift.phi(label).mul(&phi_w).unwrap();
        }
        let fw = f_product(c.dfa(), &w).unwrap();
        let aw = c.system().product(&w).unwrap();
        let expected = fw.densify::<f64>().kron(&aw).unwrap();
        prop_assert!(approx(&phi_w, &expected, 1e-12));
        if !fw.is_zero() {
            let bn = block_norm(&phi_w, states, &NormKind::Two).unwrap();
            let base = matrix_norm(&aw, &NormKind::Two).unwrap();
            prop_assert!((bn - base).abs() <= 1e-10 * (1.0 + base));
        }
    }

    /// Graph-walk acceptance agrees with structure-matrix product
    /// nonzeroness, and enumeration yields exactly the accepted words.
    #[test]
    fn acceptance_oracles_agree(d in (1usize..=3, 1usize..=3)
        .prop_flat_map(|(states, labels)| dfa(states, labels))) {
        let labels = d.num_labels();
        let sm = structure_matrices(&d);
        prop_assert_eq!(sm.per_label().len(), labels);
        for w in all_words(labels, 4) {
            let via_walk = d.accepts(&w).unwrap();
            let via_product = !f_product(&d, &w).unwrap().is_zero();
            prop_assert_eq!(via_walk, via_product, "word {}", w);
        }
        for k in 1..=3usize {
            let listed: Vec<Word> = d.enumerate_accepted(k).collect();
            let filtered: Vec<Word> = all_words(labels, k)
                .into_iter()
                .filter(|w| w.len() == k && d.accepts(w).unwrap())
                .collect();
            prop_assert_eq!(listed, filtered);
        }
    }
}

/// All nonempty words over `[m]` of length at most `k`, lexicographic within
/// each length.
fn all_words(m: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for len in 1..=k {
        let total = m.pow(len as u32);
        for idx in 0..total {
            let mut rem = idx;
            let mut labels = vec![0usize; len];
            for slot in labels.iter_mut().rev() {
                *slot = rem % m + 1;
                rem /= m;
            }
            out.push(Word::new(labels, m).unwrap());
        }
    }
    out
}

/// det(A - lambda I) for n <= 3, expanded directly over complex scalars.
fn char_det(a: &Matrix<f64>, lambda: Complex<f64>) -> Complex<f64> {
    let n = a.rows();
    let e = |i: usize, j: usize| {
        let mut v = Complex::new(a.get(i, j), 0.0);
        if i == j {
            v -= lambda;
        }
        v
    };
    match n {
        1 => e(0, 0),
        2 => e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0),
        3 => {
            e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1))
                - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
                + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
        }
        _ => unreachable!(),
    }
}
