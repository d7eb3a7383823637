//! Small algebras used across the test suites and shipped as data files.
//!
//! The truncated polynomial algebras k[X]/(X^n) are the running examples:
//! local, symmetric, with uniserial module category. `n22` is the smallest
//! self-injective Nakayama algebra whose Nakayama permutation is not the
//! identity, and `qa2` is the path algebra of the A2 quiver, the standard
//! non-self-injective counterexample.

use crate::algebra::{Alg, AlgebraSpec};

/// k[X]/(X^n) over F_p.  Basis 1, x, ..., x^(n-1).
pub fn truncated_poly_spec(name: &str, p: u64, n: usize) -> AlgebraSpec {
    assert!(n >= 1);
    let mut mult = vec![vec![vec![0u64; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i + j < n {
                mult[i][j][i + j] = 1;
            }
        }
    }
    let mut labels = vec!["1".to_string()];
    for i in 1..n {
        labels.push(format!("x^{i}"));
    }
    AlgebraSpec {
        name: name.to_string(),
        p,
        dim: n,
        basis_labels: labels,
        idempotent_indices: vec![0],
        radical_indices: (1..n).collect(),
        mult_table: mult,
    }
}

pub fn a2_spec() -> AlgebraSpec {
    truncated_poly_spec("a2", 2, 2)
}

pub fn a3_spec() -> AlgebraSpec {
    truncated_poly_spec("a3", 2, 3)
}

pub fn a5_spec() -> AlgebraSpec {
    truncated_poly_spec("a5", 5, 5)
}

pub fn a2() -> Alg {
    a2_spec().validate().expect("a2 validates")
}

pub fn a3() -> Alg {
    a3_spec().validate().expect("a3 validates")
}

pub fn a5() -> Alg {
    a5_spec().validate().expect("a5 validates")
}

/// Self-injective Nakayama algebra with two simples and Loewy length two.
///
/// Quiver: two vertices with arrows a: 1 -> 2 and b: 2 -> 1, all paths of
/// length two zero.  The projectives have tops S_1, S_2 and socles S_2,
/// S_1, so the Nakayama permutation is the transposition.
pub fn n22_spec() -> AlgebraSpec {
    // Basis order: e1, e2, a, b with a = e2 a e1 and b = e1 b e2.
    let dim = 4;
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    let mut set = |i: usize, j: usize, k: usize| mult[i][j][k] = 1;
    set(0, 0, 0); // e1 e1 = e1
    set(1, 1, 1); // e2 e2 = e2
    set(1, 2, 2); // e2 a = a
    set(2, 0, 2); // a e1 = a
    set(0, 3, 3); // e1 b = b
    set(3, 1, 3); // b e2 = b
    AlgebraSpec {
        name: "n22".to_string(),
        p: 2,
        dim,
        basis_labels: vec!["e1".into(), "e2".into(), "a".into(), "b".into()],
        idempotent_indices: vec![0, 1],
        radical_indices: vec![2, 3],
        mult_table: mult,
    }
}

pub fn n22() -> Alg {
    n22_spec().validate().expect("n22 validates")
}

/// Path algebra of the A2 quiver: e1, e2 and one arrow a: 1 -> 2.
pub fn qa2_spec() -> AlgebraSpec {
    let dim = 3;
    let mut mult = vec![vec![vec![0u64; dim]; dim]; dim];
    let mut set = |i: usize, j: usize, k: usize| mult[i][j][k] = 1;
    set(0, 0, 0); // e1 e1 = e1
    set(1, 1, 1); // e2 e2 = e2
    set(1, 2, 2); // e2 a = a
    set(2, 0, 2); // a e1 = a
    AlgebraSpec {
        name: "qa2".to_string(),
        p: 2,
        dim,
        basis_labels: vec!["e1".into(), "e2".into(), "a".into()],
        idempotent_indices: vec![0, 1],
        radical_indices: vec![2],
        mult_table: mult,
    }
}

pub fn qa2() -> Alg {
    qa2_spec().validate().expect("qa2 validates")
}
