//! Shared fixtures for the integration tests: an extra algebra with a
//! nontrivial d-center, seeded random rationals, and a brute-force oracle
//! that recomputes dimensions without touching the library's solvers.
#![allow(dead_code)]

pub mod oracle;

use fullgraph::linalg::{int, ratio, zero_vec};
use fullgraph::{LieAlgebra, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A 7-dimensional characteristically nilpotent filiform algebra. Every
/// derivation is nilpotent, so the top of the lower central series is fixed
/// by all of `Der(G)` and the d-center is one-dimensional.
pub fn filiform7() -> LieAlgebra {
    type IntTable<'a> = &'a [(usize, usize, &'a [(usize, i64)])];
    let table: IntTable = &[
        (0, 1, &[(2, 1)]),
        (0, 2, &[(3, 1)]),
        (0, 3, &[(4, 1)]),
        (0, 4, &[(5, 1)]),
        (0, 5, &[(6, 1)]),
        (1, 2, &[(3, 1), (5, 1), (6, 1)]),
        (1, 3, &[(4, 1), (6, 1)]),
        (1, 4, &[(5, 1), (6, -1)]),
        (1, 5, &[(6, 1)]),
        (2, 3, &[(6, 1)]),
    ];
    let brackets: Vec<(usize, usize, Vec<Scalar>)> = table
        .iter()
        .map(|(i, j, terms)| {
            let mut v = zero_vec(7);
            for &(k, c) in terms.iter() {
                v[k] = int(c);
            }
            (*i, *j, v)
        })
        .collect();
    LieAlgebra::new(7, &brackets).expect("filiform7 satisfies Jacobi")
}

/// Catalog entries followed by `filiform7`.
pub fn test_algebras() -> Vec<(String, LieAlgebra)> {
    let mut out: Vec<(String, LieAlgebra)> = fullgraph::catalog()
        .into_iter()
        .map(|e| (e.name.to_string(), e.algebra))
        .collect();
    out.push(("filiform7".to_string(), filiform7()));
    out
}

/// A small rational `p/q` with `|p| <= 5`, `1 <= q <= 3`.
pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| small_rational(rng)).collect()
}

/// A random vector with at least two nonzero coordinates whenever `n >= 2`,
/// so it is never a scalar multiple of a basis vector.
pub fn random_non_basis_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    loop {
        let v = random_vec(rng, n);
        let nonzero = v.iter().filter(|c| !num_traits::Zero::is_zero(*c)).count();
        if nonzero >= n.min(2) && nonzero > 0 {
            return v;
        }
    }
}
