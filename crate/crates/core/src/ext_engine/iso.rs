use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::AlgebraPresentation;
use super::homext::hom;
use super::module::ModuleRep;
use crate::field::Field;
use crate::linalg::Matrix;

const SMALL_TRIES: usize = 64;
const WIDE_TRIES: usize = 16;
const WIDE_RANGE: i64 = 1_000_000;

pub fn is_isomorphic<F: Field>(alg: &AlgebraPresentation<F>, m: &ModuleRep<F>, n: &ModuleRep<F>) -> bool {
    is_isomorphic_seeded(alg, m, n, 0x5eed)
}

/// Searches `Hom(M, N)` for an invertible element: basis elements, their sum,
/// small integer combinations and finally wide random combinations.
pub fn is_isomorphic_seeded<F: Field>(
    alg: &AlgebraPresentation<F>,
    m: &ModuleRep<F>,
    n: &ModuleRep<F>,
    seed: u64,
) -> bool {
    if m.dim() != n.dim() || m.weight_multiset() != n.weight_multiset() {
        return false;
    }
    if m.dim() == 0 {
        return true;
    }
    let basis = hom(alg, m, n);
    if basis.is_empty() {
        return false;
    }
    if basis.iter().any(Matrix::is_invertible) {
        return true;
    }
    let sum = basis.iter().skip(1).fold(basis[0].clone(), |acc, b| acc.add(b));
    if sum.is_invertible() {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let combo = |rng: &mut ChaCha8Rng, range: i64| {
        basis.iter().fold(Matrix::zeros(n.dim(), m.dim()), |acc, b| {
            let c: i64 = rng.gen_range(-range..=range);
            if c == 0 {
                acc
            } else {
                acc.add(&b.scale(&F::from_i64(c)))
            }
        })
    };
    if basis.len() > 1 {
        for _ in 0..SMALL_TRIES {
            if combo(&mut rng, 3).is_invertible() {
                return true;
            }
        }
    }
    (0..WIDE_TRIES).any(|_| combo(&mut rng, WIDE_RANGE).is_invertible())
}
