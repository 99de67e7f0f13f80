//! Enumeration of the signed sums `Σ ε_k x_k`.
//!
//! The last sign is fixed to `+1` (every quantity used here is invariant under
//! the global flip), leaving `2^{n−1}` patterns visited in Gray-code order so
//! each step costs one vector update. High-order bits are split into chunks
//! that run in parallel and are folded back in chunk order.

use rayon::prelude::*;

use crate::scalar::Real;

/// Largest configuration length accepted by exact enumeration.
pub const ENUMERATION_CAP: usize = 20;

const LOW_BITS: usize = 12;

/// Folds `map(Σ ε_k x_k, ε)` over all sign patterns with `ε_n = +1`.
pub fn fold_sign_sums<T, R, M, F>(vectors: &[Vec<T>], dim: usize, identity: R, map: M, fold: F) -> R
where
    T: Real,
    R: Send + Clone,
    M: Fn(&[T], &[T]) -> R + Sync,
    F: Fn(R, R) -> R + Sync,
{
    let n = vectors.len();
    if n == 0 {
        return fold(identity, map(&vec![T::zero(); dim], &[]));
    }
    let free = n - 1;
    let low = free.min(LOW_BITS);
    let high = free - low;
    let chunk = |c: usize| {
        let mut eps = vec![T::one(); n];
        for b in 0..high {
            if (c >> b) & 1 == 1 {
                eps[low + b] = -T::one();
            }
        }
        let mut sum = vec![T::zero(); dim];
        for (x, &e) in vectors.iter().zip(&eps) {
            for (s, &v) in sum.iter_mut().zip(x) {
                *s += e * v;
            }
        }
        let mut acc = map(&sum, &eps);
        for i in 1usize..(1 << low) {
            let b = i.trailing_zeros() as usize;
            eps[b] = -eps[b];
            let two_e = eps[b] + eps[b];
            for (s, &v) in sum.iter_mut().zip(&vectors[b]) {
                *s += two_e * v;
            }
            acc = fold(acc, map(&sum, &eps));
        }
        acc
    };
    let parts: Vec<R> = (0..1usize << high).into_par_iter().map(chunk).collect();
    parts.into_iter().fold(identity, &fold)
}

/// `max_ε ‖Σ ε_k x_k‖` with a maximizing sign pattern.
pub fn sup_over_signs<T, N>(vectors: &[Vec<T>], dim: usize, norm: N) -> (T, Vec<T>)
where
    T: Real,
    N: Fn(&[T]) -> T + Sync,
{
    fold_sign_sums(
        vectors,
        dim,
        (T::neg_infinity(), Vec::new()),
        |s, e| (norm(s), e.to_vec()),
        |a, b| if b.0 > a.0 { b } else { a },
    )
}

/// `max_ε ‖Σ ε_k x_k‖` without the witness.
pub fn sup_value_over_signs<T, N>(vectors: &[Vec<T>], dim: usize, norm: N) -> T
where
    T: Real,
    N: Fn(&[T]) -> T + Sync,
{
    fold_sign_sums(vectors, dim, T::neg_infinity(), |s, _| norm(s), T::max)
}

/// `(Σ_ε ‖Σ ε_k x_k‖^moment, number of patterns)`.
pub fn sum_over_signs<T, N>(vectors: &[Vec<T>], dim: usize, norm: N, moment: i32) -> (T, usize)
where
    T: Real,
    N: Fn(&[T]) -> T + Sync,
{
    fold_sign_sums(vectors, dim, (T::zero(), 0), |s, _| (norm(s).powi(moment), 1), |a, b| (a.0 + b.0, a.1 + b.1))
}
