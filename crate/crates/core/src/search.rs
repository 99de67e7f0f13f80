//! Multi-start compass search with deterministic seeding.
//!
//! Starts are polished independently (in parallel) and reduced over the full
//! list in start order, so the result depends only on the seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::estimate::Budget;
use crate::scalar::Real;

/// Generator for stream `stream` of master seed `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian_vec<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n)
        .map(|_| {
            let z: f64 = StandardNormal.sample(rng);
            T::lit(z)
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct SearchResult<T> {
    pub point: Vec<T>,
    pub value: T,
    /// Index into the combined start list (structured starts first).
    pub start: usize,
    pub evaluations: usize,
}

fn sanitize<T: Real>(v: T) -> T {
    if v.is_nan() {
        T::neg_infinity()
    } else {
        v
    }
}

/// Coordinate compass ascent from `x` using at most `max_evals` evaluations.
pub fn polish<T: Real, F: Fn(&[T]) -> T>(f: &F, mut x: Vec<T>, max_evals: usize) -> (Vec<T>, T, usize) {
    let mut best = sanitize(f(&x));
    let mut evals = 1;
    let scale = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let scale = if scale > T::zero() { scale } else { T::one() };
    let mut h = T::lit(0.25) * scale;
    let floor = T::lit(1e-10) * scale;
    while evals < max_evals && h > floor && !x.is_empty() {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [T::one(), -T::one()] {
                if evals >= max_evals {
                    break;
                }
                let old = x[i];
                x[i] = old + sign * h;
                let v = sanitize(f(&x));
                evals += 1;
                if v > best {
                    best = v;
                    improved = true;
                    break;
                }
                x[i] = old;
            }
        }
        if !improved {
            h *= T::lit(0.5);
        }
    }
    (x, best, evals)
}

/// Maximizes `f` over `ℝ^dim` from the structured starts plus
/// `budget.starts` gaussian random starts.
pub fn maximize<T, F>(f: &F, dim: usize, structured: &[Vec<T>], budget: Budget, seed: u64) -> SearchResult<T>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let mut starts: Vec<Vec<T>> = structured.to_vec();
    for i in 0..budget.starts {
        starts.push(gaussian_vec(&mut rng_for(seed, i as u64), dim));
    }
    let polished: Vec<(Vec<T>, T, usize)> =
        starts.into_par_iter().map(|x0| polish(f, x0, budget.polish.max(1))).collect();
    reduce(polished)
}

pub(crate) fn reduce<T: Real>(polished: Vec<(Vec<T>, T, usize)>) -> SearchResult<T> {
    let evaluations = polished.iter().map(|p| p.2).sum();
    let mut best: Option<(usize, Vec<T>, T)> = None;
    for (i, (x, v, _)) in polished.into_iter().enumerate() {
        if best.as_ref().is_none_or(|b| v > b.2) {
            best = Some((i, x, v));
        }
    }
    let (start, point, value) = best.unwrap_or((0, Vec::new(), T::neg_infinity()));
    SearchResult { point, value, start, evaluations }
}
