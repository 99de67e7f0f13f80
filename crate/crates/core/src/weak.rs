//! The weak-`ℓ_q` functional `sup_{‖x*‖≤1} (Σ_k |⟨x_k, x*⟩|^q)^{1/q}`.

use crate::error::{Error, Result};
use crate::estimate::{Budget, Estimate, Witness};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::search;
use crate::seq::lp_unchecked;
use crate::signs::{sup_over_signs, sup_value_over_signs, ENUMERATION_CAP};
use crate::space::{check_config, conjugate, dot, NormedSpace};

fn check_q<T: Real>(q: T) -> Result<()> {
    if !(q >= T::one()) {
        return Err(crate::error::invalid("q", format!("need q >= 1, got {q}")));
    }
    Ok(())
}

/// Transposed configuration: `c_j = (x_1(j), …, x_n(j))`.
fn coordinate_columns<T: Real>(config: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    (0..dim).map(|j| config.iter().map(|x| x[j]).collect()).collect()
}

/// The functional in closed form or by exact enumeration, when possible.
pub fn weak_lq_exact<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], q: T) -> Option<(T, &'static str)> {
    let d = space.dim();
    if config.iter().all(|x| x.iter().all(|v| v.is_zero())) {
        return Some((T::zero(), "zero configuration"));
    }
    if q == T::lit(2.0) && space.is_euclidean() {
        let m = Matrix::from_rows(config).ok()?;
        return Some((linalg::singular_values(&m)[0], "largest singular value"));
    }
    match space.as_lp() {
        Some(p) if p.is_infinite() => {
            // extreme points of B_{ℓ_1} are ±e_j
            let cols = coordinate_columns(config, d);
            return Some((cols.iter().map(|c| lp_unchecked(c, q)).fold(T::zero(), T::max), "coordinate functionals"));
        }
        Some(p) if p == T::one() && d <= ENUMERATION_CAP => {
            // extreme points of B_{ℓ_∞} are sign vectors
            let cols = coordinate_columns(config, d);
            return Some((sup_value_over_signs(&cols, config.len(), |s| lp_unchecked(s, q)), "dual sign enumeration"));
        }
        _ => {}
    }
    if q == T::one() && space.is_normed() && config.len() <= ENUMERATION_CAP {
        return Some((sup_value_over_signs(config, d, |s| space.norm_unchecked(s)), "sign enumeration"));
    }
    None
}

/// `(Σ ‖x_k‖^q)^{1/q}`, always an upper bound.
pub fn weak_lq_holder<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], q: T) -> T {
    let norms: Vec<T> = config.iter().map(|x| space.norm_unchecked(x)).collect();
    lp_unchecked(&norms, q)
}

/// Exact value if available, otherwise the Hölder bound.
pub(crate) fn weak_lq_upper<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], q: T) -> T {
    weak_lq_exact(space, config, q).map_or_else(|| weak_lq_holder(space, config, q), |e| e.0)
}

pub fn weak_lq_functional<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    q: T,
    budget: Budget,
    seed: u64,
) -> Result<Estimate<T>> {
    check_q(q)?;
    check_config(space, config)?;
    if let Some((v, method)) = weak_lq_exact(space, config, q) {
        if method == "sign enumeration" {
            let (_, eps) = sup_over_signs(config, space.dim(), |s| space.norm_unchecked(s));
            return Ok(Estimate::exact(v, Witness::Vector(eps), method));
        }
        return Ok(Estimate::exact(v, Witness::None, method));
    }
    let holder = weak_lq_holder(space, config, q);
    let n = config.len();
    let d = space.dim();
    if space.is_normed() {
        // sup over a in B_{ℓ_q'} of ‖Σ a_k x_k‖
        let qc = conjugate(q);
        let f = |a: &[T]| {
            let na = lp_unchecked(a, qc);
            if na > T::zero() {
                space.norm_unchecked(&combine(config, a, d)) / na
            } else {
                T::neg_infinity()
            }
        };
        let mut starts = vec![vec![T::one(); n]];
        for k in 0..n {
            let mut e = vec![T::zero(); n];
            e[k] = T::one();
            starts.push(e);
        }
        let r = search::maximize(&f, n, &starts, budget, seed);
        let value = f(&r.point);
        return Ok(Estimate::lower(value, Witness::Vector(r.point), budget, seed, "primal search").with_companion(Some(holder)));
    }
    // quasi-normed: search functionals, normalized by the exact dual norm
    if space.dual_norm_exact(&vec![T::one(); d]).is_none() {
        return Err(Error::Unsupported(format!("weak functional on {} needs an exact dual norm", space.label())));
    }
    let f = |y: &[T]| match space.dual_norm_exact(y) {
        Some(dn) if dn > T::zero() => {
            let vals: Vec<T> = config.iter().map(|x| dot(x, y)).collect();
            lp_unchecked(&vals, q) / dn
        }
        _ => T::neg_infinity(),
    };
    let mut starts: Vec<Vec<T>> = config.to_vec();
    starts.extend(config.iter().map(|x| x.iter().map(|v| v.signum()).collect::<Vec<T>>()));
    starts.push(vec![T::one(); d]);
    let r = search::maximize(&f, d, &starts, budget, seed);
    let value = f(&r.point);
    Ok(Estimate::lower(value, Witness::Vector(r.point), budget, seed, "dual search").with_companion(Some(holder)))
}

pub(crate) fn combine<T: Real>(config: &[Vec<T>], a: &[T], dim: usize) -> Vec<T> {
    let mut s = vec![T::zero(); dim];
    for (x, &ak) in config.iter().zip(a) {
        if ak.is_zero() {
            continue;
        }
        for (si, &xi) in s.iter_mut().zip(x) {
            *si += ak * xi;
        }
    }
    s
}

/// The unit vectors `e_1, …, e_n` of `ℝ^n`.
pub fn unit_vectors<T: Real>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|k| {
            let mut e = vec![T::zero(); n];
            e[k] = T::one();
            e
        })
        .collect()
}
