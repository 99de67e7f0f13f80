//! Approximation numbers, Weyl numbers and eigenvalue sequences.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Budget, Direction};
use crate::growth::GrowthSequence;
use crate::linalg;
use crate::linmap::LinearMap;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::search::{gaussian_vec, rng_for};
use crate::space::NormedSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SNumberKind {
    Approximation,
    Weyl,
}

/// `s_1 ≥ s_2 ≥ …` with a direction per entry; `partner` holds the bound in
/// the opposite direction (equal to `values` for exact entries).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SNumberSequence<T> {
    pub kind: SNumberKind,
    pub values: Vec<T>,
    pub directions: Vec<Direction>,
    pub partner: Vec<Option<T>>,
}

impl<T: Real> SNumberSequence<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Lower bounds per entry (zero when nothing better is known).
    pub fn lower_bounds(&self) -> Vec<T> {
        self.values
            .iter()
            .zip(&self.directions)
            .zip(&self.partner)
            .map(|((&v, d), p)| if d.is_lower() { v } else { p.unwrap_or(T::zero()) })
            .collect()
    }

    fn exact(kind: SNumberKind, values: Vec<T>) -> Self {
        let n = values.len();
        let partner = values.iter().map(|&v| Some(v)).collect();
        Self { kind, values, directions: vec![Direction::Exact; n], partner }
    }
}

/// Lower bounds `a_k(T) ≥ σ_k(T) / (‖id: ℓ_2 → X‖ ‖id: Y → ℓ_2‖)`.
fn euclidean_lower<T: Real>(t: &LinearMap<T>, sigma: &[T]) -> Vec<T> {
    match (t.domain().from_l2_bound(), t.codomain().to_l2_bound()) {
        (Some(a), Some(b)) if a * b > T::zero() => sigma.iter().map(|&s| s / (a * b)).collect(),
        _ => vec![T::zero(); sigma.len()],
    }
}

/// `a_n(T) = inf{‖T − S‖ : rank S < n}`; exact on Euclidean spaces,
/// upper bounds from Euclidean truncations otherwise.
pub fn approximation_numbers<T: Real>(t: &LinearMap<T>, budget: Budget, seed: u64) -> SNumberSequence<T> {
    let d = linalg::svd(t.matrix());
    let r = t.matrix().rows().min(t.matrix().cols());
    let sigma: Vec<T> = d.s.iter().copied().take(r).collect();
    if t.is_euclidean() || t.matrix().is_zero() {
        return SNumberSequence::exact(SNumberKind::Approximation, sigma);
    }
    let mut lower = euclidean_lower(t, &sigma);
    let mut upper = Vec::with_capacity(r);
    let mut exact_first = false;
    for k in 0..r {
        let residual = t.matrix().sub(&linalg::truncate(&d, k)).expect("same shape");
        let map = LinearMap::new(residual, t.domain().clone(), t.codomain().clone()).expect("same spaces");
        let est = map.operator_norm(budget, seed.wrapping_add(k as u64));
        if k == 0 {
            lower[0] = lower[0].max(est.lower_bound().unwrap_or(T::zero()));
            exact_first = est.direction == Direction::Exact;
        }
        upper.push(est.upper_bound().unwrap_or(T::infinity()));
    }
    // a_n ≤ a_k ≤ u_k for k ≤ n, and a_n ≥ a_m ≥ l_m for m ≥ n
    for k in 1..r {
        upper[k] = upper[k].min(upper[k - 1]);
    }
    for k in (0..r.saturating_sub(1)).rev() {
        lower[k] = lower[k].max(lower[k + 1]);
    }
    let directions = (0..r)
        .map(|k| if k == 0 && exact_first { Direction::Exact } else { Direction::Upper })
        .collect();
    SNumberSequence { kind: SNumberKind::Approximation, values: upper, directions, partner: lower.into_iter().map(Some).collect() }
}

/// Lower bounds for the approximation numbers of `T`, exact on Euclidean spaces.
pub fn approximation_lower<T: Real>(t: &LinearMap<T>, budget: Budget, seed: u64) -> Vec<T> {
    if t.is_euclidean() {
        return linalg::singular_values(t.matrix()).into_iter().take(t.matrix().rows().min(t.matrix().cols())).collect();
    }
    let sigma: Vec<T> = linalg::singular_values(t.matrix());
    let mut lower = euclidean_lower(t, &sigma);
    lower.truncate(t.matrix().rows().min(t.matrix().cols()));
    if let Some(first) = lower.first_mut() {
        *first = first.max(t.operator_norm(budget, seed).value);
    }
    lower
}

/// `x_n(T) = sup{a_n(Tu) : ‖u: ℓ_2 → X‖ ≤ 1}` as witnessed lower bounds.
pub fn weyl_numbers<T: Real>(t: &LinearMap<T>, budget: Budget, seed: u64) -> SNumberSequence<T> {
    let r = t.matrix().rows().min(t.matrix().cols());
    if t.matrix().is_zero() {
        return SNumberSequence::exact(SNumberKind::Weyl, vec![T::zero(); r]);
    }
    if t.domain().is_euclidean() {
        // u = id attains the supremum
        let a = approximation_numbers(t, budget, seed);
        return SNumberSequence { kind: SNumberKind::Weyl, ..a };
    }
    let n = t.domain().dim();
    let mut candidates = vec![Matrix::identity(n)];
    let d = linalg::svd(t.matrix());
    for k in 1..=r {
        let cols: Vec<Vec<T>> = (0..k).map(|j| d.v.column(j)).collect();
        candidates.push(Matrix::from_columns(&cols).expect("equal lengths"));
    }
    for s in 0..budget.starts {
        let mut rng = rng_for(seed, s as u64);
        candidates.push(Matrix::from_row_major(n, n, gaussian_vec(&mut rng, n * n)).expect("square"));
    }
    let mut best = vec![T::zero(); r];
    for (i, u) in candidates.into_iter().enumerate() {
        let m = u.cols();
        let umap = LinearMap::new(u, NormedSpace::euclidean(m), t.domain().clone()).expect("shapes match");
        let Some(unorm) = umap.operator_norm(budget, seed).upper_bound() else { continue };
        if !(unorm > T::zero()) {
            continue;
        }
        let tu = t.compose(&umap).expect("shapes match");
        let low = approximation_lower(&tu, budget, seed.wrapping_add(i as u64));
        for (b, l) in best.iter_mut().zip(low) {
            *b = b.max(l / unorm);
        }
    }
    for k in (0..r.saturating_sub(1)).rev() {
        best[k] = best[k].max(best[k + 1]);
    }
    SNumberSequence { kind: SNumberKind::Weyl, values: best, directions: vec![Direction::Lower; r], partner: vec![None; r] }
}

/// Eigenvalues with algebraic multiplicity, by non-increasing modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenSequence<T> {
    pub values: Vec<Complex<T>>,
}

impl<T: Real> EigenSequence<T> {
    pub fn moduli(&self) -> Vec<T> {
        self.values.iter().map(|z| z.norm()).collect()
    }
}

pub fn eigenvalue_sequence<T: Real>(a: &Matrix<Complex<T>>) -> Result<EigenSequence<T>> {
    let mut values = linalg::eigenvalues(a)?;
    values.sort_by(|x, y| {
        y.norm()
            .partial_cmp(&x.norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(y.re.partial_cmp(&x.re).unwrap_or(std::cmp::Ordering::Equal))
            .then(y.im.partial_cmp(&x.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    Ok(EigenSequence { values })
}

pub fn eigenvalue_sequence_real<T: Real>(a: &Matrix<T>) -> Result<EigenSequence<T>> {
    eigenvalue_sequence(&a.to_complex())
}

/// `(π_2(w), 2 Σ_j a_j(w)/√j)` for a Euclidean map, where
/// `π_2(w) = (Σ σ_j²)^{1/2}`.
pub fn pi2_by_approx_bound<T: Real>(w: &LinearMap<T>) -> Result<(T, T)> {
    if !w.is_euclidean() {
        return Err(Error::Unsupported("the 2-summing bound needs Euclidean spaces".into()));
    }
    let s = linalg::singular_values(w.matrix());
    let lhs = s.iter().map(|&v| v * v).sum::<T>().sqrt();
    let rhs = T::lit(2.0) * s.iter().enumerate().map(|(j, &v)| v / T::of(j + 1).sqrt()).sum::<T>();
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativeWeyl<T> {
    /// `max_k Π_{j≤k} |λ_j| / Π_{j≤k} a_j` (`0/0` counted as 1).
    pub worst_ratio: T,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenDecayReport<T> {
    /// `sup_k g(k) |λ_k|`.
    pub eigen_side: T,
    /// `sup_k g(k) x_k` over lower-bounded Weyl numbers.
    pub weyl_side: T,
    pub multiplicative: Option<MultiplicativeWeyl<T>>,
}

/// Checks `Π_{j≤k}|λ_j| ≤ Π_{j≤k} σ_j` for every `k` with relative tolerance `tol`.
pub fn multiplicative_weyl<T: Real>(a: &Matrix<T>, tol: T) -> Result<MultiplicativeWeyl<T>> {
    let eig = eigenvalue_sequence_real(a)?.moduli();
    let s = linalg::singular_values(a);
    let (mut pl, mut ps) = (T::one(), T::one());
    let mut worst = T::zero();
    let mut holds = true;
    for (l, sv) in eig.iter().zip(&s) {
        pl *= *l;
        ps *= *sv;
        if pl > ps * (T::one() + tol) + tol * T::min_positive_value().sqrt() {
            holds = false;
        }
        let ratio = if ps > T::zero() { pl / ps } else if pl > T::zero() { T::infinity() } else { T::one() };
        worst = worst.max(ratio);
    }
    Ok(MultiplicativeWeyl { worst_ratio: worst, holds })
}

pub fn eigen_decay_vs_weyl<T: Real>(
    t: &LinearMap<T>,
    g: &GrowthSequence<T>,
    budget: Budget,
    seed: u64,
) -> Result<EigenDecayReport<T>> {
    if !t.matrix().is_square() {
        return Err(Error::NonSquare { rows: t.matrix().rows(), cols: t.matrix().cols() });
    }
    let eig = eigenvalue_sequence_real(t.matrix())?.moduli();
    let mut eigen_side = T::zero();
    for (k, l) in eig.iter().enumerate() {
        eigen_side = eigen_side.max(g.eval(k + 1)? * *l);
    }
    let x = weyl_numbers(t, budget, seed);
    let mut weyl_side = T::zero();
    for (k, v) in x.lower_bounds().iter().enumerate() {
        weyl_side = weyl_side.max(g.eval(k + 1)? * *v);
    }
    let multiplicative = if t.is_euclidean() { Some(multiplicative_weyl(t.matrix(), T::lit(1e-8))?) } else { None };
    Ok(EigenDecayReport { eigen_side, weyl_side, multiplicative })
}
