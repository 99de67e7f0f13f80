//! Linear maps between finite-dimensional spaces and their operator norms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Budget, Estimate, Witness};
use crate::linalg;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::search;
use crate::signs::{sup_over_signs, ENUMERATION_CAP};
use crate::space::NormedSpace;

/// `T: X → Y` stored as a `dim Y × dim X` matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearMap<T> {
    matrix: Matrix<T>,
    domain: NormedSpace<T>,
    codomain: NormedSpace<T>,
}

impl<T: Real> LinearMap<T> {
    pub fn new(matrix: Matrix<T>, domain: NormedSpace<T>, codomain: NormedSpace<T>) -> Result<Self> {
        if matrix.cols() != domain.dim() {
            return Err(Error::DimensionMismatch { expected: domain.dim(), found: matrix.cols() });
        }
        if matrix.rows() != codomain.dim() {
            return Err(Error::DimensionMismatch { expected: codomain.dim(), found: matrix.rows() });
        }
        Ok(Self { matrix, domain, codomain })
    }

    pub fn identity(space: NormedSpace<T>) -> Self {
        Self { matrix: Matrix::identity(space.dim()), domain: space.clone(), codomain: space }
    }

    /// Same matrix, Euclidean spaces on both sides.
    pub fn euclidean(matrix: Matrix<T>) -> Self {
        let (r, c) = (matrix.rows(), matrix.cols());
        Self { matrix, domain: NormedSpace::euclidean(c), codomain: NormedSpace::euclidean(r) }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn domain(&self) -> &NormedSpace<T> {
        &self.domain
    }

    pub fn codomain(&self) -> &NormedSpace<T> {
        &self.codomain
    }

    pub fn apply(&self, x: &[T]) -> Result<Vec<T>> {
        self.matrix.matvec(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        Ok(Self { matrix: self.matrix.matmul(&inner.matrix)?, domain: inner.domain.clone(), codomain: self.codomain.clone() })
    }

    pub fn is_euclidean(&self) -> bool {
        self.domain.is_euclidean() && self.codomain.is_euclidean()
    }

    /// `‖Tx‖_Y / ‖x‖_X`, `−∞` at zero.
    pub fn ratio(&self, x: &[T]) -> T {
        let nx = self.domain.norm_unchecked(x);
        if nx > T::zero() {
            self.codomain.norm_unchecked(&self.matrix.matvec_unchecked(x)) / nx
        } else {
            T::neg_infinity()
        }
    }

    /// Operator norm in closed form where available.
    pub fn operator_norm_exact(&self) -> Option<(T, Witness<T>, &'static str)> {
        let (m, n) = (self.matrix.rows(), self.matrix.cols());
        if self.matrix.is_zero() {
            return Some((T::zero(), Witness::None, "zero map"));
        }
        if self.is_euclidean() {
            let d = linalg::svd(&self.matrix);
            return Some((d.s[0], Witness::Vector(d.v.column(0)), "largest singular value"));
        }
        if self.domain.as_lp() == Some(T::one()) && self.codomain.is_normed() {
            // extreme points of B_{ℓ_1} are ±e_j
            let (j, v) = (0..n)
                .map(|j| (j, self.codomain.norm_unchecked(&self.matrix.column(j))))
                .fold((0, T::neg_infinity()), |a, b| if b.1 > a.1 { b } else { a });
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            return Some((v, Witness::Vector(e), "max column norm"));
        }
        if self.codomain.as_lp() == Some(T::infinity()) {
            let rows: Option<Vec<T>> = (0..m).map(|i| self.domain.dual_norm_exact(self.matrix.row(i))).collect();
            if let Some(rows) = rows {
                let v = rows.into_iter().fold(T::zero(), T::max);
                return Some((v, Witness::None, "max row dual norm"));
            }
        }
        if self.domain.as_lp() == Some(T::infinity()) && n <= ENUMERATION_CAP && self.codomain.is_normed() {
            let (v, eps) = sup_over_signs(&self.matrix.columns(), m, |s| self.codomain.norm_unchecked(s));
            return Some((v, Witness::Vector(eps), "sign enumeration"));
        }
        None
    }

    /// Upper bound from comparison with `ℓ_1` and `ℓ_2`.
    pub fn operator_norm_upper(&self) -> Option<T> {
        if let Some((v, _, _)) = self.operator_norm_exact() {
            return Some(v);
        }
        let mut best: Option<T> = None;
        let mut offer = |v: T| best = Some(best.map_or(v, |b: T| b.min(v)));
        if self.codomain.is_normed() {
            if let Some(c) = self.domain.to_l1_bound() {
                let col = (0..self.matrix.cols())
                    .map(|j| self.codomain.norm_unchecked(&self.matrix.column(j)))
                    .fold(T::zero(), T::max);
                offer(col * c);
            }
        }
        if let (Some(a), Some(b)) = (self.domain.to_l2_bound(), self.codomain.from_l2_bound()) {
            offer(a * linalg::singular_values(&self.matrix)[0] * b);
        }
        best
    }

    pub fn operator_norm(&self, budget: Budget, seed: u64) -> Estimate<T> {
        if let Some((v, w, method)) = self.operator_norm_exact() {
            return Estimate::exact(v, w, method);
        }
        let n = self.matrix.cols();
        let mut starts = vec![vec![T::one(); n]];
        for j in 0..n {
            let mut e = vec![T::zero(); n];
            e[j] = T::one();
            starts.push(e);
        }
        let d = linalg::svd(&self.matrix);
        for k in 0..d.s.len().min(3) {
            let v = d.v.column(k);
            starts.push(v.iter().map(|x| x.signum()).collect());
            starts.push(v);
        }
        let f = |x: &[T]| self.ratio(x);
        let r = search::maximize(&f, n, &starts, budget, seed);
        let value = f(&r.point);
        Estimate::lower(value, Witness::Vector(r.point), budget, seed, "compass search")
            .with_companion(self.operator_norm_upper())
    }
}
