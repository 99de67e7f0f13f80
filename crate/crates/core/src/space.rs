//! Finite-dimensional normed (and quasi-normed) spaces as norm oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{Budget, Estimate, Witness};
use crate::growth::GrowthSequence;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::search;
use crate::seq::{lp_unchecked, rearranged, SymmetricNorm, SymmetricSpace};

/// `(ℝ^dim, ‖·‖)` for a symmetric family, optionally restricted to the span
/// of a basis: `‖x‖ = ‖Bx‖_ambient`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormedSpace<T> {
    family: SymmetricSpace<T>,
    dim: usize,
    basis: Option<Matrix<T>>,
}

impl<T: Real> NormedSpace<T> {
    pub fn new(family: SymmetricSpace<T>, dim: usize) -> Result<Self> {
        if let SymmetricSpace::Gweak { g } = &family {
            if let Some(len) = g.range() {
                if len < dim {
                    return Err(Error::OutOfRange { n: dim, len });
                }
            }
        }
        Ok(Self { family, dim, basis: None })
    }

    pub fn lp(p: T, dim: usize) -> Result<Self> {
        Self::new(SymmetricSpace::lp(p)?, dim)
    }

    pub fn euclidean(dim: usize) -> Self {
        Self { family: SymmetricSpace::Lp { p: T::lit(2.0) }, dim, basis: None }
    }

    pub fn lorentz(p: T, q: T, dim: usize) -> Result<Self> {
        Self::new(SymmetricSpace::lorentz(p, q)?, dim)
    }

    pub fn gweak(g: GrowthSequence<T>, dim: usize) -> Result<Self> {
        Self::new(SymmetricSpace::gweak(g), dim)
    }

    /// The span of the columns of `basis` inside `ambient`, with coordinates
    /// relative to that basis.
    pub fn subspace(ambient: &Self, basis: Matrix<T>) -> Result<Self> {
        if ambient.basis.is_some() {
            return Err(Error::Unsupported("nested subspaces".into()));
        }
        if basis.rows() != ambient.dim {
            return Err(Error::DimensionMismatch { expected: ambient.dim, found: basis.rows() });
        }
        Ok(Self { family: ambient.family.clone(), dim: basis.cols(), basis: Some(basis) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn family(&self) -> &SymmetricSpace<T> {
        &self.family
    }

    pub fn basis(&self) -> Option<&Matrix<T>> {
        self.basis.as_ref()
    }

    pub fn label(&self) -> String {
        match &self.basis {
            None => format!("{}^{}", self.family.label(), self.dim),
            Some(b) => format!("span[{}] in {}^{}", b.cols(), self.family.label(), b.rows()),
        }
    }

    fn check_dim(&self, x: &[T]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(())
    }

    pub fn norm(&self, x: &[T]) -> Result<T> {
        self.check_dim(x)?;
        Ok(self.norm_unchecked(x))
    }

    /// Norm without the dimension check. Construction guarantees the family
    /// is evaluable on the whole dimension.
    pub(crate) fn norm_unchecked(&self, x: &[T]) -> T {
        match &self.basis {
            None => self.ambient_norm(x),
            Some(b) => self.ambient_norm(&b.matvec_unchecked(x)),
        }
    }

    fn ambient_norm(&self, x: &[T]) -> T {
        match &self.family {
            SymmetricSpace::Lp { p } => lp_unchecked(x, *p),
            fam => fam.norm_of_rearranged(&rearranged(x)).unwrap_or(T::nan()),
        }
    }

    pub fn is_normed(&self) -> bool {
        self.family.is_normed()
    }

    /// Euclidean in its own coordinates (no basis).
    pub fn is_euclidean(&self) -> bool {
        self.basis.is_none() && self.family.is_euclidean()
    }

    /// `p` when the space is isometrically `ℓ_p^dim` in its coordinates.
    pub fn as_lp(&self) -> Option<T> {
        if self.basis.is_some() {
            return None;
        }
        self.family.as_lp()
    }

    /// A constant `K` with `‖x + y‖ ≤ K(‖x‖ + ‖y‖)`.
    pub fn quasi_triangle_constant(&self) -> T {
        match &self.family {
            _ if self.is_normed() => T::one(),
            SymmetricSpace::Lorentz { p, .. } => T::lit(2.0).powf(p.recip()),
            SymmetricSpace::Gweak { g } => {
                let n = self.basis.as_ref().map_or(self.dim, Matrix::rows);
                (2..=n)
                    .filter_map(|k| Some(g.eval(k).ok()? / g.eval(k.div_ceil(2)).ok()?))
                    .fold(T::one(), T::max)
            }
            SymmetricSpace::Lp { .. } => T::one(),
        }
    }

    /// Dual norm in closed form, where one is known.
    pub fn dual_norm_exact(&self, y: &[T]) -> Option<T> {
        if self.basis.is_some() || y.len() != self.dim {
            return None;
        }
        if let Some(p) = self.as_lp() {
            return Some(lp_unchecked(y, conjugate(p)));
        }
        let star = rearranged(y);
        match &self.family {
            SymmetricSpace::Gweak { g } => {
                // the largest admissible rearranged element is (1/g(k))_k
                star.iter().enumerate().map(|(i, &s)| Some(s / g.eval(i + 1).ok()?)).sum()
            }
            SymmetricSpace::Lorentz { p, q } if q.is_infinite() => {
                let inv_p = p.recip();
                Some(star.iter().enumerate().map(|(i, &s)| s / T::of(i + 1).powf(inv_p)).sum())
            }
            SymmetricSpace::Lorentz { p, q } if *q == T::one() => {
                // extreme points are normalized signed indicators
                let w = p.recip() - T::one();
                let (mut head, mut weight, mut best) = (T::zero(), T::zero(), T::zero());
                for (i, &s) in star.iter().enumerate() {
                    head += s;
                    weight += T::of(i + 1).powf(w);
                    best = best.max(head / weight);
                }
                Some(best)
            }
            _ => None,
        }
    }

    /// `sup_{‖x‖≤1} |⟨x, y⟩|`: exact where a closed form exists, a witnessed
    /// lower bound otherwise.
    pub fn dual_norm(&self, y: &[T], budget: Budget, seed: u64) -> Result<Estimate<T>> {
        self.check_dim(y)?;
        if let Some(v) = self.dual_norm_exact(y) {
            return Ok(Estimate::exact(v, Witness::None, "closed-form dual"));
        }
        if y.iter().all(|v| v.is_zero()) {
            return Ok(Estimate::exact(T::zero(), Witness::None, "zero functional"));
        }
        let f = |x: &[T]| {
            let nx = self.norm_unchecked(x);
            if nx > T::zero() {
                dot(x, y).abs() / nx
            } else {
                T::neg_infinity()
            }
        };
        let mut starts = vec![y.to_vec(), y.iter().map(|v| v.signum()).collect(), vec![T::one(); self.dim]];
        for j in 0..self.dim {
            let mut e = vec![T::zero(); self.dim];
            e[j] = T::one();
            starts.push(e);
        }
        let r = search::maximize(&f, self.dim, &starts, budget, seed);
        let value = f(&r.point);
        let upper = self.to_l1_bound().map(|c| c * lp_unchecked(y, T::infinity()));
        Ok(Estimate::lower(value, Witness::Vector(r.point), budget, seed, "sphere search").with_companion(upper))
    }

    /// Upper bound for `‖id: X → ℓ_1^n‖`.
    pub fn to_l1_bound(&self) -> Option<T> {
        if self.basis.is_some() {
            return None;
        }
        let n = T::of(self.dim);
        if let Some(v) = self.dual_norm_exact(&vec![T::one(); self.dim]) {
            return Some(v);
        }
        // ‖x‖_∞ ≤ ‖x‖ for every family here
        Some(n)
    }

    /// Upper bound for `‖id: X → ℓ_2^n‖`.
    pub fn to_l2_bound(&self) -> Option<T> {
        if self.basis.is_some() {
            return None;
        }
        let n = T::of(self.dim);
        if let Some(p) = self.as_lp() {
            return Some(n.powf((T::lit(0.5) - p.recip()).max(T::zero())));
        }
        if let SymmetricSpace::Gweak { g } = &self.family {
            let s: Option<T> = (1..=self.dim).map(|k| g.eval(k).ok().map(|v| v.powi(-2))).sum();
            return s.map(T::sqrt);
        }
        Some(n.sqrt())
    }

    /// Upper bound for `‖id: ℓ_2^n → X‖`.
    pub fn from_l2_bound(&self) -> Option<T> {
        if self.basis.is_some() {
            return None;
        }
        let n = T::of(self.dim);
        if let Some(p) = self.as_lp() {
            return Some(n.powf((p.recip() - T::lit(0.5)).max(T::zero())));
        }
        match &self.family {
            SymmetricSpace::Gweak { g } => (1..=self.dim)
                .map(|k| g.eval(k).ok().map(|v| v / T::of(k).sqrt()))
                .try_fold(T::zero(), |m, v| v.map(|v| m.max(v))),
            SymmetricSpace::Lorentz { p, q } if q.is_infinite() => {
                Some((1..=self.dim).fold(T::zero(), |m, k| m.max(T::of(k).powf(p.recip() - T::lit(0.5)))))
            }
            _ if self.is_normed() => Some(n.sqrt()),
            _ => None,
        }
    }

    /// Random vector with i.i.d. gaussian coordinates.
    pub fn random_vector(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<T> {
        search::gaussian_vec(rng, self.dim)
    }
}

impl<T: Real> SymmetricNorm<T> for NormedSpace<T> {
    fn norm(&self, tau: &[T]) -> Result<T> {
        NormedSpace::norm(self, tau)
    }

    fn label(&self) -> String {
        NormedSpace::label(self)
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// `p' = p/(p−1)`, with `1' = ∞` and `∞' = 1`.
pub fn conjugate<T: Real>(p: T) -> T {
    if p == T::one() {
        T::infinity()
    } else if p.is_infinite() {
        T::one()
    } else {
        p / (p - T::one())
    }
}

pub(crate) fn check_config<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>]) -> Result<()> {
    for x in config {
        if x.len() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: x.len() });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn dual_examples() {
        let l1 = NormedSpace::lp(1.0, 2).unwrap();
        let e = l1.dual_norm(&[1.0, 2.0], Budget::default(), 0).unwrap();
        assert_eq!(e.value, 2.0);
        assert!(e.direction.is_upper() && e.direction.is_lower());
        let l2 = NormedSpace::euclidean(3);
        assert_relative_eq!(l2.dual_norm(&[1.0, 2.0, 2.0], Budget::default(), 0).unwrap().value, 3.0);
        assert!(l2.dual_norm(&[1.0], Budget::default(), 0).is_err());
    }

    #[test]
    fn weak_l2_dual_beats_constant_vector() {
        let w = NormedSpace::lorentz(2.0, f64::INFINITY, 3).unwrap();
        let e = w.dual_norm(&[1.0, 1.0, 1.0], Budget::default(), 0).unwrap();
        assert!(e.value >= 3.0 / 3f64.sqrt());
        assert_relative_eq!(e.value, 1.0 + 0.5f64.sqrt() + (1.0 / 3f64).sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn exact_duals_agree_with_search() {
        let spaces = [
            NormedSpace::lorentz(2.0, 1.0, 4).unwrap(),
            NormedSpace::lorentz(3.0, f64::INFINITY, 4).unwrap(),
            NormedSpace::gweak(GrowthSequence::power(0.3), 4).unwrap(),
        ];
        let y = [0.3, -1.2, 0.7, 0.1];
        for s in &spaces {
            let exact = s.dual_norm_exact(&y).unwrap();
            // search over the sphere never beats the closed form
            let f = |x: &[f64]| dot(x, &y).abs() / s.norm_unchecked(x);
            let r = search::maximize(&f, 4, &[y.to_vec()], Budget::new(8, 2000), 5);
            assert!(r.value <= exact * (1.0 + 1e-9));
            assert!(r.value >= exact * 0.95, "{} {} {}", s.label(), r.value, exact);
        }
    }

    #[test]
    fn subspace_norm() {
        let amb = NormedSpace::lp(1.0, 3).unwrap();
        let b = Matrix::from_columns(&[vec![1.0, 1.0, 0.0]]).unwrap();
        let s = NormedSpace::subspace(&amb, b).unwrap();
        assert_eq!(s.norm(&[2.0]).unwrap(), 4.0);
        assert!(s.dual_norm_exact(&[1.0]).is_none());
    }

    #[test]
    fn quasi_constants() {
        assert_eq!(NormedSpace::<f64>::euclidean(3).quasi_triangle_constant(), 1.0);
        let w = NormedSpace::lorentz(2.0, f64::INFINITY, 4).unwrap();
        assert_relative_eq!(w.quasi_triangle_constant(), 2f64.sqrt());
    }
}
