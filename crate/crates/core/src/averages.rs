//! Rademacher and gaussian averages `E‖Σ ε_k x_k‖`, `E‖Σ g_k x_k‖`, the
//! `ℓ(u)` norm, the contraction principle and the gaussian/Rademacher ratio.

use rand_distr::{Distribution, StandardNormal};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::linmap::LinearMap;
use crate::scalar::Real;
use crate::search::{self, rng_for};
use crate::signs::{sum_over_signs, sup_over_signs, ENUMERATION_CAP};
use crate::space::{check_config, NormedSpace};
use crate::weak::combine;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactEnumeration,
    MonteCarlo,
    ClosedForm,
}

/// Which moment `(E‖·‖^p)^{1/p}` is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    First,
    Second,
}

impl Moment {
    pub fn from_index(p: u32) -> Result<Self> {
        match p {
            1 => Ok(Moment::First),
            2 => Ok(Moment::Second),
            _ => Err(invalid("moment", format!("moment must be 1 or 2, got {p}"))),
        }
    }

    fn power(self) -> i32 {
        match self {
            Moment::First => 1,
            Moment::Second => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageResult<T> {
    pub value: T,
    pub method: Method,
    pub moment: Moment,
    /// Sign patterns for enumeration, draws for Monte Carlo.
    pub samples: usize,
    /// Zero for exact methods.
    pub std_error: T,
    pub seed: Option<u64>,
}

/// Monte Carlo settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McOptions {
    pub samples: usize,
    pub seed: u64,
}

impl Default for McOptions {
    fn default() -> Self {
        Self { samples: 100_000, seed: 0 }
    }
}

impl McOptions {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed }
    }
}

const CHUNK: usize = 4096;

#[derive(Clone, Copy)]
enum Weights {
    Rademacher,
    Gaussian,
}

fn monte_carlo<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    moment: Moment,
    weights: Weights,
    opts: McOptions,
) -> Result<AverageResult<T>> {
    if opts.samples < 2 {
        return Err(invalid("samples", "Monte Carlo needs at least 2 samples"));
    }
    let d = space.dim();
    let chunks = opts.samples.div_ceil(CHUNK);
    let p = moment.power();
    let stats: Vec<(T, T, usize)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = rng_for(opts.seed, c as u64);
            let count = CHUNK.min(opts.samples - c * CHUNK);
            let mut w = vec![T::zero(); config.len()];
            let (mut s1, mut s2) = (T::zero(), T::zero());
            for _ in 0..count {
                for wk in w.iter_mut() {
                    *wk = match weights {
                        Weights::Rademacher => {
                            if rng.random::<bool>() {
                                T::one()
                            } else {
                                -T::one()
                            }
                        }
                        Weights::Gaussian => {
                            let z: f64 = StandardNormal.sample(&mut rng);
                            T::lit(z)
                        }
                    };
                }
                let v = space.norm_unchecked(&combine(config, &w, d)).powi(p);
                s1 += v;
                s2 += v * v;
            }
            (s1, s2, count)
        })
        .collect();
    let (s1, s2, n) = stats.into_iter().fold((T::zero(), T::zero(), 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    let nf = T::of(n);
    let mean = s1 / nf;
    let var = ((s2 / nf - mean * mean) * nf / (nf - T::one())).max(T::zero());
    let se_mean = (var / nf).sqrt();
    let (value, std_error) = match moment {
        Moment::First => (mean, se_mean),
        Moment::Second => {
            let v = mean.sqrt();
            // delta method for the square root
            (v, if v > T::zero() { se_mean / (T::lit(2.0) * v) } else { T::zero() })
        }
    };
    Ok(AverageResult { value, method: Method::MonteCarlo, moment, samples: n, std_error, seed: Some(opts.seed) })
}

/// `(E‖Σ ε_k x_k‖^p)^{1/p}`: exact for `n ≤ 20`, Monte Carlo beyond.
pub fn rademacher_average<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    moment: Moment,
    opts: McOptions,
) -> Result<AverageResult<T>> {
    check_config(space, config)?;
    if config.len() > ENUMERATION_CAP {
        return monte_carlo(space, config, moment, Weights::Rademacher, opts);
    }
    let p = moment.power();
    let (total, count) = sum_over_signs(config, space.dim(), |s| space.norm_unchecked(s), p);
    let mean = total / T::of(count);
    let value = if p == 2 { mean.sqrt() } else { mean };
    Ok(AverageResult { value, method: Method::ExactEnumeration, moment, samples: count, std_error: T::zero(), seed: None })
}

/// Monte Carlo Rademacher average regardless of `n`, for cross-checking enumeration.
pub fn rademacher_monte_carlo<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    moment: Moment,
    opts: McOptions,
) -> Result<AverageResult<T>> {
    check_config(space, config)?;
    monte_carlo(space, config, moment, Weights::Rademacher, opts)
}

/// `(E‖Σ g_k x_k‖^p)^{1/p}` by Monte Carlo.
pub fn gaussian_average<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    moment: Moment,
    opts: McOptions,
) -> Result<AverageResult<T>> {
    check_config(space, config)?;
    monte_carlo(space, config, moment, Weights::Gaussian, opts)
}

/// `ℓ(u) = (E‖Σ g_k u(e_k)‖²)^{1/2}` for `u` with Euclidean domain.
pub fn ell_norm<T: Real>(u: &LinearMap<T>, opts: McOptions) -> Result<AverageResult<T>> {
    if !u.domain().is_euclidean() {
        return Err(Error::Unsupported("ℓ(u) needs a Euclidean domain".into()));
    }
    gaussian_average(u.codomain(), &u.matrix().columns(), Moment::Second, opts)
}

/// `ℓ(u)` in closed form (the Hilbert-Schmidt norm) when both sides are Euclidean.
pub fn ell_norm_exact<T: Real>(u: &LinearMap<T>) -> Option<T> {
    u.codomain().is_euclidean().then(|| u.matrix().frobenius())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionReport<T> {
    /// `sup_{|α_k| ≤ 1} ‖Σ α_k x_k‖`, over a `{−1,0,1}` grid plus polished interior points.
    pub sup_box: T,
    pub sup_signs: T,
    pub sign_witness: Vec<T>,
    pub box_witness: Vec<T>,
}

impl<T: Real> ContractionReport<T> {
    pub fn gap(&self) -> T {
        (self.sup_box - self.sup_signs).abs()
    }
}

const GRID_CAP: usize = 12;

/// Compares the supremum over the coefficient box with the supremum over signs.
pub fn contraction_check<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], seed: u64) -> Result<ContractionReport<T>> {
    check_config(space, config)?;
    let n = config.len();
    if n > ENUMERATION_CAP {
        return Err(invalid("config", format!("at most {ENUMERATION_CAP} vectors")));
    }
    let d = space.dim();
    let norm = |s: &[T]| space.norm_unchecked(s);
    let (sup_signs, sign_witness) = sup_over_signs(config, d, norm);

    let clamp = |a: &[T]| a.iter().map(|v| v.max(-T::one()).min(T::one())).collect::<Vec<T>>();
    let f = |a: &[T]| norm(&combine(config, &clamp(a), d));
    let mut box_best = (T::neg_infinity(), Vec::new());
    if n <= GRID_CAP {
        let total = 3usize.pow(n as u32);
        let (v, a) = (0..total)
            .into_par_iter()
            .map(|mut code| {
                let a: Vec<T> = (0..n)
                    .map(|_| {
                        let digit = code % 3;
                        code /= 3;
                        T::of(digit) - T::one()
                    })
                    .collect();
                (f(&a), a)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold((T::neg_infinity(), Vec::new()), |acc, b| if b.0 > acc.0 { b } else { acc });
        box_best = (v, a);
    }
    let mut starts = Vec::new();
    for s in 0..16u64 {
        let mut rng = rng_for(seed, s);
        starts.push((0..n).map(|_| T::lit(rng.random_range(-1.0..1.0))).collect::<Vec<T>>());
    }
    let r = search::maximize(&f, n, &starts, crate::estimate::Budget::new(0, 200), seed);
    if r.value > box_best.0 {
        box_best = (r.value, clamp(&r.point));
    }
    Ok(ContractionReport { sup_box: box_best.0, sup_signs, sign_witness, box_witness: box_best.1 })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport<T> {
    pub gaussian: AverageResult<T>,
    pub rademacher: AverageResult<T>,
    /// `None` for the zero configuration.
    pub ratio: Option<T>,
    /// Standard error of the ratio.
    pub ratio_se: T,
    pub floor: T,
}

impl<T: Real> ComparisonReport<T> {
    pub fn degenerate(&self) -> bool {
        self.ratio.is_none()
    }

    /// `ratio ≥ √(2/π) − k·SE`.
    pub fn holds_within(&self, k: T) -> bool {
        self.ratio.is_none_or(|r| r >= self.floor - k * self.ratio_se)
    }
}

/// `E‖Σ g_k x_k‖ / E‖Σ ε_k x_k‖` against `√(2/π)`.
pub fn gauss_vs_rademacher<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], opts: McOptions) -> Result<ComparisonReport<T>> {
    let gaussian = gaussian_average(space, config, Moment::First, opts)?;
    let rademacher = rademacher_average(space, config, Moment::First, McOptions { seed: opts.seed ^ 0x5bd1_e995, ..opts })?;
    let floor = (T::lit(2.0) / T::lit(std::f64::consts::PI)).sqrt();
    let (ratio, ratio_se) = if rademacher.value > T::zero() {
        let r = gaussian.value / rademacher.value;
        let rel = (gaussian.std_error / gaussian.value).powi(2) + (rademacher.std_error / rademacher.value).powi(2);
        (Some(r), r * rel.sqrt())
    } else {
        (None, T::zero())
    };
    Ok(ComparisonReport { gaussian, rademacher, ratio, ratio_se, floor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weak::unit_vectors;
    use approx::assert_relative_eq;

    #[test]
    fn rademacher_examples() {
        let o = McOptions::default();
        let l1 = NormedSpace::lp(1.0, 2).unwrap();
        let l2 = NormedSpace::euclidean(2);
        let e = unit_vectors::<f64>(2);
        assert_eq!(rademacher_average(&l1, &e, Moment::First, o).unwrap().value, 2.0);
        assert_relative_eq!(rademacher_average(&l2, &e, Moment::First, o).unwrap().value, 2f64.sqrt(), epsilon = 1e-15);
        let x = vec![vec![3.0, 4.0]];
        assert_eq!(rademacher_average(&l2, &x, Moment::First, o).unwrap().value, 5.0);
    }

    #[test]
    fn gaussian_examples() {
        let o = McOptions::new(50_000, 3);
        let l2 = NormedSpace::euclidean(4);
        let r: AverageResult<f64> = gaussian_average(&l2, &unit_vectors(4), Moment::Second, o).unwrap();
        assert!((r.value - 2.0).abs() < 4.0 * r.std_error);
        let one: AverageResult<f64> = gaussian_average(&NormedSpace::euclidean(1), &[vec![1.0]], Moment::Second, o).unwrap();
        assert!((one.value - 1.0).abs() < 4.0 * one.std_error);
    }

    #[test]
    fn mc_is_reproducible() {
        let l2 = NormedSpace::euclidean(3);
        let c = unit_vectors::<f64>(3);
        let a = gaussian_average(&l2, &c, Moment::First, McOptions::new(10_000, 5)).unwrap();
        let b = gaussian_average(&l2, &c, Moment::First, McOptions::new(10_000, 5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn contraction_examples() {
        let l1 = NormedSpace::lp(1.0, 2).unwrap();
        let r = contraction_check(&l1, &unit_vectors(2), 0).unwrap();
        assert_eq!(r.sup_signs, 2.0);
        assert_eq!(r.sup_box, 2.0);
    }

    #[test]
    fn degenerate_ratio() {
        let l2 = NormedSpace::euclidean(2);
        let r = gauss_vs_rademacher(&l2, &[vec![0.0, 0.0]], McOptions::new(1000, 1)).unwrap();
        assert!(r.degenerate());
    }
}
