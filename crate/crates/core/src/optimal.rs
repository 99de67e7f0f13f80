//! Optimal summing and cotype gauges of a normed space, their convex hull,
//! and the fundamental-function arguments built on them.
//!
//! Gauges are infima over unit-vector configurations, so any configuration
//! certifies an upper bound; every value here is upper-direction.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::estimate::{Budget, Estimate, Witness};
use crate::growth::{iterated_log, k_n};
use crate::scalar::Real;
use crate::search;
use crate::seq::{fundamental_function, SymmetricNorm};
use crate::signs::{sum_over_signs, sup_value_over_signs, ENUMERATION_CAP};
use crate::space::NormedSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaugeKind {
    /// `sup_{|a_k| ≤ 1} ‖Σ τ_k a_k x_k‖`, by sign enumeration.
    Summing,
    /// `E‖Σ ε_k τ_k x_k‖`, by exact enumeration.
    Cotype,
}

/// The inner quantity for a fixed configuration of unit vectors.
pub fn gauge_objective<T: Real>(x: &NormedSpace<T>, kind: GaugeKind, coeffs: &[T], config: &[Vec<T>]) -> T {
    let d = x.dim();
    let v: Vec<Vec<T>> = coeffs.iter().zip(config).map(|(&a, xk)| xk.iter().map(|&c| a * c).collect()).collect();
    match kind {
        GaugeKind::Summing => sup_value_over_signs(&v, d, |s| x.norm_unchecked(s)),
        GaugeKind::Cotype => {
            let (total, count) = sum_over_signs(&v, d, |s| x.norm_unchecked(s), 1);
            total / T::of(count)
        }
    }
}

fn normalize_config<T: Real>(x: &NormedSpace<T>, flat: &[T]) -> Option<Vec<Vec<T>>> {
    flat.chunks(x.dim())
        .map(|y| {
            let n = x.norm_unchecked(y);
            (n > T::zero() && n.is_finite()).then(|| y.iter().map(|&v| v / n).collect())
        })
        .collect()
}

fn unit<T: Real>(d: usize, j: usize) -> Vec<T> {
    let mut e = vec![T::zero(); d];
    e[j % d] = T::one();
    e
}

/// Colinear, round-robin coordinate, balanced (largest first into the
/// lightest coordinate) and colinear-diagonal configurations.
fn gauge_starts<T: Real>(d: usize, coeffs: &[T]) -> Vec<Vec<T>> {
    let m = coeffs.len();
    let mut starts = vec![unit(d, 0).repeat(m), (0..m).flat_map(|k| unit(d, k)).collect()];
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| coeffs[b].abs().partial_cmp(&coeffs[a].abs()).unwrap_or(std::cmp::Ordering::Equal));
    let mut load = vec![T::zero(); d];
    let mut bins = vec![0; m];
    for k in order {
        let j = (0..d).fold(0, |b, j| if load[j] < load[b] { j } else { b });
        load[j] += coeffs[k].abs();
        bins[k] = j;
    }
    starts.push(bins.iter().flat_map(|&j| unit(d, j)).collect());
    starts.push(vec![T::one(); d * m]);
    starts
}

/// Upper bound of the optimal summing or cotype gauge of `tau` in `x`.
pub fn opt_gauge<T: Real>(tau: &[T], x: &NormedSpace<T>, kind: GaugeKind, budget: Budget, seed: u64) -> Result<Estimate<T>> {
    let support: Vec<usize> = (0..tau.len()).filter(|&k| !tau[k].is_zero()).collect();
    match support.len() {
        0 => return Ok(Estimate::exact(T::zero(), Witness::None, "empty support")),
        1 => return Ok(Estimate::exact(tau[support[0]].abs(), Witness::Config(vec![unit(x.dim(), 0)]), "single vector")),
        m if m > ENUMERATION_CAP => {
            return Err(Error::Unsupported(format!("gauge support {m} exceeds the enumeration cap {ENUMERATION_CAP}")))
        }
        _ => {}
    }
    let coeffs: Vec<T> = support.iter().map(|&k| tau[k]).collect();
    let d = x.dim();
    let f = |flat: &[T]| normalize_config(x, flat).map_or(T::neg_infinity(), |c| -gauge_objective(x, kind, &coeffs, &c));
    let r = search::maximize(&f, coeffs.len() * d, &gauge_starts(d, &coeffs), budget, seed);
    let config = normalize_config(x, &r.point).expect("best point is feasible");
    let value = gauge_objective(x, kind, &coeffs, &config);
    Ok(Estimate::upper(value, Witness::Config(config), budget, seed, "configuration search"))
}

/// `n ↦` gauge of `(1, …, 1)` for `n = 1..=n_max`.
pub fn gauge_table<T: Real>(x: &NormedSpace<T>, kind: GaugeKind, n_max: usize, budget: Budget, seed: u64) -> Result<Vec<Estimate<T>>> {
    (1..=n_max).map(|n| opt_gauge(&vec![T::one(); n], x, kind, budget, seed)).collect()
}

/// Positions of `|τ|` in non-increasing order (stable).
fn decreasing_order<T: Real>(tau: &[T]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..tau.len()).filter(|&k| !tau[k].is_zero()).collect();
    order.sort_by(|&a, &b| tau[b].abs().partial_cmp(&tau[a].abs()).unwrap_or(std::cmp::Ordering::Equal));
    order
}

/// Dyadic blocks `{1}, {2}, {3,4}, {5..8}, …` of the rearranged positions.
fn dyadic_blocks(order: &[usize]) -> Vec<&[usize]> {
    let mut blocks = Vec::new();
    let (mut start, mut len) = (0, 1);
    while start < order.len() {
        let end = (start + len).min(order.len());
        blocks.push(&order[start..end]);
        start = end;
        if blocks.len() > 1 {
            len *= 2;
        }
    }
    blocks
}

/// Upper bound of the convexified gauge `inf Σ_j gauge(τ^j)` over `|τ| ≤ Σ|τ^j|`,
/// searching no split, singletons, dyadic restrictions and dyadic
/// flattenings (each block raised to its largest entry).
pub fn convexify<T, F>(tau: &[T], gauge: F) -> Result<Estimate<T>>
where
    T: Real,
    F: Fn(&[T]) -> Result<Estimate<T>>,
{
    let direct = gauge(tau)?;
    let n = tau.len();
    let order = decreasing_order(tau);
    let piece = |idx: &[usize], value: &dyn Fn(usize) -> T| {
        let mut p = vec![T::zero(); n];
        for &i in idx {
            p[i] = value(i);
        }
        p
    };
    let abs = |i: usize| tau[i].abs();
    let blocks = dyadic_blocks(&order);
    let candidates: Vec<Vec<Vec<T>>> = vec![
        order.iter().map(|&i| piece(&[i], &abs)).collect(),
        blocks.iter().map(|b| piece(b, &abs)).collect(),
        blocks
            .iter()
            .map(|b| {
                let top = tau[b[0]].abs();
                piece(b, &|_| top)
            })
            .collect(),
    ];
    let mut best = (direct.value, vec![tau.to_vec()]);
    for pieces in candidates {
        let mut total = T::zero();
        for p in &pieces {
            total += gauge(p)?.value;
        }
        if total < best.0 {
            best = (total, pieces);
        }
    }
    Ok(Estimate { value: best.0, witness: Witness::Decomposition(best.1), method: "decomposition search".into(), ..direct })
}

/// `convexify` with the optimal gauge of `x` as evaluator.
pub fn convexified_gauge<T: Real>(tau: &[T], x: &NormedSpace<T>, kind: GaugeKind, budget: Budget, seed: u64) -> Result<Estimate<T>> {
    convexify(tau, |p| opt_gauge(p, x, kind, budget, seed))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcavityReport<T> {
    pub inner: Vec<T>,
    /// Gauge of `(‖τ^1‖, …, ‖τ^m‖)`.
    pub lhs: T,
    /// Gauge of `Σ|τ^k|`.
    pub rhs: T,
    pub tol: T,
    pub holds: bool,
}

/// Compares `‖Σ_k ‖τ^k‖ e_k‖` with `‖Σ_k |τ^k|‖` in the convexified gauge.
pub fn self_concavity_check<T: Real>(
    taus: &[Vec<T>],
    x: &NormedSpace<T>,
    kind: GaugeKind,
    budget: Budget,
    seed: u64,
    tol: T,
) -> Result<ConcavityReport<T>> {
    let n = taus.first().map_or(0, Vec::len);
    if taus.iter().any(|t| t.len() != n) {
        return Err(invalid("taus", "sequences must have equal length"));
    }
    for i in 0..n {
        if taus.iter().filter(|t| !t[i].is_zero()).count() > 1 {
            return Err(invalid("taus", format!("supports overlap at coordinate {i}")));
        }
    }
    let g = |t: &[T]| convexified_gauge(t, x, kind, budget, seed).map(|e| e.value);
    let inner: Vec<T> = taus.iter().map(|t| g(t)).collect::<Result<_>>()?;
    let lhs = g(&inner)?;
    let combined: Vec<T> = (0..n).map(|i| taus.iter().map(|t| t[i].abs()).sum()).collect();
    let rhs = g(&combined)?;
    Ok(ConcavityReport { inner, lhs, rhs, tol, holds: lhs <= rhs * (T::one() + tol) })
}

/// `τ ⊗ τ` with entry `(i−1)n + j` equal to `τ_i τ_j`.
pub fn tensor_square<T: Real>(tau: &[T]) -> Vec<T> {
    tau.iter().flat_map(|&a| tau.iter().map(move |&b| a * b)).collect()
}

/// `(f_Y(n) f_Y(k), f_Y(nk))`.
pub fn submultiplicativity_check<T: Real, Y: SymmetricNorm<T> + ?Sized>(y: &Y, n: usize, k: usize) -> Result<(T, T)> {
    Ok((fundamental_function(y, n)? * fundamental_function(y, k)?, fundamental_function(y, n * k)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Alternative<T> {
    /// `f_Y(n_0) > n_0^{1/p}`: `Y ⊂ ℓ_q` with `f_Y(n_0) = n_0^{1/q}`.
    Smaller {
        n0: usize,
        q: T,
        /// `n^{1/q} ≤ n_0 f_Y(n)` on the checked range.
        chain_holds: bool,
    },
    /// `f_Y(n) ≤ n^{1/p}` on the checked range: `ℓ_p ⊂ Y`.
    Contains {
        /// Constant in `‖τ‖_Y ≤ 5 ‖τ‖_{p,1}`.
        inclusion_constant: T,
        /// `5(1 + ln n)` at `n = n_max`.
        c_n: T,
        /// `inf_k (5(1 + 2^k ln n))^{1/2^k}`.
        tensor_limit: T,
    },
}

pub fn alternative_classify<T: Real, Y: SymmetricNorm<T> + ?Sized>(y: &Y, p: T, n_max: usize) -> Result<Alternative<T>> {
    if !(p >= T::one()) {
        return Err(invalid("p", format!("need p >= 1, got {p}")));
    }
    if n_max == 0 {
        return Err(invalid("n_max", "need n_max >= 1"));
    }
    let f: Vec<T> = (1..=n_max).map(|n| fundamental_function(y, n)).collect::<Result<_>>()?;
    let slack = T::one() + T::lit(1e-12);
    if let Some(i) = (1..n_max).find(|&i| f[i] > T::of(i + 1).powf(p.recip()) * slack) {
        let n0 = i + 1;
        let q = T::of(n0).ln() / f[i].ln();
        let chain_holds = f.iter().enumerate().all(|(j, &fj)| T::of(j + 1).powf(q.recip()) <= T::of(n0) * fj * slack);
        return Ok(Alternative::Smaller { n0, q, chain_holds });
    }
    let five = T::lit(5.0);
    let ln_n = T::of(n_max).ln();
    // in log space: (ln 5 + ln(1 + 2^k ln n)) / 2^k
    let log_limit = (0..64)
        .map(|k| {
            let two_k = T::lit(2.0).powi(k);
            (five.ln() + (T::one() + two_k * ln_n).ln()) / two_k
        })
        .fold(T::infinity(), T::min);
    Ok(Alternative::Contains { inclusion_constant: five, c_n: five * (T::one() + ln_n), tensor_limit: log_limit.exp() })
}

fn check_bound_args<T: Real>(c: T, q: T, n: u64) -> Result<()> {
    if !(c >= T::one()) {
        return Err(invalid("C", format!("need C >= 1, got {c}")));
    }
    if !(q >= T::lit(2.0)) {
        return Err(invalid("q", format!("need q >= 2, got {q}")));
    }
    if n == 0 {
        return Err(invalid("n", "need n >= 1"));
    }
    Ok(())
}

/// `√π C^{k+1} (max{1, log_2})^{(k)}((1 + log_2 n)^{1/q})`.
pub fn prop24_bound<T: Real>(c: T, q: T, n: u64, k: usize) -> Result<T> {
    check_bound_args(c, q, n)?;
    let x = (T::one() + T::lit(n as f64).log2()).powf(q.recip());
    Ok(T::lit(std::f64::consts::PI).sqrt() * c.powi(k as i32 + 1) * iterated_log(k, x)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BestK<T> {
    pub k: usize,
    pub value: T,
    pub k_n: usize,
    /// `2√π C^{1+k_n}`.
    pub shortcut: T,
}

/// Minimizes `prop24_bound` over `k ≤ k_n + 3` (smallest `k` on ties).
pub fn best_k<T: Real>(c: T, q: T, n: u64) -> Result<BestK<T>> {
    check_bound_args(c, q, n)?;
    let kn = k_n(n);
    let mut best = (0, prop24_bound(c, q, n, 0)?);
    for k in 1..=kn + 3 {
        let v = prop24_bound(c, q, n, k)?;
        if v < best.1 {
            best = (k, v);
        }
    }
    let shortcut = T::lit(2.0) * T::lit(std::f64::consts::PI).sqrt() * c.powi(1 + kn as i32);
    Ok(BestK { k: best.0, value: best.1, k_n: kn, shortcut })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LorentzBranch {
    /// `w < q`: cotype `p` for some `p < q`.
    PowerBelow,
    /// `q < w`: cotype `ℓ_{q,∞}`.
    WeakLorentz,
    /// `w = q`: only the iterated-log bound, see [`prop24_bound`].
    IteratedLog,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LorentzCotype<T> {
    pub q: T,
    pub w: T,
    pub branch: LorentzBranch,
    pub statement: String,
}

/// Which characterization applies to cotype `ℓ_{q,w}`.
pub fn lorentz_cotype_report<T: Real>(q: T, w: T) -> Result<LorentzCotype<T>> {
    if !(q >= T::lit(2.0) && q.is_finite()) {
        return Err(invalid("q", format!("need 2 <= q < inf, got {q}")));
    }
    if !(w >= T::one()) {
        return Err(invalid("w", format!("need w >= 1, got {w}")));
    }
    let (branch, statement) = if w < q {
        (LorentzBranch::PowerBelow, format!("cotype p for some p < {q}"))
    } else if q < w {
        (LorentzBranch::WeakLorentz, format!("cotype l_{{{q},inf}}"))
    } else {
        (LorentzBranch::IteratedLog, "iterated-log bound on c_q(id_E)".to_string())
    };
    Ok(LorentzCotype { q, w, branch, statement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::SymmetricSpace;
    use approx::assert_relative_eq;

    fn b() -> Budget {
        Budget::new(2, 80)
    }

    #[test]
    fn gauge_examples() {
        for x in [NormedSpace::lp(1.0, 3).unwrap(), NormedSpace::euclidean(2), NormedSpace::lorentz(2.0, 1.0, 3).unwrap()] {
            for kind in [GaugeKind::Summing, GaugeKind::Cotype] {
                assert_eq!(opt_gauge(&[1.0, 0.0], &x, kind, b(), 0).unwrap().value, 1.0);
            }
        }
        let l2 = NormedSpace::euclidean(2);
        assert!(opt_gauge(&[1.0, 1.0], &l2, GaugeKind::Cotype, b(), 0).unwrap().value <= 1.0 + 1e-12);
        let linf = NormedSpace::lp(f64::INFINITY, 3).unwrap();
        let e = opt_gauge(&[1.0, 1.0, 1.0], &linf, GaugeKind::Summing, b(), 0).unwrap();
        assert!(e.value <= 1.0 + 1e-12);
        let Witness::Config(c) = &e.witness else { panic!() };
        for v in c {
            assert_relative_eq!(linf.norm(v).unwrap(), 1.0, epsilon = 1e-10);
        }
        assert_relative_eq!(gauge_objective(&linf, GaugeKind::Summing, &[1.0; 3], c), e.value, epsilon = 1e-10);
        assert_eq!(opt_gauge::<f64>(&[], &linf, GaugeKind::Summing, b(), 0).unwrap().value, 0.0);
    }

    #[test]
    fn convexify_examples() {
        let linf = NormedSpace::lp(f64::INFINITY, 2).unwrap();
        let direct = opt_gauge(&[1.0, 1.0], &linf, GaugeKind::Summing, b(), 0).unwrap().value;
        let c = convexified_gauge(&[1.0, 1.0], &linf, GaugeKind::Summing, b(), 0).unwrap();
        assert!(c.value <= direct && c.value <= 1.0 + 1e-12);
        let one = convexified_gauge(&[0.0, -0.4, 0.0], &linf, GaugeKind::Cotype, b(), 0).unwrap();
        assert_relative_eq!(one.value, 0.4);
    }

    #[test]
    fn dyadic_blocks_shape() {
        let order: Vec<usize> = (0..9).collect();
        let lens: Vec<usize> = dyadic_blocks(&order).iter().map(|b| b.len()).collect();
        assert_eq!(lens, vec![1, 1, 2, 4, 1]);
    }

    #[test]
    fn concavity_examples() {
        let l2 = NormedSpace::euclidean(3);
        let single = self_concavity_check(&[vec![0.5, 1.0, 0.0]], &l2, GaugeKind::Cotype, b(), 0, 0.0).unwrap();
        assert_relative_eq!(single.lhs, single.rhs, epsilon = 1e-10);
        let units = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let r = self_concavity_check(&units, &l2, GaugeKind::Summing, b(), 0, 1e-9).unwrap();
        assert!(r.holds);
        assert!(self_concavity_check(&[vec![1.0, 1.0], vec![0.0, 1.0]], &l2, GaugeKind::Summing, b(), 0, 0.0).is_err());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(tensor_square(&[2.0, 3.0]), vec![4.0, 6.0, 6.0, 9.0]);
        let (lhs, rhs) = submultiplicativity_check(&SymmetricSpace::lp(3.0).unwrap(), 4, 8).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
        let w = SymmetricSpace::gweak(crate::growth::GrowthSequence::power(0.5));
        let (lhs, rhs) = submultiplicativity_check(&w, 3, 5).unwrap();
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
    }

    #[test]
    fn classify_examples() {
        let weak2 = SymmetricSpace::lorentz(2.0, f64::INFINITY).unwrap();
        match alternative_classify(&weak2, 3.0, 64).unwrap() {
            Alternative::Smaller { n0, q, chain_holds } => {
                assert_eq!(n0, 2);
                assert_relative_eq!(q, 2.0, epsilon = 1e-12);
                assert!(chain_holds);
            }
            other => panic!("{other:?}"),
        }
        for p in [1.0, 2.0] {
            match alternative_classify(&SymmetricSpace::lp(p).unwrap(), p, 64).unwrap() {
                Alternative::Contains { tensor_limit, c_n, .. } => {
                    assert_relative_eq!(tensor_limit, 1.0, epsilon = 1e-12);
                    assert_relative_eq!(c_n, 5.0 * (1.0 + 64f64.ln()));
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn iterated_log_bound_examples() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(prop24_bound(2.0, 2.0, 16, 0).unwrap(), pi.sqrt() * 2.0 * 5f64.sqrt(), epsilon = 1e-12);
        let b1 = best_k(1.0, 2.0, 1 << 20).unwrap();
        assert_relative_eq!(b1.value, pi.sqrt(), epsilon = 1e-12);
        let b16 = best_k(1.5, 2.0, 16).unwrap();
        assert_eq!(b16.k_n, 3);
        assert_relative_eq!(b16.shortcut, 2.0 * pi.sqrt() * 1.5f64.powi(4));
        assert!(b16.k <= b16.k_n + 1);
        assert!(prop24_bound(0.5, 2.0, 4, 1).is_err());
    }

    #[test]
    fn lorentz_branches() {
        assert_eq!(lorentz_cotype_report(2.0, 1.0).unwrap().branch, LorentzBranch::PowerBelow);
        assert_eq!(lorentz_cotype_report(2.0, 4.0).unwrap().branch, LorentzBranch::WeakLorentz);
        assert_eq!(lorentz_cotype_report(3.0, 3.0).unwrap().branch, LorentzBranch::IteratedLog);
    }
}
