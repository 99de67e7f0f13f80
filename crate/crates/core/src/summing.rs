//! Summing norms, cotype constants, weak cotype and the constants of the
//! weak-cotype characterization.
//!
//! Sup-type quantities come back as witnessed lower bounds: the objective
//! divides by an upper bound of the weak functional (exact value or Hölder),
//! so any configuration certifies its own value.

use serde::{Deserialize, Serialize};

use crate::averages::{gaussian_average, rademacher_average, AverageResult, McOptions, Method, Moment};
use crate::error::{invalid, Error, Result};
use crate::estimate::{Budget, Estimate, Witness};
use crate::growth::{GrowthReport, GrowthSequence};
use crate::linalg;
use crate::linmap::LinearMap;
use crate::matrix::Matrix;
use crate::scalar::Real;
use crate::search::{self, gaussian_vec, rng_for};
use crate::seq::{lp_unchecked, SymmetricNorm, SymmetricSpace};
use crate::signs::ENUMERATION_CAP;
use crate::space::NormedSpace;
use crate::weak::weak_lq_upper;

fn unflatten<T: Real>(x: &[T], d: usize) -> Vec<Vec<T>> {
    x.chunks(d).map(<[T]>::to_vec).collect()
}

fn flatten<T: Real>(config: &[Vec<T>]) -> Vec<T> {
    config.iter().flatten().copied().collect()
}

fn normalized<T: Real>(mut v: Vec<T>) -> Vec<T> {
    let n = lp_unchecked(&v, T::lit(2.0));
    if n > T::zero() {
        v.iter_mut().for_each(|x| *x /= n);
    }
    v
}

/// Coordinate config, repeated `e_1`, repeated normalized ones, two random sphere configs.
fn config_starts<T: Real>(n: usize, d: usize, seed: u64) -> Vec<Vec<T>> {
    let unit = |j: usize| {
        let mut e = vec![T::zero(); d];
        if j < d {
            e[j] = T::one();
        }
        e
    };
    let mut starts = vec![
        flatten(&(0..n).map(unit).collect::<Vec<_>>()),
        flatten(&vec![unit(0); n]),
        flatten(&vec![normalized(vec![T::one(); d]); n]),
    ];
    for s in 0..2u64 {
        let mut rng = rng_for(seed ^ 0x9e37_79b9, s);
        let config: Vec<Vec<T>> = (0..n).map(|_| normalized(gaussian_vec(&mut rng, d))).collect();
        starts.push(flatten(&config));
    }
    starts
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(invalid("n", "need at least one vector"));
    }
    Ok(())
}

fn ratio_or_floor<T: Real>(num: T, den: T) -> T {
    if den > T::zero() && num.is_finite() {
        num / den
    } else {
        T::neg_infinity()
    }
}

fn searched<T, F>(f: &F, dim: usize, d: usize, starts: &[Vec<T>], budget: Budget, seed: u64, method: &str) -> Estimate<T>
where
    T: Real,
    F: Fn(&[T]) -> T + Sync,
{
    let r = search::maximize(f, dim, starts, budget, seed);
    let value = f(&r.point);
    Estimate::lower(value, Witness::Config(unflatten(&r.point, d)), budget, seed, method)
}

/// `(Σ‖Tx_k‖^p)^{1/p} / sup_{‖x*‖≤1} (Σ|⟨x*, x_k⟩|^q)^{1/q}` for one configuration.
pub fn pi_pq_ratio<T: Real>(t: &LinearMap<T>, p: T, q: T, config: &[Vec<T>]) -> T {
    let norms: Vec<T> = config.iter().map(|x| t.codomain().norm_unchecked(&t.matrix().matvec_unchecked(x))).collect();
    ratio_or_floor(lp_unchecked(&norms, p), weak_lq_upper(t.domain(), config, q))
}

/// Lower bound of `π_{pq}^n(T)` by search over `n`-vector configurations.
pub fn pi_pq_n<T: Real>(t: &LinearMap<T>, p: T, q: T, n: usize, budget: Budget, seed: u64) -> Result<Estimate<T>> {
    if !(q >= T::one() && p >= q) {
        return Err(invalid("p, q", format!("need p >= q >= 1, got p = {p}, q = {q}")));
    }
    check_n(n)?;
    let d = t.domain().dim();
    let f = |x: &[T]| pi_pq_ratio(t, p, q, &unflatten(x, d));
    Ok(searched(&f, n * d, d, &config_starts(n, d, seed), budget, seed, "configuration search"))
}

/// `‖(‖Tx_k‖)_k‖_Y / sup_{‖x*‖≤1} Σ|⟨x*, x_k⟩|` for one configuration.
pub fn pi_y1_ratio<T: Real>(t: &LinearMap<T>, y: &SymmetricSpace<T>, config: &[Vec<T>]) -> T {
    let norms: Vec<T> = config.iter().map(|x| t.codomain().norm_unchecked(&t.matrix().matvec_unchecked(x))).collect();
    let num = y.norm(&norms).unwrap_or(T::neg_infinity());
    ratio_or_floor(num, weak_lq_upper(t.domain(), config, T::one()))
}

/// Lower bound of the `(Y,1)`-summing constant on `n` vectors.
pub fn pi_y1<T: Real>(t: &LinearMap<T>, y: &SymmetricSpace<T>, n: usize, budget: Budget, seed: u64) -> Result<Estimate<T>> {
    check_n(n)?;
    y.norm(&vec![T::one(); n])?;
    let d = t.domain().dim();
    let f = |x: &[T]| pi_y1_ratio(t, y, &unflatten(x, d));
    Ok(searched(&f, n * d, d, &config_starts(n, d, seed), budget, seed, "configuration search"))
}

/// Lower bound of the best constant `H` in
/// `‖(‖x_k‖)_k‖_{g,∞} ≤ H sup_{‖x*‖≤1} Σ|⟨x*, x_k⟩|`.
/// A known constant `c1` of the Rademacher form gives the companion `H ≤ 4 c1`.
pub fn h_constant<T: Real>(
    x: &NormedSpace<T>,
    g: &GrowthSequence<T>,
    n: usize,
    budget: Budget,
    seed: u64,
    c1: Option<T>,
) -> Result<Estimate<T>> {
    let id = LinearMap::identity(x.clone());
    let e = pi_y1(&id, &SymmetricSpace::gweak(g.clone()), n, budget, seed)?;
    Ok(e.with_companion(c1.map(|c| T::lit(4.0) * c)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variables {
    Rademacher,
    Gaussian,
}

/// `(Σ‖x_k‖^q)^{1/q} / E‖Σ w_k x_k‖` with Rademacher or gaussian weights.
pub fn cotype_ratio<T: Real>(x: &NormedSpace<T>, q: T, config: &[Vec<T>], variables: Variables, opts: McOptions) -> T {
    let norms: Vec<T> = config.iter().map(|v| x.norm_unchecked(v)).collect();
    let avg = match variables {
        Variables::Rademacher => rademacher_average(x, config, Moment::First, opts),
        Variables::Gaussian => gaussian_average(x, config, Moment::First, opts),
    };
    avg.map_or(T::neg_infinity(), |a| ratio_or_floor(lp_unchecked(&norms, q), a.value))
}

fn cotype_search<T: Real>(
    x: &NormedSpace<T>,
    q: T,
    n: usize,
    variables: Variables,
    budget: Budget,
    seed: u64,
    opts: McOptions,
    extra: Option<Vec<T>>,
) -> Result<Estimate<T>> {
    if !(q >= T::lit(2.0)) {
        return Err(invalid("q", format!("need q >= 2, got {q}")));
    }
    check_n(n)?;
    let d = x.dim();
    let f = |v: &[T]| cotype_ratio(x, q, &unflatten(v, d), variables, opts);
    let mut starts = config_starts(n, d, seed);
    starts.extend(extra);
    let method = match (variables, n <= ENUMERATION_CAP) {
        (Variables::Rademacher, true) => "configuration search, exact averages",
        _ => "configuration search, monte carlo averages",
    };
    Ok(searched(&f, n * d, d, &starts, budget, seed, method))
}

/// Lower bound of the Rademacher or gaussian cotype-`q` constant on `n` vectors.
/// Rademacher averages are exact for `n ≤ 20`; Monte Carlo uses `opts` with
/// common random numbers across the search.
pub fn cotype_q_constant<T: Real>(
    x: &NormedSpace<T>,
    q: T,
    n: usize,
    variables: Variables,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<Estimate<T>> {
    cotype_search(x, q, n, variables, budget, seed, opts, None)
}

/// Estimates for increasing `ns`, each seeded with the previous witness padded
/// by zero vectors, so the values are non-decreasing.
pub fn cotype_q_profile<T: Real>(
    x: &NormedSpace<T>,
    q: T,
    ns: &[usize],
    variables: Variables,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<Vec<Estimate<T>>> {
    let mut out: Vec<Estimate<T>> = Vec::with_capacity(ns.len());
    let d = x.dim();
    for (i, &n) in ns.iter().enumerate() {
        let extra = match out.last().map(|e| &e.witness) {
            Some(Witness::Config(prev)) if prev.len() <= n => {
                let mut padded = prev.clone();
                padded.resize(n, vec![T::zero(); d]);
                Some(flatten(&padded))
            }
            _ => None,
        };
        out.push(cotype_search(x, q, n, variables, budget, seed.wrapping_add(i as u64), opts, extra)?);
    }
    Ok(out)
}

/// `ℓ(u)` for `u: ℓ_2^m → X` given as a `dim X × m` matrix: closed form on
/// Euclidean `X`, Monte Carlo otherwise.
fn ell_of<T: Real>(x: &NormedSpace<T>, u: &Matrix<T>, opts: McOptions) -> T {
    if x.is_euclidean() {
        return u.frobenius();
    }
    gaussian_average(x, &u.columns(), Moment::Second, opts).map_or(T::nan(), |a| a.value)
}

/// Lower bounds of `a_k(Tu)` for `u` with Euclidean domain.
fn tu_lower<T: Real>(t: &LinearMap<T>, u: &Matrix<T>) -> Vec<T> {
    let tu = t.matrix().matmul(u).expect("shapes match");
    let c = if t.codomain().is_euclidean() { Some(T::one()) } else { t.codomain().to_l2_bound() };
    let s = linalg::singular_values(&tu);
    let r = tu.rows().min(tu.cols());
    match c {
        Some(c) if c > T::zero() => s.into_iter().take(r).map(|v| v / c).collect(),
        _ => vec![T::zero(); r],
    }
}

fn umap_starts<T: Real>(t: &LinearMap<T>, extra_rank: Option<usize>) -> Vec<Vec<T>> {
    let d = t.domain().dim();
    let v = linalg::svd(t.matrix()).v;
    let isometry = |k: usize| {
        let mut u = Matrix::zeros(d, d);
        for j in 0..k.min(v.cols()) {
            for i in 0..d {
                u[(i, j)] = v[(i, j)];
            }
        }
        u.data().to_vec()
    };
    let mut starts = vec![Matrix::<T>::identity(d).data().to_vec()];
    for k in 1..=d.min(v.cols()) {
        starts.push(isometry(k));
    }
    if let Some(k) = extra_rank {
        starts.push(isometry(k));
    }
    starts
}

/// `sup_k g(k) a_k(Tu) / ℓ(u)` with certified lower bounds of `a_k`.
pub fn weak_cotype_ratio<T: Real>(t: &LinearMap<T>, g: &GrowthSequence<T>, u: &Matrix<T>, opts: McOptions) -> T {
    let ell = ell_of(t.domain(), u, opts);
    let num = tu_lower(t, u)
        .into_iter()
        .enumerate()
        .map(|(k, a)| g.eval(k + 1).map_or(T::neg_infinity(), |gk| gk * a))
        .fold(T::zero(), T::max);
    ratio_or_floor(num, ell)
}

fn zero_map_estimate<T: Real>(t: &LinearMap<T>) -> Option<Estimate<T>> {
    t.matrix().is_zero().then(|| Estimate::exact(T::zero(), Witness::None, "zero map"))
}

/// Lower bound of the weak cotype `g` constant of `T` over `u: ℓ_2^d → X`, `d = dim X`.
pub fn weak_cotype_g<T: Real>(
    t: &LinearMap<T>,
    g: &GrowthSequence<T>,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<Estimate<T>> {
    if let Some(e) = zero_map_estimate(t) {
        return Ok(e);
    }
    let d = t.domain().dim();
    g.eval(t.matrix().rows().min(d).max(1))?;
    let f = |x: &[T]| weak_cotype_ratio(t, g, &Matrix::from_row_major(d, d, x.to_vec()).expect("square"), opts);
    let r = search::maximize(&f, d * d, &umap_starts(t, None), budget, seed);
    let value = f(&r.point);
    let u = Matrix::from_row_major(d, d, r.point).expect("square");
    Ok(Estimate::lower(value, Witness::Map(u), budget, seed, "map search"))
}

fn delta_index<T: Real>(delta: T, n: usize) -> Result<usize> {
    if !(delta > T::zero() && delta < T::one()) {
        return Err(invalid("delta", format!("need 0 < delta < 1, got {delta}")));
    }
    Ok((delta * T::of(n)).floor().to_usize().unwrap_or(0).max(1))
}

/// `g(n) a_{[δn]}(Tu) / ℓ(u)`; `[δn]` is raised to 1 when it rounds to 0.
pub fn c_delta_ratio<T: Real>(t: &LinearMap<T>, g: &GrowthSequence<T>, delta: T, n: usize, u: &Matrix<T>, opts: McOptions) -> T {
    let Ok(j) = delta_index(delta, n) else { return T::nan() };
    let Ok(gn) = g.eval(n) else { return T::nan() };
    let a = tu_lower(t, u).get(j - 1).copied().unwrap_or(T::zero());
    ratio_or_floor(gn * a, ell_of(t.domain(), u, opts))
}

/// Lower bound of `C_δ(T)` at fixed `n`.
pub fn c_delta<T: Real>(
    t: &LinearMap<T>,
    g: &GrowthSequence<T>,
    delta: T,
    n: usize,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<Estimate<T>> {
    let j = delta_index(delta, n)?;
    g.eval(n)?;
    if let Some(e) = zero_map_estimate(t) {
        return Ok(e);
    }
    let d = t.domain().dim();
    let f = |x: &[T]| c_delta_ratio(t, g, delta, n, &Matrix::from_row_major(d, d, x.to_vec()).expect("square"), opts);
    let r = search::maximize(&f, d * d, &umap_starts(t, Some(j)), budget, seed);
    let value = f(&r.point);
    let u = Matrix::from_row_major(d, d, r.point).expect("square");
    Ok(Estimate::lower(value, Witness::Map(u), budget, seed, "map search"))
}

/// `(δ/(2S_2)) C_δ ≤ wc_g ≤ e^{3/2} S_2 (1−δ)^{−1/2} C_δ` evaluated at given estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaBracket<T> {
    pub delta: T,
    pub s2: T,
    pub c_delta: T,
    pub wc: T,
    pub lower: T,
    pub upper: T,
    pub holds: bool,
}

pub fn delta_bracket<T: Real>(delta: T, s2: T, c_delta: T, wc: T) -> DeltaBracket<T> {
    let lower = delta / (T::lit(2.0) * s2) * c_delta;
    let upper = T::lit(1.5).exp() * s2 / (T::one() - delta).sqrt() * c_delta;
    DeltaBracket { delta, s2, c_delta, wc, lower, upper, holds: lower <= wc && wc <= upper }
}

/// `2^{9/2} e^{3/2} S_2²`.
pub fn d_constant<T: Real>(s2: T) -> T {
    T::lit(2.0).powf(T::lit(4.5)) * T::lit(1.5).exp() * s2 * s2
}

/// The sharper constant `8e` available for `g(k) = k^{1/q}` with `q ≥ 2`.
pub fn d_constant_power<T: Real>(g: &GrowthSequence<T>) -> Option<T> {
    match g.exponent() {
        Some(a) if a > T::zero() && a <= T::lit(0.5) => Some(T::lit(8.0) * T::one().exp()),
        _ => None,
    }
}

/// `(E‖Σ g_j x_j‖²)^{1/2}`: closed form on Euclidean spaces.
pub fn gaussian_second_moment<T: Real>(x: &NormedSpace<T>, config: &[Vec<T>], opts: McOptions) -> Result<AverageResult<T>> {
    if x.is_euclidean() {
        crate::space::check_config(x, config)?;
        let value = config.iter().flatten().map(|&v| v * v).sum::<T>().sqrt();
        return Ok(AverageResult {
            value,
            method: Method::ClosedForm,
            moment: Moment::Second,
            samples: 0,
            std_error: T::zero(),
            seed: None,
        });
    }
    gaussian_average(x, config, Moment::Second, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PremiseReport<T> {
    /// Upper bound of `sup_{‖y*‖≤1} (Σ|⟨y*, Tx_j⟩|²)^{1/2}`.
    pub weak_l2: T,
    pub min_norm: T,
    pub floor: T,
    /// Why the premise failed; `None` when it holds.
    pub rejection: Option<String>,
    pub average: Option<AverageResult<T>>,
    /// `g(n) / (E‖Σ g_j x_j‖²)^{1/2}`.
    pub implied: Option<T>,
}

impl<T> PremiseReport<T> {
    pub fn accepted(&self) -> bool {
        self.rejection.is_none()
    }
}

fn images<T: Real>(t: &LinearMap<T>, config: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    config.iter().map(|x| t.apply(x)).collect()
}

/// Checks the hypothesis `sup_{‖y*‖≤1} Σ|⟨y*, Tx_j⟩|² ≤ 1`, `‖Tx_j‖ ≥ 1/D`
/// and, when it holds, reports the gaussian average and the implied constant.
pub fn equal_norm_premise_check<T: Real>(
    t: &LinearMap<T>,
    config: &[Vec<T>],
    d: T,
    g: &GrowthSequence<T>,
    opts: McOptions,
) -> Result<PremiseReport<T>> {
    check_n(config.len())?;
    if !(d > T::zero()) {
        return Err(invalid("D", format!("need D > 0, got {d}")));
    }
    let ys = images(t, config)?;
    let weak_l2 = weak_lq_upper(t.codomain(), &ys, T::lit(2.0));
    let min_norm = ys.iter().map(|y| t.codomain().norm_unchecked(y)).fold(T::infinity(), T::min);
    let floor = d.recip();
    let tol = T::lit(1e-12);
    let rejection = if weak_l2 > T::one() + tol {
        Some(format!("weak-l2 bound {weak_l2} exceeds 1"))
    } else if min_norm < floor * (T::one() - tol) {
        Some(format!("smallest image norm {min_norm} is below the floor {floor}"))
    } else {
        None
    };
    let mut report = PremiseReport { weak_l2, min_norm, floor, rejection, average: None, implied: None };
    if report.accepted() {
        let avg = gaussian_second_moment(t.domain(), config, opts)?;
        report.implied = Some(g.eval(config.len())? / avg.value);
        report.average = Some(avg);
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
    /// `rhs / lhs`.
    pub slack: T,
    /// True when the weak cotype value is an upper bound, so `holds` is a
    /// contract; otherwise the comparison is only reported.
    pub asserted: bool,
    pub average: AverageResult<T>,
}

/// `ρ⁴ g(n) ≤ 2048 S_2 wc_g(T) (E‖Σ g_j x_j‖²)^{1/2}` under the premise
/// `sup_{‖y*‖≤1} Σ|⟨y*, Tx_j⟩|² ≤ 1` and `‖Tx_j‖ ≥ ρ`.
pub fn prop14_inequality<T: Real>(
    t: &LinearMap<T>,
    config: &[Vec<T>],
    g: &GrowthSequence<T>,
    wc: &Estimate<T>,
    rho: T,
    s2: T,
    opts: McOptions,
) -> Result<InequalityReport<T>> {
    check_n(config.len())?;
    if !(rho > T::zero() && rho <= T::one()) {
        return Err(invalid("rho", format!("need 0 < rho <= 1, got {rho}")));
    }
    let ys = images(t, config)?;
    let tol = T::lit(1e-12);
    let weak = weak_lq_upper(t.codomain(), &ys, T::lit(2.0));
    if weak > T::one() + tol {
        return Err(Error::Premise(format!("weak-l2 bound {weak} exceeds 1")));
    }
    if let Some(j) = ys.iter().position(|y| t.codomain().norm_unchecked(y) < rho * (T::one() - tol)) {
        return Err(Error::Premise(format!("image {j} has norm below rho = {rho}")));
    }
    let average = gaussian_second_moment(t.domain(), config, opts)?;
    let lhs = rho.powi(4) * g.eval(config.len())?;
    let rhs = s2 * T::lit(2048.0) * wc.value * average.value;
    Ok(InequalityReport { lhs, rhs, holds: lhs <= rhs, slack: rhs / lhs, asserted: !wc.direction.is_lower(), average })
}

/// `g(k) = k^{1/q}`: the final constant is of order `c_q H^{2q+2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerOrder<T> {
    pub q: T,
    pub h_exponent: T,
    pub h_power: T,
}

/// The constants of the main proof from measured growth constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantLedger<T> {
    pub s2: T,
    pub s3: T,
    pub s4: T,
    pub l_t: T,
    pub m_r: T,
    pub t: T,
    pub r: usize,
    pub h: T,
    pub k: T,
    pub d: T,
    pub d_power: Option<T>,
    pub a: T,
    pub c1: T,
    pub b: T,
    /// `[H^{max(2r, tr)}]`, the argument of `g` in `c_2`.
    pub g_index: T,
    pub c2: T,
    pub c: T,
    pub power_order: Option<PowerOrder<T>>,
}

fn eval_at_real<T: Real>(g: &GrowthSequence<T>, x: T) -> Result<T> {
    let x = x.floor().max(T::one());
    match g {
        GrowthSequence::Power { exponent } => Ok(x.powf(*exponent)),
        GrowthSequence::Table { values } => {
            let n = x.to_usize().ok_or(Error::OutOfRange { n: usize::MAX, len: values.len() })?;
            g.eval(n)
        }
    }
}

pub fn constant_ledger<T: Real>(report: &GrowthReport<T>, g: &GrowthSequence<T>, h: T, k: T) -> Result<ConstantLedger<T>> {
    if !(h >= T::one()) {
        return Err(invalid("H", format!("need H >= 1, got {h}")));
    }
    if !(k > T::zero()) {
        return Err(invalid("K", format!("need K > 0, got {k}")));
    }
    let two = T::lit(2.0);
    let (s2, s3, t, r) = (report.s2, report.s3, report.t, report.r);
    let rf = T::of(r);
    let d = d_constant(s2);
    let a = two.sqrt() * T::lit(1.5).exp() * s2;
    let c1 = s2 * two.powi(2 * r as i32 + 1) * T::lit(100.0) * d * report.m_r * (two * s3).powi(r as i32) * h.powi(r as i32 + 1);
    let b = (two * s3 * report.l_t * (k + T::one())).max(T::lit(100.0) * report.l_t * d).powf(two.max(t));
    let g_index = h.powf((two * rf).max(t * rf)).floor().max(T::one());
    let c2 = s2 * two.powi(2 * r as i32 + 3) * b.powi(r as i32) * eval_at_real(g, g_index)?;
    let power_order = g.exponent().filter(|&e| e > T::zero() && e <= T::lit(0.5)).map(|e| {
        let q = e.recip();
        let h_exponent = two * q + two;
        PowerOrder { q, h_exponent, h_power: h.powf(h_exponent) }
    });
    Ok(ConstantLedger {
        s2,
        s3,
        s4: report.s4,
        l_t: report.l_t,
        m_r: report.m_r,
        t,
        r,
        h,
        k,
        d,
        d_power: d_constant_power(g),
        a,
        c1,
        b,
        g_index,
        c2,
        c: c1.max(c2),
        power_order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::validate_growth;
    use crate::weak::unit_vectors;
    use approx::assert_relative_eq;

    fn small() -> Budget {
        Budget::new(2, 60)
    }

    #[test]
    fn pi_examples() {
        let n = 4;
        let linf = LinearMap::identity(NormedSpace::lp(f64::INFINITY, n).unwrap());
        let e = pi_pq_n(&linf, 1.0, 1.0, n, small(), 0).unwrap();
        assert!(e.value >= n as f64 * (1.0 - 1e-10));
        let l2 = LinearMap::identity(NormedSpace::euclidean(n));
        let e = pi_pq_n(&l2, 1.0, 1.0, n, small(), 0).unwrap();
        assert!(e.value >= 2.0 - 1e-12);
        if let Witness::Config(c) = &e.witness {
            assert_relative_eq!(pi_pq_ratio(&l2, 1.0, 1.0, c), e.value, epsilon = 1e-10);
        }
        let m = LinearMap::euclidean(Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]).unwrap());
        let single = pi_pq_ratio(&m, 2.0, 2.0, &[vec![0.3, -0.7]]);
        assert!(single <= m.operator_norm(small(), 0).value + 1e-12);
        assert!(pi_pq_n(&m, 1.0, 2.0, 2, small(), 0).is_err());
    }

    #[test]
    fn pi_y1_examples() {
        let n = 3;
        let linf = LinearMap::identity(NormedSpace::lp(f64::INFINITY, n).unwrap());
        let e = pi_y1(&linf, &SymmetricSpace::lp(1.0).unwrap(), n, small(), 0).unwrap();
        assert!(e.value >= 3.0 - 1e-10);
        let l2 = LinearMap::identity(NormedSpace::euclidean(n));
        let sq = SymmetricSpace::gweak(GrowthSequence::power(0.5));
        assert!(pi_y1(&l2, &sq, n, small(), 0).unwrap().value >= 1.0 - 1e-12);
        assert_relative_eq!(pi_y1_ratio(&l2, &sq, &unit_vectors(n)), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn h_examples() {
        let g = GrowthSequence::power(0.5);
        let h = h_constant(&NormedSpace::euclidean(4), &g, 4, small(), 0, Some(2.0)).unwrap();
        assert!(h.value >= 1.0 - 1e-12);
        assert_eq!(h.companion, Some(8.0));
        let one = GrowthSequence::power(0.0);
        let linf = NormedSpace::lp(f64::INFINITY, 3).unwrap();
        let id = LinearMap::identity(linf.clone());
        assert_relative_eq!(pi_y1_ratio(&id, &SymmetricSpace::gweak(one.clone()), &unit_vectors(3)), 1.0);
        assert!(h_constant(&linf, &one, 1, small(), 0, None).unwrap().value >= 1.0 - 1e-12);
    }

    #[test]
    fn cotype_examples() {
        let o = McOptions::default();
        let l2 = NormedSpace::euclidean(2);
        assert_relative_eq!(cotype_ratio(&l2, 2.0, &unit_vectors(2), Variables::Rademacher, o), 1.0, epsilon = 1e-12);
        let linf = NormedSpace::lp(f64::INFINITY, 2).unwrap();
        assert_relative_eq!(cotype_ratio(&linf, 2.0, &unit_vectors(2), Variables::Rademacher, o), 2f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(cotype_ratio(&linf, 2.0, &[vec![0.2, -0.5]], Variables::Rademacher, o), 1.0, epsilon = 1e-12);
        let e = cotype_q_constant(&linf, 2.0, 2, Variables::Rademacher, small(), 0, o).unwrap();
        assert!(e.value >= 2f64.sqrt() - 1e-12);
    }

    #[test]
    fn cotype_profile_monotone() {
        let x = NormedSpace::lp(1.5, 3).unwrap();
        let p = cotype_q_profile(&x, 2.0, &[1, 2, 3, 4], Variables::Rademacher, small(), 5, McOptions::default()).unwrap();
        for w in p.windows(2) {
            assert!(w[1].value >= w[0].value - 1e-12);
        }
    }

    #[test]
    fn weak_cotype_examples() {
        let g = GrowthSequence::power(0.5);
        let o = McOptions::default();
        let id = LinearMap::identity(NormedSpace::euclidean(3));
        let e = weak_cotype_g(&id, &g, small(), 0, o).unwrap();
        assert_relative_eq!(e.value, 1.0, epsilon = 1e-9);
        let z = LinearMap::euclidean(Matrix::<f64>::zeros(2, 2));
        assert_eq!(weak_cotype_g(&z, &g, small(), 0, o).unwrap().value, 0.0);
        let d = LinearMap::euclidean(Matrix::diag(&[1.0, 0.0]));
        let rank1 = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        assert_relative_eq!(weak_cotype_ratio(&d, &g, &rank1, o), 1.0);
        assert!(weak_cotype_g(&d, &g, small(), 0, o).unwrap().value >= 1.0 - 1e-12);
    }

    #[test]
    fn c_delta_examples() {
        let g = GrowthSequence::power(0.5);
        let o = McOptions::default();
        let id = LinearMap::identity(NormedSpace::euclidean(4));
        assert_relative_eq!(c_delta_ratio(&id, &g, 0.5, 4, &Matrix::identity(4), o), 1.0, epsilon = 1e-12);
        assert!(c_delta(&id, &g, 0.5, 4, small(), 0, o).unwrap().value >= 1.0);
        assert!(c_delta(&id, &g, 1.0, 4, small(), 0, o).is_err());
        let z = LinearMap::euclidean(Matrix::<f64>::zeros(2, 2));
        assert_eq!(c_delta(&z, &g, 0.5, 2, small(), 0, o).unwrap().value, 0.0);
    }

    #[test]
    fn premise_examples() {
        let g = GrowthSequence::power(0.5);
        let id = LinearMap::identity(NormedSpace::euclidean(4));
        let r = equal_norm_premise_check(&id, &unit_vectors(4), d_constant(1.0), &g, McOptions::default()).unwrap();
        assert!(r.accepted());
        assert_relative_eq!(r.implied.unwrap(), 1.0, epsilon = 1e-12);
        let mut c = unit_vectors::<f64>(3);
        c[1] = vec![0.0; 3];
        let r = equal_norm_premise_check(&LinearMap::identity(NormedSpace::euclidean(3)), &c, 8.0, &g, McOptions::default()).unwrap();
        assert!(!r.accepted());
        assert_relative_eq!(d_constant_power(&GrowthSequence::power(1.0 / 3.0)).unwrap(), 8.0 * std::f64::consts::E);
        assert!(d_constant_power(&GrowthSequence::power(0.9)).is_none());
    }

    #[test]
    fn equal_norm_examples() {
        let g = GrowthSequence::power(0.5);
        let n = 4;
        let id = LinearMap::identity(NormedSpace::euclidean(n));
        let wc = Estimate::lower(1.0, Witness::None, small(), 0, "test");
        let r = prop14_inequality(&id, &unit_vectors(n), &g, &wc, 1.0, 1.0, McOptions::default()).unwrap();
        assert_relative_eq!(r.lhs, 2.0);
        assert_relative_eq!(r.rhs, 4096.0);
        assert!(r.holds && !r.asserted && r.slack >= 100.0);
        let r = prop14_inequality(&id, &[vec![1.0, 0.0, 0.0, 0.0]], &g, &wc, 1e-3, 1.0, McOptions::default()).unwrap();
        assert!(r.lhs < 1e-11 && r.holds);
        assert!(matches!(
            prop14_inequality(&id, &[vec![0.5, 0.0, 0.0, 0.0]], &g, &wc, 0.9, 1.0, McOptions::default()),
            Err(Error::Premise(_))
        ));
    }

    #[test]
    fn ledger_example() {
        let g = GrowthSequence::power(0.5);
        let mut report = validate_growth(&g, 256, 2.0, 2).unwrap();
        (report.s2, report.s3, report.s4, report.l_t, report.m_r) = (1.0, 1.0, 1.0, 1.0, 1.0);
        let l = constant_ledger(&report, &g, 1.0, 1.0).unwrap();
        let d = 2f64.powf(4.5) * 1.5f64.exp();
        assert_relative_eq!(l.d, d, max_relative = 1e-14);
        assert!((l.d - 101.40).abs() < 0.01);
        assert_relative_eq!(l.c1, 12800.0 * d, max_relative = 1e-12);
        assert_relative_eq!(l.b, (100.0 * d).powi(2), max_relative = 1e-12);
        assert_relative_eq!(l.c2, 128.0 * (100.0 * d).powi(4), max_relative = 1e-12);
        assert_eq!(l.c, l.c1.max(l.c2));
        let po = l.power_order.unwrap();
        assert_eq!((po.q, po.h_exponent), (2.0, 6.0));
        assert!(constant_ledger(&report, &g, 0.5, 1.0).is_err());
        assert!(constant_ledger(&report, &g, 1.0, 0.0).is_err());
        let short = GrowthSequence::table(vec![1.0, 1.2]).unwrap();
        let rep = validate_growth(&short, 2, 2.0, 1).unwrap();
        assert!(constant_ledger(&rep, &short, 1.5, 1.0).is_ok());
        assert!(constant_ledger(&rep, &short, 2.0, 1.0).is_err());
    }
}
