//! Block selection and regrouping certificates for gaussian averages.
//!
//! The existence steps of the argument are replaced by explicit search: each
//! block is chosen to maximize its measured Rademacher average, regrouped
//! unions are measured level by level, and every measurement is compared
//! with the closed-form floor it is supposed to dominate. Shortfalls are data.

use serde::{Deserialize, Serialize};

use crate::averages::{gaussian_average, rademacher_average, AverageResult, McOptions, Moment};
use crate::error::{invalid, Error, Result};
use crate::estimate::Budget;
use crate::growth::GrowthSequence;
use crate::linmap::LinearMap;
use crate::scalar::Real;
use crate::search::rng_for;
use crate::space::NormedSpace;
use crate::summing::{equal_norm_premise_check, PremiseReport};

use rand::seq::SliceRandom;

/// Constants entering the floors. `k` is the regrouping constant, default 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PipelineConstants<T> {
    pub h: T,
    pub d: T,
    pub s3: T,
    pub k: T,
    pub m_r: T,
}

impl<T: Real> PipelineConstants<T> {
    pub fn ones() -> Self {
        Self { h: T::one(), d: T::one(), s3: T::one(), k: T::one(), m_r: T::one() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condition<T> {
    pub lhs: T,
    pub rhs: T,
    pub holds: bool,
}

impl<T: Real> Condition<T> {
    fn le(lhs: T, rhs: T) -> Self {
        Self { lhs, rhs, holds: lhs <= rhs }
    }
}

/// `n = 2^{rM+1}` with `M` even, `N = M/2`, `s = p = 2^{rN}`, `k = 2^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters<T> {
    pub n_raw: usize,
    pub r: usize,
    pub m: usize,
    pub n: usize,
    pub big_n: usize,
    pub s: usize,
    pub p: usize,
    pub k: usize,
    /// `√2·16·HD ≤ g(s)`, together with `8 ≤ s`.
    pub cond1: Condition<T>,
    pub cond1_s: bool,
    /// `2S_3(K+1)H ≤ g(k)`.
    pub cond2_k: Condition<T>,
    /// `100DH√k ≤ g(s)`.
    pub cond2_s: Condition<T>,
}

fn pow2(e: usize) -> Option<usize> {
    u32::try_from(e).ok().and_then(|e| 1usize.checked_shl(e)).filter(|&v| v != 0)
}

pub fn plan_parameters<T: Real>(n_raw: usize, g: &GrowthSequence<T>, r: usize, c: &PipelineConstants<T>) -> Result<Parameters<T>> {
    if r == 0 {
        return Err(invalid("r", "need r >= 1"));
    }
    let mut m = 0;
    while pow2(r * (m + 2) + 1).is_some_and(|v| v <= n_raw) {
        m += 2;
    }
    if m == 0 {
        return Err(Error::Degenerate(format!("n = {n_raw} admits only M = 0 for r = {r}")));
    }
    let big_n = m / 2;
    let n = pow2(r * m + 1).expect("checked above");
    let s = pow2(r * big_n).expect("below n");
    let k = pow2(big_n).expect("below n");
    let (gs, gk) = (g.eval(s)?, g.eval(k)?);
    let hd = c.h * c.d;
    Ok(Parameters {
        n_raw,
        r,
        m,
        n,
        big_n,
        s,
        p: s,
        k,
        cond1: Condition::le(T::lit(2.0).sqrt() * T::lit(16.0) * hd, gs),
        cond1_s: s >= 8,
        cond2_k: Condition::le(T::lit(2.0) * c.s3 * (c.k + T::one()) * c.h, gk),
        cond2_s: Condition::le(T::lit(100.0) * hd * T::of(k).sqrt(), gs),
    })
}

fn subset<T: Real>(config: &[Vec<T>], idx: &[usize]) -> Vec<Vec<T>> {
    idx.iter().map(|&i| config[i].clone()).collect()
}

fn measure<T: Real>(space: &NormedSpace<T>, config: &[Vec<T>], idx: &[usize], opts: McOptions) -> Result<AverageResult<T>> {
    rademacher_average(space, &subset(config, idx), Moment::First, opts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockSelection<T> {
    pub indices: Vec<usize>,
    pub average: AverageResult<T>,
    pub target: T,
    pub met: bool,
    /// `|J| ≥ n/2` at the time of selection.
    pub pool_large: bool,
}

/// Picks `s` indices of `pool` maximizing the measured Rademacher average:
/// greedy augmentation, then `budget.starts` random subsets each improved by
/// up to `budget.polish` swap evaluations. Restart `i` depends only on
/// `(seed, i)`, so larger budgets never do worse.
pub fn select_block<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    pool: &[usize],
    s: usize,
    target: T,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<BlockSelection<T>> {
    if s == 0 || s > pool.len() {
        return Err(invalid("s", format!("need 1 <= s <= |J| = {}, got {s}", pool.len())));
    }
    if let Some(&bad) = pool.iter().find(|&&i| i >= config.len()) {
        return Err(invalid("J", format!("index {bad} is outside the configuration")));
    }
    let value = |idx: &[usize]| measure(space, config, idx, opts).map(|a| a.value);
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    while chosen.len() < s {
        let mut best: Option<(usize, T)> = None;
        let open: Vec<usize> = pool.iter().copied().filter(|j| !chosen.contains(j)).collect();
        for j in open {
            chosen.push(j);
            let v = value(&chosen)?;
            chosen.pop();
            if best.is_none_or(|b| v > b.1) {
                best = Some((j, v));
            }
        }
        chosen.push(best.expect("pool larger than chosen").0);
    }
    let mut best = (value(&chosen)?, chosen);
    for i in 0..budget.starts {
        let mut rng = rng_for(seed, i as u64);
        let mut shuffled = pool.to_vec();
        shuffled.shuffle(&mut rng);
        let (mut cur, mut rest) = (shuffled[..s].to_vec(), shuffled[s..].to_vec());
        let mut v = value(&cur)?;
        let mut evals = 0;
        'polish: loop {
            let mut improved = false;
            for a in 0..cur.len() {
                for b in 0..rest.len() {
                    if evals >= budget.polish {
                        break 'polish;
                    }
                    evals += 1;
                    std::mem::swap(&mut cur[a], &mut rest[b]);
                    let w = value(&cur)?;
                    if w > v {
                        v = w;
                        improved = true;
                    } else {
                        std::mem::swap(&mut cur[a], &mut rest[b]);
                    }
                }
            }
            if !improved {
                break;
            }
        }
        if v > best.0 {
            best = (v, cur);
        }
    }
    let mut indices = best.1;
    indices.sort_unstable();
    let average = measure(space, config, &indices, opts)?;
    Ok(BlockSelection { met: average.value >= target, indices, average, target, pool_large: 2 * pool.len() >= config.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegroupReport<T> {
    pub alpha: T,
    /// `α g(k) / (2 S_3 H)`.
    pub predicted: T,
    pub measured: AverageResult<T>,
    pub blocks_meet_floor: bool,
    /// `√k ≤ α g(k) / (2 S_3 K H)`; a miss is reported, not raised.
    pub precondition_met: bool,
    pub dominated: bool,
}

/// Compares the measured average of a union of `k` disjoint blocks with the
/// predicted floor from a common block floor `alpha`.
pub fn regroup_step<T: Real>(
    space: &NormedSpace<T>,
    config: &[Vec<T>],
    blocks: &[Vec<usize>],
    alpha: T,
    g: &GrowthSequence<T>,
    c: &PipelineConstants<T>,
    opts: McOptions,
) -> Result<RegroupReport<T>> {
    let k = blocks.len();
    if k == 0 {
        return Err(invalid("blocks", "need at least one block"));
    }
    let mut blocks_meet_floor = true;
    for b in blocks {
        blocks_meet_floor &= measure(space, config, b, opts)?.value >= alpha;
    }
    let union: Vec<usize> = blocks.iter().flatten().copied().collect();
    let mut seen = union.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != union.len() {
        return Err(invalid("blocks", "blocks must be disjoint"));
    }
    let gk = g.eval(k)?;
    let two_s3h = T::lit(2.0) * c.s3 * c.h;
    let predicted = alpha * gk / two_s3h;
    let measured = measure(space, config, &union, opts)?;
    Ok(RegroupReport {
        alpha,
        predicted,
        blocks_meet_floor,
        precondition_met: T::of(k).sqrt() <= alpha * gk / (two_s3h * c.k),
        dominated: measured.value >= predicted,
        measured,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord<T> {
    pub level: usize,
    /// Blocks per group, `k^level`.
    pub group_blocks: usize,
    /// Smallest measured average over the groups of this level.
    pub measured: T,
    pub groups: Vec<AverageResult<T>>,
    /// `(g(s)/(100DH)) (g(k)/(2S_3H))^level`.
    pub formula: T,
    /// Same with `64` in place of `100`.
    pub formula_64: T,
    pub dominated: bool,
}

/// Level floor `(g(s)/(c·DH)) (g(k)/(2S_3H))^l`.
pub fn level_formula<T: Real>(gs: T, gk: T, c: &PipelineConstants<T>, factor: T, level: usize) -> T {
    gs / (factor * c.d * c.h) * (gk / (T::lit(2.0) * c.s3 * c.h)).powi(level as i32)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockCertificate<T> {
    pub params: Parameters<T>,
    pub constants: PipelineConstants<T>,
    pub premise: PremiseReport<T>,
    pub blocks: Vec<BlockSelection<T>>,
    pub levels: Vec<LevelRecord<T>>,
    /// `E‖Σ g_i x_i‖` over the truncated configuration.
    pub final_measured: AverageResult<T>,
    /// `√(2/π) E‖Σ ε_i x_i‖`, a floor for the gaussian average.
    pub final_rademacher_floor: T,
    /// `(1/(100 D M_r H)) (1/(2S_3H))^r g(2^{2Nr})`.
    pub final_formula: T,
    pub verdict: bool,
    pub budget: Budget,
    pub seed: u64,
    pub mc: McOptions,
}

/// Runs the full selection and regrouping on `config` (truncated to `n`).
pub fn run_pipeline<T: Real>(
    t: &LinearMap<T>,
    config: &[Vec<T>],
    g: &GrowthSequence<T>,
    r: usize,
    constants: PipelineConstants<T>,
    budget: Budget,
    seed: u64,
    opts: McOptions,
) -> Result<BlockCertificate<T>> {
    let params = plan_parameters(config.len(), g, r, &constants)?;
    let config = &config[..params.n];
    let premise = equal_norm_premise_check(t, config, constants.d, g, opts)?;
    if let Some(why) = &premise.rejection {
        return Err(Error::Premise(why.clone()));
    }
    let space = t.domain();
    let (gs, gk) = (g.eval(params.s)?, g.eval(params.k)?);
    let target = level_formula(gs, gk, &constants, T::lit(64.0), 0);

    let mut pool: Vec<usize> = (0..params.n).collect();
    let mut blocks = Vec::with_capacity(params.p);
    for j in 0..params.p {
        let b = select_block(space, config, &pool, params.s, target, budget, seed.wrapping_add(j as u64), opts)?;
        pool.retain(|i| !b.indices.contains(i));
        blocks.push(b);
    }

    let mut levels = Vec::with_capacity(r + 1);
    let mut group_blocks = 1;
    for level in 0..=r {
        let groups: Vec<AverageResult<T>> = blocks
            .chunks(group_blocks)
            .map(|grp| {
                let idx: Vec<usize> = grp.iter().flat_map(|b| b.indices.iter().copied()).collect();
                measure(space, config, &idx, McOptions { seed: opts.seed.wrapping_add(level as u64), ..opts })
            })
            .collect::<Result<_>>()?;
        let measured = groups.iter().map(|a| a.value).fold(T::infinity(), T::min);
        let formula = level_formula(gs, gk, &constants, T::lit(100.0), level);
        levels.push(LevelRecord {
            level,
            group_blocks,
            measured,
            groups,
            formula,
            formula_64: level_formula(gs, gk, &constants, T::lit(64.0), level),
            dominated: measured >= formula,
        });
        group_blocks *= params.k;
    }

    let final_measured = gaussian_average(space, config, Moment::First, opts)?;
    let rad = rademacher_average(space, config, Moment::First, opts)?;
    let final_rademacher_floor = (T::lit(2.0) / T::lit(std::f64::consts::PI)).sqrt() * rad.value;
    let top = pow2(2 * params.big_n * r).ok_or_else(|| invalid("r", "final index overflows"))?;
    let two_s3h = T::lit(2.0) * constants.s3 * constants.h;
    let final_formula =
        (T::lit(100.0) * constants.d * constants.m_r * constants.h).recip() * two_s3h.recip().powi(r as i32) * g.eval(top)?;
    let verdict = levels.iter().all(|l| l.dominated) && final_measured.value >= final_formula;
    Ok(BlockCertificate {
        params,
        constants,
        premise,
        blocks,
        levels,
        final_measured,
        final_rademacher_floor,
        final_formula,
        verdict,
        budget,
        seed,
        mc: opts,
    })
}

/// Recomputes the certificate from its stored seeds and compares every field.
pub fn revalidate<T: Real>(
    cert: &BlockCertificate<T>,
    t: &LinearMap<T>,
    config: &[Vec<T>],
    g: &GrowthSequence<T>,
) -> Result<bool> {
    let again = run_pipeline(t, config, g, cert.params.r, cert.constants, cert.budget, cert.seed, cert.mc)?;
    Ok(&again == cert)
}
