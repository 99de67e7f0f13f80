//! The sixteen acceptance criteria, each against an oracle computed here
//! rather than by the library. One PASS/FAIL line per criterion.

use cotype_core::averages::{contraction_check, ell_norm, gauss_vs_rademacher, rademacher_average, rademacher_monte_carlo, McOptions, Moment};
use cotype_core::growth::{g_q, k_n, tilde_g, validate_growth};
use cotype_core::linalg::determinant;
use cotype_core::matrix::Matrix;
use cotype_core::optimal::{
    alternative_classify, opt_gauge, prop24_bound, self_concavity_check, submultiplicativity_check, tensor_square, Alternative,
    GaugeKind,
};
use cotype_core::pipeline::{revalidate, run_pipeline, PipelineConstants};
use cotype_core::search::{gaussian_vec, rng_for};
use cotype_core::seq::{fundamental_function, lorentz_norm, SymmetricNorm, SymmetricSpace};
use cotype_core::snumbers::{eigenvalue_sequence, multiplicative_weyl, pi2_by_approx_bound};
use cotype_core::summing::{c_delta, d_constant, delta_bracket, pi_pq_n, prop14_inequality, weak_cotype_g};
use cotype_core::verify::suite_eigen_decay;
use cotype_core::weak::unit_vectors;
use cotype_core::{Budget, GrowthSequence, LinearMap, NormedSpace};
use num_complex::Complex64 as C;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    let s = a.abs().max(b.abs());
    if s == 0.0 {
        0.0
    } else {
        (a - b).abs() / s
    }
}

/// `ℓ_p` norm written out directly.
fn lp(x: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        x.iter().fold(0.0, |m, v| m.max(v.abs()))
    } else {
        x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn pick_p(rng: &mut ChaCha8Rng) -> f64 {
    [1.0, 1.5, 2.0, 3.0, 4.0, f64::INFINITY][rng.random_range(0..6)]
}

fn combo(config: &[Vec<f64>], a: &[f64]) -> Vec<f64> {
    let d = config[0].len();
    (0..d).map(|j| config.iter().zip(a).map(|(x, c)| c * x[j]).sum()).collect()
}

/// All `2^n` sign vectors.
fn signs(n: usize) -> impl Iterator<Item = Vec<f64>> {
    (0u32..1 << n).map(move |m| (0..n).map(|k| if m >> k & 1 == 1 { -1.0 } else { 1.0 }).collect())
}

fn criterion_1() -> Outcome {
    let mut rng = rng_for(SEED, 1);
    let mut worst = 0.0f64;
    let mut exact = true;
    for _ in 0..1000 {
        let n = rng.random_range(1..=64);
        let v = gaussian_vec::<f64>(&mut rng, n);
        let p = [1.0, 1.25, 2.0, 3.0, 6.0][rng.random_range(0..5)];
        worst = worst.max(rel(lorentz_norm(&v, p, p).unwrap(), lp(&v, p)));
        let mut w: Vec<f64> = v.iter().map(|x| if rng.random::<bool>() { -x } else { *x }).collect();
        w.shuffle(&mut rng);
        for y in [SymmetricSpace::lp(p).unwrap(), SymmetricSpace::lorentz(p, 1.0).unwrap(), SymmetricSpace::lorentz(2.0, f64::INFINITY).unwrap()] {
            exact &= y.norm(&v).unwrap().to_bits() == y.norm(&w).unwrap().to_bits();
        }
    }
    outcome(worst <= 1e-12 && exact, format!("max rel err {worst:.2e}, rearrangement exact: {exact}"))
}

fn criterion_2() -> Outcome {
    let mut ok = true;
    for q in [2.0, 3.0, 4.0] {
        let r = validate_growth(&GrowthSequence::power(1.0 / q), 256, q, 2).unwrap();
        ok &= r.s2 == 1.0 && r.l_t == 1.0 && r.m_r == 1.0;
    }
    let sqrt = GrowthSequence::power(0.5);
    let hand = [
        (tilde_g(&sqrt, 2, 16).unwrap(), 4.0),
        (tilde_g(&sqrt, 2, 15).unwrap(), 1.0),
        (tilde_g(&sqrt, 2, 1).unwrap(), 1.0),
        (g_q(&sqrt, 4.0, 16).unwrap(), 2.0),
        (g_q(&GrowthSequence::power(1.0), 4.0, 16).unwrap(), 2.0),
        (g_q(&sqrt, 4.0, 1).unwrap(), 1.0),
    ];
    let hand_ok = hand.iter().all(|(a, b)| a == b);
    outcome(ok && hand_ok, format!("S_2 = L_q = M_2 = 1: {ok}, hand values: {hand_ok}"))
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    for n in 1..=16 {
        let e = unit_vectors::<f64>(n);
        let o = McOptions::default();
        ok &= rademacher_average(&NormedSpace::lp(1.0, n).unwrap(), &e, Moment::First, o).unwrap().value == n as f64;
        ok &= rel(rademacher_average(&NormedSpace::euclidean(n), &e, Moment::First, o).unwrap().value, (n as f64).sqrt()) <= 1e-12;
    }
    let mut rng = rng_for(SEED, 3);
    let mut worst_z = 0.0f64;
    let mut enum_err = 0.0f64;
    for i in 0..50 {
        let n = rng.random_range(2..=10);
        let d = rng.random_range(1..=5);
        let p = pick_p(&mut rng);
        let x = NormedSpace::lp(p, d).unwrap();
        let config: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut rng, d)).collect();
        let brute = signs(n).map(|s| lp(&combo(&config, &s), p)).sum::<f64>() / f64::from(1u32 << n);
        enum_err = enum_err.max(rel(rademacher_average(&x, &config, Moment::First, McOptions::default()).unwrap().value, brute));
        let mc = rademacher_monte_carlo(&x, &config, Moment::First, McOptions::new(100_000, SEED + i)).unwrap();
        worst_z = worst_z.max((mc.value - brute).abs() / mc.std_error);
    }
    outcome(ok && enum_err <= 1e-12 && worst_z <= 3.0, format!("unit vectors exact: {ok}, enumeration err {enum_err:.1e}, worst MC z {worst_z:.2}"))
}

/// Gram-Schmidt on a gaussian matrix.
fn orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix<f64> {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    while cols.len() < n {
        let mut v = gaussian_vec::<f64>(rng, n);
        for c in &cols {
            let d: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(c).for_each(|(a, b)| *a -= d * b);
        }
        let norm = lp(&v, 2.0);
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|a| a / norm).collect());
        }
    }
    Matrix::from_columns(&cols).unwrap()
}

fn criterion_4() -> Outcome {
    let id = LinearMap::identity(NormedSpace::euclidean(8));
    let a = ell_norm(&id, McOptions::new(100_000, SEED)).unwrap();
    let close = rel(a.value, 8f64.sqrt()) <= 0.02;
    let mut rng = rng_for(SEED, 4);
    let u = Matrix::from_row_major(8, 8, gaussian_vec(&mut rng, 64)).unwrap();
    let o = orthogonal(&mut rng, 8);
    let l1 = NormedSpace::lp(1.0, 8).unwrap();
    let a1 = ell_norm(&LinearMap::new(u.clone(), NormedSpace::euclidean(8), l1.clone()).unwrap(), McOptions::new(100_000, SEED + 1)).unwrap();
    let a2 = ell_norm(&LinearMap::new(u.matmul(&o).unwrap(), NormedSpace::euclidean(8), l1).unwrap(), McOptions::new(100_000, SEED + 2)).unwrap();
    let se = a1.std_error.hypot(a2.std_error);
    let invariant = (a1.value - a2.value).abs() <= 3.0 * se;
    outcome(close && invariant, format!("l(id) = {:.5} vs {:.5}, rotation gap {:.2} SE", a.value, 8f64.sqrt(), (a1.value - a2.value).abs() / se))
}

fn criterion_5() -> Outcome {
    let mut rng = rng_for(SEED, 5);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = rng.random_range(1..=10);
        let d = rng.random_range(1..=5);
        let p = pick_p(&mut rng);
        let config: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut rng, d)).collect();
        let vertex_max = signs(n).map(|s| lp(&combo(&config, &s), p)).fold(0.0, f64::max);
        let r = contraction_check(&NormedSpace::lp(p, d).unwrap(), &config, SEED + i).unwrap();
        worst = worst.max(rel(r.sup_box, vertex_max)).max(rel(r.sup_signs, vertex_max));
    }
    outcome(worst <= 1e-12, format!("max rel gap between box, signs and vertex oracle {worst:.2e}"))
}

fn criterion_6() -> Outcome {
    let mut rng = rng_for(SEED, 6);
    let floor = (2.0 / std::f64::consts::PI).sqrt();
    let mut worst = f64::INFINITY;
    let mut ok = true;
    for i in 0..100 {
        let n = rng.random_range(1..=12);
        let d = rng.random_range(1..=6);
        let config: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vec(&mut rng, d)).collect();
        let r = gauss_vs_rademacher(&NormedSpace::lp(pick_p(&mut rng), d).unwrap(), &config, McOptions::new(100_000, SEED + i)).unwrap();
        let ratio = r.ratio.unwrap();
        ok &= ratio >= floor - 3.0 * r.ratio_se;
        worst = worst.min((ratio - floor) / r.ratio_se);
    }
    outcome(ok, format!("smallest (ratio - sqrt(2/pi))/SE = {worst:.2}"))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [4usize, 9, 16] {
        let nf = n as f64;
        let l2 = pi_pq_n(&LinearMap::identity(NormedSpace::euclidean(n)), 1.0, 1.0, n, Budget::default(), SEED).unwrap().value;
        let li = pi_pq_n(&LinearMap::identity(NormedSpace::lp(f64::INFINITY, n).unwrap()), 1.0, 1.0, n, Budget::default(), SEED).unwrap().value;
        ok &= l2 >= nf.sqrt() * (1.0 - 1e-12) && li >= nf * (1.0 - 1e-10);
        parts.push(format!("n={n}: {l2:.4}/{li:.4}"));
    }
    outcome(ok, parts.join(", "))
}

fn cmat(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<C>> {
    (0..n).map(|_| (0..n).map(|_| C::new(gaussian_vec::<f64>(rng, 1)[0], gaussian_vec::<f64>(rng, 1)[0])).collect()).collect()
}

/// Characteristic polynomial coefficients, highest degree first, by Faddeev-LeVerrier.
fn char_poly(a: &[Vec<C>]) -> Vec<C> {
    let n = a.len();
    let mut coeffs = vec![C::new(1.0, 0.0)];
    let mut m = vec![vec![C::new(0.0, 0.0); n]; n];
    for k in 1..=n {
        let c_prev = *coeffs.last().unwrap();
        let mut next = vec![vec![C::new(0.0, 0.0); n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|l| a[i][l] * m[l][j]).sum::<C>();
            }
            next[i][i] += c_prev;
        }
        m = next;
        let tr: C = (0..n).map(|i| (0..n).map(|l| a[i][l] * m[l][i]).sum::<C>()).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

/// Durand-Kerner roots of a monic polynomial.
fn roots(coeffs: &[C]) -> Vec<C> {
    let n = coeffs.len() - 1;
    let eval = |z: C| coeffs.iter().fold(C::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = C::new(0.4, 0.9);
    let mut z: Vec<C> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let zi = z[i];
            let denom: C = (0..n).filter(|&j| j != i).map(|j| zi - z[j]).product();
            z[i] = zi - eval(zi) / denom;
        }
    }
    // Newton polish
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = coeffs.iter().fold((C::new(0.0, 0.0), C::new(0.0, 0.0)), |(p, dp), &c| (p * *r + c, dp * *r + p));
            if dp.norm() > 0.0 {
                *r -= p / dp;
            }
        }
    }
    z
}

/// Determinant by permutation expansion.
fn det_oracle(a: &[Vec<C>]) -> C {
    fn perms(k: usize, used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                perms(k, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let n = a.len();
    let mut all = Vec::new();
    perms(n, &mut vec![false; n], &mut Vec::new(), &mut all);
    all.iter()
        .map(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
            (0..n).map(|i| a[i][p[i]]).product::<C>() * sign
        })
        .sum()
}

fn criterion_8() -> Outcome {
    let mut rng = rng_for(SEED, 8);
    let (mut root_err, mut det_err) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let n = rng.random_range(1..=4);
        let a = cmat(&mut rng, n);
        let m = Matrix::from_rows(&a).unwrap();
        let eig = eigenvalue_sequence(&m).unwrap();
        let mut oracle = roots(&char_poly(&a));
        for l in &eig.values {
            let (k, d) = oracle.iter().enumerate().map(|(k, r)| (k, (r - l).norm())).fold((0, f64::INFINITY), |b, c| if c.1 < b.1 { c } else { b });
            root_err = root_err.max(d / l.norm().max(1.0));
            oracle.remove(k);
        }
        let det = det_oracle(&a).norm();
        det_err = det_err.max(rel(eig.moduli().iter().product(), det));
        det_err = det_err.max(rel(determinant(&m).unwrap().norm(), det));
    }
    let mut weyl = true;
    let mut sv_det = 0.0f64;
    for _ in 0..500 {
        let n = rng.random_range(1..=8);
        let a = Matrix::from_row_major(n, n, gaussian_vec(&mut rng, n * n)).unwrap();
        weyl &= multiplicative_weyl(&a, 1e-8).unwrap().holds;
        // at k = n both products equal |det|
        let s: f64 = cotype_core::linalg::singular_values(&a).iter().product();
        sv_det = sv_det.max(rel(s, determinant(&a.to_complex()).unwrap().norm()));
    }
    outcome(
        root_err <= 1e-8 && det_err <= 1e-8 && weyl && sv_det <= 1e-8,
        format!("root err {root_err:.1e}, |det| err {det_err:.1e}, Weyl holds: {weyl}, prod sigma vs |det| {sv_det:.1e}"),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = rng_for(SEED, 9);
    let (mut worst, mut hs) = (0.0f64, 0.0f64);
    for _ in 0..500 {
        let (m, n) = (rng.random_range(1..=8), rng.random_range(1..=8));
        let data = gaussian_vec::<f64>(&mut rng, m * n);
        let (lhs, rhs) = pi2_by_approx_bound(&LinearMap::euclidean(Matrix::from_row_major(m, n, data.clone()).unwrap())).unwrap();
        hs = hs.max(rel(lhs, lp(&data, 2.0)));
        worst = worst.max(lhs / rhs);
    }
    outcome(worst <= 1.0 && hs <= 1e-10, format!("max lhs/rhs {worst:.4}, HS oracle err {hs:.1e}"))
}

fn criterion_10() -> Outcome {
    let g = GrowthSequence::power(0.5);
    let s2 = validate_growth(&g, 64, 2.0, 2).unwrap().s2;
    let b = Budget::default();
    let mut ok = true;
    let mut parts = Vec::new();
    for n in [4usize, 8] {
        let id = LinearMap::identity(NormedSpace::euclidean(n));
        let wc = weak_cotype_g(&id, &g, b, SEED, McOptions::default()).unwrap().value;
        for delta in [0.25, 0.5, 0.75] {
            let c = c_delta(&id, &g, delta, n, b, SEED, McOptions::default()).unwrap().value;
            let br = delta_bracket(delta, s2, c, wc);
            ok &= br.holds;
            parts.push(format!("{:.3}<={wc:.3}<={:.3}", br.lower, br.upper));
        }
    }
    outcome(ok, parts.join(" "))
}

fn criterion_11() -> Outcome {
    let g = GrowthSequence::power(0.5);
    let mut ok = true;
    let mut min_slack = f64::INFINITY;
    for n in [4usize, 8, 16] {
        let id = LinearMap::identity(NormedSpace::euclidean(n));
        let wc = weak_cotype_g(&id, &g, Budget::default(), SEED, McOptions::default()).unwrap();
        let r = prop14_inequality(&id, &unit_vectors(n), &g, &wc, 1.0, 1.0, McOptions::default()).unwrap();
        ok &= r.holds && r.slack >= 100.0;
        min_slack = min_slack.min(r.slack);
    }
    outcome(ok, format!("smallest slack {min_slack:.1}"))
}

fn criterion_12() -> Outcome {
    let g = GrowthSequence::power(0.5);
    let constants = PipelineConstants { d: d_constant(1.0), ..PipelineConstants::ones() };
    let n = 32;
    let scaled: Vec<Vec<f64>> = unit_vectors::<f64>(n).into_iter().map(|v| v.into_iter().map(|x| x / (n as f64).sqrt()).collect()).collect();
    let mut ok = true;
    let mut parts = Vec::new();
    for (x, config, unit) in [(NormedSpace::euclidean(n), unit_vectors::<f64>(n), true), (NormedSpace::lp(1.0, n).unwrap(), scaled, false)] {
        let t = LinearMap::identity(x);
        let cert = run_pipeline(&t, &config, &g, 2, constants, Budget::default(), SEED, McOptions::new(20_000, SEED)).unwrap();
        for l in &cert.levels {
            ok &= l.dominated;
            // block of m orthonormal vectors: E‖Σ ε_i x_i‖ is √m in ℓ_2, m/√32 in ℓ_1
            let m = (cert.params.s * l.group_blocks) as f64;
            let oracle = if unit { m.sqrt() } else { m / (n as f64).sqrt() };
            ok &= rel(l.measured, oracle) <= 1e-12;
        }
        let again = revalidate(&cert, &t, &config, &g).unwrap();
        ok &= again && cert.verdict;
        parts.push(format!("levels {:?} revalidated {again}", cert.levels.iter().map(|l| (l.measured * 1e3).round() / 1e3).collect::<Vec<_>>()));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_13() -> Outcome {
    let families = [
        NormedSpace::lp(1.0, 3).unwrap(),
        NormedSpace::euclidean(3),
        NormedSpace::lp(f64::INFINITY, 3).unwrap(),
        NormedSpace::lorentz(2.0, 1.0, 3).unwrap(),
        NormedSpace::gweak(GrowthSequence::power(0.5), 3).unwrap(),
    ];
    let mut unit_ok = true;
    for x in &families {
        for kind in [GaugeKind::Summing, GaugeKind::Cotype] {
            unit_ok &= opt_gauge(&[1.0, 0.0, 0.0], x, kind, Budget::default(), SEED).unwrap().value == 1.0;
        }
    }

    let mut rng = rng_for(SEED, 13);
    let mut concave_fail = 0;
    for i in 0..50u64 {
        let x = &families[i as usize % 3];
        let kind = if i % 2 == 0 { GaugeKind::Summing } else { GaugeKind::Cotype };
        let len = rng.random_range(3..=6);
        let parts = rng.random_range(2..=3);
        let mut owner: Vec<usize> = (0..len).map(|k| k % parts).collect();
        owner.shuffle(&mut rng);
        let mut taus = vec![vec![0.0; len]; parts];
        for (k, &p) in owner.iter().enumerate() {
            taus[p][k] = rng.random_range(0.05..1.0);
        }
        if !self_concavity_check(&taus, x, kind, Budget::new(2, 100), SEED + i, 0.05).unwrap().holds {
            concave_fail += 1;
        }
    }

    let mut tensor = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(1..=12);
        let tau = gaussian_vec::<f64>(&mut rng, n);
        let p = pick_p(&mut rng);
        tensor = tensor.max(rel(lp(&tensor_square(&tau), p), lp(&tau, p).powi(2)));
    }

    let mut lp_sub = 0.0f64;
    for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
        let y = SymmetricSpace::lp(p).unwrap();
        for n in 1..=32 {
            for k in 1..=32 {
                let (a, b) = submultiplicativity_check(&y, n, k).unwrap();
                lp_sub = lp_sub.max(rel(a, b));
            }
        }
    }

    // ℓ_{p,1}: f(n) = Σ_{j≤n} j^{1/p−1}, summed here directly
    let mut lorentz_viol = Vec::new();
    let mut summation_err = 0.0f64;
    for p in [1.0, 1.5, 2.0, 3.0] {
        let f = |n: usize| (1..=n).map(|j| (j as f64).powf(1.0 / p - 1.0)).sum::<f64>();
        let y = SymmetricSpace::lorentz(p, 1.0).unwrap();
        let mut worst = 0.0f64;
        for n in 1..=32 {
            summation_err = summation_err.max(rel(fundamental_function(&y, n).unwrap(), f(n)));
            for k in 1..=32 {
                worst = worst.max(f(n) * f(k) / f(n * k));
            }
        }
        if worst > 1.0 + 1e-12 {
            lorentz_viol.push(format!("p={p}: max f(n)f(k)/f(nk) = {worst:.4}"));
        }
    }

    let ok = unit_ok && concave_fail == 0 && tensor <= 1e-12 && lp_sub <= 1e-12 && summation_err <= 1e-12 && lorentz_viol.is_empty();
    outcome(
        ok,
        format!(
            "unit gauge: {unit_ok}, concavity failures {concave_fail}/50, tensor err {tensor:.1e}, l_p submult err {lp_sub:.1e}, l_p1 summation err {summation_err:.1e}, l_p1 violations [{}]",
            lorentz_viol.join("; ")
        ),
    )
}

fn criterion_14() -> Outcome {
    let y = SymmetricSpace::lorentz(2.0, f64::INFINITY).unwrap();
    let case1 = matches!(alternative_classify(&y, 3.0, 64).unwrap(), Alternative::Smaller { q, .. } if (q - 2.0).abs() <= 1e-12);
    let mut case2 = true;
    for p in [1.0, 1.5, 2.0, 4.0] {
        let a: Alternative<f64> = alternative_classify(&SymmetricSpace::lp(p).unwrap(), p, 64).unwrap();
        case2 &= matches!(a, Alternative::Contains { tensor_limit, .. } if (tensor_limit - 1.0).abs() <= 1e-12);
    }
    outcome(case1 && case2, format!("l_(2,inf) with p=3 -> q=2: {case1}, l_p -> limit 1: {case2}"))
}

fn criterion_15() -> Outcome {
    // tower(k): 2, 4, 16, 65536
    let tower = [2u64, 4, 16, 65536];
    let oracle = |n: u64| 1 + tower.iter().position(|&t| n <= t).unwrap();
    let ks: Vec<usize> = [2u64, 4, 5, 16, 17].iter().map(|&n| k_n(n)).collect();
    let ks_ok = ks == [1, 2, 3, 3, 4] && (1..=65_536u64).step_by(37).all(|n| k_n(n) == oracle(n));
    let mut worst = 0.0f64;
    for c in [1.0, 2.0, 3.5] {
        for q in [2.0, 3.0, 8.0] {
            for n in [1u64, 2, 3, 100, 1 << 20] {
                worst = worst.max(rel(prop24_bound(c, q, n, 0).unwrap(), std::f64::consts::PI.sqrt() * c * (1.0 + (n as f64).log2()).powf(1.0 / q)));
            }
        }
    }
    outcome(ks_ok && worst <= 1e-12, format!("k_n = {ks:?}, bound at k=0 err {worst:.1e}"))
}

fn criterion_16() -> Outcome {
    let rep = suite_eigen_decay(2.0, 16, 32, 200, SEED).unwrap();
    let get = |name: &str| rep.checks.iter().find(|c| c.name == name).unwrap();
    let diag = get("diagonal_witness_linf");
    let nil = get("nilpotent");
    let random = get("random_factorizations");
    outcome(
        rep.passed() && diag.verdict && nil.verdict,
        format!(
            "diagonal r = {}, nilpotent r = {}, max r {:.4} / {:.4} across seeds (spread {:.3}, observe)",
            diag.measured["r"], nil.measured["r"], random.measured["max_r"], random.measured["max_r_second_seed"], random.measured["max_spread"]
        ),
    )
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 16] = [
        ("sequence norms", criterion_1),
        ("growth validation", criterion_2),
        ("rademacher enumeration", criterion_3),
        ("ell norm", criterion_4),
        ("contraction principle", criterion_5),
        ("gaussian-rademacher comparison", criterion_6),
        ("pi_1 witnesses", criterion_7),
        ("eigenvalues", criterion_8),
        ("pi_2 by approximation numbers", criterion_9),
        ("delta bracket", criterion_10),
        ("equal-norm inequality", criterion_11),
        ("block pipeline", criterion_12),
        ("optimal gauges", criterion_13),
        ("alternative classifier", criterion_14),
        ("iterated-log arithmetic", criterion_15),
        ("eigen-decay", criterion_16),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let o = f();
        let status = if o.ok { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name} ({:.1}s): {}", i + 1, start.elapsed().as_secs_f64(), o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
