//! Singular values (one-sided Jacobi), complex eigenvalues (Hessenberg
//! reduction plus shifted QR) and determinants.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

/// Thin singular value decomposition `A = U diag(s) Vᵀ`, `s` non-increasing.
///
/// Columns of `u` belonging to zero singular values are zero.
#[derive(Debug, Clone)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    pub s: Vec<T>,
    pub v: Matrix<T>,
}

const MAX_SWEEPS: usize = 80;

pub fn svd<T: Real>(a: &Matrix<T>) -> Svd<T> {
    if a.rows() < a.cols() {
        let t = jacobi_tall(&a.transpose());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    jacobi_tall(a)
}

pub fn singular_values<T: Real>(a: &Matrix<T>) -> Vec<T> {
    svd(a).s
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn rotate<T: Real>(cols: &mut [Vec<T>], i: usize, j: usize, c: T, s: T) {
    let (lo, hi) = cols.split_at_mut(j);
    for (x, y) in lo[i].iter_mut().zip(hi[0].iter_mut()) {
        let (xi, yj) = (*x, *y);
        *x = c * xi - s * yj;
        *y = s * xi + c * yj;
    }
}

fn jacobi_tall<T: Real>(a: &Matrix<T>) -> Svd<T> {
    let (m, n) = (a.rows(), a.cols());
    let mut w = a.columns();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { T::one() } else { T::zero() }).collect())
        .collect();
    let eps = T::epsilon();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..n {
            for j in i + 1..n {
                let alpha = dot(&w[i], &w[i]);
                let beta = dot(&w[j], &w[j]);
                let gamma = dot(&w[i], &w[j]);
                if gamma.is_zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = (T::one() + t * t).sqrt().recip();
                let s = c * t;
                rotate(&mut w, i, j, c, s);
                rotate(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(T, usize)> = w.iter().enumerate().map(|(j, c)| (dot(c, c).sqrt(), j)).collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap_or(std::cmp::Ordering::Equal).then(a.1.cmp(&b.1)));
    let mut u = Matrix::zeros(m, n);
    let mut vm = Matrix::zeros(n, n);
    let mut s = Vec::with_capacity(n);
    for (k, &(sigma, j)) in order.iter().enumerate() {
        s.push(sigma);
        if sigma > T::zero() {
            for i in 0..m {
                u[(i, k)] = w[j][i] / sigma;
            }
        }
        for i in 0..n {
            vm[(i, k)] = v[j][i];
        }
    }
    Svd { u, s, v: vm }
}

/// Best rank-`k` approximation in the Euclidean operator norm.
pub fn truncate<T: Real>(d: &Svd<T>, k: usize) -> Matrix<T> {
    let (m, n) = (d.u.rows(), d.v.rows());
    let mut out = Matrix::zeros(m, n);
    for (l, &sigma) in d.s.iter().enumerate().take(k) {
        for i in 0..m {
            let ui = d.u[(i, l)] * sigma;
            if ui.is_zero() {
                continue;
            }
            for j in 0..n {
                out[(i, j)] += ui * d.v[(j, l)];
            }
        }
    }
    out
}

/// Determinant by LU with partial pivoting.
pub fn determinant<T: Real>(a: &Matrix<Complex<T>>) -> Result<Complex<T>> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Complex::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].norm().partial_cmp(&m[(j, k)].norm()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(k);
        if m[(p, k)].is_zero() {
            return Ok(Complex::zero());
        }
        if p != k {
            for j in 0..n {
                let tmp = m[(k, j)];
                m[(k, j)] = m[(p, j)];
                m[(p, j)] = tmp;
            }
            det = -det;
        }
        let pivot = m[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            for j in k..n {
                let v = m[(k, j)];
                m[(i, j)] -= f * v;
            }
        }
    }
    Ok(det)
}

fn hessenberg<T: Real>(h: &mut Matrix<Complex<T>>) {
    let n = h.rows();
    for j in 0..n.saturating_sub(2) {
        let x: Vec<Complex<T>> = (j + 1..n).map(|i| h[(i, j)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if norm.is_zero() {
            continue;
        }
        let phase = if x[0].is_zero() { Complex::one() } else { x[0] / x[0].norm() };
        let mut v = x;
        v[0] += phase * norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if vnorm.is_zero() {
            continue;
        }
        for z in v.iter_mut() {
            *z = *z / vnorm;
        }
        let two = Complex::new(T::lit(2.0), T::zero());
        // H ← (I − 2vvᴴ) H
        for c in 0..n {
            let s = v.iter().enumerate().map(|(k, vk)| vk.conj() * h[(j + 1 + k, c)]).sum::<Complex<T>>();
            for (k, vk) in v.iter().enumerate() {
                h[(j + 1 + k, c)] -= two * *vk * s;
            }
        }
        // H ← H (I − 2vvᴴ)
        for r in 0..n {
            let s = v.iter().enumerate().map(|(k, vk)| h[(r, j + 1 + k)] * *vk).sum::<Complex<T>>();
            for (k, vk) in v.iter().enumerate() {
                h[(r, j + 1 + k)] -= two * s * vk.conj();
            }
        }
    }
}

/// All eigenvalues with algebraic multiplicity, in no particular order.
pub fn eigenvalues<T: Real>(a: &Matrix<Complex<T>>) -> Result<Vec<Complex<T>>> {
    if !a.is_square() {
        return Err(Error::NonSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg(&mut h);
    let eps = T::epsilon();
    let mut eig = vec![Complex::zero(); n];
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    let scale = h.data().iter().map(|z| z.norm()).fold(T::zero(), T::max);
    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if diag.is_zero() {
                diag = scale;
            }
            if sub <= eps * diag || sub <= T::min_positive_value() {
                h[(l, l - 1)] = Complex::zero();
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * n.max(10) {
            return Err(Error::NoConvergence);
        }
        let mu = if iter % 11 == 0 {
            // exceptional shift to break cycles
            let c = h[(hi, hi - 1)].norm();
            h[(hi, hi)] + Complex::new(T::lit(0.75) * c, T::lit(0.4375) * c)
        } else {
            wilkinson(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        qr_step(&mut h, l, hi, mu);
    }
    Ok(eig)
}

fn wilkinson<T: Real>(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Complex<T> {
    let half = Complex::new(T::lit(0.5), T::zero());
    let m = (a + d) * half;
    let disc = ((a - d) * (a - d) * half * half + b * c).sqrt();
    let (x, y) = (m + disc, m - disc);
    if (x - d).norm() <= (y - d).norm() {
        x
    } else {
        y
    }
}

fn qr_step<T: Real>(h: &mut Matrix<Complex<T>>, l: usize, hi: usize, mu: Complex<T>) {
    for k in l..=hi {
        h[(k, k)] -= mu;
    }
    let mut rots = Vec::with_capacity(hi - l);
    for k in l..hi {
        let x = h[(k, k)];
        let y = h[(k + 1, k)];
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = if r.is_zero() {
            (Complex::one(), Complex::zero())
        } else {
            (x / r, y / r)
        };
        for j in k..=hi {
            let (hk, hk1) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = c.conj() * hk + s.conj() * hk1;
            h[(k + 1, j)] = -s * hk + c * hk1;
        }
        rots.push((c, s));
    }
    for (idx, &(c, s)) in rots.iter().enumerate() {
        let k = l + idx;
        for i in l..=(k + 2).min(hi) {
            let (hk, hk1) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = hk * c + hk1 * s;
            h[(i, k + 1)] = -hk * s.conj() + hk1 * c.conj();
        }
    }
    for k in l..=hi {
        h[(k, k)] += mu;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rows: usize, cols: usize, seed: u64) -> Matrix<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data = (0..rows * cols).map(|_| rng.random_range(-1.0..1.0)).collect();
        Matrix::from_row_major(rows, cols, data).unwrap()
    }

    #[test]
    fn svd_reconstructs() {
        for (r, c) in [(3, 3), (5, 2), (2, 6), (1, 4)] {
            let a = random(r, c, (r * 10 + c) as u64);
            let d = svd(&a);
            let back = truncate(&d, r.min(c));
            for (x, y) in a.data().iter().zip(back.data()) {
                assert_relative_eq!(x, y, epsilon = 1e-12);
            }
            assert!(d.s.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn svd_of_diagonal() {
        let s = singular_values(&Matrix::diag(&[2.0, -3.0, 1.0]));
        assert_eq!(s, vec![3.0, 2.0, 1.0]);
        assert_eq!(singular_values(&Matrix::<f64>::zeros(2, 2)), vec![0.0, 0.0]);
    }

    #[test]
    fn eigen_small_cases() {
        let rot = Matrix::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap().to_complex();
        let ev: Vec<Complex<f64>> = eigenvalues(&rot).unwrap();
        for z in &ev {
            assert_relative_eq!(z.norm(), 1.0, epsilon = 1e-12);
            assert!(z.re.abs() < 1e-12);
        }
        let nil = Matrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap().to_complex();
        assert!(eigenvalues(&nil).unwrap().iter().all(|z| z.norm() == 0.0));
        let comp = Matrix::from_rows(&[vec![0.0, 0.0, 1.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]])
            .unwrap()
            .to_complex();
        for z in eigenvalues(&comp).unwrap() {
            assert_relative_eq!(z.norm(), 1.0, epsilon = 1e-10);
            assert_relative_eq!((z * z * z).re, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn eigen_product_is_determinant() {
        for seed in 0..20 {
            let a = random(6, 6, seed).to_complex();
            let ev = eigenvalues(&a).unwrap();
            let prod = ev.iter().fold(Complex::one(), |p: Complex<f64>, z| p * z);
            let det = determinant(&a).unwrap();
            assert!((prod - det).norm() < 1e-10 * (1.0 + det.norm()));
            let tr: Complex<f64> = ev.iter().sum();
            assert!((tr - a.trace().unwrap()).norm() < 1e-10);
        }
    }
}
