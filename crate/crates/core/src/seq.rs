//! Finite sequences, non-increasing rearrangements and rearrangement-invariant
//! sequence norms (`ℓ_p`, Lorentz `ℓ_{p,q}`, weak `ℓ_{g,∞}`).

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::growth::GrowthSequence;
use crate::scalar::Real;

/// A finitely supported real sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sequence<T> {
    entries: Vec<T>,
}

impl<T: Real> Sequence<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self { entries }
    }

    /// The sequence `Σ_1^n e_k`.
    pub fn ones(n: usize) -> Self {
        Self::new(vec![T::one(); n])
    }

    /// Unit vector `e_k` (zero-based `k`) of length `n`.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut entries = vec![T::zero(); n];
        entries[k] = T::one();
        Self::new(entries)
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries up to and including the last nonzero one of the rearrangement.
    pub fn support_len(&self) -> usize {
        self.entries.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn rearrange(&self) -> Self {
        rearrange(&self.entries)
    }
}

impl<T: Real> From<Vec<T>> for Sequence<T> {
    fn from(v: Vec<T>) -> Self {
        Self::new(v)
    }
}

/// Non-increasing rearrangement of `|σ|`. Ties keep their original order.
pub fn rearrange<T: Real>(sigma: &[T]) -> Sequence<T> {
    Sequence::new(rearranged(sigma))
}

pub(crate) fn rearranged<T: Real>(sigma: &[T]) -> Vec<T> {
    let mut v: Vec<T> = sigma.iter().map(|x| x.abs()).collect();
    // sort_by is stable
    v.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    v
}

fn check_exponent<T: Real>(name: &'static str, p: T) -> Result<()> {
    if p.is_nan() || p < T::one() {
        return Err(invalid(name, format!("exponent must be >= 1, got {p}")));
    }
    Ok(())
}

/// `ℓ_p` norm, `p = ∞` allowed.
pub fn lp_norm<T: Real>(sigma: &[T], p: T) -> Result<T> {
    check_exponent("p", p)?;
    Ok(lp_unchecked(sigma, p))
}

pub(crate) fn lp_unchecked<T: Real>(sigma: &[T], p: T) -> T {
    if p.is_infinite() {
        sigma.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    } else if p == T::one() {
        sigma.iter().map(|x| x.abs()).sum()
    } else if p == T::lit(2.0) {
        sigma.iter().map(|&x| x * x).sum::<T>().sqrt()
    } else {
        sigma.iter().map(|x| x.abs().powf(p)).sum::<T>().powf(p.recip())
    }
}

/// Lorentz norm `(Σ_n (n^{1/p} σ_n^*)^q n^{-1})^{1/q}`; for `q = ∞` the
/// weak form `sup_n n^{1/p} σ_n^*`.
pub fn lorentz_norm<T: Real>(sigma: &[T], p: T, q: T) -> Result<T> {
    check_exponent("p", p)?;
    check_exponent("q", q)?;
    Ok(lorentz_unchecked(&rearranged(sigma), p, q))
}

/// Lorentz norm of an already rearranged sequence.
pub(crate) fn lorentz_unchecked<T: Real>(star: &[T], p: T, q: T) -> T {
    let inv_p = p.recip();
    if q.is_infinite() {
        return star
            .iter()
            .enumerate()
            .fold(T::zero(), |m, (i, &s)| m.max(T::of(i + 1).powf(inv_p) * s));
    }
    let sum: T = star
        .iter()
        .enumerate()
        .take_while(|(_, s)| !s.is_zero())
        .map(|(i, &s)| {
            let n = T::of(i + 1);
            (n.powf(inv_p) * s).powf(q) / n
        })
        .sum();
    sum.powf(q.recip())
}

/// Weak norm `sup_n g(n) σ_n^*` over the support of `σ`.
pub fn gweak_norm<T: Real>(sigma: &[T], g: &GrowthSequence<T>) -> Result<T> {
    gweak_unchecked(&rearranged(sigma), g)
}

pub(crate) fn gweak_unchecked<T: Real>(star: &[T], g: &GrowthSequence<T>) -> Result<T> {
    let mut best = T::zero();
    for (i, &s) in star.iter().enumerate() {
        if s.is_zero() {
            break;
        }
        best = best.max(g.eval(i + 1)? * s);
    }
    Ok(best)
}

/// A rearrangement-invariant norm on finitely supported sequences.
pub trait SymmetricNorm<T: Real>: Send + Sync {
    fn norm(&self, tau: &[T]) -> Result<T>;

    /// `f_Y(n) = ‖Σ_1^n e_k‖_Y`.
    fn fundamental(&self, n: usize) -> Result<T> {
        self.norm(&vec![T::one(); n])
    }

    fn label(&self) -> String;
}

/// Closed-form symmetric sequence space families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum SymmetricSpace<T> {
    Lp { p: T },
    Lorentz { p: T, q: T },
    Gweak { g: GrowthSequence<T> },
}

impl<T: Real> SymmetricSpace<T> {
    pub fn lp(p: T) -> Result<Self> {
        check_exponent("p", p)?;
        Ok(Self::Lp { p })
    }

    pub fn lorentz(p: T, q: T) -> Result<Self> {
        check_exponent("p", p)?;
        check_exponent("q", q)?;
        Ok(Self::Lorentz { p, q })
    }

    pub fn gweak(g: GrowthSequence<T>) -> Self {
        Self::Gweak { g }
    }

    /// Norm of an already rearranged (non-negative, non-increasing) sequence.
    pub(crate) fn norm_of_rearranged(&self, star: &[T]) -> Result<T> {
        match self {
            Self::Lp { p } => Ok(lp_unchecked(star, *p)),
            Self::Lorentz { p, q } => Ok(lorentz_unchecked(star, *p, *q)),
            Self::Gweak { g } => gweak_unchecked(star, g),
        }
    }

    /// Whether the functional satisfies the triangle inequality with constant 1.
    pub fn is_normed(&self) -> bool {
        match self {
            Self::Lp { .. } => true,
            Self::Lorentz { p, q } => q <= p,
            Self::Gweak { g } => g.is_constant_one(),
        }
    }

    pub fn is_euclidean(&self) -> bool {
        match self {
            Self::Lp { p } => *p == T::lit(2.0),
            Self::Lorentz { p, q } => *p == T::lit(2.0) && *q == T::lit(2.0),
            Self::Gweak { .. } => false,
        }
    }

    /// The exponent `p` when the family coincides isometrically with `ℓ_p`.
    pub fn as_lp(&self) -> Option<T> {
        match self {
            Self::Lp { p } => Some(*p),
            Self::Lorentz { p, q } if p == q => Some(*p),
            Self::Gweak { g } if g.is_constant_one() => Some(T::infinity()),
            _ => None,
        }
    }
}

impl<T: Real> SymmetricNorm<T> for SymmetricSpace<T> {
    fn norm(&self, tau: &[T]) -> Result<T> {
        self.norm_of_rearranged(&rearranged(tau))
    }

    fn fundamental(&self, n: usize) -> Result<T> {
        match self {
            Self::Lp { p } => Ok(if p.is_infinite() {
                if n == 0 {
                    T::zero()
                } else {
                    T::one()
                }
            } else {
                T::of(n).powf(p.recip())
            }),
            Self::Lorentz { p, q } if q.is_infinite() => {
                Ok(if n == 0 { T::zero() } else { T::of(n).powf(p.recip()) })
            }
            Self::Lorentz { p, q } if p == q => Ok(T::of(n).powf(p.recip())),
            Self::Lorentz { .. } => self.norm(&vec![T::one(); n]),
            Self::Gweak { g } => {
                let mut best = T::zero();
                for k in 1..=n {
                    best = best.max(g.eval(k)?);
                }
                Ok(best)
            }
        }
    }

    fn label(&self) -> String {
        match self {
            Self::Lp { p } => format!("l_{p}"),
            Self::Lorentz { p, q } => format!("l_{{{p},{q}}}"),
            Self::Gweak { g } => format!("l_{{g,inf}}[{}]", g.label()),
        }
    }
}

/// `f_Y(n)` for any symmetric norm.
pub fn fundamental_function<T: Real, Y: SymmetricNorm<T> + ?Sized>(y: &Y, n: usize) -> Result<T> {
    if n == 0 {
        return Err(invalid("n", "fundamental function needs n >= 1"));
    }
    y.fundamental(n)
}

/// Finite-range surrogate for the cotype index `q_Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CotypeIndex<T> {
    /// `sup_{2≤n≤n_max} ln n / ln f_Y(n)`; `+∞` when `f_Y` fails to grow.
    pub value: T,
    pub n_max: usize,
    /// `n` attaining the supremum.
    pub argmax: usize,
}

pub fn cotype_index<T: Real, Y: SymmetricNorm<T> + ?Sized>(y: &Y, n_max: usize) -> Result<CotypeIndex<T>> {
    if n_max < 2 {
        return Err(invalid("n_max", "cotype index needs n_max >= 2"));
    }
    let mut best = T::neg_infinity();
    let mut argmax = 2;
    for n in 2..=n_max {
        let f = y.fundamental(n)?;
        let ratio = if f <= T::one() {
            T::infinity()
        } else {
            T::of(n).ln() / f.ln()
        };
        if ratio > best {
            best = ratio;
            argmax = n;
        }
    }
    Ok(CotypeIndex { value: best, n_max, argmax })
}
