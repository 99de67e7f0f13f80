//! One-sided estimates with their witnesses.

use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// The true quantity is at least `value`.
    Lower,
    /// The true quantity is at most `value`.
    Upper,
    Exact,
}

impl Direction {
    pub fn is_lower(self) -> bool {
        matches!(self, Direction::Lower | Direction::Exact)
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Direction::Upper | Direction::Exact)
    }
}

/// The object that attains an estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Witness<T> {
    None,
    Vector(Vec<T>),
    Config(Vec<Vec<T>>),
    Map(Matrix<T>),
    Subset(Vec<usize>),
    Decomposition(Vec<Vec<T>>),
}

/// Search effort: `starts` random starts, each polished with at most
/// `polish` objective evaluations. Structured starts come on top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub starts: usize,
    pub polish: usize,
}

impl Budget {
    pub fn new(starts: usize, polish: usize) -> Self {
        Self { starts, polish }
    }

    pub fn evaluations(&self) -> usize {
        self.starts * self.polish
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self { starts: 8, polish: 200 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate<T> {
    pub value: T,
    pub direction: Direction,
    pub witness: Witness<T>,
    pub budget: Option<Budget>,
    pub seed: Option<u64>,
    /// A bound in the opposite direction, when one is cheaply available.
    pub companion: Option<T>,
    pub method: String,
}

impl<T: Real> Estimate<T> {
    pub fn exact(value: T, witness: Witness<T>, method: impl Into<String>) -> Self {
        Self { value, direction: Direction::Exact, witness, budget: None, seed: None, companion: None, method: method.into() }
    }

    pub fn lower(value: T, witness: Witness<T>, budget: Budget, seed: u64, method: impl Into<String>) -> Self {
        Self {
            value,
            direction: Direction::Lower,
            witness,
            budget: Some(budget),
            seed: Some(seed),
            companion: None,
            method: method.into(),
        }
    }

    pub fn upper(value: T, witness: Witness<T>, budget: Budget, seed: u64, method: impl Into<String>) -> Self {
        Self { direction: Direction::Upper, ..Self::lower(value, witness, budget, seed, method) }
    }

    pub fn with_companion(mut self, bound: Option<T>) -> Self {
        self.companion = bound;
        self
    }

    /// Best known upper bound: the value itself when exact or upper.
    pub fn upper_bound(&self) -> Option<T> {
        match self.direction {
            Direction::Exact | Direction::Upper => Some(self.value),
            Direction::Lower => self.companion,
        }
    }

    /// Best known lower bound.
    pub fn lower_bound(&self) -> Option<T> {
        match self.direction {
            Direction::Exact | Direction::Lower => Some(self.value),
            Direction::Upper => self.companion,
        }
    }
}
