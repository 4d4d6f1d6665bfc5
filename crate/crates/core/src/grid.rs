use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("interval [{min}, {max}] is empty or not finite")]
    BadInterval { min: f64, max: f64 },
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
}

/// Closed interval `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub min: f64,
    pub max: f64,
}

impl Interval {
    pub fn new(min: f64, max: f64) -> Result<Self, GridError> {
        if !(min.is_finite() && max.is_finite() && min <= max) {
            return Err(GridError::BadInterval { min, max });
        }
        Ok(Self { min, max })
    }

    pub fn length(&self) -> f64 {
        self.max - self.min
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.min..=self.max).contains(&x)
    }

    /// `n >= 2` equally spaced samples including both end points.
    pub fn samples(&self, n: usize) -> Result<Vec<f64>, GridError> {
        if n < 2 {
            return Err(GridError::TooFewSamples { needed: 2, got: n });
        }
        let step = self.length() / (n - 1) as f64;
        Ok((0..n)
            .map(|i| {
                if i == n - 1 {
                    self.max
                } else {
                    self.min + step * i as f64
                }
            })
            .collect())
    }
}

/// Tensor-product sample grid over `(s, u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    pub s: Vec<f64>,
    pub u: Vec<f64>,
}

impl SampleGrid {
    pub fn uniform(s: Interval, ns: usize, u: Interval, nu: usize) -> Result<Self, GridError> {
        Ok(Self {
            s: s.samples(ns)?,
            u: u.samples(nu)?,
        })
    }

    /// All `(s, u)` pairs, rows in `s` and columns in `u`.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.s
            .iter()
            .flat_map(|&s| self.u.iter().map(move |&u| (s, u)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.s.len() * self.u.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
