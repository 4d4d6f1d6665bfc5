//! Tabulated arclength reparametrization.

use super::{CurveError, ParametricCurve3};
use crate::grid::Interval;

const PANELS_PER_CELL: usize = 8;
const NEWTON_STEPS: usize = 4;

/// Monotone table `t_i -> sigma_i` of arclength against the raw parameter,
/// with a monotone cubic inverse polished by Newton steps on the exact speed.
#[derive(Debug, Clone)]
pub struct ArclengthMap {
    params: Vec<f64>,
    lengths: Vec<f64>,
    speeds: Vec<f64>,
    inverse_slopes: Vec<f64>,
    curve: ParametricCurve3,
}

/// Build the arclength table of `curve` with `grid_size` cells.
pub fn reparametrize_arclength(curve: &ParametricCurve3, grid_size: usize) -> Result<ArclengthMap, CurveError> {
    if grid_size == 0 {
        return Err(CurveError::TooFewSamples { needed: 1, got: 0 });
    }
    let raw = curve.raw();
    let params = curve
        .domain()
        .samples(grid_size + 1)
        .map_err(|_| CurveError::TooFewSamples {
            needed: 2,
            got: grid_size + 1,
        })?;
    let speeds = params.iter().map(|&t| raw.speed(t)).collect::<Result<Vec<_>, _>>()?;
    let mut lengths = Vec::with_capacity(params.len());
    lengths.push(0.0);
    for w in params.windows(2) {
        let piece = simpson(&raw, w[0], w[1], PANELS_PER_CELL)?;
        lengths.push(lengths.last().unwrap() + piece);
    }
    let inverse_slopes = monotone_slopes(&lengths, &params, &speeds);
    Ok(ArclengthMap {
        params,
        lengths,
        speeds,
        inverse_slopes,
        curve: raw,
    })
}

fn simpson(curve: &ParametricCurve3, a: f64, b: f64, panels: usize) -> Result<f64, CurveError> {
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut acc = curve.speed(a)? + curve.speed(b)?;
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * curve.speed(a + h * i as f64)?;
    }
    Ok(acc * h / 3.0)
}

/// Fritsch-Carlson limited slopes for the inverse table `sigma -> t`,
/// seeded with the exact derivative `1/speed`.
fn monotone_slopes(x: &[f64], y: &[f64], speeds: &[f64]) -> Vec<f64> {
    let mut m: Vec<f64> = speeds.iter().map(|v| 1.0 / v).collect();
    for i in 0..x.len() - 1 {
        let dx = x[i + 1] - x[i];
        if dx <= 0.0 {
            continue;
        }
        let delta = (y[i + 1] - y[i]) / dx;
        let a = m[i] / delta;
        let b = m[i + 1] / delta;
        let r = a * a + b * b;
        if r > 9.0 {
            let k = 3.0 / r.sqrt();
            m[i] = k * a * delta;
            m[i + 1] = k * b * delta;
        }
    }
    m
}

impl ArclengthMap {
    pub fn total_length(&self) -> f64 {
        *self.lengths.last().unwrap()
    }

    /// Domain of the arclength parameter, `[0, total_length]`.
    pub fn arclength_domain(&self) -> Interval {
        Interval {
            min: 0.0,
            max: self.total_length(),
        }
    }

    pub fn table(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.params.iter().copied().zip(self.lengths.iter().copied())
    }

    fn cell_of(sorted: &[f64], x: f64) -> usize {
        match sorted.partition_point(|&v| v <= x) {
            0 => 0,
            i => (i - 1).min(sorted.len() - 2),
        }
    }

    /// Arclength from the start of the domain to raw parameter `t`.
    pub fn arclength_at(&self, t: f64) -> Result<f64, CurveError> {
        let i = Self::cell_of(&self.params, t);
        if t == self.params[i] {
            return Ok(self.lengths[i]);
        }
        Ok(self.lengths[i] + simpson(&self.curve, self.params[i], t, PANELS_PER_CELL)?)
    }

    /// Raw parameter at arclength `sigma`.
    pub fn parameter_at(&self, sigma: f64) -> Result<f64, CurveError> {
        let i = Self::cell_of(&self.lengths, sigma);
        let (x0, x1) = (self.lengths[i], self.lengths[i + 1]);
        let (y0, y1) = (self.params[i], self.params[i + 1]);
        if sigma == x0 {
            return Ok(y0);
        }
        if sigma == x1 {
            return Ok(y1);
        }
        let h = x1 - x0;
        let w = (sigma - x0) / h;
        let (h00, h10, h01, h11) = (
            (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w),
            w * (1.0 - w) * (1.0 - w),
            w * w * (3.0 - 2.0 * w),
            w * w * (w - 1.0),
        );
        let mut t = h00 * y0 + h10 * h * self.inverse_slopes[i] + h01 * y1 + h11 * h * self.inverse_slopes[i + 1];
        for _ in 0..NEWTON_STEPS {
            let residual = self.lengths[i] + simpson(&self.curve, y0, t, PANELS_PER_CELL)? - sigma;
            let speed = self.curve.speed(t)?;
            let step = residual / speed;
            t -= step;
            if step.abs() < 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        Ok(t)
    }

    pub(crate) fn raw_curve(&self) -> &ParametricCurve3 {
        &self.curve
    }

    pub fn speed_at_node(&self, i: usize) -> f64 {
        self.speeds[i]
    }
}
