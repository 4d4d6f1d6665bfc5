use super::{GnrSurface, LocalGeometry, SurfaceError};
use crate::curve::Vec3;
use crate::grid::SampleGrid;
use crate::parallel;
use crate::tolerance::SINGULAR_NORM_SQUARED;

/// `f`, `g` and their derivatives at one point, in the surface's parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharFunctionValues {
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub g_s: f64,
    pub g_u: f64,
}

/// Surface quantities at `(s, u)`. Partials and fundamental coefficients are
/// with respect to the surface parameters `(s, u)`; `K` and `H` are invariant.
/// `normal`, `l`, `m`, `k` and `h` are `None` at singular points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePointData {
    pub s: f64,
    pub u: f64,
    pub position: Vec3,
    pub dfds: Vec3,
    pub dfdu: Vec3,
    pub normal: Option<Vec3>,
    pub e: f64,
    pub f_coeff: f64,
    pub g_coeff: f64,
    pub l: Option<f64>,
    pub m: Option<f64>,
    pub n_coeff: f64,
    pub k: Option<f64>,
    pub h: Option<f64>,
    pub chars: CharFunctionValues,
}

impl SurfacePointData {
    pub fn is_singular(&self) -> bool {
        self.normal.is_none()
    }
}

impl LocalGeometry {
    /// Evaluate every point quantity on the ruling at parameter `u`.
    pub fn point(&self, u: f64) -> SurfacePointData {
        let (t, n, b) = (self.tangent, self.normal, self.binormal);
        let (a1, a2) = (self.a1[0], self.a2[0]);
        let (kappa, tau) = (self.kappa, self.tau);
        let (p, q) = (self.p(), self.q());
        let f = self.f();
        let g = self.g(u);
        let v = self.speed;

        let q_n = self.ruling();
        let dfds_arc = t * g + n * (u * p) + b * (u * q);
        let e_arc = g * g + u * u * (p * p + q * q);
        let w2 = u * u * f * f + g * g;

        let (normal, l, m, k, h) = if w2 < SINGULAR_NORM_SQUARED {
            (None, None, None, None, None)
        } else {
            let w = w2.sqrt();
            let normal = (t * (u * f) - n * (a2 * g) + b * (a1 * g)) / w;
            let l_arc = (u * f * (self.g_s(u) - u * kappa * p)
                + g * (-a2 * kappa * g + u * (a2 * tau * q + a1 * tau * p - self.f_prime())))
                / w;
            let m_arc = -f / w;
            let k = -m_arc * m_arc / e_arc;
            let h = l_arc / (2.0 * e_arc);
            (Some(normal), Some(l_arc * v * v), Some(m_arc * v), Some(k), Some(h))
        };

        let dfds = dfds_arc * v;
        SurfacePointData {
            s: self.s,
            u,
            position: self.position + q_n * u,
            dfds,
            dfdu: q_n,
            normal,
            e: e_arc * v * v,
            f_coeff: dfds.dot(&q_n),
            g_coeff: q_n.norm_squared(),
            l,
            m,
            n_coeff: 0.0,
            k,
            h,
            chars: self.char_functions(u),
        }
    }
}

impl GnrSurface {
    pub fn char_functions(&self, s: f64, u: f64) -> Result<CharFunctionValues, SurfaceError> {
        Ok(self.local(s)?.char_functions(u))
    }

    /// Point data, singular or not.
    pub fn evaluate(&self, s: f64, u: f64) -> Result<SurfacePointData, SurfaceError> {
        Ok(self.local(s)?.point(u))
    }

    /// Point data at a regular point; singular points are an error.
    pub fn surface_point(&self, s: f64, u: f64) -> Result<SurfacePointData, SurfaceError> {
        let local = self.local(s)?;
        let data = local.point(u);
        if data.is_singular() {
            return Err(SurfaceError::SingularPoint {
                s,
                u,
                f: local.f(),
                g: local.g(u),
            });
        }
        Ok(data)
    }

    /// Local geometry for every `s` of the grid.
    pub fn locals(&self, s_values: &[f64]) -> Result<Vec<LocalGeometry>, SurfaceError> {
        parallel::try_map(self.execution, s_values, |&s| self.local(s))
    }

    /// Point data for every grid point, rows in `s`, columns in `u`.
    pub fn evaluate_grid(&self, grid: &SampleGrid) -> Result<Vec<SurfacePointData>, SurfaceError> {
        let rows = parallel::try_map(self.execution, &grid.s, |&s| {
            let local = self.local(s)?;
            Ok::<_, SurfaceError>(grid.u.iter().map(|&u| local.point(u)).collect::<Vec<_>>())
        })?;
        Ok(rows.into_iter().flatten().collect())
    }
}
