use super::{CharFunctionValues, GnrSurface, SurfaceError};
use crate::curve::{frenet_at, frenet_at_raw, Vec3};
use crate::expr::{eval_jet, ExprNode};

/// Everything along the ruling through `alpha(s)` that does not depend on `u`.
///
/// Unless stated otherwise derivatives are with respect to arclength. In
/// compatibility mode the surface parameter is the curve's raw parameter `t`
/// and `speed = |alpha'(t)|`; the `raw_*` fields then hold `t`-derivatives.
/// Otherwise `speed = 1` and raw and arclength derivatives coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalGeometry {
    pub s: f64,
    pub speed: f64,
    /// Raw-parameter derivative of `speed`.
    pub speed_prime: f64,
    pub position: Vec3,
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
    pub kappa: f64,
    pub tau: f64,
    pub kappa_prime: f64,
    pub tau_prime: f64,
    /// `[a1, a1', a1'']`.
    pub a1: [f64; 3],
    /// `[a2, a2', a2'']`.
    pub a2: [f64; 3],
    pub raw_a1: [f64; 3],
    pub raw_a2: [f64; 3],
    pub raw_kappa_prime: f64,
    pub raw_tau_prime: f64,
    /// Frame supplied by the frame policy (straight point).
    pub policy_frame: bool,
}

fn coefficient(expr: &ExprNode, s: f64) -> Result<[f64; 3], SurfaceError> {
    let j = eval_jet(expr, s).map_err(|source| SurfaceError::Eval { s, source })?;
    Ok([j.value(), j.derivative(1), j.derivative(2)])
}

impl GnrSurface {
    /// Frame, curvatures and ruling coefficients at `s`.
    pub fn local(&self, s: f64) -> Result<LocalGeometry, SurfaceError> {
        let policy = &self.options.frame_policy;
        let compat = self.compat();
        let fr = if compat {
            frenet_at_raw(&self.base, s, policy)?
        } else {
            frenet_at(&self.base, s, policy)?
        };
        let (v, vp) = if compat { (fr.speed, fr.speed_prime) } else { (1.0, 0.0) };
        let raw_a1 = coefficient(&self.ruling.a1, s)?;
        let raw_a2 = coefficient(&self.ruling.a2, s)?;
        let geometric = |c: [f64; 3]| [c[0], c[1] / v, c[2] / (v * v) - c[1] * vp / (v * v * v)];
        Ok(LocalGeometry {
            s,
            speed: v,
            speed_prime: vp,
            position: self.base.position(s)?,
            tangent: fr.tangent,
            normal: fr.normal,
            binormal: fr.binormal,
            kappa: fr.curvature,
            tau: fr.torsion,
            kappa_prime: fr.curvature_prime / v,
            tau_prime: fr.torsion_prime / v,
            a1: geometric(raw_a1),
            a2: geometric(raw_a2),
            raw_a1,
            raw_a2,
            raw_kappa_prime: fr.curvature_prime,
            raw_tau_prime: fr.torsion_prime,
            policy_frame: fr.policy_frame,
        })
    }
}

impl LocalGeometry {
    /// `q_n = a1 N + a2 B`.
    pub fn ruling(&self) -> Vec3 {
        self.normal * self.a1[0] + self.binormal * self.a2[0]
    }

    /// `P = a1' - a2 tau`, the `N` component of `q_n'`.
    pub fn p(&self) -> f64 {
        self.a1[1] - self.a2[0] * self.tau
    }

    /// `Q = a1 tau + a2'`, the `B` component of `q_n'`.
    pub fn q(&self) -> f64 {
        self.a1[0] * self.tau + self.a2[1]
    }

    /// `q_n' = -a1 kappa T + P N + Q B`.
    pub fn ruling_prime(&self) -> Vec3 {
        self.tangent * (-self.a1[0] * self.kappa) + self.normal * self.p() + self.binormal * self.q()
    }

    /// `|q_n'|^2 = a1^2 kappa^2 + P^2 + Q^2`.
    pub fn ruling_prime_norm_squared(&self) -> f64 {
        let k = self.a1[0] * self.kappa;
        k * k + self.p().powi(2) + self.q().powi(2)
    }

    /// `theta' = a1 a2' - a2 a1'`.
    pub fn theta_prime(&self) -> f64 {
        self.a1[0] * self.a2[1] - self.a2[0] * self.a1[1]
    }

    /// `f = a1' a2 - a1 a2' - tau` with arclength derivatives; this is the
    /// `f` that enters the surface geometry.
    pub fn f(&self) -> f64 {
        -self.theta_prime() - self.tau
    }

    /// Arclength derivative of [`LocalGeometry::f`].
    pub fn f_prime(&self) -> f64 {
        self.a1[2] * self.a2[0] - self.a1[0] * self.a2[2] - self.tau_prime
    }

    /// `g = 1 - u a1 kappa`.
    pub fn g(&self, u: f64) -> f64 {
        1.0 - u * self.a1[0] * self.kappa
    }

    /// `dg/ds` with arclength derivatives.
    pub fn g_s(&self, u: f64) -> f64 {
        -u * (self.a1[1] * self.kappa + self.a1[0] * self.kappa_prime)
    }

    /// `g_u = -a1 kappa`.
    pub fn g_u(&self) -> f64 {
        -self.a1[0] * self.kappa
    }

    /// `u^2 f^2 + g^2`, the squared norm of the unnormalized surface normal
    /// in arclength terms.
    pub fn normal_norm_squared(&self, u: f64) -> f64 {
        let (f, g) = (self.f(), self.g(u));
        u * u * f * f + g * g
    }

    /// Characterization functions in the surface's own parameter: raw
    /// parameter derivatives in compatibility mode, arclength otherwise.
    pub fn char_functions(&self, u: f64) -> CharFunctionValues {
        let (a1, a2) = (self.raw_a1, self.raw_a2);
        CharFunctionValues {
            f: a1[1] * a2[0] - a1[0] * a2[1] - self.tau,
            g: self.g(u),
            f_prime: a1[2] * a2[0] - a1[0] * a2[2] - self.raw_tau_prime,
            g_s: -u * (a1[1] * self.kappa + a1[0] * self.raw_kappa_prime),
            g_u: self.g_u(),
        }
    }
}
