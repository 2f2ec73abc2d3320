//! Centre-of-mass / relative separation of the two-body problem in a uniform
//! gravitational field.
//!
//! The two-body potential `m̄_e g·x + m̄_p g·y` becomes `M̄ g·R − 𝓜 g·r` in
//! CM/relative coordinates. The kinetic part separates with masses `M` and
//! `μ`, so the only channel through which the field reaches the internal
//! motion is `𝓜`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::constants::{atomic_scale, PhysicalConstants};
use crate::error::{Error, Result};
use crate::mass::{derive_composites, MassModel};

/// Uniform field: magnitude (m/s²) along a unit axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSpec {
    pub magnitude: f64,
    pub axis: [f64; 3],
}

impl FieldSpec {
    pub fn new(magnitude: f64, axis: [f64; 3]) -> Result<Self> {
        if !(magnitude >= 0.0) || !magnitude.is_finite() {
            return Err(Error::InvalidInput(format!(
                "field magnitude must be finite and non-negative, got {magnitude}"
            )));
        }
        let norm = norm3(axis);
        if !((norm - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidInput(format!(
                "field axis must be a unit vector, |axis| = {norm}"
            )));
        }
        Ok(FieldSpec { magnitude, axis })
    }

    /// Field along +z.
    pub fn along_z(magnitude: f64) -> Result<Self> {
        Self::new(magnitude, [0.0, 0.0, 1.0])
    }

    /// Field from an arbitrary vector; the zero vector maps to zero field along +z.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let norm = norm3(v);
        if norm == 0.0 {
            return Self::along_z(0.0);
        }
        Self::new(norm, [v[0] / norm, v[1] / norm, v[2] / norm])
    }

    pub fn vector(&self) -> [f64; 3] {
        scale3(self.axis, self.magnitude)
    }
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

pub(crate) fn scale3(v: [f64; 3], s: f64) -> [f64; 3] {
    [v[0] * s, v[1] * s, v[2] * s]
}

/// Coefficients of the separated CM and internal equations.
///
/// CM potential: `+cm_coupling · (axis·R)`; internal potential:
/// `−internal_coupling · (axis·r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparatedHamiltonian {
    pub cm_kinetic_mass: f64,
    /// M̄·g (N).
    pub cm_coupling: f64,
    pub internal_kinetic_mass: f64,
    /// 𝓜·g (N).
    pub internal_coupling: f64,
    pub coulomb_present: bool,
    pub axis: [f64; 3],
}

impl SeparatedHamiltonian {
    /// Gradient of the CM potential energy with respect to R (N).
    pub fn cm_potential_gradient(&self) -> [f64; 3] {
        scale3(self.axis, self.cm_coupling)
    }

    /// Gradient of the internal potential energy with respect to r (N).
    pub fn internal_potential_gradient(&self) -> [f64; 3] {
        scale3(self.axis, -self.internal_coupling)
    }
}

pub fn separate_gravitational(model: &MassModel, field: &FieldSpec) -> Result<SeparatedHamiltonian> {
    let c = derive_composites(model)?;
    Ok(SeparatedHamiltonian {
        cm_kinetic_mass: c.total,
        cm_coupling: c.total_grav * field.magnitude,
        internal_kinetic_mass: c.reduced,
        internal_coupling: c.script_m * field.magnitude,
        coulomb_present: true,
        axis: field.axis,
    })
}

/// Trial product state and 1D two-particle grid for [`verify_separability`].
///
/// Lengths are in Bohr radii of the model's reduced mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurrogateGrid {
    pub points: usize,
    pub half_width: f64,
    pub amplitude: f64,
    pub cm_center: f64,
    pub cm_width: f64,
    pub rel_center: f64,
    pub rel_width: f64,
}

impl Default for SurrogateGrid {
    fn default() -> Self {
        SurrogateGrid {
            points: 48,
            half_width: 6.0,
            amplitude: 1.0,
            cm_center: 0.3,
            cm_width: 1.7,
            rel_center: 0.5,
            rel_width: 1.2,
        }
    }
}

pub const SURROGATE_MAX_POINTS: usize = 64;
const SOFTENING: f64 = 0.1;

/// Value with first and second derivative along one seeded direction.
#[derive(Debug, Clone, Copy)]
struct Jet {
    v: f64,
    d1: f64,
    d2: f64,
}

impl Jet {
    fn constant(v: f64) -> Self {
        Jet { v, d1: 0.0, d2: 0.0 }
    }

    fn variable(v: f64) -> Self {
        Jet { v, d1: 1.0, d2: 0.0 }
    }

    fn exp(self) -> Self {
        let e = self.v.exp();
        Jet {
            v: e,
            d1: e * self.d1,
            d2: e * (self.d2 + self.d1 * self.d1),
        }
    }

    fn scale(self, s: f64) -> Self {
        Jet {
            v: self.v * s,
            d1: self.d1 * s,
            d2: self.d2 * s,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet {
            v: self.v + o.v,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        self + (-o)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet {
            v: self.v * o.v,
            d1: self.d1 * o.v + self.v * o.d1,
            d2: self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        }
    }
}

fn gaussian(x: Jet, center: f64, width: f64) -> Jet {
    let u = x - Jet::constant(center);
    (u * u).scale(-0.5 / (width * width)).exp()
}

/// Checks on a 1D two-particle surrogate that the separated operators
/// reproduce the two-body operator on a product state.
///
/// The left side applies
/// `−∂²ₓ/(2mₑ) − ∂²_y/(2m_p) + V(x−y) + m̄_e g x + m̄_p g y` to
/// `ψ(x,y) = φ_cm(R(x,y))·φ_rel(x−y)`, differentiating through the
/// coordinate map. The right side applies
/// `−∂²_R/(2M) − ∂²_r/(2μ) + V(r) + M̄ g R − 𝓜 g r` directly in `(R, r)`.
/// Returns max |LHS − RHS| / (max |LHS| + ε).
pub fn verify_separability(
    model: &MassModel,
    field: &FieldSpec,
    constants: &PhysicalConstants,
    grid: &SurrogateGrid,
) -> Result<f64> {
    separability_residual(model, field, constants, grid, 1.0)
}

fn separability_residual(
    model: &MassModel,
    field: &FieldSpec,
    constants: &PhysicalConstants,
    grid: &SurrogateGrid,
    internal_factor: f64,
) -> Result<f64> {
    if grid.points > SURROGATE_MAX_POINTS {
        return Err(Error::Resource(format!(
            "surrogate grid of {} points per axis exceeds {SURROGATE_MAX_POINTS}",
            grid.points
        )));
    }
    if grid.points < 2 || !(grid.half_width > 0.0) || !(grid.cm_width > 0.0) || !(grid.rel_width > 0.0) {
        return Err(Error::InvalidInput("degenerate surrogate grid".into()));
    }
    let comp = derive_composites(model)?;
    let scale = atomic_scale(constants, comp.reduced)?;
    // masses in units of μ, ħ = 1, lengths in Bohr, energies in Hartree
    let mu = comp.reduced;
    let (me, mp) = (model.m_e / mu, model.m_p / mu);
    let (mbe, mbp) = (model.mbar_e / mu, model.mbar_p / mu);
    let total = comp.total / mu;
    let reduced = 1.0;
    let total_grav = comp.total_grav / mu;
    let script_m = internal_factor * comp.script_m / mu;
    let g = field.magnitude * mu / scale.force_atomic;

    let potential = |r: f64| -1.0 / (r * r + SOFTENING * SOFTENING).sqrt();
    let product = |cm: Jet, rel: Jet| {
        gaussian(cm, grid.cm_center, grid.cm_width) * gaussian(rel, grid.rel_center, grid.rel_width)
    };
    let amp = grid.amplitude;

    let n = grid.points;
    let step = 2.0 * grid.half_width / (n - 1) as f64;
    let mut lhs = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = -grid.half_width + i as f64 * step;
        for j in 0..n {
            let y = -grid.half_width + j as f64 * step;

            let two_body = |xj: Jet, yj: Jet| {
                let cm = (xj.scale(me) + yj.scale(mp)).scale(1.0 / total);
                product(cm, xj - yj).scale(amp)
            };
            let along_x = two_body(Jet::variable(x), Jet::constant(y));
            let along_y = two_body(Jet::constant(x), Jet::variable(y));
            let psi = along_x.v;
            let left = -along_x.d2 / (2.0 * me) - along_y.d2 / (2.0 * mp)
                + (potential(x - y) + mbe * g * x + mbp * g * y) * psi;

            let big_r = (me * x + mp * y) / total;
            let small_r = x - y;
            let along_cm = product(Jet::variable(big_r), Jet::constant(small_r)).scale(amp);
            let along_rel = product(Jet::constant(big_r), Jet::variable(small_r)).scale(amp);
            let psi_sep = along_cm.v;
            let right = -along_cm.d2 / (2.0 * total) - along_rel.d2 / (2.0 * reduced)
                + (potential(small_r) + total_grav * g * big_r - script_m * g * small_r) * psi_sep;

            lhs.push(left);
            rhs.push(right);
        }
    }
    let peak = lhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if peak == 0.0 {
        return Ok(0.0);
    }
    let worst = lhs
        .iter()
        .zip(&rhs)
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    Ok(worst / (peak + f64::EPSILON))
}
