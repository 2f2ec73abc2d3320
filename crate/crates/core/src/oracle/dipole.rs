//! ⟨n l m| z |n′ l′ m′⟩ from radial quadrature and the analytic angular factor.

use super::radial::SphericalState;
use crate::error::{Error, Result};

/// ⟨l, m| cos θ |l+1, m⟩.
pub fn angular_factor(l: u32, m: i32) -> f64 {
    let l = f64::from(l);
    let m = f64::from(m);
    (((l + 1.0) * (l + 1.0) - m * m) / ((2.0 * l + 1.0) * (2.0 * l + 3.0))).sqrt()
}

/// ∫ R_a R_b r³ dr by the trapezoidal rule.
pub fn radial_r_integral(bra: &SphericalState, ket: &SphericalState) -> Result<f64> {
    if bra.grid != ket.grid {
        return Err(Error::InvalidInput("states are sampled on different grids".into()));
    }
    let sum: f64 = bra
        .grid
        .radii()
        .zip(bra.radial_samples.iter().zip(&ket.radial_samples))
        .map(|(r, (a, b))| a * b * r * r * r)
        .sum();
    Ok(sum * bra.grid.spacing)
}

/// ⟨bra| z |ket⟩ in Bohr radii.
pub fn dipole_matrix_element(bra: &SphericalState, ket: &SphericalState) -> Result<f64> {
    if bra.grid != ket.grid {
        return Err(Error::InvalidInput("states are sampled on different grids".into()));
    }
    if bra.m != ket.m || bra.l.abs_diff(ket.l) != 1 {
        return Ok(0.0);
    }
    let lower = bra.l.min(ket.l);
    Ok(radial_r_integral(bra, ket)? * angular_factor(lower, bra.m))
}
