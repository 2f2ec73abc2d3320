//! Physical constants (CODATA 2018) and Hartree atomic-unit scales.
//!
//! Numerics elsewhere in the crate run in atomic units built from the
//! reduced mass of the active [`MassModel`](crate::mass::MassModel); SI only
//! appears at API boundaries.

use serde::Serialize;

use crate::error::{Error, Result};

/// Frozen CODATA 2018 constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
    /// Speed of light (m/s).
    pub c: f64,
    /// Fine-structure constant.
    pub alpha: f64,
    /// Elementary charge (C).
    pub e_charge: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Electron mass (kg).
    pub m_e_ref: f64,
    /// Proton mass (kg).
    pub m_p_ref: f64,
}

impl PhysicalConstants {
    /// α recomputed from e, ε₀, ħ and c.
    pub fn alpha_from_charge(&self) -> f64 {
        self.e_charge * self.e_charge
            / (4.0 * std::f64::consts::PI * self.eps0 * self.hbar * self.c)
    }

    /// Relative mismatch between the stored α and e²/(4πε₀ħc).
    pub fn self_consistency(&self) -> f64 {
        (self.alpha_from_charge() - self.alpha).abs() / self.alpha
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        codata_defaults()
    }
}

pub fn codata_defaults() -> PhysicalConstants {
    PhysicalConstants {
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        alpha: 7.297_352_569_3e-3,
        e_charge: 1.602_176_634e-19,
        eps0: 8.854_187_812_8e-12,
        m_e_ref: 9.109_383_701_5e-31,
        m_p_ref: 1.672_621_923_69e-27,
    }
}

/// Atomic-unit scales for a given reduced mass μ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtomicUnitScale {
    /// μc²α² (J).
    pub energy_hartree: f64,
    /// ħ/(μcα) (m).
    pub length_bohr: f64,
    /// ħ/E_h (s).
    pub time_atomic: f64,
    /// E_h/a₀ (N).
    pub force_atomic: f64,
    /// The reduced mass the scale was built from (kg).
    pub mass: f64,
}

pub fn atomic_scale(constants: &PhysicalConstants, mu: f64) -> Result<AtomicUnitScale> {
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::InvalidInput(format!(
            "reduced mass must be positive and finite, got {mu}"
        )));
    }
    let PhysicalConstants { hbar, c, alpha, .. } = *constants;
    let energy_hartree = mu * c * c * alpha * alpha;
    let length_bohr = hbar / (mu * c * alpha);
    Ok(AtomicUnitScale {
        energy_hartree,
        length_bohr,
        time_atomic: hbar / energy_hartree,
        force_atomic: energy_hartree / length_bohr,
        mass: mu,
    })
}

impl AtomicUnitScale {
    pub fn energy_to_au(&self, joules: f64) -> f64 {
        joules / self.energy_hartree
    }

    pub fn energy_to_si(&self, hartree: f64) -> f64 {
        hartree * self.energy_hartree
    }

    pub fn length_to_au(&self, meters: f64) -> f64 {
        meters / self.length_bohr
    }

    pub fn length_to_si(&self, bohr: f64) -> f64 {
        bohr * self.length_bohr
    }

    pub fn time_to_au(&self, seconds: f64) -> f64 {
        seconds / self.time_atomic
    }

    pub fn time_to_si(&self, t: f64) -> f64 {
        t * self.time_atomic
    }

    pub fn force_to_au(&self, newtons: f64) -> f64 {
        newtons / self.force_atomic
    }

    pub fn force_to_si(&self, f: f64) -> f64 {
        f * self.force_atomic
    }

    /// Bohr energy −E_h/(2n²) in joules.
    pub fn bohr_energy(&self, n: u32) -> f64 {
        let n = f64::from(n);
        -self.energy_hartree / (2.0 * n * n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn codata_alpha() {
        let k = codata_defaults();
        assert!(rel(k.alpha, 7.2973525693e-3) < 1e-12);
        assert!(k.self_consistency() < 1e-9, "{}", k.self_consistency());
        assert!(k.hbar * k.c > 0.0);
        for v in [k.hbar, k.c, k.alpha, k.e_charge, k.eps0, k.m_e_ref, k.m_p_ref] {
            assert!(v > 0.0);
        }
    }

    #[test]
    fn electron_scale() {
        let k = codata_defaults();
        let s = atomic_scale(&k, k.m_e_ref).unwrap();
        // ħ/(mₑcα) and mₑc²α² evaluated by hand from the CODATA values
        assert!(rel(s.length_bohr, 5.29177210903e-11) < 1e-9, "{}", s.length_bohr);
        assert!(rel(s.energy_hartree, 4.3597447222071e-18) < 1e-9, "{}", s.energy_hartree);
        assert!(rel(s.length_bohr, k.hbar / (k.m_e_ref * k.c * k.alpha)) < 1e-15);
        assert!(rel(s.energy_hartree / 2.0, -s.bohr_energy(1)) < 1e-15);
    }

    #[test]
    fn doubling_mass_halves_length() {
        let k = codata_defaults();
        let a = atomic_scale(&k, k.m_e_ref).unwrap();
        let b = atomic_scale(&k, 2.0 * k.m_e_ref).unwrap();
        assert!(rel(b.length_bohr, a.length_bohr / 2.0) < 1e-15);
        assert!(rel(b.energy_hartree, 2.0 * a.energy_hartree) < 1e-15);
    }

    #[test]
    fn rejects_bad_mass() {
        let k = codata_defaults();
        assert!(atomic_scale(&k, 0.0).is_err());
        assert!(atomic_scale(&k, -1.0).is_err());
        assert!(atomic_scale(&k, f64::NAN).is_err());
    }

    #[test]
    fn round_trip_units() {
        let k = codata_defaults();
        let s = atomic_scale(&k, 9.104e-31).unwrap();
        for x in [1e-30, 3.7e-18, 1.0, 42.0] {
            assert!(rel(s.energy_to_si(s.energy_to_au(x)), x) < 1e-12);
            assert!(rel(s.length_to_si(s.length_to_au(x)), x) < 1e-12);
            assert!(rel(s.time_to_si(s.time_to_au(x)), x) < 1e-12);
            assert!(rel(s.force_to_si(s.force_to_au(x)), x) < 1e-12);
        }
    }
}
