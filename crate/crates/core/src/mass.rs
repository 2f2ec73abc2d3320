//! Four-mass configuration and derived composite masses.

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Inertial and gravitational masses of the electron and proton (kg).
///
/// Gravitational masses may be zero or negative so that violation scans are
/// unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassModel {
    pub m_e: f64,
    pub m_p: f64,
    pub mbar_e: f64,
    pub mbar_p: f64,
}

/// Total and reduced inertial mass, total gravitational mass and the
/// mass-asymmetry coupling 𝓜 defined by 𝓜·M = m̄_p·mₑ − m̄_e·m_p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompositeMasses {
    pub total: f64,
    pub reduced: f64,
    pub total_grav: f64,
    pub script_m: f64,
    /// Inertial electron mass, carried for formulas written in mₑ.
    pub electron: f64,
}

impl MassModel {
    pub fn new(m_e: f64, m_p: f64, mbar_e: f64, mbar_p: f64) -> Result<Self> {
        let model = MassModel {
            m_e,
            m_p,
            mbar_e,
            mbar_p,
        };
        model.validate()?;
        Ok(model)
    }

    /// CODATA masses with gravitational equal to inertial.
    pub fn equivalent(constants: &PhysicalConstants) -> Self {
        MassModel {
            m_e: constants.m_e_ref,
            m_p: constants.m_p_ref,
            mbar_e: constants.m_e_ref,
            mbar_p: constants.m_p_ref,
        }
    }

    /// Masses given as ratios to the CODATA electron/proton masses.
    pub fn from_ratios(
        constants: &PhysicalConstants,
        m_e: f64,
        m_p: f64,
        mbar_e: f64,
        mbar_p: f64,
    ) -> Result<Self> {
        let (me, mp) = (constants.m_e_ref, constants.m_p_ref);
        Self::new(m_e * me, m_p * mp, mbar_e * me, mbar_p * mp)
    }

    /// Model with the requested 𝓜, keeping m̄_p = m_p and solving for m̄_e.
    pub fn from_script_m(m_e: f64, m_p: f64, script_m: f64) -> Result<Self> {
        let total = m_e + m_p;
        Self::new(m_e, m_p, m_e - script_m * total / m_p, m_p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("m_e", self.m_e), ("m_p", self.m_p)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "inertial mass {name} must be positive and finite, got {v}"
                )));
            }
        }
        for (name, v) in [("mbar_e", self.mbar_e), ("mbar_p", self.mbar_p)] {
            if !v.is_finite() {
                return Err(Error::InvalidInput(format!(
                    "gravitational mass {name} must be finite, got {v}"
                )));
            }
        }
        Ok(())
    }

    /// Same model with the electron and proton roles exchanged.
    pub fn swapped(&self) -> Self {
        MassModel {
            m_e: self.m_p,
            m_p: self.m_e,
            mbar_e: self.mbar_p,
            mbar_p: self.mbar_e,
        }
    }
}

pub fn derive_composites(model: &MassModel) -> Result<CompositeMasses> {
    model.validate()?;
    let total = model.m_e + model.m_p;
    Ok(CompositeMasses {
        total,
        reduced: model.m_e * model.m_p / total,
        total_grav: model.mbar_e + model.mbar_p,
        script_m: (model.mbar_p * model.m_e - model.mbar_e * model.m_p) / total,
        electron: model.m_e,
    })
}

pub fn equivalence_holds(model: &MassModel, rel_tol: f64) -> bool {
    (model.mbar_e - model.m_e).abs() <= rel_tol * model.m_e
        && (model.mbar_p - model.m_p).abs() <= rel_tol * model.m_p
}
