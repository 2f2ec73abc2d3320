//! Box-stabilization diagnosis of discrete versus continuous spectrum.
//!
//! The model is the half-axis Hamiltonian −½d²/dη² − 1/η − F·η with hard
//! walls at η = 0 and η = L. For F > 0 the potential falls without bound, so
//! the unbounded problem has no eigenvalues; in a finite box the levels in
//! the continuum region crowd together as L grows, while a true bound level
//! (F = 0) stops moving once the box contains it.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct StabilizationSpec {
    /// Box lengths (Bohr), strictly increasing, at least three.
    pub box_sizes: Vec<f64>,
    /// F in atomic units; the potential is −1/η − F·η.
    pub force: f64,
    /// Energy window (Hartree).
    pub window: (f64, f64),
    /// Grid spacing (Bohr).
    pub spacing: f64,
}

impl Default for StabilizationSpec {
    fn default() -> Self {
        StabilizationSpec {
            box_sizes: vec![50.0, 100.0, 200.0],
            force: 0.0,
            window: (-0.6, -0.4),
            spacing: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StabilizationPoint {
    pub box_size: f64,
    /// Eigenvalue nearest the window centre (Hartree).
    pub eigenvalue: f64,
    /// Mean gap to its neighbours (one-sided at the bottom of the spectrum).
    pub local_level_spacing: f64,
}

fn box_hamiltonian(box_len: f64, spacing: f64, force: f64) -> Result<SymTridiagonal> {
    let points = (box_len / spacing).round() as usize;
    if points < 3 {
        return Err(Error::InvalidInput(format!("box {box_len} too small for spacing {spacing}")));
    }
    let interior = points - 1;
    let h = box_len / points as f64;
    let kinetic = 1.0 / (h * h);
    let diag = (1..=interior)
        .map(|i| {
            let eta = i as f64 * h;
            kinetic - 1.0 / eta - force * eta
        })
        .collect();
    SymTridiagonal::new(diag, vec![-0.5 * kinetic; interior - 1])
}

pub fn stabilization_scan(spec: &StabilizationSpec) -> Result<Vec<StabilizationPoint>> {
    let (lo, hi) = spec.window;
    if spec.box_sizes.len() < 3 {
        return Err(Error::InvalidInput("stabilization scan needs at least three box sizes".into()));
    }
    if spec.box_sizes.windows(2).any(|w| !(w[1] > w[0])) || !(spec.box_sizes[0] > 0.0) {
        return Err(Error::InvalidInput("box sizes must be positive and strictly increasing".into()));
    }
    if !(lo < hi) {
        return Err(Error::InvalidInput(format!("empty energy window [{lo}, {hi}]")));
    }
    if !(spec.spacing > 0.0) || !spec.force.is_finite() {
        return Err(Error::InvalidInput("spacing must be positive and force finite".into()));
    }
    let centre = 0.5 * (lo + hi);
    spec.box_sizes
        .iter()
        .map(|&box_size| {
            let t = box_hamiltonian(box_size, spec.spacing, spec.force)?;
            let below_lo = t.count_below(lo);
            let below_hi = t.count_below(hi);
            if below_hi == below_lo {
                return Err(Error::EmptyWindow { lo, hi });
            }
            // candidates: last level below the centre and first above it
            let split = t.count_below(centre).clamp(below_lo, below_hi);
            let mut best: Option<(usize, f64)> = None;
            for idx in [split.checked_sub(1), Some(split)].into_iter().flatten() {
                if idx < below_lo || idx >= below_hi {
                    continue;
                }
                let e = t.eigenvalue(idx)?;
                if best.is_none_or(|(_, b)| (e - centre).abs() < (b - centre).abs()) {
                    best = Some((idx, e));
                }
            }
            let (idx, eigenvalue) = best.ok_or(Error::EmptyWindow { lo, hi })?;
            let below = idx.checked_sub(1).map(|i| t.eigenvalue(i)).transpose()?;
            let above = if idx + 1 < t.len() { Some(t.eigenvalue(idx + 1)?) } else { None };
            let local_level_spacing = match (below, above) {
                (Some(b), Some(a)) => 0.5 * (a - b),
                (None, Some(a)) => a - eigenvalue,
                (Some(b), None) => eigenvalue - b,
                (None, None) => f64::INFINITY,
            };
            Ok(StabilizationPoint {
                box_size,
                eigenvalue,
                local_level_spacing,
            })
        })
        .collect()
}
