//! Degenerate perturbation theory of −𝓜g·z inside a hydrogen n-manifold,
//! built in the spherical (n, l, m) basis from finite-difference states.

use nalgebra::DMatrix;
use serde::Serialize;

use super::dipole::{angular_factor, radial_r_integral};
use super::radial::{radial_eigensolve, RadialGrid, SphericalState};
use crate::constants::{atomic_scale, PhysicalConstants};
use crate::error::{Error, Result};
use crate::mass::CompositeMasses;
use crate::separation::FieldSpec;

pub const MAX_MANIFOLD_N: u32 = 4;

/// Coarsest spacing of the three-level Romberg sequence (Bohr).
const BASE_SPACING: f64 = 0.005;

/// Matrix of an operator restricted to the n-manifold, basis ordered by
/// (l, m) with l ascending and m ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldMatrix {
    pub n: u32,
    pub dimension: usize,
    pub basis: Vec<(u32, i32)>,
    /// Row-major.
    pub entries: Vec<f64>,
}

impl ManifoldMatrix {
    fn zeros(n: u32) -> Self {
        let basis: Vec<(u32, i32)> = (0..n)
            .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| (l, m)))
            .collect();
        let dimension = basis.len();
        ManifoldMatrix {
            n,
            dimension,
            basis,
            entries: vec![0.0; dimension * dimension],
        }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dimension + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.dimension + j] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dimension).map(|i| self.get(i, i)).sum()
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dimension {
            for j in 0..i {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn scaled(&self, s: f64) -> Self {
        ManifoldMatrix {
            entries: self.entries.iter().map(|x| x * s).collect(),
            ..self.clone()
        }
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let m = DMatrix::from_row_slice(self.dimension, self.dimension, &self.entries);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        if ev.iter().any(|x| !x.is_finite()) {
            return Err(Error::Eigensolver("non-finite manifold eigenvalue".into()));
        }
        ev.sort_by(f64::total_cmp);
        Ok(ev)
    }
}

fn check_manifold_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_MANIFOLD_N {
        return Err(Error::out_of_range("n", n, "1..=4"));
    }
    Ok(())
}

fn manifold_box(n: u32) -> f64 {
    (45.0 * f64::from(n)).max(60.0)
}

/// Radial states R_{n,l} for l = 0..n−1 on one grid.
fn manifold_states(n: u32, grid: &RadialGrid) -> Result<Vec<SphericalState>> {
    (0..n)
        .map(|l| {
            radial_eigensolve(grid, l, (n - l) as usize)?
                .pop()
                .map(|p| p.state)
                .ok_or_else(|| Error::Eigensolver("missing radial state".into()))
        })
        .collect()
}

/// ⟨n,l|r|n,l+1⟩ for l = 0..n−2 at the given spacing.
fn radial_elements(n: u32, spacing: f64) -> Result<Vec<f64>> {
    let grid = RadialGrid::with_spacing(manifold_box(n), spacing)?;
    let states = manifold_states(n, &grid)?;
    states
        .windows(2)
        .map(|w| radial_r_integral(&w[0], &w[1]))
        .collect()
}

/// Radial elements extrapolated from spacings h, h/2, h/4.
fn extrapolated_radial_elements(n: u32) -> Result<Vec<f64>> {
    let a = radial_elements(n, BASE_SPACING)?;
    let b = radial_elements(n, BASE_SPACING / 2.0)?;
    let c = radial_elements(n, BASE_SPACING / 4.0)?;
    Ok((0..a.len())
        .map(|i| {
            let ab = (4.0 * b[i] - a[i]) / 3.0;
            let bc = (4.0 * c[i] - b[i]) / 3.0;
            (16.0 * bc - ab) / 15.0
        })
        .collect())
}

/// Matrix of z (Bohr) in the spherical n-manifold basis.
pub fn z_matrix(n: u32) -> Result<ManifoldMatrix> {
    check_manifold_n(n)?;
    let radial = extrapolated_radial_elements(n)?;
    let mut mat = ManifoldMatrix::zeros(n);
    for i in 0..mat.dimension {
        for j in 0..mat.dimension {
            let (li, mi) = mat.basis[i];
            let (lj, mj) = mat.basis[j];
            if mi != mj || li.abs_diff(lj) != 1 {
                continue;
            }
            let lower = li.min(lj);
            let v = radial[lower as usize] * angular_factor(lower, mi);
            mat.set(i, j, v);
        }
    }
    Ok(mat)
}

/// Manifold matrix of −F·z in Hartree, F the internal force in atomic units.
pub fn perturbation_matrix(n: u32, force_au: f64) -> Result<ManifoldMatrix> {
    Ok(z_matrix(n)?.scaled(-force_au))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftGroup {
    /// Energy shift (J).
    pub shift: f64,
    /// Same shift in Hartree.
    pub shift_hartree: f64,
    pub multiplicity: u32,
}

/// Groups sorted values whose gaps are below `1e-10·(max|v| + 1e-30)`.
pub fn group_degenerate(values: &[f64]) -> Vec<(f64, u32)> {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())) + 1e-30;
    let tol = 1e-10 * scale;
    let mut groups: Vec<(f64, u32, f64)> = Vec::new();
    for &v in values {
        match groups.last_mut() {
            Some((sum, count, last)) if (v - *last).abs() <= tol => {
                *sum += v;
                *count += 1;
                *last = v;
            }
            _ => groups.push((v, 1, v)),
        }
    }
    groups
        .into_iter()
        .map(|(sum, count, _)| (sum / f64::from(count), count))
        .collect()
}

/// First-order shifts of the n-manifold from diagonalizing −𝓜g·z.
///
/// Degeneracies are detected on the eigenvalues of z (Bohr) so that the
/// grouping does not depend on the field strength; shifts are then scaled
/// by −𝓜g. Returned in ascending order of shift.
pub fn degenerate_pt(
    n: u32,
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<Vec<ShiftGroup>> {
    let scale = atomic_scale(constants, composites.reduced)?;
    let force_au = scale.force_to_au(composites.script_m * field.magnitude);
    let z = z_matrix(n)?.eigenvalues()?;
    let mut groups: Vec<ShiftGroup> = group_degenerate(&z)
        .into_iter()
        .map(|(zv, multiplicity)| {
            // exact zero for vanishing coupling
            let shift_hartree = if force_au == 0.0 { 0.0 } else { -force_au * zv };
            ShiftGroup {
                shift: scale.energy_to_si(shift_hartree),
                shift_hartree,
                multiplicity,
            }
        })
        .collect();
    if force_au == 0.0 {
        let total = groups.iter().map(|g| g.multiplicity).sum();
        groups = vec![ShiftGroup {
            shift: 0.0,
            shift_hartree: 0.0,
            multiplicity: total,
        }];
    }
    groups.sort_by(|a, b| a.shift.total_cmp(&b.shift));
    Ok(groups)
}
