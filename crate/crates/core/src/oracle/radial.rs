//! Finite-difference radial Schrödinger equation for hydrogen in atomic
//! units of the reduced mass.
//!
//! For u(r) = r·R(r): −½u″ + [l(l+1)/(2r²) − 1/r]u = E·u with u(0) = 0 and
//! a hard wall at the end of the box, discretized with the three-point
//! stencil on r_i = i·h.

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 200;
pub const MAX_COUNT: usize = 10;
/// Threshold on the estimated discretization error of each energy (Hartree).
pub const RESOLUTION_TOL: f64 = 1e-5;
/// Maximum probability allowed in the outer tenth of the box.
const TAIL_TOL: f64 = 1e-8;

/// Uniform interior grid r_i = r_min + i·spacing. Dirichlet nodes sit at
/// r = 0 and r = r_max + spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialGrid {
    pub r_min: f64,
    pub r_max: f64,
    pub point_count: usize,
    pub spacing: f64,
}

impl RadialGrid {
    /// Grid filling a box of length `box_len` with `point_count` interior points.
    pub fn new(box_len: f64, point_count: usize) -> Result<Self> {
        if point_count < MIN_POINTS {
            return Err(Error::out_of_range("point_count", point_count, ">= 200"));
        }
        if !(box_len > 0.0) || !box_len.is_finite() {
            return Err(Error::InvalidInput(format!("box length must be positive, got {box_len}")));
        }
        let spacing = box_len / (point_count + 1) as f64;
        Ok(RadialGrid {
            r_min: spacing,
            r_max: spacing * point_count as f64,
            point_count,
            spacing,
        })
    }

    /// Grid with approximately the requested spacing over `box_len`.
    pub fn with_spacing(box_len: f64, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidInput(format!("spacing must be positive, got {spacing}")));
        }
        let points = (box_len / spacing).round() as usize;
        Self::new(box_len, points.saturating_sub(1))
    }

    pub fn box_len(&self) -> f64 {
        self.r_max + self.spacing
    }

    /// Same box, half the spacing.
    pub fn refined(&self) -> Result<Self> {
        Self::new(self.box_len(), 2 * self.point_count + 1)
    }

    /// Same box, twice the spacing; used only for error estimates, so the
    /// minimum point count is not enforced.
    fn coarsened(&self) -> Self {
        let point_count = self.point_count.div_ceil(2) - 1;
        let spacing = self.box_len() / (point_count + 1) as f64;
        RadialGrid {
            r_min: spacing,
            r_max: spacing * point_count as f64,
            point_count,
            spacing,
        }
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.r_min + i as f64 * self.spacing
    }

    pub fn radii(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.point_count).map(move |i| self.radius(i))
    }
}

/// Hydrogen eigenfunction sampled on a radial grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphericalState {
    pub n: u32,
    pub l: u32,
    pub m: i32,
    pub grid: RadialGrid,
    /// R_nl(r_i).
    pub radial_samples: Vec<f64>,
}

impl SphericalState {
    /// ∫|R|²r²dr by the trapezoidal rule (end nodes are zero).
    pub fn norm(&self) -> f64 {
        self.grid
            .radii()
            .zip(&self.radial_samples)
            .map(|(r, v)| v * v * r * r)
            .sum::<f64>()
            * self.grid.spacing
    }

    pub fn with_m(mut self, m: i32) -> Result<Self> {
        if m.unsigned_abs() > self.l {
            return Err(Error::InvalidInput(format!("|m| = {} exceeds l = {}", m.abs(), self.l)));
        }
        self.m = m;
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialEigenpair {
    /// Hartree.
    pub energy: f64,
    pub state: SphericalState,
}

pub fn radial_hamiltonian(grid: &RadialGrid, l: u32) -> SymTridiagonal {
    let h = grid.spacing;
    let kinetic = 1.0 / (h * h);
    let centrifugal = f64::from(l) * f64::from(l + 1) / 2.0;
    let diag = grid
        .radii()
        .map(|r| kinetic + centrifugal / (r * r) - 1.0 / r)
        .collect();
    SymTridiagonal {
        diag,
        off: vec![-0.5 * kinetic; grid.point_count - 1],
    }
}

fn lowest_energies(grid: &RadialGrid, l: u32, count: usize) -> Result<Vec<f64>> {
    let t = radial_hamiltonian(grid, l);
    (0..count).map(|i| t.eigenvalue(i)).collect()
}

/// Lowest `count` eigenpairs for angular momentum `l` (states n = l+1, l+2, …).
///
/// Each energy's discretization error is estimated from a re-solve at twice
/// the spacing; box truncation is detected from the eigenvector tail.
pub fn radial_eigensolve(grid: &RadialGrid, l: u32, count: usize) -> Result<Vec<RadialEigenpair>> {
    if count == 0 || count > MAX_COUNT {
        return Err(Error::out_of_range("count", count, "1..=10"));
    }
    let t = radial_hamiltonian(grid, l);
    let norm = t.norm();
    let coarse = lowest_energies(&grid.coarsened(), l, count)?;
    let mut out = Vec::with_capacity(count);
    for (i, coarse_energy) in coarse.into_iter().enumerate() {
        let energy = t.eigenvalue(i)?;
        let estimate = (energy - coarse_energy).abs() / 3.0;
        if estimate > RESOLUTION_TOL {
            return Err(Error::GridResolution(format!(
                "l = {l}, level {i}: estimated discretization error {estimate:e} Hartree"
            )));
        }
        let mut u = t.eigenvector(energy)?;
        let residual = t.residual(energy, &u);
        if residual > 1e-10 * norm {
            return Err(Error::Eigensolver(format!("residual {residual:e} for l = {l}, level {i}")));
        }
        orient(&mut u);
        let h = grid.spacing;
        let scale = 1.0 / h.sqrt();
        let tail_start = grid.point_count - grid.point_count / 10;
        let tail: f64 = u[tail_start..].iter().map(|x| x * x).sum();
        if tail > TAIL_TOL {
            return Err(Error::GridResolution(format!(
                "l = {l}, level {i}: {tail:e} of the probability lies in the outer tenth of the box"
            )));
        }
        let radial_samples = grid.radii().zip(&u).map(|(r, x)| x * scale / r).collect();
        out.push(RadialEigenpair {
            energy,
            state: SphericalState {
                n: l + 1 + i as u32,
                l,
                m: 0,
                grid: *grid,
                radial_samples,
            },
        });
    }
    Ok(out)
}

/// Sign convention: positive first lobe, matching R_nl ∝ r^l near the origin.
fn orient(u: &mut [f64]) {
    let peak = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if let Some(first) = u.iter().find(|x| x.abs() > 1e-6 * peak) {
        if *first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Energies extrapolated from spacings h and h/2: (4E(h/2) − E(h))/3.
pub fn richardson_energies(grid: &RadialGrid, l: u32, count: usize) -> Result<Vec<f64>> {
    let coarse = radial_eigensolve(grid, l, count)?;
    let fine = radial_eigensolve(&grid.refined()?, l, count)?;
    Ok(coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f.energy - c.energy) / 3.0)
        .collect())
}
