//! Extended Galilean transformation to a uniformly accelerating frame.
//!
//! With `x = x′ + Z(t)` and the phase
//! `Φ = [−m Ż·x′ − (m/2)∫₀ᵗ Ż² ds]/ħ`, a solution of the inertial-frame
//! equation maps to a solution in the accelerated frame with the extra
//! potential `+m a·x′`. Applied to both particles, the acceleration term is
//! `M a·R′` — it never reaches the relative coordinate.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mass::{derive_composites, MassModel};
use crate::separation::{norm3, scale3, SeparatedHamiltonian};
use crate::wavepacket::{fidelity, propagate, translate, PropagationSpec, Wavefunction1D, BOUNDARY_BAND, BOUNDARY_TOL};

/// Frame trajectory with constant acceleration, at rest and coincident
/// with the inertial frame at t = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameTrajectory {
    pub acceleration: [f64; 3],
}

impl FrameTrajectory {
    pub fn new(acceleration: [f64; 3]) -> Self {
        FrameTrajectory { acceleration }
    }

    /// Trajectory along the first axis only.
    pub fn along_x(a: f64) -> Self {
        Self::new([a, 0.0, 0.0])
    }

    pub fn displacement(&self, t: f64) -> [f64; 3] {
        scale3(self.acceleration, 0.5 * t * t)
    }

    pub fn velocity(&self, t: f64) -> [f64; 3] {
        scale3(self.acceleration, t)
    }

    /// ∫₀ᵗ |Ż|² ds = |a|² t³ / 3.
    pub fn velocity_sq_integral(&self, t: f64) -> f64 {
        let a = norm3(self.acceleration);
        a * a * t * t * t / 3.0
    }
}

/// Two-particle phase Φ at a fixed time, split into its position-linear
/// pieces (momentum units) and a position-independent action.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseField {
    /// −m_e Ż
    pub electron_coefficient: [f64; 3],
    /// −m_p Ż
    pub proton_coefficient: [f64; 3],
    /// −(M/2)∫Ż²
    pub time_part: f64,
}

impl PhaseField {
    pub fn new(model: &MassModel, trajectory: &FrameTrajectory, t: f64) -> Result<Self> {
        let c = derive_composites(model)?;
        let v = trajectory.velocity(t);
        Ok(PhaseField {
            electron_coefficient: scale3(v, -model.m_e),
            proton_coefficient: scale3(v, -model.m_p),
            time_part: -0.5 * c.total * trajectory.velocity_sq_integral(t),
        })
    }

    /// Φ(x′, y′) in radians.
    pub fn evaluate(&self, electron: [f64; 3], proton: [f64; 3], hbar: f64) -> f64 {
        (dot3(self.electron_coefficient, electron) + dot3(self.proton_coefficient, proton) + self.time_part) / hbar
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Coefficients of the accelerated-frame Hamiltonian.
///
/// Same layout as [`SeparatedHamiltonian`]: `axis` is the direction of the
/// equivalent field (−â) and the CM potential is `+cm_coupling·(axis·R′)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcceleratedHamiltonian {
    pub cm_kinetic_mass: f64,
    /// M·|a| (N).
    pub cm_coupling: f64,
    pub internal_kinetic_mass: f64,
    /// Always 0.
    pub internal_coupling: f64,
    /// Gravitational mass the CM appears to have: M.
    pub effective_grav_mass: f64,
    pub axis: [f64; 3],
}

impl AcceleratedHamiltonian {
    pub fn cm_potential_gradient(&self) -> [f64; 3] {
        scale3(self.axis, self.cm_coupling)
    }

    pub fn internal_potential_gradient(&self) -> [f64; 3] {
        scale3(self.axis, -self.internal_coupling)
    }
}

/// The parts of a Hamiltonian through which a field or acceleration acts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingRecord {
    pub cm_coupling: f64,
    pub internal_coupling: f64,
    pub cm_gradient: [f64; 3],
    pub internal_gradient: [f64; 3],
}

impl From<&SeparatedHamiltonian> for CouplingRecord {
    fn from(h: &SeparatedHamiltonian) -> Self {
        CouplingRecord {
            cm_coupling: h.cm_coupling,
            internal_coupling: h.internal_coupling,
            cm_gradient: h.cm_potential_gradient(),
            internal_gradient: h.internal_potential_gradient(),
        }
    }
}

impl From<&AcceleratedHamiltonian> for CouplingRecord {
    fn from(h: &AcceleratedHamiltonian) -> Self {
        CouplingRecord {
            cm_coupling: h.cm_coupling,
            internal_coupling: h.internal_coupling,
            cm_gradient: h.cm_potential_gradient(),
            internal_gradient: h.internal_potential_gradient(),
        }
    }
}

pub fn accelerated_hamiltonian(model: &MassModel, accel: [f64; 3]) -> Result<AcceleratedHamiltonian> {
    if accel.iter().any(|a| !a.is_finite()) {
        return Err(Error::InvalidInput("acceleration must be finite".into()));
    }
    let c = derive_composites(model)?;
    let a = norm3(accel);
    let axis = if a == 0.0 {
        [0.0, 0.0, 1.0]
    } else {
        [-accel[0] / a, -accel[1] / a, -accel[2] / a]
    };
    Ok(AcceleratedHamiltonian {
        cm_kinetic_mass: c.total,
        cm_coupling: c.total * a,
        internal_kinetic_mass: c.reduced,
        internal_coupling: 0.0,
        effective_grav_mass: c.total,
        axis,
    })
}

/// How a gravitational field of the given magnitude differs from an
/// acceleration of the same magnitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameDiscrepancy {
    /// M/M̄.
    pub cm_mass_ratio: f64,
    /// |𝓜|·g − 0 (N).
    pub internal_coupling_difference: f64,
}

pub fn frame_discrepancy(model: &MassModel, magnitude: f64) -> Result<FrameDiscrepancy> {
    if !(magnitude >= 0.0) || !magnitude.is_finite() {
        return Err(Error::InvalidInput(format!(
            "magnitude must be finite and non-negative, got {magnitude}"
        )));
    }
    let c = derive_composites(model)?;
    if c.total_grav == 0.0 {
        return Err(Error::UndefinedRatio("total gravitational mass is zero".into()));
    }
    Ok(FrameDiscrepancy {
        cm_mass_ratio: c.total / c.total_grav,
        internal_coupling_difference: c.script_m.abs() * magnitude,
    })
}

/// Maps an inertial-frame state at time `t` into the accelerated frame:
/// `e^{iΦ(x′,t)} ψ(x′ + Z(t))`. The grid lies along the first axis.
pub fn transform_wavefunction(
    state: &Wavefunction1D,
    trajectory: &FrameTrajectory,
    particle_mass: f64,
    hbar: f64,
    t: f64,
) -> Result<Wavefunction1D> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidInput(format!("t must be finite and non-negative, got {t}")));
    }
    if !(particle_mass > 0.0) || !(hbar > 0.0) {
        return Err(Error::InvalidInput("mass and hbar must be positive".into()));
    }
    let a = trajectory.acceleration[0];
    let shift = 0.5 * a * t * t;
    let velocity = a * t;
    let action = 0.5 * particle_mass * a * a * t * t * t / 3.0;

    check_wrap(state, shift)?;
    let mut out = translate(state, shift);
    let xs: Vec<f64> = out.positions().collect();
    for (z, x) in out.samples.iter_mut().zip(xs) {
        let phi = (-particle_mass * velocity * x - action) / hbar;
        *z *= Complex64::from_polar(1.0, phi);
    }
    Ok(out)
}

/// Rejects shifts that would drag probability across the periodic seam.
fn check_wrap(state: &Wavefunction1D, shift: f64) -> Result<()> {
    let dx = state.dx();
    let n = state.point_count;
    let strip = ((shift.abs() / dx).ceil() as usize + BOUNDARY_BAND).min(n);
    let range = if shift >= 0.0 { 0..strip } else { n - strip..n };
    let total: f64 = state.samples.iter().map(|z| z.norm_sqr()).sum();
    let lost: f64 = state.samples[range].iter().map(|z| z.norm_sqr()).sum();
    if total > 0.0 && lost / total > BOUNDARY_TOL {
        return Err(Error::Domain(format!(
            "shift {shift} moves {:e} of the probability across the grid boundary",
            lost / total
        )));
    }
    Ok(())
}

/// Numerical check of the transformation for a free Gaussian packet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameCheckSpec {
    pub acceleration: f64,
    pub duration: f64,
    pub points: usize,
    pub steps: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub center: f64,
    pub sigma: f64,
    pub wavenumber: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl Default for FrameCheckSpec {
    fn default() -> Self {
        FrameCheckSpec {
            acceleration: 1.0,
            duration: 1.0,
            points: 2048,
            steps: 4096,
            x_min: -32.0,
            x_max: 32.0,
            center: 0.0,
            sigma: 1.0,
            wavenumber: 0.0,
            mass: 1.0,
            hbar: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameCheckReport {
    pub fidelity: f64,
    pub max_pointwise_error: f64,
    pub grid: usize,
    pub steps: usize,
}

/// Propagates in the inertial frame and transforms, versus transforming
/// the initial data and propagating under `+m a x′`.
pub fn frame_check(spec: &FrameCheckSpec) -> Result<FrameCheckReport> {
    if !(spec.duration > 0.0) || !spec.duration.is_finite() {
        return Err(Error::InvalidInput(format!("duration must be positive, got {}", spec.duration)));
    }
    if spec.steps == 0 {
        return Err(Error::InvalidInput("at least one step is required".into()));
    }
    if !(spec.sigma > 0.0) {
        return Err(Error::InvalidInput(format!("sigma must be positive, got {}", spec.sigma)));
    }
    let psi0 = Wavefunction1D::gaussian(spec.center, spec.sigma, spec.wavenumber, spec.x_min, spec.x_max, spec.points)?;
    let trajectory = FrameTrajectory::along_x(spec.acceleration);
    let dt = spec.duration / spec.steps as f64;

    let inertial = PropagationSpec::free(spec.mass, dt, spec.steps).with_hbar(spec.hbar);
    let psi_t = propagate(&psi0, &inertial)?;
    let via_inertial = transform_wavefunction(&psi_t, &trajectory, spec.mass, spec.hbar, spec.duration)?;

    let (m, a) = (spec.mass, spec.acceleration);
    let accelerated = PropagationSpec::new(move |x, _| m * a * x, spec.mass, dt, spec.steps).with_hbar(spec.hbar);
    let chi0 = transform_wavefunction(&psi0, &trajectory, spec.mass, spec.hbar, 0.0)?;
    let direct = propagate(&chi0, &accelerated)?;

    Ok(FrameCheckReport {
        fidelity: fidelity(&via_inertial, &direct)?,
        max_pointwise_error: via_inertial.max_abs_difference(&direct)?,
        grid: spec.points,
        steps: spec.steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::codata_defaults;
    use crate::separation::{separate_gravitational, FieldSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn codata_model(mbar_e_ratio: f64, mbar_p_ratio: f64) -> MassModel {
        MassModel::from_ratios(&codata_defaults(), 1.0, 1.0, mbar_e_ratio, mbar_p_ratio).unwrap()
    }

    #[test]
    fn trajectory_starts_at_rest() {
        let tr = FrameTrajectory::new([1.0, -2.0, 0.5]);
        assert_eq!(tr.displacement(0.0), [0.0; 3]);
        assert_eq!(tr.velocity(0.0), [0.0; 3]);
        assert_eq!(tr.velocity_sq_integral(0.0), 0.0);
        // second difference of Z recovers a
        let h = 1e-3;
        let t = 0.7;
        for i in 0..3 {
            let d2 = (tr.displacement(t + h)[i] - 2.0 * tr.displacement(t)[i] + tr.displacement(t - h)[i]) / (h * h);
            assert!((d2 - tr.acceleration[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn phase_gradients() {
        let model = codata_model(1.3, 0.9);
        let tr = FrameTrajectory::new([0.0, 0.0, 2.0]);
        let pf = PhaseField::new(&model, &tr, 1.5).unwrap();
        let hbar = codata_defaults().hbar;
        let h = 1.0;
        let base = pf.evaluate([0.0; 3], [0.0; 3], hbar);
        let de = (pf.evaluate([0.0, 0.0, h], [0.0; 3], hbar) - base) / h;
        let dp = (pf.evaluate([0.0; 3], [0.0, 0.0, h], hbar) - base) / h;
        assert!((de - (-model.m_e * 3.0 / hbar)).abs() < 1e-6 * de.abs());
        assert!((dp - (-model.m_p * 3.0 / hbar)).abs() < 1e-6 * dp.abs());
    }

    #[test]
    fn internal_coupling_vanishes_for_any_model() {
        let model = codata_model(7.0, 1.0);
        let h = accelerated_hamiltonian(&model, [0.0, 0.0, 9.8]).unwrap();
        assert_eq!(h.internal_coupling, 0.0);
        assert_eq!(h.effective_grav_mass, model.m_e + model.m_p);
    }

    #[test]
    fn zero_acceleration() {
        let h = accelerated_hamiltonian(&codata_model(2.0, 0.5), [0.0; 3]).unwrap();
        assert_eq!(h.cm_coupling, 0.0);
        assert_eq!(h.internal_coupling, 0.0);
    }

    #[test]
    fn equivalence_restored_against_gravity() {
        let model = MassModel::equivalent(&codata_defaults());
        let a = [0.3, -1.2, 9.8];
        let acc = accelerated_hamiltonian(&model, a).unwrap();
        let field = FieldSpec::from_vector([-a[0], -a[1], -a[2]]).unwrap();
        let grav = separate_gravitational(&model, &field).unwrap();
        assert_eq!(CouplingRecord::from(&acc), CouplingRecord::from(&grav));
    }

    #[test]
    fn randomized_models_never_couple_internally() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let model = MassModel::new(
                rng.random_range(1e-31..1e-26),
                rng.random_range(1e-31..1e-26),
                rng.random_range(-1e-26..1e-26),
                rng.random_range(-1e-26..1e-26),
            )
            .unwrap();
            let a = [rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0)];
            let h = accelerated_hamiltonian(&model, a).unwrap();
            assert_eq!(h.internal_coupling, 0.0);
            assert_eq!(h.effective_grav_mass, model.m_e + model.m_p);
        }
    }

    #[test]
    fn discrepancy_cases() {
        let k = codata_defaults();
        let eq = frame_discrepancy(&MassModel::equivalent(&k), 9.8).unwrap();
        assert_eq!(eq.cm_mass_ratio, 1.0);
        assert_eq!(eq.internal_coupling_difference, 0.0);

        let model = MassModel::new(k.m_e_ref, k.m_p_ref, 0.0, k.m_p_ref).unwrap();
        let mu = k.m_e_ref * k.m_p_ref / (k.m_e_ref + k.m_p_ref);
        let d = frame_discrepancy(&model, 9.8).unwrap();
        assert!((d.internal_coupling_difference - mu * 9.8).abs() <= 1e-14 * mu * 9.8);

        let zero = MassModel::new(k.m_e_ref, k.m_p_ref, -k.m_p_ref, k.m_p_ref).unwrap();
        assert!(matches!(frame_discrepancy(&zero, 9.8), Err(Error::UndefinedRatio(_))));
        assert!(frame_discrepancy(&model, -1.0).is_err());
    }

    #[test]
    fn transform_identity_at_zero_time() {
        let psi = Wavefunction1D::gaussian(0.0, 1.0, 0.5, -32.0, 32.0, 1024).unwrap();
        let out = transform_wavefunction(&psi, &FrameTrajectory::along_x(1.0), 1.0, 1.0, 0.0).unwrap();
        assert!(out.max_abs_difference(&psi).unwrap() < 1e-13);
    }

    #[test]
    fn transform_preserves_norm() {
        let psi = Wavefunction1D::gaussian(1.0, 1.3, -0.5, -32.0, 32.0, 1024).unwrap();
        let out = transform_wavefunction(&psi, &FrameTrajectory::along_x(2.0), 1.0, 1.0, 1.7).unwrap();
        assert!((out.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn transform_rejects_wrap() {
        let psi = Wavefunction1D::gaussian(-24.0, 1.0, 0.0, -32.0, 32.0, 1024).unwrap();
        let err = transform_wavefunction(&psi, &FrameTrajectory::along_x(1.0), 1.0, 1.0, 5.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        assert!(transform_wavefunction(&psi, &FrameTrajectory::along_x(1.0), 1.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn frame_check_default() {
        let r = frame_check(&FrameCheckSpec::default()).unwrap();
        assert!(r.fidelity >= 1.0 - 1e-6, "fidelity {}", r.fidelity);
    }

    #[test]
    fn printed_time_phase_only_changes_global_phase() {
        // The position-independent part of Φ drops out of |⟨·|·⟩|: using
        // a²t³ instead of a²t³/3 leaves the fidelity untouched.
        let psi = Wavefunction1D::gaussian(0.0, 1.0, 0.0, -32.0, 32.0, 1024).unwrap();
        let tr = FrameTrajectory::along_x(1.0);
        let a = transform_wavefunction(&psi, &tr, 1.0, 1.0, 1.0).unwrap();
        let mut b = a.clone();
        b.samples.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, -(1.0 - 1.0 / 3.0) / 2.0));
        assert!((fidelity(&a, &b).unwrap() - 1.0).abs() < 1e-14);
        assert!(a.max_abs_difference(&b).unwrap() > 1e-2);
    }

    #[test]
    fn frame_check_with_trap() {
        // inertial harmonic trap becomes a moving trap plus m a x′
        let (m, a, w) = (1.0, 1.0, 0.8);
        let (steps, t_end) = (2048, 1.0);
        let dt = t_end / steps as f64;
        let tr = FrameTrajectory::along_x(a);
        let psi0 = Wavefunction1D::gaussian(0.5, 1.0, 0.0, -32.0, 32.0, 2048).unwrap();
        let inertial = PropagationSpec::new(move |x, _| 0.5 * m * w * w * x * x, m, dt, steps);
        let via_inertial = transform_wavefunction(&propagate(&psi0, &inertial).unwrap(), &tr, m, 1.0, t_end).unwrap();
        let accelerated = PropagationSpec::new(
            move |x, t| {
                let xi = x + 0.5 * a * t * t;
                0.5 * m * w * w * xi * xi + m * a * x
            },
            m,
            dt,
            steps,
        );
        let direct = propagate(&psi0, &accelerated).unwrap();
        let f = fidelity(&via_inertial, &direct).unwrap();
        assert!(f >= 1.0 - 1e-6, "fidelity {f}");
    }
}
