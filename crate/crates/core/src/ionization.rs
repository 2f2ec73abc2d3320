//! Quasi-stationary lifetime of the ground state when the internal coupling
//! 𝓜g is non-zero: the Stark-analogue closed form and an independent WKB
//! barrier-penetration estimate.
//!
//! Both lifetimes are carried in log space; the exponents involved reach
//! 1e22 for terrestrial g.

use std::f64::consts::{LN_10, PI};

use serde::Serialize;

use crate::constants::{atomic_scale, PhysicalConstants};
use crate::error::{Error, Result};
use crate::mass::CompositeMasses;
use crate::quadrature::integrate;
use crate::separation::FieldSpec;

/// Above this exponent τ itself would overflow; only log10 τ is kept.
pub const OVERFLOW_EXPONENT: f64 = 700.0;
/// Ground-state energy used in the barrier integral (Hartree).
pub const GROUND_ENERGY: f64 = -0.5;
/// Ratio window outside which the two exponents are flagged as disagreeing.
pub const RATIO_WINDOW: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonanceEstimate {
    /// |𝓜|·g (N).
    pub internal_force: f64,
    /// |𝓜|·g in atomic units of the reduced mass.
    pub force_atomic: f64,
    /// 𝓜għ²/(4mₑ³c⁵α⁵) (s).
    pub prefactor_eq7: f64,
    /// mₑ²c³α³/(𝓜għ).
    pub exponent_eq7: f64,
    /// τ in seconds when the exponent is below [`OVERFLOW_EXPONENT`].
    pub tau_eq7: Option<f64>,
    pub log10_tau_eq7: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Lifetime {
    /// 𝓜g = 0: the internal equation is field-free and the atom is stable.
    Stable,
    Decaying(ResonanceEstimate),
}

impl Lifetime {
    pub fn is_stable(&self) -> bool {
        matches!(self, Lifetime::Stable)
    }
}

fn internal_force(composites: &CompositeMasses, field: &FieldSpec) -> f64 {
    (composites.script_m * field.magnitude).abs()
}

pub fn lifetime_eq7(
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<Lifetime> {
    let force = internal_force(composites, field);
    if force == 0.0 {
        return Ok(Lifetime::Stable);
    }
    let PhysicalConstants { hbar, c, alpha, .. } = *constants;
    let m_e = composites.electron;
    let prefactor = force * hbar * hbar / (4.0 * m_e.powi(3) * c.powi(5) * alpha.powi(5));
    let exponent = m_e * m_e * c.powi(3) * alpha.powi(3) / (force * hbar);
    let log10_tau = prefactor.log10() + exponent / LN_10;
    let tau = (exponent <= OVERFLOW_EXPONENT).then(|| prefactor * exponent.exp());
    let scale = atomic_scale(constants, composites.reduced)?;
    Ok(Lifetime::Decaying(ResonanceEstimate {
        internal_force: force,
        force_atomic: scale.force_to_au(force),
        prefactor_eq7: prefactor,
        exponent_eq7: exponent,
        tau_eq7: tau,
        log10_tau_eq7: log10_tau,
    }))
}

/// Barrier-penetration result in atomic units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WkbBarrier {
    pub force_atomic: f64,
    pub inner_turning_point: f64,
    pub outer_turning_point: f64,
    /// 2∫√(2(V − E)) dx across the barrier.
    pub exponent: f64,
    /// |E|/π (atomic units).
    pub attempt_frequency: f64,
}

impl WkbBarrier {
    /// ln of the decay rate in atomic units.
    pub fn ln_rate(&self) -> f64 {
        self.attempt_frequency.ln() - self.exponent
    }
}

fn potential(x: f64, force: f64, softening: f64) -> f64 {
    let coulomb = if softening > 0.0 {
        -1.0 / (x * x + softening * softening).sqrt()
    } else {
        -1.0 / x
    };
    coulomb - force * x
}

/// Bisection for a sign change of `f` in `[lo, hi]`, relative tolerance 1e-12.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> Result<f64> {
    let f_lo = f(lo);
    if f_lo.signum() == f(hi).signum() {
        return Err(Error::NoBarrier("turning point not bracketed".into()));
    }
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= 1e-12 * mid.abs() || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        if f(mid).signum() == f_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// WKB exponent for the ground state in V(x) = −1/x − F·x (F > 0, atomic
/// units), optionally with a softened Coulomb core.
///
/// The integral runs over x = x₁ + (x₂ − x₁)·sin²θ, which removes the
/// square-root endpoint behaviour at both turning points.
pub fn wkb_barrier(force_au: f64, softening: f64) -> Result<WkbBarrier> {
    if !(force_au > 0.0) || !force_au.is_finite() {
        return Err(Error::InvalidInput(format!(
            "internal force must be positive and finite, got {force_au}"
        )));
    }
    if !(softening >= 0.0) {
        return Err(Error::InvalidInput(format!("softening must be non-negative, got {softening}")));
    }
    let energy = GROUND_ENERGY;
    let excess = |x: f64| potential(x, force_au, softening) - energy;

    // barrier top: dV/dx = x/(x² + s²)^{3/2} − F = 0 on the decreasing branch
    let slope = |x: f64| x / (x * x + softening * softening).powf(1.5) - force_au;
    let start = (softening / 2f64.sqrt()).max(1e-300);
    if slope(start) <= 0.0 && softening > 0.0 {
        return Err(Error::NoBarrier(format!("force {force_au} exceeds the softened core's pull")));
    }
    let far = 2.0 / force_au.sqrt() + softening + 1.0;
    let top = if softening > 0.0 {
        bisect(slope, start, far)?
    } else {
        1.0 / force_au.sqrt()
    };
    if excess(top) <= 0.0 {
        return Err(Error::NoBarrier(format!(
            "barrier top {:.6} Hartree lies below the level {energy}",
            potential(top, force_au, softening)
        )));
    }
    let inner = bisect(excess, 1e-12_f64.max(softening * 1e-12), top)?;
    let mut outer_hi = 2.0 * top;
    while excess(outer_hi) > 0.0 {
        outer_hi *= 2.0;
        if !outer_hi.is_finite() {
            return Err(Error::NoBarrier("outer turning point not found".into()));
        }
    }
    let outer = bisect(excess, top, outer_hi)?;
    let width = outer - inner;
    let integrand = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let x = inner + width * s * s;
        let k = (2.0 * excess(x)).max(0.0).sqrt();
        k * 2.0 * width * s * c
    };
    let half = integrate(integrand, 0.0, std::f64::consts::FRAC_PI_2, 1e-12)?;
    Ok(WkbBarrier {
        force_atomic: force_au,
        inner_turning_point: inner,
        outer_turning_point: outer,
        exponent: 2.0 * half,
        attempt_frequency: energy.abs() / PI,
    })
}

/// WKB decay rate (1/s) and exponent for the model's internal force.
///
/// The rate is returned as log10 because it underflows for weak fields.
pub fn wkb_rate(
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
    softening: f64,
) -> Result<(f64, WkbBarrier)> {
    let scale = atomic_scale(constants, composites.reduced)?;
    let force_au = scale.force_to_au(internal_force(composites, field));
    let barrier = wkb_barrier(force_au, softening)?;
    let log10_rate = barrier.ln_rate() / LN_10 - scale.time_atomic.log10();
    Ok((log10_rate, barrier))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LifetimeComparison {
    pub script_m: f64,
    pub g: f64,
    pub force_atomic: f64,
    pub exponent_eq7: f64,
    pub log10_tau_eq7: f64,
    pub wkb_exponent: f64,
    pub log10_tau_wkb: f64,
    /// exponent_eq7 / wkb_exponent.
    pub ratio: f64,
    pub ratio_outside_window: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ComparisonReport {
    Stable { script_m: f64, g: f64 },
    Compared(LifetimeComparison),
}

pub fn compare_lifetimes(
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<ComparisonReport> {
    let est = match lifetime_eq7(composites, field, constants)? {
        Lifetime::Stable => {
            return Ok(ComparisonReport::Stable {
                script_m: composites.script_m,
                g: field.magnitude,
            })
        }
        Lifetime::Decaying(est) => est,
    };
    let (log10_rate, barrier) = wkb_rate(composites, field, constants, 0.0)?;
    let ratio = est.exponent_eq7 / barrier.exponent;
    Ok(ComparisonReport::Compared(LifetimeComparison {
        script_m: composites.script_m,
        g: field.magnitude,
        force_atomic: est.force_atomic,
        exponent_eq7: est.exponent_eq7,
        log10_tau_eq7: est.log10_tau_eq7,
        wkb_exponent: barrier.exponent,
        log10_tau_wkb: -log10_rate,
        ratio,
        ratio_outside_window: !(RATIO_WINDOW.0..=RATIO_WINDOW.1).contains(&ratio),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::codata_defaults;
    use crate::mass::{derive_composites, MassModel};

    fn model_with(script_m_ratio: f64) -> (CompositeMasses, PhysicalConstants) {
        let k = codata_defaults();
        let m = MassModel::from_script_m(k.m_e_ref, k.m_p_ref, script_m_ratio * k.m_e_ref).unwrap();
        (derive_composites(&m).unwrap(), k)
    }

    fn decaying(l: Lifetime) -> ResonanceEstimate {
        match l {
            Lifetime::Decaying(e) => e,
            Lifetime::Stable => panic!("expected a finite lifetime"),
        }
    }

    #[test]
    fn terrestrial_exponent() {
        let (c, k) = model_with(1.0);
        let e = decaying(lifetime_eq7(&c, &FieldSpec::along_z(9.8).unwrap(), &k).unwrap());
        // mₑc³α³/(għ) evaluated by hand: 9.2288e21
        assert!((e.exponent_eq7 / 9.2288e21 - 1.0).abs() < 1e-5, "{}", e.exponent_eq7);
        assert!(e.tau_eq7.is_none());
        assert!(e.log10_tau_eq7.is_finite() && e.log10_tau_eq7 > 1e21);
    }

    #[test]
    fn doubling_force_halves_exponent() {
        let (c, k) = model_with(1.0);
        let a = decaying(lifetime_eq7(&c, &FieldSpec::along_z(9.8).unwrap(), &k).unwrap());
        let b = decaying(lifetime_eq7(&c, &FieldSpec::along_z(19.6).unwrap(), &k).unwrap());
        assert!((a.exponent_eq7 / b.exponent_eq7 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn equivalence_is_stable() {
        let k = codata_defaults();
        let c = derive_composites(&MassModel::equivalent(&k)).unwrap();
        assert!(lifetime_eq7(&c, &FieldSpec::along_z(9.8).unwrap(), &k).unwrap().is_stable());
        let (c, _) = model_with(1.0);
        assert!(lifetime_eq7(&c, &FieldSpec::along_z(0.0).unwrap(), &k).unwrap().is_stable());
    }

    #[test]
    fn moderate_field_reports_tau() {
        let k = codata_defaults();
        let (c, _) = model_with(1.0);
        // choose g so that F ≈ 0.02 a.u.
        let s = atomic_scale(&k, c.reduced).unwrap();
        let g = 0.02 * s.force_atomic / c.script_m;
        let e = decaying(lifetime_eq7(&c, &FieldSpec::along_z(g).unwrap(), &k).unwrap());
        let tau = e.tau_eq7.unwrap();
        assert!((tau.log10() - e.log10_tau_eq7).abs() < 1e-12);
        assert!((tau / (e.prefactor_eq7 * e.exponent_eq7.exp()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wkb_linear_barrier_limit() {
        for f in [1e-6, 1e-5, 1e-4] {
            let b = wkb_barrier(f, 0.0).unwrap();
            let asymptotic = 2.0 / (3.0 * f);
            assert!((b.exponent / asymptotic - 1.0).abs() < 0.1, "F={f}: {}", b.exponent);
        }
    }

    #[test]
    fn wkb_doubling_halves() {
        for f in [1e-6, 1e-5, 5e-5] {
            let a = wkb_barrier(f, 0.0).unwrap().exponent;
            let b = wkb_barrier(2.0 * f, 0.0).unwrap().exponent;
            assert!((a / b / 2.0 - 1.0).abs() < 0.1);
        }
    }

    #[test]
    fn turning_points_solve_level_equation() {
        let f = 1e-3;
        let b = wkb_barrier(f, 0.0).unwrap();
        // roots of 2F x² − x + 2 = 0
        let disc = (1.0 - 16.0 * f).sqrt();
        let x1 = (1.0 - disc) / (4.0 * f);
        let x2 = (1.0 + disc) / (4.0 * f);
        assert!((b.inner_turning_point / x1 - 1.0).abs() < 1e-11);
        assert!((b.outer_turning_point / x2 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn barrier_suppressed() {
        assert!(matches!(wkb_barrier(0.07, 0.0), Err(Error::NoBarrier(_))));
        assert!(wkb_barrier(0.06, 0.0).is_ok());
        assert!(wkb_barrier(0.0, 0.0).is_err());
    }

    #[test]
    fn softening_raises_barrier_exponent() {
        // −1/√(x²+s²) > −1/x everywhere, so the softened barrier is higher
        let hard = wkb_barrier(1e-3, 0.0).unwrap().exponent;
        let soft = wkb_barrier(1e-3, 0.5).unwrap().exponent;
        assert!(soft > hard);
    }

    #[test]
    fn terrestrial_comparison() {
        let (c, k) = model_with(1.0);
        let ComparisonReport::Compared(r) = compare_lifetimes(&c, &FieldSpec::along_z(9.8).unwrap(), &k).unwrap() else {
            panic!("expected comparison")
        };
        assert!(r.exponent_eq7 > 1e21 && r.exponent_eq7 < 1e22);
        assert!(r.wkb_exponent > 1e21 && r.wkb_exponent < 1e22);
        assert!(r.ratio.is_finite() && !r.ratio_outside_window);
    }

    #[test]
    fn stable_comparison() {
        let k = codata_defaults();
        let c = derive_composites(&MassModel::equivalent(&k)).unwrap();
        let r = compare_lifetimes(&c, &FieldSpec::along_z(9.8).unwrap(), &k).unwrap();
        assert!(matches!(r, ComparisonReport::Stable { .. }));
    }

    #[test]
    fn weak_field_lifetimes_are_long() {
        let k = codata_defaults();
        let (c, _) = model_with(1.0);
        let s = atomic_scale(&k, c.reduced).unwrap();
        let g = 1e-6 * s.force_atomic / c.script_m;
        let ComparisonReport::Compared(r) = compare_lifetimes(&c, &FieldSpec::along_z(g).unwrap(), &k).unwrap() else {
            panic!()
        };
        assert!(r.log10_tau_eq7 > 1e5 && r.log10_tau_wkb > 1e5);
    }
}
