//! One-dimensional split-operator propagator with a spectral kinetic step.
//!
//! Each step applies exp(−iV·dt/2ħ)·exp(−iT·dt/ħ)·exp(−iV·dt/2ħ) with the
//! potential sampled at the step midpoint. The grid is periodic; packets
//! must stay clear of the edges, which is checked every step.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 256;
/// Grid points on each edge that must stay (numerically) empty.
pub const BOUNDARY_BAND: usize = 8;
/// Largest probability tolerated inside the boundary band.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Complex amplitudes on the periodic grid x_j = x_min + j·dx,
/// dx = (x_max − x_min)/N.
#[derive(Debug, Clone, PartialEq)]
pub struct Wavefunction1D {
    pub samples: Vec<Complex64>,
    pub x_min: f64,
    pub x_max: f64,
    pub point_count: usize,
}

impl Wavefunction1D {
    pub fn new(samples: Vec<Complex64>, x_min: f64, x_max: f64) -> Result<Self> {
        let n = samples.len();
        if n < MIN_POINTS || !n.is_power_of_two() {
            return Err(Error::out_of_range("point_count", n, "power of two >= 256"));
        }
        if !(x_max > x_min) {
            return Err(Error::InvalidInput(format!("empty domain [{x_min}, {x_max})")));
        }
        Ok(Wavefunction1D {
            samples,
            x_min,
            x_max,
            point_count: n,
        })
    }

    pub fn from_fn<F: Fn(f64) -> Complex64>(f: F, x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        let dx = (x_max - x_min) / n as f64;
        Self::new((0..n).map(|j| f(x_min + j as f64 * dx)).collect(), x_min, x_max)
    }

    /// Normalized Gaussian packet with mean position `center`, position
    /// spread `sigma` and mean wavenumber `k0`.
    pub fn gaussian(center: f64, sigma: f64, k0: f64, x_min: f64, x_max: f64, n: usize) -> Result<Self> {
        let norm = (2.0 * PI * sigma * sigma).powf(-0.25);
        Self::from_fn(
            |x| {
                let u = x - center;
                Complex64::from_polar(norm * (-u * u / (4.0 * sigma * sigma)).exp(), k0 * x)
            },
            x_min,
            x_max,
            n,
        )
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.point_count as f64
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.point_count).map(move |j| self.x(j))
    }

    /// Angular wavenumbers in FFT order.
    pub fn wavenumbers(&self) -> Vec<f64> {
        let n = self.point_count;
        let dk = 2.0 * PI / (self.x_max - self.x_min);
        (0..n)
            .map(|j| if j < n / 2 { j as f64 } else { j as f64 - n as f64 } * dk)
            .collect()
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        self.point_count == other.point_count && self.x_min == other.x_min && self.x_max == other.x_max
    }

    /// ∫|ψ|² by the (periodic) trapezoidal rule.
    pub fn norm_sq(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dx()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        if !self.same_grid(other) {
            return Err(Error::InvalidInput("wavefunctions live on different grids".into()));
        }
        let s: Complex64 = self.samples.iter().zip(&other.samples).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.dx())
    }

    pub fn mean_position(&self) -> f64 {
        self.positions()
            .zip(&self.samples)
            .map(|(x, z)| x * z.norm_sqr())
            .sum::<f64>()
            * self.dx()
            / self.norm_sq()
    }

    /// ⟨k⟩ from the discrete Fourier transform (multiply by ħ for momentum).
    pub fn mean_wavenumber(&self) -> f64 {
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(self.point_count).process(&mut buf);
        let ks = self.wavenumbers();
        let weight: f64 = buf.iter().map(|z| z.norm_sqr()).sum();
        buf.iter().zip(&ks).map(|(z, k)| k * z.norm_sqr()).sum::<f64>() / weight
    }

    /// Fraction of the probability in the outer [`BOUNDARY_BAND`] points.
    pub fn boundary_fraction(&self) -> f64 {
        let n = self.point_count;
        let band: f64 = self.samples[..BOUNDARY_BAND]
            .iter()
            .chain(&self.samples[n - BOUNDARY_BAND..])
            .map(|z| z.norm_sqr())
            .sum();
        let total: f64 = self.samples.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            0.0
        } else {
            band / total
        }
    }

    pub fn max_abs_difference(&self, other: &Self) -> Result<f64> {
        if !self.same_grid(other) {
            return Err(Error::InvalidInput("wavefunctions live on different grids".into()));
        }
        Ok(self
            .samples
            .iter()
            .zip(&other.samples)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).norm())))
    }
}

/// |⟨a|b⟩| / (‖a‖·‖b‖).
pub fn fidelity(a: &Wavefunction1D, b: &Wavefunction1D) -> Result<f64> {
    let na = a.norm();
    let nb = b.norm();
    if na == 0.0 || nb == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok((a.inner(b)?.norm() / (na * nb)).min(1.0))
}

pub type Potential = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Potential energy V(x, t), particle mass, step and step count.
///
/// A negative `dt` runs the evolution backwards.
#[derive(Clone)]
pub struct PropagationSpec {
    pub potential: Potential,
    pub mass: f64,
    pub hbar: f64,
    pub dt: f64,
    pub steps: usize,
    pub t0: f64,
}

impl std::fmt::Debug for PropagationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropagationSpec")
            .field("mass", &self.mass)
            .field("hbar", &self.hbar)
            .field("dt", &self.dt)
            .field("steps", &self.steps)
            .field("t0", &self.t0)
            .finish_non_exhaustive()
    }
}

impl PropagationSpec {
    /// Dimensionless units (ħ = 1) starting at t = 0.
    pub fn new<V>(potential: V, mass: f64, dt: f64, steps: usize) -> Self
    where
        V: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        PropagationSpec {
            potential: Arc::new(potential),
            mass,
            hbar: 1.0,
            dt,
            steps,
            t0: 0.0,
        }
    }

    pub fn free(mass: f64, dt: f64, steps: usize) -> Self {
        Self::new(|_, _| 0.0, mass, dt, steps)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn starting_at(mut self, t0: f64) -> Self {
        self.t0 = t0;
        self
    }

    /// |dt|·E_kin,max/ħ for the given grid, E_kin,max = ħ²(π/dx)²/(2m).
    pub fn stability_number(&self, state: &Wavefunction1D) -> f64 {
        let k_max = PI / state.dx();
        self.dt.abs() * self.hbar * k_max * k_max / (2.0 * self.mass)
    }

    fn validate(&self, state: &Wavefunction1D) -> Result<()> {
        if self.dt == 0.0 || !self.dt.is_finite() {
            return Err(Error::InvalidInput(format!("time step must be non-zero, got {}", self.dt)));
        }
        if self.steps == 0 {
            return Err(Error::InvalidInput("at least one step is required".into()));
        }
        if !(self.mass > 0.0) || !(self.hbar > 0.0) {
            return Err(Error::InvalidInput("mass and hbar must be positive".into()));
        }
        let s = self.stability_number(state);
        if !(s < PI) {
            return Err(Error::Stability(s));
        }
        Ok(())
    }
}

struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scratch: Vec<Complex64>,
}

impl Spectral {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let len = forward
            .get_inplace_scratch_len()
            .max(inverse.get_inplace_scratch_len());
        Spectral {
            forward,
            inverse,
            scratch: vec![Complex64::new(0.0, 0.0); len],
        }
    }

    /// Multiplies the spectrum of `buf` by `factors` (FFT order).
    fn apply(&mut self, buf: &mut [Complex64], factors: &[Complex64]) {
        self.forward.process_with_scratch(buf, &mut self.scratch);
        let inv_n = 1.0 / buf.len() as f64;
        for (z, f) in buf.iter_mut().zip(factors) {
            *z *= f * inv_n;
        }
        self.inverse.process_with_scratch(buf, &mut self.scratch);
    }
}

/// Band-limited translation: returns ψ(x + shift) on the same grid.
pub(crate) fn translate(state: &Wavefunction1D, shift: f64) -> Wavefunction1D {
    let factors: Vec<Complex64> = state
        .wavenumbers()
        .iter()
        .map(|k| Complex64::from_polar(1.0, k * shift))
        .collect();
    let mut out = state.clone();
    Spectral::new(state.point_count).apply(&mut out.samples, &factors);
    out
}

pub fn propagate(state: &Wavefunction1D, spec: &PropagationSpec) -> Result<Wavefunction1D> {
    spec.validate(state)?;
    let mut psi = state.clone();
    let mut spectral = Spectral::new(psi.point_count);
    let kinetic: Vec<Complex64> = psi
        .wavenumbers()
        .iter()
        .map(|k| Complex64::from_polar(1.0, -spec.hbar * k * k * spec.dt / (2.0 * spec.mass)))
        .collect();
    let xs: Vec<f64> = psi.positions().collect();
    let half = spec.dt / (2.0 * spec.hbar);
    let mut kick = vec![Complex64::new(1.0, 0.0); xs.len()];
    for step in 0..spec.steps {
        let t_mid = spec.t0 + (step as f64 + 0.5) * spec.dt;
        for (k, &x) in kick.iter_mut().zip(&xs) {
            *k = Complex64::from_polar(1.0, -(spec.potential)(x, t_mid) * half);
        }
        for (z, k) in psi.samples.iter_mut().zip(&kick) {
            *z *= k;
        }
        spectral.apply(&mut psi.samples, &kinetic);
        for (z, k) in psi.samples.iter_mut().zip(&kick) {
            *z *= k;
        }
        if psi.samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite(step));
        }
        let escaped = psi.boundary_fraction();
        if escaped > BOUNDARY_TOL {
            return Err(Error::BoundaryEscape(format!(
                "{escaped:e} of the probability in the edge band at step {step}"
            )));
        }
    }
    Ok(psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed-form free Gaussian (ħ = m = 1) with initial spread σ and
    /// wavenumber k0, centred at x0.
    fn free_gaussian(x: f64, t: f64, x0: f64, sigma: f64, k0: f64) -> Complex64 {
        let i = Complex64::i();
        let a = Complex64::new(1.0, 0.0) + i * t / (2.0 * sigma * sigma);
        let u = x - x0 - k0 * t;
        let pref = (2.0 * PI * sigma * sigma).powf(-0.25) / a.sqrt();
        let phase = i * k0 * (x - x0 - 0.5 * k0 * t) + i * k0 * x0;
        pref * (-(u * u) / (4.0 * sigma * sigma * a) + phase).exp()
    }

    fn grid_gaussian() -> Wavefunction1D {
        Wavefunction1D::gaussian(0.0, 1.0, 0.0, -32.0, 32.0, 1024).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert!(Wavefunction1D::new(vec![Complex64::default(); 300], 0.0, 1.0).is_err());
        assert!(Wavefunction1D::new(vec![Complex64::default(); 128], 0.0, 1.0).is_err());
        assert!(Wavefunction1D::new(vec![Complex64::default(); 256], 1.0, 1.0).is_err());
    }

    #[test]
    fn gaussian_normalized() {
        assert!((grid_gaussian().norm() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn free_gaussian_matches_closed_form() {
        let (x0, sigma, k0, t) = (-3.0, 1.0, 2.0, 2.0);
        let psi = Wavefunction1D::gaussian(x0, sigma, k0, -40.0, 40.0, 2048).unwrap();
        let out = propagate(&psi, &PropagationSpec::free(1.0, t / 4000.0, 4000)).unwrap();
        let exact = Wavefunction1D::from_fn(|x| free_gaussian(x, t, x0, sigma, k0), -40.0, 40.0, 2048).unwrap();
        let err = out.max_abs_difference(&exact).unwrap();
        assert!(err < 1e-8, "max error {err}");
    }

    #[test]
    fn fidelity_basics() {
        let psi = grid_gaussian();
        assert!((fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-14);
        let mut rotated = psi.clone();
        rotated.samples.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, 0.7));
        assert!((fidelity(&psi, &rotated).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn hermite_modes_orthogonal() {
        // ground and first excited oscillator states
        let h0 = Wavefunction1D::from_fn(|x| Complex64::new((-x * x / 2.0).exp(), 0.0), -20.0, 20.0, 512).unwrap();
        let h1 = Wavefunction1D::from_fn(|x| Complex64::new(x * (-x * x / 2.0).exp(), 0.0), -20.0, 20.0, 512).unwrap();
        assert!(fidelity(&h0, &h1).unwrap() < 1e-12);
        let h2 = Wavefunction1D::from_fn(|x| Complex64::new((2.0 * x * x - 1.0) * (-x * x / 2.0).exp(), 0.0), -20.0, 20.0, 512).unwrap();
        assert!(fidelity(&h0, &h2).unwrap() < 1e-12);
    }

    #[test]
    fn zero_norm_rejected() {
        let zero = Wavefunction1D::new(vec![Complex64::default(); 256], 0.0, 1.0).unwrap();
        assert_eq!(fidelity(&zero, &zero), Err(Error::ZeroNorm));
    }

    #[test]
    fn stability_bound_enforced() {
        let psi = grid_gaussian();
        // k_max = π/dx = 16π, E_max ≈ 1263; dt = 0.01 gives ≈ 12.6 > π
        let err = propagate(&psi, &PropagationSpec::free(1.0, 0.01, 1)).unwrap_err();
        assert!(matches!(err, Error::Stability(_)));
    }

    #[test]
    fn boundary_escape_detected() {
        let psi = Wavefunction1D::gaussian(0.0, 1.0, 20.0, -32.0, 32.0, 1024).unwrap();
        let err = propagate(&psi, &PropagationSpec::free(1.0, 1e-3, 3000)).unwrap_err();
        assert!(matches!(err, Error::BoundaryEscape(_)));
    }

    #[test]
    fn non_finite_potential_aborts() {
        let psi = grid_gaussian();
        let spec = PropagationSpec::new(|x, _| if x > 0.0 { f64::NAN } else { 0.0 }, 1.0, 1e-3, 5);
        assert!(matches!(propagate(&psi, &spec), Err(Error::NotFinite(0))));
    }

    #[test]
    fn translation_is_band_limited_shift() {
        let psi = Wavefunction1D::gaussian(0.0, 1.0, 1.5, -32.0, 32.0, 1024).unwrap();
        let shifted = translate(&psi, 0.37);
        let want = Wavefunction1D::gaussian(-0.37, 1.0, 1.5, -32.0, 32.0, 1024).unwrap();
        // ψ(x + s) of a packet with k0 carries the extra phase e^{i k0 s}
        let mut want = want;
        want.samples.iter_mut().for_each(|z| *z *= Complex64::from_polar(1.0, 1.5 * 0.37));
        assert!(shifted.max_abs_difference(&want).unwrap() < 1e-12);
    }

    fn harmonic(dt: f64, steps: usize) -> PropagationSpec {
        PropagationSpec::new(|x, _| 0.5 * x * x, 1.0, dt, steps)
    }

    fn coherent(x0: f64) -> Wavefunction1D {
        Wavefunction1D::gaussian(x0, 0.5f64.sqrt(), 0.0, -16.0, 16.0, 512).unwrap()
    }

    fn l2_distance(a: &Wavefunction1D, b: &Wavefunction1D) -> f64 {
        a.samples.iter().zip(&b.samples).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt() * a.dx().sqrt()
    }

    #[test]
    fn coherent_state_returns_after_one_period() {
        let psi = coherent(3.0);
        let steps = 4096;
        let out = propagate(&psi, &harmonic(2.0 * PI / steps as f64, steps)).unwrap();
        let f = fidelity(&psi, &out).unwrap();
        assert!(f >= 1.0 - 1e-8, "fidelity {f}");
    }

    #[test]
    fn second_order_in_dt() {
        let psi = Wavefunction1D::gaussian(2.0, 0.5f64.sqrt(), 0.0, -16.0, 16.0, 256).unwrap();
        let t = 1.0;
        let run = |steps: usize| propagate(&psi, &harmonic(t / steps as f64, steps)).unwrap();
        let reference = run(8192);
        let e1 = l2_distance(&run(256), &reference);
        let e2 = l2_distance(&run(512), &reference);
        let ratio = e1 / e2;
        assert!((3.5..4.5).contains(&ratio), "error ratio {ratio}");
    }

    #[test]
    fn unitary_over_ten_thousand_steps() {
        let psi = Wavefunction1D::gaussian(1.0, 0.8, 0.5, -16.0, 16.0, 256).unwrap();
        let out = propagate(&psi, &harmonic(1e-3, 10_000)).unwrap();
        assert!((out.norm_sq() - psi.norm_sq()).abs() < 1e-10);
    }

    #[test]
    fn time_reversal() {
        let psi = Wavefunction1D::gaussian(0.5, 1.0, 1.0, -16.0, 16.0, 512).unwrap();
        let potential = |x: f64, t: f64| 0.5 * x * x + 0.3 * x * t.sin();
        let (dt, steps) = (2e-3, 750);
        let forward = PropagationSpec::new(potential, 1.0, dt, steps);
        let t_end = dt * steps as f64;
        let backward = PropagationSpec::new(potential, 1.0, -dt, steps).starting_at(t_end);
        let back = propagate(&propagate(&psi, &forward).unwrap(), &backward).unwrap();
        let f = fidelity(&psi, &back).unwrap();
        assert!(f >= 1.0 - 1e-9, "fidelity {f}");
        assert!(back.max_abs_difference(&psi).unwrap() < 1e-10);
    }

    #[test]
    fn linear_potential_kicks_momentum() {
        let force = 0.5;
        let psi = Wavefunction1D::gaussian(-4.0, 1.0, 1.0, -32.0, 32.0, 1024).unwrap();
        let (dt, steps) = (1e-3, 2000);
        let k_before = psi.mean_wavenumber();
        let out = propagate(&psi, &PropagationSpec::new(move |x, _| -force * x, 1.0, dt, steps)).unwrap();
        let kick = out.mean_wavenumber() - k_before;
        let want = force * dt * steps as f64;
        assert!((kick - want).abs() <= 1e-8 * want, "kick {kick} vs {want}");
    }
}
