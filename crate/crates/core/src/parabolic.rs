//! Parabolic-basis hydrogen levels and the closed-form first-order
//! gravitational Stark shift.

use serde::Serialize;

use crate::constants::{atomic_scale, PhysicalConstants};
use crate::error::{Error, Result};
use crate::mass::CompositeMasses;
use crate::separation::FieldSpec;

pub const MAX_N: u32 = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParabolicLevel {
    pub n: u32,
    pub n1: u32,
    pub n2: u32,
    pub m: i32,
    pub k: i32,
    /// Unperturbed energy −μc²α²/(2n²) (J); zero until evaluated.
    pub e0: f64,
    /// First-order shift (J); zero until evaluated.
    pub shift: f64,
}

impl ParabolicLevel {
    pub fn energy(&self) -> f64 {
        self.e0 + self.shift
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::out_of_range("n", n, "1..=50"));
    }
    Ok(())
}

/// All n² states of the n-manifold, ordered by descending k, then by
/// descending m.
pub fn enumerate_levels(n: u32) -> Result<Vec<ParabolicLevel>> {
    check_n(n)?;
    let mut levels = Vec::with_capacity((n * n) as usize);
    for n1 in 0..n {
        for n2 in 0..(n - n1) {
            let abs_m = n - 1 - n1 - n2;
            let ms: &[i32] = if abs_m == 0 {
                &[0]
            } else {
                &[abs_m as i32, -(abs_m as i32)]
            };
            for &m in ms {
                levels.push(ParabolicLevel {
                    n,
                    n1,
                    n2,
                    m,
                    k: n1 as i32 - n2 as i32,
                    e0: 0.0,
                    shift: 0.0,
                });
            }
        }
    }
    levels.sort_by(|a, b| b.k.cmp(&a.k).then(b.m.cmp(&a.m)));
    Ok(levels)
}

/// Reduced-mass Bohr energy −μc²α²/(2n²) (J).
pub fn unperturbed_energy(n: u32, composites: &CompositeMasses, constants: &PhysicalConstants) -> f64 {
    let nf = f64::from(n);
    -composites.reduced * constants.c * constants.c * constants.alpha * constants.alpha / (2.0 * nf * nf)
}

/// −3·𝓜·g·ħ·n·k / (2·μ·α·c) (J).
pub fn first_order_shift(
    level: &ParabolicLevel,
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> f64 {
    stark_shift(level.n, level.k, composites, field, constants)
}

fn stark_shift(n: u32, k: i32, c: &CompositeMasses, field: &FieldSpec, consts: &PhysicalConstants) -> f64 {
    let nk = f64::from(n) * f64::from(k);
    -3.0 * c.script_m * field.magnitude * consts.hbar * nk / (2.0 * c.reduced * consts.alpha * consts.c)
}

/// Levels of the n-manifold with E0 and shift filled in.
pub fn evaluate_levels(
    n: u32,
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<Vec<ParabolicLevel>> {
    let e0 = unperturbed_energy(n, composites, constants);
    Ok(enumerate_levels(n)?
        .into_iter()
        .map(|mut l| {
            l.e0 = e0;
            l.shift = first_order_shift(&l, composites, field, constants);
            l
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sublevel {
    pub k: i32,
    pub shift: f64,
    pub energy: f64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SplittingTable {
    pub n: u32,
    pub e0: f64,
    /// Descending k.
    pub sublevels: Vec<Sublevel>,
    pub spacing: f64,
}

impl SplittingTable {
    /// Largest relative deviation of adjacent shift gaps from `spacing`.
    ///
    /// Measured on the shifts: at realistic fields the shift lies far below
    /// the resolution of E0 in double precision.
    pub fn spacing_nonuniformity(&self) -> f64 {
        if self.spacing == 0.0 {
            return self
                .sublevels
                .iter()
                .fold(0.0f64, |m, s| m.max(s.shift.abs()));
        }
        self.sublevels
            .windows(2)
            .map(|w| ((w[0].shift - w[1].shift).abs() - self.spacing).abs() / self.spacing)
            .fold(0.0, f64::max)
    }
}

pub fn splitting_table(
    n: u32,
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<SplittingTable> {
    let levels = enumerate_levels(n)?;
    let e0 = unperturbed_energy(n, composites, constants);
    let top = n as i32 - 1;
    let sublevels = (-top..=top)
        .rev()
        .map(|k| {
            let shift = stark_shift(n, k, composites, field, constants);
            Sublevel {
                k,
                shift,
                energy: e0 + shift,
                multiplicity: levels.iter().filter(|l| l.k == k).count() as u32,
            }
        })
        .collect();
    let spacing = if n == 1 {
        0.0
    } else {
        3.0 * composites.script_m.abs() * field.magnitude * constants.hbar * f64::from(n)
            / (2.0 * composites.reduced * constants.alpha * constants.c)
    };
    Ok(SplittingTable {
        n,
        e0,
        sublevels,
        spacing,
    })
}

/// Internal force 𝓜g expressed in atomic units of the reduced mass.
pub fn internal_force_au(
    composites: &CompositeMasses,
    field: &FieldSpec,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let scale = atomic_scale(constants, composites.reduced)?;
    Ok(scale.force_to_au(composites.script_m * field.magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::codata_defaults;
    use crate::mass::{derive_composites, MassModel};
    use std::collections::{BTreeMap, HashSet};

    fn setup(ratio: f64, g: f64) -> (CompositeMasses, FieldSpec, PhysicalConstants) {
        let k = codata_defaults();
        let m = MassModel::from_ratios(&k, 1.0, 1.0, ratio, 1.0).unwrap();
        (derive_composites(&m).unwrap(), FieldSpec::along_z(g).unwrap(), k)
    }

    /// Brute-force count of (n1, n2, m) with n1 + n2 + |m| + 1 = n.
    fn brute_force(n: u32) -> Vec<(u32, u32, i32)> {
        let n_i = n as i32;
        let mut out = vec![];
        for n1 in 0..n_i {
            for n2 in 0..n_i {
                for m in -n_i..=n_i {
                    if n1 + n2 + m.abs() + 1 == n_i {
                        out.push((n1 as u32, n2 as u32, m));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn ground_manifold() {
        let l = enumerate_levels(1).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!((l[0].n1, l[0].n2, l[0].m, l[0].k), (0, 0, 0, 0));
    }

    #[test]
    fn n2_manifold() {
        let l = enumerate_levels(2).unwrap();
        let got: HashSet<_> = l.iter().map(|l| (l.n1, l.n2, l.m)).collect();
        let want: HashSet<_> = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1)].into_iter().collect();
        assert_eq!(got, want);
        let mut ks: Vec<_> = l.iter().map(|l| l.k).collect();
        ks.sort();
        assert_eq!(ks, vec![-1, 0, 0, 1]);
    }

    #[test]
    fn n3_manifold() {
        let l = enumerate_levels(3).unwrap();
        assert_eq!(l.len(), 9);
        let ks: HashSet<_> = l.iter().map(|l| l.k).collect();
        assert_eq!(ks, (-2..=2).collect());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=12 {
            let got: HashSet<_> = enumerate_levels(n).unwrap().iter().map(|l| (l.n1, l.n2, l.m)).collect();
            let want: HashSet<_> = brute_force(n).into_iter().collect();
            assert_eq!(got.len() as u32, n * n);
            assert_eq!(got, want);
            for l in enumerate_levels(n).unwrap() {
                assert_eq!(l.n, l.n1 + l.n2 + l.m.unsigned_abs() + 1);
                assert!(l.k.unsigned_abs() < n);
            }
        }
    }

    #[test]
    fn n_out_of_range() {
        assert!(enumerate_levels(0).is_err());
        assert!(enumerate_levels(51).is_err());
        assert_eq!(enumerate_levels(50).unwrap().len(), 2500);
    }

    #[test]
    fn zero_coupling_no_shift() {
        let (c, f, k) = setup(1.0, 9.8);
        for l in evaluate_levels(3, &c, &f, &k).unwrap() {
            assert_eq!(l.shift, 0.0);
        }
    }

    #[test]
    fn shift_scales_with_nk() {
        let (c, f, k) = setup(1.1, 9.8);
        let lv = |n, k_| ParabolicLevel { n, n1: 0, n2: 0, m: 0, k: k_, e0: 0.0, shift: 0.0 };
        let a = first_order_shift(&lv(2, 1), &c, &f, &k);
        let b = first_order_shift(&lv(3, 2), &c, &f, &k);
        assert!((a / b - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn shift_in_atomic_units() {
        let k = codata_defaults();
        let m = MassModel::new(k.m_e_ref, k.m_p_ref, 0.0, k.m_p_ref).unwrap();
        let c = derive_composites(&m).unwrap();
        let f = FieldSpec::along_z(9.8).unwrap();
        let s = atomic_scale(&k, c.reduced).unwrap();
        let lv = ParabolicLevel { n: 2, n1: 1, n2: 0, m: 0, k: 1, e0: 0.0, shift: 0.0 };
        let shift = first_order_shift(&lv, &c, &f, &k);
        let force = c.script_m * 9.8;
        assert!((shift / (-3.0 * force * s.length_bohr) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn e0_is_bohr_formula() {
        let (c, _, k) = setup(1.0, 0.0);
        let s = atomic_scale(&k, c.reduced).unwrap();
        for n in 1..6 {
            assert!((unperturbed_energy(n, &c, &k) / s.bohr_energy(n) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn n2_table() {
        let (c, f, k) = setup(1.1, 9.8);
        let t = splitting_table(2, &c, &f, &k).unwrap();
        let mult: Vec<_> = t.sublevels.iter().map(|s| s.multiplicity).collect();
        assert_eq!(mult, vec![1, 2, 1]);
        let ks: Vec<_> = t.sublevels.iter().map(|s| s.k).collect();
        assert_eq!(ks, vec![1, 0, -1]);
    }

    #[test]
    fn n1_table() {
        let (c, f, k) = setup(1.1, 9.8);
        let t = splitting_table(1, &c, &f, &k).unwrap();
        assert_eq!(t.sublevels.len(), 1);
        assert_eq!(t.spacing, 0.0);
    }

    #[test]
    fn spacing_linear_in_g() {
        let (c, f, k) = setup(1.1, 9.8);
        let (_, f2, _) = setup(1.1, 19.6);
        let a = splitting_table(4, &c, &f, &k).unwrap().spacing;
        let b = splitting_table(4, &c, &f2, &k).unwrap().spacing;
        assert!((b / a - 2.0).abs() < 1e-14);
    }

    #[test]
    fn table_structure_all_n() {
        let (c, f, k) = setup(0.7, 9.8);
        for n in 1..=MAX_N {
            let t = splitting_table(n, &c, &f, &k).unwrap();
            assert_eq!(t.sublevels.len() as u32, 2 * n - 1);
            assert_eq!(t.sublevels.iter().map(|s| s.multiplicity).sum::<u32>(), n * n);
            for s in &t.sublevels {
                assert_eq!(s.multiplicity, n - s.k.unsigned_abs());
            }
            assert!(t.spacing_nonuniformity() < 1e-12);
            let by_k: BTreeMap<i32, f64> = t.sublevels.iter().map(|s| (s.k, s.shift)).collect();
            for (&kk, &sh) in &by_k {
                assert_eq!(sh, -by_k[&-kk]);
            }
        }
    }

    #[test]
    fn energy_decreasing_in_k_for_positive_coupling() {
        // m̄_e < m_e gives 𝓜 > 0
        let (c, f, k) = setup(0.5, 9.8);
        assert!(c.script_m > 0.0);
        let t = splitting_table(5, &c, &f, &k).unwrap();
        // sublevels are in descending k, so shifts must increase along the list
        for w in t.sublevels.windows(2) {
            assert!(w[0].shift < w[1].shift);
        }
    }
}
