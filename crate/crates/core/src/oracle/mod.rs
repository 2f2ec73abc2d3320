//! Independent numerical checks of the closed forms: finite-difference
//! radial spectrum, dipole matrix elements, degenerate perturbation theory
//! in the spherical basis, and the box-stabilization scan.

pub mod dipole;
pub mod manifold;
pub mod radial;
pub mod stabilization;
pub mod tridiag;

pub use dipole::dipole_matrix_element;
pub use manifold::{degenerate_pt, perturbation_matrix, z_matrix, ManifoldMatrix, ShiftGroup};
pub use radial::{radial_eigensolve, richardson_energies, RadialEigenpair, RadialGrid, SphericalState};
pub use stabilization::{stabilization_scan, StabilizationPoint, StabilizationSpec};
