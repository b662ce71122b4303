//! Quantitative photoacoustic tomography with single-plane illumination.
//!
//! This crate models the pressure signal recorded when a specimen with weakly
//! varying sound speed and mass density is illuminated plane by plane, and
//! recovers all three constitutive unknowns from those signals:
//!
//! * the absorbed-energy source `f` (Grüneisen parameter times absorption,
//!   times fluence),
//! * the sound-speed perturbation `α₁`,
//! * the mass-density perturbation `ρ₁`.
//!
//! The forward model is a first-order (Born) expansion of the variable-speed,
//! variable-density wave equation around a homogeneous background. Its kernel
//! `K(t, x, y; ε)` is an integral over the prolate spheroid with foci `x` and
//! `y`, evaluated here by quadrature in focal coordinates where the geometric
//! Jacobian cancels the kernel singularities exactly ([`kernel`]).
//!
//! Measurements are plane integrals `M_{r,θ}(t, x) = ℛ₃[K(t,x,·) f(·)](r, θ)`
//! over a family of illumination planes, synthesized in [`forward`]. Inverting
//! the 3-D Radon transform at each `(t, x)` and taking time limits at the
//! wavefront and at large time yields four derived datasets ([`limits`]) from
//! which the parameter reconstruction proceeds: an X-ray transform inversion
//! for `εα₁`, then pointwise formulas for `f` and `ερ₁` ([`recon`]).
//!
//! Every numerical building block is paired with an independent slow oracle
//! ([`oracle`]): Monte-Carlo spheroid integrals, adaptive 1-D quadrature,
//! dense-grid potentials. The `verify` subcommand of the CLI runs a compact
//! oracle suite; the full acceptance battery lives in `tests/acceptance.rs`.

pub mod config;
pub mod error;
pub mod forward;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod kernel;
pub mod kernel_profile;
pub mod limits;
pub mod oracle;
pub mod phantom;
pub mod quadrature;
pub mod recon;
pub mod transforms;

pub use error::{Error, Result};
pub use geometry::Vec3;
pub use phantom::{AnalyticField, Scene};
