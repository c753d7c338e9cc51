//! Spacetime-algebra electrodynamics.
//!
//! The crate is organized as a library with one thin command-line binary on
//! top. Each major capability has a runnable example:
//!
//! ```text
//! cargo run --example blade_arithmetic        # exact Cl(p,q) kernel, n <= 4
//! cargo run --example spacetime_split        # a gamma0 = a0 + a_vec, rotors
//! cargo run --example verify_identities      # symbolic identity corpus
//! cargo run --example unified_equation       # grade-split residual vs vector form
//! cargo run --example densities_and_duality  # L, H, Poynting, duality rotations
//! cargo run --example gauge_invariance       # A -> A + grad(chi) reports
//! cargo run --example lorentz_boost          # rotor boosts of the field bivector
//! cargo run --example time_evolution         # leapfrog diagnostics, continuity
//! cargo run --example massive_dispersion     # omega(k) on the lattice vs theory
//! cargo run --example euclidean_evanescence  # elliptic signature: driven decay
//! cargo run --example monopole_flux          # Gauss law for a magnetic charge
//! ```
//!
//! The same operations are reachable in batch form through the `faraday`
//! binary (`cargo run -- --help`).
//!
//! Layers, bottom to top:
//!
//! * [`algebra`]: dense multivectors over Cl(p,q) with p+q <= 4, generic in
//!   the coefficient ring (f64, exact rationals, polynomials).
//! * [`symbolic`]: expression parser and exact canonicalizer used to verify
//!   algebraic identities from a plain-text corpus.
//! * [`fields`]: multivector fields on a periodic 3-D grid with
//!   central-difference spacetime derivatives, residuals, and densities.
//! * [`sim`]: leapfrog time evolution plus the dispersion, evanescence, and
//!   monopole-flux experiments.

pub mod algebra;
pub mod cli;
pub mod fields;
pub mod sim;
pub mod symbolic;

pub use algebra::{Multivector, Signature};
