//! Chekhov-Fock coordinates on trivalent ribbon graphs.
//!
//! A trivalent ribbon graph (a dessin) with a distinguished dart `ε` and
//! real shears `z` on its edges determines a homomorphism from the
//! stabilizer of `ε` in the cartography group `⟨ρ₀, ρ₁ | ρ₀³ = ρ₁² = 1⟩`
//! into PSL₂(ℝ). This crate builds the graphs, the words and their
//! evaluation, the parabolicity system on the shears, and the ideal
//! triangulation that the image group acts on.
//!
//! ```
//! use dessin::{builtin, fuchsian_generators, EdgeLabeling};
//!
//! let g = builtin("theta").unwrap();
//! let gens = fuchsian_generators(&g, &EdgeLabeling::zero(&g), g.base());
//! assert_eq!(gens.generators.len(), 3);
//! assert!(gens.ordered_product().is_projective_identity(0.0));
//! ```

pub mod cartography;
pub mod chf;
pub mod exec;
pub mod net;
pub mod ribbon_graph;
pub mod shear_system;
pub mod verify;

pub use cartography::{Letter, Word};
pub use chf::{chf_eval, fuchsian_generators, ExtendedReal, Mobius};
pub use exec::Execution;
pub use ribbon_graph::{builtin, parse_graph, DartId, EdgeLabeling, GraphError, RibbonGraph};
