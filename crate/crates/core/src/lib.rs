//! Nash equilibria of a two-source competitive information-spread game with
//! confirmation bias.
//!
//! Two stubborn sources, Georgia (`g`) and Hank (`h`), push opinions on a
//! directed social network. Each individual weighs a source by
//! `β − γ·distance`, so people discount sources far from their own view. The
//! sources play a zero-sum game over the centrality-weighted steady-state
//! opinion `f(g, h) = cᵀx*`: Georgia minimizes, Hank maximizes.
//!
//! ```
//! use cbgame::{game, krackhardt};
//!
//! let net = krackhardt::network().unwrap();
//! let case_d = &krackhardt::cases()[3];
//! let analysis = game::analyze(&case_d.scenario(&net).unwrap()).unwrap();
//! assert_eq!((analysis.equilibrium.g_star, analysis.equilibrium.h_star), (0.2, 1.0));
//! ```
//!
//! Modules, bottom up:
//! - [`network`]: weighted digraphs, edge-list parsing, the assumption check
//! - [`spectral`]: dominant left eigenpair and centrality averages
//! - [`dynamics`]: the opinion update, simulation and closed-form steady state
//! - [`game`]: cost, characterization functions and the equilibrium
//! - [`oracle`]: brute-force cross-checks and a random instance generator
//! - [`scenario`], [`krackhardt`], [`cli`]: input documents, reference data, commands
//!
//! The `examples/` directory has one runnable program per capability.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod game;
pub mod krackhardt;
pub mod linalg;
pub mod network;
pub mod oracle;
pub mod scenario;
pub mod spectral;

pub use dynamics::{BiasParams, OpinionState, Scenario, SourcePair};
pub use error::{Error, Result};
pub use game::{Branch, EquilibriumResult, GameScalars};
pub use network::{AssumptionReport, SocialNetwork};
pub use spectral::SpectralData;
