//! Quantum discord of two-qubit centrosymmetric (CS) states.
//!
//! A CS density matrix (`rho[i][j] = rho[3-i][3-j]`) is taken to X form by
//! the local orthogonal transformation `H (x) H`. Discord is invariant under
//! local unitaries, so the closed-form X-state results apply to every CS
//! state. The crate provides:
//!
//! * [`qmat`]: fixed-size complex matrices, Jacobi eigensolver, partial trace
//! * [`states`]: validated density matrices and the CS / X parameterizations
//! * [`localops`]: the Hadamard bridge, parameter maps, Bloch expansion and
//!   phase reduction
//! * [`discord`]: entropies and the closed-form discord `min(Q1, Q2)`
//! * [`oracle`]: brute-force discord by measurement optimization
//! * [`models`]: XXZ chain with DM interaction, nanopore spins, pseudopure
//!   states
//! * [`pipeline`]: the analytic route for an arbitrary input state
//! * [`format`]: JSON state and parameter documents
//!
//! ```
//! use csdiscord::models::{nanopore_correlations, nanopore_state, NanoporeSettings};
//! use csdiscord::discord::discord_family;
//! use csdiscord::oracle::{discord_numeric, OracleSettings};
//!
//! let corr = nanopore_correlations(&NanoporeSettings::at(20, 0.8, 1.0)).unwrap();
//! let analytic = discord_family(&corr.family_params()).unwrap();
//! let numeric = discord_numeric(&nanopore_state(&corr).unwrap(), &OracleSettings::default()).unwrap();
//! assert!((analytic.q - numeric.q).abs() < 1e-8);
//! ```

pub mod discord;
pub mod error;
pub mod format;
pub mod localops;
pub mod models;
pub mod oracle;
pub mod pipeline;
pub mod qmat;
pub mod states;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}
    #[doc = include_str!("../../../book/src/hadamard.md")]
    mod hadamard {}
    #[doc = include_str!("../../../book/src/discord.md")]
    mod discord {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
