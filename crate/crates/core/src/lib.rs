//! Quantum games in the Eisert–Wilkens–Lewenstein scheme, strong
//! isomorphisms between finite strategic-form games, and the lift of such
//! isomorphisms to the quantum games.
//!
//! Qubit 0 is the most significant bit of a basis index, so `|j_0 j_1 ... j_{n-1}>`
//! has index `Σ j_k 2^{n-1-k}` and corresponds to the classical profile in
//! which player `k` plays strategy `j_k`.

pub mod catalog;
pub mod error;
pub mod ewl;
pub mod game;
pub mod gamefile;
pub mod lift;
pub mod linalg;
pub mod sampling;
pub mod search;

pub use error::{Error, Result};
pub use ewl::{ewl_payoffs, final_state, EwlGame, StrategySpace, TwoParam};
pub use game::{ClassicalGame, GameMapping, StrategyProfile};
pub use gamefile::GameFile;
pub use lift::{apply_lift, lift, verify_lift, LiftedMapping, ParamTransform};
pub use linalg::{CMatrix, CVector, QubitPermutation, SU2Params};
pub use search::{grid_pure_ne, ParamGrid};
