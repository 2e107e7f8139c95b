//! Lazy improvement dynamics, equilibria and perturbed Markov chains for
//! abstract games in extensive form with arbitrary preferences.

pub mod cli;
pub mod dag;
pub mod dynamics;
pub mod equilibria;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod generate;
pub mod graph;
pub mod io;
pub mod markov;
pub mod normal_form;
pub mod potentials;
pub mod preference;
pub mod scalar;

pub use error::{Error, ParseError, Result};
pub use game::{Game, GameTree, NodeId, Outcome, OutcomeId, Play, PlayerId, Profile, TreeSpec, Universe};
pub use preference::{Preference, PreferenceClass};
pub use scalar::Scalar;
