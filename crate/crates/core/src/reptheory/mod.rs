//! Characters, dimensions and explicit orthogonal representations of `S_n`.

mod characters;
mod rep;
mod young;

pub use characters::{dimension, mn_character, transposition_ratio, CharacterTable, MnEvaluator};
pub use rep::{
    character_table, defining_rep, irrep, irreps, regular_rep, RepLabel, UnitaryRep, REGULAR_REP_MAX_N,
};
