//! Independent checks: bounded minimal-representation search, the mod-9
//! obstructions behind the lower bounds, and exhaustive certification of
//! the residue-class recipes.

pub mod lemmas;
mod min_cubes;
mod mod9;
pub mod obstruction;

pub use lemmas::{check_all_lemmas, lemma_residue_check, LemmaReport};
pub use min_cubes::{min_cubes_search, min_cubes_search_with, Exec, SearchConfig, TABLE_LIMIT};
pub use obstruction::{three_cube_residues_mod9, two_cube_obstruction, two_cube_obstruction_exhaustive};
