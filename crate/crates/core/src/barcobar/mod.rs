//! Bar and cobar constructions with truncation, tautological twisting
//! cochains, the adjunction Ω ⊣ B, shuffle maps, and the strongly homotopy
//! commutative structure Φ = Bμ of genuinely commutative algebras.

mod bar;
mod cobar;
mod shc;
mod shuffle;
mod twisting;

pub(crate) use bar::bar_words_for;
pub use bar::{bar, bar_of_morphism, BarCoalgebra};
pub use cobar::{cobar, cobar_of_morphism, CobarAlgebra};
pub use shc::{multiplication_morphism, shc_structure_cdga, unit_inclusion};
pub(crate) use shuffle::shuffle_letter_lists;
pub use shuffle::{shuffle_gamma, shuffle_nabla};
pub use twisting::{
    adjunction_counit, adjunction_unit, extend_from_cobar, lift_to_bar, twisting_of_cobar_map,
    TwistingCochain,
};
