//! Framed-link surgery calculus at the linking-matrix level.

mod charsub;
mod evenize;
mod link;
mod moves;

pub use charsub::{
    characteristic_solutions, e8_matrix, first_homology, handle_parity, spin_structure_count,
    CharSublink, CharacteristicSolutions, HandleParity,
};
pub use evenize::{evenize, evenize_with, EvenizeConfig, EvenizeError, EvenizePhase, Evenized};
pub use link::{FramedLinkMatrix, LinkError};
pub use moves::{
    apply_move, apply_script, blow_down, blow_up, handle_slide, KirbyMove, MoveError, MoveScript,
    ScriptError, Sign,
};
