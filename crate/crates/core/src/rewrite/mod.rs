//! Homotopy moves, the normal form for empty `S`, and the deciders.

mod decide;
mod moves;
mod normal;
mod search;

pub use decide::{
    bfs_equivalent, decide_equal, decide_reducible, invariant_obstruction, Certificate, Decision, Obstruction,
    ObstructionKind, Undecided, Verdict,
};
pub use moves::{
    apply_move, enumerate_moves, inverse_move, reducing_moves, AugmentingMoves, Direction, Gap, Move, MoveEnumeration,
    MoveKind,
};
pub use normal::{normal_form, normal_form_with_path, reduce_with};
pub use search::{bfs_search, explore, BudgetReport, Exploration, MovePath, SearchBudget};
