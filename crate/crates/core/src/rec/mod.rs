//! Primal-dual augmenting path algorithm for the recoverable spanning tree
//! problem.
//!
//! The solver keeps a pair of trees `(X, Y)` that is optimal for the
//! Lagrangian relaxation of the intersection constraint at the current
//! multiplier `theta`. Each phase either finds an augmenting path in the
//! admissible graph, which grows `|X ∩ Y|` by one, or raises `theta` until
//! such a path appears.

mod admissible;
mod exchange;
mod solver;
mod state;

pub use admissible::{
    build_admissible_graph, find_augmenting_path, AdmissibleGraph, Arc, ArcLabel, AugmentCase,
    AugmentingPath, Move,
};
pub use exchange::{augment, delta_star, shift_duals};
pub use solver::{solve_rec_st, solve_rec_st_with, Observer, RecOptions, RecSolution, RecStats, Step, TraceEvent};
pub use state::{initial_pair, verify_pair_state, PairCheck, PairState};
