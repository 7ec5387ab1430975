use serde::{Deserialize, Serialize};

use super::admissible::{build_with, find_augmenting_path, AdmissibleGraph, AugmentingPath, PairPaths};
use super::exchange::{augment, delta_star_with, shift_unchecked};
use super::state::{initial_pair, verify_pair_state, PairState};
use crate::error::{Error, Result};
use crate::graph::{Cost, Graph, Tree};

/// Structured solver event stream, serialized into result files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "kebab-case")]
pub enum TraceEvent {
    Phase {
        index: usize,
        intersection: usize,
    },
    Shift {
        delta: Cost,
        theta: Cost,
    },
    Augment {
        case: String,
        length: usize,
        intersection: usize,
    },
    Certificate {
        theta: Cost,
        intersection: usize,
        target: usize,
        objective: Cost,
        dual_bound: Cost,
    },
}

/// What just happened to the state handed to [`Observer::observe`].
#[derive(Debug, Clone, Copy)]
pub enum Step<'a> {
    Initial,
    Shift { delta: Cost, before: &'a AdmissibleGraph },
    Augment { path: &'a AugmentingPath },
    Final,
}

pub trait Observer {
    fn observe(&mut self, step: Step<'_>, state: &PairState);
}

impl Observer for () {
    fn observe(&mut self, _: Step<'_>, _: &PairState) {}
}

impl<F: FnMut(Step<'_>, &PairState)> Observer for F {
    fn observe(&mut self, step: Step<'_>, state: &PairState) {
        self(step, state)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RecOptions {
    pub trace: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecStats {
    pub augmentations: usize,
    pub shifts: usize,
    pub max_shifts_per_phase: usize,
}

#[derive(Debug, Clone)]
pub struct RecSolution {
    pub first_stage: Tree,
    pub recovery: Tree,
    /// `C(X) + c(Y)` under the original costs.
    pub total_cost: Cost,
    pub state: PairState,
    pub stats: RecStats,
    pub trace: Vec<TraceEvent>,
}

/// Optimal pair `(X, Y)` with `|X ∩ Y| >= n - 1 - k` minimizing `C(X) + c(Y)`.
pub fn solve_rec_st(graph: &Graph, first: &[Cost], second: &[Cost], k: usize) -> Result<RecSolution> {
    solve_rec_st_with(graph, first, second, k, RecOptions::default(), &mut ())
}

pub fn solve_rec_st_with(
    graph: &Graph,
    first: &[Cost],
    second: &[Cost],
    k: usize,
    options: RecOptions,
    observer: &mut dyn Observer,
) -> Result<RecSolution> {
    let mut state = initial_pair(graph, first, second, k)?;
    observer.observe(Step::Initial, &state);
    let mut stats = RecStats::default();
    let mut trace = Vec::new();
    let m = graph.edge_count();

    while state.intersection_size() < state.target {
        if options.trace {
            trace.push(TraceEvent::Phase {
                index: stats.augmentations,
                intersection: state.intersection_size(),
            });
        }
        let paths = PairPaths::new(graph, &state);
        let mut shifts = 0;
        loop {
            let ag = build_with(&state, &paths);
            if let Some(path) = find_augmenting_path(&ag, &state.partition) {
                state = augment(graph, &state, &path)?;
                stats.augmentations += 1;
                if options.trace {
                    trace.push(TraceEvent::Augment {
                        case: path.case.label().to_string(),
                        length: path.len(),
                        intersection: state.intersection_size(),
                    });
                }
                observer.observe(Step::Augment { path: &path }, &state);
                break;
            }
            let delta = delta_star_with(&state, &ag, &paths).ok_or_else(|| {
                Error::Internal("no augmenting path and no slack inequality left".into())
            })?;
            if delta <= 0 {
                return Err(Error::Internal(format!("non-positive delta* = {delta}")));
            }
            shifts += 1;
            if shifts > m {
                return Err(Error::Internal(format!("more than m = {m} dual shifts in one phase")));
            }
            state = shift_unchecked(&state, &ag, delta)?;
            stats.shifts += 1;
            if options.trace {
                trace.push(TraceEvent::Shift {
                    delta,
                    theta: state.theta,
                });
            }
            observer.observe(Step::Shift { delta, before: &ag }, &state);
        }
        stats.max_shifts_per_phase = stats.max_shifts_per_phase.max(shifts);
    }

    let check = verify_pair_state(graph, &state);
    if !check.holds() || !check.globally_optimal {
        return Err(Error::Internal(format!(
            "terminal state fails the optimality certificate: {:?}",
            check.violations
        )));
    }
    observer.observe(Step::Final, &state);
    let total_cost = state.objective();
    if options.trace {
        trace.push(TraceEvent::Certificate {
            theta: state.theta,
            intersection: state.intersection_size(),
            target: state.target,
            objective: total_cost,
            dual_bound: state.dual_bound(),
        });
    }
    Ok(RecSolution {
        first_stage: state.x.clone(),
        recovery: state.y.clone(),
        total_cost,
        state,
        stats,
        trace,
    })
}
