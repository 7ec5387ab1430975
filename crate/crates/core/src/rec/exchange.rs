use super::admissible::{AdmissibleGraph, AugmentingPath, Move, PairPaths};
use super::state::PairState;
use crate::error::{Error, Result};
use crate::graph::{Cost, EdgePartition, Graph, Tree};

/// Applies the exchanges along `path`, growing `|X ∩ Y|` by one.
///
/// Multipliers and reduced costs are carried over unchanged. The new trees
/// are validated; failure means the path was not a shortest augmenting path.
pub fn augment(graph: &Graph, state: &PairState, path: &AugmentingPath) -> Result<PairState> {
    let mut x = state.x.mask().to_vec();
    let mut y = state.y.mask().to_vec();
    for (i, mv) in path.moves.iter().enumerate() {
        let (tail, head) = (path.nodes[i], path.nodes[i + 1]);
        match mv {
            Move::X => {
                if x[tail] || !x[head] {
                    return Err(Error::Internal(format!("X-move ({tail},{head}) is not an exchange")));
                }
                x[tail] = true;
                x[head] = false;
            }
            Move::Y => {
                if !y[tail] || y[head] {
                    return Err(Error::Internal(format!("Y-move ({tail},{head}) is not an exchange")));
                }
                y[head] = true;
                y[tail] = false;
            }
        }
    }
    let x = Tree::from_mask(graph, x)
        .map_err(|e| Error::Internal(format!("augment ({}) broke X: {e}", path.case)))?;
    let y = Tree::from_mask(graph, y)
        .map_err(|e| Error::Internal(format!("augment ({}) broke Y: {e}", path.case)))?;
    let partition = EdgePartition::build(&x, &y);
    if partition.intersection_size() != state.intersection_size() + 1 {
        return Err(Error::Internal(format!(
            "augment ({}) changed |X ∩ Y| from {} to {}",
            path.case,
            state.intersection_size(),
            partition.intersection_size()
        )));
    }
    Ok(PairState {
        x,
        y,
        partition,
        ..state.clone()
    })
}

/// Smallest dual shift making a slack exchange inequality tight across the
/// boundary of the admissible node set, or `None` if no such inequality exists.
pub fn delta_star(graph: &Graph, state: &PairState, ag: &AdmissibleGraph) -> Option<Cost> {
    delta_star_with(state, ag, &PairPaths::new(graph, state))
}

pub(crate) fn delta_star_with(state: &PairState, ag: &AdmissibleGraph, paths: &PairPaths) -> Option<Cost> {
    let mut best: Option<Cost> = None;
    let mut offer = |gap: Cost| best = Some(best.map_or(gap, |b| b.min(gap)));
    for e in 0..state.alpha.len() {
        // X side: admissible non-tree e, non-admissible tree edge f on its cycle
        if !state.x.contains(e) && ag.is_admissible(e) {
            for &f in paths.x.of(e) {
                if !ag.is_admissible(f) {
                    offer(state.first_reduced[e] - state.first_reduced[f]);
                }
            }
        }
        // Y side: non-admissible non-tree f, admissible tree edge on its cycle
        if !state.y.contains(e) && !ag.is_admissible(e) {
            for &g in paths.y.of(e) {
                if ag.is_admissible(g) {
                    offer(state.second_reduced[e] - state.second_reduced[g]);
                }
            }
        }
    }
    best
}

/// Raises `theta` by `delta`: admissible edges absorb the shift in `alpha`,
/// all others in `beta`.
pub fn shift_duals(graph: &Graph, state: &PairState, ag: &AdmissibleGraph, delta: Cost) -> Result<PairState> {
    if delta < 0 {
        return Err(Error::OptimalityWouldBreak { delta, limit: 0 });
    }
    if let Some(limit) = delta_star(graph, state, ag) {
        if delta > limit {
            return Err(Error::OptimalityWouldBreak { delta, limit });
        }
    }
    shift_unchecked(state, ag, delta)
}

pub(crate) fn shift_unchecked(state: &PairState, ag: &AdmissibleGraph, delta: Cost) -> Result<PairState> {
    let mut next = state.clone();
    let overflow = || Error::Overflow("shifting duals");
    for e in 0..state.alpha.len() {
        if ag.is_admissible(e) {
            next.alpha[e] = next.alpha[e].checked_add(delta).ok_or_else(overflow)?;
            next.first_reduced[e] = next.first_reduced[e].checked_sub(delta).ok_or_else(overflow)?;
        } else {
            next.beta[e] = next.beta[e].checked_add(delta).ok_or_else(overflow)?;
            next.second_reduced[e] = next.second_reduced[e].checked_sub(delta).ok_or_else(overflow)?;
        }
    }
    next.theta = next.theta.checked_add(delta).ok_or_else(overflow)?;
    Ok(next)
}
