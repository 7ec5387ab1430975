//! Recoverable robust spanning trees under interval uncertainty.
//!
//! Under the plain interval set the worst case puts every edge at its upper
//! bound, so the problem is a recoverable spanning tree instance with costs
//! `c + d`. Under the two budgeted sets the routines below solve one
//! well-chosen scenario exactly and report instance-specific ratio bounds
//! relative to the true robust optimum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Cost, EdgeId, Graph, Tree};
use crate::inc::{inc_st, inc_st_by};
use crate::oracle::{binomial, continuous_adversary_value, for_each_combination, OracleLimits};
use crate::rec::solve_rec_st;
use crate::{rational, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScenarioModel {
    /// Every second-stage cost anywhere in `[c_e, c_e + d_e]`.
    #[serde(rename = "interval")]
    Interval,
    /// At most `gamma` edges raised to their upper bound.
    #[serde(rename = "budget-discrete")]
    DiscreteBudget,
    /// Total increase over nominal costs at most `gamma`.
    #[serde(rename = "budget-continuous")]
    ContinuousBudget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalInstance {
    pub graph: Graph,
    /// First-stage costs `C`.
    pub first_cost: Vec<Cost>,
    /// Nominal second-stage costs `c`.
    pub nominal: Vec<Cost>,
    /// Maximal deviations `d`.
    pub deviation: Vec<Cost>,
    pub k: usize,
    pub model: ScenarioModel,
    pub gamma: Cost,
}

impl IntervalInstance {
    pub fn new(
        graph: Graph,
        first_cost: Vec<Cost>,
        nominal: Vec<Cost>,
        deviation: Vec<Cost>,
        k: usize,
        model: ScenarioModel,
        gamma: Cost,
    ) -> Result<Self> {
        graph.check_input_costs(&first_cost)?;
        graph.check_input_costs(&nominal)?;
        graph.check_input_costs(&deviation)?;
        graph.check_recovery(k)?;
        if gamma < 0 {
            return Err(Error::InvalidInstance(format!("gamma = {gamma} is negative")));
        }
        if model == ScenarioModel::DiscreteBudget && gamma as usize > graph.edge_count() {
            return Err(Error::InvalidInstance(format!(
                "gamma = {gamma} exceeds the edge count {}",
                graph.edge_count()
            )));
        }
        Ok(IntervalInstance {
            graph,
            first_cost,
            nominal,
            deviation,
            k,
            model,
            gamma,
        })
    }

    pub fn upper_costs(&self) -> Vec<Cost> {
        self.nominal.iter().zip(&self.deviation).map(|(c, d)| c + d).collect()
    }

    /// `D = sum_e d_e`.
    pub fn total_deviation(&self) -> Cost {
        self.deviation.iter().sum()
    }

    pub fn with_model(&self, model: ScenarioModel, gamma: Cost) -> Result<Self> {
        IntervalInstance::new(
            self.graph.clone(),
            self.first_cost.clone(),
            self.nominal.clone(),
            self.deviation.clone(),
            self.k,
            model,
            gamma,
        )
    }

    /// Deviations capped at `gamma`; leaves the continuous budget set unchanged.
    fn capped(&self) -> IntervalInstance {
        let mut inst = self.clone();
        for d in inst.deviation.iter_mut() {
            *d = (*d).min(self.gamma);
        }
        inst
    }

    fn expect_model(&self, model: ScenarioModel) -> Result<()> {
        if self.model != model {
            return Err(Error::InvalidInstance(format!(
                "expected a {model:?} instance, got {:?}",
                self.model
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RobustSolution {
    pub first_stage: Tree,
    pub recovery: Tree,
    /// `C(X) + (c + d)(Y)`.
    pub worst_case_total: Cost,
}

/// Exact recoverable robust optimum under the interval scenario set.
pub fn solve_interval(inst: &IntervalInstance) -> Result<RobustSolution> {
    inst.expect_model(ScenarioModel::Interval)?;
    let upper = inst.upper_costs();
    let sol = solve_rec_st(&inst.graph, &inst.first_cost, &upper, inst.k)?;
    Ok(RobustSolution {
        first_stage: sol.first_stage,
        recovery: sol.recovery,
        worst_case_total: sol.total_cost,
    })
}

/// `max_S c^S(Y)` for a fixed tree.
pub fn worst_case_fixed_tree(y: &Tree, inst: &IntervalInstance) -> Cost {
    let nominal = y.cost(&inst.nominal);
    match inst.model {
        ScenarioModel::Interval => nominal + y.cost(&inst.deviation),
        ScenarioModel::DiscreteBudget => {
            let mut devs: Vec<Cost> = y.edges().iter().map(|&e| inst.deviation[e]).collect();
            devs.sort_unstable_by(|a, b| b.cmp(a));
            nominal + devs.iter().take(inst.gamma.max(0) as usize).sum::<Cost>()
        }
        ScenarioModel::ContinuousBudget => nominal + inst.gamma.min(y.cost(&inst.deviation)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaSource {
    /// `min_e c_e / (c_e + d_e)` over all edges.
    Global,
    /// `c(Y) / (c + d)(Y)` on the returned recovery tree.
    RecoveryTree,
}

/// Ratio bounds for an approximate recoverable robust solution. Each ratio
/// `r` guarantees `F(first_stage) <= r * F(X)` for every spanning tree `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxCertificate {
    pub first_stage: Tree,
    pub recovery: Tree,
    pub alpha_global: Option<Rational>,
    pub alpha_recovery: Option<Rational>,
    /// The larger of the two alpha values, with its origin.
    pub alpha: Option<(Rational, AlphaSource)>,
    pub ratio_alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub ratio_beta: Option<Rational>,
    pub gamma: Option<Rational>,
    pub ratio_gamma: Option<Rational>,
    /// Minimum of the available ratios; `None` when no finite ratio applies.
    pub certified_ratio: Option<Rational>,
    /// Objective of the pair under the scenario that was solved.
    pub scenario_objective: Rational,
    /// `C(X) + max_S c^S(Y)`, an upper bound on `F(first_stage)`.
    pub worst_case_upper: Cost,
}

fn ratio_of(num: Cost, den: Cost) -> Rational {
    Rational::new(num.into(), den.into())
}

fn alpha_global(inst: &IntervalInstance) -> Option<Rational> {
    let mut best: Option<Rational> = None;
    for e in 0..inst.graph.edge_count() {
        let upper = inst.nominal[e] + inst.deviation[e];
        if upper == 0 {
            continue;
        }
        let a = ratio_of(inst.nominal[e], upper);
        if best.as_ref().is_none_or(|b| a < *b) {
            best = Some(a);
        }
    }
    let a = best.unwrap_or_else(|| rational(1));
    (a > rational(0)).then_some(a)
}

fn alpha_recovery(inst: &IntervalInstance, y: &Tree) -> Option<Rational> {
    let nominal = y.cost(&inst.nominal);
    let upper = nominal + y.cost(&inst.deviation);
    if upper == 0 {
        return Some(rational(1));
    }
    (nominal > 0).then(|| ratio_of(nominal, upper))
}

struct AlphaPart {
    global: Option<Rational>,
    recovery: Option<Rational>,
    best: Option<(Rational, AlphaSource)>,
}

fn alpha_part(inst: &IntervalInstance, y: &Tree) -> AlphaPart {
    let global = alpha_global(inst);
    let recovery = alpha_recovery(inst, y);
    let best = match (&global, &recovery) {
        (Some(g), Some(r)) if r > g => Some((r.clone(), AlphaSource::RecoveryTree)),
        (Some(g), _) => Some((g.clone(), AlphaSource::Global)),
        (None, Some(r)) => Some((r.clone(), AlphaSource::RecoveryTree)),
        (None, None) => None,
    };
    AlphaPart {
        global,
        recovery,
        best,
    }
}

fn min_ratio<'a>(ratios: impl IntoIterator<Item = &'a Option<Rational>>) -> Option<Rational> {
    ratios.into_iter().flatten().min().cloned()
}

/// Solves the nominal scenario and certifies the pair against the
/// discrete budget set.
pub fn approx_discrete_budget(inst: &IntervalInstance) -> Result<ApproxCertificate> {
    inst.expect_model(ScenarioModel::DiscreteBudget)?;
    let sol = solve_rec_st(&inst.graph, &inst.first_cost, &inst.nominal, inst.k)?;
    let alpha = alpha_part(inst, &sol.recovery);
    let ratio_alpha = alpha.best.as_ref().map(|(a, _)| a.recip());
    let worst_case_upper = sol.first_stage.cost(&inst.first_cost) + worst_case_fixed_tree(&sol.recovery, inst);
    Ok(ApproxCertificate {
        certified_ratio: ratio_alpha.clone(),
        first_stage: sol.first_stage,
        recovery: sol.recovery,
        alpha_global: alpha.global,
        alpha_recovery: alpha.recovery,
        alpha: alpha.best,
        ratio_alpha,
        beta: None,
        ratio_beta: None,
        gamma: None,
        ratio_gamma: None,
        scenario_objective: rational(sol.total_cost),
        worst_case_upper,
    })
}

/// Solves the proportional-spread scenario
/// `c_e + min(d_e, gamma * d_e / D)` and certifies the pair against the
/// continuous budget set.
pub fn approx_continuous_budget(inst: &IntervalInstance) -> Result<ApproxCertificate> {
    approx_continuous_budget_with(inst, &OracleLimits::default())
}

pub fn approx_continuous_budget_with(inst: &IntervalInstance, limits: &OracleLimits) -> Result<ApproxCertificate> {
    inst.expect_model(ScenarioModel::ContinuousBudget)?;
    let inst = &inst.capped();
    let total = inst.total_deviation();
    let gamma = inst.gamma;

    // Scale everything by D so the spread scenario stays integral.
    let (first, second, scale) = if total == 0 || gamma >= total {
        (inst.first_cost.clone(), inst.upper_costs(), 1)
    } else {
        let overflow = || Error::Overflow("scaling the spread scenario");
        let first = inst
            .first_cost
            .iter()
            .map(|&c| c.checked_mul(total).ok_or_else(overflow))
            .collect::<Result<Vec<_>>>()?;
        let second = (0..inst.graph.edge_count())
            .map(|e| {
                let (c, d) = (inst.nominal[e], inst.deviation[e]);
                let full = (c + d).checked_mul(total).ok_or_else(overflow)?;
                let spread = c
                    .checked_mul(total)
                    .and_then(|v| v.checked_add(gamma.checked_mul(d)?))
                    .ok_or_else(overflow)?;
                Ok(full.min(spread))
            })
            .collect::<Result<Vec<_>>>()?;
        (first, second, total)
    };
    let sol = solve_rec_st(&inst.graph, &first, &second, inst.k)?;
    let (x, y) = (sol.first_stage, sol.recovery);

    let alpha = alpha_part(inst, &y);
    let ratio_alpha = alpha.best.as_ref().map(|(a, _)| a.recip());
    let beta = if total == 0 || gamma >= total {
        Some(rational(1))
    } else if gamma > 0 {
        Some(ratio_of(gamma, total))
    } else {
        None
    };
    let ratio_beta = beta.as_ref().map(|b| b.recip());

    let (gamma_frac, ratio_gamma) = if gamma == 0 {
        (Some(rational(0)), Some(rational(1)))
    } else {
        match continuous_adversary_value(inst, &x, limits) {
            Ok(inner) => {
                let f = rational(x.cost(&inst.first_cost)) + inner;
                if f > rational(0) {
                    let g = rational(gamma) / &f;
                    if g < rational(1) {
                        let r = (rational(1) - &g).recip();
                        (Some(g), Some(r))
                    } else {
                        (Some(g), None)
                    }
                } else {
                    (None, None)
                }
            }
            Err(Error::TooLarge(_)) => (None, None),
            Err(e) => return Err(e),
        }
    };

    let certified_ratio = min_ratio([&ratio_alpha, &ratio_beta, &ratio_gamma]);
    let worst_case_upper = x.cost(&inst.first_cost) + worst_case_fixed_tree(&y, inst);
    Ok(ApproxCertificate {
        scenario_objective: Rational::new(sol.total_cost.into(), scale.into()),
        first_stage: x,
        recovery: y,
        alpha_global: alpha.global,
        alpha_recovery: alpha.recovery,
        alpha: alpha.best,
        ratio_alpha,
        beta,
        ratio_beta,
        gamma: gamma_frac,
        ratio_gamma,
        certified_ratio,
        worst_case_upper,
    })
}

/// Value of `F(X)`, exact when computable within the limits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FValue {
    Exact(Rational),
    Bounds { lower: Rational, upper: Rational },
}

impl FValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            FValue::Exact(v) => Some(v),
            FValue::Bounds { .. } => None,
        }
    }
}

/// `F(X) = C(X) + max_S min_{Y in recovery set of X} c^S(Y)`.
#[allow(non_snake_case)]
pub fn evaluate_F(x: &Tree, inst: &IntervalInstance, limits: &OracleLimits) -> Result<FValue> {
    let graph = &inst.graph;
    let x = &Tree::new(graph, x.edges().iter().copied())?;
    let first = x.cost(&inst.first_cost);
    let inner_under = |costs: &[Cost]| inc_st(graph, costs, x, inst.k).map(|s| s.cost);

    if inst.model == ScenarioModel::Interval {
        return Ok(FValue::Exact(rational(first + inner_under(&inst.upper_costs())?)));
    }
    if inst.gamma == 0 {
        return Ok(FValue::Exact(rational(first + inner_under(&inst.nominal)?)));
    }
    match inst.model {
        ScenarioModel::ContinuousBudget => match continuous_adversary_value(&inst.capped(), x, limits) {
            Ok(inner) => Ok(FValue::Exact(rational(first) + inner)),
            Err(Error::TooLarge(_)) => budget_bounds(x, inst),
            Err(e) => Err(e),
        },
        ScenarioModel::DiscreteBudget => {
            let positive: Vec<EdgeId> = (0..graph.edge_count()).filter(|&e| inst.deviation[e] > 0).collect();
            let size = (inst.gamma as usize).min(positive.len());
            if binomial(positive.len() as u64, size as u64) > limits.max_subsets as u128 {
                return budget_bounds(x, inst);
            }
            let mut best = Cost::MIN;
            let mut scenario = inst.nominal.clone();
            let mut result = Ok(());
            for_each_combination(positive.len(), size, |subset| {
                if result.is_err() {
                    return;
                }
                scenario.copy_from_slice(&inst.nominal);
                for &i in subset {
                    scenario[positive[i]] += inst.deviation[positive[i]];
                }
                match inner_under(&scenario) {
                    Ok(v) => best = best.max(v),
                    Err(e) => result = Err(e),
                }
            });
            result?;
            Ok(FValue::Exact(rational(first + best)))
        }
        ScenarioModel::Interval => unreachable!(),
    }
}

// Lower bound from two feasible scenarios, upper bound from a fixed response.
fn budget_bounds(x: &Tree, inst: &IntervalInstance) -> Result<FValue> {
    let graph = &inst.graph;
    let first = x.cost(&inst.first_cost);
    let response = inc_st(graph, &inst.nominal, x, inst.k)?;
    let upper = first + worst_case_fixed_tree(&response.tree, inst);

    // raise the response tree's edges greedily within the budget
    let mut scenario: Vec<Rational> = inst.nominal.iter().map(|&c| rational(c)).collect();
    let mut edges: Vec<EdgeId> = response.tree.edges().to_vec();
    edges.sort_by_key(|&e| std::cmp::Reverse(inst.deviation[e]));
    let mut left = inst.gamma;
    for (i, &e) in edges.iter().enumerate() {
        let raise = match inst.model {
            ScenarioModel::DiscreteBudget if (i as Cost) < inst.gamma => inst.deviation[e],
            ScenarioModel::ContinuousBudget => inst.deviation[e].min(left),
            _ => 0,
        };
        left -= raise.min(left);
        scenario[e] += rational(raise);
    }
    let raised = inc_st_by(graph, &scenario, x, inst.k)?.cost;
    let lower = std::cmp::max(rational(response.cost), raised) + rational(first);
    Ok(FValue::Bounds {
        lower,
        upper: rational(upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_instance(model: ScenarioModel, gamma: Cost, d: Vec<Cost>) -> IntervalInstance {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)]).unwrap();
        IntervalInstance::new(g, vec![3, 1, 4, 1, 5, 9], vec![2, 6, 5, 3, 5, 8], d, 1, model, gamma).unwrap()
    }

    #[test]
    fn worst_case_tree_values() {
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 2, vec![1, 7, 2, 0, 4, 3]);
        let y = Tree::new(&inst.graph, [0, 1, 2]).unwrap();
        assert_eq!(worst_case_fixed_tree(&y, &inst), 13 + 7 + 2);
        let inst = inst.with_model(ScenarioModel::ContinuousBudget, 5).unwrap();
        assert_eq!(worst_case_fixed_tree(&y, &inst), 13 + 5);
        let inst = inst.with_model(ScenarioModel::Interval, 0).unwrap();
        assert_eq!(worst_case_fixed_tree(&y, &inst), 13 + 10);
        let inst = inst.with_model(ScenarioModel::DiscreteBudget, 3).unwrap();
        assert_eq!(worst_case_fixed_tree(&y, &inst), 23);
    }

    #[test]
    fn zero_deviation_is_exact() {
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 2, vec![0; 6]);
        let cert = approx_discrete_budget(&inst).unwrap();
        assert_eq!(cert.certified_ratio, Some(rational(1)));
        let interval = inst.with_model(ScenarioModel::Interval, 0).unwrap();
        let nominal = solve_rec_st(&inst.graph, &inst.first_cost, &inst.nominal, inst.k).unwrap();
        assert_eq!(solve_interval(&interval).unwrap().worst_case_total, nominal.total_cost);
    }

    #[test]
    fn doubling_deviation_gives_ratio_at_most_two() {
        let nominal = vec![2, 6, 5, 3, 5, 8];
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 2, nominal.clone());
        let cert = approx_discrete_budget(&inst).unwrap();
        assert_eq!(cert.alpha_global, Some(Rational::new(1.into(), 2.into())));
        assert!(cert.certified_ratio.unwrap() <= rational(2));
    }

    #[test]
    fn zero_nominal_cost_with_deviation_is_unbounded() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = IntervalInstance::new(
            g,
            vec![0; 3],
            vec![0; 3],
            vec![1; 3],
            2,
            ScenarioModel::DiscreteBudget,
            1,
        )
        .unwrap();
        let cert = approx_discrete_budget(&inst).unwrap();
        assert_eq!(cert.certified_ratio, None);
    }

    #[test]
    fn saturated_budget_matches_interval() {
        let inst = k4_instance(ScenarioModel::ContinuousBudget, 100, vec![1, 7, 2, 0, 4, 3]);
        let cert = approx_continuous_budget(&inst).unwrap();
        assert_eq!(cert.certified_ratio, Some(rational(1)));
        let interval = solve_interval(&inst.with_model(ScenarioModel::Interval, 0).unwrap()).unwrap();
        assert_eq!(cert.scenario_objective, rational(interval.worst_case_total));
    }

    #[test]
    fn zero_budget_ratio_one() {
        let inst = k4_instance(ScenarioModel::ContinuousBudget, 0, vec![1, 7, 2, 0, 4, 3]);
        let cert = approx_continuous_budget(&inst).unwrap();
        assert_eq!(cert.ratio_gamma, Some(rational(1)));
        assert_eq!(cert.certified_ratio, Some(rational(1)));
    }

    #[test]
    fn wrong_model_rejected() {
        let inst = k4_instance(ScenarioModel::Interval, 0, vec![0; 6]);
        assert!(approx_discrete_budget(&inst).is_err());
        assert!(approx_continuous_budget(&inst).is_err());
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 0, vec![0; 6]);
        assert!(solve_interval(&inst).is_err());
    }

    #[test]
    fn discrete_gamma_above_m_rejected() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        assert!(IntervalInstance::new(g, vec![1], vec![1], vec![1], 0, ScenarioModel::DiscreteBudget, 2).is_err());
    }

    #[test]
    fn evaluate_zero_budget_is_nominal_inner_value() {
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 0, vec![1, 7, 2, 0, 4, 3]);
        let x = Tree::new(&inst.graph, [0, 1, 2]).unwrap();
        let expected = x.cost(&inst.first_cost) + inc_st(&inst.graph, &inst.nominal, &x, inst.k).unwrap().cost;
        let limits = OracleLimits::default();
        assert_eq!(evaluate_F(&x, &inst, &limits).unwrap(), FValue::Exact(rational(expected)));
        let inst = inst.with_model(ScenarioModel::ContinuousBudget, 0).unwrap();
        assert_eq!(evaluate_F(&x, &inst, &limits).unwrap(), FValue::Exact(rational(expected)));
    }

    #[test]
    fn evaluate_falls_back_to_bounds() {
        let inst = k4_instance(ScenarioModel::DiscreteBudget, 2, vec![1, 7, 2, 0, 4, 3]);
        let x = Tree::new(&inst.graph, [0, 1, 2]).unwrap();
        let tight = OracleLimits {
            max_subsets: 1,
            ..OracleLimits::default()
        };
        let exact = evaluate_F(&x, &inst, &OracleLimits::default()).unwrap();
        let exact = exact.exact().unwrap().clone();
        match evaluate_F(&x, &inst, &tight).unwrap() {
            FValue::Bounds { lower, upper } => assert!(lower <= exact && exact <= upper),
            FValue::Exact(_) => panic!("expected bounds"),
        }
    }
}
