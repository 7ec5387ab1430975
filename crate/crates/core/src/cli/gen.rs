//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::files::{EdgeRecord, InstanceFile};
use crate::error::{Error, Result};
use crate::graph::Cost;
use crate::robust::ScenarioModel;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub cost_min: Cost,
    pub cost_max: Cost,
    pub deviation_max: Cost,
    pub k: usize,
    pub model: ScenarioModel,
    pub gamma: Cost,
    pub seed: u64,
}

impl GenParams {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        GenParams {
            n,
            m,
            cost_min: 0,
            cost_max: 20,
            deviation_max: 20,
            k: n / 2,
            model: ScenarioModel::Interval,
            gamma: 0,
            seed,
        }
    }
}

/// A connected simple graph: a random spanning tree plus `m - n + 1` other
/// node pairs, with edges listed in shuffled order.
pub fn generate(p: &GenParams) -> Result<InstanceFile> {
    if p.n == 0 {
        return Err(Error::InvalidInstance("n must be positive".into()));
    }
    let max_edges = p.n * (p.n - 1) / 2;
    if p.m + 1 < p.n || p.m > max_edges {
        return Err(Error::InvalidInstance(format!(
            "m = {} is outside [{}, {max_edges}] for n = {}",
            p.m,
            p.n - 1,
            p.n
        )));
    }
    if p.cost_min < 0 || p.cost_max < p.cost_min || p.deviation_max < 0 {
        return Err(Error::InvalidInstance("cost ranges must be non-negative and non-empty".into()));
    }
    if p.k + 1 > p.n {
        return Err(Error::InvalidRecovery { k: p.k, max: p.n - 1 });
    }
    if p.gamma < 0 || (p.model == ScenarioModel::DiscreteBudget && p.gamma as usize > p.m) {
        return Err(Error::InvalidInstance(format!("gamma = {} is out of range", p.gamma)));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut order: Vec<usize> = (0..p.n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![vec![false; p.n]; p.n];
    let mut pairs = Vec::with_capacity(p.m);
    for i in 1..p.n {
        let (a, b) = (order[i], order[rng.gen_range(0..i)]);
        present[a][b] = true;
        present[b][a] = true;
        pairs.push((a.min(b), a.max(b)));
    }
    let mut rest: Vec<(usize, usize)> = (0..p.n)
        .flat_map(|u| (u + 1..p.n).map(move |v| (u, v)))
        .filter(|&(u, v)| !present[u][v])
        .collect();
    rest.shuffle(&mut rng);
    pairs.extend(rest.into_iter().take(p.m + 1 - p.n));
    pairs.shuffle(&mut rng);

    let edges = pairs
        .into_iter()
        .map(|(u, v)| EdgeRecord {
            u,
            v,
            first: rng.gen_range(p.cost_min..=p.cost_max),
            nominal: rng.gen_range(p.cost_min..=p.cost_max),
            deviation: rng.gen_range(0..=p.deviation_max),
        })
        .collect();
    Ok(InstanceFile {
        n: p.n,
        edges,
        k: p.k,
        model: p.model,
        gamma: p.gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instance() {
        let p = GenParams::new(8, 14, 42);
        assert_eq!(generate(&p).unwrap(), generate(&p).unwrap());
        let other = GenParams { seed: 43, ..p.clone() };
        assert_ne!(generate(&p).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn generated_instances_validate_and_connect() {
        for seed in 0..200 {
            for (n, m) in [(1, 0), (2, 1), (5, 4), (6, 10), (7, 21)] {
                let f = generate(&GenParams::new(n, m, seed)).unwrap();
                f.validate().unwrap();
                assert_eq!(f.edges.len(), m);
                assert!(f.graph().is_connected());
                let mut pairs: Vec<_> = f.edges.iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect();
                pairs.sort();
                pairs.dedup();
                assert_eq!(pairs.len(), m);
            }
        }
    }

    #[test]
    fn infeasible_m() {
        assert!(generate(&GenParams::new(5, 3, 0)).is_err());
        assert!(generate(&GenParams::new(5, 11, 0)).is_err());
    }
}
