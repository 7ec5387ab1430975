#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recotree::cli::gen::{generate, GenParams};
use recotree::robust::{IntervalInstance, ScenarioModel};
use recotree::{Cost, Graph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected simple graph with `n` nodes and `m` edges plus
/// three cost vectors drawn from `lo..=hi`.
#[allow(clippy::too_many_arguments)]
pub fn random_instance(
    seed: u64,
    n: usize,
    m: usize,
    lo: Cost,
    hi: Cost,
    k: usize,
    model: ScenarioModel,
    gamma: Cost,
) -> IntervalInstance {
    let file = generate(&GenParams {
        n,
        m,
        cost_min: lo,
        cost_max: hi,
        deviation_max: hi,
        k,
        model,
        gamma,
        seed,
    })
    .unwrap();
    file.to_instance()
}

/// Sizes drawn from `n_range` with `m` between `n - 1` and `m_max`.
pub fn random_shape(rng: &mut ChaCha8Rng, n_lo: usize, n_hi: usize, m_max: usize) -> (usize, usize) {
    let n = rng.gen_range(n_lo..=n_hi);
    let m = rng.gen_range(n - 1..=m_max.min(n * (n - 1) / 2));
    (n, m)
}

/// Number of spanning trees by the matrix-tree theorem: a fraction-free
/// (Bareiss) determinant of the Laplacian with its last row and column removed.
pub fn kirchhoff_count(graph: &Graph) -> i128 {
    let n = graph.node_count();
    if n == 1 {
        return 1;
    }
    let mut lap = vec![vec![0i128; n]; n];
    for e in graph.edges() {
        lap[e.u][e.u] += 1;
        lap[e.v][e.v] += 1;
        lap[e.u][e.v] -= 1;
        lap[e.v][e.u] -= 1;
    }
    let size = n - 1;
    let mut a: Vec<Vec<i128>> = lap.into_iter().take(size).map(|r| r[..size].to_vec()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..size {
        if a[k][k] == 0 {
            match (k + 1..size).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[size - 1][size - 1]
}
