//! Timing sweep over generated instances.

use std::fmt::Write as _;
use std::time::Instant;

use super::gen::{generate, GenParams};
use crate::error::Result;
use crate::graph::Cost;
use crate::mst::minimum_spanning_tree;
use crate::{inc, rec, robust};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BenchSolver {
    Rec,
    Inc,
    Interval,
}

impl BenchSolver {
    fn id(self) -> &'static str {
        match self {
            BenchSolver::Rec => "rec-st",
            BenchSolver::Inc => "inc-st",
            BenchSolver::Interval => "interval",
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchParams {
    pub sizes: Vec<usize>,
    /// Edge counts per size; `None` means `edge_factor * n`.
    pub edges: Option<Vec<usize>>,
    pub edge_factor: usize,
    /// Recovery parameter; `None` means `n / 2`.
    pub k: Option<usize>,
    pub reps: usize,
    pub seed: u64,
    pub solver: BenchSolver,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub target: usize,
    pub solver: &'static str,
    pub wall_ns: u128,
    pub objective: Cost,
}

pub const CSV_HEADER: &str = "n,m,k,L,solver,wall_ns,objective";

pub fn run(p: &BenchParams) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &p.sizes {
        let ms = match &p.edges {
            Some(ms) => ms.clone(),
            None => vec![p.edge_factor * n],
        };
        for m in ms {
            let k = p.k.unwrap_or(n / 2).min(n - 1);
            for rep in 0..p.reps {
                let seed = p.seed.wrapping_add(rep as u64);
                let file = generate(&GenParams { k, ..GenParams::new(n, m, seed) })?;
                let inst = file.to_instance();
                let start = Instant::now();
                let objective = match p.solver {
                    BenchSolver::Rec => rec::solve_rec_st(&inst.graph, &inst.first_cost, &inst.nominal, k)?.total_cost,
                    BenchSolver::Inc => {
                        let base = minimum_spanning_tree(&inst.graph, &inst.first_cost)?;
                        inc::inc_st(&inst.graph, &inst.nominal, &base, k)?.cost
                    }
                    BenchSolver::Interval => robust::solve_interval(&inst)?.worst_case_total,
                };
                rows.push(BenchRow {
                    n,
                    m,
                    k,
                    target: n - 1 - k,
                    solver: p.solver.id(),
                    wall_ns: start.elapsed().as_nanos(),
                    objective,
                });
            }
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(out, "{},{},{},{},{},{},{}", r.n, r.m, r.k, r.target, r.solver, r.wall_ns, r.objective).unwrap();
    }
    out
}
