//! Seeded samplers for both random models.
//!
//! Pairs `(u, v)` with `u < v` are enumerated lexicographically and edges are
//! selected by geometric skips along that order, so the cost is proportional
//! to the number of edges drawn. Every trial gets its own ChaCha stream keyed
//! by `(master_seed, trial_index)`; the sample depends on nothing else.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeColoredGraph, GraphFamily, GraphLayer, Model, ModelParams};

/// Derives a reproducible random stream for each trial from one master seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedPlan {
    pub master_seed: u64,
}

impl SeedPlan {
    pub const fn new(master_seed: u64) -> SeedPlan {
        SeedPlan { master_seed }
    }

    /// The stream for trial `trial_index`.
    pub fn rng(&self, trial_index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(trial_index);
        rng
    }

    /// An independent plan for a labelled sub-experiment (for example one
    /// point of a parameter scan).
    pub fn child(&self, label: u64) -> SeedPlan {
        SeedPlan::new(splitmix64(
            self.master_seed ^ splitmix64(label.wrapping_add(0x5EED)),
        ))
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE5_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws a `G(n, p)` edge set as canonical pairs in lexicographic order.
pub(crate) fn sample_pairs<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Vec<(u32, u32)> {
    let total = (n as u64) * (n as u64 - 1) / 2;
    if p <= 0.0 || total == 0 {
        return Vec::new();
    }
    let geo = Geometric::new(p).expect("p validated by ModelParams");
    let mut pairs = Vec::with_capacity(((total as f64) * p * 1.1) as usize + 8);
    // Row u holds pairs (u, u+1..n); `row_start` is the index of (u, u+1).
    let mut u = 0u64;
    let mut row_start = 0u64;
    let n64 = n as u64;
    let mut next = 0u64;
    loop {
        let skip = geo.sample(rng);
        let idx = match next.checked_add(skip) {
            Some(i) if i < total => i,
            _ => break,
        };
        while idx >= row_start + (n64 - 1 - u) {
            row_start += n64 - 1 - u;
            u += 1;
        }
        let v = u + 1 + (idx - row_start);
        pairs.push((u as u32, v as u32));
        next = idx + 1;
    }
    pairs
}

/// Samples `s` independent `G(n, p)` layers for trial `trial_index`.
pub fn sample_family(
    params: &ModelParams,
    plan: &SeedPlan,
    trial_index: u64,
) -> Result<GraphFamily> {
    if params.model() != Model::Family {
        return Err(Error::Domain(
            "sample_family needs family-model parameters".into(),
        ));
    }
    let mut rng = plan.rng(trial_index);
    let layers = (0..params.s())
        .map(|_| {
            let pairs = sample_pairs(params.n(), params.p(), &mut rng);
            GraphLayer::from_canonical_pairs(params.n(), &pairs)
        })
        .collect();
    GraphFamily::with_params(*params, layers)
}

/// Samples one `G(n, p)` graph and colors each edge uniformly from `s` colors.
pub fn sample_uniform(
    params: &ModelParams,
    plan: &SeedPlan,
    trial_index: u64,
) -> Result<EdgeColoredGraph> {
    if params.model() != Model::Uniform {
        return Err(Error::Domain(
            "sample_uniform needs uniform-model parameters".into(),
        ));
    }
    let mut rng = plan.rng(trial_index);
    let pairs = sample_pairs(params.n(), params.p(), &mut rng);
    let s = params.s();
    let edges = pairs
        .into_iter()
        .map(|(u, v)| (u as usize, v as usize, rng.random_range(0..s)))
        .collect();
    EdgeColoredGraph::with_params(*params, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{union_graph, ColoredGraph};

    fn family(n: usize, s: usize, p: f64) -> ModelParams {
        ModelParams::with_probability(n, s, p, Model::Family).unwrap()
    }

    #[test]
    fn zero_probability_gives_empty_layers() {
        let f = sample_family(&family(30, 4, 0.0), &SeedPlan::new(1), 0).unwrap();
        assert!(f.layers().iter().all(|l| l.edge_count() == 0));
        let params = ModelParams::with_probability(30, 4, 0.0, Model::Uniform).unwrap();
        let g = sample_uniform(&params, &SeedPlan::new(1), 0).unwrap();
        assert!(g.edges().is_empty());
    }

    #[test]
    fn unit_probability_gives_complete_layers() {
        let f = sample_family(&family(9, 3, 1.0), &SeedPlan::new(1), 0).unwrap();
        for layer in f.layers() {
            assert_eq!(layer.edge_count(), 36);
            layer.validate().unwrap();
        }
        let params = ModelParams::with_probability(9, 1, 1.0, Model::Uniform).unwrap();
        let g = sample_uniform(&params, &SeedPlan::new(1), 0).unwrap();
        assert_eq!(g.edges().len(), 36);
        assert!(g.edges().iter().all(|e| e.2 == 0));
    }

    #[test]
    fn pair_enumeration_is_lexicographic() {
        let mut rng = SeedPlan::new(3).rng(0);
        let pairs = sample_pairs(5, 1.0, &mut rng);
        let expected: Vec<(u32, u32)> = (0..5u32)
            .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
            .collect();
        assert_eq!(pairs, expected);
    }

    #[test]
    fn deterministic_per_trial() {
        let params = ModelParams::derive(200, 3, 2.0, Model::Family).unwrap();
        let plan = SeedPlan::new(77);
        let a = sample_family(&params, &plan, 5).unwrap();
        let b = sample_family(&params, &plan, 5).unwrap();
        let c = sample_family(&params, &plan, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        a.validate().unwrap();
    }

    #[test]
    fn model_mismatch_rejected() {
        let params = ModelParams::derive(200, 3, 2.0, Model::Uniform).unwrap();
        assert!(sample_family(&params, &SeedPlan::new(0), 0).is_err());
        let params = ModelParams::derive(200, 3, 2.0, Model::Family).unwrap();
        assert!(sample_uniform(&params, &SeedPlan::new(0), 0).is_err());
    }

    #[test]
    fn child_plans_differ() {
        let plan = SeedPlan::new(9);
        assert_ne!(plan.child(1), plan.child(2));
        assert_eq!(plan.child(1), plan.child(1));
    }

    #[test]
    fn union_bounded_by_layer_sum() {
        let params = ModelParams::derive(300, 4, 3.0, Model::Family).unwrap();
        let f = sample_family(&params, &SeedPlan::new(2), 0).unwrap();
        let total: usize = f.layers().iter().map(GraphLayer::edge_count).sum();
        let union = union_graph(&f);
        assert!(union.edge_count() <= total);
        let disjoint = (0..f.n()).all(|v| f.adjacency().neighbors(v).all(|(_, c)| c.len() == 1));
        assert_eq!(union.edge_count() == total, disjoint);
    }
}
