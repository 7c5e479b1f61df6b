//! Brute-force reference implementations shared by the integration tests.
#![allow(dead_code)]

use rainbow_core::{
    sample_family, sample_uniform, AnyGraph, ColorSet, ColoredGraph, Model, ModelParams, SeedPlan,
};

/// `colors[u][v]` is the bit mask of colors on the pair `{u, v}`.
pub struct PairColors {
    pub n: usize,
    pub s: usize,
    colors: Vec<Vec<u64>>,
}

impl PairColors {
    pub fn of(graph: &AnyGraph) -> PairColors {
        let n = graph.n();
        let mut colors = vec![vec![0u64; n]; n];
        match graph {
            AnyGraph::Family(f) => {
                for (i, layer) in f.layers().iter().enumerate() {
                    for (u, v) in layer.edges() {
                        colors[u][v] |= 1 << i;
                        colors[v][u] |= 1 << i;
                    }
                }
            }
            AnyGraph::Uniform(g) => {
                for &(u, v, c) in g.edges() {
                    colors[u][v] |= 1 << c;
                    colors[v][u] |= 1 << c;
                }
            }
        }
        PairColors {
            n,
            s: graph.s(),
            colors,
        }
    }

    pub fn union_distance(&self, u: usize, v: usize) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[u] = 0;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            for x in 0..self.n {
                if self.colors[w][x] != 0 && dist[x] == usize::MAX {
                    dist[x] = dist[w] + 1;
                    queue.push_back(x);
                }
            }
        }
        (dist[v] != usize::MAX).then_some(dist[v])
    }

    /// Minimum length of a simple path from `source` to each vertex whose
    /// edges can be given pairwise distinct colors from `allowed`.
    pub fn rainbow_distances(&self, source: usize, allowed: ColorSet) -> Vec<Option<usize>> {
        let mut best = vec![None; self.n];
        let mut on_path = vec![false; self.n];
        on_path[source] = true;
        self.walk(source, 0, allowed.bits(), &mut on_path, &mut best);
        best[source] = Some(0);
        best
    }

    fn walk(
        &self,
        w: usize,
        used: u64,
        allowed: u64,
        on_path: &mut [bool],
        best: &mut [Option<usize>],
    ) {
        let len = used.count_ones() as usize;
        if best[w].is_none_or(|b| len < b) {
            best[w] = Some(len);
        }
        for x in 0..self.n {
            if on_path[x] {
                continue;
            }
            let mut avail = self.colors[w][x] & allowed & !used;
            while avail != 0 {
                let bit = avail & avail.wrapping_neg();
                avail ^= bit;
                on_path[x] = true;
                self.walk(x, used | bit, allowed, on_path, best);
                on_path[x] = false;
            }
        }
    }

    pub fn all_pairs_connected(&self) -> bool {
        let full = ColorSet::full(self.s).unwrap();
        (0..self.n).all(|u| self.rainbow_distances(u, full).iter().all(Option::is_some))
    }

    /// Spheres as the reference sees them: vertices grouped by rainbow
    /// distance, `max_t + 1` layers.
    pub fn spheres(&self, source: usize, allowed: ColorSet, max_t: usize) -> Vec<Vec<usize>> {
        let mut layers = vec![Vec::new(); max_t + 1];
        for (v, d) in self
            .rainbow_distances(source, allowed)
            .into_iter()
            .enumerate()
        {
            if let Some(d) = d.filter(|&d| d <= max_t) {
                layers[d].push(v);
            }
        }
        layers
    }
}

pub const SMALL_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// The `k`-th small random instance: `n` in 2..=10, `s` in 1..=4, `p` from
/// [`SMALL_PROBABILITIES`], alternating models.
pub fn small_instance(k: u64) -> AnyGraph {
    let n = 2 + (k % 9) as usize;
    let s = 1 + (k / 9 % 4) as usize;
    let p = SMALL_PROBABILITIES[(k / 36 % 3) as usize];
    let model = if k.is_multiple_of(2) {
        Model::Family
    } else {
        Model::Uniform
    };
    sample_with(n, s, p, model, 0x5EED_0000 + k, 0)
}

pub fn sample_with(n: usize, s: usize, p: f64, model: Model, seed: u64, trial: u64) -> AnyGraph {
    let params = ModelParams::with_probability(n, s, p, model).unwrap();
    let plan = SeedPlan::new(seed);
    match model {
        Model::Family => sample_family(&params, &plan, trial).unwrap().into(),
        Model::Uniform => sample_uniform(&params, &plan, trial).unwrap().into(),
    }
}

/// Compares distances, spheres (full palette and one sub-palette per
/// source) and connectivity against the reference; returns a description of
/// every disagreement.
pub fn oracle_mismatches(graph: &AnyGraph, sub_palette: ColorSet) -> Vec<String> {
    use rainbow_core::engine;
    let reference = PairColors::of(graph);
    let n = graph.n();
    let full = ColorSet::full(graph.s()).unwrap();
    let sub = sub_palette.intersection(full);
    let mut out = Vec::new();
    for u in 0..n {
        let expected = reference.rainbow_distances(u, full);
        for (v, want) in expected.iter().enumerate() {
            let got = engine::rainbow_distance(graph, u, v).unwrap();
            if got != *want {
                out.push(format!("distance {u}->{v}: got {got:?}, expected {want:?}"));
            }
        }
        for allowed in [full, sub] {
            let got = engine::rainbow_spheres(graph, u, allowed, allowed.len()).unwrap();
            let expected = reference.spheres(u, allowed, allowed.len());
            if got.layers != expected {
                out.push(format!(
                    "spheres from {u} with {allowed:?}: got {:?}, expected {expected:?}",
                    got.layers
                ));
            }
        }
    }
    let connected = reference.all_pairs_connected();
    match engine::is_rainbow_connected(graph).unwrap().witness() {
        None if !connected => out.push("reported connected".into()),
        Some(_) if connected => out.push("reported disconnected".into()),
        Some((u, v)) if reference.rainbow_distances(u, full)[v].is_some() => {
            out.push(format!("witness ({u}, {v}) is rainbow connected"))
        }
        _ => {}
    }
    out
}

/// Connectivity decided the slow way: full spheres from every source.
pub fn connected_by_spheres(graph: &AnyGraph) -> bool {
    use rainbow_core::engine;
    let full = ColorSet::full(graph.s()).unwrap();
    (0..graph.n()).all(|u| {
        let spheres = engine::rainbow_spheres(graph, u, full, full.len()).unwrap();
        spheres.layers.iter().map(Vec::len).sum::<usize>() == graph.n()
    })
}
