//! Graph types for the two random edge-colored models.
//!
//! A [`GraphFamily`] is a list of `s` simple graphs ("layers") on the shared
//! vertex set `0..n`; layer `i` carries color `i`, and a pair may appear in
//! several layers. An [`EdgeColoredGraph`] is a single simple graph whose
//! edges each carry exactly one color. Both expose the same
//! [`ColoredAdjacency`] view, which is all the rainbow engine needs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::color::{check_capacity, ColorSet};
use crate::error::{Error, Result};

/// Which random model a graph was drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// `s` independent `G(n, c ln n / (s n))` layers, layer `i` colored `i`.
    Family,
    /// One `G(n, c ln n / n)` graph, each edge colored uniformly from `s` colors.
    Uniform,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Family => "family",
            Model::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        match s {
            "family" => Ok(Model::Family),
            "uniform" => Ok(Model::Uniform),
            other => Err(Error::Domain(format!(
                "unknown model {other:?}, expected \"family\" or \"uniform\""
            ))),
        }
    }
}

/// Size, palette, and edge probability of one model instance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    s: usize,
    c: f64,
    p: f64,
    model: Model,
}

impl ModelParams {
    /// Derives `p` from the density constant `c` (natural logarithm).
    ///
    /// `p = c ln n / (s n)` for [`Model::Family`] and `p = c ln n / n` for
    /// [`Model::Uniform`]. Fails when `n < 2`, `s < 1`, `c <= 1`, or the
    /// resulting `p` exceeds one.
    pub fn derive(n: usize, s: usize, c: f64, model: Model) -> Result<ModelParams> {
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        if s < 1 {
            return Err(Error::Domain("s must be at least 1".into()));
        }
        if c.is_nan() || c <= 1.0 {
            return Err(Error::Domain(format!("c must exceed 1, got {c}")));
        }
        let ln_n = (n as f64).ln();
        let p = match model {
            Model::Family => c * ln_n / (s as f64 * n as f64),
            Model::Uniform => c * ln_n / n as f64,
        };
        if p.is_nan() || p > 1.0 {
            return Err(Error::Domain(format!(
                "edge probability {p} exceeds 1 for n={n}, s={s}, c={c}"
            )));
        }
        Ok(ModelParams { n, s, c, p, model })
    }

    /// Builds parameters with an explicit edge probability.
    ///
    /// `c` is back-computed from `p` so the model relation still holds; it is
    /// not required to exceed one. Used for degenerate cases such as `p = 0`
    /// or `p = 1`.
    pub fn with_probability(n: usize, s: usize, p: f64, model: Model) -> Result<ModelParams> {
        if n < 2 {
            return Err(Error::Domain(format!("n must be at least 2, got {n}")));
        }
        if s < 1 {
            return Err(Error::Domain("s must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!("p must lie in [0, 1], got {p}")));
        }
        let ln_n = (n as f64).ln();
        let c = match model {
            Model::Family => p * s as f64 * n as f64 / ln_n,
            Model::Uniform => p * n as f64 / ln_n,
        };
        Ok(ModelParams { n, s, c, p, model })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn model(&self) -> Model {
        self.model
    }
}

/// A simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphLayer {
    adjacency: Vec<Vec<u32>>,
    edge_count: usize,
}

impl GraphLayer {
    pub fn empty(n: usize) -> GraphLayer {
        GraphLayer {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a layer from unordered pairs. Duplicate pairs collapse;
    /// self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<GraphLayer>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!("too many vertices: {n}")));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adjacency[u].push(v as u32);
            adjacency[v].push(u as u32);
        }
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Ok(GraphLayer {
            adjacency,
            edge_count: degree_sum / 2,
        })
    }

    /// Builds a layer from `(u, v)` pairs already known to be distinct with
    /// `u < v < n`, as produced by the samplers.
    pub(crate) fn from_canonical_pairs(n: usize, pairs: &[(u32, u32)]) -> GraphLayer {
        let mut degree = vec![0usize; n];
        for &(u, v) in pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut adjacency: Vec<Vec<u32>> = degree.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in pairs {
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        GraphLayer {
            adjacency,
            edge_count: pairs.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&(v as u32)).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Checks symmetry, absence of self-loops, and strictly sorted lists.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let mut degree_sum = 0;
        for (u, list) in self.adjacency.iter().enumerate() {
            degree_sum += list.len();
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "adjacency of {u} not strictly sorted"
                )));
            }
            for &v in list {
                let v = v as usize;
                if v >= n {
                    return Err(Error::InvalidGraph(format!(
                        "neighbor {v} of {u} out of range"
                    )));
                }
                if v == u {
                    return Err(Error::InvalidGraph(format!("self-loop at {u}")));
                }
                if self.adjacency[v].binary_search(&(u as u32)).is_err() {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({u}, {v}) not symmetric"
                    )));
                }
            }
        }
        if degree_sum != 2 * self.edge_count {
            return Err(Error::InvalidGraph("edge count mismatch".into()));
        }
        Ok(())
    }
}

/// Compressed adjacency where each neighbor carries the set of colors on
/// which the edge exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredAdjacency {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    colors: Vec<ColorSet>,
}

impl ColoredAdjacency {
    /// Builds from `(u, v, color)` triples (each pair listed once per color).
    fn build(n: usize, triples: impl Iterator<Item = (usize, usize, usize)>) -> Self {
        let mut entries: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n];
        for (u, v, color) in triples {
            entries[u].push((v as u32, 1u64 << color));
            entries[v].push((u as u32, 1u64 << color));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets: Vec<u32> = Vec::new();
        let mut colors: Vec<ColorSet> = Vec::new();
        offsets.push(0);
        for mut list in entries {
            list.sort_unstable();
            for (v, mask) in list {
                if targets.len() > *offsets.last().unwrap() && *targets.last().unwrap() == v {
                    let last = colors.len() - 1;
                    colors[last] = ColorSet::from_bits(colors[last].bits() | mask);
                } else {
                    targets.push(v);
                    colors.push(ColorSet::from_bits(mask));
                }
            }
            offsets.push(targets.len());
        }
        ColoredAdjacency {
            offsets,
            targets,
            colors,
        }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Neighbors of `v` in ascending order, each with its edge colors.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, ColorSet)> + '_ {
        let range = self.offsets[v]..self.offsets[v + 1];
        self.targets[range.clone()]
            .iter()
            .zip(&self.colors[range])
            .map(|(&t, &c)| (t as usize, c))
    }

    pub(crate) fn raw(&self, v: usize) -> (&[u32], &[ColorSet]) {
        let range = self.offsets[v]..self.offsets[v + 1];
        (&self.targets[range.clone()], &self.colors[range])
    }
}

/// Read access shared by both models; what the rainbow engine consumes.
pub trait ColoredGraph {
    fn n(&self) -> usize;
    /// Palette size; colors are `0..s`.
    fn s(&self) -> usize;
    fn adjacency(&self) -> &ColoredAdjacency;
    /// The simple graph of all pairs carrying at least one color.
    fn union_graph(&self) -> GraphLayer;
}

/// `s` color layers on a common vertex set.
#[derive(Clone, Debug)]
pub struct GraphFamily {
    params: Option<ModelParams>,
    layers: Vec<GraphLayer>,
    adjacency: ColoredAdjacency,
}

impl GraphFamily {
    /// Assembles a family; every layer must have the same vertex count and
    /// there must be between 1 and 64 layers.
    pub fn new(layers: Vec<GraphLayer>) -> Result<GraphFamily> {
        Self::assemble(None, layers)
    }

    pub(crate) fn with_params(params: ModelParams, layers: Vec<GraphLayer>) -> Result<GraphFamily> {
        Self::assemble(Some(params), layers)
    }

    fn assemble(params: Option<ModelParams>, layers: Vec<GraphLayer>) -> Result<GraphFamily> {
        if layers.is_empty() {
            return Err(Error::InvalidGraph(
                "a family needs at least one layer".into(),
            ));
        }
        check_capacity(layers.len())?;
        let n = layers[0].n();
        if let Some(i) = layers.iter().position(|l| l.n() != n) {
            return Err(Error::InvalidGraph(format!(
                "layer {i} has {} vertices, layer 0 has {n}",
                layers[i].n()
            )));
        }
        if let Some(p) = &params {
            debug_assert_eq!(p.s(), layers.len());
            debug_assert_eq!(p.n(), n);
        }
        let adjacency = ColoredAdjacency::build(
            n,
            layers
                .iter()
                .enumerate()
                .flat_map(|(i, l)| l.edges().map(move |(u, v)| (u, v, i))),
        );
        Ok(GraphFamily {
            params,
            layers,
            adjacency,
        })
    }

    /// Parameters the family was sampled with; `None` for families read from
    /// files or built by hand.
    pub fn params(&self) -> Option<&ModelParams> {
        self.params.as_ref()
    }

    pub fn layers(&self) -> &[GraphLayer] {
        &self.layers
    }

    pub fn layer(&self, color: usize) -> &GraphLayer {
        &self.layers[color]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.n() != n {
                return Err(Error::InvalidGraph(format!(
                    "layer {i} has wrong vertex count"
                )));
            }
            layer
                .validate()
                .map_err(|e| Error::InvalidGraph(format!("layer {i}: {e}")))?;
        }
        Ok(())
    }
}

/// Two families are equal when they have the same layers; sampling
/// parameters are not compared.
impl PartialEq for GraphFamily {
    fn eq(&self, other: &Self) -> bool {
        self.layers == other.layers
    }
}

impl ColoredGraph for GraphFamily {
    fn n(&self) -> usize {
        self.layers[0].n()
    }

    fn s(&self) -> usize {
        self.layers.len()
    }

    fn adjacency(&self) -> &ColoredAdjacency {
        &self.adjacency
    }

    fn union_graph(&self) -> GraphLayer {
        union_graph(self)
    }
}

/// Union of all layers as one simple graph.
pub fn union_graph(family: &GraphFamily) -> GraphLayer {
    let n = family.n();
    let adjacency = (0..n)
        .map(|v| family.adjacency.raw(v).0.to_vec())
        .collect::<Vec<_>>();
    let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
    GraphLayer {
        adjacency,
        edge_count,
    }
}

/// A simple graph with exactly one color per edge.
#[derive(Clone, Debug)]
pub struct EdgeColoredGraph {
    params: Option<ModelParams>,
    s: usize,
    edges: Vec<(usize, usize, usize)>,
    underlying: GraphLayer,
    adjacency: ColoredAdjacency,
}

impl EdgeColoredGraph {
    /// Builds from `(u, v, color)` triples. Each unordered pair may appear
    /// only once; colors must be below `s`.
    pub fn new<I>(n: usize, s: usize, edges: I) -> Result<EdgeColoredGraph>
    where
        I: IntoIterator<Item = (usize, usize, usize)>,
    {
        Self::assemble(None, n, s, edges.into_iter().collect())
    }

    pub(crate) fn with_params(
        params: ModelParams,
        edges: Vec<(usize, usize, usize)>,
    ) -> Result<EdgeColoredGraph> {
        Self::assemble(Some(params), params.n(), params.s(), edges)
    }

    fn assemble(
        params: Option<ModelParams>,
        n: usize,
        s: usize,
        mut edges: Vec<(usize, usize, usize)>,
    ) -> Result<EdgeColoredGraph> {
        if s < 1 {
            return Err(Error::InvalidGraph("at least one color is required".into()));
        }
        check_capacity(s)?;
        for e in &mut edges {
            if e.2 >= s {
                return Err(Error::InvalidGraph(format!(
                    "color {} out of range for s={s}",
                    e.2
                )));
            }
            if e.0 > e.1 {
                *e = (e.1, e.0, e.2);
            }
        }
        edges.sort_unstable();
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::InvalidGraph(format!(
                "pair ({}, {}) colored more than once",
                w[0].0, w[0].1
            )));
        }
        let underlying = GraphLayer::from_edges(n, edges.iter().map(|&(u, v, _)| (u, v)))?;
        let adjacency = ColoredAdjacency::build(n, edges.iter().copied());
        Ok(EdgeColoredGraph {
            params,
            s,
            edges,
            underlying,
            adjacency,
        })
    }

    pub fn params(&self) -> Option<&ModelParams> {
        self.params.as_ref()
    }

    /// Edges `(u, v, color)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    /// The uncolored graph.
    pub fn underlying(&self) -> &GraphLayer {
        &self.underlying
    }

    /// Number of edges carrying each color.
    pub fn color_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.s];
        for &(_, _, c) in &self.edges {
            counts[c] += 1;
        }
        counts
    }

    pub fn validate(&self) -> Result<()> {
        self.underlying.validate()?;
        if self.underlying.edge_count() != self.edges.len() {
            return Err(Error::InvalidGraph("duplicate pair in edge list".into()));
        }
        if self.edges.iter().any(|&(u, v, c)| u >= v || c >= self.s) {
            return Err(Error::InvalidGraph("non-canonical edge or color".into()));
        }
        Ok(())
    }
}

impl PartialEq for EdgeColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s
            && self.underlying.n() == other.underlying.n()
            && self.edges == other.edges
    }
}

impl ColoredGraph for EdgeColoredGraph {
    fn n(&self) -> usize {
        self.underlying.n()
    }

    fn s(&self) -> usize {
        self.s
    }

    fn adjacency(&self) -> &ColoredAdjacency {
        &self.adjacency
    }

    fn union_graph(&self) -> GraphLayer {
        self.underlying.clone()
    }
}

/// Either model, as read from a graph file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyGraph {
    Family(GraphFamily),
    Uniform(EdgeColoredGraph),
}

impl AnyGraph {
    pub fn model(&self) -> Model {
        match self {
            AnyGraph::Family(_) => Model::Family,
            AnyGraph::Uniform(_) => Model::Uniform,
        }
    }

    /// Largest degree within a single color class.
    pub fn max_layer_degree(&self) -> usize {
        match self {
            AnyGraph::Family(f) => crate::engine::max_layer_degree(f),
            AnyGraph::Uniform(g) => {
                let mut deg = vec![vec![0usize; g.n()]; g.s()];
                for &(u, v, c) in g.edges() {
                    deg[c][u] += 1;
                    deg[c][v] += 1;
                }
                deg.iter().flatten().copied().max().unwrap_or(0)
            }
        }
    }
}

impl ColoredGraph for AnyGraph {
    fn n(&self) -> usize {
        match self {
            AnyGraph::Family(g) => g.n(),
            AnyGraph::Uniform(g) => g.n(),
        }
    }

    fn s(&self) -> usize {
        match self {
            AnyGraph::Family(g) => g.s(),
            AnyGraph::Uniform(g) => g.s(),
        }
    }

    fn adjacency(&self) -> &ColoredAdjacency {
        match self {
            AnyGraph::Family(g) => g.adjacency(),
            AnyGraph::Uniform(g) => g.adjacency(),
        }
    }

    fn union_graph(&self) -> GraphLayer {
        match self {
            AnyGraph::Family(g) => g.union_graph(),
            AnyGraph::Uniform(g) => g.union_graph(),
        }
    }
}

impl From<GraphFamily> for AnyGraph {
    fn from(g: GraphFamily) -> Self {
        AnyGraph::Family(g)
    }
}

impl From<EdgeColoredGraph> for AnyGraph {
    fn from(g: EdgeColoredGraph) -> Self {
        AnyGraph::Uniform(g)
    }
}
