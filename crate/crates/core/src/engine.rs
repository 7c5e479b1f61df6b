//! Exact rainbow reachability.
//!
//! The search explores states `(w, S)`: vertex `w` is reachable from the
//! source by a rainbow walk whose colors are exactly `S`. States are
//! processed in layers `t = |S|`, so the first layer in which a vertex gets
//! any state is its rainbow distance. A rainbow walk can always be shortcut
//! to a rainbow path on a subset of its colors, so walk distance and path
//! distance coincide.
//!
//! With [`Pruning::Dominance`], a state `(w, S)` is dropped when `w` already
//! holds some `S' ⊆ S`: anything reachable from `(w, S)` is reachable from
//! `(w, S')` no later. Each vertex therefore keeps an antichain of minimal
//! color sets.

use serde::{Deserialize, Serialize};

use crate::color::{check_capacity, ColorSet};
use crate::error::{Error, Result};
use crate::graph::{ColoredAdjacency, ColoredGraph, GraphFamily, GraphLayer};

const UNSEEN: u32 = u32::MAX;

/// State pruning policy for the sphere search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pruning {
    /// Keep only minimal color sets per vertex.
    #[default]
    Dominance,
    /// Keep every distinct `(vertex, color set)` state. Exponential; meant
    /// for cross-checking on small graphs.
    Off,
}

/// Rainbow spheres around a source: `layers[t]` holds the vertices whose
/// minimum rainbow distance from `source`, using only colors in `allowed`,
/// is exactly `t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereResult {
    pub source: usize,
    pub allowed: ColorSet,
    pub layers: Vec<Vec<usize>>,
}

impl SphereResult {
    /// Size of each sphere.
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Vec::len).collect()
    }

    /// Vertices at rainbow distance at most `t`.
    pub fn ball(&self, t: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.layers.iter().take(t + 1).flatten().copied().collect();
        out.sort_unstable();
        out
    }

    /// Layer index of `v`, if reached.
    pub fn distance_to(&self, v: usize) -> Option<usize> {
        self.layers.iter().position(|l| l.binary_search(&v).is_ok())
    }
}

/// Outcome of a whole-graph rainbow connectivity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    Connected,
    /// `witness = (u, v)` with `u < v` has no rainbow path.
    Disconnected {
        witness: (usize, usize),
    },
}

impl Connectivity {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connectivity::Connected)
    }

    pub fn witness(&self) -> Option<(usize, usize)> {
        match *self {
            Connectivity::Connected => None,
            Connectivity::Disconnected { witness } => Some(witness),
        }
    }
}

/// Reusable per-query workspace for the layered state search.
struct Search<'g> {
    adj: &'g ColoredAdjacency,
    allowed: u64,
    pruning: Pruning,
    layer_of: Vec<u32>,
    kept: Vec<Vec<u64>>,
    touched: Vec<u32>,
    frontier: Vec<(u32, u64)>,
    next: Vec<(u32, u64)>,
    depth: usize,
    /// Admit `(u, S)` only if `target_dist[u] <= |allowed| - |S|`.
    target_dist: Option<Vec<u32>>,
}

impl<'g> Search<'g> {
    fn new(adj: &'g ColoredAdjacency, allowed: ColorSet, pruning: Pruning) -> Self {
        let n = adj.n();
        Search {
            adj,
            allowed: allowed.bits(),
            pruning,
            layer_of: vec![UNSEEN; n],
            kept: vec![Vec::new(); n],
            touched: Vec::new(),
            frontier: Vec::new(),
            next: Vec::new(),
            depth: 0,
            target_dist: None,
        }
    }

    fn start(&mut self, source: usize) {
        for &v in &self.touched {
            self.layer_of[v as usize] = UNSEEN;
            self.kept[v as usize].clear();
        }
        self.touched.clear();
        self.frontier.clear();
        self.depth = 0;
        self.layer_of[source] = 0;
        self.kept[source].push(0);
        self.touched.push(source as u32);
        self.frontier.push((source as u32, 0));
    }

    fn exhausted(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Expands the current layer; returns the vertices reached for the first
    /// time, in ascending order.
    fn step(&mut self, newly: &mut Vec<usize>) {
        newly.clear();
        self.next.clear();
        self.depth += 1;
        let depth = self.depth as u32;
        let budget = self.allowed.count_ones().saturating_sub(depth);
        for &(w, used) in &self.frontier {
            let free = self.allowed & !used;
            if free == 0 {
                continue;
            }
            let (targets, colors) = self.adj.raw(w as usize);
            for (&u, &edge_colors) in targets.iter().zip(colors) {
                if let Some(dist) = &self.target_dist {
                    if dist[u as usize] > budget {
                        continue;
                    }
                }
                let mut avail = edge_colors.bits() & free;
                while avail != 0 {
                    let bit = avail & avail.wrapping_neg();
                    avail ^= bit;
                    let set = used | bit;
                    let kept = &mut self.kept[u as usize];
                    let redundant = match self.pruning {
                        Pruning::Dominance => kept.iter().any(|&k| k & !set == 0),
                        Pruning::Off => kept.contains(&set),
                    };
                    if redundant {
                        continue;
                    }
                    if kept.is_empty() {
                        self.touched.push(u);
                    }
                    kept.push(set);
                    self.next.push((u, set));
                    if self.layer_of[u as usize] == UNSEEN {
                        self.layer_of[u as usize] = depth;
                        newly.push(u as usize);
                    }
                }
            }
        }
        self.next.sort_unstable();
        std::mem::swap(&mut self.frontier, &mut self.next);
        newly.sort_unstable();
    }
}

/// Union-graph BFS distances from a set of sources; unreachable vertices get
/// `u32::MAX`.
fn union_distances(adj: &ColoredAdjacency, sources: &[usize]) -> Vec<u32> {
    let mut dist = vec![UNSEEN; adj.n()];
    let mut queue = std::collections::VecDeque::with_capacity(adj.n());
    for &v in sources {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(w) = queue.pop_front() {
        let d = dist[w] + 1;
        for &u in adj.raw(w).0 {
            if dist[u as usize] == UNSEEN {
                dist[u as usize] = d;
                queue.push_back(u as usize);
            }
        }
    }
    dist
}

fn check_vertex(n: usize, v: usize) -> Result<()> {
    if v >= n {
        Err(Error::Domain(format!("vertex {v} out of range for n={n}")))
    } else {
        Ok(())
    }
}

/// Rainbow spheres `Γ_0 .. Γ_max_t` around `source` using colors in `allowed`.
///
/// `max_t` may not exceed `|allowed|`, since no rainbow path is longer than
/// its palette.
pub fn rainbow_spheres<G: ColoredGraph + ?Sized>(
    graph: &G,
    source: usize,
    allowed: ColorSet,
    max_t: usize,
) -> Result<SphereResult> {
    rainbow_spheres_with(graph, source, allowed, max_t, Pruning::Dominance)
}

/// [`rainbow_spheres`] with an explicit pruning policy.
pub fn rainbow_spheres_with<G: ColoredGraph + ?Sized>(
    graph: &G,
    source: usize,
    allowed: ColorSet,
    max_t: usize,
    pruning: Pruning,
) -> Result<SphereResult> {
    check_capacity(graph.s())?;
    check_vertex(graph.n(), source)?;
    if max_t > allowed.len() {
        return Err(Error::Domain(format!(
            "max_t = {max_t} exceeds the {} allowed colors",
            allowed.len()
        )));
    }
    let mut search = Search::new(graph.adjacency(), allowed, pruning);
    search.start(source);
    let mut layers = vec![vec![source]];
    let mut newly = Vec::new();
    for _ in 0..max_t {
        if search.exhausted() {
            layers.push(Vec::new());
            continue;
        }
        search.step(&mut newly);
        layers.push(newly.clone());
    }
    Ok(SphereResult {
        source,
        allowed,
        layers,
    })
}

/// Length of a shortest rainbow path from `u` to `v` over the full palette,
/// or `None` when no rainbow path exists.
pub fn rainbow_distance<G: ColoredGraph + ?Sized>(
    graph: &G,
    u: usize,
    v: usize,
) -> Result<Option<usize>> {
    check_capacity(graph.s())?;
    check_vertex(graph.n(), u)?;
    check_vertex(graph.n(), v)?;
    if u == v {
        return Ok(Some(0));
    }
    let mut search = Search::new(
        graph.adjacency(),
        ColorSet::full(graph.s())?,
        Pruning::Dominance,
    );
    // A state farther from `v` (in the union graph) than its unused colors
    // can never finish a rainbow path to `v`.
    search.target_dist = Some(union_distances(graph.adjacency(), &[v]));
    search.start(u);
    let mut newly = Vec::new();
    while !search.exhausted() && search.depth < graph.s() {
        search.step(&mut newly);
        if search.layer_of[v] != UNSEEN {
            return Ok(Some(search.depth));
        }
    }
    Ok(None)
}

/// All-pairs union-graph distances as a row-major `n × n` matrix, capped at
/// `u8::MAX` (which also stands for "unreachable"). Sources are processed 64
/// at a time with one bit per source.
fn union_distance_matrix(adj: &ColoredAdjacency) -> Vec<u8> {
    let n = adj.n();
    let mut dist = vec![u8::MAX; n * n];
    let mut visited = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    let mut next = vec![0u64; n];
    for batch_start in (0..n).step_by(64) {
        let batch = (n - batch_start).min(64);
        visited.fill(0);
        frontier.fill(0);
        for k in 0..batch {
            let v = batch_start + k;
            visited[v] = 1 << k;
            frontier[v] = 1 << k;
            dist[v * n + v] = 0;
        }
        let mut depth = 0u8;
        while depth < u8::MAX - 1 {
            depth += 1;
            let mut any = false;
            for v in 0..n {
                let mut acc = 0u64;
                for &u in adj.raw(v).0 {
                    acc |= frontier[u as usize];
                }
                acc &= !visited[v];
                next[v] = acc;
                if acc != 0 {
                    any = true;
                    visited[v] |= acc;
                    let mut bits = acc;
                    while bits != 0 {
                        let k = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        dist[(batch_start + k) * n + v] = depth;
                    }
                }
            }
            if !any {
                break;
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }
    dist
}

/// One rainbow path per vertex along union-graph geodesics from a source,
/// found greedily. It may miss vertices that do have rainbow geodesics.
struct Geodesic {
    stamp: Vec<u32>,
    colors: Vec<u64>,
    frontier: Vec<u32>,
    next: Vec<u32>,
}

impl Geodesic {
    fn new(n: usize) -> Self {
        Geodesic {
            stamp: vec![UNSEEN; n],
            colors: vec![0; n],
            frontier: Vec::new(),
            next: Vec::new(),
        }
    }

    fn run(&mut self, adj: &ColoredAdjacency, row: &[u8], source: usize, s: usize) {
        let stamp = source as u32;
        self.stamp[source] = stamp;
        self.colors[source] = 0;
        self.frontier.clear();
        self.frontier.push(source as u32);
        for depth in 1..=s.min(u8::MAX as usize - 1) as u8 {
            self.next.clear();
            for &w in &self.frontier {
                let used = self.colors[w as usize];
                let (targets, colors) = adj.raw(w as usize);
                for (&u, &edge_colors) in targets.iter().zip(colors) {
                    let u = u as usize;
                    if row[u] != depth || self.stamp[u] == stamp {
                        continue;
                    }
                    let avail = edge_colors.bits() & !used;
                    if avail != 0 {
                        self.stamp[u] = stamp;
                        self.colors[u] = used | (avail & avail.wrapping_neg());
                        self.next.push(u as u32);
                    }
                }
            }
            if self.next.is_empty() {
                break;
            }
            std::mem::swap(&mut self.frontier, &mut self.next);
        }
    }

    fn color_set(&self, v: usize, source: usize) -> Option<u64> {
        (self.stamp[v] == source as u32).then(|| self.colors[v])
    }

    /// Whether a path to `j` follows from a found path to some vertex one or
    /// two edges away, extended with fresh colors.
    fn extends_to(&self, adj: &ColoredAdjacency, source: usize, j: usize) -> bool {
        let (near, near_colors) = adj.raw(j);
        for (&y, &c1) in near.iter().zip(near_colors) {
            if let Some(a) = self.color_set(y as usize, source) {
                if c1.bits() & !a != 0 {
                    return true;
                }
            }
        }
        for (&y, &c1) in near.iter().zip(near_colors) {
            let (far, far_colors) = adj.raw(y as usize);
            for (&z, &c2) in far.iter().zip(far_colors) {
                if z as usize == j {
                    continue;
                }
                if let Some(a) = self.color_set(z as usize, source) {
                    let first = c1.bits() & !a;
                    let second = c2.bits() & !a;
                    if first != 0 && second != 0 && !(first == second && first.count_ones() == 1) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

fn nearest_open(dist: &[u8], n: usize, open: &[usize], out: &mut Vec<u32>) {
    out.clear();
    out.resize(n, UNSEEN);
    for &j in open {
        for (slot, &d) in out.iter_mut().zip(&dist[j * n..(j + 1) * n]) {
            *slot = (*slot).min(d as u32);
        }
    }
}

/// Decides whether every pair of vertices is joined by a rainbow path.
///
/// Sources are scanned in ascending order. From source `i` only targets
/// `j > i` are open, since smaller ones were settled from their own side. A
/// target farther than `s` in the union graph is a witness right away.
/// Otherwise a greedy pass along union-graph geodesics settles most
/// targets, and a remaining target is settled if one of the greedy paths
/// extends to it by one or two edges with fresh colors. Whatever is still
/// open goes to the exact search, which only keeps states able to reach an
/// open target with the colors they have left. The first pair found
/// unreachable is the witness.
pub fn is_rainbow_connected<G: ColoredGraph + ?Sized>(graph: &G) -> Result<Connectivity> {
    check_capacity(graph.s())?;
    let n = graph.n();
    let s = graph.s();
    let adj = graph.adjacency();
    let dist = union_distance_matrix(adj);
    let mut greedy = Geodesic::new(n);
    let mut search = Search::new(adj, ColorSet::full(s)?, Pruning::Dominance);
    let mut newly = Vec::new();
    let mut open: Vec<usize> = Vec::with_capacity(n);
    let mut is_open = vec![false; n];
    let mut toward = Vec::new();
    for source in 0..n.saturating_sub(1) {
        let row = &dist[source * n..(source + 1) * n];
        if let Some(j) = (source + 1..n).find(|&j| row[j] as usize > s) {
            return Ok(Connectivity::Disconnected {
                witness: (source, j),
            });
        }
        greedy.run(adj, row, source, s);
        open.clear();
        open.extend((source + 1..n).filter(|&j| {
            greedy.color_set(j, source).is_none() && !greedy.extends_to(adj, source, j)
        }));
        if open.is_empty() {
            continue;
        }
        for &v in &open {
            is_open[v] = true;
        }
        nearest_open(&dist, n, &open, &mut toward);
        search.target_dist = Some(std::mem::take(&mut toward));
        search.start(source);
        let mut settled_at = open.len();
        while !open.is_empty() && !search.exhausted() && search.depth < s {
            search.step(&mut newly);
            for &v in &newly {
                is_open[v] = false;
            }
            open.retain(|&v| is_open[v]);
            if !open.is_empty() && 2 * open.len() <= settled_at {
                settled_at = open.len();
                let mut buf = search.target_dist.take().unwrap_or_default();
                nearest_open(&dist, n, &open, &mut buf);
                search.target_dist = Some(buf);
            }
        }
        toward = search.target_dist.take().unwrap_or_default();
        if let Some(&target) = open.first() {
            return Ok(Connectivity::Disconnected {
                witness: (source, target),
            });
        }
    }
    Ok(Connectivity::Connected)
}

/// BFS distances from `source`; `None` for unreachable vertices.
pub fn bfs_distances(layer: &GraphLayer, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; layer.n()];
    let mut queue = std::collections::VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(w) = queue.pop_front() {
        let d = dist[w].unwrap();
        for &u in layer.neighbors(w) {
            let u = u as usize;
            if dist[u].is_none() {
                dist[u] = Some(d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Whether the graph is connected. Graphs with at most one vertex are.
pub fn is_connected(layer: &GraphLayer) -> bool {
    layer.n() <= 1 || bfs_distances(layer, 0).iter().all(Option::is_some)
}

/// Exact diameter by BFS from every vertex; `None` means infinite
/// (disconnected). Sources are processed 64 at a time with one bit per
/// source.
pub fn bfs_diameter(layer: &GraphLayer) -> Option<usize> {
    let n = layer.n();
    if n <= 1 {
        return Some(0);
    }
    if !is_connected(layer) {
        return None;
    }
    let mut visited = vec![0u64; n];
    let mut frontier = vec![0u64; n];
    let mut next = vec![0u64; n];
    let mut diameter = 0;
    for batch_start in (0..n).step_by(64) {
        let batch = (n - batch_start).min(64);
        visited.fill(0);
        frontier.fill(0);
        for k in 0..batch {
            visited[batch_start + k] = 1u64 << k;
            frontier[batch_start + k] = 1u64 << k;
        }
        let mut depth = 0;
        loop {
            let mut any = false;
            for v in 0..n {
                let mut acc = 0u64;
                for &u in layer.neighbors(v) {
                    acc |= frontier[u as usize];
                }
                acc &= !visited[v];
                next[v] = acc;
                any |= acc != 0;
            }
            if !any {
                break;
            }
            depth += 1;
            for v in 0..n {
                visited[v] |= next[v];
            }
            std::mem::swap(&mut frontier, &mut next);
        }
        diameter = diameter.max(depth);
    }
    Some(diameter)
}

/// Largest degree of any vertex within any single layer.
pub fn max_layer_degree(family: &GraphFamily) -> usize {
    family
        .layers()
        .iter()
        .map(GraphLayer::max_degree)
        .max()
        .unwrap_or(0)
}
