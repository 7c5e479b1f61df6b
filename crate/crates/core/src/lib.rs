//! Random edge-colored graphs and exact rainbow connectivity.
//!
//! Two random models are supported:
//!
//! * **family**: `s` independent `G(n, p)` graphs on a common vertex set with
//!   `p = c ln n / (s n)`; graph `i` carries color `i`.
//! * **uniform**: one `G(n, p)` graph with `p = c ln n / n`, each edge
//!   colored uniformly at random from `s` colors.
//!
//! A *rainbow path* uses every color at most once. The [`engine`] decides
//! rainbow reachability exactly, [`theory`] evaluates the closed-form
//! threshold bounds, and [`harness`] runs seeded Monte Carlo experiments that
//! put the two side by side.
//!
//! ```
//! use rainbow_core::{engine, ColorSet, GraphFamily, GraphLayer};
//!
//! // 0 -a- 1 -b- 2 with a single color is not rainbow; with two it is.
//! let one = GraphFamily::new(vec![GraphLayer::from_edges(3, [(0, 1), (1, 2)])?])?;
//! assert_eq!(engine::rainbow_distance(&one, 0, 2)?, None);
//!
//! let two = GraphFamily::new(vec![
//!     GraphLayer::from_edges(3, [(0, 1)])?,
//!     GraphLayer::from_edges(3, [(1, 2)])?,
//! ])?;
//! assert_eq!(engine::rainbow_distance(&two, 0, 2)?, Some(2));
//! let spheres = engine::rainbow_spheres(&two, 0, ColorSet::full(2)?, 2)?;
//! assert_eq!(spheres.layers, vec![vec![0], vec![1], vec![2]]);
//! # Ok::<(), rainbow_core::Error>(())
//! ```

pub mod color;
pub mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod report;
pub mod sample;
pub mod theory;

pub use color::{ColorSet, MAX_COLORS};
pub use engine::{Connectivity, Pruning, SphereResult};
pub use error::{Error, Result};
pub use graph::{
    union_graph, AnyGraph, ColoredAdjacency, ColoredGraph, EdgeColoredGraph, GraphFamily,
    GraphLayer, Model, ModelParams,
};
pub use harness::{Density, Harness, ThresholdEstimate, TrialRecord};
pub use sample::{sample_family, sample_uniform, SeedPlan};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/models.md")]
    struct Models;
    #[doc = include_str!("../../../book/src/search.md")]
    struct Search;
    #[doc = include_str!("../../../book/src/bounds.md")]
    struct Bounds;
    #[doc = include_str!("../../../book/src/experiments.md")]
    struct Experiments;
}
