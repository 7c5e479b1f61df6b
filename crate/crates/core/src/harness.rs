//! Seeded Monte Carlo experiments.
//!
//! Every trial is a pure function of `(params, seed plan, trial index)`.
//! Trials run on a rayon pool and are collected by index, so results do not
//! depend on the worker count.

use std::time::Instant;

use rand::seq::index::sample as sample_indices;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::color::ColorSet;
use crate::engine::{self, bfs_diameter, is_connected, is_rainbow_connected, rainbow_spheres};
use crate::error::{Error, Result};
use crate::graph::{AnyGraph, ColoredGraph, GraphFamily, Model, ModelParams};
use crate::sample::{sample_family, sample_uniform, SeedPlan};
use crate::theory;

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// How the edge probability is chosen for each palette size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Density {
    /// Density constant `c`; `p` follows the model relation.
    #[serde(rename = "c")]
    Constant(f64),
    /// Fixed edge probability, independent of `s`.
    #[serde(rename = "p")]
    Probability(f64),
}

impl Density {
    pub fn params(self, n: usize, s: usize, model: Model) -> Result<ModelParams> {
        match self {
            Density::Constant(c) => ModelParams::derive(n, s, c, model),
            Density::Probability(p) => ModelParams::with_probability(n, s, p, model),
        }
    }
}

/// One sampled graph and everything measured on it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial_index: u64,
    pub n: usize,
    pub s: usize,
    pub c: f64,
    pub model: Model,
    pub rainbow_connected: bool,
    pub witness_pair: Option<(usize, usize)>,
    pub union_connected: bool,
    /// `None` when the union graph is disconnected.
    pub union_diameter: Option<usize>,
    /// Largest single-layer degree; family model only.
    pub max_layer_degree: Option<usize>,
    pub elapsed_ms: f64,
}

impl TrialRecord {
    /// Rainbow connectivity implies a connected union of diameter at most `s`.
    pub fn is_consistent(&self) -> bool {
        !self.rainbow_connected
            || (self.union_connected && self.union_diameter.is_some_and(|d| d <= self.s))
    }
}

/// Samples one graph and evaluates it.
pub fn run_trial(params: &ModelParams, plan: &SeedPlan, trial_index: u64) -> Result<TrialRecord> {
    let started = Instant::now();
    let (graph, max_layer_degree): (AnyGraph, _) = match params.model() {
        Model::Family => {
            let f = sample_family(params, plan, trial_index)?;
            let d = engine::max_layer_degree(&f);
            (f.into(), Some(d))
        }
        Model::Uniform => (sample_uniform(params, plan, trial_index)?.into(), None),
    };
    let rainbow = is_rainbow_connected(&graph)?;
    let union = graph.union_graph();
    let union_diameter = bfs_diameter(&union);
    Ok(TrialRecord {
        trial_index,
        n: params.n(),
        s: params.s(),
        c: params.c(),
        model: params.model(),
        rainbow_connected: rainbow.is_connected(),
        witness_pair: rainbow.witness(),
        union_connected: union_diameter.is_some(),
        union_diameter,
        max_layer_degree,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Wilson score interval for `successes` out of `trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if successes == 0 {
        0.0
    } else {
        (center - half).clamp(0.0, phat)
    };
    let hi = if successes == trials {
        1.0
    } else {
        (center + half).clamp(phat, 1.0)
    };
    (lo, hi)
}

/// Success fraction with its 95% Wilson interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub trials: u64,
    pub successes: u64,
    pub fraction: f64,
    pub wilson_95: (f64, f64),
}

impl ProbabilityEstimate {
    pub fn from_counts(successes: u64, trials: u64) -> Self {
        ProbabilityEstimate {
            trials,
            successes,
            fraction: if trials == 0 {
                0.0
            } else {
                successes as f64 / trials as f64
            },
            wilson_95: wilson_interval(successes, trials, Z_95),
        }
    }
}

/// One point of a threshold curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub s: usize,
    #[serde(flatten)]
    pub estimate: ProbabilityEstimate,
}

/// Empirical rainbow-connectivity curve over a range of palette sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdEstimate {
    pub n: usize,
    pub density: Density,
    pub model: Model,
    pub curve: Vec<CurvePoint>,
    /// Smallest `s` whose success fraction reaches one half.
    pub s_star: Option<usize>,
}

/// Result of a scan: the curve plus every trial behind it, in `(s, trial)`
/// order.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanOutcome {
    pub estimate: ThresholdEstimate,
    pub records: Vec<TrialRecord>,
}

/// Per-layer degree check against `2 c ln n / ln ln n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DegreeCheck {
    pub n: usize,
    pub s: usize,
    pub bound: f64,
    pub max_degrees: Vec<usize>,
    pub holding: usize,
    pub fraction: f64,
}

/// One guarded step of the sphere-doubling check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingStep {
    pub t: usize,
    pub size_t: usize,
    pub size_next: usize,
    pub held: bool,
}

/// Sphere growth from one source with some colors excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoublingCheck {
    pub source: usize,
    pub excluded: ColorSet,
    pub color_exclusion_size: usize,
    pub steps: Vec<DoublingStep>,
}

impl DoublingCheck {
    pub fn all_held(&self) -> bool {
        self.steps.iter().all(|s| s.held)
    }
}

/// Guarded doubling steps read off a list of sphere sizes.
///
/// A step `t` is recorded for `1 <= t <= last_t` when sphere `t` is
/// nonempty and no sphere `1..=t` exceeds `n / 10`; it holds when sphere
/// `t + 1` is at least twice sphere `t`.
pub fn doubling_steps(sizes: &[usize], n: usize, last_t: usize) -> Vec<DoublingStep> {
    let cap = n as f64 / 10.0;
    let mut steps = Vec::new();
    let mut largest = 0usize;
    for t in 1..=last_t {
        let size_t = sizes.get(t).copied().unwrap_or(0);
        largest = largest.max(size_t);
        if largest as f64 > cap || size_t == 0 {
            break;
        }
        let size_next = sizes.get(t + 1).copied().unwrap_or(0);
        steps.push(DoublingStep {
            t,
            size_t,
            size_next,
            held: size_next >= 2 * size_t,
        });
    }
    steps
}

/// Runs experiments on a fixed-size worker pool.
#[derive(Clone, Debug)]
pub struct Harness {
    pool: std::sync::Arc<rayon::ThreadPool>,
    record_timing: bool,
}

impl Harness {
    /// `threads = None` uses the available parallelism. Wall-clock timings
    /// are left at zero unless `record_timing` is set, which keeps output
    /// files reproducible.
    pub fn new(threads: Option<usize>, record_timing: bool) -> Result<Harness> {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(k) = threads {
            if k == 0 {
                return Err(Error::Domain("thread count must be at least 1".into()));
            }
            builder = builder.num_threads(k);
        }
        let pool = builder
            .build()
            .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
        Ok(Harness {
            pool: std::sync::Arc::new(pool),
            record_timing,
        })
    }

    pub fn threads(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Runs trials `0..trials` in parallel, returned in index order.
    pub fn run_trials(
        &self,
        params: &ModelParams,
        plan: &SeedPlan,
        trials: u64,
    ) -> Result<Vec<TrialRecord>> {
        let mut records = self.pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|i| run_trial(params, plan, i))
                .collect::<Result<Vec<_>>>()
        })?;
        if !self.record_timing {
            for r in &mut records {
                r.elapsed_ms = 0.0;
            }
        }
        Ok(records)
    }

    /// Fraction of rainbow-connected samples with a 95% Wilson interval.
    pub fn estimate_probability(
        &self,
        n: usize,
        s: usize,
        density: Density,
        model: Model,
        trials: u64,
        master_seed: u64,
    ) -> Result<ProbabilityEstimate> {
        if trials == 0 {
            return Err(Error::Domain("at least one trial is required".into()));
        }
        let params = density.params(n, s, model)?;
        let records = self.run_trials(&params, &SeedPlan::new(master_seed), trials)?;
        Ok(tally(&records))
    }

    /// Estimates the success curve at every `s` in the range (ascending,
    /// no monotonicity assumed) and reports the first `s` reaching one half.
    /// Without an explicit range the default hint range for `n` is used.
    pub fn scan_threshold(
        &self,
        n: usize,
        density: Density,
        model: Model,
        trials_per_s: u64,
        master_seed: u64,
        s_range: Option<(usize, usize)>,
    ) -> Result<ScanOutcome> {
        let (lo, hi) = match s_range {
            Some(r) => r,
            None => theory::sweep_hint(n as u64)?,
        };
        if lo < 1 || lo > hi {
            return Err(Error::Domain(format!("empty palette range {lo}..={hi}")));
        }
        if trials_per_s == 0 {
            return Err(Error::Domain("at least one trial per s is required".into()));
        }
        let plan = SeedPlan::new(master_seed);
        let mut curve = Vec::new();
        let mut records = Vec::new();
        for s in lo..=hi {
            let params = density.params(n, s, model)?;
            let batch = self.run_trials(&params, &plan.child(s as u64), trials_per_s)?;
            curve.push(CurvePoint {
                s,
                estimate: tally(&batch),
            });
            records.extend(batch);
        }
        let s_star = first_crossing(&curve);
        Ok(ScanOutcome {
            estimate: ThresholdEstimate {
                n,
                density,
                model,
                curve,
                s_star,
            },
            records,
        })
    }

    /// Runs the same scan under both models with identical seeds.
    pub fn compare_models(
        &self,
        n: usize,
        density: Density,
        trials_per_s: u64,
        master_seed: u64,
        s_range: Option<(usize, usize)>,
    ) -> Result<(ScanOutcome, ScanOutcome)> {
        let family = self.scan_threshold(
            n,
            density,
            Model::Family,
            trials_per_s,
            master_seed,
            s_range,
        )?;
        let uniform = self.scan_threshold(
            n,
            density,
            Model::Uniform,
            trials_per_s,
            master_seed,
            s_range,
        )?;
        Ok((family, uniform))
    }

    /// Samples families at `s = s0(n, c)` and counts how often every layer
    /// stays below `2 c ln n / ln ln n`. `p_override` replaces the sampling
    /// probability while `c` still fixes `s` and the bound.
    pub fn check_degree_lemma(
        &self,
        n: usize,
        c: f64,
        trials: u64,
        master_seed: u64,
        p_override: Option<f64>,
    ) -> Result<DegreeCheck> {
        let (s, params) = lemma_params(n, c, p_override)?;
        let bound = theory::degree_bound(n as u64, c)?;
        let plan = SeedPlan::new(master_seed);
        let max_degrees = self.pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|i| sample_family(&params, &plan, i).map(|f| engine::max_layer_degree(&f)))
                .collect::<Result<Vec<_>>>()
        })?;
        let holding = max_degrees.iter().filter(|&&d| (d as f64) < bound).count();
        Ok(DegreeCheck {
            n,
            s,
            bound,
            fraction: if trials == 0 {
                1.0
            } else {
                holding as f64 / trials as f64
            },
            max_degrees,
            holding,
        })
    }

    /// For each run `k < sources`, samples a family at `s = s0(n, c)`, picks
    /// a random source and a random set of `exclusion_size` excluded colors,
    /// and records the guarded sphere-doubling steps. `p_override` works as
    /// in [`Harness::check_degree_lemma`].
    pub fn check_doubling_lemma(
        &self,
        n: usize,
        c: f64,
        sources: usize,
        exclusion_size: usize,
        master_seed: u64,
        p_override: Option<f64>,
    ) -> Result<Vec<DoublingCheck>> {
        let d = theory::doubling_depth(n as u64)?;
        if exclusion_size > d + 1 {
            return Err(Error::Domain(format!(
                "at most {} colors may be excluded at n = {n}, got {exclusion_size}",
                d + 1
            )));
        }
        let (s, params) = lemma_params(n, c, p_override)?;
        if exclusion_size >= s {
            return Err(Error::Domain(format!(
                "excluding {exclusion_size} of {s} colors leaves nothing to search"
            )));
        }
        let plan = SeedPlan::new(master_seed);
        let picks = plan.child(u64::MAX);
        self.pool.install(|| {
            (0..sources as u64)
                .into_par_iter()
                .map(|k| {
                    let family = sample_family(&params, &plan, k)?;
                    let mut rng = picks.rng(k);
                    let source = rng.random_range(0..n);
                    let excluded =
                        ColorSet::from_colors(sample_indices(&mut rng, s, exclusion_size));
                    doubling_check(&family, source, excluded)
                })
                .collect()
        })
    }

    /// Fraction of samples whose union graph is connected.
    pub fn union_connectivity(
        &self,
        n: usize,
        s: usize,
        density: Density,
        model: Model,
        trials: u64,
        master_seed: u64,
    ) -> Result<ProbabilityEstimate> {
        let params = density.params(n, s, model)?;
        let plan = SeedPlan::new(master_seed);
        let connected = self.pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(|i| -> Result<bool> {
                    let union = match model {
                        Model::Family => sample_family(&params, &plan, i)?.union_graph(),
                        Model::Uniform => sample_uniform(&params, &plan, i)?.union_graph(),
                    };
                    Ok(is_connected(&union))
                })
                .collect::<Result<Vec<_>>>()
        })?;
        let successes = connected.iter().filter(|&&b| b).count() as u64;
        Ok(ProbabilityEstimate::from_counts(successes, trials))
    }
}

/// Sphere-doubling steps from `source` with `excluded` colors removed.
pub fn doubling_check(
    family: &GraphFamily,
    source: usize,
    excluded: ColorSet,
) -> Result<DoublingCheck> {
    let s = family.s();
    let allowed = ColorSet::full(s)?.difference(excluded);
    let spheres = rainbow_spheres(family, source, allowed, allowed.len())?;
    let last_t = allowed.len().saturating_sub(1);
    Ok(DoublingCheck {
        source,
        excluded,
        color_exclusion_size: excluded.len(),
        steps: doubling_steps(&spheres.sizes(), family.n(), last_t),
    })
}

/// Family parameters at `s = s0(n, c)`, optionally with a forced `p`.
fn lemma_params(n: usize, c: f64, p_override: Option<f64>) -> Result<(usize, ModelParams)> {
    let s = (theory::s0_window(n as u64, c)?[0] as usize).max(1);
    let params = match p_override {
        Some(p) => ModelParams::with_probability(n, s, p, Model::Family)?,
        None => ModelParams::derive(n, s, c, Model::Family)?,
    };
    Ok((s, params))
}

fn tally(records: &[TrialRecord]) -> ProbabilityEstimate {
    let successes = records.iter().filter(|r| r.rainbow_connected).count() as u64;
    ProbabilityEstimate::from_counts(successes, records.len() as u64)
}

fn first_crossing(curve: &[CurvePoint]) -> Option<usize> {
    curve
        .iter()
        .find(|p| 2 * p.estimate.successes >= p.estimate.trials)
        .map(|p| p.s)
}
