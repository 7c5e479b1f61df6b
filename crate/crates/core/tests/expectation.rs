use num_rational::Ratio;
use rainbow_core::{theory::expected_rainbow_paths, SeedPlan};
use rand::Rng;

type Q = Ratio<i64>;

/// Expected number of rainbow paths between two fixed vertices, by listing
/// every (interior vertex sequence, injective coloring) pair.
fn enumerate(n: usize, s: usize, p: Q) -> Vec<Q> {
    let mut per_length = vec![Q::from_integer(0); s];
    let mut interior = Vec::new();
    extend_interior(n, s, p, &mut interior, &mut per_length);
    per_length
}

fn extend_interior(n: usize, s: usize, p: Q, interior: &mut Vec<usize>, per_length: &mut [Q]) {
    let t = interior.len() + 1;
    if t > s {
        return;
    }
    let colorings = count_injective(t, s, &mut Vec::new());
    per_length[t - 1] += p.pow(t as i32) * Q::from_integer(colorings);
    for w in 2..n {
        if !interior.contains(&w) {
            interior.push(w);
            extend_interior(n, s, p, interior, per_length);
            interior.pop();
        }
    }
}

fn count_injective(edges: usize, s: usize, used: &mut Vec<usize>) -> i64 {
    if used.len() == edges {
        return 1;
    }
    let mut total = 0;
    for c in 0..s {
        if !used.contains(&c) {
            used.push(c);
            total += count_injective(edges, s, used);
            used.pop();
        }
    }
    total
}

fn to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

#[test]
fn matches_rational_enumeration_exactly() {
    for p in [Q::new(1, 4), Q::new(1, 2)] {
        for n in 2..=7 {
            for s in 1..=3 {
                let expected = enumerate(n, s, p);
                let report = expected_rainbow_paths(n as u64, s, to_f64(p)).unwrap();
                let per_length: Vec<f64> = expected.iter().copied().map(to_f64).collect();
                assert_eq!(report.per_length, per_length, "n={n} s={s} p={p}");
                let total: Q = expected.iter().sum();
                assert_eq!(report.total, to_f64(total), "n={n} s={s} p={p}");
            }
        }
    }
}

#[test]
fn single_color_counts_only_the_direct_edge() {
    for p in [0.0, 0.3, 1.0] {
        assert_eq!(expected_rainbow_paths(50, 1, p).unwrap().total, p);
    }
}

#[test]
fn total_never_exceeds_the_crude_count() {
    let mut rng = SeedPlan::new(31).rng(0);
    for _ in 0..1000 {
        let n = rng.random_range(2..=1_000_000u64);
        let s = rng.random_range(1..=64usize);
        let p = if rng.random_bool(0.5) {
            rng.random::<f64>()
        } else {
            rng.random::<f64>() * 10.0 / n as f64
        };
        let report = expected_rainbow_paths(n, s, p).unwrap();
        assert!(
            report.total <= report.paper_bound_total,
            "n={n} s={s} p={p}: {} > {}",
            report.total,
            report.paper_bound_total
        );
        assert!(report.per_length.iter().all(|&x| x >= 0.0));
    }
}
