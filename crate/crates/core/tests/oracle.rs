mod common;

use common::{connected_by_spheres, oracle_mismatches, sample_with, small_instance, PairColors};
use rainbow_core::{engine, ColorSet, ColoredGraph, Model};

#[test]
fn small_instances_match_path_enumeration() {
    let mut failures = Vec::new();
    for k in 0..216 {
        let graph = small_instance(k);
        let sub = ColorSet::from_bits(k.wrapping_mul(0x9E37_79B9) & 0b1011);
        for m in oracle_mismatches(&graph, sub) {
            failures.push(format!("instance {k}: {m}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn dense_palettes_match_path_enumeration() {
    for (k, s) in (0..40).zip([5, 6, 7, 8].into_iter().cycle()) {
        let graph = sample_with(9, s, 0.35, Model::Family, 77, k);
        let m = oracle_mismatches(&graph, ColorSet::from_bits(0b10110));
        assert!(m.is_empty(), "instance {k}: {m:?}");
    }
}

#[test]
fn connectivity_matches_sphere_scan_on_medium_graphs() {
    let mut seen = [0usize; 2];
    for k in 0..60u64 {
        let n = 40 + (k as usize % 5) * 30;
        let s = 2 + (k as usize % 8);
        let model = if k % 3 == 0 {
            Model::Uniform
        } else {
            Model::Family
        };
        let c = 1.5 + (k % 4) as f64;
        let p = match model {
            Model::Family => c * (n as f64).ln() / (s * n) as f64,
            Model::Uniform => c * (n as f64).ln() / n as f64,
        };
        let graph = sample_with(n, s, p.min(1.0), model, 2024, k);
        let expected = connected_by_spheres(&graph);
        let got = engine::is_rainbow_connected(&graph).unwrap();
        assert_eq!(got.is_connected(), expected, "instance {k} (n={n}, s={s})");
        if let Some((u, v)) = got.witness() {
            let spheres =
                engine::rainbow_spheres(&graph, u, ColorSet::full(s).unwrap(), s).unwrap();
            assert_eq!(
                spheres.distance_to(v),
                None,
                "instance {k}: witness ({u}, {v})"
            );
        }
        seen[expected as usize] += 1;
    }
    assert!(
        seen[0] > 5 && seen[1] > 5,
        "both outcomes should occur: {seen:?}"
    );
}

#[test]
fn reference_agrees_with_hand_computed_cases() {
    let graph = sample_with(5, 2, 1.0, Model::Family, 0, 0);
    let reference = PairColors::of(&graph);
    assert!(reference.all_pairs_connected());
    assert_eq!(reference.union_distance(0, 4), Some(1));
    let empty = sample_with(3, 2, 0.0, Model::Uniform, 0, 0);
    assert!(!PairColors::of(&empty).all_pairs_connected());
    assert_eq!(empty.s(), 2);
}
