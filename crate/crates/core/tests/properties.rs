use proptest::prelude::*;
use proptest::sample::subsequence;

use setsplit_core::analysis::{decode_and_verify, split_count_from_energy};
use setsplit_core::instance::{self, generate_unique_solution_instance, Assignment, GeneratorConfig, Instance};
use setsplit_core::qubo::{self, build_qubo, subset_penalty};
use setsplit_core::solvers::{simulated_anneal, AnnealSchedule};

/// Direct evaluation of the pairwise penalty sums, independent of the
/// QUBO builder: for every subset, W/(m-1) times the number of element pairs
/// that fall on the same side.
fn penalty_oracle(inst: &Instance, x: &Assignment) -> f64 {
    let mut total = 0.0;
    for (j, s) in inst.subsets.iter().enumerate() {
        let c = inst.weight(j) / (s.len() - 1) as f64;
        for p in 0..s.len() {
            for q in p + 1..s.len() {
                let (a, b) = (x.get(s[p]) as u8 as f64, x.get(s[q]) as u8 as f64);
                total += c * (a * b + (1.0 - a) * (1.0 - b));
            }
        }
    }
    total
}

fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |c| Assignment::from_index(c, n))
}

fn instance_strategy(max_n: usize, max_k: usize, weighted: bool) -> impl Strategy<Value = Instance> {
    (2..=max_n)
        .prop_flat_map(move |n| {
            let subset = subsequence((0..n).collect::<Vec<_>>(), 2..=max_k.min(n));
            (Just(n), prop::collection::vec(subset, 0..8))
        })
        .prop_flat_map(move |(n, subsets)| {
            let count = subsets.len();
            let weights = if weighted {
                prop::collection::vec(0.125f64..8.0, count).prop_map(Some).boxed()
            } else {
                Just(None).boxed()
            };
            (Just(n), Just(subsets), weights)
        })
        .prop_map(|(n, subsets, weights)| Instance {
            num_elements: n,
            subsets,
            weights,
        })
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn energy_decomposes_into_subset_penalties(inst in instance_strategy(14, 6, true)) {
        let q = build_qubo(&inst).unwrap();
        prop_assert_eq!(q.num_variables(), inst.num_elements);
        for x in all_assignments(inst.num_elements) {
            let e = q.energy_with_offset(&x).unwrap();
            let by_subset: f64 = inst
                .subsets
                .iter()
                .enumerate()
                .map(|(j, s)| subset_penalty(s, inst.weight(j), &x))
                .sum();
            prop_assert!(close(e, by_subset), "{} vs {}", e, by_subset);
            prop_assert!(close(e, penalty_oracle(&inst, &x)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn complement_symmetry_and_nonnegativity(inst in instance_strategy(10, 5, false)) {
        let q = build_qubo(&inst).unwrap();
        for x in all_assignments(inst.num_elements) {
            let e = q.energy_with_offset(&x).unwrap();
            prop_assert!(close(e, q.energy_with_offset(&x.complement()).unwrap()));
            prop_assert!(e >= -1e-9);
            let report = decode_and_verify(&inst, &x).unwrap();
            let zero_expected = report.fully_split && inst.subsets.iter().all(|s| s.len() == 2);
            prop_assert_eq!(e.abs() <= 1e-9, zero_expected);
            let flipped = decode_and_verify(&inst, &x.complement()).unwrap();
            prop_assert_eq!(report.per_subset.iter().map(|s| s.split).collect::<Vec<_>>(),
                            flipped.per_subset.iter().map(|s| s.split).collect::<Vec<_>>());
        }
    }

    #[test]
    fn weight_scaling(inst in instance_strategy(9, 5, true), c in 0.1f64..10.0) {
        let scaled = Instance {
            weights: inst.weights.as_ref().map(|w| w.iter().map(|v| v * c).collect()),
            ..inst.clone()
        };
        let (q, qs) = (build_qubo(&inst).unwrap(), build_qubo(&scaled).unwrap());
        for x in all_assignments(inst.num_elements) {
            let (e, es) = (q.energy_with_offset(&x).unwrap(), qs.energy_with_offset(&x).unwrap());
            prop_assert!(close(es, c * e), "{} vs {}", es, c * e);
        }
    }

    #[test]
    fn split_count_identity(inst in instance_strategy(10, 3, false)) {
        let q = build_qubo(&inst).unwrap();
        let triples = inst.subsets.iter().filter(|s| s.len() == 3).count() as f64;
        for x in all_assignments(inst.num_elements) {
            let e = q.energy_with_offset(&x).unwrap();
            let report = decode_and_verify(&inst, &x).unwrap();
            prop_assert_eq!(split_count_from_energy(&inst, e), Ok(report.num_split));
            prop_assert_eq!(report.fully_split, (e - 0.5 * triples).abs() <= 1e-9);
        }
    }

    #[test]
    fn flip_delta_matches_reevaluation(
        inst in instance_strategy(12, 6, true),
        seed in any::<u64>(),
    ) {
        let q = build_qubo(&inst).unwrap();
        let n = inst.num_elements;
        let mut state = seed;
        // 80 trials per case, 128 cases: 10^4 checks
        for _ in 0..80 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = Assignment::from_index(state >> 20, n);
            let i = (state >> 8) as usize % n;
            let mut y = x.clone();
            y.flip(i);
            let full = q.energy(&y).unwrap() - q.energy(&x).unwrap();
            let delta = q.single_bit_flip_delta(&x, i).unwrap();
            prop_assert!((full - delta).abs() <= 1e-9);
            prop_assert!((delta + q.single_bit_flip_delta(&y, i).unwrap()).abs() <= 1e-9);
        }
    }

    #[test]
    fn instance_file_round_trip(inst in instance_strategy(20, 6, true)) {
        let text = instance::save(&inst);
        let back = instance::load(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(instance::save(&back), text);
    }

    #[test]
    fn qubo_file_round_trip(inst in instance_strategy(20, 6, true)) {
        let q = build_qubo(&inst).unwrap();
        let text = qubo::export_qubo(&q);
        let back = qubo::import_qubo(&text).unwrap();
        prop_assert_eq!(&back, &q);
        prop_assert_eq!(qubo::export_qubo(&back), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_k2_unique_up_to_complement(n in 2usize..=16, seed in any::<u64>()) {
        let (inst, target) = generate_unique_solution_instance(&GeneratorConfig::new(n, 2, seed)).unwrap();
        let splitting: Vec<Assignment> = all_assignments(n)
            .filter(|x| inst.subsets.iter().all(|s| x.get(s[0]) != x.get(s[1])))
            .collect();
        prop_assert_eq!(splitting.len(), 2);
        prop_assert!(splitting.contains(&target));
        prop_assert_eq!(&splitting[0], &splitting[1].complement());
    }

    #[test]
    fn generator_sound_for_any_k(n in 3usize..=30, k in 2usize..=6, seed in any::<u64>(), dup in any::<bool>()) {
        prop_assume!(k <= n);
        let mut cfg = GeneratorConfig::new(n, k, seed);
        cfg.allow_duplicate_subsets = dup;
        let (inst, target) = generate_unique_solution_instance(&cfg).unwrap();
        prop_assert!(inst.validate().is_empty());
        prop_assert!(decode_and_verify(&inst, &target).unwrap().fully_split);
        prop_assert_eq!(generate_unique_solution_instance(&cfg).unwrap(), (inst, target));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sampleset_integrity(inst in instance_strategy(12, 4, true), reads in 1usize..200, sweeps in 0usize..20, seed in any::<u64>()) {
        let q = build_qubo(&inst).unwrap();
        let schedule = AnnealSchedule {
            num_reads: reads,
            sweeps_per_read: sweeps,
            seed,
            ..AnnealSchedule::default_for(q.num_variables())
        };
        let set = simulated_anneal(&q, &schedule).unwrap();
        prop_assert_eq!(set.num_reads(), reads);
        prop_assert_eq!(set.histogram().iter().map(|(_, c)| c).sum::<usize>(), reads);
        for pair in set.records().windows(2) {
            prop_assert!((pair[0].energy, &pair[0].assignment) < (pair[1].energy, &pair[1].assignment));
        }
        for r in set.records() {
            prop_assert_eq!(r.energy, q.energy(&r.assignment).unwrap());
        }
    }
}
