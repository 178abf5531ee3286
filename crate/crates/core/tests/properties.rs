use num_bigint::BigUint;
use num_rational::Ratio;
use proptest::prelude::*;

use gridknot::diagram::{build_diagram, enumerate_fields, oracle_shear_diagram, to_gauss};
use gridknot::fast_count::{brute_count, count_increasing, count_with_z, phi_3d, CountingInstance, Token};
use gridknot::grid::{parse_grid_link, random_grid_link, serialize_grid_link, validate, Axis, GridLink};
use gridknot::invariants::{apply_functional, expected_mass, lk_2d, lk_3d, omega_lk, phi_2d};

fn link_strategy(max_size: i32, components: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = GridLink> {
    (2..=max_size, components, any::<u64>(), 0u64..3000)
        .prop_map(|(size, c, seed, mix)| random_grid_link(size, c, seed, mix).expect("feasible request"))
}

fn two_component_link(max_size: i32) -> impl Strategy<Value = GridLink> {
    (3..=max_size, any::<u64>(), 0u64..3000).prop_map(|(size, seed, mix)| random_grid_link(size, 2, seed, mix).unwrap())
}

/// Distinct values from `0..range`, of any length up to `max_len`.
fn distinct(range: i64, max_len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::sample::subsequence((0..range).collect::<Vec<_>>(), 0..=max_len)
}

fn slot(size: i32, max_len: usize) -> impl Strategy<Value = Vec<Token>> {
    (distinct(64, max_len), Just(size))
        .prop_flat_map(|(ts, size)| {
            let n = ts.len().min(size as usize + 1);
            (Just(ts[..n].to_vec()), proptest::sample::subsequence((0..=size).collect::<Vec<_>>(), n).prop_shuffle())
        })
        .prop_map(|(ts, zs)| ts.into_iter().zip(zs).map(|(t, z)| Token::new(t, z)).collect())
}

fn instance() -> impl Strategy<Value = CountingInstance> {
    (1i32..=15, 1usize..=4)
        .prop_flat_map(|(size, m)| {
            let conds = proptest::collection::vec((0..m, 0..m), 0..=3);
            (Just(size), proptest::collection::vec(slot(size, 6), m), conds)
        })
        .prop_map(|(size, slots, conditions)| CountingInstance::new(size, slots, conditions))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serialization_round_trips(link in link_strategy(8, 1..=3)) {
        let text = serialize_grid_link(&link);
        let back = parse_grid_link(&text).unwrap();
        prop_assert_eq!(&back, &link);
        prop_assert_eq!(serialize_grid_link(&back), text);
    }

    #[test]
    fn translation_leaves_invariants_unchanged(link in link_strategy(6, 1..=2), shift in (0i32..=2, 0i32..=2, 0i32..=2)) {
        let roomy = GridLink::new(link.size() + 2, link.components().to_vec()).unwrap();
        let moved = roomy.translated(shift.0, shift.1, shift.2);
        prop_assert!(validate(&moved).is_empty());
        prop_assert_eq!(lk_3d(&moved), lk_3d(&link));
        let phi = |l: &GridLink| phi_2d(&to_gauss(&build_diagram(l)), 2).unwrap();
        prop_assert_eq!(phi(&moved), phi(&link));
        prop_assert_eq!(phi_3d(&moved, 2).unwrap(), phi(&link));
    }

    #[test]
    fn canonical_diagram_matches_exact_shear(link in link_strategy(7, 1..=2), p in 1i64..6, q in 1i64..6) {
        let l = i64::from(link.size());
        let a = Ratio::new(p, (p + 1) * (l + 1));
        let b = Ratio::new(q, (q + 2) * 7 * (l + 1) * (l + 1));
        let exact = oracle_shear_diagram(&link, a, b).unwrap();
        prop_assert_eq!(exact.signature(), build_diagram(&link).signature());
    }

    #[test]
    fn linking_number_pipelines_agree(link in two_component_link(8)) {
        let diagram = build_diagram(&link);
        let planar = lk_2d(&diagram).unwrap();
        prop_assert_eq!(lk_3d(&link).unwrap(), planar);
        let phi = phi_2d(&to_gauss(&diagram), 1).unwrap();
        prop_assert_eq!(apply_functional(&omega_lk(), &phi), Ratio::from_integer(planar.into()));
    }

    #[test]
    fn linking_number_symmetries(link in two_component_link(8)) {
        let lk = lk_3d(&link).unwrap();
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            prop_assert_eq!(lk_3d(&link.mirrored(axis)).unwrap(), -lk);
        }
        prop_assert_eq!(lk_3d(&link.with_reversed_component(0)).unwrap(), -lk);
        prop_assert_eq!(lk_3d(&link.with_reversed_component(1)).unwrap(), -lk);
        let swapped = link.with_component_order(&[1, 0]);
        prop_assert_eq!(lk_3d(&swapped).unwrap(), lk);
        prop_assert_eq!(lk_2d(&build_diagram(&swapped)).unwrap(), lk);
    }

    #[test]
    fn increasing_count_matches_brute_force(slots in proptest::collection::vec(distinct(40, 7), 0..=5)) {
        let inst = CountingInstance::new(
            1,
            slots.iter().map(|s| s.iter().map(|&t| Token::new(t, 0)).collect()).collect(),
            Vec::new(),
        );
        prop_assert_eq!(count_increasing(&slots), brute_count(&inst).unwrap());
    }

    #[test]
    fn height_count_matches_brute_force(inst in instance()) {
        prop_assert!(inst.check().is_ok());
        prop_assert_eq!(count_with_z(&inst), brute_count(&inst).unwrap());
    }

    #[test]
    fn instance_text_round_trips(inst in instance()) {
        let back: CountingInstance = inst.to_string().parse().unwrap();
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn counts_grow_with_slots(slots in proptest::collection::vec(distinct(40, 6), 1..=4), extra in 40i64..80, at in 0usize..4) {
        let before = count_increasing(&slots);
        let mut bigger = slots.clone();
        let k = at % bigger.len();
        bigger[k].push(extra);
        prop_assert!(count_increasing(&bigger) >= before);
    }

    #[test]
    fn phi_mass_and_engines_agree(link in link_strategy(4, 1..=2), d in 1usize..=2) {
        let gauss = to_gauss(&build_diagram(&link));
        let planar = phi_2d(&gauss, d).unwrap();
        prop_assert_eq!(planar.mass(), expected_mass(gauss.n(), d));
        prop_assert_eq!(phi_3d(&link, d).unwrap(), planar);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn generated_links_are_valid(size in -1i32..=9, components in 0usize..=4, seed in any::<u64>(), mix in 0u64..2000) {
        match random_grid_link(size, components, seed, mix) {
            Ok(link) => {
                prop_assert!(validate(&link).is_empty());
                prop_assert_eq!(link.component_count(), components);
                prop_assert_eq!(enumerate_fields(&link).len(), 2 * (size * size) as usize);
                prop_assert_eq!(random_grid_link(size, components, seed, mix).unwrap(), link);
            }
            Err(_) => prop_assert!(size < 2 || components == 0 || components as i32 > size + 1),
        }
    }
}

#[test]
fn expected_mass_is_a_binomial_sum() {
    let binom = |n: u64, k: u64| (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1));
    for n in 0..12u64 {
        for d in 1..=4u64 {
            let sum: BigUint = (1..=d).map(|i| if i <= n { binom(n, i) } else { BigUint::default() }).sum();
            assert_eq!(expected_mass(n as usize, d as usize), sum);
        }
    }
}
