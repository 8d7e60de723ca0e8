use mu_cycles::contraction::{consecutive_runs, contract_fully, preimage_for_maxima};
use mu_cycles::nmplot::{
    construct_cycle_from_partition, ferrers_diagram, ferrers_shape, nm_plot, staircase,
};
use mu_cycles::{contract, is_incontractible, make_cycle, Cycle, Partition};
use proptest::prelude::*;

fn choose2(a: usize) -> usize {
    a * a.saturating_sub(1) / 2
}

fn arb_cycle(max: usize) -> impl Strategy<Value = Cycle> {
    (1usize..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Cycle::new(v).unwrap())
}

/// A partition inside the staircase of `n`, built row by row.
fn arb_staircase_partition() -> impl Strategy<Value = (Partition, usize)> {
    (3usize..=14).prop_flat_map(|n| {
        proptest::collection::vec(0usize..=n, n - 2).prop_map(move |raw| {
            let mut parts = Vec::new();
            let mut cap = usize::MAX;
            for (r, v) in raw.into_iter().enumerate() {
                let bound = (n - 2 - r).min(cap);
                let part = v.min(bound);
                if part == 0 {
                    break;
                }
                parts.push(part);
                cap = part;
            }
            (Partition::new(parts).unwrap(), n)
        })
    })
}

proptest! {
    #[test]
    fn counts_add_up(c in arb_cycle(14)) {
        let n = c.len();
        prop_assert_eq!(c.nontrivial_mu_count() + c.nm_count(), choose2(n - 1));
        prop_assert_eq!(c.mu_count(), c.nontrivial_mu_count() + n - 1);
    }

    #[test]
    fn contraction_keeps_nt(c in arb_cycle(14)) {
        let a = contract(&c);
        prop_assert!(is_incontractible(&a));
        prop_assert_eq!(a.nontrivial_mu_count(), c.nontrivial_mu_count());
        prop_assert_eq!(contract_fully(&c), a.clone());
        prop_assert_eq!(a.len(), consecutive_runs(&c).len());
    }

    #[test]
    fn preimage_of_own_maxima_is_self(c in arb_cycle(12)) {
        let a = contract(&c);
        let mut maxima = consecutive_runs(&c).maxima();
        maxima.sort_unstable();
        maxima.pop();
        prop_assert_eq!(preimage_for_maxima(&a, &maxima, c.len()), c);
    }

    #[test]
    fn construction_realises_partition((lambda, n) in arb_staircase_partition()) {
        let c = construct_cycle_from_partition(&lambda, n).unwrap();
        prop_assert_eq!(c.len(), n);
        prop_assert_eq!(nm_plot(&c), ferrers_diagram(n, &lambda).unwrap());
        prop_assert_eq!(ferrers_shape(&nm_plot(&c)), Some(lambda.clone()));
        prop_assert_eq!(c.nm_count(), lambda.size());
    }
}

#[test]
fn worked_examples() {
    let c = make_cycle(&[1, 4, 6, 2, 7, 5, 8, 3]).unwrap();
    assert_eq!(c.nontrivial_mu_count(), 5);
    let c = make_cycle(&[4, 6, 7, 8, 3, 5, 1, 2]).unwrap();
    assert_eq!(c.to_string(), "(1,2,4,6,7,8,3,5)");
    assert_eq!(contract(&c).to_string(), "(1,3,5,2,4)");
    let full = construct_cycle_from_partition(&staircase(7).unwrap(), 7).unwrap();
    assert_eq!(full, Cycle::increasing(7));
}
