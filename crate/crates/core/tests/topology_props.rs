mod support;

use m4_core::blocks::BlockSpec;
use m4_core::entropy::{entropy_bounds, EntropyStatus};
use m4_core::forms::{form_of, standard_decomposition, Parity, StandardDecomposition, UnimodularFormClass};
use m4_core::obstructions::{hitchin_thorpe, HtOutcome};
use m4_core::sums::{invariants, ManifoldExpr};
use proptest::prelude::*;
use support::generators::{arb_catalogue_block, arb_expr};

fn nonessential_catalogue() -> impl Strategy<Value = BlockSpec> {
    arb_catalogue_block().prop_filter("essential", |b| b.invariants().nonessential)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn euler_characteristic_from_betti(e in arb_expr()) {
        let s = invariants(&e);
        prop_assert_eq!(s.chi, 2 - 2 * s.b1 + s.b_plus + s.b_minus);
        prop_assert_eq!(s.tau, s.b_plus - s.b_minus);
    }

    #[test]
    fn rokhlin_on_sums(e in arb_expr()) {
        let s = invariants(&e);
        if s.spin && s.simply_connected {
            prop_assert_eq!(s.tau.rem_euclid(16), 0);
        }
    }

    #[test]
    fn form_is_additive(a in arb_expr(), b in arb_expr()) {
        prop_assert_eq!(form_of(&a.connect(&b)), form_of(&a).direct_sum(&form_of(&b)));
    }

    #[test]
    fn nonessential_summands_do_not_change_entropy(e in arb_expr(), z in nonessential_catalogue(), k in 1u64..4) {
        prop_assert_eq!(entropy_bounds(&e.clone().with(z, k)), entropy_bounds(&e));
    }

    #[test]
    fn entropy_bounds_are_consistent(e in arb_expr()) {
        let b = entropy_bounds(&e);
        prop_assert!(b.is_consistent().unwrap());
        if b.status == EntropyStatus::Exact {
            prop_assert!(b.exact_zero);
        }
    }

    #[test]
    fn hitchin_thorpe_outcome_matches_gap(e in arb_expr()) {
        let gap = invariants(&e).hitchin_thorpe_gap();
        let r = hitchin_thorpe(&e);
        let expected = match gap.signum() {
            1 => HtOutcome::Strict,
            0 => HtOutcome::Equality,
            _ => HtOutcome::Violated,
        };
        prop_assert_eq!(r.ht_outcome(), Some(expected));
    }
}

#[test]
fn decomposition_round_trips_up_to_rank_60() {
    let mut seen = 0;
    for rank in 0..=60i128 {
        for signature in -rank..=rank {
            for parity in [Parity::Even, Parity::Odd] {
                let f = UnimodularFormClass { rank, signature, parity };
                if !f.is_consistent() || (rank > 0 && !f.is_indefinite()) {
                    continue;
                }
                let d = standard_decomposition(&f);
                assert!(!matches!(d, StandardDecomposition::Unclassified(_)), "{f:?}");
                assert_eq!(d.reassemble(), Some(f));
                seen += 1;
            }
        }
    }
    assert!(seen > 1000);
}

#[test]
fn catalogue_rokhlin() {
    let blocks = [BlockSpec::k3(), BlockSpec::s1xs3(), BlockSpec::cp2bar()]
        .into_iter()
        .chain((2..=10).flat_map(|m| (1..=40).map(move |n| BlockSpec::gompf(m, n).unwrap())))
        .chain((0..=30).map(|l| BlockSpec::homotopy_k3(l).unwrap()));
    for b in blocks {
        let iv = b.invariants();
        if iv.spin && iv.simply_connected {
            assert_eq!(iv.tau % 16, 0, "{b}");
        }
        assert!(iv.violations().is_empty());
    }
    let e = ManifoldExpr::single(BlockSpec::k3()).with(BlockSpec::gompf(3, 7).unwrap(), 2);
    assert_eq!(invariants(&e).tau % 16, 0);
}
