//! Random blocks and expressions for property tests.

use m4_core::blocks::{make_block, BlockKind, BlockSpec, CustomBlock, InvariantVector};
use m4_core::exactnum::Rational;
use m4_core::sums::ManifoldExpr;
use proptest::prelude::*;
use rand::Rng;

const NAMES: [&str; 5] = ["custom", "T4", "Enriques", "a_b", "Z9"];

/// A custom block from Betti data, or `None` if it violates an invariant.
pub fn custom_from(
    name: &str,
    b1: i128,
    bp: i128,
    bm: i128,
    flags: [bool; 4],
    simvol: Option<(i64, i64)>,
) -> Option<BlockSpec> {
    let [spin, simply_connected, symplectic, nonessential] = flags;
    make_block(BlockKind::Custom(CustomBlock {
        name: name.to_string(),
        iv: InvariantVector {
            chi: 2 - 2 * b1 + bp + bm,
            tau: bp - bm,
            b1,
            b_plus: bp,
            b_minus: bm,
            spin,
            simply_connected,
            symplectic,
            nonessential,
            orientable: true,
        },
        simplicial_volume: simvol.map(|(n, d)| Rational::new(n.into(), d.into())),
    }))
    .ok()
}

fn catalogue(choice: u8, a: u64, b: u64) -> BlockSpec {
    match choice % 6 {
        0 => BlockSpec::gompf(2 + a % 9, 1 + b % 40).unwrap(),
        1 => BlockSpec::homotopy_k3(a % 50).unwrap(),
        2 => BlockSpec::k3(),
        3 => BlockSpec::surface_product(1 + a % 9, 1 + b % 9).unwrap(),
        4 => BlockSpec::s1xs3(),
        _ => BlockSpec::cp2bar(),
    }
}

pub fn arb_catalogue_block() -> impl Strategy<Value = BlockSpec> {
    (any::<u8>(), any::<u64>(), any::<u64>()).prop_map(|(c, a, b)| catalogue(c, a, b))
}

pub fn arb_custom_block() -> impl Strategy<Value = BlockSpec> {
    (
        0usize..NAMES.len(),
        0i128..4,
        0i128..20,
        0i128..20,
        any::<[bool; 4]>(),
        prop::option::of((0i64..100, 1i64..10)),
    )
        .prop_filter_map("invalid custom block", |(n, b1, bp, bm, flags, sv)| {
            custom_from(NAMES[n], b1, bp, bm, flags, sv)
        })
}

pub fn arb_block() -> impl Strategy<Value = BlockSpec> {
    prop_oneof![4 => arb_catalogue_block(), 1 => arb_custom_block()]
}

pub fn arb_expr() -> impl Strategy<Value = ManifoldExpr> {
    prop::collection::vec((arb_block(), 1u64..4), 1..6).prop_map(|v| ManifoldExpr::new(v).unwrap())
}

pub fn random_block<R: Rng>(rng: &mut R) -> BlockSpec {
    if rng.gen_ratio(1, 5) {
        loop {
            let sv = rng.gen_bool(0.5).then(|| (rng.gen_range(0..100), rng.gen_range(1..10)));
            let flags = [rng.gen(), rng.gen(), rng.gen(), rng.gen()];
            let (b1, bp, bm) = (rng.gen_range(0..4), rng.gen_range(0..20), rng.gen_range(0..20));
            if let Some(b) = custom_from(NAMES[rng.gen_range(0..NAMES.len())], b1, bp, bm, flags, sv) {
                return b;
            }
        }
    }
    catalogue(rng.gen(), rng.gen(), rng.gen())
}

pub fn random_expr<R: Rng>(rng: &mut R) -> ManifoldExpr {
    let k = rng.gen_range(1..7);
    ManifoldExpr::new((0..k).map(|_| (random_block(rng), rng.gen_range(1..5)))).unwrap()
}
