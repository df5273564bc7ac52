mod support;

use m4_core::exprlang::{parse, parse_bytes, pretty, ParseError};
use proptest::prelude::*;
use support::generators::arb_expr;

/// Writes the summands in a given order with random spacing and explicit `1*` prefixes.
fn scramble(e: &m4_core::sums::ManifoldExpr, order: &[usize], spaced: bool) -> String {
    let parts: Vec<String> = e
        .summands()
        .map(|(b, k)| if k == 1 && spaced { format!("1 * {b}") } else { format!("{k}*{b}") })
        .collect();
    let sep = if spaced { "  #\t" } else { "#" };
    order.iter().map(|i| parts[*i % parts.len()].clone()).collect::<Vec<_>>().join(sep)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn round_trip(e in arb_expr()) {
        let text = pretty(&e);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &e);
        prop_assert_eq!(pretty(&back), text);
    }

    #[test]
    fn order_insensitive(e in arb_expr(), spaced in any::<bool>(), rot in 0usize..8) {
        let n = e.summands().count();
        let forward: Vec<usize> = (0..n).collect();
        let rotated: Vec<usize> = (0..n).map(|i| (i + rot) % n).rev().collect();
        let a = parse(&scramble(&e, &forward, spaced)).unwrap();
        let b = parse(&scramble(&e, &rotated, !spaced)).unwrap();
        prop_assert_eq!(pretty(&a), pretty(&b));
        prop_assert_eq!(a, e);
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..512)) {
        if let Ok(e) = parse_bytes(&bytes) {
            prop_assert_eq!(parse(&pretty(&e)).unwrap(), e);
        }
    }

    #[test]
    fn near_miss_text_never_panics(s in "[XYK3SigmaxBlock{}=,#*()0-9 \\-/CPbartuesfl]{0,80}") {
        match parse(&s) {
            Ok(e) => prop_assert_eq!(parse(&pretty(&e)).unwrap(), e),
            Err(err) => {
                if let Some(o) = err.offset() {
                    prop_assert!(o <= s.len());
                }
            }
        }
    }
}

#[test]
fn large_inputs() {
    let long = vec![b'9'; 64 * 1024];
    assert!(matches!(parse_bytes(&long), Err(ParseError::InvalidParameter { .. }) | Err(ParseError::Syntax { .. })));

    let many = vec!["K3"; 10_000].join(" # ");
    let e = parse(&many).unwrap();
    assert_eq!(pretty(&e), "10000*K3");

    let nested = "(".repeat(64 * 1024);
    assert!(matches!(parse(&nested), Err(ParseError::Syntax { offset: 0, .. })));
}
