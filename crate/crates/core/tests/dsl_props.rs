mod support;

use motivic_core::dsl::{parse_expr, parse_script, parse_script_bytes};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut r = support::rng(seed);
        let e = support::expr(&mut r, 4);
        let text = e.to_string();
        prop_assert_eq!(parse_expr(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn parser_is_total_on_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..200)) {
        if let Err(e) = parse_script_bytes(&bytes) {
            prop_assert!(e.line >= 1 && e.col >= 1);
            prop_assert!(!e.message.is_empty());
        }
    }

    #[test]
    fn parser_is_total_on_token_soup(words in proptest::collection::vec(
        prop::sample::select(vec![
            "P", "A", "(", ")", "3", "0", "pt", "empty", "+", "-", "*", "^", ";", ",", "=",
            "blowup", "fib", "atom", "\"C\"", "dim", "codim", "let", "X", "normalize", "count",
            "p", "L", "#", "\n", "\"", "verify", "primes", "demo", "lesieutre",
        ]),
        0..40,
    )) {
        let text = words.join(" ");
        if let Err(e) = parse_script(&text) {
            prop_assert!(e.line >= 1 && e.col >= 1);
        }
    }
}
