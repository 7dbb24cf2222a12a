mod common;

use std::collections::HashSet;

use common::*;
use lamb::scanner::{scan, scan_oracle};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn spec_and_input() -> impl Strategy<Value = (u64, String)> {
    (any::<u64>(), prop::collection::vec(prop::sample::select(INPUT_ALPHABET.to_vec()), 0..120))
        .prop_map(|(seed, chars)| (seed, chars.into_iter().collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_the_reference_scanner((seed, input) in spec_and_input()) {
        let spec = random_spec(&mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(scan(&spec, &input), scan_oracle(&spec, &input));
    }

    #[test]
    fn token_shape_invariants((seed, input) in spec_and_input()) {
        let spec = random_spec(&mut StdRng::seed_from_u64(seed));
        let chars: Vec<char> = input.chars().collect();
        let result = scan(&spec, &input);
        prop_assert_eq!(result.input_length, chars.len());

        let mut keys = HashSet::new();
        for (k, t) in result.tokens.iter().enumerate() {
            prop_assert_eq!(t.id, k);
            prop_assert!(t.start <= t.end && t.end < chars.len());
            prop_assert_eq!(&t.text, &chars[t.start..=t.end].iter().collect::<String>());
            prop_assert!(keys.insert((t.type_name.clone(), t.start, t.end)));
        }
        prop_assert!(result.tokens.windows(2).all(|w| w[0].start <= w[1].start));
        // Deterministic.
        prop_assert_eq!(scan(&spec, &input), result);
    }

    #[test]
    fn same_start_means_same_priority((seed, input) in spec_and_input()) {
        let spec = random_spec(&mut StdRng::seed_from_u64(seed));
        let result = scan(&spec, &input);
        let priority = |name: &str| spec.token_def(name).unwrap().priority;
        for w in result.tokens.windows(2) {
            if w[0].start == w[1].start {
                prop_assert_eq!(priority(&w[0].type_name), priority(&w[1].type_name));
            }
        }
    }

    /// An ignore pattern can only be skipped at an offset that one of its own
    /// earlier matches already reached; otherwise it wins and no token starts.
    #[test]
    fn ignore_dominates_where_it_is_live((seed, input) in spec_and_input()) {
        let spec = random_spec(&mut StdRng::seed_from_u64(seed));
        let chars: Vec<char> = input.chars().collect();
        for t in scan(&spec, &input).tokens {
            for ignore in &spec.ignore_defs {
                if ignore.pattern.match_longest_at(&chars, t.start).is_some() {
                    let shadowed = (0..t.start).any(|s| {
                        ignore.pattern.match_longest_at(&chars, s).is_some_and(|len| s + len > t.start)
                    });
                    prop_assert!(shadowed, "token {:?} starts where ignore /{}/ is live", t, ignore.pattern);
                }
            }
        }
    }

    #[test]
    fn token_matches_are_longest_for_their_pattern((seed, input) in spec_and_input()) {
        let spec = random_spec(&mut StdRng::seed_from_u64(seed));
        let chars: Vec<char> = input.chars().collect();
        for t in scan(&spec, &input).tokens {
            let def = spec.token_def(&t.type_name).unwrap();
            prop_assert_eq!(def.pattern.reference_longest_at(&chars, t.start), Some(t.len()));
        }
    }
}

#[test]
fn ignore_dominance_on_comment_spec() {
    let spec = lamb::spec_io::parse_lex_spec(
        "token Word 1 /[a-z]+/\ntoken Slash 1 /\\//\nignore /\\/\\/[a-z ]*/\nignore / +/\n",
    )
    .unwrap();
    let result = scan(&spec, "ab // cd ef\n/x");
    let starts: Vec<usize> = result.tokens.iter().map(|t| t.start).collect();
    // "//" at 3 is a comment running to the newline; the lone "/" at 12 is a Slash.
    assert_eq!(starts, [0, 12, 13]);
    assert_eq!(result.unmatched, [11]);
}

#[test]
fn integer_never_restarts_inside_its_own_match() {
    let result = scan(&number_spec(1, 1, 1), EXAMPLE_INPUT);
    assert!(!result.tokens.iter().any(|t| t.type_name == "Integer" && t.start == 8));
    assert!(!result.tokens.iter().any(|t| t.type_name == "Real" && t.start == 8));
    let at7: Vec<_> = result.tokens.iter().filter(|t| t.start == 7).map(|t| t.type_name.as_str()).collect();
    assert_eq!(at7, ["Integer", "Real"]);
}

#[test]
fn unicode_offsets_count_characters() {
    let spec = lamb::spec_io::parse_lex_spec("token W 1 /[^ ]+/\nignore / +/\n").unwrap();
    let result = scan(&spec, "héllo wörld");
    let spans: Vec<_> = result.tokens.iter().map(|t| (t.start, t.end)).collect();
    assert_eq!(spans, [(0, 4), (6, 10)]);
}
