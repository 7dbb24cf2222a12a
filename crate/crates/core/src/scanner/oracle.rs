//! Reference scanner for differential testing. It re-executes the scanning
//! rules in the most literal way available: watermarks live in a map keyed
//! by matcher rank, matching goes through the slow reference recognizer, and
//! coverage is tracked per offset.

use std::collections::BTreeMap;

use super::{ScanResult, Token};
use crate::spec_io::LexSpec;

/// Rank key `(priority, ordinal)`; the name is absent for ignore patterns.
type Rank = (u32, usize);

pub fn scan_oracle(spec: &LexSpec, input: &str) -> ScanResult {
    let chars: Vec<char> = input.chars().collect();
    let n = chars.len();

    let mut defs: BTreeMap<Rank, (Option<&str>, &crate::pattern::Pattern)> = BTreeMap::new();
    for d in &spec.ignore_defs {
        defs.insert((0, d.ordinal), (None, &d.pattern));
    }
    for d in &spec.token_defs {
        defs.insert((d.priority, d.ordinal), (Some(d.name.as_str()), &d.pattern));
    }
    // -1 stands for "never matched yet".
    let mut next: BTreeMap<Rank, i64> = defs.keys().map(|&k| (k, -1)).collect();
    let mut covered = vec![false; n];
    let mut tokens = Vec::new();

    for i in 0..n {
        let mut prio: i64 = -1;
        for (&rank, &(name, pattern)) in &defs {
            let (priority, _) = rank;
            if next[&rank] >= i as i64 {
                continue;
            }
            if prio == 0 || (prio != -1 && i64::from(priority) > prio) {
                break;
            }
            let Some(len) = pattern.reference_longest_at(&chars, i) else {
                continue;
            };
            prio = i64::from(priority);
            let last = i + len - 1;
            for c in covered.iter_mut().take(last + 1).skip(i) {
                *c = true;
            }
            if let Some(name) = name {
                tokens.push(Token {
                    id: tokens.len(),
                    type_name: name.to_owned(),
                    text: chars[i..=last].iter().collect(),
                    start: i,
                    end: last,
                });
            }

            let mut min = last as i64;
            for &w in next.values() {
                if w <= min && w >= i as i64 {
                    min = w;
                }
            }
            next.insert(rank, min);
            for (other, w) in next.iter_mut() {
                if other.0 > priority && *w < min {
                    *w = min;
                }
            }
        }
    }

    let unmatched = (0..n).filter(|&p| !covered[p]).collect();
    ScanResult { tokens, input_length: n, unmatched }
}
