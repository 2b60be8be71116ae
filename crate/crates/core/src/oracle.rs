//! Reference edit-distance oracle: the full `O(n·m)` dynamic program with
//! traceback. Deliberately simple; everything else in the crate is validated
//! against it.

use crate::align::{alignment_to_script, Alignment};
use crate::bits::BitString;
use crate::error::SizeError;
use crate::script::EditScript;
use alloc::vec;
use alloc::vec::Vec;

/// Default per-string cap. The move table costs `(|s|+1)·(|t|+1)` bytes, so
/// scripts near the cap are memory-hungry; distance-only calls are cheap.
pub const ORACLE_CAP: usize = 1 << 16;

fn check_cap(s: &BitString, t: &BitString, cap: usize) -> Result<(), SizeError> {
    for len in [s.len(), t.len()] {
        if len > cap {
            return Err(SizeError { len, cap });
        }
    }
    Ok(())
}

/// Exact edit distance, two-row DP, no traceback.
pub fn ed_distance(s: &BitString, t: &BitString) -> Result<usize, SizeError> {
    check_cap(s, t, ORACLE_CAP)?;
    let (n, m) = (s.len(), t.len());
    let mut prev: Vec<u32> = (0..=m as u32).collect();
    let mut cur = vec![0u32; m + 1];
    for i in 1..=n {
        cur[0] = i as u32;
        let si = s.get(i);
        for j in 1..=m {
            let sub = prev[j - 1] + (si != t.get(j)) as u32;
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[m] as usize)
}

// Traceback moves, one byte per cell.
const M_MATCH: u8 = 0;
const M_SUB: u8 = 1;
const M_DEL: u8 = 2; // consume s[i] (up)
const M_INS: u8 = 3; // consume t[j] (left)

/// Exact edit distance plus a full edit script transforming `s` into `t`.
pub fn ed_oracle(s: &BitString, t: &BitString) -> Result<(usize, EditScript), SizeError> {
    let (dist, alignment) = ed_oracle_alignment(s, t)?;
    let script = alignment_to_script(s, t, &alignment)
        .expect("oracle traceback produced an invalid alignment");
    debug_assert_eq!(script.len(), dist);
    Ok((dist, script))
}

/// Exact edit distance plus the matched pairs of one optimal alignment
/// (the DP traceback, preferring matches, then substitutions).
pub fn ed_oracle_alignment(
    s: &BitString,
    t: &BitString,
) -> Result<(usize, Alignment), SizeError> {
    check_cap(s, t, ORACLE_CAP)?;
    let (n, m) = (s.len(), t.len());
    let width = m + 1;
    let mut moves = vec![0u8; (n + 1) * width];
    let mut prev: Vec<u32> = (0..=m as u32).collect();
    let mut cur = vec![0u32; m + 1];
    for j in 0..=m {
        moves[j] = M_INS;
    }
    for i in 1..=n {
        cur[0] = i as u32;
        moves[i * width] = M_DEL;
        let si = s.get(i);
        for j in 1..=m {
            let eq = si == t.get(j);
            let diag = prev[j - 1] + (!eq) as u32;
            let up = prev[j] + 1;
            let left = cur[j - 1] + 1;
            let (best, mv) = if diag <= up && diag <= left {
                (diag, if eq { M_MATCH } else { M_SUB })
            } else if up <= left {
                (up, M_DEL)
            } else {
                (left, M_INS)
            };
            cur[j] = best;
            moves[i * width + j] = mv;
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    let dist = prev[m] as usize;

    let mut edges = Vec::new();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        match moves[i * width + j] {
            M_MATCH => {
                edges.push((i, j));
                i -= 1;
                j -= 1;
            }
            M_SUB => {
                i -= 1;
                j -= 1;
            }
            M_DEL => i -= 1,
            _ => j -= 1,
        }
    }
    edges.reverse();
    Ok((dist, Alignment::new(edges)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::apply_script;
    use std::collections::HashMap;

    fn bs(s: &str) -> BitString {
        BitString::from_bit_str(s)
    }

    // Brute-force recursive definition, independent of the DP.
    fn ed_brute(s: &[bool], t: &[bool], memo: &mut HashMap<(usize, usize), usize>) -> usize {
        fn go(
            s: &[bool],
            t: &[bool],
            i: usize,
            j: usize,
            memo: &mut HashMap<(usize, usize), usize>,
        ) -> usize {
            if i == s.len() {
                return t.len() - j;
            }
            if j == t.len() {
                return s.len() - i;
            }
            if let Some(&v) = memo.get(&(i, j)) {
                return v;
            }
            let mut best = go(s, t, i + 1, j + 1, memo) + (s[i] != t[j]) as usize;
            best = best.min(go(s, t, i + 1, j, memo) + 1);
            best = best.min(go(s, t, i, j + 1, memo) + 1);
            memo.insert((i, j), best);
            best
        }
        go(s, t, 0, 0, memo)
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(ed_oracle(&bs("0101"), &bs("0101")).unwrap().0, 0);
        assert!(ed_oracle(&bs("0101"), &bs("0101")).unwrap().1.is_empty());
        let (d, script) = ed_oracle(&bs("0101"), &bs("01011")).unwrap();
        assert_eq!(d, 1);
        assert_eq!(script.len(), 1);
    }

    #[test]
    fn frozen_small_case() {
        // Full DP table for ("0101","0011") gives distance 2.
        let (d, script) = ed_oracle(&bs("0101"), &bs("0011")).unwrap();
        assert_eq!(d, 2);
        assert_eq!(script.len(), 2);
        assert_eq!(apply_script(&bs("0101"), &script).unwrap(), bs("0011"));
        // Oracle roundtrip in the other direction.
        let (_, back) = ed_oracle(&bs("0011"), &bs("0101")).unwrap();
        assert_eq!(apply_script(&bs("0011"), &back).unwrap(), bs("0101"));
    }

    #[test]
    fn matches_brute_force_exhaustively() {
        // All pairs of strings with lengths up to 5.
        let mut strings = vec![vec![]];
        for len in 1..=5usize {
            for v in 0..(1u32 << len) {
                strings.push((0..len).map(|k| (v >> k) & 1 == 1).collect::<Vec<_>>());
            }
        }
        for a in &strings {
            for b in &strings {
                let sa = BitString::from_bools(a);
                let sb = BitString::from_bools(b);
                let mut memo = HashMap::new();
                let expect = ed_brute(a, b, &mut memo);
                let (d, script) = ed_oracle(&sa, &sb).unwrap();
                assert_eq!(d, expect);
                assert_eq!(script.len(), d);
                assert_eq!(apply_script(&sa, &script).unwrap(), sb);
            }
        }
    }

    #[test]
    fn distance_only_agrees() {
        let a = bs("0110100111010");
        let b = bs("010100111110");
        assert_eq!(
            ed_distance(&a, &b).unwrap(),
            ed_oracle(&a, &b).unwrap().0
        );
    }

    #[test]
    fn cap_is_enforced() {
        let long = BitString::zeros(ORACLE_CAP + 1);
        assert!(ed_distance(&long, &bs("0")).is_err());
    }

    #[test]
    fn oracle_alignment_cost_matches_distance() {
        let s = bs("0011");
        let t = bs("0101");
        let (d, a) = ed_oracle_alignment(&s, &t).unwrap();
        a.validate(&s, &t).unwrap();
        assert_eq!(a.cost(s.len(), t.len()), d);
        let script = alignment_to_script(&s, &t, &a).unwrap();
        assert_eq!(script.len(), d);
    }
}
