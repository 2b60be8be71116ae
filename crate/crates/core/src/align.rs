//! Alignments: non-crossing matchings between two strings, and their
//! conversion to edit scripts.

use crate::bits::BitString;
use crate::error::AlignmentError;
use crate::script::{EditOp, EditScript, OpKind};
use alloc::vec::Vec;

/// A non-crossing matching. Edge `(i, j)` pairs `s[i]` with `t[j]`; both
/// sides 1-based, edges sorted ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Alignment {
    pub edges: Vec<(usize, usize)>,
}

impl Alignment {
    pub fn new(edges: Vec<(usize, usize)>) -> Self {
        Self { edges }
    }

    /// Check structural invariants against the two strings: edges strictly
    /// increasing on both sides (non-crossing, no repeats), in range, and
    /// pairing equal characters.
    pub fn validate(&self, s: &BitString, t: &BitString) -> Result<(), AlignmentError> {
        let mut prev = (0usize, 0usize);
        for &(i, j) in &self.edges {
            if i < 1 || i > s.len() || j < 1 || j > t.len() {
                return Err(AlignmentError("edge out of range"));
            }
            if i <= prev.0 || j <= prev.1 {
                return Err(AlignmentError("edges not strictly increasing"));
            }
            if s.get(i) != t.get(j) {
                return Err(AlignmentError("edge pairs unequal characters"));
            }
            prev = (i, j);
        }
        Ok(())
    }

    /// Cost of this alignment: unmatched characters paired greedily into
    /// substitutions, the remainder deletes/inserts.
    pub fn cost(&self, s_len: usize, t_len: usize) -> usize {
        let mut cost = 0usize;
        let mut prev = (0usize, 0usize);
        for &(i, j) in self.edges.iter().chain(core::iter::once(&(s_len + 1, t_len + 1))) {
            let gap_s = i - prev.0 - 1;
            let gap_t = j - prev.1 - 1;
            cost += gap_s.max(gap_t);
            prev = (i, j);
        }
        cost
    }
}

/// Convert an alignment into an edit script transforming `s` into `t`.
///
/// Between consecutive edges, unmatched characters are paired greedily into
/// substitutions and the remainder becomes deletes (extra `s` characters) or
/// inserts (extra `t` characters), so `script.len() == a.cost(...)`.
pub fn alignment_to_script(
    s: &BitString,
    t: &BitString,
    a: &Alignment,
) -> Result<EditScript, AlignmentError> {
    a.validate(s, t)?;
    let mut ops = Vec::new();
    // shift = inserts minus deletes emitted so far; source position p currently
    // sits at p + shift.
    let mut shift = 0isize;
    let mut prev = (0usize, 0usize);
    for &(i, j) in a
        .edges
        .iter()
        .chain(core::iter::once(&(s.len() + 1, t.len() + 1)))
    {
        let gap_s = i - prev.0 - 1;
        let gap_t = j - prev.1 - 1;
        let subs = gap_s.min(gap_t);
        for r in 0..subs {
            ops.push(EditOp {
                kind: OpKind::Substitute,
                pos: (prev.0 + 1 + r).wrapping_add_signed(shift),
                bit: t.get(prev.1 + 1 + r),
            });
        }
        if gap_s > gap_t {
            // Surplus source characters after the paired prefix: delete them.
            // Consecutive deletes land on the same current position.
            let at = (prev.0 + 1 + subs).wrapping_add_signed(shift);
            for _ in 0..gap_s - gap_t {
                ops.push(EditOp { kind: OpKind::Delete, pos: at, bit: false });
                shift -= 1;
            }
        } else {
            // Surplus target characters: insert them after what we consumed.
            for r in 0..gap_t - gap_s {
                ops.push(EditOp {
                    kind: OpKind::Insert,
                    pos: (prev.0 + subs).wrapping_add_signed(shift) + 1 + r,
                    bit: t.get(prev.1 + 1 + subs + r),
                });
            }
            shift += (gap_t - gap_s) as isize;
        }
        prev = (i, j);
    }
    Ok(EditScript { ops })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::script::apply_script;

    fn bs(s: &str) -> BitString {
        BitString::from_bit_str(s)
    }

    #[test]
    fn identity_alignment_gives_empty_script() {
        let s = bs("0110");
        let a = Alignment::new((1..=4).map(|i| (i, i)).collect());
        let script = alignment_to_script(&s, &s, &a).unwrap();
        assert!(script.is_empty());
    }

    #[test]
    fn two_char_single_edge() {
        // Enumerating alignments of "01" vs "10": matching s[1]='0' with
        // t[2]='0' leaves one insert and one delete.
        let s = bs("01");
        let t = bs("10");
        let a = Alignment::new(alloc::vec![(1, 2)]);
        let script = alignment_to_script(&s, &t, &a).unwrap();
        assert_eq!(script.len(), 2);
        assert_eq!(apply_script(&s, &script).unwrap(), t);
    }

    #[test]
    fn invalid_alignments_rejected() {
        let s = bs("01");
        let t = bs("10");
        // Pairs unequal characters.
        let bad = Alignment::new(alloc::vec![(1, 1)]);
        assert!(alignment_to_script(&s, &t, &bad).is_err());
        // Crossing edges.
        let crossing = Alignment {
            edges: alloc::vec![(2, 1), (1, 2)],
        };
        assert!(crossing.validate(&s, &t).is_err());
    }

    #[test]
    fn substitutions_paired_greedily() {
        let s = bs("0011");
        let t = bs("0101");
        // Match only positions 1 and 4.
        let a = Alignment::new(alloc::vec![(1, 1), (4, 4)]);
        let script = alignment_to_script(&s, &t, &a).unwrap();
        assert_eq!(script.len(), 2);
        assert_eq!(apply_script(&s, &script).unwrap(), t);
    }
}
