//! Edit scripts: ordered insert/delete/substitute operations.
//!
//! Positions are 1-based indices into the *current* string at the moment the
//! operation is applied, so a script is replayed strictly left to right.

use crate::bits::BitString;
use crate::error::ScriptError;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Insert,
    Delete,
    Substitute,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EditOp {
    pub kind: OpKind,
    /// 1-based position in the current string. For `Insert`, the new symbol
    /// ends up *at* this position (existing symbols shift right).
    pub pos: usize,
    /// Symbol for `Insert` and `Substitute`; ignored for `Delete`.
    pub bit: bool,
}

impl fmt::Debug for EditOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OpKind::Insert => write!(f, "Insert@{} '{}'", self.pos, self.bit as u8),
            OpKind::Delete => write!(f, "Delete@{}", self.pos),
            OpKind::Substitute => write!(f, "Sub@{} '{}'", self.pos, self.bit as u8),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EditScript {
    pub ops: Vec<EditOp>,
}

impl EditScript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

/// Apply `script` to `s`, left to right.
pub fn apply_script(s: &BitString, script: &EditScript) -> Result<BitString, ScriptError> {
    let mut cur: Vec<bool> = s.iter().collect();
    for (idx, op) in script.ops.iter().enumerate() {
        let err = ScriptError {
            op_index: idx,
            position: op.pos,
            current_len: cur.len(),
        };
        match op.kind {
            OpKind::Insert => {
                // Position n+1 appends.
                if op.pos < 1 || op.pos > cur.len() + 1 {
                    return Err(err);
                }
                cur.insert(op.pos - 1, op.bit);
            }
            OpKind::Delete => {
                if op.pos < 1 || op.pos > cur.len() {
                    return Err(err);
                }
                cur.remove(op.pos - 1);
            }
            OpKind::Substitute => {
                if op.pos < 1 || op.pos > cur.len() {
                    return Err(err);
                }
                cur[op.pos - 1] = op.bit;
            }
        }
    }
    Ok(BitString::from_bools(&cur))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        BitString::from_bit_str(s)
    }

    #[test]
    fn empty_script_is_identity() {
        let s = bs("0101");
        assert_eq!(apply_script(&s, &EditScript::new()).unwrap(), s);
    }

    #[test]
    fn single_ops() {
        let s = bs("0101");
        let del1 = EditScript {
            ops: alloc::vec![EditOp { kind: OpKind::Delete, pos: 1, bit: false }],
        };
        assert_eq!(apply_script(&s, &del1).unwrap(), bs("101"));

        let append = EditScript {
            ops: alloc::vec![EditOp { kind: OpKind::Insert, pos: 5, bit: true }],
        };
        assert_eq!(apply_script(&s, &append).unwrap(), bs("01011"));

        let sub = EditScript {
            ops: alloc::vec![EditOp { kind: OpKind::Substitute, pos: 2, bit: false }],
        };
        assert_eq!(apply_script(&s, &sub).unwrap(), bs("0001"));
    }

    #[test]
    fn out_of_range_positions_error() {
        let s = bs("01");
        let bad = EditScript {
            ops: alloc::vec![EditOp { kind: OpKind::Delete, pos: 3, bit: false }],
        };
        let err = apply_script(&s, &bad).unwrap_err();
        assert_eq!(err.op_index, 0);
        assert_eq!(err.position, 3);

        let bad_ins = EditScript {
            ops: alloc::vec![EditOp { kind: OpKind::Insert, pos: 4, bit: true }],
        };
        assert!(apply_script(&s, &bad_ins).is_err());
    }
}
