//! Error and failure types shared across the crate.
//!
//! Protocol decoders distinguish *errors* (caller bugs, malformed wire bytes)
//! from *detected failures*: the decoder ran correctly but the instance was
//! outside the promised distance budget, or a randomized recovery step did not
//! succeed. Detected failures are ordinary values, never panics.

use core::fmt;

/// Why a decoder gave up instead of returning a (possibly wrong) answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeFailure {
    /// Wire bytes did not parse (bad magic, truncated section, bad version).
    Malformed(&'static str),
    /// Parameters of two artifacts do not agree.
    ParamMismatch(&'static str),
    /// A Reed-Solomon recovery failed or produced an inconsistent codeword.
    RsFailure,
    /// Mismatch-recovery found more candidate differences than it can carry.
    EccOverflow,
    /// Invertible-table peeling did not terminate cleanly.
    PeelFailure,
    /// More differences were recovered than the sketch's threshold allows.
    TooManyDiffs,
    /// A verification signature did not match the recovered content.
    SignatureMismatch,
    /// A walk did not consume its source within the step budget.
    Truncated,
    /// The instance exceeds the distance budget `K`.
    OverBudget,
    /// A character needed for reconstruction could not be resolved by any
    /// extracted alignment.
    PromiseViolation,
    /// Stream readers disagreed with their advertised lengths.
    StreamError,
}

impl fmt::Display for DecodeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Malformed(what) => write!(f, "malformed artifact: {what}"),
            Self::ParamMismatch(what) => write!(f, "parameter mismatch: {what}"),
            Self::RsFailure => write!(f, "error-correction recovery failed"),
            Self::EccOverflow => write!(f, "too many candidate differences"),
            Self::PeelFailure => write!(f, "summary table peeling failed"),
            Self::TooManyDiffs => write!(f, "recovered differences exceed threshold"),
            Self::SignatureMismatch => write!(f, "verification signature mismatch"),
            Self::Truncated => write!(f, "embedding truncated before consuming source"),
            Self::OverBudget => write!(f, "distance exceeds budget"),
            Self::PromiseViolation => write!(f, "alignment promise violated"),
            Self::StreamError => write!(f, "stream length mismatch"),
        }
    }
}

impl core::error::Error for DecodeFailure {}

/// Input exceeds a configured size cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeError {
    pub len: usize,
    pub cap: usize,
}

impl fmt::Display for SizeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "input of {} bits exceeds cap of {} bits", self.len, self.cap)
    }
}

impl core::error::Error for SizeError {}

/// An edit script could not be applied to the given source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptError {
    pub op_index: usize,
    pub position: usize,
    pub current_len: usize,
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "op {} targets position {} in a string of length {}",
            self.op_index, self.position, self.current_len
        )
    }
}

impl core::error::Error for ScriptError {}

/// An alignment violated its invariants (crossing edges, repeated indices,
/// or an edge pairing unequal characters).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentError(pub &'static str);

impl fmt::Display for AlignmentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid alignment: {}", self.0)
    }
}

impl core::error::Error for AlignmentError {}
