//! Systematic Reed-Solomon over a prime field, syndrome form.
//!
//! The redundancy for a data vector is its vector of power-sum syndromes
//! `S_j = sum_i v[i] * i^j (j = 1..parity_len)` over `F_p`; data travels (or
//! is reconstructed) separately, which is exactly the systematic view. A
//! receiver holding a corrupted copy subtracts its own syndromes and runs
//! Berlekamp-Massey plus Forney on the difference. `parity_len` syndromes
//! correct up to `parity_len/2` errors at unknown positions, or up to
//! `parity_len` erasures at known positions.
//!
//! Positions are 1-based and serve directly as evaluation points, so the
//! field only has to be larger than the position space; sparse vectors over
//! huge position spaces cost time proportional to their support.

use crate::error::DecodeFailure;
use crate::field::{prime_at_least, Fp};
use alloc::vec;
use alloc::vec::Vec;

#[derive(Clone, Copy, Debug)]
pub struct RsCode {
    pub field: Fp,
    /// Number of data positions `1..=data_len`.
    pub data_len: u64,
    /// Number of syndromes in the redundancy.
    pub parity_len: usize,
}

impl RsCode {
    /// Code over the smallest prime covering both the position space and the
    /// symbol alphabet.
    pub fn for_params(data_len: u64, parity_len: usize, max_symbol: u64) -> Self {
        let p = prime_at_least((data_len + 2).max(max_symbol + 1).max(257));
        Self {
            field: Fp::new(p),
            data_len,
            parity_len,
        }
    }

    pub fn symbol_bits(&self) -> u32 {
        64 - (self.field.p - 1).leading_zeros()
    }

    /// Syndromes of a sparse vector given as (position, value) pairs.
    /// Values must already be reduced below the field modulus.
    pub fn syndromes_sparse<I: IntoIterator<Item = (u64, u64)>>(&self, entries: I) -> Vec<u64> {
        let f = self.field;
        let mut s = vec![0u64; self.parity_len];
        for (pos, val) in entries {
            debug_assert!(pos >= 1 && pos <= self.data_len);
            debug_assert!(val < f.p);
            if val == 0 {
                continue;
            }
            let mut term = val;
            for slot in s.iter_mut() {
                term = f.mul(term, pos);
                *slot = f.add(*slot, term);
            }
        }
        s
    }

    /// Redundancy (syndromes) of a dense data vector.
    pub fn encode(&self, data: &[u64]) -> Vec<u64> {
        debug_assert_eq!(data.len() as u64, self.data_len);
        self.syndromes_sparse(data.iter().enumerate().map(|(i, &v)| (i as u64 + 1, v)))
    }

    /// Correct up to `parity_len/2` symbol substitutions in `corrupted`,
    /// given the redundancy of the original data.
    pub fn correct(&self, corrupted: &[u64], parity: &[u64]) -> Result<Vec<u64>, DecodeFailure> {
        if corrupted.len() as u64 != self.data_len || parity.len() != self.parity_len {
            return Err(DecodeFailure::ParamMismatch("reed-solomon shape"));
        }
        let f = self.field;
        let own = self.encode(corrupted);
        let diff: Vec<u64> = own
            .iter()
            .zip(parity.iter())
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        let all_positions: Vec<u64> = (1..=self.data_len).collect();
        let errors = self.locate_errors(&diff, &all_positions)?;
        let mut out = corrupted.to_vec();
        for (pos, delta) in errors {
            out[pos as usize - 1] = f.sub(out[pos as usize - 1], delta);
        }
        Ok(out)
    }

    /// Erasure decoding: repair values at the given known positions
    /// (up to `parity_len` of them); other positions must be intact.
    pub fn correct_erasures(
        &self,
        corrupted: &[u64],
        parity: &[u64],
        erasures: &[u64],
    ) -> Result<Vec<u64>, DecodeFailure> {
        if corrupted.len() as u64 != self.data_len || parity.len() != self.parity_len {
            return Err(DecodeFailure::ParamMismatch("reed-solomon shape"));
        }
        if erasures.len() > self.parity_len {
            return Err(DecodeFailure::RsFailure);
        }
        let f = self.field;
        let own = self.encode(corrupted);
        let diff: Vec<u64> = own
            .iter()
            .zip(parity.iter())
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        // Locator with all erasure positions as roots.
        let mut lambda = vec![1u64];
        for &pos in erasures {
            lambda = poly_mul_linear(&f, &lambda, pos);
        }
        let deltas = self.forney(&diff, &lambda, erasures)?;
        let mut out = corrupted.to_vec();
        for (&pos, &delta) in erasures.iter().zip(deltas.iter()) {
            out[pos as usize - 1] = f.sub(out[pos as usize - 1], delta);
        }
        // Erasure decoding trusts the caller's positions; verify the result.
        if self.encode(&out) != parity {
            return Err(DecodeFailure::RsFailure);
        }
        Ok(out)
    }

    /// Given difference syndromes, find the (position, delta) pairs of the
    /// underlying sparse difference, searching roots only among `candidates`.
    /// Fails if the difference needs more than `parity_len/2` errors, if any
    /// root falls outside the candidates, or if the located errors do not
    /// reproduce the syndromes exactly.
    pub fn locate_errors(
        &self,
        diff_syndromes: &[u64],
        candidates: &[u64],
    ) -> Result<Vec<(u64, u64)>, DecodeFailure> {
        let f = self.field;
        if diff_syndromes.iter().all(|&s| s == 0) {
            return Ok(Vec::new());
        }
        let lambda = berlekamp_massey(&f, diff_syndromes);
        let degree = lambda.len() - 1;
        if degree == 0 || degree > self.parity_len / 2 {
            return Err(DecodeFailure::RsFailure);
        }
        let mut roots = Vec::with_capacity(degree);
        for &pos in candidates {
            let inv = f.inv(pos % f.p);
            if poly_eval(&f, &lambda, inv) == 0 {
                roots.push(pos);
                if roots.len() > degree {
                    return Err(DecodeFailure::RsFailure);
                }
            }
        }
        if roots.len() != degree {
            return Err(DecodeFailure::RsFailure);
        }
        let deltas = self.forney(diff_syndromes, &lambda, &roots)?;
        let located: Vec<(u64, u64)> = roots.into_iter().zip(deltas).collect();
        // Full consistency check: located errors must explain every syndrome.
        if self.syndromes_sparse(located.iter().copied()) != diff_syndromes {
            return Err(DecodeFailure::RsFailure);
        }
        Ok(located)
    }

    /// Error magnitudes at known locator positions via the Forney formula.
    fn forney(
        &self,
        syndromes: &[u64],
        lambda: &[u64],
        positions: &[u64],
    ) -> Result<Vec<u64>, DecodeFailure> {
        let f = self.field;
        // Omega = S(x) * Lambda(x) mod x^parity_len, with S(x) = sum S_j x^{j-1}.
        let omega = poly_mul_trunc(&f, syndromes, lambda, self.parity_len);
        // Lambda'(x).
        let mut dlambda = Vec::with_capacity(lambda.len().saturating_sub(1));
        for (j, &c) in lambda.iter().enumerate().skip(1) {
            dlambda.push(f.mul(c, j as u64 % f.p));
        }
        let mut out = Vec::with_capacity(positions.len());
        for &pos in positions {
            let x = f.inv(pos % f.p);
            let num = poly_eval(&f, &omega, x);
            let den = poly_eval(&f, &dlambda, x);
            if den == 0 {
                return Err(DecodeFailure::RsFailure);
            }
            // Y_k = -Omega(X_k^{-1}) / Lambda'(X_k^{-1}).
            out.push(f.sub(0, f.mul(num, f.inv(den))));
        }
        Ok(out)
    }
}

fn poly_eval(f: &Fp, poly: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in poly.iter().rev() {
        acc = f.add(f.mul(acc, x), c);
    }
    acc
}

/// poly * (1 - pos*x)
fn poly_mul_linear(f: &Fp, poly: &[u64], pos: u64) -> Vec<u64> {
    let mut out = vec![0u64; poly.len() + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i] = f.add(out[i], c);
        out[i + 1] = f.sub(out[i + 1], f.mul(c, pos % f.p));
    }
    out
}

fn poly_mul_trunc(f: &Fp, a: &[u64], b: &[u64], cap: usize) -> Vec<u64> {
    let mut out = vec![0u64; cap.min(a.len() + b.len())];
    for (i, &ca) in a.iter().enumerate() {
        if ca == 0 || i >= cap {
            continue;
        }
        for (j, &cb) in b.iter().enumerate() {
            if i + j >= cap {
                break;
            }
            out[i + j] = f.add(out[i + j], f.mul(ca, cb));
        }
    }
    out
}

/// Berlekamp-Massey: shortest LFSR (error locator, constant term 1) for the
/// syndrome sequence.
fn berlekamp_massey(f: &Fp, s: &[u64]) -> Vec<u64> {
    let n = s.len();
    let mut c = vec![0u64; n + 1];
    let mut b = vec![0u64; n + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    let mut bd = 1u64; // discrepancy of b
    for i in 0..n {
        let mut d = s[i];
        for j in 1..=l {
            d = f.add(d, f.mul(c[j], s[i - j]));
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            let coef = f.mul(d, f.inv(bd));
            for j in 0..=n - m {
                c[j + m] = f.sub(c[j + m], f.mul(coef, b[j]));
            }
            l = i + 1 - l;
            b = t;
            bd = d;
            m = 1;
        } else {
            let coef = f.mul(d, f.inv(bd));
            for j in 0..=n - m {
                c[j + m] = f.sub(c[j + m], f.mul(coef, b[j]));
            }
            m += 1;
        }
    }
    c.truncate(l + 1);
    c
}
