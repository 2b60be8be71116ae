//! Mismatch recovery between near-identical vectors.
//!
//! Two primitives share the Reed-Solomon codec:
//!
//! * [`EccRedundancy`] — one-way recovery when the receiver knows a candidate
//!   set of at most `lambda` coordinates containing all differences. The
//!   sender folds her vector through a (2,2)-universal hash into `v` buckets
//!   and protects the bucket vector with RS syndromes; the receiver folds his
//!   own vector the same way, locates the differing buckets, and corrects his
//!   candidates by the bucket xor.
//! * [`HamSketch`] — a linear summary from which the differing coordinates of
//!   two equal-length vectors are recovered exactly when they number at most
//!   `k`, with "error" signaled otherwise. Internally an invertible table of
//!   count/keysum/valsum/checksum cells with three cell choices per index and
//!   `c_cell` cells per tolerated mismatch.
//!
//! Both artifacts carry a polynomial verification signature so that wrong
//! recoveries surface as detected failures.

use crate::error::DecodeFailure;
use crate::field::{m61_add, m61_mul, m61_sub, Fp, M61};
use crate::hashing::{PrfStream, Seed, UnivHasher};
use crate::rs::RsCode;
use crate::wire::{Reader, Writer};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

const LIMB_BITS: u32 = 16;

/// Polynomial signature of a (sparse) vector: `sum digit(a_i) * B^(u-i)` with
/// `digit(v) = v + 1`. Linear in per-position patches, so sparse vectors sign
/// in time proportional to their support.
#[derive(Clone, Copy, Debug)]
pub struct VectorSig {
    base: u64,
}

impl VectorSig {
    pub fn new(seed: &Seed, stream_id: &str) -> Self {
        let mut st = PrfStream::new(seed, stream_id);
        Self { base: st.next_m61_nonzero() }
    }

    fn geom(&self, f: &Fp, n: u64) -> u64 {
        // 1 + B + ... + B^(n-1)
        if self.base == 1 {
            return n % M61;
        }
        let num = f.sub(f.pow(self.base, n), 1);
        f.mul(num, f.inv(f.sub(self.base, 1)))
    }

    /// Signature of a length-`u` vector with the given nonzero entries
    /// (1-based positions, values `< 2^60`).
    pub fn sign_sparse<I: IntoIterator<Item = (u64, u64)>>(&self, u: u64, entries: I) -> u64 {
        let f = Fp { p: M61 };
        let mut sig = self.geom(&f, u); // all-zero vector: every digit is 1
        for (pos, val) in entries {
            debug_assert!(pos >= 1 && pos <= u);
            sig = m61_add(sig, m61_mul(val % M61, f.pow(self.base, u - pos)));
        }
        sig
    }
}

/// Parameters of the candidate-set recovery primitive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EccParams {
    /// Vector length (positions `1..=u`).
    pub u: u64,
    /// Bits per symbol; symbols are integers below `2^sigma_bits` (max 60).
    pub sigma_bits: u32,
    /// Differences correctable.
    pub k: usize,
    /// Candidate-set budget at decode time.
    pub lambda: u64,
    /// Failure probability exponent: p = 2^-p_log2.
    pub p_log2: u32,
}

impl EccParams {
    /// Bucket count: `k^2/p` when `lambda == k`, else `4*k*lambda/p`.
    pub fn bucket_count(&self) -> u64 {
        let k = self.k as u64;
        let base = if self.lambda == k { k * k } else { 4 * k * self.lambda };
        base.max(4) << self.p_log2
    }
}

/// The message of the one-way recovery scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EccRedundancy {
    pub params: EccParams,
    pub seed: Seed,
    /// Distinguishes independent instances under one seed.
    pub instance: u32,
    /// RS syndromes per 16-bit limb of the bucket values.
    syndromes: Vec<Vec<u64>>,
    /// Verification signature of the full vector `a`.
    verif: u64,
}

fn ecc_hasher(seed: &Seed, instance: u32, params: &EccParams) -> UnivHasher {
    let label = alloc::format!("ecc/{instance}/f");
    UnivHasher::new(seed, &label, params.u, params.bucket_count())
}

fn ecc_sig(seed: &Seed, instance: u32) -> VectorSig {
    let label = alloc::format!("ecc/{instance}/sig");
    VectorSig::new(seed, &label)
}

fn ecc_code(params: &EccParams) -> RsCode {
    RsCode::for_params(params.bucket_count(), 2 * params.k, (1 << LIMB_BITS) - 1)
}

fn limb_count(sigma_bits: u32) -> usize {
    sigma_bits.div_ceil(LIMB_BITS) as usize
}

fn fold_buckets<I: IntoIterator<Item = (u64, u64)>>(
    h: &UnivHasher,
    entries: I,
) -> BTreeMap<u64, u64> {
    let mut buckets = BTreeMap::new();
    for (pos, val) in entries {
        if val == 0 {
            continue;
        }
        let b = h.eval(pos);
        let slot = buckets.entry(b).or_insert(0u64);
        *slot ^= val;
        if *slot == 0 {
            buckets.remove(&b);
        }
    }
    buckets
}

/// Encode redundancy for vector `a`, given sparsely (missing entries are 0).
pub fn ecc_encode_sparse<I>(a: I, params: EccParams, seed: &Seed, instance: u32) -> EccRedundancy
where
    I: IntoIterator<Item = (u64, u64)> + Clone,
{
    debug_assert!(params.sigma_bits <= 60 && params.sigma_bits >= 1);
    debug_assert!(params.lambda >= params.k as u64 && params.k >= 1);
    let h = ecc_hasher(seed, instance, &params);
    let buckets = fold_buckets(&h, a.clone());
    let code = ecc_code(&params);
    let limbs = limb_count(params.sigma_bits);
    let mut syndromes = Vec::with_capacity(limbs);
    for l in 0..limbs {
        syndromes.push(code.syndromes_sparse(
            buckets
                .iter()
                .map(|(&b, &v)| (b, (v >> (l as u32 * LIMB_BITS)) & 0xffff)),
        ));
    }
    let verif = ecc_sig(seed, instance).sign_sparse(params.u, a);
    EccRedundancy { params, seed: *seed, instance, syndromes, verif }
}

/// Dense-vector convenience wrapper.
pub fn ecc_encode(a: &[u64], params: EccParams, seed: &Seed, instance: u32) -> EccRedundancy {
    debug_assert_eq!(a.len() as u64, params.u);
    ecc_encode_sparse(
        a.iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u64 + 1, v))
            .collect::<Vec<_>>(),
        params,
        seed,
        instance,
    )
}

impl EccRedundancy {
    /// Recover `a` from the receiver's vector `b` (sparse, missing = 0) and a
    /// candidate set known to contain every differing coordinate.
    ///
    /// Fails (never silently) when the differences exceed `k`, fall outside
    /// the candidates, or the verification signature does not match.
    pub fn decode_sparse(
        &self,
        b: &BTreeMap<u64, u64>,
        candidates: &[u64],
    ) -> Result<BTreeMap<u64, u64>, DecodeFailure> {
        let params = &self.params;
        if candidates.len() as u64 > params.lambda {
            return Err(DecodeFailure::EccOverflow);
        }
        let h = ecc_hasher(&self.seed, self.instance, params);
        let buckets = fold_buckets(&h, b.iter().map(|(&i, &v)| (i, v)));
        let code = ecc_code(params);
        let limbs = limb_count(params.sigma_bits);
        if self.syndromes.len() != limbs {
            return Err(DecodeFailure::ParamMismatch("limb count"));
        }

        let mut cand_buckets: Vec<u64> = candidates.iter().map(|&i| h.eval(i)).collect();
        cand_buckets.sort_unstable();
        cand_buckets.dedup();

        // W[bucket] = (a-side bucket) xor (b-side bucket), assembled per limb.
        let mut w: BTreeMap<u64, u64> = BTreeMap::new();
        let f = code.field;
        for l in 0..limbs {
            let own = code.syndromes_sparse(
                buckets
                    .iter()
                    .map(|(&pos, &v)| (pos, (v >> (l as u32 * LIMB_BITS)) & 0xffff)),
            );
            // S(a) - S(b) = syndromes of the bucket difference.
            let diff: Vec<u64> = self.syndromes[l]
                .iter()
                .zip(own.iter())
                .map(|(&sa, &sb)| f.sub(sa, sb))
                .collect();
            for (bucket, delta) in code.locate_errors(&diff, &cand_buckets)? {
                let b_limb =
                    (buckets.get(&bucket).copied().unwrap_or(0) >> (l as u32 * LIMB_BITS)) & 0xffff;
                let a_limb = f.add(b_limb, delta);
                if a_limb >= 1 << LIMB_BITS {
                    return Err(DecodeFailure::RsFailure);
                }
                *w.entry(bucket).or_insert(0) |= (a_limb ^ b_limb) << (l as u32 * LIMB_BITS);
            }
        }
        w.retain(|_, x| *x != 0);

        // Apply the bucket differences to candidate coordinates.
        let mut a = b.clone();
        let mut touched: Vec<u64> = Vec::new();
        for &i in candidates {
            if let Some(&wx) = w.get(&h.eval(i)) {
                touched.push(h.eval(i));
                let v = a.entry(i).or_insert(0);
                *v ^= wx;
                if *v == 0 {
                    a.remove(&i);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        if touched.len() < w.len() {
            // Some differing bucket is unexplained by any candidate: the true
            // differences were not inside the candidate set.
            return Err(DecodeFailure::RsFailure);
        }
        let sig = ecc_sig(&self.seed, self.instance)
            .sign_sparse(params.u, a.iter().map(|(&i, &v)| (i, v)));
        if sig != self.verif {
            return Err(DecodeFailure::SignatureMismatch);
        }
        Ok(a)
    }

    /// Dense-vector convenience wrapper.
    pub fn decode(&self, b: &[u64], candidates: &[u64]) -> Result<Vec<u64>, DecodeFailure> {
        debug_assert_eq!(b.len() as u64, self.params.u);
        let sparse: BTreeMap<u64, u64> = b
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i as u64 + 1, v))
            .collect();
        let a = self.decode_sparse(&sparse, candidates)?;
        let mut out = vec![0u64; b.len()];
        for (&i, &v) in &a {
            out[i as usize - 1] = v;
        }
        Ok(out)
    }

    pub fn write_to(&self, w: &mut Writer) {
        w.u64(self.params.u);
        w.u8(self.params.sigma_bits as u8);
        w.u32(self.params.k as u32);
        w.u64(self.params.lambda);
        w.u8(self.params.p_log2 as u8);
        w.seed(&self.seed);
        w.u32(self.instance);
        let code = ecc_code(&self.params);
        let width = code.symbol_bits();
        w.u8(width as u8);
        for limb in &self.syndromes {
            w.bits(&pack_values(limb, width));
        }
        w.u64(self.verif);
    }

    pub fn read_from(r: &mut Reader) -> Result<Self, DecodeFailure> {
        let u = r.u64()?;
        let sigma_bits = r.u8()? as u32;
        let k = r.u32()? as usize;
        let lambda = r.u64()?;
        let p_log2 = r.u8()? as u32;
        if sigma_bits == 0 || sigma_bits > 60 || k == 0 {
            return Err(DecodeFailure::Malformed("ecc params"));
        }
        let params = EccParams { u, sigma_bits, k, lambda, p_log2 };
        let seed = r.seed()?;
        let instance = r.u32()?;
        let width = r.u8()? as u32;
        let code = ecc_code(&params);
        if width != code.symbol_bits() {
            return Err(DecodeFailure::Malformed("syndrome width"));
        }
        let mut syndromes = Vec::new();
        for _ in 0..limb_count(sigma_bits) {
            syndromes.push(unpack_values(&r.bits()?, width, 2 * k)?);
        }
        let verif = r.u64()?;
        Ok(Self { params, seed, instance, syndromes, verif })
    }

    /// Serialized size in bits.
    pub fn size_bits(&self) -> usize {
        let mut w = Writer::new();
        self.write_to(&mut w);
        w.finish().len() * 8
    }

    /// Syndrome payload in bits (plus the verification word), excluding the
    /// fixed header and the shipped seed. This is the quantity the
    /// communication-cost formula of the scheme speaks about.
    pub fn payload_bits(&self) -> usize {
        let code = ecc_code(&self.params);
        self.syndromes.len() * 2 * self.params.k * code.symbol_bits() as usize + 64
    }
}

pub fn pack_values(vals: &[u64], width: u32) -> crate::bits::BitString {
    let mut out = crate::bits::BitString::with_capacity(vals.len() * width as usize);
    for &v in vals {
        for k in 0..width {
            out.push((v >> k) & 1 == 1);
        }
    }
    out
}

pub fn unpack_values(
    bits: &crate::bits::BitString,
    width: u32,
    count: usize,
) -> Result<Vec<u64>, DecodeFailure> {
    if bits.len() != width as usize * count {
        return Err(DecodeFailure::Malformed("packed value length"));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut v = 0u64;
        for k in 0..width as usize {
            v |= (bits.get(i * width as usize + k + 1) as u64) << k;
        }
        out.push(v);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Streaming k-mismatch sketch.
// ---------------------------------------------------------------------------

/// Parameters of the invertible mismatch summary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HamParams {
    /// Vector length (positions `1..=n`).
    pub n: u64,
    /// Value width in bits (up to 128).
    pub sigma_bits: u32,
    /// Mismatches recoverable.
    pub k: usize,
    /// Cells per tolerated mismatch (default 8).
    pub c_cell: usize,
}

impl HamParams {
    pub fn new(n: u64, sigma_bits: u32, k: usize) -> Self {
        Self { n, sigma_bits, k, c_cell: 8 }
    }

    fn cells_per_row(&self) -> usize {
        (self.c_cell * self.k).div_ceil(3).max(8)
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Cell {
    count: i32,
    keysum: u64,
    valsum: u128,
    checksum: u64,
}

impl Cell {
    fn is_zero(&self) -> bool {
        self.count == 0 && self.keysum == 0 && self.valsum == 0 && self.checksum == 0
    }
}

/// Mixing coefficients for cell choice and checksums, derived from the seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct HamHash {
    row: [u64; 3],
    chk: [u64; 3],
}

impl HamHash {
    fn new(seed: &Seed, instance: u32) -> Self {
        let mut st = PrfStream::new(seed, &alloc::format!("ham/{instance}"));
        Self {
            row: [st.next_m61_nonzero(), st.next_m61_nonzero(), st.next_m61_nonzero()],
            chk: [st.next_m61_nonzero(), st.next_m61_nonzero(), st.next_m61_nonzero()],
        }
    }

    #[inline]
    fn mix(&self, index: u64, value: u128) -> u64 {
        let lo = (value as u64) % M61;
        let hi = ((value >> 64) as u64) % M61;
        let mut acc = m61_mul(self.chk[0], index % M61);
        acc = m61_add(acc, m61_mul(self.chk[1], lo));
        m61_add(acc, m61_mul(self.chk[2], hi))
    }

    #[inline]
    fn cell_in_row(&self, row: usize, index: u64, value: u128, row_cells: usize) -> usize {
        let m = self.mix(index, value);
        (m61_mul(self.row[row], m61_add(m, row as u64 + 1)) % row_cells as u64) as usize
    }

    #[inline]
    fn checksum(&self, index: u64, value: u128) -> u64 {
        // Distinct mixing from the cell choice: the squared term breaks any
        // linear relation between colliding items.
        let m = self.mix(index, value);
        m61_add(m61_mul(m, m), m61_mul(self.row[0], index % M61))
    }
}

/// Invertible summary of a length-`n` vector supporting exact recovery of up
/// to `k` differing coordinates against another sketch with the same params.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamSketch {
    pub params: HamParams,
    pub seed: Seed,
    pub instance: u32,
    hash: HamHash,
    cells: Vec<Cell>,
    /// Homomorphic signature: `sum mix(i, a_i) * B^i`.
    verif: u64,
    verif_base: u64,
    next_index: u64,
}

impl HamSketch {
    pub fn new(params: HamParams, seed: &Seed, instance: u32) -> Self {
        let mut st = PrfStream::new(seed, &alloc::format!("ham/{instance}/verif"));
        Self {
            params,
            seed: *seed,
            instance,
            hash: HamHash::new(seed, instance),
            cells: vec![Cell::default(); 3 * params.cells_per_row()],
            verif: 0,
            verif_base: st.next_m61_nonzero(),
            next_index: 1,
        }
    }

    /// One-pass insertion; indices must be supplied strictly increasing.
    pub fn insert(&mut self, index: u64, value: u128) {
        assert!(index >= self.next_index, "stream indices must be strictly increasing");
        assert!(index <= self.params.n);
        debug_assert!(self.params.sigma_bits >= 128 || value < (1u128 << self.params.sigma_bits));
        self.next_index = index + 1;
        let rc = self.params.cells_per_row();
        for row in 0..3 {
            let c = &mut self.cells[row * rc + self.hash.cell_in_row(row, index, value, rc)];
            c.count += 1;
            c.keysum ^= index;
            c.valsum ^= value;
            c.checksum ^= self.hash.checksum(index, value);
        }
        let f = Fp { p: M61 };
        self.verif = m61_add(
            self.verif,
            m61_mul(self.hash.mix(index, value), f.pow(self.verif_base, index)),
        );
    }

    /// Build from a complete vector of values.
    pub fn from_entries<I: IntoIterator<Item = u128>>(
        params: HamParams,
        seed: &Seed,
        instance: u32,
        values: I,
    ) -> Self {
        let mut sk = Self::new(params, seed, instance);
        let mut idx = 0u64;
        for v in values {
            idx += 1;
            sk.insert(idx, v);
        }
        debug_assert_eq!(idx, params.n);
        sk
    }

    fn compatible(&self, other: &Self) -> bool {
        self.params == other.params
            && self.seed == other.seed
            && self.instance == other.instance
            && self.verif_base == other.verif_base
    }

    /// Recover the coordinates where the two underlying vectors differ:
    /// `(index, self_value, other_value)` sorted by index. Signals failure
    /// when they differ in more than `k` places or peeling is inconsistent.
    pub fn decode(&self, other: &Self) -> Result<Vec<(u64, u128, u128)>, DecodeFailure> {
        if !self.compatible(other) {
            return Err(DecodeFailure::ParamMismatch("hamming sketch params"));
        }
        let rc = self.params.cells_per_row();
        let mut cells: Vec<Cell> = self
            .cells
            .iter()
            .zip(other.cells.iter())
            .map(|(a, b)| Cell {
                count: a.count - b.count,
                keysum: a.keysum ^ b.keysum,
                valsum: a.valsum ^ b.valsum,
                checksum: a.checksum ^ b.checksum,
            })
            .collect();

        // Peel pure cells.
        let mut stack: Vec<usize> = (0..cells.len()).collect();
        let mut recovered: Vec<(u64, u128, i32)> = Vec::new();
        while let Some(ci) = stack.pop() {
            let cell = cells[ci];
            if cell.count != 1 && cell.count != -1 {
                continue;
            }
            let (index, value, sign) = (cell.keysum, cell.valsum, cell.count);
            if self.hash.checksum(index, value) != cell.checksum
                || index < 1
                || index > self.params.n
            {
                continue;
            }
            for row in 0..3 {
                let target = row * rc + self.hash.cell_in_row(row, index, value, rc);
                let c = &mut cells[target];
                c.count -= sign;
                c.keysum ^= index;
                c.valsum ^= value;
                c.checksum ^= self.hash.checksum(index, value);
                stack.push(target);
            }
            recovered.push((index, value, sign));
            if recovered.len() > 4 * self.params.k + 16 {
                return Err(DecodeFailure::PeelFailure);
            }
        }
        if cells.iter().any(|c| !c.is_zero()) {
            return Err(DecodeFailure::PeelFailure);
        }

        // Pair +1 items (ours) with -1 items (theirs) by index.
        let mut ours: BTreeMap<u64, u128> = BTreeMap::new();
        let mut theirs: BTreeMap<u64, u128> = BTreeMap::new();
        for (index, value, sign) in recovered {
            let side = if sign > 0 { &mut ours } else { &mut theirs };
            if side.insert(index, value).is_some() {
                return Err(DecodeFailure::PeelFailure);
            }
        }
        if ours.len() != theirs.len() {
            return Err(DecodeFailure::PeelFailure);
        }
        let mut diffs = Vec::with_capacity(ours.len());
        let f = Fp { p: M61 };
        let mut delta = 0u64;
        for (index, a_val) in ours {
            let Some(b_val) = theirs.remove(&index) else {
                return Err(DecodeFailure::PeelFailure);
            };
            let term = m61_sub(self.hash.mix(index, a_val), self.hash.mix(index, b_val));
            delta = m61_add(delta, m61_mul(term, f.pow(self.verif_base, index)));
            diffs.push((index, a_val, b_val));
        }
        if delta != m61_sub(self.verif, other.verif) {
            return Err(DecodeFailure::SignatureMismatch);
        }
        if diffs.len() > self.params.k {
            return Err(DecodeFailure::TooManyDiffs);
        }
        Ok(diffs)
    }

    pub fn write_to(&self, w: &mut Writer) {
        w.u64(self.params.n);
        w.u8(self.params.sigma_bits as u8);
        w.u32(self.params.k as u32);
        w.u8(self.params.c_cell as u8);
        w.seed(&self.seed);
        w.u32(self.instance);
        for c in &self.cells {
            w.u32(c.count as u32);
            w.u64(c.keysum);
            w.u128(c.valsum);
            w.u64(c.checksum);
        }
        w.u64(self.verif);
    }

    pub fn read_from(r: &mut Reader) -> Result<Self, DecodeFailure> {
        let n = r.u64()?;
        let sigma_bits = r.u8()? as u32;
        let k = r.u32()? as usize;
        let c_cell = r.u8()? as usize;
        if k == 0 || c_cell == 0 {
            return Err(DecodeFailure::Malformed("hamming sketch params"));
        }
        let params = HamParams { n, sigma_bits, k, c_cell };
        let seed = r.seed()?;
        let instance = r.u32()?;
        let mut sk = Self::new(params, &seed, instance);
        for i in 0..sk.cells.len() {
            sk.cells[i] = Cell {
                count: r.u32()? as i32,
                keysum: r.u64()?,
                valsum: r.u128()?,
                checksum: r.u64()?,
            };
        }
        sk.verif = r.u64()?;
        sk.next_index = n + 1;
        Ok(sk)
    }

    pub fn size_bits(&self) -> usize {
        let mut w = Writer::new();
        self.write_to(&mut w);
        w.finish().len() * 8
    }
}
