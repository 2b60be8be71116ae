//! Little-endian byte layout helpers for the serialized artifacts.
//!
//! Every artifact starts with a 4-byte magic and a version byte; variable
//! sections are length-prefixed with `u32`.

use crate::bits::BitString;
use crate::error::DecodeFailure;
use crate::hashing::Seed;
use alloc::vec::Vec;

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn magic(&mut self, m: &[u8; 4]) {
        self.buf.extend_from_slice(m);
    }

    pub fn u8(&mut self, v: u8) {
        self.buf.push(v);
    }

    pub fn u16(&mut self, v: u16) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn u64(&mut self, v: u64) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn u128(&mut self, v: u128) {
        self.buf.extend_from_slice(&v.to_le_bytes());
    }

    pub fn seed(&mut self, s: &Seed) {
        self.buf.extend_from_slice(&s.0);
    }

    pub fn bytes(&mut self, b: &[u8]) {
        self.u32(b.len() as u32);
        self.buf.extend_from_slice(b);
    }

    /// Length-prefixed bit string (bit count, then packed bytes).
    pub fn bits(&mut self, s: &BitString) {
        self.u64(s.len() as u64);
        let mut cur = 0u8;
        let mut n = 0;
        let mut packed = Vec::with_capacity(s.len().div_ceil(8));
        for b in s.iter() {
            cur |= (b as u8) << n;
            n += 1;
            if n == 8 {
                packed.push(cur);
                cur = 0;
                n = 0;
            }
        }
        if n > 0 {
            packed.push(cur);
        }
        self.buf.extend_from_slice(&packed);
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }

    pub fn len(&self) -> usize {
        self.buf.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buf.is_empty()
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(buf: &'a [u8]) -> Self {
        Self { buf, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeFailure> {
        if self.pos + n > self.buf.len() {
            return Err(DecodeFailure::Malformed("truncated buffer"));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    pub fn magic(&mut self, expect: &[u8; 4]) -> Result<(), DecodeFailure> {
        let got = self.take(4)?;
        if got != expect {
            return Err(DecodeFailure::Malformed("bad magic"));
        }
        Ok(())
    }

    pub fn u8(&mut self) -> Result<u8, DecodeFailure> {
        Ok(self.take(1)?[0])
    }

    pub fn u16(&mut self) -> Result<u16, DecodeFailure> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    pub fn u32(&mut self) -> Result<u32, DecodeFailure> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64, DecodeFailure> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    pub fn u128(&mut self) -> Result<u128, DecodeFailure> {
        Ok(u128::from_le_bytes(self.take(16)?.try_into().unwrap()))
    }

    pub fn seed(&mut self) -> Result<Seed, DecodeFailure> {
        Ok(Seed::from_bytes(self.take(32)?.try_into().unwrap()))
    }

    pub fn bytes(&mut self) -> Result<&'a [u8], DecodeFailure> {
        let n = self.u32()? as usize;
        self.take(n)
    }

    pub fn bits(&mut self) -> Result<BitString, DecodeFailure> {
        let nbits = self.u64()? as usize;
        let packed = self.take(nbits.div_ceil(8))?;
        let mut out = BitString::with_capacity(nbits);
        for k in 0..nbits {
            out.push((packed[k / 8] >> (k % 8)) & 1 == 1);
        }
        Ok(out)
    }

    pub fn done(&self) -> Result<(), DecodeFailure> {
        if self.pos != self.buf.len() {
            return Err(DecodeFailure::Malformed("trailing bytes"));
        }
        Ok(())
    }

    pub fn remaining(&self) -> usize {
        self.buf.len() - self.pos
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let mut w = Writer::new();
        w.magic(b"TST1");
        w.u8(3);
        w.u32(0xdeadbeef);
        w.u64(42);
        w.bits(&BitString::from_bit_str("010110101"));
        w.bytes(b"hello");
        let buf = w.finish();

        let mut r = Reader::new(&buf);
        r.magic(b"TST1").unwrap();
        assert_eq!(r.u8().unwrap(), 3);
        assert_eq!(r.u32().unwrap(), 0xdeadbeef);
        assert_eq!(r.u64().unwrap(), 42);
        assert_eq!(r.bits().unwrap(), BitString::from_bit_str("010110101"));
        assert_eq!(r.bytes().unwrap(), b"hello");
        r.done().unwrap();
    }

    #[test]
    fn bad_magic_and_truncation() {
        let mut w = Writer::new();
        w.magic(b"TST1");
        let buf = w.finish();
        assert!(Reader::new(&buf).magic(b"TST2").is_err());
        assert!(Reader::new(&buf[..2]).magic(b"TST1").is_err());
    }
}
