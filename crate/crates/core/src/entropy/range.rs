//! 32-bit multi-symbol range coder with byte-wise renormalisation and
//! carry propagation through a pending-byte cache.
//!
//! The very first output byte of this construction is always zero, so it is
//! not stored. The final flush emits only as many bytes as are needed to
//! pin a value inside the last interval; the decoder supplies zero bytes
//! for the (at most four) positions past the end of the stream.

use alloc::vec::Vec;

use crate::error::CodecError;

const TOP: u32 = 1 << 24;

/// Largest frequency total a model may present to the coder.
pub const MAX_TOTAL: u32 = 1 << 20;

/// Where encoded bytes go.
pub trait ByteSink {
    fn push(&mut self, byte: u8);
}

impl ByteSink for Vec<u8> {
    #[inline]
    fn push(&mut self, byte: u8) {
        Vec::push(self, byte);
    }
}

/// Discards bytes; used for trial encodes that only need the cost.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullSink;

impl ByteSink for NullSink {
    #[inline]
    fn push(&mut self, _: u8) {}
}

#[derive(Debug, Clone)]
pub struct RangeEncoder<S = Vec<u8>> {
    low: u64,
    range: u32,
    cache: u8,
    cache_size: u64,
    /// Bytes handed out of the cache so far, including the dropped first one.
    shifted: u64,
    sink: S,
}

impl RangeEncoder<Vec<u8>> {
    pub fn new() -> Self {
        Self::with_sink(Vec::new())
    }
}

impl Default for RangeEncoder<Vec<u8>> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: ByteSink> RangeEncoder<S> {
    pub fn with_sink(sink: S) -> Self {
        RangeEncoder { low: 0, range: u32::MAX, cache: 0, cache_size: 1, shifted: 0, sink }
    }

    /// A sink-less copy of the current state, for measuring trial encodes.
    pub fn trial(&self) -> RangeEncoder<NullSink> {
        RangeEncoder {
            low: self.low,
            range: self.range,
            cache: self.cache,
            cache_size: self.cache_size,
            shifted: self.shifted,
            sink: NullSink,
        }
    }

    #[inline]
    fn emit(&mut self, byte: u8) {
        if self.shifted != 0 {
            self.sink.push(byte);
        } else {
            debug_assert_eq!(byte, 0);
        }
        self.shifted += 1;
    }

    fn shift_low(&mut self) {
        if (self.low as u32) < 0xFF00_0000 || (self.low >> 32) != 0 {
            let carry = (self.low >> 32) as u8;
            let mut byte = self.cache;
            loop {
                self.emit(byte.wrapping_add(carry));
                byte = 0xFF;
                self.cache_size -= 1;
                if self.cache_size == 0 {
                    break;
                }
            }
            self.cache = (self.low >> 24) as u8;
        }
        self.cache_size += 1;
        self.low = (self.low & 0x00FF_FFFF) << 8;
    }

    #[inline]
    fn normalize(&mut self) {
        while self.range < TOP {
            self.range <<= 8;
            self.shift_low();
        }
    }

    /// Codes the sub-interval `[cum, cum + freq)` of `[0, total)`.
    #[inline]
    pub fn encode(&mut self, cum: u32, freq: u32, total: u32) {
        debug_assert!(freq > 0 && cum + freq <= total && total <= MAX_TOTAL);
        let r = self.range / total;
        self.low += r as u64 * cum as u64;
        self.range = r * freq;
        self.normalize();
    }

    /// Codes the low `nbits` bits of `value`, most significant first, each
    /// with probability one half.
    pub fn encode_bits(&mut self, value: u32, nbits: u32) {
        debug_assert!(nbits <= 32);
        debug_assert!(nbits == 32 || value >> nbits == 0);
        for i in (0..nbits).rev() {
            self.range >>= 1;
            if (value >> i) & 1 == 1 {
                self.low += self.range as u64;
            }
            self.normalize();
        }
    }

    /// Order-0 Exp-Golomb code of `value` in bypass bits.
    pub fn encode_eg0(&mut self, value: u32) {
        let x = value as u64 + 1;
        let len = 64 - x.leading_zeros();
        self.encode_bits(0, len - 1);
        // `x` fits in 33 bits; split so each call stays within 32.
        self.encode_bits((x >> 1) as u32 & ((1u64 << (len - 1)) - 1) as u32, len - 1);
        self.encode_bits((x & 1) as u32, 1);
    }

    /// Total coded information so far in units of 2^-16 bit. Differences
    /// between two readings give the exact cost of what was coded between
    /// them, rounding of the coder included.
    pub fn cost(&self) -> u64 {
        (((self.shifted + self.cache_size) * 8) << 16) + ((32u64 << 16) - log2_fixed(self.range) as u64)
    }

    /// Flushes the coder and returns the sink.
    pub fn finish(mut self) -> S {
        let top = self.low + self.range as u64;
        let mut shifts = 4;
        for n in 0..=4u32 {
            let step = 1u64 << (32 - 8 * n);
            let v = self.low.div_ceil(step) * step;
            if v < top {
                self.low = v;
                shifts = n;
                break;
            }
        }
        for _ in 0..=shifts {
            self.shift_low();
        }
        self.sink
    }
}

/// `log2(x)` in 16.16 fixed point, computed with integer arithmetic only so
/// that costs (and therefore mode decisions) are identical on every target.
pub fn log2_fixed(x: u32) -> u32 {
    debug_assert!(x > 0);
    let int = 31 - x.leading_zeros();
    // mantissa in [1, 2) as Q31
    let mut m: u64 = (x as u64) << (31 - int);
    let mut frac = 0u32;
    for bit in (0..16).rev() {
        m = (m * m) >> 31;
        if m >= 1 << 32 {
            m >>= 1;
            frac |= 1 << bit;
        }
    }
    (int << 16) | frac
}

pub struct RangeDecoder<'a> {
    data: &'a [u8],
    pos: usize,
    overrun: u32,
    code: u32,
    range: u32,
}

impl<'a> RangeDecoder<'a> {
    /// Positions past the end that may be read as implicit zeros.
    const MAX_OVERRUN: u32 = 4;

    pub fn new(data: &'a [u8]) -> Self {
        let mut d = RangeDecoder { data, pos: 0, overrun: 0, code: 0, range: u32::MAX };
        for _ in 0..4 {
            d.code = (d.code << 8) | d.next_byte() as u32;
        }
        d
    }

    #[inline]
    fn next_byte(&mut self) -> u8 {
        match self.data.get(self.pos) {
            Some(&b) => {
                self.pos += 1;
                b
            }
            None => {
                self.overrun += 1;
                0
            }
        }
    }

    #[inline]
    fn normalize(&mut self) {
        while self.range < TOP {
            self.range <<= 8;
            self.code = (self.code << 8) | self.next_byte() as u32;
        }
    }

    /// Fails once the decoder has read further past the end than any
    /// well-formed stream requires.
    pub fn check(&self) -> Result<(), CodecError> {
        if self.overrun > Self::MAX_OVERRUN {
            Err(CodecError::TruncatedPayload)
        } else {
            Ok(())
        }
    }

    /// First half of a symbol decode: the target cumulative frequency.
    #[inline]
    pub fn decode_target(&mut self, total: u32) -> u32 {
        self.range /= total;
        (self.code / self.range).min(total - 1)
    }

    /// Second half of a symbol decode, after the symbol owning the target
    /// has been found.
    #[inline]
    pub fn decode_update(&mut self, cum: u32, freq: u32) {
        self.code = self.code.wrapping_sub(cum.wrapping_mul(self.range));
        self.range = self.range.wrapping_mul(freq);
        self.normalize();
    }

    /// Decodes a symbol coded with [`RangeEncoder::encode`] under a uniform
    /// distribution over `n` values.
    pub fn decode_uniform(&mut self, n: u32) -> u32 {
        let s = self.decode_target(n);
        self.decode_update(s, 1);
        s
    }

    pub fn decode_bits(&mut self, nbits: u32) -> u32 {
        let mut v = 0u32;
        for _ in 0..nbits {
            self.range >>= 1;
            let bit = if self.code >= self.range {
                self.code -= self.range;
                1
            } else {
                0
            };
            v = (v << 1) | bit;
            self.normalize();
        }
        v
    }

    pub fn decode_eg0(&mut self) -> Result<u32, CodecError> {
        let mut zeros = 0;
        while self.decode_bits(1) == 0 {
            zeros += 1;
            if zeros > 32 {
                return Err(CodecError::InvalidSymbol);
            }
            self.check()?;
        }
        let rest = self.decode_bits(zeros) as u64;
        let x = (1u64 << zeros) | rest;
        u32::try_from(x - 1).map_err(|_| CodecError::InvalidSymbol)
    }
}
