use alloc::vec;
use alloc::vec::Vec;

use super::range::{ByteSink, RangeDecoder, RangeEncoder, MAX_TOTAL};
use crate::error::CodecError;

/// Added to a symbol's count each time it is coded.
pub const INCREMENT: u32 = 32;
/// Counts are halved (rounding up) once their total exceeds this.
pub const RESCALE_THRESHOLD: u32 = 1 << 13;

/// Adaptive frequency table over `0..alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContextModel {
    freq: Vec<u32>,
    total: u32,
    threshold: u32,
}

impl ContextModel {
    pub fn new(alphabet_size: usize) -> Self {
        assert!(alphabet_size > 0 && alphabet_size < (MAX_TOTAL / 4) as usize);
        let n = alphabet_size as u32;
        ContextModel {
            freq: vec![1; alphabet_size],
            total: n,
            // very large alphabets (label tables) need head room above their
            // own size or every update would rescale
            threshold: RESCALE_THRESHOLD.max(2 * n),
        }
    }

    pub fn alphabet_size(&self) -> usize {
        self.freq.len()
    }

    pub fn freq(&self, symbol: usize) -> u32 {
        self.freq[symbol]
    }

    pub fn total(&self) -> u32 {
        self.total
    }

    fn limited_total(&self, limit: usize) -> u32 {
        if limit == self.freq.len() {
            self.total
        } else {
            self.freq[..limit].iter().sum()
        }
    }

    pub fn update(&mut self, symbol: usize) {
        self.freq[symbol] += INCREMENT;
        self.total += INCREMENT;
        if self.total > self.threshold {
            self.total = 0;
            for f in &mut self.freq {
                *f = f.div_ceil(2);
                self.total += *f;
            }
        }
    }

    /// Codes `symbol` and adapts.
    pub fn encode<S: ByteSink>(&mut self, enc: &mut RangeEncoder<S>, symbol: usize) {
        self.encode_limited(enc, symbol, self.freq.len());
    }

    /// Codes `symbol` against the first `limit` entries only; the full
    /// table is still what adapts.
    pub fn encode_limited<S: ByteSink>(
        &mut self,
        enc: &mut RangeEncoder<S>,
        symbol: usize,
        limit: usize,
    ) {
        debug_assert!(symbol < limit && limit <= self.freq.len());
        let cum: u32 = self.freq[..symbol].iter().sum();
        enc.encode(cum, self.freq[symbol], self.limited_total(limit));
        self.update(symbol);
    }

    pub fn decode(&mut self, dec: &mut RangeDecoder<'_>) -> Result<usize, CodecError> {
        self.decode_limited(dec, self.freq.len())
    }

    pub fn decode_limited(
        &mut self,
        dec: &mut RangeDecoder<'_>,
        limit: usize,
    ) -> Result<usize, CodecError> {
        let target = dec.decode_target(self.limited_total(limit));
        let mut cum = 0;
        for (s, &f) in self.freq[..limit].iter().enumerate() {
            if target < cum + f {
                dec.decode_update(cum, f);
                self.update(s);
                dec.check()?;
                return Ok(s);
            }
            cum += f;
        }
        unreachable!("target is below the limited total")
    }
}
