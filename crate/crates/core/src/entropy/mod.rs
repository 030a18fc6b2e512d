//! Adaptive range coding: the coder itself, per-context frequency models
//! and the bank of contexts the codec draws from.

mod bank;
mod model;
mod range;

pub use bank::{
    ContextBank, EccContext, ModelStore, Slot, ThreeOtContext, TrialBank, TrialScratch,
    ECC_START_SLOTS, THREE_OT_MAX_ORDER, THREE_OT_TABLES,
};
pub use model::{ContextModel, INCREMENT, RESCALE_THRESHOLD};
pub use range::{log2_fixed, ByteSink, NullSink, RangeDecoder, RangeEncoder, MAX_TOTAL};

/// Converts a [`RangeEncoder::cost`] difference to bits.
pub fn cost_to_bits(cost: u64) -> f64 {
    cost as f64 / 65536.0
}
