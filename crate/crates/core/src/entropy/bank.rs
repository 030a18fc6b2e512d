use alloc::vec;
use alloc::vec::Vec;

use super::model::ContextModel;
use crate::chain::{LOCAL_SYMBOLS, RECC_SYMBOLS};

/// First-order ECC context values `27..36` hold the self-reference of the
/// opening symbol of a run (the blob's first symbol, or the unit step that
/// ends a skip) in place of a previous RECC value.
pub const ECC_START_SLOTS: usize = LOCAL_SYMBOLS;
const ECC_FIRST_KEYS: usize = RECC_SYMBOLS + ECC_START_SLOTS;
const ECC_TABLES: usize = ECC_FIRST_KEYS * LOCAL_SYMBOLS;
/// Order-0 to order-4 tables over a ternary alphabet: 1 + 3 + 9 + 27 + 81.
pub const THREE_OT_TABLES: usize = 121;
pub const THREE_OT_MAX_ORDER: usize = 4;

/// Identifies one adaptive model in a [`ContextBank`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    ModeFlag,
    RareFlag,
    CompleteSkip,
    Label,
    Ecc(EccContext),
    ThreeOt(ThreeOtContext),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EccContext {
    /// Previous RECC value (0..27) or `27 + self_reference` at a run start.
    pub first: u8,
    /// Self-reference of the symbol before the previous one, 0 if none.
    pub second: u8,
}

impl EccContext {
    pub fn start(self_reference: u8) -> Self {
        EccContext { first: RECC_SYMBOLS as u8 + self_reference, second: 0 }
    }
}

/// The most recent (up to four) 3OT symbols of the current blob.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ThreeOtContext {
    len: u8,
    /// base-3 digits, most recent lowest
    digits: u8,
}

impl ThreeOtContext {
    pub fn push(&mut self, symbol: u8) {
        debug_assert!(symbol < 3);
        let keep = 27; // 3^(max order - 1)
        self.digits = (self.digits % keep) * 3 + symbol;
        self.len = (self.len + 1).min(THREE_OT_MAX_ORDER as u8);
    }

    pub fn order(&self) -> usize {
        self.len as usize
    }

    fn table(&self) -> usize {
        // offsets of each order's block: 0, 1, 4, 13, 40
        const BASE: [usize; 5] = [0, 1, 4, 13, 40];
        let modulus = [1u8, 3, 9, 27, 81][self.len as usize];
        BASE[self.len as usize] + (self.digits % modulus) as usize
    }
}

const ECC_BASE: usize = 4;
const THREE_OT_BASE: usize = ECC_BASE + ECC_TABLES;
const SLOTS: usize = THREE_OT_BASE + THREE_OT_TABLES;

impl Slot {
    fn index(self) -> usize {
        match self {
            Slot::ModeFlag => 0,
            Slot::RareFlag => 1,
            Slot::CompleteSkip => 2,
            Slot::Label => 3,
            Slot::Ecc(c) => {
                ECC_BASE + c.first as usize * LOCAL_SYMBOLS + c.second as usize
            }
            Slot::ThreeOt(c) => THREE_OT_BASE + c.table(),
        }
    }
}

/// Anything that can hand out the adaptive model for a slot.
pub trait ModelStore {
    fn model(&mut self, slot: Slot) -> &mut ContextModel;
}

/// All adaptive models used while coding one map, created on first use.
#[derive(Debug, Clone)]
pub struct ContextBank {
    slots: Vec<Option<ContextModel>>,
    label_count: usize,
}

impl ContextBank {
    pub fn new(label_count: usize) -> Self {
        ContextBank { slots: vec![None; SLOTS], label_count }
    }

    fn alphabet(&self, index: usize) -> usize {
        match index {
            0..=2 => 2,
            3 => self.label_count,
            i if i < THREE_OT_BASE => RECC_SYMBOLS,
            _ => 3,
        }
    }

    fn fresh(&self, index: usize) -> ContextModel {
        ContextModel::new(self.alphabet(index))
    }

    /// Number of ECC context tables created so far.
    pub fn ecc_contexts(&self) -> usize {
        self.slots[ECC_BASE..THREE_OT_BASE].iter().filter(|s| s.is_some()).count()
    }

    pub fn three_ot_contexts(&self) -> usize {
        self.slots[THREE_OT_BASE..].iter().filter(|s| s.is_some()).count()
    }

    pub fn get(&self, slot: Slot) -> Option<&ContextModel> {
        self.slots[slot.index()].as_ref()
    }
}

impl ModelStore for ContextBank {
    fn model(&mut self, slot: Slot) -> &mut ContextModel {
        let i = slot.index();
        if self.slots[i].is_none() {
            self.slots[i] = Some(self.fresh(i));
        }
        self.slots[i].as_mut().unwrap()
    }
}

/// Reusable storage for copy-on-write trial views of a bank.
#[derive(Debug, Default)]
pub struct TrialScratch {
    index: Vec<u32>,
    models: Vec<(usize, ContextModel)>,
}

impl TrialScratch {
    pub fn new() -> Self {
        TrialScratch { index: vec![u32::MAX; SLOTS], models: Vec::new() }
    }

    fn reset(&mut self) {
        for (slot, _) in self.models.drain(..) {
            self.index[slot] = u32::MAX;
        }
    }
}

/// A view of a bank whose updates land in private copies, leaving the base
/// untouched. Dropping the view discards the copies.
pub struct TrialBank<'a> {
    base: &'a ContextBank,
    scratch: &'a mut TrialScratch,
}

impl<'a> TrialBank<'a> {
    pub fn new(base: &'a ContextBank, scratch: &'a mut TrialScratch) -> Self {
        if scratch.index.len() != SLOTS {
            *scratch = TrialScratch::new();
        }
        scratch.reset();
        TrialBank { base, scratch }
    }
}

impl ModelStore for TrialBank<'_> {
    fn model(&mut self, slot: Slot) -> &mut ContextModel {
        let i = slot.index();
        let mut at = self.scratch.index[i];
        if at == u32::MAX {
            let m = match &self.base.slots[i] {
                Some(m) => m.clone(),
                None => self.base.fresh(i),
            };
            at = self.scratch.models.len() as u32;
            self.scratch.models.push((i, m));
            self.scratch.index[i] = at;
        }
        &mut self.scratch.models[at as usize].1
    }
}
