//! Chain-code alphabets and tokenizers between edge cycles and symbols.

mod alphabet;
mod classic;
mod ecc;
mod three_ot;

pub use alphabet::{
    recc_map, recc_unmap, EccSymbol, ReccSymbol, Reversal, ECC_SYMBOLS, LOCAL_SYMBOLS,
    MAX_PATH, RECC_COMMON_SYMBOLS, RECC_SYMBOLS,
};
pub use classic::{classic_symbols, relative_f8, Scheme};
pub use ecc::{ecc_detokenize, ecc_tokenize, longest_match};
pub use three_ot::{detokenize_3ot, tokenize_3ot, ThreeOtState, Turn};
