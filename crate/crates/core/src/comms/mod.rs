//! Coded 16-QAM OFDM link used for bit-error-rate evaluation.

mod conv;
mod equalizer;
mod frame;
mod qam;

pub use conv::{conv_encode, conv_encode_terminated, viterbi_decode, CONSTRAINT_LENGTH, G1, G2, MEMORY, STATES};
pub use equalizer::{zf_equalize, MIN_GAIN};
pub use frame::{
    run_frame, run_noiseless_frame, snr_db_to_sigma2, DataBurst, Link, TrialDraw, TrialRecord, DEFAULT_BLANK_CARRIERS,
    DEFAULT_DATA_SYMBOLS,
};
pub use qam::{qam16_demap_hard, qam16_map, BITS_PER_SYMBOL};
