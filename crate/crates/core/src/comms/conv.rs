//! Rate-1/2, constraint-length-7 convolutional code with generators
//! `G1 = 1 + D^3 + D^4 + D^5 + D^6` and `G2 = 1 + D^3 + D^4 + D^6`, and a
//! hard-decision Viterbi decoder over its 64-state trellis.

use crate::error::{Error, Result};

pub const CONSTRAINT_LENGTH: usize = 7;
pub const MEMORY: usize = CONSTRAINT_LENGTH - 1;
pub const STATES: usize = 1 << MEMORY;

/// Generator coefficients, `D^0` first.
pub const G1: [u8; CONSTRAINT_LENGTH] = [1, 0, 0, 1, 1, 1, 1];
pub const G2: [u8; CONSTRAINT_LENGTH] = [1, 0, 0, 1, 1, 0, 1];

const fn mask(g: [u8; CONSTRAINT_LENGTH]) -> u32 {
    let mut m = 0;
    let mut i = 0;
    while i < CONSTRAINT_LENGTH {
        m |= (g[i] as u32) << i;
        i += 1;
    }
    m
}

const MASK1: u32 = mask(G1);
const MASK2: u32 = mask(G2);

/// Register layout: bit `i` holds `u_{t-i}`; the state is the register
/// without the current input, `bit i = u_{t-1-i}`.
#[inline]
fn outputs(state: usize, input: u8) -> (u8, u8) {
    let reg = ((state as u32) << 1) | input as u32;
    (((reg & MASK1).count_ones() & 1) as u8, ((reg & MASK2).count_ones() & 1) as u8)
}

#[inline]
fn next_state(state: usize, input: u8) -> usize {
    ((state << 1) | input as usize) & (STATES - 1)
}

/// Encodes `bits` from the all-zero state, emitting `(G1, G2)` per input.
/// Callers terminate the trellis by ending the message with [`MEMORY`] zeros
/// (see [`conv_encode_terminated`]).
pub fn conv_encode(bits: &[u8]) -> Vec<u8> {
    let mut state = 0;
    let mut out = Vec::with_capacity(2 * bits.len());
    for &b in bits {
        let b = b & 1;
        let (o1, o2) = outputs(state, b);
        out.push(o1);
        out.push(o2);
        state = next_state(state, b);
    }
    out
}

/// Appends the zero tail and encodes.
pub fn conv_encode_terminated(message: &[u8]) -> Vec<u8> {
    let mut bits = message.to_vec();
    bits.extend_from_slice(&[0; MEMORY]);
    conv_encode(&bits)
}

/// Minimum-Hamming-distance decoding of a terminated codeword. Returns one
/// bit per received pair, tail included. Among equal-metric predecessors
/// the lower state index survives.
pub fn viterbi_decode(received: &[u8]) -> Result<Vec<u8>> {
    if !received.len().is_multiple_of(2) {
        return Err(Error::BitLength {
            len: received.len(),
            multiple: 2,
        });
    }
    let steps = received.len() / 2;
    const UNREACHED: u32 = u32::MAX / 2;
    let mut metric = [UNREACHED; STATES];
    metric[0] = 0;
    // survivor predecessor per step and state
    let mut history = vec![[0u8; STATES]; steps];
    let mut branch = [[(0u8, 0u8); 2]; STATES];
    for (s, row) in branch.iter_mut().enumerate() {
        for u in 0..2u8 {
            row[u as usize] = outputs(s, u);
        }
    }
    for (t, pair) in received.chunks_exact(2).enumerate() {
        let (r1, r2) = (pair[0] & 1, pair[1] & 1);
        let mut next = [UNREACHED; STATES];
        for (s, slot) in next.iter_mut().enumerate() {
            let u = s & 1;
            let base = s >> 1;
            let mut best = UNREACHED;
            let mut best_pred = 0u8;
            for hi in 0..2 {
                let p = base | (hi << (MEMORY - 1));
                let (o1, o2) = branch[p][u];
                let m = metric[p] + (o1 ^ r1) as u32 + (o2 ^ r2) as u32;
                if m < best {
                    best = m;
                    best_pred = p as u8;
                }
            }
            *slot = best;
            history[t][s] = best_pred;
        }
        metric = next;
    }
    let mut state = 0usize;
    let mut decoded = vec![0u8; steps];
    for t in (0..steps).rev() {
        decoded[t] = (state & 1) as u8;
        state = history[t][state] as usize;
    }
    Ok(decoded)
}
