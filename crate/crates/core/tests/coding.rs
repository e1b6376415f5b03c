//! Convolutional code and 16-QAM properties checked against independent
//! reimplementations.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use ofdm_sure::comms::{
    conv_encode, conv_encode_terminated, qam16_demap_hard, qam16_map, viterbi_decode, G1, G2, MEMORY, STATES,
};
use ofdm_sure::Complex64;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Shortest path (in output weight) from the first nonzero input back to
/// the zero state, on a trellis built straight from the generator
/// coefficients.
fn free_distance_dijkstra() -> u32 {
    let step = |state: usize, input: usize| -> (usize, u32) {
        // register[i] = input i steps ago
        let register: Vec<usize> = (0..=MEMORY).map(|i| if i == 0 { input } else { (state >> (i - 1)) & 1 }).collect();
        let out = |g: &[u8]| register.iter().zip(g).map(|(r, &c)| r * c as usize).sum::<usize>() % 2;
        (((state << 1) | input) & (STATES - 1), (out(&G1) + out(&G2)) as u32)
    };
    let (start, w0) = step(0, 1);
    let mut dist = vec![u32::MAX; STATES];
    dist[start] = w0;
    let mut heap = BinaryHeap::from([Reverse((w0, start))]);
    while let Some(Reverse((d, s))) = heap.pop() {
        if s == 0 {
            return d;
        }
        if d > dist[s] {
            continue;
        }
        for input in 0..2 {
            let (next, w) = step(s, input);
            if d + w < dist[next] {
                dist[next] = d + w;
                heap.push(Reverse((d + w, next)));
            }
        }
    }
    unreachable!("trellis always returns to the zero state")
}

/// Minimum weight of terminated codewords for all messages of up to `max_len`
/// bits that start with a one.
fn free_distance_exhaustive(max_len: usize) -> (u32, Vec<u8>) {
    let mut best = (u32::MAX, Vec::new());
    for len in 1..=max_len {
        for tail in 0..(1u32 << (len - 1)) {
            let msg: Vec<u8> = (0..len).map(|i| if i == 0 { 1 } else { ((tail >> (i - 1)) & 1) as u8 }).collect();
            let w = conv_encode_terminated(&msg).iter().map(|&b| b as u32).sum();
            if w < best.0 {
                best = (w, msg);
            }
        }
    }
    best
}

#[test]
fn free_distance_is_seven() {
    assert_eq!(free_distance_dijkstra(), 7);
    let (w, msg) = free_distance_exhaustive(14);
    assert_eq!(w, 7);
    assert_eq!(msg, vec![1, 0, 0, 1, 1]);
}

#[test]
fn corrects_clustered_triple_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let message: Vec<u8> = (0..120).map(|_| rng.random_range(0..2u8)).collect();
        let mut coded = conv_encode_terminated(&message);
        let start = rng.random_range(0..coded.len() - 24);
        for pos in sample(&mut rng, 24, 3) {
            coded[start + pos] ^= 1;
        }
        assert_eq!(&viterbi_decode(&coded).unwrap()[..message.len()], &message[..]);
    }
}

#[test]
fn four_errors_on_a_minimum_weight_codeword_can_mislead() {
    // flipping 4 of the 7 ones of the minimum-weight codeword leaves the
    // received word closer to it than to the all-zero codeword
    let mut msg = vec![0u8; 40];
    msg[10..15].copy_from_slice(&[1, 0, 0, 1, 1]);
    let codeword = conv_encode_terminated(&msg);
    let ones: Vec<usize> = codeword.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect();
    assert_eq!(ones.len(), 7);
    let mut received = vec![0u8; codeword.len()];
    for &i in &ones[..4] {
        received[i] = 1;
    }
    let decoded = viterbi_decode(&received).unwrap();
    assert_eq!(&decoded[..msg.len()], &msg[..]);
}

#[test]
fn random_four_flips_in_long_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut corrected = 0;
    for _ in 0..1000 {
        let message: Vec<u8> = (0..500).map(|_| rng.random_range(0..2u8)).collect();
        let mut coded = conv_encode_terminated(&message);
        let n = coded.len();
        for pos in sample(&mut rng, n, 4) {
            coded[pos] ^= 1;
        }
        if viterbi_decode(&coded).unwrap()[..message.len()] == message[..] {
            corrected += 1;
        }
    }
    assert_eq!(corrected, 1000);
}

#[test]
fn tail_is_decoded_as_zeros() {
    let msg = [1, 1, 0, 1];
    let decoded = viterbi_decode(&conv_encode_terminated(&msg)).unwrap();
    assert_eq!(decoded.len(), msg.len() + MEMORY);
    assert!(decoded[msg.len()..].iter().all(|&b| b == 0));
}

#[test]
fn gray_neighbours_differ_in_one_bit() {
    let labels: Vec<[u8; 4]> = (0..16u8).map(|v| [v >> 3 & 1, v >> 2 & 1, v >> 1 & 1, v & 1]).collect();
    let points: Vec<Complex64> = labels.iter().map(|b| qam16_map(b).unwrap()[0]).collect();
    let d_min = 2.0 / 10f64.sqrt();
    for i in 0..16 {
        for j in 0..16 {
            if ((points[i] - points[j]).norm() - d_min).abs() < 1e-12 {
                let diff = labels[i].iter().zip(&labels[j]).filter(|(a, b)| a != b).count();
                assert_eq!(diff, 1, "{:?} vs {:?}", labels[i], labels[j]);
            }
        }
    }
    let power = points.iter().map(|p| p.norm_sqr()).sum::<f64>() / 16.0;
    assert!((power - 1.0).abs() < 1e-12);
}

proptest! {
    #[test]
    fn encoder_is_linear(u in prop::collection::vec(0u8..2, 1..200), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v: Vec<u8> = (0..u.len()).map(|_| rng.random_range(0..2u8)).collect();
        let sum: Vec<u8> = u.iter().zip(&v).map(|(a, b)| a ^ b).collect();
        let lhs = conv_encode(&sum);
        let rhs: Vec<u8> = conv_encode(&u).iter().zip(conv_encode(&v)).map(|(a, b)| a ^ b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn decode_inverts_encode(u in prop::collection::vec(0u8..2, 1..300)) {
        let decoded = viterbi_decode(&conv_encode_terminated(&u)).unwrap();
        prop_assert_eq!(&decoded[..u.len()], &u[..]);
    }

    #[test]
    fn qam_round_trip(bits in prop::collection::vec(0u8..2, 0..64usize).prop_map(|mut b| { b.truncate(b.len() / 4 * 4); b })) {
        prop_assert_eq!(qam16_demap_hard(&qam16_map(&bits).unwrap()), bits);
    }

    #[test]
    fn qam_decisions_survive_small_noise(bits in prop::collection::vec(0u8..2, 4..=64usize), re in -0.3f64..0.3, im in -0.3f64..0.3) {
        let mut bits = bits;
        bits.truncate(bits.len() / 4 * 4);
        let noisy: Vec<Complex64> = qam16_map(&bits).unwrap().iter().map(|z| z + Complex64::new(re, im)).collect();
        prop_assert_eq!(qam16_demap_hard(&noisy), bits);
    }
}
