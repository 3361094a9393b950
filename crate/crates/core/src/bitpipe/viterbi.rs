//! Hard-decision Viterbi decoder for the 133/171 code.

use super::conv::{branch_output, next_state, NUM_STATES};
use super::puncture::MaybeBit;

/// Decodes a depunctured stream (pairs of coded bits, `None` = erasure).
///
/// Hamming branch metric, erasures cost nothing. The whole block is kept
/// and traced back from state 0, so the input must be tail-terminated.
/// On equal metrics the survivor from the lower-numbered predecessor wins.
/// A trailing odd bit is ignored.
pub fn viterbi_decode(coded: &[MaybeBit]) -> Vec<u8> {
    let steps = coded.len() / 2;
    if steps == 0 {
        return Vec::new();
    }
    const UNREACHED: u32 = u32::MAX / 2;

    // expected outputs for every (state, input)
    let mut expect = [[(0u8, 0u8); 2]; NUM_STATES];
    for (s, e) in expect.iter_mut().enumerate() {
        e[0] = branch_output(s, 0);
        e[1] = branch_output(s, 1);
    }

    let mut metric = [UNREACHED; NUM_STATES];
    metric[0] = 0;
    let mut next = [0u32; NUM_STATES];
    // bit p of decisions[t] set: state p at time t+1 came from the odd predecessor
    let mut decisions = Vec::with_capacity(steps);

    for t in 0..steps {
        let (ra, rb) = (coded[2 * t], coded[2 * t + 1]);
        let cost = |(a, b): (u8, u8)| -> u32 {
            ra.map_or(0, |r| (r != a) as u32) + rb.map_or(0, |r| (r != b) as u32)
        };
        let mut word = 0u64;
        for (ns, slot) in next.iter_mut().enumerate() {
            let input = (ns >> 5) as u8;
            let p0 = (ns & 0x1f) << 1;
            let p1 = p0 | 1;
            let m0 = metric[p0].saturating_add(cost(expect[p0][input as usize]));
            let m1 = metric[p1].saturating_add(cost(expect[p1][input as usize]));
            if m1 < m0 {
                *slot = m1;
                word |= 1 << ns;
            } else {
                *slot = m0;
            }
        }
        metric = next;
        decisions.push(word);
    }

    let mut out = vec![0u8; steps];
    let mut state = 0usize;
    for t in (0..steps).rev() {
        out[t] = (state >> 5) as u8;
        let odd = (decisions[t] >> state) & 1;
        state = ((state & 0x1f) << 1) | odd as usize;
    }
    debug_assert_eq!(state, 0);
    out
}

/// Hamming distance between a received stream and the codeword of `bits`.
pub fn path_metric(coded: &[MaybeBit], bits: &[u8]) -> u32 {
    let mut state = 0;
    let mut d = 0;
    for (t, &b) in bits.iter().enumerate() {
        let (a, c) = branch_output(state, b);
        d += coded[2 * t].map_or(0, |r| (r != a) as u32);
        d += coded[2 * t + 1].map_or(0, |r| (r != c) as u32);
        state = next_state(state, b);
    }
    d
}
