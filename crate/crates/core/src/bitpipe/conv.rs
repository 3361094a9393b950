//! Rate-1/2 constraint-length-7 convolutional code, generators 133/171 (octal).

/// Generator for the first output bit of each pair.
pub const G0: u8 = 0o133;
/// Generator for the second output bit.
pub const G1: u8 = 0o171;
/// Zero bits that flush the encoder back to state 0.
pub const TAIL_BITS: usize = 6;
pub const NUM_STATES: usize = 64;

/// Output pair emitted when `input` enters a register holding `state`.
///
/// `state` keeps the six previous inputs, most recent in bit 5.
#[inline]
pub(crate) fn branch_output(state: usize, input: u8) -> (u8, u8) {
    let reg = ((input as usize) << 6) | state;
    (
        (reg & G0 as usize).count_ones() as u8 & 1,
        (reg & G1 as usize).count_ones() as u8 & 1,
    )
}

#[inline]
pub(crate) fn next_state(state: usize, input: u8) -> usize {
    ((input as usize) << 5) | (state >> 1)
}

/// Encodes from the zero state; output is `2 * bits.len()` long, pairs
/// interleaved as `a0 b0 a1 b1 ...`. Tail bits are the caller's job.
pub fn conv_encode(bits: &[u8]) -> Vec<u8> {
    let mut state = 0usize;
    let mut out = Vec::with_capacity(bits.len() * 2);
    for &b in bits {
        let (a, c) = branch_output(state, b);
        out.push(a);
        out.push(c);
        state = next_state(state, b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Plain shift register: reg[0] is the newest bit, reg[6] the oldest.
    fn reference_encode(bits: &[u8]) -> Vec<u8> {
        // generator taps listed oldest-last, from the octal digits
        let g0 = [1, 0, 1, 1, 0, 1, 1];
        let g1 = [1, 1, 1, 1, 0, 0, 1];
        let mut reg = [0u8; 7];
        let mut out = vec![];
        for &b in bits {
            reg.rotate_right(1);
            reg[0] = b;
            out.push(reg.iter().zip(g0).map(|(r, g)| r * g).sum::<u8>() % 2);
            out.push(reg.iter().zip(g1).map(|(r, g)| r * g).sum::<u8>() % 2);
        }
        out
    }

    #[test]
    fn impulse_response() {
        let input = [1, 0, 0, 0, 0, 0, 0];
        let out = conv_encode(&input);
        assert_eq!(out, reference_encode(&input));
        assert_eq!(out, vec![1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1, 0, 1, 1]);
    }

    #[test]
    fn zeros_map_to_zeros() {
        assert!(conv_encode(&[0; 40]).iter().all(|&b| b == 0));
    }

    proptest! {
        #[test]
        fn matches_reference(bits in prop::collection::vec(0u8..2, 0..200)) {
            prop_assert_eq!(conv_encode(&bits), reference_encode(&bits));
        }

        #[test]
        fn linear(pair in prop::collection::vec((0u8..2, 0u8..2), 1..120)) {
            let a: Vec<u8> = pair.iter().map(|p| p.0).collect();
            let b: Vec<u8> = pair.iter().map(|p| p.1).collect();
            let x: Vec<u8> = pair.iter().map(|p| p.0 ^ p.1).collect();
            let sum: Vec<u8> = conv_encode(&a).iter().zip(conv_encode(&b)).map(|(p, q)| p ^ q).collect();
            prop_assert_eq!(conv_encode(&x), sum);
        }
    }
}
