use super::{
    pad, parse_blocks, AmbiguityConfig, ChainingState, Digest, Evaluator, HfParams, LastBlockMap,
    MessageBlock, Schedule, SCHEDULE_WORDS,
};
use crate::error::{Error, Result};
use crate::poly::PolyMap;

/// Builds the 64-word schedule of a block.
///
/// Every block but the last: `W_0 = H_0`, `W_1..W_14 = M_1..M_14`,
/// `W_15 = H_7`. The last block: `W_0 = H_0`, `W_1 = H_7`, and the message
/// words fill `W_2..W_15` according to `layout.lastblock_word_map`.
pub fn expand(
    block: &MessageBlock,
    chain: &ChainingState,
    layout: &AmbiguityConfig,
) -> Result<Schedule> {
    let h = &chain.0;
    let mut w = [0u32; SCHEDULE_WORDS];
    w[0] = h[0];
    if block.is_last {
        if layout.lastblock_word_map == LastBlockMap::Literal {
            return Err(Error::UndefinedLastBlockWord);
        }
        w[1] = h[7];
        w[2..16].copy_from_slice(&block.words);
    } else {
        w[1..15].copy_from_slice(&block.words);
        w[15] = h[7];
    }
    for j in 16..SCHEDULE_WORDS {
        w[j] = (w[j - 16] ^ w[j - 14] ^ w[j - 8] ^ w[j - 1]).rotate_left(3);
    }
    let schedule = Schedule(w);
    debug_assert!(schedule.satisfies_recurrence());
    Ok(schedule)
}

/// One round. `A || B` feeds `p` with `A` as the high 32 bits.
#[inline]
pub fn round<P: PolyMap + ?Sized>(state: ChainingState, w: u32, k: u32, p: &P) -> ChainingState {
    let h = state.0;
    let t1 = h[1]
        .wrapping_add(h[2])
        .wrapping_add(p.eval_p(concat(h[3], h[0])))
        .wrapping_add(k);
    let t2 = h[4]
        .wrapping_add(h[5])
        .wrapping_add(p.eval_p(concat(h[7], h[6])))
        .wrapping_add(w);
    ChainingState([
        t1.wrapping_add(t2),
        h[0],
        h[1],
        h[2],
        h[3].wrapping_add(t1).rotate_left(5),
        h[4],
        h[5],
        h[6],
    ])
}

#[inline]
fn concat(high: u32, low: u32) -> u64 {
    (u64::from(high) << 32) | u64::from(low)
}

fn run_rounds<P: PolyMap + ?Sized>(
    state: ChainingState,
    schedule: &Schedule,
    constants: &[u32; 64],
    rounds: usize,
    p: &P,
) -> ChainingState {
    schedule.0[..rounds]
        .iter()
        .zip(constants)
        .fold(state, |s, (&w, &k)| round(s, w, k, p))
}

/// Processes one block. The result is the state after the last round; the
/// incoming chaining value is not added back in.
pub fn compress(
    chain: &ChainingState,
    block: &MessageBlock,
    params: &HfParams,
) -> Result<ChainingState> {
    let schedule = expand(block, chain, &params.layout)?;
    let rounds = params.rounds.count();
    Ok(match &params.evaluator {
        Evaluator::Compiled(c) => run_rounds(*chain, &schedule, &params.constants, rounds, &**c),
        Evaluator::Oracle(s) => run_rounds(*chain, &schedule, &params.constants, rounds, &**s),
    })
}

/// One-shot hash: pad, parse, fold [`compress`] over the blocks from the IV.
pub fn hash(message: &[u8], params: &HfParams) -> Result<Digest> {
    let padded = pad(message, &params.layout)?;
    let state = parse_blocks(&padded)?
        .iter()
        .try_fold(ChainingState(params.iv), |chain, block| {
            compress(&chain, block, params)
        })?;
    Ok(Digest(state.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::{Rounds, IV, ROUND_CONSTANTS};
    use crate::poly::tests::synthetic;
    use crate::poly::{Monomial, PolynomialSystem};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_block_zero_chain() {
        let block = MessageBlock {
            words: [0; 14],
            is_last: false,
        };
        let s = expand(
            &block,
            &ChainingState::default(),
            &AmbiguityConfig::CANONICAL,
        )
        .unwrap();
        assert_eq!(s.0, [0; 64]);
    }

    #[test]
    fn word_placement() {
        let words: [u32; 14] = std::array::from_fn(|i| 100 + i as u32);
        let chain = ChainingState([1, 2, 3, 4, 5, 6, 7, 8]);
        let cfg = AmbiguityConfig::CANONICAL;

        let s = expand(
            &MessageBlock {
                words,
                is_last: false,
            },
            &chain,
            &cfg,
        )
        .unwrap();
        assert_eq!(s.0[0], 1);
        assert_eq!(s.0[1..15], words);
        assert_eq!(s.0[15], 8);
        assert!(s.satisfies_recurrence());

        let s = expand(
            &MessageBlock {
                words,
                is_last: true,
            },
            &chain,
            &cfg,
        )
        .unwrap();
        assert_eq!(s.0[0], 1);
        assert_eq!(s.0[1], 8);
        assert_eq!(s.0[2..16], words);
        assert!(s.satisfies_recurrence());

        let literal = AmbiguityConfig {
            lastblock_word_map: LastBlockMap::Literal,
            ..cfg
        };
        assert_eq!(
            expand(
                &MessageBlock {
                    words,
                    is_last: true
                },
                &chain,
                &literal
            ),
            Err(Error::UndefinedLastBlockWord)
        );
        assert!(expand(
            &MessageBlock {
                words,
                is_last: false
            },
            &chain,
            &literal
        )
        .is_ok());
    }

    #[test]
    fn expansion_difference_is_context_free() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let cfg = AmbiguityConfig::CANONICAL;
        for is_last in [false, true] {
            for bit in [0usize, 31, 200, 447] {
                let mut reference = None;
                for _ in 0..20 {
                    let words: [u32; 14] = rng.random();
                    let chain = ChainingState(rng.random());
                    let mut flipped = words;
                    flipped[bit / 32] ^= 1 << (bit % 32);
                    let a = expand(&MessageBlock { words, is_last }, &chain, &cfg).unwrap();
                    let b = expand(
                        &MessageBlock {
                            words: flipped,
                            is_last,
                        },
                        &chain,
                        &cfg,
                    )
                    .unwrap();
                    let d = a.xor(&b);
                    match reference {
                        None => reference = Some(d),
                        Some(r) => assert_eq!(r, d),
                    }
                }
            }
        }
    }

    #[test]
    fn round_with_zero_system() {
        let zero = synthetic(|_| vec![]).compile();
        let s = round(ChainingState::default(), 0, 0, &zero);
        assert_eq!(s, ChainingState::default());

        let s = round(ChainingState::default(), 0, 1, &zero);
        assert_eq!(s.0[0], 1);
        assert_eq!(s.0[4], 0x20);
        assert_eq!(s.0[1..4], [0, 0, 0]);
        assert_eq!(s.0[5..], [0, 0, 0]);
    }

    #[test]
    fn round_argument_order() {
        // y_1 = x_1 reads the top bit of the high word, y_32 = x_64 the bottom bit of the low word
        let sys = synthetic(|k| match k {
            1 => vec![Monomial::Linear(crate::poly::Var::new(1).unwrap())],
            32 => vec![Monomial::Linear(crate::poly::Var::new(64).unwrap())],
            _ => vec![],
        })
        .compile();
        // H3 top bit set -> p(H3||H0) = 0x80000000 goes into T1
        let s = round(
            ChainingState([0, 0, 0, 0x8000_0000, 0, 0, 0, 0]),
            0,
            0,
            &sys,
        );
        assert_eq!(s.0[0], 0x8000_0000);
        // H6 bottom bit set -> p(H7||H6) = 1 goes into T2 only
        let s = round(ChainingState([0, 0, 0, 0, 0, 0, 1, 0]), 0, 0, &sys);
        assert_eq!(s.0[0], 1);
        assert_eq!(s.0[4], 0);
        assert_eq!(s.0[7], 1);
    }

    /// Independent restatement of one round using u64 sums and the oracle.
    fn hand_step(h: [u32; 8], w: u32, k: u32, sys: &PolynomialSystem) -> [u32; 8] {
        let m = 1u64 << 32;
        let p1 = sys.eval_oracle(((h[3] as u64) << 32) + h[0] as u64) as u64;
        let p2 = sys.eval_oracle(((h[7] as u64) << 32) + h[6] as u64) as u64;
        let t1 = (h[1] as u64 + h[2] as u64 + p1 + k as u64) % m;
        let t2 = (h[4] as u64 + h[5] as u64 + p2 + w as u64) % m;
        let s = (h[3] as u64 + t1) % m;
        let rot = ((s << 5) | (s >> 27)) % m;
        [
            ((t1 + t2) % m) as u32,
            h[0],
            h[1],
            h[2],
            rot as u32,
            h[4],
            h[5],
            h[6],
        ]
    }

    #[test]
    fn first_round_from_iv_matches_hand_step() {
        let params = HfParams::canonical();
        let sys = PolynomialSystem::shipped();
        let expected = hand_step(IV, IV[0], ROUND_CONSTANTS[0], sys);
        let Evaluator::Compiled(c) = &params.evaluator else {
            unreachable!()
        };
        let got = round(ChainingState(IV), IV[0], ROUND_CONSTANTS[0], &**c);
        assert_eq!(got.0, expected);
        // frozen from a separate script implementation
        assert_eq!(
            got.0,
            [
                0x58ddf40d, 0x243f6a88, 0x85a308d3, 0x13198a2e, 0xda94e784, 0xa4093822, 0x299f31d0,
                0x082efa98
            ]
        );
    }

    #[test]
    fn two_block_composition() {
        let params = HfParams::canonical();
        let msg = [0x5au8; 60];
        let padded = pad(&msg, &params.layout).unwrap();
        let blocks = parse_blocks(&padded).unwrap();
        assert_eq!(blocks.len(), 2);
        let mid = compress(&ChainingState(IV), &blocks[0], &params).unwrap();
        let end = compress(&mid, &blocks[1], &params).unwrap();
        assert_eq!(Digest(end.0), hash(&msg, &params).unwrap());
    }

    #[test]
    fn rounds_knob_changes_output() {
        let full = HfParams::canonical();
        let half = HfParams::canonical().rounds(Rounds::R32);
        let block = parse_blocks(&pad(b"abc", &full.layout).unwrap()).unwrap()[0];
        let a = compress(&ChainingState(IV), &block, &full).unwrap();
        let b = compress(&ChainingState(IV), &block, &half).unwrap();
        let c = compress(&ChainingState(IV), &block, &half).unwrap();
        assert_ne!(a, b);
        assert_eq!(b, c);
    }
}
