use super::{AmbiguityConfig, MessageBlock, BLOCK_BYTES};
use crate::error::{Error, Result};

const BLOCK_BITS: u64 = 448;

/// Number of zero bits `k` between the padding 1-bit and the length field:
/// the least `k >= 0` with `l + 1 + k + 64 = 0 (mod 448)`.
pub fn padding_zero_bits(bit_len: u64) -> u64 {
    (383 + BLOCK_BITS - bit_len % BLOCK_BITS) % BLOCK_BITS
}

/// The bytes appended to a message of `byte_len` bytes: the padding bit,
/// `k` zero bits and the 64-bit length.
pub fn padding(byte_len: u64, layout: &AmbiguityConfig) -> Result<Vec<u8>> {
    let bits = byte_len.checked_mul(8).ok_or(Error::MessageTooLong)?;
    let k = padding_zero_bits(bits);
    // byte-aligned: the pad byte carries the 1-bit plus 7 of the k zeros
    debug_assert_eq!(k % 8, 7);
    let zero_bytes = ((k - 7) / 8) as usize;
    let mut out = Vec::with_capacity(1 + zero_bytes + 8);
    out.push(layout.pad_bit_placement.byte());
    out.resize(1 + zero_bytes, 0);
    out.extend_from_slice(&layout.encode_length(bits));
    Ok(out)
}

/// Message followed by its padding; the length is a multiple of 56 bytes.
pub fn pad(message: &[u8], layout: &AmbiguityConfig) -> Result<Vec<u8>> {
    let tail = padding(message.len() as u64, layout)?;
    let mut out = Vec::with_capacity(message.len() + tail.len());
    out.extend_from_slice(message);
    out.extend_from_slice(&tail);
    Ok(out)
}

/// Splits a padded message into blocks of 14 little-endian words, flagging
/// the final one.
pub fn parse_blocks(padded: &[u8]) -> Result<Vec<MessageBlock>> {
    if padded.is_empty() || !padded.len().is_multiple_of(BLOCK_BYTES) {
        return Err(Error::BadPaddedLength(padded.len()));
    }
    let n = padded.len() / BLOCK_BYTES;
    Ok(padded
        .chunks_exact(BLOCK_BYTES)
        .enumerate()
        .map(|(i, chunk)| {
            let bytes: &[u8; BLOCK_BYTES] = chunk.try_into().expect("exact chunk");
            MessageBlock::from_bytes(bytes, i + 1 == n)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hash::PadBit;

    #[test]
    fn zero_bit_counts() {
        assert_eq!(padding_zero_bits(8), 375);
        assert_eq!(padding_zero_bits(448), 383);
        assert_eq!(padding_zero_bits(0), 383);
        assert_eq!(padding_zero_bits(383), 0);
        assert_eq!(padding_zero_bits(384), 447);
    }

    #[test]
    fn padded_lengths() {
        let cfg = AmbiguityConfig::CANONICAL;
        assert_eq!(pad(b"a", &cfg).unwrap().len() * 8, 448);
        assert_eq!(pad(&[0u8; 56], &cfg).unwrap().len() * 8, 896);
        assert_eq!(pad(b"", &cfg).unwrap().len() * 8, 448);
        // 47 bytes + pad byte + 8 length bytes = 56
        assert_eq!(pad(&[1u8; 47], &cfg).unwrap().len(), 56);
        assert_eq!(pad(&[1u8; 48], &cfg).unwrap().len(), 112);
    }

    #[test]
    fn layout_of_padded_a() {
        let padded = pad(b"a", &AmbiguityConfig::CANONICAL).unwrap();
        assert_eq!(padded[0], b'a');
        assert_eq!(padded[1], 0x80);
        assert!(padded[2..48].iter().all(|&b| b == 0));
        assert_eq!(padded[48..], 8u64.to_le_bytes());

        let lsb = AmbiguityConfig {
            pad_bit_placement: PadBit::LsbOfNextByte,
            ..AmbiguityConfig::CANONICAL
        };
        assert_eq!(pad(b"a", &lsb).unwrap()[1], 0x01);
    }

    #[test]
    fn too_long() {
        assert_eq!(
            padding(u64::MAX / 4, &AmbiguityConfig::CANONICAL),
            Err(Error::MessageTooLong)
        );
        assert!(padding(u64::MAX / 8, &AmbiguityConfig::CANONICAL).is_ok());
    }

    #[test]
    fn block_parsing() {
        let blocks = parse_blocks(&[0u8; 56]).unwrap();
        assert_eq!(blocks.len(), 1);
        assert!(blocks[0].is_last);
        assert_eq!(blocks[0].words, [0; 14]);

        let blocks = parse_blocks(&[0u8; 112]).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(!blocks[0].is_last && blocks[1].is_last);

        assert_eq!(parse_blocks(&[0u8; 57]), Err(Error::BadPaddedLength(57)));
        assert_eq!(parse_blocks(&[]), Err(Error::BadPaddedLength(0)));
    }
}
