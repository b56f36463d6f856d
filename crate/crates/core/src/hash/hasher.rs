use std::io;

use super::{compress, padding, ChainingState, Digest, HfParams, MessageBlock, BLOCK_BYTES};
use crate::error::{Error, Result};

/// Incremental hasher.
///
/// A full 56-byte chunk of message is never the final padded block (padding
/// adds at least 9 bytes), so full chunks are compressed as soon as they are
/// buffered and the buffer never holds a complete block between calls.
#[derive(Debug, Clone)]
pub struct Hasher {
    params: HfParams,
    chain: ChainingState,
    buffer: [u8; BLOCK_BYTES],
    buffered: usize,
    total_bytes: u64,
}

impl Hasher {
    pub fn new(params: HfParams) -> Self {
        Hasher {
            chain: ChainingState(params.iv),
            params,
            buffer: [0; BLOCK_BYTES],
            buffered: 0,
            total_bytes: 0,
        }
    }

    /// Message bits absorbed so far.
    pub fn total_bits(&self) -> u64 {
        self.total_bytes * 8
    }

    pub fn update(&mut self, mut data: &[u8]) -> Result<()> {
        let new_total = self
            .total_bytes
            .checked_add(data.len() as u64)
            .filter(|&t| t.checked_mul(8).is_some())
            .ok_or(Error::MessageTooLong)?;

        if self.buffered > 0 {
            let take = (BLOCK_BYTES - self.buffered).min(data.len());
            self.buffer[self.buffered..self.buffered + take].copy_from_slice(&data[..take]);
            self.buffered += take;
            data = &data[take..];
            if self.buffered == BLOCK_BYTES {
                let block = self.buffer;
                self.absorb(&block)?;
                self.buffered = 0;
            }
        }
        let mut chunks = data.chunks_exact(BLOCK_BYTES);
        for chunk in &mut chunks {
            self.absorb(chunk.try_into().expect("exact chunk"))?;
        }
        let rest = chunks.remainder();
        self.buffer[..rest.len()].copy_from_slice(rest);
        self.buffered += rest.len();
        self.total_bytes = new_total;
        Ok(())
    }

    fn absorb(&mut self, bytes: &[u8; BLOCK_BYTES]) -> Result<()> {
        let block = MessageBlock::from_bytes(bytes, false);
        self.chain = compress(&self.chain, &block, &self.params)?;
        Ok(())
    }

    pub fn finalize(self) -> Result<Digest> {
        let mut tail = self.buffer[..self.buffered].to_vec();
        tail.extend_from_slice(&padding(self.total_bytes, &self.params.layout)?);
        debug_assert!(tail.len() == BLOCK_BYTES || tail.len() == 2 * BLOCK_BYTES);
        let n = tail.len() / BLOCK_BYTES;
        let mut chain = self.chain;
        for (i, chunk) in tail.chunks_exact(BLOCK_BYTES).enumerate() {
            let block =
                MessageBlock::from_bytes(chunk.try_into().expect("exact chunk"), i + 1 == n);
            chain = compress(&chain, &block, &self.params)?;
        }
        Ok(Digest(chain.0))
    }
}

impl io::Write for Hasher {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        self.update(buf)
            .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
        Ok(buf.len())
    }

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}
