//! Byte/symbol codec and the on-disk stream formats.
//!
//! Bytes map to symbols 0..=255; symbol 256 marks padding (appended when a
//! byte stream has odd length) and 257 stays reserved as a filler, which is
//! why the bytes scheme needs a modulus of at least 258. On disk a stream is
//! either a semicolon-separated decimal list or big-endian 2-byte words.

use crate::cipher::SymbolStream;
use crate::error::{Error, Result};
use crate::modring::Modulus;

/// Pad marker appended to odd-length byte streams.
pub const PAD_MARKER: u64 = 256;
/// Reserved filler symbol; never emitted by this codec.
pub const PAD_FILLER: u64 = 257;

/// Byte/symbol codec over one modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codec {
    modulus: Modulus,
}

impl Codec {
    pub fn new(modulus: Modulus) -> Result<Self> {
        if modulus.n() < PAD_FILLER + 1 {
            return Err(Error::Codec(format!(
                "bytes scheme needs modulus >= {} (data 0..=255 plus two reserved symbols), got {}",
                PAD_FILLER + 1,
                modulus.n()
            )));
        }
        Ok(Codec { modulus })
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Bytes become symbols 0..=255; a pad marker keeps the length even.
    pub fn encode(&self, bytes: &[u8]) -> SymbolStream {
        let mut values: Vec<u64> = bytes.iter().map(|&b| b as u64).collect();
        if values.len() % 2 == 1 {
            values.push(PAD_MARKER);
        }
        SymbolStream::from_values(self.modulus, &values).expect("all symbols below the modulus")
    }

    /// Strips one trailing pad marker and maps the rest back to bytes.
    pub fn decode(&self, stream: &SymbolStream) -> Result<Vec<u8>> {
        if stream.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus.n(), stream.modulus().n()));
        }
        let mut values = stream.values();
        if values.last() == Some(&PAD_MARKER) {
            values.pop();
        }
        let mut bytes = Vec::with_capacity(values.len());
        for v in values {
            if v > 255 {
                return Err(Error::SymbolOutOfRange { value: v, modulus: 256 });
            }
            bytes.push(v as u8);
        }
        Ok(bytes)
    }
}

/// Renders a stream as a newline-terminated "56; 43; 105" decimal list.
pub fn format_text(stream: &SymbolStream) -> String {
    format!("{stream}\n")
}

/// Parses the semicolon-separated decimal list format.
pub fn parse_text(modulus: Modulus, text: &str) -> Result<SymbolStream> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return SymbolStream::from_values(modulus, &[]);
    }
    let mut values = Vec::new();
    for token in trimmed.split(';') {
        let token = token.trim();
        let value: u64 = token
            .parse()
            .map_err(|_| Error::Codec(format!("bad symbol {token:?} in decimal list")))?;
        values.push(value);
    }
    SymbolStream::from_values(modulus, &values)
}

/// Serializes a stream as big-endian 2-byte words.
pub fn to_binary(stream: &SymbolStream) -> Result<Vec<u8>> {
    if stream.modulus().n() > 1 << 16 {
        return Err(Error::Codec(format!(
            "modulus {} too large for 2-byte binary symbols",
            stream.modulus().n()
        )));
    }
    let mut bytes = Vec::with_capacity(stream.len() * 2);
    for v in stream.values() {
        bytes.extend_from_slice(&(v as u16).to_be_bytes());
    }
    Ok(bytes)
}

/// Parses big-endian 2-byte words back into a stream.
pub fn from_binary(modulus: Modulus, bytes: &[u8]) -> Result<SymbolStream> {
    if bytes.len() % 2 != 0 {
        return Err(Error::Codec(format!(
            "binary stream has odd byte count {}",
            bytes.len()
        )));
    }
    let values: Vec<u64> = bytes
        .chunks_exact(2)
        .map(|w| u16::from_be_bytes([w[0], w[1]]) as u64)
        .collect();
    SymbolStream::from_values(modulus, &values)
}
