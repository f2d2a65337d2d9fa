//! The `.so3` binary container for signals and spectra.
//!
//! Layout, all integers and floats little-endian:
//!
//! | offset | size | field                                   |
//! |--------|------|-----------------------------------------|
//! | 0      | 8    | magic `b"SO3GL\0\0\0"`                  |
//! | 8      | 4    | format version, `u32` = 1               |
//! | 12     | 4    | kind, `u32`: 0 signal, 1 spectrum       |
//! | 16     | 4    | band limit `L`, `u32`                   |
//! | 20     | 8    | payload length in complex values, `u64` |
//! | 28     | 16·n | `(re, im)` pairs of `f64`               |
//!
//! A signal payload holds `L(2L-1)^2` values in the grid sample order, a
//! spectrum payload `L(2L-1)(2L+1)/3` values in coefficient order.

use std::io::{Read, Write};

use num_complex::Complex64;
use thiserror::Error;

use crate::grid::{BandLimit, So3Signal, So3Spectrum};

pub const MAGIC: [u8; 8] = *b"SO3GL\0\0\0";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 28;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("not an .so3 file (bad magic)")]
    BadMagic,
    #[error("file too short for header ({0} bytes)")]
    ShortHeader(usize),
    #[error("unsupported format version {0}")]
    Version(u32),
    #[error("unknown payload kind {0}")]
    UnknownKind(u32),
    #[error("expected a {expected} file, found a {found} file")]
    WrongKind { expected: FileKind, found: FileKind },
    #[error("invalid band limit {0}")]
    BandLimit(u32),
    #[error("payload length mismatch: header declares {declared} values, band limit requires {expected}, file holds {actual_bytes} payload bytes")]
    PayloadLength {
        declared: u64,
        expected: u64,
        actual_bytes: usize,
    },
    #[error("invalid payload: {0}")]
    Payload(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Signal,
    Spectrum,
}

impl FileKind {
    fn code(self) -> u32 {
        match self {
            FileKind::Signal => 0,
            FileKind::Spectrum => 1,
        }
    }

    fn from_code(code: u32) -> Result<Self, FormatError> {
        match code {
            0 => Ok(FileKind::Signal),
            1 => Ok(FileKind::Spectrum),
            other => Err(FormatError::UnknownKind(other)),
        }
    }

    fn payload_len(self, band_limit: BandLimit) -> usize {
        match self {
            FileKind::Signal => band_limit.sample_count(),
            FileKind::Spectrum => band_limit.dimension(),
        }
    }
}

impl std::fmt::Display for FileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FileKind::Signal => "signal",
            FileKind::Spectrum => "spectrum",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct So3File {
    pub kind: FileKind,
    pub band_limit: BandLimit,
    pub payload: Vec<Complex64>,
}

impl So3File {
    pub fn from_signal(signal: &So3Signal) -> Self {
        Self {
            kind: FileKind::Signal,
            band_limit: signal.band_limit(),
            payload: signal.as_slice().to_vec(),
        }
    }

    pub fn from_spectrum(spectrum: &So3Spectrum) -> Self {
        Self {
            kind: FileKind::Spectrum,
            band_limit: spectrum.band_limit(),
            payload: spectrum.as_slice().to_vec(),
        }
    }

    fn expect_kind(&self, expected: FileKind) -> Result<(), FormatError> {
        if self.kind != expected {
            return Err(FormatError::WrongKind {
                expected,
                found: self.kind,
            });
        }
        Ok(())
    }

    pub fn into_signal(self) -> Result<So3Signal, FormatError> {
        self.expect_kind(FileKind::Signal)?;
        So3Signal::from_vec(self.band_limit, self.payload)
            .map_err(|e| FormatError::Payload(e.to_string()))
    }

    pub fn into_spectrum(self) -> Result<So3Spectrum, FormatError> {
        self.expect_kind(FileKind::Spectrum)?;
        So3Spectrum::from_vec(self.band_limit, self.payload)
            .map_err(|e| FormatError::Payload(e.to_string()))
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 16 * self.payload.len());
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&self.kind.code().to_le_bytes());
        out.extend_from_slice(&(self.band_limit.get() as u32).to_le_bytes());
        out.extend_from_slice(&(self.payload.len() as u64).to_le_bytes());
        for z in &self.payload {
            out.extend_from_slice(&z.re.to_le_bytes());
            out.extend_from_slice(&z.im.to_le_bytes());
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Result<Self, FormatError> {
        if bytes.len() >= MAGIC.len() && bytes[..MAGIC.len()] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        if bytes.len() < HEADER_LEN {
            return Err(FormatError::ShortHeader(bytes.len()));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
        let version = u32_at(8);
        if version != VERSION {
            return Err(FormatError::Version(version));
        }
        let kind = FileKind::from_code(u32_at(12))?;
        let raw_l = u32_at(16);
        let band_limit =
            BandLimit::new(raw_l as usize).map_err(|_| FormatError::BandLimit(raw_l))?;
        let declared = u64::from_le_bytes(bytes[20..28].try_into().unwrap());
        let expected = kind.payload_len(band_limit) as u64;
        let body = &bytes[HEADER_LEN..];
        if declared != expected || body.len() as u64 != expected * 16 {
            return Err(FormatError::PayloadLength {
                declared,
                expected,
                actual_bytes: body.len(),
            });
        }
        let payload = body
            .chunks_exact(16)
            .map(|c| {
                Complex64::new(
                    f64::from_le_bytes(c[..8].try_into().unwrap()),
                    f64::from_le_bytes(c[8..].try_into().unwrap()),
                )
            })
            .collect();
        Ok(Self {
            kind,
            band_limit,
            payload,
        })
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> Result<(), FormatError> {
        writer.write_all(&self.encode())?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut reader: R) -> Result<Self, FormatError> {
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        Self::decode(&bytes)
    }
}
