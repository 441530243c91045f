//! Compressor adapters: the built-in dictionary coder, a raw self-delimiting
//! copy, an edge-set-string model, and external subprocess compressors.

use std::io::{Read, Write};
use std::process::{Command, Stdio};

use num_bigint::BigUint;

use super::dictionary::{builtin_compress, builtin_decompress};
use crate::bits::{BitReader, BitString};
use crate::codec::{
    read_companion_tuple, read_natural, write_companion_tuple, write_natural, EdgeSetString,
    Indexer, Layout,
};
use crate::error::MagError;
use crate::family::FamilySpec;
use crate::mag::num_possible_edges;

/// Tag bits charged to every adapter output so estimates stay self-describing.
pub const ADAPTER_HEADER_BITS: usize = 8;

/// A lossless compressor over bit strings.
pub trait CompressorAdapter: Send + Sync {
    fn id(&self) -> &str;

    fn header_bits(&self) -> usize {
        ADAPTER_HEADER_BITS
    }

    fn compress(&self, x: &BitString) -> Result<BitString, MagError>;

    fn decompress(&self, y: &BitString) -> Result<BitString, MagError>;
}

/// The built-in dictionary compressor.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dictionary;

impl CompressorAdapter for Dictionary {
    fn id(&self) -> &str {
        "dictionary"
    }

    fn compress(&self, x: &BitString) -> Result<BitString, MagError> {
        Ok(builtin_compress(x))
    }

    fn decompress(&self, y: &BitString) -> Result<BitString, MagError> {
        builtin_decompress(y)
    }
}

/// `delta(len)` followed by the input itself; empty stays empty.
#[derive(Clone, Copy, Debug, Default)]
pub struct Raw;

impl CompressorAdapter for Raw {
    fn id(&self) -> &str {
        "raw"
    }

    fn compress(&self, x: &BitString) -> Result<BitString, MagError> {
        let mut out = BitString::new();
        if !x.is_empty() {
            write_natural(&mut out, &(x.len() as u64))?;
            out.append(x);
        }
        Ok(out)
    }

    fn decompress(&self, y: &BitString) -> Result<BitString, MagError> {
        if y.is_empty() {
            return Ok(BitString::new());
        }
        let mut r = y.reader();
        let n: u64 = read_natural(&mut r)?;
        if n != r.remaining() as u64 {
            return Err(MagError::MalformedStream(format!(
                "declared {n} bits, {} present",
                r.remaining()
            )));
        }
        (0..n).map(|_| r.read_bit()).collect()
    }
}

/// Recognizes edge-set strings and stores only the tuple header, the
/// indexer, and the presence bits; anything else is stored verbatim.
///
/// Layout: `0` + input, or `10` + tuple + payload for the per-MAG labeling,
/// or `11` + `delta(n0)` + tuple + payload for a family labeling. The payload
/// is `0` + the presence bits or `1` + their dictionary compression.
#[derive(Clone, Copy, Debug, Default)]
pub struct EdgeSetModel;

impl EdgeSetModel {
    fn parse(y: &BitString) -> Option<(Indexer, EdgeSetString)> {
        if let Ok(s) = EdgeSetString::decode(y, &Indexer::PerMag, Layout::Full) {
            return Some((Indexer::PerMag, s));
        }
        let tau = read_companion_tuple(&mut y.reader()).ok()?;
        let size = tau.uniform_size()?;
        (1..=size).find_map(|n0| {
            let indexer = Indexer::Family(FamilySpec::new(tau.order(), n0).ok()?);
            EdgeSetString::decode(y, &indexer, Layout::Full)
                .ok()
                .map(|s| (indexer, s))
        })
    }

    fn read_payload(r: &mut BitReader<'_>, m: usize) -> Result<BitString, MagError> {
        let packed = r.read_bit()?;
        let rest: BitString = (0..r.remaining())
            .map(|_| r.read_bit())
            .collect::<Result<_, _>>()?;
        let x = if packed { builtin_decompress(&rest)? } else { rest };
        if x.len() != m {
            return Err(MagError::MalformedStream(format!(
                "payload has {} presence bits, tuple needs {m}",
                x.len()
            )));
        }
        Ok(x)
    }
}

impl CompressorAdapter for EdgeSetModel {
    fn id(&self) -> &str {
        "edgeset-model"
    }

    fn compress(&self, y: &BitString) -> Result<BitString, MagError> {
        let mut out = BitString::new();
        let Some((indexer, parsed)) = Self::parse(y) else {
            out.push(false);
            out.append(y);
            return Ok(out);
        };
        out.push(true);
        match indexer {
            Indexer::PerMag => out.push(false),
            Indexer::Family(spec) => {
                out.push(true);
                write_natural(&mut out, &spec.n0())?;
            }
        }
        write_companion_tuple(&mut out, parsed.tau())?;
        let x: BitString = parsed.entries().iter().map(|(_, z)| *z).collect();
        let packed = builtin_compress(&x);
        if packed.len() < x.len() {
            out.push(true);
            out.append(&packed);
        } else {
            out.push(false);
            out.append(&x);
        }
        Ok(out)
    }

    fn decompress(&self, y: &BitString) -> Result<BitString, MagError> {
        let mut r = y.reader();
        if !r.read_bit()? {
            return Ok(y.iter().skip(1).collect());
        }
        let family_n0 = if r.read_bit()? {
            Some(read_natural::<u64>(&mut r)?)
        } else {
            None
        };
        let tau = read_companion_tuple(&mut r)?;
        let indexer = match family_n0 {
            Some(n0) => Indexer::Family(FamilySpec::new(tau.order(), n0)?),
            None => Indexer::PerMag,
        };
        let m = usize::try_from(&num_possible_edges::<BigUint>(&tau)?)
            .map_err(|_| MagError::MalformedStream("tuple too large".into()))?;
        let x = Self::read_payload(&mut r, m)?;
        let g = indexer.decode_char_string(&x, &tau)?;
        EdgeSetString::from_mag(&g, &indexer)?.encode(Layout::Full)
    }
}

/// 8-byte big-endian bit count followed by the bits packed MSB-first.
pub fn encode_frame(x: &BitString) -> Vec<u8> {
    let mut frame = (x.len() as u64).to_be_bytes().to_vec();
    frame.extend(x.to_packed_bytes());
    frame
}

pub fn decode_frame(frame: &[u8]) -> Result<BitString, MagError> {
    let header: [u8; 8] = frame
        .get(..8)
        .and_then(|h| h.try_into().ok())
        .ok_or_else(|| MagError::MalformedStream("frame shorter than its header".into()))?;
    let bits = u64::from_be_bytes(header);
    let payload = &frame[8..];
    if (payload.len() as u64) != bits.div_ceil(8) {
        return Err(MagError::MalformedStream(format!(
            "frame declares {bits} bits but carries {} bytes",
            payload.len()
        )));
    }
    BitString::from_packed_bytes(payload, bits as usize)
}

/// An external compressor speaking the frame protocol on stdin and stdout.
#[derive(Clone, Debug)]
pub struct SubprocessAdapter {
    id: String,
    compress_cmd: Vec<String>,
    decompress_cmd: Vec<String>,
}

impl SubprocessAdapter {
    pub fn new(id: impl Into<String>, compress_cmd: Vec<String>, decompress_cmd: Vec<String>) -> Result<Self, MagError> {
        let id = id.into();
        if compress_cmd.is_empty() || decompress_cmd.is_empty() {
            return Err(MagError::InvalidParameter(format!(
                "adapter `{id}` needs both a compress and a decompress command"
            )));
        }
        Ok(Self {
            id,
            compress_cmd,
            decompress_cmd,
        })
    }

    fn run(&self, cmd: &[String], input: &BitString) -> Result<BitString, MagError> {
        let fail = |message: String| MagError::Adapter {
            adapter: self.id.clone(),
            message,
        };
        let mut child = Command::new(&cmd[0])
            .args(&cmd[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| fail(format!("spawn {}: {e}", cmd[0])))?;
        let mut stdin = child.stdin.take().expect("piped stdin");
        let frame = encode_frame(input);
        let writer = std::thread::spawn(move || stdin.write_all(&frame));
        let mut output = Vec::new();
        child
            .stdout
            .take()
            .expect("piped stdout")
            .read_to_end(&mut output)
            .map_err(|e| fail(e.to_string()))?;
        let status = child.wait().map_err(|e| fail(e.to_string()))?;
        writer
            .join()
            .map_err(|_| fail("stdin writer panicked".into()))?
            .map_err(|e| fail(format!("write stdin: {e}")))?;
        if !status.success() {
            return Err(fail(format!("exited with {status}")));
        }
        decode_frame(&output)
    }
}

impl CompressorAdapter for SubprocessAdapter {
    fn id(&self) -> &str {
        &self.id
    }

    fn compress(&self, x: &BitString) -> Result<BitString, MagError> {
        self.run(&self.compress_cmd, x)
    }

    fn decompress(&self, y: &BitString) -> Result<BitString, MagError> {
        self.run(&self.decompress_cmd, y)
    }
}
