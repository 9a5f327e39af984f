//! Binary persistence for sets of functions.
//!
//! Layout, all integers little-endian:
//!
//! | offset | size | field                        |
//! |--------|------|------------------------------|
//! | 0      | 4    | magic `MRSF`                 |
//! | 4      | 2    | format version (1)           |
//! | 6      | 1    | width `n`                    |
//! | 7      | 1    | reserved, zero               |
//! | 8      | 8    | record count                 |
//! | 16     | ...  | records, `2^n` bytes each    |
//!
//! Byte `i` of a record is the image of code `i`. Records are strictly
//! ascending in [`RsFunction`] order, which for `n <= 4` is the order of
//! their [`FunctionCode`](crate::FunctionCode)s.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::function::check_width;
use crate::{Error, Result, RsFunction};

pub const MAGIC: [u8; 4] = *b"MRSF";
pub const VERSION: u16 = 1;
pub const HEADER_LEN: usize = 16;

/// Encodes `functions` (sorted and deduplicated first) for width `n`.
pub fn encode(n: u8, functions: &[RsFunction]) -> Result<Vec<u8>> {
    check_width(n)?;
    if let Some(f) = functions.iter().find(|f| f.n() != n) {
        return Err(Error::WidthMismatch {
            left: n,
            right: f.n(),
        });
    }
    let mut sorted = functions.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::with_capacity(HEADER_LEN + (sorted.len() << n));
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(n);
    out.push(0);
    out.extend_from_slice(&(sorted.len() as u64).to_le_bytes());
    for f in &sorted {
        out.extend_from_slice(f.images());
    }
    Ok(out)
}

/// Decodes and validates a set file, returning its width and members.
pub fn decode(bytes: &[u8]) -> Result<(u8, Vec<RsFunction>)> {
    let bad = |msg: String| Error::SetFile(msg);
    if bytes.len() < HEADER_LEN {
        return Err(bad(format!(
            "{} bytes is shorter than the header",
            bytes.len()
        )));
    }
    if bytes[..4] != MAGIC {
        return Err(bad("bad magic".into()));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let n = bytes[6];
    check_width(n)?;
    let count = u64::from_le_bytes(bytes[8..16].try_into().expect("8 bytes"));
    let record = 1usize << n;
    let body = &bytes[HEADER_LEN..];
    if (body.len() / record) as u64 != count || !body.len().is_multiple_of(record) {
        return Err(bad(format!(
            "count {count} does not match {} record bytes",
            body.len()
        )));
    }
    let functions = body
        .chunks_exact(record)
        .map(|chunk| RsFunction::new(n, chunk))
        .collect::<Result<Vec<_>>>()?;
    if functions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("records are not strictly ascending".into()));
    }
    Ok((n, functions))
}

pub fn write(writer: &mut impl Write, n: u8, functions: &[RsFunction]) -> Result<()> {
    writer.write_all(&encode(n, functions)?)?;
    Ok(())
}

pub fn read(reader: &mut impl Read) -> Result<(u8, Vec<RsFunction>)> {
    let mut bytes = Vec::new();
    reader.read_to_end(&mut bytes)?;
    decode(&bytes)
}

pub fn save(path: impl AsRef<Path>, n: u8, functions: &[RsFunction]) -> Result<()> {
    fs::write(path, encode(n, functions)?)?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<(u8, Vec<RsFunction>)> {
    decode(&fs::read(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn header_layout() {
        let f = RsFunction::new(3, &[4, 1, 5, 2, 7, 2, 4, 6]).unwrap();
        let bytes = encode(3, &[f, f]).unwrap();
        assert_eq!(&bytes[..4], b"MRSF");
        assert_eq!(&bytes[4..8], &[1, 0, 3, 0]);
        assert_eq!(&bytes[8..16], &1u64.to_le_bytes());
        assert_eq!(&bytes[16..], &[4, 1, 5, 2, 7, 2, 4, 6]);
    }

    #[test]
    fn records_sorted_by_code() {
        let a = RsFunction::new(2, &[1, 0, 0, 0]).unwrap();
        let b = RsFunction::new(2, &[0, 0, 0, 1]).unwrap();
        let bytes = encode(2, &[b, a]).unwrap();
        assert_eq!(&bytes[16..], &[1, 0, 0, 0, 0, 0, 0, 1]);
    }

    #[test]
    fn rejects_corruption() {
        let f = RsFunction::identity(3).unwrap();
        let g = RsFunction::constant(3, crate::SubsetCode(1)).unwrap();
        let good = encode(3, &[f, g]).unwrap();
        assert!(decode(&good[..10]).is_err());
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(decode(&bad).is_err());
        let mut bad = good.clone();
        bad[8] = 3;
        assert!(decode(&bad).is_err());
        let mut bad = good.clone();
        bad[16] = 8;
        assert!(matches!(decode(&bad), Err(Error::ImageOutOfRange { .. })));
        let mut swapped = good[..16].to_vec();
        swapped.extend_from_slice(&good[24..]);
        swapped.extend_from_slice(&good[16..24]);
        assert!(decode(&swapped).is_err());
        assert!(encode(4, &[f]).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(raw in prop::collection::vec(prop::collection::vec(0u8..16, 16), 0..40)) {
            let fs: Vec<RsFunction> = raw.iter().map(|v| RsFunction::new(4, v).unwrap()).collect();
            let (n, back) = decode(&encode(4, &fs).unwrap()).unwrap();
            let mut expected = fs.clone();
            expected.sort();
            expected.dedup();
            prop_assert_eq!(n, 4);
            prop_assert_eq!(back, expected);
        }
    }
}
