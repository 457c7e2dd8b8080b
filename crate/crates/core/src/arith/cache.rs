//! Binary cache of sieve segments.
//!
//! Layout, little-endian:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "NSIV"
//! 4       4     format version (u32, currently 1)
//! 8       1     kind (0 = mobius, 1 = liouville)
//! 9       7     zero padding
//! 16      8     lo (u64)
//! 24      8     hi (u64)
//! 32      hi-lo values, one signed byte each
//! ```
//!
//! A cache is only an optimization: [`cached_segment`] spot-checks loaded
//! files against trial division and recomputes on any mismatch.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use super::sieve::{trial_liouville, trial_mobius, Sieve, SieveKind, SieveSegment};
use crate::{Error, Result};

const MAGIC: &[u8; 4] = b"NSIV";
const VERSION: u32 = 1;
const SPOT_CHECKS: u64 = 64;

pub fn write_segment<W: Write>(mut w: W, seg: &SieveSegment) -> Result<()> {
    let mut header = [0u8; 32];
    header[..4].copy_from_slice(MAGIC);
    header[4..8].copy_from_slice(&VERSION.to_le_bytes());
    header[8] = match seg.kind() {
        SieveKind::Mobius => 0,
        SieveKind::Liouville => 1,
    };
    header[16..24].copy_from_slice(&seg.lo().to_le_bytes());
    header[24..32].copy_from_slice(&seg.hi().to_le_bytes());
    w.write_all(&header)?;
    let bytes: Vec<u8> = seg.values().iter().map(|&v| v as u8).collect();
    w.write_all(&bytes)?;
    Ok(())
}

pub fn read_segment<R: Read>(mut r: R) -> Result<SieveSegment> {
    let mut header = [0u8; 32];
    r.read_exact(&mut header)?;
    if &header[..4] != MAGIC {
        return Err(Error::Parse("not a sieve cache file".into()));
    }
    let version = u32::from_le_bytes(header[4..8].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(Error::Parse(format!("unsupported sieve cache version {version}")));
    }
    let kind = match header[8] {
        0 => SieveKind::Mobius,
        1 => SieveKind::Liouville,
        k => return Err(Error::Parse(format!("unknown sieve kind byte {k}"))),
    };
    let lo = u64::from_le_bytes(header[16..24].try_into().expect("8 bytes"));
    let hi = u64::from_le_bytes(header[24..32].try_into().expect("8 bytes"));
    if lo >= hi {
        return Err(Error::Parse(format!("bad cached range [{lo}, {hi})")));
    }
    let mut bytes = vec![0u8; (hi - lo) as usize];
    r.read_exact(&mut bytes)?;
    let values = bytes.into_iter().map(|b| b as i8).collect();
    Ok(SieveSegment::from_parts(kind, lo, values))
}

fn spot_check(seg: &SieveSegment) -> bool {
    let len = seg.len() as u64;
    let step = (len / SPOT_CHECKS).max(1);
    (0..len).step_by(step as usize).chain([len - 1]).all(|i| {
        let n = seg.lo() + i;
        let want = match seg.kind() {
            SieveKind::Mobius => trial_mobius(n),
            SieveKind::Liouville => trial_liouville(n),
        };
        seg.get(n) == want
    })
}

/// Loads `[lo, hi)` from `path` when the file holds exactly that segment and
/// passes the spot checks; otherwise sieves and rewrites the file.
pub fn cached_segment(sieve: &Sieve, path: &Path, kind: SieveKind, lo: u64, hi: u64) -> Result<SieveSegment> {
    sieve.check_range(lo, hi)?;
    if let Ok(f) = fs::File::open(path) {
        if let Ok(seg) = read_segment(std::io::BufReader::new(f)) {
            if seg.kind() == kind && seg.lo() == lo && seg.hi() == hi && spot_check(&seg) {
                return Ok(seg);
            }
        }
    }
    let seg = sieve.segment(kind, lo, hi)?;
    let mut f = std::io::BufWriter::new(fs::File::create(path)?);
    write_segment(&mut f, &seg)?;
    f.flush()?;
    Ok(seg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mu.bin");
        let sieve = Sieve::default();
        let seg = cached_segment(&sieve, &path, SieveKind::Mobius, 1000, 5000).unwrap();
        let raw = fs::read(&path).unwrap();
        assert_eq!(&raw[..4], b"NSIV");
        assert_eq!(raw.len(), 32 + 4000);
        assert_eq!(read_segment(&raw[..]).unwrap(), seg);

        // flip every value: spot checks catch it and the file is rebuilt
        let mut bad = raw.clone();
        for b in &mut bad[32..] {
            *b = (-(*b as i8)) as u8;
        }
        fs::write(&path, &bad).unwrap();
        assert_eq!(cached_segment(&sieve, &path, SieveKind::Mobius, 1000, 5000).unwrap(), seg);
        assert_eq!(fs::read(&path).unwrap(), raw);
        assert!(read_segment(&b"XXXX"[..]).is_err());
    }
}
