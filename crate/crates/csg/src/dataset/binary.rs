//! The CSGE binary dataset format.
//!
//! Little-endian layout:
//!
//! ```text
//! "CSGE"            4 bytes magic
//! version           u32 (currently 1)
//! N                 u64 point count
//! d                 u32 dimension
//! K                 u32 class count
//! labels            N x u32
//! features          N*d x f32, row-major
//! class names       K x (u32 length + UTF-8 bytes)
//! ```
//!
//! `save_binary(load_binary(p))` is byte-identical to `p`.

use std::path::Path;

use ndarray::Array2;

use crate::error::{Error, Result};

use super::EmbeddedDataset;

const MAGIC: &[u8; 4] = b"CSGE";
const VERSION: u32 = 1;

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, context: &str) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::Truncated {
                context: context.to_string(),
            });
        }
        let slice = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u32(&mut self, context: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4, context)?.try_into().unwrap(),
        ))
    }

    fn u64(&mut self, context: &str) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8, context)?.try_into().unwrap(),
        ))
    }

    fn f32(&mut self, context: &str) -> Result<f32> {
        Ok(f32::from_le_bytes(
            self.take(4, context)?.try_into().unwrap(),
        ))
    }
}

pub fn load_binary(path: &Path) -> Result<EmbeddedDataset> {
    let buf = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let mut r = Reader { buf: &buf, pos: 0 };

    if r.take(4, "magic")? != MAGIC {
        return Err(Error::BadMagic);
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(Error::UnsupportedVersion {
            found: version,
            supported: VERSION,
        });
    }
    let n = usize::try_from(r.u64("point count")?)
        .map_err(|_| Error::MalformedBinary("point count exceeds usize".into()))?;
    let d = r.u32("dimension")? as usize;
    let k = r.u32("class count")? as usize;

    // Check the fixed-size payload against the header before allocating
    // anything sized by it; class names are variable and checked as read.
    let need = n
        .checked_mul(4)
        .zip(n.checked_mul(d).and_then(|nd| nd.checked_mul(4)))
        .zip(k.checked_mul(4))
        .and_then(|((l, f), c)| l.checked_add(f)?.checked_add(c))
        .ok_or_else(|| Error::MalformedBinary("header sizes overflow".into()))?;
    if buf.len().saturating_sub(r.pos) < need {
        return Err(Error::Truncated {
            context: "payload (header claims more than the file holds)".into(),
        });
    }

    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let label = r.u32(&format!("label {i}"))? as usize;
        if label >= k {
            return Err(Error::LabelOutOfRange { label, classes: k });
        }
        labels.push(label);
    }

    let mut coords = Vec::with_capacity(n * d);
    for i in 0..n {
        for j in 0..d {
            coords.push(f64::from(r.f32(&format!("feature ({i}, {j})"))?));
        }
    }

    let mut class_names = Vec::with_capacity(k);
    for c in 0..k {
        let len = r.u32(&format!("class name {c} length"))? as usize;
        let bytes = r.take(len, &format!("class name {c}"))?;
        let name = std::str::from_utf8(bytes)
            .map_err(|_| Error::MalformedBinary(format!("class name {c} is not UTF-8")))?;
        class_names.push(name.to_string());
    }

    if r.pos != buf.len() {
        return Err(Error::MalformedBinary(format!(
            "{} trailing bytes after class names",
            buf.len() - r.pos
        )));
    }

    let points =
        Array2::from_shape_vec((n, d), coords).map_err(|e| Error::ShapeMismatch(e.to_string()))?;
    EmbeddedDataset::new(points, labels, class_names)
}

pub fn save_binary(ds: &EmbeddedDataset, path: &Path) -> Result<()> {
    let mut buf = Vec::with_capacity(24 + ds.n_points() * (4 + ds.dim() * 4));
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(ds.n_points() as u64).to_le_bytes());
    buf.extend_from_slice(&(ds.dim() as u32).to_le_bytes());
    buf.extend_from_slice(&(ds.n_classes() as u32).to_le_bytes());
    for &label in ds.labels() {
        buf.extend_from_slice(&(label as u32).to_le_bytes());
    }
    for row in 0..ds.n_points() {
        for &v in ds.point(row) {
            buf.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    for name in ds.class_names() {
        buf.extend_from_slice(&(name.len() as u32).to_le_bytes());
        buf.extend_from_slice(name.as_bytes());
    }
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}
