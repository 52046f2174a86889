//! Field snapshot formats: a versioned binary layout (grid header followed by
//! row-major complex triples) and a plain-text export for plotting.

use std::io::{BufRead, BufReader, Read, Write};

use num_complex::Complex64 as C64;

use super::rs::RSField;
use super::spatial::SpatialGrid;
use crate::error::{Error, Result};

const BINARY_MAGIC: &[u8; 4] = b"PQFS";
const BINARY_VERSION: u32 = 1;
const TEXT_HEADER: &str = "# photonq field snapshot v1";

/// Versioned binary snapshot: magic, version, origin, spacing, extents,
/// periodic flag, time stamp, then node records (z fastest) of six f64s
/// (Re/Im of the three components).
pub fn write_field_binary<W: Write>(w: &mut W, field: &RSField) -> Result<()> {
    let g = field.grid();
    let mut buf = Vec::with_capacity(64 + field.values().len() * 48);
    buf.extend_from_slice(BINARY_MAGIC);
    buf.extend_from_slice(&BINARY_VERSION.to_le_bytes());
    for a in 0..3 {
        buf.extend_from_slice(&g.origin[a].to_le_bytes());
    }
    for a in 0..3 {
        buf.extend_from_slice(&g.spacing[a].to_le_bytes());
    }
    for a in 0..3 {
        buf.extend_from_slice(&(g.n[a] as u64).to_le_bytes());
    }
    buf.push(g.periodic as u8);
    buf.extend_from_slice(&field.time().to_le_bytes());
    for v in field.values() {
        for c in v {
            buf.extend_from_slice(&c.re.to_le_bytes());
            buf.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_field_binary<R: Read>(mut r: R) -> Result<RSField> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    let mut pos = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        if pos + n > data.len() {
            return Err(Error::Format("unexpected end of field snapshot".into()));
        }
        let s = &data[pos..pos + n];
        pos += n;
        Ok(s)
    };
    if take(4)? != BINARY_MAGIC {
        return Err(Error::Format("bad magic (expected PQFS)".into()));
    }
    let version = u32::from_le_bytes(take(4)?.try_into().unwrap());
    if version != BINARY_VERSION {
        return Err(Error::Format(format!("unsupported field version {version}")));
    }
    let mut origin = [0.0; 3];
    for o in &mut origin {
        *o = f64::from_le_bytes(take(8)?.try_into().unwrap());
    }
    let mut spacing = [0.0; 3];
    for s in &mut spacing {
        *s = f64::from_le_bytes(take(8)?.try_into().unwrap());
    }
    let mut n = [0usize; 3];
    for v in &mut n {
        *v = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
    }
    let periodic = take(1)?[0] != 0;
    let time = f64::from_le_bytes(take(8)?.try_into().unwrap());
    let grid = SpatialGrid::new(origin, spacing, n, periodic)?;
    let count = grid.node_count();
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let mut v = [C64::ZERO; 3];
        for c in &mut v {
            let re = f64::from_le_bytes(take(8)?.try_into().unwrap());
            let im = f64::from_le_bytes(take(8)?.try_into().unwrap());
            *c = C64::new(re, im);
        }
        values.push(v);
    }
    RSField::new(grid, values, time)
}

/// Plain-text export: one row per node with
/// x y z re_fx im_fx re_fy im_fy re_fz im_fz.
pub fn write_field_text<W: Write>(w: &mut W, field: &RSField) -> Result<()> {
    let g = field.grid();
    writeln!(w, "{TEXT_HEADER}")?;
    writeln!(
        w,
        "# grid: n={},{},{} spacing={:e},{:e},{:e} origin={:e},{:e},{:e} periodic={} time={:e}",
        g.n[0],
        g.n[1],
        g.n[2],
        g.spacing[0],
        g.spacing[1],
        g.spacing[2],
        g.origin[0],
        g.origin[1],
        g.origin[2],
        g.periodic,
        field.time()
    )?;
    writeln!(w, "# columns: x y z re_fx im_fx re_fy im_fy re_fz im_fz")?;
    for (i, v) in field.values().iter().enumerate() {
        let [ix, iy, iz] = g.coords(i);
        let r = g.position(ix, iy, iz);
        writeln!(
            w,
            "{:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e}",
            r[0], r[1], r[2], v[0].re, v[0].im, v[1].re, v[1].im, v[2].re, v[2].im
        )?;
    }
    Ok(())
}

/// Read back the text export.
pub fn read_field_text<R: Read>(r: R) -> Result<RSField> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty field file".into()))??;
    if header.trim() != TEXT_HEADER {
        return Err(Error::Format(format!("unexpected header '{header}'")));
    }
    let meta = lines
        .next()
        .ok_or_else(|| Error::Format("missing grid line".into()))??;
    let meta = meta
        .trim()
        .strip_prefix("# grid: ")
        .ok_or_else(|| Error::Format("missing '# grid:' line".into()))?
        .to_string();
    let mut n = [0usize; 3];
    let mut spacing = [0.0f64; 3];
    let mut origin = [0.0f64; 3];
    let mut periodic = true;
    let mut time = 0.0f64;
    for token in meta.split_whitespace() {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| Error::Format(format!("bad metadata token '{token}'")))?;
        match key {
            "n" => {
                let parts: Vec<usize> = value
                    .split(',')
                    .map(|p| p.parse().map_err(|_| Error::Format("bad n".into())))
                    .collect::<Result<_>>()?;
                n = [parts[0], parts[1], parts[2]];
            }
            "spacing" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|p| p.parse().map_err(|_| Error::Format("bad spacing".into())))
                    .collect::<Result<_>>()?;
                spacing = [parts[0], parts[1], parts[2]];
            }
            "origin" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|p| p.parse().map_err(|_| Error::Format("bad origin".into())))
                    .collect::<Result<_>>()?;
                origin = [parts[0], parts[1], parts[2]];
            }
            "periodic" => periodic = value == "true",
            "time" => {
                time = value
                    .parse()
                    .map_err(|_| Error::Format("bad time".into()))?;
            }
            _ => return Err(Error::Format(format!("unknown metadata key '{key}'"))),
        }
    }
    let grid = SpatialGrid::new(origin, spacing, n, periodic)?;
    let mut values = vec![[C64::ZERO; 3]; grid.node_count()];
    let mut idx = 0usize;
    for line in lines {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let cols: Vec<f64> = t
            .split_whitespace()
            .map(|s| s.parse::<f64>().map_err(|_| Error::Format(format!("bad number '{s}'"))))
            .collect::<Result<_>>()?;
        if cols.len() != 9 {
            return Err(Error::Format(format!("row {idx}: expected 9 columns")));
        }
        if idx >= values.len() {
            return Err(Error::Format("more rows than grid nodes".into()));
        }
        values[idx] = [
            C64::new(cols[3], cols[4]),
            C64::new(cols[5], cols[6]),
            C64::new(cols[7], cols[8]),
        ];
        idx += 1;
    }
    if idx != grid.node_count() {
        return Err(Error::Format(format!(
            "expected {} rows, got {idx}",
            grid.node_count()
        )));
    }
    RSField::new(grid, values, time)
}
