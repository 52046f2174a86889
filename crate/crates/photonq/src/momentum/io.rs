//! Wavefunction serialization: a self-describing text table and a compact
//! binary layout, both carrying the grid recipe plus per-node records
//! (kx, ky, kz, weight, Re f+, Im f+, Re f-, Im f-) in exactly that order.

use std::io::{BufRead, BufReader, Read, Write};
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::grid::{GridKind, MomentumGrid};
use super::state::PhotonWavefunctionK;
use crate::error::{Error, Result};

const TEXT_HEADER: &str = "# photonq wavefunction v1";
const BINARY_MAGIC: &[u8; 4] = b"PQWF";
const BINARY_VERSION: u32 = 1;

fn kind_to_metadata(kind: &GridKind) -> String {
    match kind {
        GridKind::CartesianBox { n, spacing, origin } => format!(
            "cartesian-box n={},{},{} spacing={:e},{:e},{:e} origin={:e},{:e},{:e}",
            n[0], n[1], n[2], spacing[0], spacing[1], spacing[2], origin[0], origin[1], origin[2]
        ),
        GridKind::SphericalProduct {
            n_radial,
            n_polar,
            n_azimuth,
            k_min,
            k_max,
        } => format!(
            "spherical-product n={},{},{} k_min={:e} k_max={:e}",
            n_radial, n_polar, n_azimuth, k_min, k_max
        ),
    }
}

fn parse_triplet<T: std::str::FromStr>(s: &str) -> Result<[T; 3]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Format(format!("expected three comma-separated values, got '{s}'")));
    }
    let mut out = Vec::with_capacity(3);
    for p in parts {
        out.push(
            p.trim()
                .parse::<T>()
                .map_err(|_| Error::Format(format!("cannot parse '{p}'")))?,
        );
    }
    Ok([
        out.remove(0),
        out.remove(0),
        out.remove(0),
    ])
}

fn field_value<'a>(token: &'a str, key: &str) -> Result<&'a str> {
    token
        .strip_prefix(key)
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected '{key}=...', got '{token}'")))
}

fn kind_from_metadata(meta: &str) -> Result<GridKind> {
    let mut tokens = meta.split_whitespace();
    let family = tokens
        .next()
        .ok_or_else(|| Error::Format("empty grid metadata".into()))?;
    match family {
        "cartesian-box" => {
            let n: [usize; 3] = parse_triplet(field_value(
                tokens.next().ok_or_else(|| Error::Format("missing n".into()))?,
                "n",
            )?)?;
            let spacing: [f64; 3] = parse_triplet(field_value(
                tokens
                    .next()
                    .ok_or_else(|| Error::Format("missing spacing".into()))?,
                "spacing",
            )?)?;
            let origin: [f64; 3] = parse_triplet(field_value(
                tokens
                    .next()
                    .ok_or_else(|| Error::Format("missing origin".into()))?,
                "origin",
            )?)?;
            Ok(GridKind::CartesianBox { n, spacing, origin })
        }
        "spherical-product" => {
            let n: [usize; 3] = parse_triplet(field_value(
                tokens.next().ok_or_else(|| Error::Format("missing n".into()))?,
                "n",
            )?)?;
            let k_min: f64 = field_value(
                tokens
                    .next()
                    .ok_or_else(|| Error::Format("missing k_min".into()))?,
                "k_min",
            )?
            .parse()
            .map_err(|_| Error::Format("bad k_min".into()))?;
            let k_max: f64 = field_value(
                tokens
                    .next()
                    .ok_or_else(|| Error::Format("missing k_max".into()))?,
                "k_max",
            )?
            .parse()
            .map_err(|_| Error::Format("bad k_max".into()))?;
            Ok(GridKind::SphericalProduct {
                n_radial: n[0],
                n_polar: n[1],
                n_azimuth: n[2],
                k_min,
                k_max,
            })
        }
        other => Err(Error::Format(format!("unknown grid family '{other}'"))),
    }
}

fn rebuild_grid(kind: &GridKind) -> Result<MomentumGrid> {
    match kind {
        GridKind::CartesianBox { n, spacing, origin } => {
            MomentumGrid::cartesian_lattice(*n, *spacing, *origin)
        }
        GridKind::SphericalProduct {
            n_radial,
            n_polar,
            n_azimuth,
            k_min,
            k_max,
        } => MomentumGrid::spherical_product(*k_min, *k_max, *n_radial, *n_polar, *n_azimuth),
    }
}

/// Write the human-readable delimited form.
pub fn write_state_text<W: Write>(w: &mut W, f: &PhotonWavefunctionK) -> Result<()> {
    writeln!(w, "{TEXT_HEADER}")?;
    writeln!(w, "# grid: {}", kind_to_metadata(f.grid().kind()))?;
    writeln!(w, "# columns: kx ky kz weight re_f_plus im_f_plus re_f_minus im_f_minus")?;
    for i in 0..f.grid().len() {
        let k = f.grid().node(i);
        let (p, m) = (f.f_plus()[i], f.f_minus()[i]);
        writeln!(
            w,
            "{:e} {:e} {:e} {:e} {:e} {:e} {:e} {:e}",
            k[0],
            k[1],
            k[2],
            f.grid().weight(i),
            p.re,
            p.im,
            m.re,
            m.im
        )?;
    }
    Ok(())
}

/// Read the text form back; the grid is rebuilt from its metadata and the
/// stored nodes are cross-checked against it.
pub fn read_state_text<R: Read>(r: R) -> Result<PhotonWavefunctionK> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty file".into()))??;
    if header.trim() != TEXT_HEADER {
        return Err(Error::Format(format!("unexpected header '{header}'")));
    }
    let grid_line = lines
        .next()
        .ok_or_else(|| Error::Format("missing grid line".into()))??;
    let meta = grid_line
        .trim()
        .strip_prefix("# grid: ")
        .ok_or_else(|| Error::Format("missing '# grid:' line".into()))?;
    let kind = kind_from_metadata(meta)?;
    let grid = Arc::new(rebuild_grid(&kind)?);

    let mut f_plus = Vec::with_capacity(grid.len());
    let mut f_minus = Vec::with_capacity(grid.len());
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
        if cols.len() != 8 {
            return Err(Error::Format(format!(
                "row {idx}: expected 8 columns, got {}",
                cols.len()
            )));
        }
        if idx >= grid.len() {
            return Err(Error::Format("more rows than grid nodes".into()));
        }
        let k = grid.node(idx);
        for a in 0..3 {
            let scale = k[a].abs().max(1.0);
            if (cols[a] - k[a]).abs() > 1e-9 * scale {
                return Err(Error::Format(format!(
                    "row {idx}: node {:?} disagrees with rebuilt grid {:?}",
                    &cols[0..3],
                    k
                )));
            }
        }
        f_plus.push(C64::new(cols[4], cols[5]));
        f_minus.push(C64::new(cols[6], cols[7]));
        idx += 1;
    }
    if idx != grid.len() {
        return Err(Error::Format(format!(
            "expected {} rows, got {idx}",
            grid.len()
        )));
    }
    PhotonWavefunctionK::new(grid, f_plus, f_minus)
}

fn push_f64(buf: &mut Vec<u8>, v: f64) {
    buf.extend_from_slice(&v.to_le_bytes());
}

/// Write the compact binary form with a version header.
pub fn write_state_binary<W: Write>(w: &mut W, f: &PhotonWavefunctionK) -> Result<()> {
    let mut buf = Vec::new();
    buf.extend_from_slice(BINARY_MAGIC);
    buf.extend_from_slice(&BINARY_VERSION.to_le_bytes());
    let meta = kind_to_metadata(f.grid().kind());
    buf.extend_from_slice(&(meta.len() as u32).to_le_bytes());
    buf.extend_from_slice(meta.as_bytes());
    buf.extend_from_slice(&(f.grid().len() as u64).to_le_bytes());
    for i in 0..f.grid().len() {
        let k = f.grid().node(i);
        push_f64(&mut buf, k[0]);
        push_f64(&mut buf, k[1]);
        push_f64(&mut buf, k[2]);
        push_f64(&mut buf, f.grid().weight(i));
        push_f64(&mut buf, f.f_plus()[i].re);
        push_f64(&mut buf, f.f_plus()[i].im);
        push_f64(&mut buf, f.f_minus()[i].re);
        push_f64(&mut buf, f.f_minus()[i].im);
    }
    w.write_all(&buf)?;
    Ok(())
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.data.len() {
            return Err(Error::Format("unexpected end of binary data".into()));
        }
        let s = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

/// Read the binary form.
pub fn read_state_binary<R: Read>(mut r: R) -> Result<PhotonWavefunctionK> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    let mut c = Cursor { data: &data, pos: 0 };
    if c.take(4)? != BINARY_MAGIC {
        return Err(Error::Format("bad magic (expected PQWF)".into()));
    }
    let version = c.u32()?;
    if version != BINARY_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let meta_len = c.u32()? as usize;
    let meta = std::str::from_utf8(c.take(meta_len)?)
        .map_err(|_| Error::Format("metadata is not utf-8".into()))?
        .to_string();
    let kind = kind_from_metadata(&meta)?;
    let grid = Arc::new(rebuild_grid(&kind)?);
    let count = c.u64()? as usize;
    if count != grid.len() {
        return Err(Error::Format(format!(
            "node count {count} does not match rebuilt grid ({})",
            grid.len()
        )));
    }
    let mut f_plus = Vec::with_capacity(count);
    let mut f_minus = Vec::with_capacity(count);
    for i in 0..count {
        let kx = c.f64()?;
        let ky = c.f64()?;
        let kz = c.f64()?;
        let _w = c.f64()?;
        let k = grid.node(i);
        for (stored, built) in [kx, ky, kz].iter().zip(k.iter()) {
            if (stored - built).abs() > 1e-9 * built.abs().max(1.0) {
                return Err(Error::Format(format!("node {i} disagrees with rebuilt grid")));
            }
        }
        let pre = c.f64()?;
        let pim = c.f64()?;
        let mre = c.f64()?;
        let mim = c.f64()?;
        f_plus.push(C64::new(pre, pim));
        f_minus.push(C64::new(mre, mim));
    }
    PhotonWavefunctionK::new(grid, f_plus, f_minus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentum::make_gaussian_state;

    fn sample_state() -> PhotonWavefunctionK {
        let g = MomentumGrid::cartesian_box([2.0, -1.0, 1.5], [1.5; 3], [6, 5, 4])
            .unwrap()
            .into_shared();
        make_gaussian_state(g, [2.0, -1.0, 1.5], 0.5, C64::new(0.8, -0.1), C64::new(0.0, 0.4))
            .unwrap()
    }

    #[test]
    fn text_round_trip() {
        let f = sample_state();
        let mut buf = Vec::new();
        write_state_text(&mut buf, &f).unwrap();
        let back = read_state_text(&buf[..]).unwrap();
        assert_eq!(back.grid().kind(), f.grid().kind());
        for i in 0..f.grid().len() {
            assert!((back.f_plus()[i] - f.f_plus()[i]).norm() < 1e-15);
            assert!((back.f_minus()[i] - f.f_minus()[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn binary_round_trip_spherical() {
        let g = MomentumGrid::spherical_product(0.1, 5.0, 6, 4, 5)
            .unwrap()
            .into_shared();
        let f = make_gaussian_state(g, [0.0, 0.0, 2.0], 0.8, C64::ONE, C64::new(0.3, 0.3)).unwrap();
        let mut buf = Vec::new();
        write_state_binary(&mut buf, &f).unwrap();
        let back = read_state_binary(&buf[..]).unwrap();
        assert_eq!(back.grid().kind(), f.grid().kind());
        for i in 0..f.grid().len() {
            assert_eq!(back.f_plus()[i], f.f_plus()[i]);
            assert_eq!(back.f_minus()[i], f.f_minus()[i]);
        }
    }

    #[test]
    fn text_round_trip_fft_lattice() {
        // the FFT lattice has an excluded origin node; the rebuilt grid must
        // reproduce the hole exactly
        let g = MomentumGrid::cartesian_fft([6, 4, 4], [0.7, 0.5, 0.5])
            .unwrap()
            .into_shared();
        let f = make_gaussian_state(g, [1.4, 0.5, 0.5], 0.4, C64::ONE, C64::new(0.1, 0.2))
            .unwrap();
        let mut buf = Vec::new();
        write_state_text(&mut buf, &f).unwrap();
        let back = read_state_text(&buf[..]).unwrap();
        assert_eq!(back.grid().len(), f.grid().len());
        for i in 0..f.grid().len() {
            assert!((back.f_plus()[i] - f.f_plus()[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn corrupt_header_rejected() {
        assert!(read_state_text(&b"bogus\n"[..]).is_err());
        assert!(read_state_binary(&b"XXXX0000"[..]).is_err());
    }
}
