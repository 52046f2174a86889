//! Fock-state serialization: a mode-set header followed by one record per
//! occupation tuple with the complex amplitude, in text and binary forms.

use std::io::{BufRead, BufReader, Read, Write};
use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::basis::{FockBasis, FockState};
use super::modes::{Mode, ModeSet};
use crate::error::{Error, Result};
use crate::momentum::Helicity;

const TEXT_HEADER: &str = "# photonq fock state v1";
const BINARY_MAGIC: &[u8; 4] = b"PQFK";
const BINARY_VERSION: u32 = 1;

pub fn write_fock_text<W: Write>(w: &mut W, state: &FockState) -> Result<()> {
    writeln!(w, "{TEXT_HEADER}")?;
    writeln!(w, "# n_max: {}", state.basis().n_max())?;
    writeln!(w, "# modes: kx ky kz helicity weight")?;
    for m in state.modes().modes() {
        writeln!(
            w,
            "# mode: {:e} {:e} {:e} {} {:e}",
            m.k[0],
            m.k[1],
            m.k[2],
            match m.helicity {
                Helicity::Plus => "+1",
                Helicity::Minus => "-1",
            },
            m.weight
        )?;
    }
    writeln!(w, "# columns: occupation.. re im")?;
    for (i, amp) in state.amplitudes().iter().enumerate() {
        let occ = state.basis().occupation(i);
        for n in occ {
            write!(w, "{n} ")?;
        }
        writeln!(w, "{:e} {:e}", amp.re, amp.im)?;
    }
    Ok(())
}

pub fn read_fock_text<R: Read>(r: R) -> Result<FockState> {
    let reader = BufReader::new(r);
    let mut n_max: Option<u32> = None;
    let mut modes: Vec<Mode> = Vec::new();
    let mut rows: Vec<(Vec<u32>, C64)> = Vec::new();
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if lineno == 0 {
            if t != TEXT_HEADER {
                return Err(Error::Format(format!("unexpected header '{t}'")));
            }
            continue;
        }
        if let Some(rest) = t.strip_prefix("# n_max:") {
            n_max = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| Error::Format("bad n_max".into()))?,
            );
            continue;
        }
        if let Some(rest) = t.strip_prefix("# mode:") {
            let cols: Vec<&str> = rest.split_whitespace().collect();
            if cols.len() != 5 {
                return Err(Error::Format("mode line needs 5 columns".into()));
            }
            let parse = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::Format(format!("bad number '{s}'")))
            };
            let helicity = match cols[3] {
                "+1" => Helicity::Plus,
                "-1" => Helicity::Minus,
                other => return Err(Error::Format(format!("bad helicity '{other}'"))),
            };
            modes.push(Mode {
                k: [parse(cols[0])?, parse(cols[1])?, parse(cols[2])?],
                helicity,
                weight: parse(cols[4])?,
            });
            continue;
        }
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = t.split_whitespace().collect();
        if cols.len() != modes.len() + 2 {
            return Err(Error::Format(format!(
                "amplitude row needs {} columns, got {}",
                modes.len() + 2,
                cols.len()
            )));
        }
        let occ: Vec<u32> = cols[..modes.len()]
            .iter()
            .map(|s| s.parse().map_err(|_| Error::Format("bad occupation".into())))
            .collect::<Result<_>>()?;
        let re: f64 = cols[modes.len()]
            .parse()
            .map_err(|_| Error::Format("bad amplitude".into()))?;
        let im: f64 = cols[modes.len() + 1]
            .parse()
            .map_err(|_| Error::Format("bad amplitude".into()))?;
        rows.push((occ, C64::new(re, im)));
    }
    assemble(n_max, modes, rows)
}

fn assemble(n_max: Option<u32>, modes: Vec<Mode>, rows: Vec<(Vec<u32>, C64)>) -> Result<FockState> {
    let n_max = n_max.ok_or_else(|| Error::Format("missing n_max header".into()))?;
    let mode_set = Arc::new(ModeSet::new(modes)?);
    let basis = Arc::new(FockBasis::new(mode_set.len(), n_max));
    if rows.len() != basis.dim() {
        return Err(Error::Format(format!(
            "expected {} amplitude rows, got {}",
            basis.dim(),
            rows.len()
        )));
    }
    let mut amplitudes = vec![C64::ZERO; basis.dim()];
    for (occ, amp) in rows {
        let idx = basis
            .position(&occ)
            .ok_or_else(|| Error::Format(format!("occupation {occ:?} outside the basis")))?;
        amplitudes[idx] = amp;
    }
    FockState::new(basis, mode_set, amplitudes)
}

pub fn write_fock_binary<W: Write>(w: &mut W, state: &FockState) -> Result<()> {
    let mut buf = Vec::new();
    buf.extend_from_slice(BINARY_MAGIC);
    buf.extend_from_slice(&BINARY_VERSION.to_le_bytes());
    buf.extend_from_slice(&state.basis().n_max().to_le_bytes());
    buf.extend_from_slice(&(state.modes().len() as u32).to_le_bytes());
    for m in state.modes().modes() {
        for c in m.k {
            buf.extend_from_slice(&c.to_le_bytes());
        }
        buf.push(match m.helicity {
            Helicity::Plus => 1,
            Helicity::Minus => 0,
        });
        buf.extend_from_slice(&m.weight.to_le_bytes());
    }
    buf.extend_from_slice(&(state.amplitudes().len() as u64).to_le_bytes());
    for (i, amp) in state.amplitudes().iter().enumerate() {
        for n in state.basis().occupation(i) {
            buf.extend_from_slice(&n.to_le_bytes());
        }
        buf.extend_from_slice(&amp.re.to_le_bytes());
        buf.extend_from_slice(&amp.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn read_fock_binary<R: Read>(mut r: R) -> Result<FockState> {
    let mut data = Vec::new();
    r.read_to_end(&mut data)?;
    let mut pos = 0usize;
    let mut take = |n: usize| -> Result<&[u8]> {
        if pos + n > data.len() {
            return Err(Error::Format("unexpected end of fock state data".into()));
        }
        let s = &data[pos..pos + n];
        pos += n;
        Ok(s)
    };
    if take(4)? != BINARY_MAGIC {
        return Err(Error::Format("bad magic (expected PQFK)".into()));
    }
    let version = u32::from_le_bytes(take(4)?.try_into().unwrap());
    if version != BINARY_VERSION {
        return Err(Error::Format(format!("unsupported fock version {version}")));
    }
    let n_max = u32::from_le_bytes(take(4)?.try_into().unwrap());
    let n_modes = u32::from_le_bytes(take(4)?.try_into().unwrap()) as usize;
    let mut modes = Vec::with_capacity(n_modes);
    for _ in 0..n_modes {
        let mut k = [0.0; 3];
        for c in &mut k {
            *c = f64::from_le_bytes(take(8)?.try_into().unwrap());
        }
        let helicity = if take(1)?[0] == 1 {
            Helicity::Plus
        } else {
            Helicity::Minus
        };
        let weight = f64::from_le_bytes(take(8)?.try_into().unwrap());
        modes.push(Mode {
            k,
            helicity,
            weight,
        });
    }
    let count = u64::from_le_bytes(take(8)?.try_into().unwrap()) as usize;
    let mut rows = Vec::with_capacity(count);
    for _ in 0..count {
        let mut occ = Vec::with_capacity(n_modes);
        for _ in 0..n_modes {
            occ.push(u32::from_le_bytes(take(4)?.try_into().unwrap()));
        }
        let re = f64::from_le_bytes(take(8)?.try_into().unwrap());
        let im = f64::from_le_bytes(take(8)?.try_into().unwrap());
        rows.push((occ, C64::new(re, im)));
    }
    assemble(Some(n_max), modes, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::coherent_state;
    use crate::momentum::MomentumGrid;

    fn sample() -> FockState {
        let grid = MomentumGrid::cartesian_box([2.0, 0.5, 1.0], [1.5; 3], [4; 3])
            .unwrap()
            .into_shared();
        let modes = Arc::new(
            ModeSet::from_grid(&grid, &[(7, Helicity::Plus), (22, Helicity::Minus)]).unwrap(),
        );
        let raw = [C64::new(0.8, 0.3), C64::new(-0.2, 0.6)];
        let n2 = modes.amplitude_norm_sq(&raw);
        let amps: Vec<C64> = raw.iter().map(|a| a / n2.sqrt()).collect();
        let basis = Arc::new(FockBasis::new(2, 12));
        coherent_state(basis, modes, &amps, 0.8, 1e-6).unwrap()
    }

    #[test]
    fn text_round_trip() {
        let s = sample();
        let mut buf = Vec::new();
        write_fock_text(&mut buf, &s).unwrap();
        let back = read_fock_text(&buf[..]).unwrap();
        assert_eq!(back.basis().n_max(), s.basis().n_max());
        assert_eq!(back.modes().modes(), s.modes().modes());
        for (a, b) in s.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn binary_round_trip() {
        let s = sample();
        let mut buf = Vec::new();
        write_fock_binary(&mut buf, &s).unwrap();
        let back = read_fock_binary(&buf[..]).unwrap();
        assert_eq!(back.modes().modes(), s.modes().modes());
        assert_eq!(back.amplitudes(), s.amplitudes());
    }

    #[test]
    fn garbage_rejected() {
        assert!(read_fock_text(&b"nope\n"[..]).is_err());
        assert!(read_fock_binary(&b"PQXX"[..]).is_err());
    }
}
