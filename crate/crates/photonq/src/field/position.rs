//! Position-representation photon wavefunctions: the helicity splitting of an
//! RS field into its positive/negative frequency branches and the nonlocal
//! photon-number norm with the 1/|r - r'|^2 kernel.

use num_complex::Complex64 as C64;

use super::fft::{fft3_vector, flat};
use super::polarization::polarization_vector;
use super::rs::RSField;
use crate::error::{Error, Result};

/// The pair of position-space helicity wavefunctions. Psi+ carries the
/// positive-frequency part of the field; Psi- is the complex conjugate of the
/// negative-frequency part. Both are transverse complex 3-vector fields.
#[derive(Debug, Clone)]
pub struct PositionWavefunctions {
    pub psi_plus: RSField,
    pub psi_minus: RSField,
}

/// Fraction of spectral weight allowed in the DC (k = 0) mode, which belongs
/// to neither frequency branch.
const DC_LIMIT: f64 = 1e-8;

/// Split a field into helicity branches by projecting each Fourier mode onto
/// the +/- eigenvectors of the curl operator.
pub fn helicity_split(field: &RSField) -> Result<PositionWavefunctions> {
    let grid = field.grid();
    if !grid.periodic {
        return Err(Error::InvalidParameter(
            "helicity splitting requires a periodic spatial grid".into(),
        ));
    }
    let n = grid.n;
    let total = grid.node_count() as f64;
    let mut modes = field.values().to_vec();
    fft3_vector(&mut modes, n, false);

    let mut pos = vec![[C64::ZERO; 3]; modes.len()];
    let mut neg = vec![[C64::ZERO; 3]; modes.len()];
    let mut dc_weight = 0.0;
    let mut total_weight = 0.0;
    for ix in 0..n[0] {
        for iy in 0..n[1] {
            for iz in 0..n[2] {
                let idx = flat(n, ix, iy, iz);
                let v = modes[idx];
                let w = v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr();
                total_weight += w;
                let k = grid.mode_wavevector([ix, iy, iz]);
                if k[0] == 0.0 && k[1] == 0.0 && k[2] == 0.0 {
                    dc_weight += w;
                    continue;
                }
                let e = polarization_vector(k)?;
                // a+ = e^dagger . v ; a- = (e^*)^dagger . v = e . v
                let a_plus: C64 = (0..3).map(|c| e[c].conj() * v[c]).sum();
                let a_minus: C64 = (0..3).map(|c| e[c] * v[c]).sum();
                for c in 0..3 {
                    pos[idx][c] = e[c] * a_plus;
                    neg[idx][c] = e[c].conj() * a_minus;
                }
            }
        }
    }
    if total_weight > 0.0 && dc_weight / total_weight > DC_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "DC Fourier mode carries a fraction {:.3e} of the field; it belongs to \
             neither frequency branch and must vanish",
            dc_weight / total_weight
        )));
    }

    fft3_vector(&mut pos, n, true);
    fft3_vector(&mut neg, n, true);
    let scale = 1.0 / total;
    for v in pos.iter_mut() {
        for c in v.iter_mut() {
            *c *= scale;
        }
    }
    // Psi- is the complex conjugate of the negative-frequency branch
    for v in neg.iter_mut() {
        for c in v.iter_mut() {
            *c = (*c * scale).conj();
        }
    }
    Ok(PositionWavefunctions {
        psi_plus: RSField::new(grid.clone(), pos, field.time())?,
        psi_minus: RSField::new(grid.clone(), neg, field.time())?,
    })
}

impl PositionWavefunctions {
    /// Plain L2 energies of the two branches; they sum to the field energy.
    pub fn branch_energies(&self) -> (f64, f64) {
        (self.psi_plus.energy(), self.psi_minus.energy())
    }
}

/// The nonlocal photon-number norm
///   (1/2 pi^2) sum_lambda  double-integral d^3r d^3r'
///       Psi_l^*(r) . Psi_l(r') / |r - r'|^2,
/// evaluated spectrally via its Fourier representation: the kernel divides
/// each Fourier mode by |k|.
pub fn nonlocal_norm(psi: &PositionWavefunctions) -> Result<f64> {
    Ok(branch_nonlocal_norm(&psi.psi_plus)? + branch_nonlocal_norm(&psi.psi_minus)?)
}

fn branch_nonlocal_norm(field: &RSField) -> Result<f64> {
    let grid = field.grid();
    if !grid.periodic {
        return Err(Error::InvalidParameter(
            "the spectral nonlocal norm requires a periodic grid".into(),
        ));
    }
    let n = grid.n;
    let mut modes = field.values().to_vec();
    fft3_vector(&mut modes, n, false);
    let prefactor = grid.cell_volume() / grid.node_count() as f64;
    let mut acc = 0.0;
    for ix in 0..n[0] {
        for iy in 0..n[1] {
            for iz in 0..n[2] {
                let k = grid.mode_wavevector([ix, iy, iz]);
                let klen = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
                if klen == 0.0 {
                    continue; // DC mode: no branch, no contribution
                }
                let v = modes[flat(n, ix, iy, iz)];
                acc += (v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr()) / klen;
            }
        }
    }
    Ok(acc * prefactor)
}

/// Brute-force evaluation of the nonlocal norm as a double sum over grid
/// points, the O(N^2) reference for small grids. The kernel 1/|r - r'|^2 is
/// integrated over the r' cell (subsampled at short range, midpoint beyond),
/// with the singular diagonal cell handled by a volume-equivalent sphere at
/// its core.
pub fn nonlocal_norm_direct(psi: &PositionWavefunctions) -> f64 {
    branch_direct(&psi.psi_plus) + branch_direct(&psi.psi_minus)
}

fn branch_direct(field: &RSField) -> f64 {
    let grid = field.grid();
    let n = grid.node_count();
    let dv = grid.cell_volume();
    let values = field.values();
    let positions: Vec<[f64; 3]> = (0..n)
        .map(|i| {
            let [ix, iy, iz] = grid.coords(i);
            grid.position(ix, iy, iz)
        })
        .collect();
    let spacing = grid.spacing;
    let near2 = 9.0 * spacing.iter().fold(0.0f64, |m, s| m.max(*s)).powi(2);
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = [
                positions[i][0] - positions[j][0],
                positions[i][1] - positions[j][1],
                positions[i][2] - positions[j][2],
            ];
            let dist2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
            let kernel = if dist2 <= near2 {
                cell_averaged_kernel(d, spacing)
            } else {
                1.0 / dist2
            };
            let dot: C64 = (0..3).map(|c| values[i][c].conj() * values[j][c]).sum();
            acc += dv * dv * dot.re * kernel;
        }
    }
    let diag: f64 = values
        .iter()
        .map(|v| v[0].norm_sqr() + v[1].norm_sqr() + v[2].norm_sqr())
        .sum::<f64>()
        * dv
        * diagonal_cell_integral(spacing);
    (acc + diag) / (2.0 * std::f64::consts::PI * std::f64::consts::PI)
}

/// (1/V_cell) integral over the cell of 1/|d + u|^2, by 5^3 midpoint
/// subsamples.
fn cell_averaged_kernel(d: [f64; 3], spacing: [f64; 3]) -> f64 {
    const S: usize = 5;
    let mut acc = 0.0;
    for a in 0..S {
        for b in 0..S {
            for c in 0..S {
                let u = [
                    d[0] + spacing[0] * ((a as f64 + 0.5) / S as f64 - 0.5),
                    d[1] + spacing[1] * ((b as f64 + 0.5) / S as f64 - 0.5),
                    d[2] + spacing[2] * ((c as f64 + 0.5) / S as f64 - 0.5),
                ];
                acc += 1.0 / (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
            }
        }
    }
    acc / (S * S * S) as f64
}

/// integral over one cell of d^3u / |u|^2: midpoint subcells, with the
/// singular central subcell replaced by its volume-equivalent sphere
/// (integral over a sphere of radius R of 1/u^2 is 4 pi R).
fn diagonal_cell_integral(spacing: [f64; 3]) -> f64 {
    const S: usize = 21;
    let sub = [
        spacing[0] / S as f64,
        spacing[1] / S as f64,
        spacing[2] / S as f64,
    ];
    let sub_vol = sub[0] * sub[1] * sub[2];
    let mut acc = 0.0;
    let mid = S / 2;
    for a in 0..S {
        for b in 0..S {
            for c in 0..S {
                if a == mid && b == mid && c == mid {
                    let r_eq = (3.0 * sub_vol / (4.0 * std::f64::consts::PI)).powf(1.0 / 3.0);
                    acc += 4.0 * std::f64::consts::PI * r_eq;
                    continue;
                }
                let u = [
                    sub[0] * (a as f64 - mid as f64),
                    sub[1] * (b as f64 - mid as f64),
                    sub[2] * (c as f64 - mid as f64),
                ];
                acc += sub_vol / (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
            }
        }
    }
    acc
}
