//! Actions of the Poincare generators on momentum-space photon states:
//! energy and momentum act by multiplication, rotations and boosts through
//! the covariant derivative, and the position operator is R = i D.

use num_complex::Complex64 as C64;

use super::derivative::{
    axis_flagged_nodes, covariant_derivative, partial_derivatives, ConnectionPolicy,
    DerivativeScheme, VectorAction,
};
use crate::constants::PhysicalConstants;
use crate::error::Result;
use crate::momentum::{GradientData, PhotonWavefunctionK};

fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Energy: (H f)_± = hbar c |k| f_±.
pub fn apply_energy(f: &PhotonWavefunctionK, constants: &PhysicalConstants) -> PhotonWavefunctionK {
    scale_by(f, |k| constants.hbar * constants.omega(norm3(k)))
}

/// Momentum: (P_j f)_± = hbar k_j f_±, three components.
pub fn apply_momentum(
    f: &PhotonWavefunctionK,
    constants: &PhysicalConstants,
) -> [PhotonWavefunctionK; 3] {
    std::array::from_fn(|j| scale_by(f, |k| constants.hbar * k[j]))
}

fn scale_by<M: Fn([f64; 3]) -> f64>(f: &PhotonWavefunctionK, m: M) -> PhotonWavefunctionK {
    let grid = f.grid().clone();
    let mut out = PhotonWavefunctionK::zeros(grid.clone());
    {
        let (p, mi) = out.components_mut();
        for i in 0..grid.len() {
            let s = m(grid.node(i));
            p[i] = f.f_plus()[i] * s;
            mi[i] = f.f_minus()[i] * s;
        }
    }
    out
}

/// Position operator R = i D: (R f)_± = i (D f)_±.
pub fn position_operator(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
) -> Result<VectorAction> {
    let mut d = covariant_derivative(f, scheme, policy)?;
    for comp in &mut d.components {
        let (p, m) = comp.components_mut();
        for v in p.iter_mut().chain(m.iter_mut()) {
            *v *= C64::I;
        }
    }
    Ok(d)
}

/// Boost (moment of energy): N = i hbar omega D, i.e. hbar omega applied
/// after the position operator.
pub fn apply_boost(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
    constants: &PhysicalConstants,
) -> Result<VectorAction> {
    let mut r = position_operator(f, scheme, policy)?;
    let grid = f.grid().clone();
    for comp in &mut r.components {
        let (p, m) = comp.components_mut();
        for i in 0..grid.len() {
            let s = constants.hbar * constants.omega(norm3(grid.node(i)));
            p[i] *= s;
            m[i] *= s;
        }
    }
    Ok(r)
}

/// The two addends of the angular momentum: the orbital part
/// -i hbar (k x D) perpendicular to k, and the helicity part
/// hbar lambda k / |k| parallel to it.
pub struct AngularMomentumParts {
    pub orbital: VectorAction,
    pub helicity: [PhotonWavefunctionK; 3],
}

impl AngularMomentumParts {
    /// Total J_j = orbital_j + helicity_j.
    pub fn total(&self) -> [PhotonWavefunctionK; 3] {
        std::array::from_fn(|j| {
            let mut out = self.orbital.components[j].clone();
            let (p, m) = out.components_mut();
            for i in 0..p.len() {
                p[i] += self.helicity[j].f_plus()[i];
                m[i] += self.helicity[j].f_minus()[i];
            }
            out
        })
    }
}

/// Angular momentum J = -i hbar [k x (d/dk - i lambda alpha)] + hbar lambda k/k.
pub fn apply_angular_momentum(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
    constants: &PhysicalConstants,
) -> Result<AngularMomentumParts> {
    let d = covariant_derivative(f, scheme, policy)?;
    let grid = f.grid().clone();
    let hbar = constants.hbar;
    let orbital_components: [PhotonWavefunctionK; 3] = std::array::from_fn(|j| {
        let (a, b) = ((j + 1) % 3, (j + 2) % 3);
        let mut out = PhotonWavefunctionK::zeros(grid.clone());
        {
            let (p, m) = out.components_mut();
            for i in 0..grid.len() {
                let k = grid.node(i);
                let factor = C64::new(0.0, -hbar);
                p[i] = factor
                    * (k[a] * d.components[b].f_plus()[i] - k[b] * d.components[a].f_plus()[i]);
                m[i] = factor
                    * (k[a] * d.components[b].f_minus()[i] - k[b] * d.components[a].f_minus()[i]);
            }
        }
        out
    });
    let helicity: [PhotonWavefunctionK; 3] = std::array::from_fn(|j| {
        let mut out = PhotonWavefunctionK::zeros(grid.clone());
        {
            let (p, m) = out.components_mut();
            for i in 0..grid.len() {
                let k = grid.node(i);
                let unit = k[j] / norm3(k);
                p[i] = f.f_plus()[i] * (hbar * unit);
                m[i] = f.f_minus()[i] * (-hbar * unit);
            }
        }
        out
    });
    Ok(AngularMomentumParts {
        orbital: VectorAction {
            components: orbital_components,
            flagged: d.flagged,
        },
        helicity,
    })
}

/// Expectation <f|A f> of an applied operator.
pub fn expectation(f: &PhotonWavefunctionK, applied: &PhotonWavefunctionK) -> Result<C64> {
    f.inner_product(applied)
}

/// Expectations of all nine commutators [R_i, P_j] in the given state.
/// The connection terms cancel identically, leaving i hbar delta_ij up to
/// derivative truncation error.
pub fn commutator_rp_expectations(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
    constants: &PhysicalConstants,
) -> Result<[[C64; 3]; 3]> {
    let grid = f.grid().clone();
    let r_f = position_operator(f, scheme, policy)?;

    let mut out = [[C64::ZERO; 3]; 3];
    for j in 0..3 {
        // P_j f, with hbar folded in
        let pj_f = scale_by(f, |k| constants.hbar * k[j]);
        // gradient data for P_j f under the analytic scheme: product rule
        let analytic_pj: Option<GradientData> = match scheme {
            DerivativeScheme::Analytic(g) => Some(product_rule_gradient(f, g, j, constants.hbar)),
            DerivativeScheme::FiniteDifference => None,
        };
        let scheme_pj = match &analytic_pj {
            Some(g) => DerivativeScheme::Analytic(g),
            None => DerivativeScheme::FiniteDifference,
        };
        let r_pj_f = position_operator(&pj_f, scheme_pj, policy)?;
        for i in 0..3 {
            // [R_i, P_j] f = R_i (P_j f) - P_j (R_i f)
            let mut comm = r_pj_f.components[i].clone();
            {
                let (p, m) = comm.components_mut();
                for n in 0..grid.len() {
                    let s = constants.hbar * grid.node(n)[j];
                    p[n] -= r_f.components[i].f_plus()[n] * s;
                    m[n] -= r_f.components[i].f_minus()[n] * s;
                }
            }
            out[i][j] = f.inner_product(&comm)?;
        }
    }
    Ok(out)
}

/// Gradient of (s k_j f) given the gradient of f: d(s k_j f)/dk_i
/// = s (delta_ij f + k_j df/dk_i).
fn product_rule_gradient(
    f: &PhotonWavefunctionK,
    grad: &GradientData,
    j: usize,
    s: f64,
) -> GradientData {
    let grid = f.grid();
    let build = |vals: &[C64], g: &[[C64; 3]]| -> Vec<[C64; 3]> {
        (0..grid.len())
            .map(|n| {
                let kj = grid.node(n)[j];
                std::array::from_fn(|i| {
                    let kron = if i == j { vals[n] } else { C64::ZERO };
                    (kron + g[n][i] * kj) * s
                })
            })
            .collect()
    };
    GradientData::new(
        build(f.f_plus(), &grad.d_plus),
        build(f.f_minus(), &grad.d_minus),
    )
}

/// Curvature of the light-cone connection, evaluated as the antisymmetric
/// nested action of D. The orientation is fixed so that single-helicity
/// states satisfy K f_± = -/+ i (k/k^3) f_±:
/// K_x = [D_z, D_y], K_y = [D_x, D_z], K_z = [D_y, D_x].
/// The outer derivative is always taken by finite differences.
pub fn curvature_action(
    f: &PhotonWavefunctionK,
    inner_scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
) -> Result<[PhotonWavefunctionK; 3]> {
    let inner = covariant_derivative(f, inner_scheme, policy)?;
    // D_a (D_b f) for all pairs (a != b)
    let nested = |b: usize, a: usize| -> Result<PhotonWavefunctionK> {
        let d =
            covariant_derivative(&inner.components[b], DerivativeScheme::FiniteDifference, policy)?;
        let [x, y, z] = d.components;
        Ok(match a {
            0 => x,
            1 => y,
            _ => z,
        })
    };
    let mut out = Vec::with_capacity(3);
    for i in 0..3 {
        let (a, b) = ((i + 1) % 3, (i + 2) % 3);
        // K_i = D_b D_a - D_a D_b  (reversed cyclic order)
        let first = nested(a, b)?;
        let second = nested(b, a)?;
        let mut k = first;
        {
            let (p, m) = k.components_mut();
            for n in 0..p.len() {
                p[n] -= second.f_plus()[n];
                m[n] -= second.f_minus()[n];
            }
        }
        out.push(k);
    }
    let z = out.pop().expect("three components");
    let y = out.pop().expect("three components");
    let x = out.pop().expect("three components");
    Ok([x, y, z])
}

/// The closed-form curvature value -/+ i (k_i / k^3) f_± the nested
/// derivatives converge to.
pub fn expected_curvature(f: &PhotonWavefunctionK) -> [PhotonWavefunctionK; 3] {
    let grid = f.grid().clone();
    std::array::from_fn(|i| {
        let mut out = PhotonWavefunctionK::zeros(grid.clone());
        {
            let (p, m) = out.components_mut();
            for n in 0..grid.len() {
                let k = grid.node(n);
                let k3 = norm3(k).powi(3);
                let factor = C64::new(0.0, -k[i] / k3);
                p[n] = f.f_plus()[n] * factor;
                m[n] = -(f.f_minus()[n] * factor);
            }
        }
        out
    })
}

/// Expectation of [R_x, R_y] together with the curvature expectation it must
/// match: <[R_x, R_y]> = <K_z> with K the curvature action above.
pub fn commutator_rr_xy_expectation(
    f: &PhotonWavefunctionK,
    inner_scheme: DerivativeScheme<'_>,
    policy: ConnectionPolicy,
) -> Result<(C64, C64)> {
    // [R_x, R_y] = -[D_x, D_y] = [D_y, D_x] = K_z
    let k = curvature_action(f, inner_scheme, policy)?;
    let measured = f.inner_product(&k[2])?;
    let expect = f.inner_product(&expected_curvature(f)[2])?;
    Ok((measured, expect))
}

/// Share of the state weight on connection-flagged nodes for this grid/policy.
pub fn axis_weight_share(f: &PhotonWavefunctionK, policy: ConnectionPolicy) -> f64 {
    let flagged = axis_flagged_nodes(f.grid(), policy);
    super::derivative::flagged_weight_share(f, &flagged)
}

/// Hermiticity defect |<Af, g> - <f, Ag>| / scale for a vector action,
/// used by the self-checks.
pub fn hermiticity_defect(
    f: &PhotonWavefunctionK,
    g: &PhotonWavefunctionK,
    af: &[PhotonWavefunctionK; 3],
    ag: &[PhotonWavefunctionK; 3],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let left = af[j].inner_product(g)?;
        let right = f.inner_product(&ag[j])?;
        let scale = left.norm().max(right.norm()).max(1e-30);
        worst = worst.max((left - right).norm() / scale);
    }
    Ok(worst)
}

/// Raw partial derivatives exposed for oracle-style comparisons in tests.
pub fn raw_partials(
    f: &PhotonWavefunctionK,
    scheme: DerivativeScheme<'_>,
) -> Result<(Vec<[C64; 3]>, Vec<[C64; 3]>)> {
    partial_derivatives(f, scheme)
}
