//! Reissner strain measures, deformed placement of material points and
//! stress recovery.

use crate::error::KinematicsError;
use crate::model::{LayerGeometry, LayerSection};

/// Element-constant `(ε, γ, κ)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct GeneralizedStrain {
    pub epsilon: f64,
    pub gamma: f64,
    pub kappa: f64,
}

/// Nodal unknowns of a two-node element, ordered `(u₁, w₁, φ₁, u₂, w₂, φ₂)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementDofs {
    pub values: [f64; 6],
    pub length: f64,
}

impl ElementDofs {
    pub fn new(values: [f64; 6], length: f64) -> Self {
        debug_assert!(length > 0.0);
        Self { values, length }
    }

    pub fn zero(length: f64) -> Self {
        Self::new([0.0; 6], length)
    }

    /// Rigid motion: translation `(a, c)` followed by a rotation of the chord
    /// by `alpha` about node 1. Rotations are `−alpha` with the sign
    /// convention of the kinematics (`γ ≈ φ + w'`).
    pub fn rigid(length: f64, a: f64, c: f64, alpha: f64) -> Self {
        Self::new(
            [
                a,
                c,
                -alpha,
                a + length * (alpha.cos() - 1.0),
                c + length * alpha.sin(),
                -alpha,
            ],
            length,
        )
    }

    pub fn delta_u(&self) -> f64 {
        self.values[3] - self.values[0]
    }

    pub fn delta_w(&self) -> f64 {
        self.values[4] - self.values[1]
    }

    pub fn delta_phi(&self) -> f64 {
        self.values[5] - self.values[2]
    }

    /// Mean element rotation `β = ½(φ₁ + φ₂)`.
    pub fn mean_rotation(&self) -> f64 {
        0.5 * (self.values[2] + self.values[5])
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self::new(self.values.map(|v| v * t), self.length)
    }
}

/// Finite-strain measures evaluated once at the element midpoint.
pub fn strain_nonlinear(dofs: &ElementDofs) -> GeneralizedStrain {
    let l = dofs.length;
    let stretched = l + dofs.delta_u();
    let dw = dofs.delta_w();
    let (s, c) = dofs.mean_rotation().sin_cos();
    GeneralizedStrain {
        epsilon: (stretched * c - dw * s) / l - 1.0,
        gamma: (stretched * s + dw * c) / l,
        kappa: dofs.delta_phi() / l,
    }
}

/// Small-strain measures `ε = Δu/L`, `γ = β + Δw/L`, `κ = Δφ/L`.
pub fn strain_linear(dofs: &ElementDofs) -> GeneralizedStrain {
    let l = dofs.length;
    GeneralizedStrain {
        epsilon: dofs.delta_u() / l,
        gamma: dofs.mean_rotation() + dofs.delta_w() / l,
        kappa: dofs.delta_phi() / l,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformedPoint {
    pub x: f64,
    pub z: f64,
}

/// Deformed placement of the material point `(X, Z)` of a layer whose nodal
/// `(u, w, φ)` triples sit on a uniform mesh spanning the layer length.
pub fn deformed_position(
    geometry: &LayerGeometry,
    nodal: &[[f64; 3]],
    x: f64,
    z: f64,
) -> Result<DeformedPoint, KinematicsError> {
    if nodal.len() < 2 {
        return Err(KinematicsError::FieldTooShort { got: nodal.len() });
    }
    let length = geometry.length;
    if !(0.0..=length).contains(&x) {
        return Err(KinematicsError::OutsideLayer { x, length });
    }
    let n_el = nodal.len() - 1;
    let h = length / n_el as f64;
    let e = ((x / h).floor() as usize).min(n_el - 1);
    let t = (x - e as f64 * h) / h;
    let interp = |k: usize| (1.0 - t) * nodal[e][k] + t * nodal[e + 1][k];
    let (u, w, phi) = (interp(0), interp(1), interp(2));
    Ok(DeformedPoint {
        x: geometry.origin_x + x + u + phi.sin() * z,
        z: geometry.origin_z + w + phi.cos() * z,
    })
}

/// Biot-type strain tensor `H = R(φ)⁻¹F − I` at the element midpoint, with
/// the deformation gradient `F` taken by central differences of
/// [`deformed_position`] and `φ` the midpoint rotation.
pub fn biot_strain_tensor(dofs: &ElementDofs, z: f64) -> Result<[[f64; 2]; 2], KinematicsError> {
    let l = dofs.length;
    let geometry = LayerGeometry {
        origin_x: 0.0,
        origin_z: 0.0,
        length: l,
    };
    let v = dofs.values;
    let nodal = [[v[0], v[1], v[2]], [v[3], v[4], v[5]]];
    let xm = 0.5 * l;
    let step = 1e-6 * l;
    if step.is_nan() || step <= 0.0 || xm + step == xm || z + step == z {
        return Err(KinematicsError::StepUnderflow { step, x: xm });
    }
    // differencing displacements rather than positions limits cancellation
    let disp =
        |x: f64, zz: f64| deformed_position(&geometry, &nodal, x, zz).map(|p| (p.x - x, p.z - zz));
    let (ahead, behind) = (disp(xm + step, z)?, disp(xm - step, z)?);
    let (below, above) = (disp(xm, z + step)?, disp(xm, z - step)?);
    let f = [
        [
            1.0 + (ahead.0 - behind.0) / (2.0 * step),
            (below.0 - above.0) / (2.0 * step),
        ],
        [
            (ahead.1 - behind.1) / (2.0 * step),
            1.0 + (below.1 - above.1) / (2.0 * step),
        ],
    ];
    // R⁻¹ = Rᵀ with R = [[c, s], [−s, c]]
    let (s, c) = dofs.mean_rotation().sin_cos();
    let r_inv = [[c, -s], [s, c]];
    let mut h = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            h[i][j] = r_inv[i][0] * f[0][j] + r_inv[i][1] * f[1][j];
        }
        h[i][i] -= 1.0;
    }
    Ok(h)
}

/// Non-zero Biot strain components `(H₁₁, H₂₁)` from [`biot_strain_tensor`].
///
/// Independent check of [`strain_nonlinear`]: `H₁₁ = ε + κZ`, `H₂₁ = γ`.
pub fn biot_strain_oracle(dofs: &ElementDofs, z: f64) -> Result<(f64, f64), KinematicsError> {
    let h = biot_strain_tensor(dofs, z)?;
    Ok((h[0][0], h[1][0]))
}

/// Extreme fiber normal stresses and the section shear stress.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StressTriple {
    pub top: f64,
    pub bottom: f64,
    pub shear: f64,
}

pub fn recover_stresses(section: &LayerSection, strain: &GeneralizedStrain) -> StressTriple {
    let e = section.young_modulus();
    let half_h = 0.5 * section.thickness();
    StressTriple {
        top: e * (strain.epsilon - strain.kappa * half_h),
        bottom: e * (strain.epsilon + strain.kappa * half_h),
        shear: section.shear_modulus() * strain.gamma,
    }
}
